"""Plain-text run configuration: key = value lines, '#' comments.

Schema:
    p = <prime>
    factors = (f=<int>,e=<int>) (f=<int>,e=<int>) ...
    subring = prime | gens: <vector>;<vector>...
    family = f0 | all | all-nonzero | ideals | custom
    members = <subspace> | <subspace> | ...        # custom families only

Vectors are space-separated residues in the canonical basis of
B = product of GF(p^f_i)[x]/(x^e_i); subspaces use the row serialization
of the linear algebra layer ("0" for the zero space).  Unknown keys are
rejected.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .bounds import Bounds
from .errors import InputError
from .finring import (
    FiniteRing,
    RingExtension,
    chain_ring,
    generated_subring,
    prime_diagonal_extension,
    product_ring,
)
from .linalg import parse_subspace
from .submodules import (
    CUSTOM,
    FAMILY_KINDS,
    ModuleFamily,
    build_family,
    custom_family,
)

_KNOWN_KEYS = ("p", "factors", "subring", "family", "members")
_FACTOR_RE = re.compile(r"\(\s*f\s*=\s*(\d+)\s*,\s*e\s*=\s*(\d+)\s*\)")


@dataclass
class RunConfig:
    p: int
    factors: tuple[tuple[int, int], ...]  # (f, e) pairs
    subring: str = "prime"  # "prime" or "gens"
    gens: tuple[tuple[int, ...], ...] = ()
    family: str = "f0"
    members: tuple[str, ...] = ()

    def build_ring(self, bounds: Bounds) -> FiniteRing:
        parts = [chain_ring(self.p, f, e, bounds) for f, e in self.factors]
        return product_ring(parts, bounds)

    def build_extension(self, bounds: Bounds) -> RingExtension:
        ring = self.build_ring(bounds)
        if self.subring == "prime":
            return prime_diagonal_extension(ring)
        for g in self.gens:
            if len(g) != ring.dim:
                raise InputError(
                    f"generator {g} has length {len(g)}, ring has dim {ring.dim}"
                )
        return generated_subring(ring, self.gens)

    def build_family(self, bounds: Bounds) -> ModuleFamily:
        ext = self.build_extension(bounds)
        if self.family == CUSTOM:
            if not self.members:
                raise InputError("a custom family needs a members list")
            ring = ext.ring
            spaces = [
                parse_subspace(m, ring.p, ring.dim) for m in self.members
            ]
            return custom_family(ext, spaces)
        return build_family(ext, self.family, bounds)


def parse_config_text(text: str) -> RunConfig:
    values: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InputError(f"config line {lineno}: expected key = value")
        key, _, val = line.partition("=")
        key = key.strip()
        val = val.strip()
        if key not in _KNOWN_KEYS:
            raise InputError(f"config line {lineno}: unknown key {key!r}")
        if key in values:
            raise InputError(f"config line {lineno}: duplicate key {key!r}")
        values[key] = val

    if "p" not in values:
        raise InputError("config is missing the key 'p'")
    try:
        p = int(values["p"])
    except ValueError as exc:
        raise InputError(f"bad prime {values['p']!r}") from exc

    if "factors" not in values:
        raise InputError("config is missing the key 'factors'")
    raw_factors = values["factors"]
    matches = list(_FACTOR_RE.finditer(raw_factors))
    leftover = _FACTOR_RE.sub("", raw_factors).strip()
    if not matches or leftover:
        raise InputError(
            f"bad factors {raw_factors!r}; expected (f=<int>,e=<int>) ..."
        )
    factors = tuple((int(m.group(1)), int(m.group(2))) for m in matches)

    subring = "prime"
    gens: tuple[tuple[int, ...], ...] = ()
    raw_sub = values.get("subring", "prime").strip()
    if raw_sub == "prime":
        pass
    elif raw_sub.startswith("gens:"):
        subring = "gens"
        body = raw_sub[len("gens:"):].strip()
        parsed = []
        for part in body.split(";"):
            part = part.strip()
            if not part:
                continue
            try:
                parsed.append(tuple(int(tok) for tok in part.split()))
            except ValueError as exc:
                raise InputError(f"bad generator vector {part!r}") from exc
        if not parsed:
            raise InputError("subring = gens: needs at least one vector")
        gens = tuple(parsed)
    else:
        raise InputError(
            f"bad subring {raw_sub!r}; expected 'prime' or 'gens: ...'"
        )

    family = values.get("family", "f0").strip()
    if family not in FAMILY_KINDS:
        raise InputError(
            f"bad family {family!r}; expected one of {', '.join(FAMILY_KINDS)}"
        )
    members = ()
    if "members" in values:
        members = tuple(
            part.strip() for part in values["members"].split("|") if part.strip()
        )
    if family == CUSTOM and not members:
        raise InputError("family = custom needs a members key")
    if family != CUSTOM and members:
        raise InputError("members is only valid with family = custom")
    return RunConfig(p, factors, subring, gens, family, members)


def load_config(path: str) -> RunConfig:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read config {path!r}: {exc}") from exc
    return parse_config_text(text)
