"""Safety bounds for the enumeration kernels.

Subspace counts over F_p explode quickly; the defaults keep every
computation at desk scale (ambient dimension <= 8, p <= 5, oracle
families of at most 12 members).  The environment variable
MULTCLOSE_MAX_DIM or the CLI flag --max-dim override the dimension cap.
"""

from __future__ import annotations

import os
from dataclasses import dataclass

from .errors import InputError, ResourceBoundError

DEFAULT_MAX_DIM = 8
DEFAULT_MAX_PRIME = 5
DEFAULT_ORACLE_MAX = 12

ENV_MAX_DIM = "MULTCLOSE_MAX_DIM"


@dataclass(frozen=True)
class Bounds:
    max_dim: int = DEFAULT_MAX_DIM
    max_prime: int = DEFAULT_MAX_PRIME
    oracle_max: int = DEFAULT_ORACLE_MAX

    def check_ring(self, p: int, dim: int) -> None:
        if dim < 0:
            raise InputError(f"dimension must be nonnegative, got {dim}")
        if dim > self.max_dim:
            raise ResourceBoundError(
                f"ambient dimension {dim} exceeds bound {self.max_dim}"
            )
        if p > self.max_prime:
            raise ResourceBoundError(
                f"prime {p} exceeds bound {self.max_prime}"
            )

    def check_oracle(self, family_size: int) -> None:
        if family_size > self.oracle_max:
            raise ResourceBoundError(
                f"oracle refused: family of {family_size} members exceeds "
                f"bound {self.oracle_max}"
            )


def default_bounds() -> Bounds:
    """Bounds with the MULTCLOSE_MAX_DIM environment override applied."""
    raw = os.environ.get(ENV_MAX_DIM)
    if raw is None:
        return Bounds()
    try:
        max_dim = int(raw)
    except ValueError as exc:
        raise InputError(f"bad {ENV_MAX_DIM} value {raw!r}") from exc
    return Bounds(max_dim=max_dim)
