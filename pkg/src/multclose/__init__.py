"""multclose: multiplicative closure operations on finite commutative
ring extensions, and a symbolic classifier for valuation-domain
semiprime operations."""

from .bounds import Bounds, default_bounds
from .errors import (
    InputError,
    InternalError,
    MultcloseError,
    ResourceBoundError,
    UnsupportedFamilyError,
)
from .linalg import (
    FpVec,
    Subspace,
    enumerate_subspaces,
    format_subspace,
    parse_subspace,
    rref,
    subspace_contains,
    subspace_meet,
    subspace_sum,
)
from .finring import (
    FiniteRing,
    RingExtension,
    RingSurjection,
    chain_ring,
    full_extension,
    generated_subring,
    is_unit,
    prime_diagonal_extension,
    product_ring,
    quotient_surjection,
)
from .submodules import (
    ModuleFamily,
    Submodule,
    colon_element,
    colon_module,
    custom_family,
    enumerate_submodules,
    family_all_nonzero,
    family_f0,
    family_ideals,
    generated_submodule,
    module_product,
)
from .closures import (
    ClosureOp,
    MultOrder,
    canonical_ideal,
    check_multiplicative,
    enumerate_ops,
    extend_op,
    finite_type,
    generated_op,
    identity_op,
    inf_op,
    is_stable,
    mult_order,
    oracle_enumerate,
    principal_op,
    restrict_op,
    stable_closure,
    sup_op,
    w_closure,
)
from .functorial import (
    ExtensionQuotient,
    pullback_family,
    pullback_op,
    pushforward_family,
    pushforward_op,
    quotient_iso_check,
    quotient_of_extensions,
)
from .starbridge import (
    ArtinianShape,
    fstar_count,
    realize_shape,
    star_count,
    structure_cases,
    survey,
    verify_twoext,
)
from .valuation import (
    ValIdeal,
    ValOp,
    ValueGroup,
    classify,
    dvr_crosscheck,
    val_colon,
    val_evaluate,
    val_ideal,
    val_order,
)

__version__ = "0.1.0"
