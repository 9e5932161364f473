"""Decide whether an ideal of a local ring over QQ is a Tjurina ideal.

>>> from tjurina import RingContext, Ideal, is_tjurina_ideal
>>> ctx = RingContext.local("x,y,z")
>>> is_tjurina_ideal(Ideal.parse("y*z, x*z, x*y", ctx)).verdict
True
"""

__version__ = "0.1.0"

from .ring import (
    Mode,
    ParseError,
    Poly,
    RingContext,
    format_poly,
    ord_poly,
    parse_poly,
    partial_derivative,
    substitute_locals_zero,
)
from .engine import (
    Ideal,
    Submodule,
    VectorPoly,
    ideal_contains,
    ideal_equal,
    ideal_intersect,
    ideal_power,
    ideal_product,
    ideal_quotient,
    ideal_sum,
    module_intersect,
    modulo,
    mora_weak_normal_form,
    standard_basis,
    syzygies,
)
from .ops import (
    FullnessResult,
    antiderivative_module,
    antiderivatives,
    is_T_full,
    ord_ideal,
    tjurina_of_ideal,
    tjurina_of_poly,
)
from .tdep import (
    DependenceResult,
    MixedRingBundle,
    build_sigma,
    is_T_dependent,
    saturate,
    tjurina_sheaf_ideal,
)
from .decide import (
    DecisionReport,
    InconsistencyError,
    PrincipalVerdict,
    check_witness,
    find_witness,
    is_tjurina_ideal,
    minimal_generator_count,
    principal_ideal_classifier,
)
from .cas import emit_cas_script

__all__ = [name for name in dir() if not name.startswith("_")]
