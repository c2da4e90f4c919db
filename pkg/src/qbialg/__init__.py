"""
qbialg
======

Exact computations with Lie bialgebras and their quantizations.

Submodules
----------
scalars     exact arithmetic in Q(i, sqrt 2) and truncated z-series
bialgebra   structure tensors and the bialgebra axioms
double      Drinfeld doubles and the su(2)+t1, gl(n) families
uea         PBW normal ordering in the enveloping algebra
quantize    order-by-order coproducts and deformed brackets
closedform  exp / sinh / cosh recognition of coefficient series
cli         batch front end (``python3 -m qbialg``)
"""
__version__ = "0.1.0"

from .scalars import (
    AlgebraicScalar, ZSeries, ONE, ZERO, I, R2, as_scalar, parse_scalar, format_scalar,
    series_eval_pattern,
)
from .bialgebra import (
    LieBialgebra, BracketTensor, CocommutatorTensor, ValidationReport,
    check_jacobi, check_cocycle, check_compatibility, dualize, change_basis, drop_generators,
)
from .double import (
    DrinfeldDouble, build_double, build_family, check_pairing_invariance, is_self_dual,
    canonical_cocommutator_gl, gl_commutators, restrict_trivial_t, rescaled_double, su2_standard,
)
from .uea import (
    PBWMonomial, UEAElement, TensorElement, CommutatorTable, normal_order, multiply,
    commutator, primitive_coproduct, flip,
)
from .quantize import (
    CoproductSeries, QuantizationResult, NoSolution, quantize, extract_delta,
    coassoc_residual, homomorphism_residual, gauge_basis, friedrichs_primitivize,
    random_scramble,
)
from .closedform import (
    ClosedForm, UNKNOWN, recognize_factor, factor_coproduct, recognize_commutator,
    recognize_result,
)
