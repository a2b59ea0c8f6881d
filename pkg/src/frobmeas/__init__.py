"""Universal (co)measurings between Frobenius algebras, computed exactly."""

from .algebra import FiniteAlgebra, PresentedQuotient, tensor_algebra
from .comeasure import (
    AlgebraMapToQuotient,
    Comeasuring,
    ComeasuringCache,
    antipode_S,
    antipode_S_inverse,
    build_universal_comeasuring,
    comeasuring_counit,
    comeasuring_d,
    comeasuring_from_morphism,
    factor_comeasuring,
    triviality_oracle,
    universal_comeasuring,
    verify_comeasuring,
)
from .errors import EngineError
from .frobenius import (
    FrobeniusAlgebra,
    Group,
    asymmetric_fixture,
    dual_frobenius,
    group_algebra,
    invert_frobenius_morphism,
    klein_four,
    matrix_algebra,
    named_group,
)
from .measure import (
    DualCoalgebra,
    antipode_dual,
    compose_m,
    dual_coalgebra,
    gamma_pi_factorization_check,
    grouplikes,
    hopf_category_check,
    measuring_action,
    primitives,
    unit_j,
    universal_acting_hopf_algebra,
)
from .ncgb import NCPoly, Presentation, complete, quotient_dimension
from .omega import FROBENIUS_SIGNATURE, LinearMap, OmegaAlgebra, check_omega_morphism
from .scalar import QQ, Extension, PrimeField, Rationals, Scalar, parse_field

__version__ = "0.1.0"

__all__ = [
    "AlgebraMapToQuotient", "antipode_dual", "antipode_S", "antipode_S_inverse",
    "asymmetric_fixture", "build_universal_comeasuring", "check_omega_morphism", "Comeasuring",
    "comeasuring_counit", "comeasuring_d", "comeasuring_from_morphism", "ComeasuringCache",
    "complete", "compose_m", "dual_coalgebra", "dual_frobenius", "DualCoalgebra", "EngineError",
    "Extension", "factor_comeasuring", "FiniteAlgebra", "FROBENIUS_SIGNATURE", "FrobeniusAlgebra",
    "gamma_pi_factorization_check", "Group", "group_algebra", "grouplikes", "hopf_category_check",
    "invert_frobenius_morphism", "klein_four", "LinearMap", "matrix_algebra", "measuring_action",
    "named_group", "NCPoly", "OmegaAlgebra", "parse_field", "Presentation", "PresentedQuotient",
    "PrimeField", "primitives", "QQ", "quotient_dimension", "Rationals", "Scalar", "tensor_algebra",
    "triviality_oracle", "unit_j", "universal_acting_hopf_algebra", "universal_comeasuring",
    "verify_comeasuring",
]
