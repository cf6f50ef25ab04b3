"""Vector and covector calculus on finite-dimensional associative algebras, in exact arithmetic."""

__version__ = "0.1.0"

from .algebra import Algebra, Element, center, commutator, make_algebra, mul  # noqa: E402
from .bidual import (  # noqa: E402
    BidualElement,
    BidualSpace,
    DualBasisCertificate,
    ReflexivityReport,
    dual_basis_certificate,
    embed,
    ghost_covectors,
    lift,
    reflexivity_report,
    second_dual,
)
from .derivations import (  # noqa: E402
    Derivation,
    VModule,
    derivations,
    inner_derivation,
    leibniz_defect,
    z_action,
    z_closure,
)
from .duality import (  # noqa: E402
    Covector,
    CovectorSpace,
    bimodule_act,
    couple,
    differential,
    dual,
    leibniz_for_differentials,
    right_kernel,
    star_dual,
)
from .presets import preset  # noqa: E402
