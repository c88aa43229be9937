"""Construction and numerical verification of magnetohydrostatic equilibria.

Scalar and vector fields are immutable expression trees evaluated through
second-order jets (exact value/gradient/Hessian).  On top of them the
package provides: a catalog of curl eigenfields and finite-pressure
equilibria with verified residuals, rigid-symmetry detection by sampled
SVD, locally adapted symmetry constructions, flux-function reductions and
their symmetry-free generalization, Lie-transport generation of new
solutions, and piecewise assemblies for the tangential boundary-value
setting.
"""

from .beltrami import (
    AdmissibleChart,
    BeltramiRecord,
    ConstructionError,
    HarmonicPair,
    beltrami_residual,
    catalog as beltrami_catalog,
    from_harmonic_pair,
    verify_admissible,
    verify_h_invariance,
)
from .characteristics import (
    CharacteristicResult,
    CharacteristicsProblem,
    InitialCurve,
    solve_characteristics,
)
from .checks import force_balance_residual, residual_report
from .clebsch import (
    ClebschSolution,
    catalog as pressure_catalog,
    make_clebsch,
    make_clebsch_family,
)
from .composite import (
    AssemblyError,
    CompositeReport,
    PiecewiseField,
    assemble,
    verify_composite,
)
from .domains import Domain, Exclusion, Point3, SampleSet, sample
from .fields import (
    EvaluationError,
    Jet2,
    JetValue,
    ScalarField,
    VectorField,
    atan2,
    characteristic_polynomial,
    cos,
    cross,
    curl,
    div,
    divergence,
    dot,
    eval_jet,
    exp,
    grad,
    lie_derivative,
    log,
    sin,
    sqrt,
    substitute,
    vector,
    x,
    y,
    z,
)
from .gradshafranov import (
    GGSData,
    GSProblem,
    SingularGradientError,
    SymmetricChart,
    example_decomposition,
    ggse_check,
    gs_problem_from_plane,
    gs_reconstruct,
    gs_residual,
    path_integrate,
)
from .lieops import (
    HypothesisError,
    LieOrbit,
    commutator_defect,
    h_symmetry_check,
    lie_generate,
)
from .parsing import ExpressionError, parse_scalar, parse_univariate
from .reports import CheckStats, ResidualReport
from .symmetry import (
    KillingParams,
    KillingReport,
    LocalSymmetrySpec,
    alpha_from_characteristics,
    example_symmetry,
    killing_scan,
    lie_euclidean,
    verify_local_symmetry,
)

__version__ = "0.1.0"
