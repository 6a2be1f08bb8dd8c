"""Poisson boundaries and harmonic elements for actions of finite quantum groups."""
from .numeric import DEFAULT_TOL, DecompositionError, Tolerance
from .groups import GroupError, named_group, small_groups
from .algebra import ModuleAlgebra, commutative, matrix_algebra
from .checks import AxiomError, VerificationReport
from .hopf import HopfData, HopfError, dual_hopf, function_algebra, group_algebra, verify_hopf
from .measures import Functional, MeasureError, convolve, counit, haar, is_nondegenerate, is_state, point_mass
from .actions import ActionData, ActionError, comultiplication_as_action, from_automorphism_action, \
    from_group_action_on_set, is_ergodic, pauli_action, verify_action
from .harmonic import HarmonicError, HarmonicSpace, MarkovOperator, harmonic_space, markov_operator
from .theorems import ScenarioAnalysis, run_theorem_suite

__version__ = "0.1.0"

__all__ = [
    "DEFAULT_TOL",
    "DecompositionError",
    "Tolerance",
    "GroupError",
    "named_group",
    "small_groups",
    "ModuleAlgebra",
    "commutative",
    "matrix_algebra",
    "AxiomError",
    "VerificationReport",
    "HopfData",
    "HopfError",
    "dual_hopf",
    "function_algebra",
    "group_algebra",
    "verify_hopf",
    "Functional",
    "MeasureError",
    "convolve",
    "counit",
    "haar",
    "is_nondegenerate",
    "is_state",
    "point_mass",
    "ActionData",
    "ActionError",
    "comultiplication_as_action",
    "from_automorphism_action",
    "from_group_action_on_set",
    "is_ergodic",
    "pauli_action",
    "verify_action",
    "HarmonicError",
    "HarmonicSpace",
    "MarkovOperator",
    "harmonic_space",
    "markov_operator",
    "ScenarioAnalysis",
    "run_theorem_suite",
]
