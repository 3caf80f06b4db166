from .config import RunConfig
from .coxeter import CartanData, RootSystem, build_root_system, cartan_type
from .errors import (
    CheckSkipped,
    CyclicChecks,
    DegreeBoundExceeded,
    InvalidRootOfUnity,
    NotReduced,
    ParseError,
    QGroupsError,
    UnknownSuite,
)
from .grammar import parse_element
from .suites import Outcome, Registry, Report, Status, SuiteContext, register_builtin_suites, requires
from .types import Exponents, Weight, Word
from .uqcore import AlgebraElement, QuantumAlgebra, TensorElement

__all__ = [
    "define_suite",
    "get_suite",
    "run_suites",
    "AlgebraElement",
    "CartanData",
    "CheckSkipped",
    "CyclicChecks",
    "DegreeBoundExceeded",
    "Exponents",
    "InvalidRootOfUnity",
    "NotReduced",
    "Outcome",
    "ParseError",
    "QGroupsError",
    "QuantumAlgebra",
    "REGISTRY",
    "Registry",
    "Report",
    "RootSystem",
    "RunConfig",
    "Status",
    "SuiteContext",
    "TensorElement",
    "UnknownSuite",
    "Weight",
    "Word",
    "build_root_system",
    "cartan_type",
    "parse_element",
    "requires",
]

_0: Registry = register_builtin_suites(Registry())

define_suite = _0.define_suite
get_suite = _0.get_suite
run_suites = _0.run
REGISTRY = _0

del _0
