"""Logical equivalence checking for ultra-deep-pipelined clocked netlists."""

from .checks import (
    BaseDistanceSet,
    CheckReport,
    Violation,
    base_distances,
    check_fanout,
    check_path_balance,
)
from .errors import SfqlecError
from .faults import FAULT_KINDS, FaultSpec, inject
from .itcl import ArrivalSchedule, InputMatching, apply_itcl, match_inputs
from .mcid import (
    MCIDCircuit,
    MCIDGate,
    TimedSignal,
    build_mcid,
    dependency_window,
    mcid_size_upper_bound,
)
from .miter import Miter, Verdict, VerdictStats, build_miter, check_equivalence, extract_trace
from .netlist import (
    Gate,
    Netlist,
    NetlistError,
    circuit_depth,
    logic_level,
    logic_levels,
    parse_netlist,
    topological_order,
    write_netlist,
)
from .profiles import TechnologyProfile, builtin_profile, load_profile, resolve_profile
from .sat import CdclSolver, Cnf, cnf_from_aig, to_dimacs
from .sim import (
    ExhaustiveResult,
    evaluate_golden,
    exhaustive_equivalence,
    parse_wave,
    replay_trace,
    simulate,
)
from .trace import TimedTrace

__version__ = "0.1.0"

__all__ = [
    "ArrivalSchedule",
    "BaseDistanceSet",
    "CdclSolver",
    "CheckReport",
    "Cnf",
    "ExhaustiveResult",
    "FAULT_KINDS",
    "FaultSpec",
    "Gate",
    "InputMatching",
    "MCIDCircuit",
    "MCIDGate",
    "Miter",
    "Netlist",
    "NetlistError",
    "SfqlecError",
    "TechnologyProfile",
    "TimedSignal",
    "TimedTrace",
    "Verdict",
    "VerdictStats",
    "Violation",
    "apply_itcl",
    "base_distances",
    "build_mcid",
    "build_miter",
    "builtin_profile",
    "check_equivalence",
    "check_fanout",
    "check_path_balance",
    "circuit_depth",
    "cnf_from_aig",
    "dependency_window",
    "evaluate_golden",
    "exhaustive_equivalence",
    "extract_trace",
    "inject",
    "load_profile",
    "logic_level",
    "logic_levels",
    "match_inputs",
    "mcid_size_upper_bound",
    "parse_netlist",
    "parse_wave",
    "replay_trace",
    "resolve_profile",
    "simulate",
    "to_dimacs",
    "topological_order",
    "write_netlist",
    "__version__",
]
