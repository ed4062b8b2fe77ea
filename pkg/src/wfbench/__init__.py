"""Exact work-function tables for the k-server problem, with property checks."""
from .analysis import (
    HistoryReport,
    LipschitzViolation,
    MonotonicityViolation,
    check_history,
    check_lipschitz,
    check_monotonicity,
)
from .configuration import Configuration, Mode, enumerate_configs, matching_distance, replace
from .errors import (
    ConsistencyError,
    PreconditionError,
    ResourceLimitError,
    StructuralError,
    WorkbenchError,
)
from .instance import Instance, load_instance, paper_instance
from .oracle import Schedule, WfaRun, brute_force_table, lazy_schedules, run_wfa
from .search import SearchConfig, SearchReport, generate_instance, hunt
from .space import DistanceSpace, TriangleViolation, metric_closure, validate_triangle
from .workfunction import (
    WorkFunctionHistory,
    WorkFunctionTable,
    format_tsv,
    initial_table,
    run_history,
    trace_minimizer,
    update,
)

__version__ = "0.1.0"
