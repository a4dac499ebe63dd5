"""Load-balancing schedulers (RR, WRR, LC, WLC, AWLC) and a deterministic
simulation harness for comparing them on heterogeneous fleets.

The hot batch-assignment loop has a compiled core with a pure-Python
fallback; ``lbsim.backends`` selects between them at import.
"""

from .backends import assign_batch, compiled_available, default_backend
from .domain import ServerId, ServerState, TaskClass, TaskSpec, WeightParams, validate_server
from .metrics import SummaryRow, mean, stddev, summarize
from .schedulers import (
    SchedulerKind,
    SchedulerState,
    awlc_load,
    awlc_prefers,
    awlc_select,
    lc_select,
    on_assign,
    on_complete,
    rr_select,
    select_server,
    wlc_prefers,
    wlc_select,
    wrr_select,
)
from .simulator import (
    Assignment,
    Batch,
    ExplicitSpeeds,
    Poisson,
    ScenarioConfig,
    ScenarioResult,
    Uniform,
    build_fleet,
    config_from_dict,
    generate_workload,
    load_config,
    run_replications,
    run_scenario,
)
from .telemetry import (
    ResourceModel,
    TelemetryRecord,
    apply_telemetry,
    compute_weight,
    derive_idle_rates,
    iter_telemetry,
    parse_telemetry_line,
    refresh_weights,
)

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "Batch",
    "ExplicitSpeeds",
    "Poisson",
    "ResourceModel",
    "ScenarioConfig",
    "ScenarioResult",
    "SchedulerKind",
    "SchedulerState",
    "ServerId",
    "ServerState",
    "SummaryRow",
    "TaskClass",
    "TaskSpec",
    "TelemetryRecord",
    "Uniform",
    "WeightParams",
    "apply_telemetry",
    "assign_batch",
    "awlc_load",
    "awlc_prefers",
    "awlc_select",
    "build_fleet",
    "compiled_available",
    "compute_weight",
    "config_from_dict",
    "default_backend",
    "derive_idle_rates",
    "generate_workload",
    "iter_telemetry",
    "lc_select",
    "load_config",
    "mean",
    "on_assign",
    "on_complete",
    "parse_telemetry_line",
    "refresh_weights",
    "rr_select",
    "run_replications",
    "run_scenario",
    "select_server",
    "stddev",
    "summarize",
    "validate_server",
    "wlc_prefers",
    "wlc_select",
    "wrr_select",
]
