"""Batch assignment backends: compiled hot loop with pure-Python fallback.

Batch mode assigns every task in id order, refreshing dynamic weights before
each pick when the scheduler is AWLC.  That loop dominates the runtime of
large scenarios, so a Cython kernel (``lbsim._batchext``) mirrors the pure
implementation operation for operation; the two produce bit-identical
assignments (the extension is compiled without FP contraction).

The backend is picked at import: the extension when it built, otherwise the
pure loop.  ``LBSIM_BACKEND=python|compiled`` overrides the choice, and
callers can pass ``backend=`` explicitly (the benchmark does).
"""

import math
import os
from array import array

from .domain import ServerState, TaskSpec, WeightParams
from .errors import NoServerAvailable
from .schedulers import (
    SchedulerKind,
    SchedulerState,
    on_assign,
    select_server,
    wrr_effective_weights,
)
from .telemetry import ResourceModel, refresh_weights

try:
    from . import _batchext
except ImportError:  # extension not built; pure fallback stays available
    _batchext = None

_KIND_CODES = {
    SchedulerKind.RR: 0,
    SchedulerKind.WRR: 1,
    SchedulerKind.LC: 2,
    SchedulerKind.WLC: 3,
    SchedulerKind.AWLC: 4,
}


def compiled_available() -> bool:
    return _batchext is not None


def default_backend() -> str:
    env = os.environ.get("LBSIM_BACKEND", "").strip().lower()
    if env in ("python", "pure"):
        return "python"
    if env in ("compiled", "c", "ext"):
        if not compiled_available():
            raise RuntimeError("LBSIM_BACKEND=compiled but lbsim._batchext is not built")
        return "compiled"
    if env not in ("", "auto"):
        raise RuntimeError(f"unknown LBSIM_BACKEND value: {env!r}")
    return "compiled" if compiled_available() else "python"


def assign_batch(
    fleet: list[ServerState],
    tasks: list[TaskSpec],
    kind: SchedulerKind,
    params: WeightParams,
    model: ResourceModel,
    backend: str | None = None,
) -> list[int]:
    """Assign every task in order; returns the chosen server per task.

    Counters on ``fleet`` are only guaranteed to be updated by the python
    backend; callers that need final counts should derive them from the
    returned assignment vector.
    """
    name = backend or default_backend()
    if name == "python":
        return assign_batch_python(fleet, tasks, kind, params, model)
    if name == "compiled":
        if not compiled_available():
            raise RuntimeError("compiled backend requested but not built")
        return _assign_batch_compiled(fleet, tasks, kind, params, model)
    raise ValueError(f"unknown backend: {name!r}")


def assign_batch_python(
    fleet: list[ServerState],
    tasks: list[TaskSpec],
    kind: SchedulerKind,
    params: WeightParams,
    model: ResourceModel,
) -> list[int]:
    """Reference batch loop driving the scheduler and telemetry modules."""
    state = SchedulerState(kind=kind)
    adaptive = kind is SchedulerKind.AWLC
    out = []
    for task in tasks:
        if adaptive:
            refresh_weights(fleet, model, params)
        sid = select_server(fleet, state, params)
        on_assign(fleet[sid], task.task_class)
        out.append(sid)
    return out


def _assign_batch_compiled(fleet, tasks, kind, params, model):
    n = len(fleet)
    speeds = [s.speed for s in fleet]
    mean_speed = math.fsum(speeds) / n if n else 1.0
    norm = array("d", [sp / mean_speed for sp in speeds])
    static_w = array("d", [s.static_weight for s in fleet])
    wrr_w = array("q", wrr_effective_weights(fleet))
    alive = array("b", [1 if s.alive else 0 for s in fleet])
    conns = array("q", [s.connections for s in fleet])
    counts = array("q", [c for s in fleet for c in s.class_counts])
    classes = array("q", [t.task_class.index for t in tasks])
    out = array("q", bytes(8 * len(tasks)))
    done = _batchext.assign_batch(
        _KIND_CODES[kind],
        norm,
        static_w,
        wrr_w,
        alive,
        conns,
        counts,
        classes,
        params.k1,
        params.k2,
        array("d", params.class_weights),
        array("d", model.cpu_demand),
        array("d", model.mem_demand),
        model.floor,
        out,
    )
    if done < len(tasks):
        raise NoServerAvailable(f"no server available for task {tasks[done].id}")
    return list(out)
