"""The five selection algorithms behind one scheduler contract.

All selectors scan the fleet in ascending index order and use strict
inequalities, so exact ties keep the earliest candidate and selection is
fully deterministic.  The weighted selectors compare cross products instead
of ratios (``c_m * w_i > c_i * w_m`` rather than ``c_m / w_m > c_i / w_i``),
which avoids divisions and never selects a zero-weight server: a candidate
with weight 0 makes the left side 0, which can never exceed the right.

No epsilon is applied in the comparators; the tie semantics are defined by
the strict inequality and the test suite cross-checks them against exact
rational arithmetic.
"""

import math
from dataclasses import dataclass
from enum import Enum

from .domain import ServerId, ServerState, TaskClass, WeightParams
from .errors import AssignToDeadServer, CompleteWithoutAssign, NoServerAvailable


class SchedulerKind(str, Enum):
    RR = "rr"
    WRR = "wrr"
    LC = "lc"
    WLC = "wlc"
    AWLC = "awlc"


@dataclass
class SchedulerState:
    """Rotation state for the static baselines.

    ``rr_cursor`` is the index of the last server RR returned (-1 before the
    first pick, so a fresh scheduler starts at server 0).  ``wrr_index`` and
    ``wrr_weight`` are the position and current weight threshold of the
    interleaved weighted rotation.
    """

    kind: SchedulerKind
    rr_cursor: int = -1
    wrr_index: int = -1
    wrr_weight: int = 0


def rr_select(fleet: list[ServerState], state: SchedulerState) -> ServerId:
    """Next alive server in cyclic index order after the cursor."""
    n = len(fleet)
    for step in range(1, n + 1):
        idx = (state.rr_cursor + step) % n
        if fleet[idx].alive:
            state.rr_cursor = idx
            return idx
    raise NoServerAvailable("no alive server")


def wrr_effective_weights(fleet: list[ServerState]) -> list[int]:
    """Integer rotation weights: ceil of the static weight, 0 when unusable."""
    return [
        math.ceil(s.static_weight) if s.alive and s.static_weight > 0 else 0
        for s in fleet
    ]


def wrr_select(fleet: list[ServerState], state: SchedulerState) -> ServerId:
    """Interleaved weighted rotation.

    Classic current-weight variant: walk the ring, lowering a weight
    threshold by the gcd of the weights each full turn; a server is picked
    when its weight reaches the threshold.  Over a window of sum(weights)
    consecutive calls on a static fleet every server is picked exactly
    ``weight`` times, interleaved rather than in runs.
    """
    weights = wrr_effective_weights(fleet)
    maxw = max(weights, default=0)
    if maxw <= 0:
        raise NoServerAvailable("no alive server with positive weight")
    g = math.gcd(*[w for w in weights if w > 0])
    n = len(fleet)
    i, cw = state.wrr_index, state.wrr_weight
    if cw > maxw:  # fleet shrank since the last pick
        cw = maxw
    for _ in range(n * (maxw // g + 1) + n):
        i = (i + 1) % n
        if i == 0:
            cw -= g
            if cw <= 0:
                cw = maxw
        if weights[i] >= cw:
            state.wrr_index, state.wrr_weight = i, cw
            return i
    raise NoServerAvailable("weighted rotation found no server")


def lc_select(fleet: list[ServerState]) -> ServerId:
    """Alive server with the fewest connections; ties keep the lowest index."""
    m = -1
    for i, s in enumerate(fleet):
        if s.alive and (m < 0 or s.connections < fleet[m].connections):
            m = i
    if m < 0:
        raise NoServerAvailable("no alive server")
    return m


def wlc_prefers(c_m: int, w_m: float, c_i: int, w_i: float) -> bool:
    """True iff candidate i strictly beats incumbent m on connections/weight.

    Multiplicative form of ``c_i / w_i < c_m / w_m``; requires w_i > 0 on the
    caller's side.  Equality keeps the incumbent.
    """
    return c_m * w_i > c_i * w_m


def wlc_select(fleet: list[ServerState]) -> ServerId:
    """Weighted least-connection pick over static weights.

    The first server with positive weight becomes the incumbent; every later
    server replaces it only when strictly better.  Dead servers count as
    weight 0.
    """
    weights = [s.static_weight if s.alive else 0.0 for s in fleet]
    m = -1
    for i, w in enumerate(weights):
        if w > 0:
            m = i
            break
    if m < 0:
        raise NoServerAvailable("no alive server with positive weight")
    for i in range(m + 1, len(fleet)):
        if wlc_prefers(fleet[m].connections, weights[m], fleet[i].connections, weights[i]):
            m = i
    return m


def awlc_load(s: ServerState, p: WeightParams) -> float:
    """Real-time load of a server: class counts weighted by class weights."""
    c = s.class_counts
    pw = p.class_weights
    return c[0] * pw[0] + c[1] * pw[1] + c[2] * pw[2] + c[3] * pw[3]


def awlc_prefers(load_m: float, w_m: float, load_i: float, w_i: float) -> bool:
    """True iff candidate i has a strictly smaller load/weight ratio.

    Multiplicative form of ``load_i / w_i < load_m / w_m`` for positive
    weights.  Equality keeps the incumbent.
    """
    return load_i * w_m < load_m * w_i


def awlc_select(fleet: list[ServerState], p: WeightParams) -> ServerId:
    """Adaptive weighted least-connection pick over dynamic weights.

    Expects the dynamic weights to have been refreshed just before the call;
    servers with weight 0 (down servers) are never returned.
    """
    m = -1
    for i, s in enumerate(fleet):
        if s.dynamic_weight > 0:
            m = i
            break
    if m < 0:
        raise NoServerAvailable("all server weights are 0")
    load_m = awlc_load(fleet[m], p)
    for i in range(m + 1, len(fleet)):
        load_i = awlc_load(fleet[i], p)
        if awlc_prefers(load_m, fleet[m].dynamic_weight, load_i, fleet[i].dynamic_weight):
            m = i
            load_m = load_i
    return m


def select_server(
    fleet: list[ServerState], state: SchedulerState, params: WeightParams
) -> ServerId:
    """Dispatch to the selector named by ``state.kind``."""
    kind = state.kind
    if kind is SchedulerKind.RR:
        return rr_select(fleet, state)
    if kind is SchedulerKind.WRR:
        return wrr_select(fleet, state)
    if kind is SchedulerKind.LC:
        return lc_select(fleet)
    if kind is SchedulerKind.WLC:
        return wlc_select(fleet)
    if kind is SchedulerKind.AWLC:
        return awlc_select(fleet, params)
    raise ValueError(f"unknown scheduler kind: {kind!r}")


def on_assign(s: ServerState, task_class: TaskClass) -> ServerState:
    """Record one task of ``task_class`` as assigned to ``s``."""
    if not s.alive:
        raise AssignToDeadServer(f"server {s.id} is down")
    s.class_counts[task_class.index] += 1
    s.connections += 1
    return s


def on_complete(s: ServerState, task_class: TaskClass) -> ServerState:
    """Record one task of ``task_class`` as finished on ``s``."""
    if s.class_counts[task_class.index] < 1:
        raise CompleteWithoutAssign(
            f"server {s.id} has no active {task_class.name} task"
        )
    s.class_counts[task_class.index] -= 1
    s.connections -= 1
    return s
