"""Dynamic weight recomputation and telemetry ingestion.

The dynamic weight of a server is ``k1 * cpu_idle + k2 * mem_idle``.  In a
live deployment the idle rates come from monitoring; in simulation they are
derived from the server's current per-class counts through a
``ResourceModel``, and recorded traces can be replayed from a line-oriented
file (one JSON object per line, ``#`` comments allowed).
"""

import json
import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .domain import ServerState, WeightParams
from .errors import InvalidIdleRate, MalformedRecord, UnknownServer

IDLE_FLOOR = 0.01


@dataclass(frozen=True)
class ResourceModel:
    """Per-class CPU/memory footprints used to derive idle rates from load.

    One active task of class j consumes ``cpu_demand[j]`` of a reference
    server's CPU capacity (memory analogous).  ``floor`` is the lowest idle
    rate ever reported, so alive servers always keep a positive weight and
    the only zero-weight servers are dead ones.
    """

    cpu_demand: tuple[float, float, float, float]
    mem_demand: tuple[float, float, float, float]
    floor: float = IDLE_FLOOR

    def __post_init__(self):
        if not 0.0 < self.floor <= 0.1:
            raise ValueError("idle floor must lie in (0, 0.1]")
        for name, demands in (("cpu", self.cpu_demand), ("mem", self.mem_demand)):
            if len(demands) != 4:
                raise ValueError(f"{name}_demand needs exactly 4 entries")
            if any(not 0.0 <= d <= 1.0 for d in demands):
                raise ValueError(f"{name}_demand entries must lie in [0, 1]")

    @classmethod
    def sized_for_load(
        cls,
        tasks_per_server: float,
        params: WeightParams,
        class_mix: tuple[float, ...],
        cpu_target: float = 0.99,
        mem_target: float = 0.90,
        floor: float = IDLE_FLOOR,
    ) -> "ResourceModel":
        """Scale per-class footprints to an expected concurrent load.

        Footprints are set so that a server holding its fair share of
        ``tasks_per_server`` concurrent tasks runs at ``cpu_target`` CPU and
        ``mem_target`` memory utilization.  A count-linear idle model is only
        informative within a narrow band of absolute load, so the footprints
        must be sized to the scenario rather than fixed.
        """
        mean_load = tasks_per_server * sum(
            m * p for m, p in zip(class_mix, params.class_weights)
        )
        if mean_load <= 0:
            raise ValueError("expected load must be positive")
        cpu = tuple(min(1.0, cpu_target * p / mean_load) for p in params.class_weights)
        mem = tuple(min(1.0, mem_target * p / mean_load) for p in params.class_weights)
        return cls(cpu_demand=cpu, mem_demand=mem, floor=floor)


@dataclass(frozen=True)
class TelemetryRecord:
    time: float
    server: int
    cpu_idle_rate: float
    mem_idle_rate: float


def compute_weight(vc: float, vm: float, p: WeightParams) -> float:
    """Dynamic weight ``k1 * vc + k2 * vm`` for idle rates in (0, 1]."""
    if not 0.0 < vc <= 1.0:
        raise InvalidIdleRate(f"cpu idle rate {vc!r} outside (0, 1]")
    if not 0.0 < vm <= 1.0:
        raise InvalidIdleRate(f"mem idle rate {vm!r} outside (0, 1]")
    return p.k1 * vc + p.k2 * vm


def derive_idle_rates(
    s: ServerState, model: ResourceModel, mean_speed: float | None = None
) -> tuple[float, float]:
    """Idle rates implied by the server's current per-class counts.

    Each rate is ``1 - load / normalizer`` clamped to ``[floor, 1]``, where
    the normalizer is the server's speed relative to the fleet mean, so
    faster servers deplete their idle capacity more slowly.  With no
    ``mean_speed`` the normalizer is 1.
    """
    norm = s.speed / mean_speed if mean_speed is not None else 1.0
    c = s.class_counts
    dc = model.cpu_demand
    dm = model.mem_demand
    cpu_load = c[0] * dc[0] + c[1] * dc[1] + c[2] * dc[2] + c[3] * dc[3]
    vc = 1.0 - cpu_load / norm
    if vc < model.floor:
        vc = model.floor
    mem_load = c[0] * dm[0] + c[1] * dm[1] + c[2] * dm[2] + c[3] * dm[3]
    vm = 1.0 - mem_load / norm
    if vm < model.floor:
        vm = model.floor
    return vc, vm


def refresh_weights(
    fleet: list[ServerState], model: ResourceModel, p: WeightParams
) -> list[ServerState]:
    """Recompute every server's dynamic weight from its current load.

    Dead servers get weight 0; alive servers get the weight of their derived
    idle rates.  Idempotent on a static fleet.
    """
    mean_speed = math.fsum(s.speed for s in fleet) / len(fleet) if fleet else 1.0
    for s in fleet:
        if not s.alive:
            s.dynamic_weight = 0.0
            continue
        vc, vm = derive_idle_rates(s, model, mean_speed)
        s.cpu_idle_rate = vc
        s.mem_idle_rate = vm
        s.dynamic_weight = compute_weight(vc, vm, p)
    return fleet


_RECORD_FIELDS = {"t", "server", "vc", "vm"}


def parse_telemetry_line(line: str) -> TelemetryRecord:
    """Parse one replay line ``{"t": .., "server": .., "vc": .., "vm": ..}``.

    Raises MalformedRecord for anything that is not exactly such an object
    and InvalidIdleRate when a rate falls outside (0, 1].
    """
    text = line.strip()
    if not text:
        raise MalformedRecord("empty line")
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedRecord(f"not valid JSON: {exc}") from None
    if not isinstance(obj, dict):
        raise MalformedRecord("record must be a JSON object")
    if set(obj) != _RECORD_FIELDS:
        raise MalformedRecord(
            f"record must have exactly the fields t, server, vc, vm; got {sorted(obj)}"
        )
    t, server = obj["t"], obj["server"]
    if isinstance(t, bool) or not isinstance(t, (int, float)) or t < 0:
        raise MalformedRecord(f"t must be a non-negative number, got {t!r}")
    if isinstance(server, bool) or not isinstance(server, int) or server < 0:
        raise MalformedRecord(f"server must be a non-negative integer, got {server!r}")
    rates = []
    for key in ("vc", "vm"):
        v = obj[key]
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise MalformedRecord(f"{key} must be a number, got {v!r}")
        if not 0.0 < v <= 1.0:
            raise InvalidIdleRate(f"{key}={v!r} outside (0, 1]")
        rates.append(float(v))
    return TelemetryRecord(float(t), server, rates[0], rates[1])


def iter_telemetry(lines: Iterable[str]) -> Iterator[tuple[int, TelemetryRecord]]:
    """Yield ``(line_number, record)`` from a replay stream.

    Comment lines (leading ``#``) and blank lines are skipped.  Timestamps
    must be non-decreasing across the stream.  Parse errors are re-raised
    with the 1-based line number prepended.
    """
    last_t = None
    for lineno, raw in enumerate(lines, start=1):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        try:
            rec = parse_telemetry_line(raw)
        except (MalformedRecord, InvalidIdleRate) as exc:
            raise type(exc)(f"line {lineno}: {exc}") from None
        if last_t is not None and rec.time < last_t:
            raise MalformedRecord(
                f"line {lineno}: non-monotonic time {rec.time} after {last_t}"
            )
        last_t = rec.time
        yield lineno, rec


def apply_telemetry(
    fleet: list[ServerState], record: TelemetryRecord, p: WeightParams
) -> list[ServerState]:
    """Store a record's idle rates and recompute that server's weight.

    Rates are stored even for a dead server, but its weight stays 0.
    """
    if record.server >= len(fleet):
        raise UnknownServer(
            f"record names server {record.server} but the fleet has {len(fleet)}"
        )
    s = fleet[record.server]
    s.cpu_idle_rate = record.cpu_idle_rate
    s.mem_idle_rate = record.mem_idle_rate
    if s.alive:
        s.dynamic_weight = compute_weight(record.cpu_idle_rate, record.mem_idle_rate, p)
    return fleet
