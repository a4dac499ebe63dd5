"""Deterministic scenario engine: workload generation, runs, replications.

Every random quantity is drawn from ``random.Random`` seeded through SHA-256
labelled substreams of the scenario seed, consuming only ``random()`` doubles
through explicit inverse transforms.  That keeps results identical across
platforms and Python versions, and independent of the scheduler under test
(so compared schedulers see the same fleet and task list for a given seed).

Batch mode assigns all tasks at time 0, one at a time in id order, with
counter updates between picks; a server's makespan is then its total
assigned demand divided by its speed.  Poisson mode runs an event queue of
arrivals and completions with FCFS service per server; the makespan is the
server's last completion time.
"""

import hashlib
import heapq
import json
import math
import random
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Union

from .backends import assign_batch
from .domain import ServerState, TaskClass, TaskSpec, WeightParams
from .errors import InvalidConfig
from .metrics import mean as _mean
from .metrics import stddev as _stddev
from .schedulers import SchedulerKind, SchedulerState, on_assign, on_complete, select_server
from .telemetry import ResourceModel, refresh_weights


@dataclass(frozen=True)
class Batch:
    """All tasks present at t=0, assigned sequentially."""


@dataclass(frozen=True)
class Poisson:
    """Tasks arrive as a Poisson process with the given rate (tasks/second)."""

    rate: float


ArrivalMode = Union[Batch, Poisson]


@dataclass(frozen=True)
class Uniform:
    lo: float
    hi: float


@dataclass(frozen=True)
class ExplicitSpeeds:
    speeds: tuple[float, ...]


DEFAULT_DEMANDS = (
    Uniform(1.0, 5.0),
    Uniform(5.0, 20.0),
    Uniform(20.0, 80.0),
    Uniform(80.0, 320.0),
)


@dataclass(frozen=True)
class ScenarioConfig:
    n_servers: int = 15
    n_tasks: int = 150
    scheduler: SchedulerKind = SchedulerKind.AWLC
    seed: int = 1
    arrival_mode: ArrivalMode = Batch()
    server_speed_distribution: Union[Uniform, ExplicitSpeeds] = Uniform(0.5, 2.0)
    demand_distributions: tuple[Uniform, Uniform, Uniform, Uniform] = DEFAULT_DEMANDS
    class_mix: tuple[float, float, float, float] = (0.25, 0.25, 0.25, 0.25)
    weight_params: WeightParams = field(default_factory=WeightParams)
    resource_model: ResourceModel | None = None  # None: sized to the scenario

    def __post_init__(self):
        if isinstance(self.n_servers, bool) or not isinstance(self.n_servers, int) or self.n_servers < 1:
            raise InvalidConfig("n_servers must be a positive integer")
        if isinstance(self.n_tasks, bool) or not isinstance(self.n_tasks, int) or self.n_tasks < 1:
            raise InvalidConfig("n_tasks must be a positive integer")
        if not isinstance(self.scheduler, SchedulerKind):
            raise InvalidConfig(f"unknown scheduler: {self.scheduler!r}")
        if isinstance(self.seed, bool) or not isinstance(self.seed, int):
            raise InvalidConfig("seed must be an integer")
        if not isinstance(self.arrival_mode, (Batch, Poisson)):
            raise InvalidConfig(f"unknown arrival mode: {self.arrival_mode!r}")
        if isinstance(self.arrival_mode, Poisson) and not self.arrival_mode.rate > 0:
            raise InvalidConfig("poisson arrival rate must be positive")
        if not isinstance(self.server_speed_distribution, (Uniform, ExplicitSpeeds)):
            raise InvalidConfig(
                f"unknown speed distribution: {self.server_speed_distribution!r}"
            )
        if isinstance(self.server_speed_distribution, Uniform):
            u = self.server_speed_distribution
            if not 0 < u.lo <= u.hi:
                raise InvalidConfig("speed range must satisfy 0 < lo <= hi")
        else:
            speeds = self.server_speed_distribution.speeds
            if len(speeds) != self.n_servers:
                raise InvalidConfig(
                    f"explicit speeds list has {len(speeds)} entries for "
                    f"{self.n_servers} servers"
                )
            if any(not sp > 0 for sp in speeds):
                raise InvalidConfig("explicit speeds must be positive")
        if len(self.demand_distributions) != 4:
            raise InvalidConfig("one demand distribution per task class required")
        for u in self.demand_distributions:
            if not 0 < u.lo <= u.hi:
                raise InvalidConfig("demand ranges must satisfy 0 < lo <= hi")
        if len(self.class_mix) != 4 or any(p < 0 for p in self.class_mix):
            raise InvalidConfig("class_mix needs 4 non-negative probabilities")
        if abs(math.fsum(self.class_mix) - 1.0) > 1e-9:
            raise InvalidConfig("class_mix must sum to 1")

    def resolved_resource_model(self) -> ResourceModel:
        if self.resource_model is not None:
            return self.resource_model
        return ResourceModel.sized_for_load(
            self.n_tasks / self.n_servers, self.weight_params, self.class_mix
        )


@dataclass(frozen=True)
class Assignment:
    task: int
    server: int
    assigned_at: float
    completed_at: float


@dataclass(frozen=True)
class ScenarioResult:
    per_server_makespan: list[float]
    per_server_task_count: list[int]
    per_server_demand: list[float]
    server_speeds: list[float]
    assignments: list[Assignment]
    mean: float
    stddev: float


def _substream(seed: int, label: str) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{label}".encode()).digest()
    return random.Random(int.from_bytes(digest[:8], "big"))


def _draw_class(rng: random.Random, mix: tuple[float, ...]) -> TaskClass:
    u = rng.random()
    acc = 0.0
    for j, p in enumerate(mix):
        acc += p
        if u < acc:
            return TaskClass(j + 1)
    return TaskClass.M4


def build_fleet(cfg: ScenarioConfig) -> list[ServerState]:
    """Fleet for a scenario: speeds from the configured distribution.

    Static weights (used by WRR/WLC) model an administrator presetting small
    integers proportional to capability: ``max(1, round(speed))``.
    """
    dist = cfg.server_speed_distribution
    if isinstance(dist, ExplicitSpeeds):
        speeds = list(dist.speeds)
    else:
        rng = _substream(cfg.seed, "fleet")
        speeds = [dist.lo + (dist.hi - dist.lo) * rng.random() for _ in range(cfg.n_servers)]
    return [
        ServerState(id=i, speed=sp, static_weight=float(max(1, round(sp))))
        for i, sp in enumerate(speeds)
    ]


def generate_workload(cfg: ScenarioConfig) -> list[TaskSpec]:
    """The scenario's task list; identical byte for byte for a given seed."""
    rng = _substream(cfg.seed, "tasks")
    poisson = isinstance(cfg.arrival_mode, Poisson)
    t = 0.0
    tasks = []
    for i in range(cfg.n_tasks):
        cls = _draw_class(rng, cfg.class_mix)
        u = cfg.demand_distributions[cls.index]
        demand = u.lo + (u.hi - u.lo) * rng.random()
        if poisson:
            t += -math.log(1.0 - rng.random()) / cfg.arrival_mode.rate
        tasks.append(TaskSpec(id=i, task_class=cls, service_demand=demand, arrival_time=t if poisson else 0.0))
    return tasks


def _batch_assignments(fleet, tasks, assigned):
    """Audit trail for a batch run: FCFS completion times per server."""
    elapsed = [0.0] * len(fleet)
    out = []
    for task, sid in zip(tasks, assigned):
        elapsed[sid] += task.service_demand
        out.append(
            Assignment(
                task=task.id,
                server=sid,
                assigned_at=0.0,
                completed_at=elapsed[sid] / fleet[sid].speed,
            )
        )
    return out


def _run_poisson(fleet, tasks, kind, params, model):
    """Event-driven run: arrivals interleave with completions, FCFS per server.

    Completions at a given instant are processed before arrivals so freed
    capacity is visible to the pick; ties beyond that resolve in schedule
    order, keeping the whole run deterministic.
    """
    state = SchedulerState(kind=kind)
    adaptive = kind is SchedulerKind.AWLC
    n = len(fleet)
    assigned = [-1] * len(tasks)
    assigned_at = [0.0] * len(tasks)
    completed_at = [0.0] * len(tasks)
    queues = [deque() for _ in range(n)]  # FIFO of task ids waiting/running
    makespan = [0.0] * n
    events = []  # (time, class_code, seq): completions (0) before arrivals (1)
    seq = 0
    for task in tasks:
        events.append((task.arrival_time, 1, seq, task.id))
        seq += 1
    heapq.heapify(events)

    def start_next(sid, now):
        nonlocal seq
        task = tasks[queues[sid][0]]
        heapq.heappush(
            events, (now + task.service_demand / fleet[sid].speed, 0, seq, task.id)
        )
        seq += 1

    while events:
        now, code, _, tid = heapq.heappop(events)
        task = tasks[tid]
        if code == 1:  # arrival
            if adaptive:
                refresh_weights(fleet, model, params)
            sid = select_server(fleet, state, params)
            on_assign(fleet[sid], task.task_class)
            assigned[tid] = sid
            assigned_at[tid] = now
            queues[sid].append(tid)
            if len(queues[sid]) == 1:
                start_next(sid, now)
        else:  # completion
            sid = assigned[tid]
            on_complete(fleet[sid], task.task_class)
            completed_at[tid] = now
            makespan[sid] = now
            queues[sid].popleft()
            if queues[sid]:
                start_next(sid, now)

    assignments = [
        Assignment(task=t.id, server=assigned[t.id], assigned_at=assigned_at[t.id], completed_at=completed_at[t.id])
        for t in tasks
    ]
    return assigned, assignments, makespan


def run_scenario(cfg: ScenarioConfig, backend: str | None = None) -> ScenarioResult:
    """Run one scenario; the result is a pure function of the config."""
    fleet = build_fleet(cfg)
    tasks = generate_workload(cfg)
    model = cfg.resolved_resource_model()
    speeds = [s.speed for s in fleet]

    if isinstance(cfg.arrival_mode, Poisson):
        assigned, assignments, makespan = _run_poisson(
            fleet, tasks, cfg.scheduler, cfg.weight_params, model
        )
    else:
        assigned = assign_batch(
            fleet, tasks, cfg.scheduler, cfg.weight_params, model, backend=backend
        )
        assignments = _batch_assignments(fleet, tasks, assigned)

    demand = [0.0] * cfg.n_servers
    counts = [0] * cfg.n_servers
    for task, sid in zip(tasks, assigned):
        demand[sid] += task.service_demand
        counts[sid] += 1
    if isinstance(cfg.arrival_mode, Batch):
        makespan = [demand[i] / speeds[i] for i in range(cfg.n_servers)]

    return ScenarioResult(
        per_server_makespan=makespan,
        per_server_task_count=counts,
        per_server_demand=demand,
        server_speeds=speeds,
        assignments=assignments,
        mean=_mean(makespan),
        stddev=_stddev(makespan) if cfg.n_servers > 1 else 0.0,
    )


def run_replications(
    cfg: ScenarioConfig, n_reps: int, backend: str | None = None
) -> list[ScenarioResult]:
    """Run the scenario under seeds seed, seed+1, ..., seed+n_reps-1."""
    if n_reps < 1:
        raise InvalidConfig("n_reps must be at least 1")
    return [
        run_scenario(replace(cfg, seed=cfg.seed + k), backend=backend)
        for k in range(n_reps)
    ]


# --- scenario config files -------------------------------------------------
#
# JSON mirroring ScenarioConfig one to one; unknown keys are rejected.
# arrival_mode: "batch" | {"poisson": <rate>}
# server_speed_distribution: {"uniform": [lo, hi]} | {"explicit": [..]}
# demand_distributions: {"M1": [lo, hi], ..., "M4": [lo, hi]}
# resource_model may be omitted (or null) to size it to the scenario.

_CLASS_KEYS = ("M1", "M2", "M3", "M4")


def _reject_unknown(obj: dict, allowed: set[str], where: str) -> None:
    unknown = set(obj) - allowed
    if unknown:
        raise InvalidConfig(f"unknown key(s) in {where}: {', '.join(sorted(unknown))}")


def _parse_range(value, where: str) -> Uniform:
    if (
        not isinstance(value, list)
        or len(value) != 2
        or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in value)
    ):
        raise InvalidConfig(f"{where} must be a [lo, hi] pair of numbers")
    return Uniform(float(value[0]), float(value[1]))


def config_from_dict(raw: dict) -> ScenarioConfig:
    if not isinstance(raw, dict):
        raise InvalidConfig("config must be a JSON object")
    allowed = {
        "n_servers",
        "n_tasks",
        "scheduler",
        "seed",
        "arrival_mode",
        "server_speed_distribution",
        "demand_distributions",
        "class_mix",
        "weight_params",
        "resource_model",
    }
    _reject_unknown(raw, allowed, "config")
    kwargs = {}
    for key in ("n_servers", "n_tasks", "seed"):
        if key in raw:
            kwargs[key] = raw[key]
    if "scheduler" in raw:
        try:
            kwargs["scheduler"] = SchedulerKind(str(raw["scheduler"]).lower())
        except ValueError:
            raise InvalidConfig(f"unknown scheduler: {raw['scheduler']!r}") from None
    if "arrival_mode" in raw:
        mode = raw["arrival_mode"]
        if mode == "batch":
            kwargs["arrival_mode"] = Batch()
        elif isinstance(mode, dict) and set(mode) == {"poisson"}:
            rate = mode["poisson"]
            if isinstance(rate, bool) or not isinstance(rate, (int, float)):
                raise InvalidConfig("poisson rate must be a number")
            kwargs["arrival_mode"] = Poisson(float(rate))
        else:
            raise InvalidConfig('arrival_mode must be "batch" or {"poisson": rate}')
    if "server_speed_distribution" in raw:
        dist = raw["server_speed_distribution"]
        if isinstance(dist, dict) and set(dist) == {"uniform"}:
            kwargs["server_speed_distribution"] = _parse_range(
                dist["uniform"], "server_speed_distribution.uniform"
            )
        elif isinstance(dist, dict) and set(dist) == {"explicit"}:
            speeds = dist["explicit"]
            if not isinstance(speeds, list) or not speeds:
                raise InvalidConfig("explicit speeds must be a non-empty list")
            kwargs["server_speed_distribution"] = ExplicitSpeeds(
                tuple(float(s) for s in speeds)
            )
        else:
            raise InvalidConfig(
                'server_speed_distribution must be {"uniform": [lo, hi]} or {"explicit": [..]}'
            )
    if "demand_distributions" in raw:
        dd = raw["demand_distributions"]
        if not isinstance(dd, dict):
            raise InvalidConfig("demand_distributions must be an object keyed M1..M4")
        _reject_unknown(dd, set(_CLASS_KEYS), "demand_distributions")
        ranges = list(DEFAULT_DEMANDS)
        for j, key in enumerate(_CLASS_KEYS):
            if key in dd:
                ranges[j] = _parse_range(dd[key], f"demand_distributions.{key}")
        kwargs["demand_distributions"] = tuple(ranges)
    if "class_mix" in raw:
        mix = raw["class_mix"]
        if not isinstance(mix, list) or len(mix) != 4:
            raise InvalidConfig("class_mix must be a list of 4 probabilities")
        kwargs["class_mix"] = tuple(float(p) for p in mix)
    if "weight_params" in raw:
        wp = raw["weight_params"]
        if not isinstance(wp, dict):
            raise InvalidConfig("weight_params must be an object")
        _reject_unknown(wp, {"k1", "k2", "class_weights"}, "weight_params")
        wp_kwargs = {}
        if "k1" in wp:
            wp_kwargs["k1"] = float(wp["k1"])
            wp_kwargs["k2"] = float(wp["k2"]) if "k2" in wp else 1.0 - float(wp["k1"])
        elif "k2" in wp:
            wp_kwargs["k2"] = float(wp["k2"])
            wp_kwargs["k1"] = 1.0 - float(wp["k2"])
        if "class_weights" in wp:
            cw = wp["class_weights"]
            if not isinstance(cw, list) or len(cw) != 4:
                raise InvalidConfig("class_weights must be a list of 4 numbers")
            wp_kwargs["class_weights"] = tuple(float(w) for w in cw)
        try:
            kwargs["weight_params"] = WeightParams(**wp_kwargs)
        except ValueError as exc:
            raise InvalidConfig(f"weight_params: {exc}") from None
    if raw.get("resource_model") is not None:
        rm = raw["resource_model"]
        if not isinstance(rm, dict):
            raise InvalidConfig("resource_model must be an object or null")
        _reject_unknown(rm, {"cpu_demand", "mem_demand", "floor"}, "resource_model")
        try:
            kwargs["resource_model"] = ResourceModel(
                cpu_demand=tuple(float(d) for d in rm.get("cpu_demand", ())),
                mem_demand=tuple(float(d) for d in rm.get("mem_demand", ())),
                floor=float(rm.get("floor", 0.01)),
            )
        except (TypeError, ValueError) as exc:
            raise InvalidConfig(f"resource_model: {exc}") from None
    return ScenarioConfig(**kwargs)


def load_config(path) -> ScenarioConfig:
    """Parse a scenario config file; raises InvalidConfig on any problem."""
    try:
        with open(path, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise InvalidConfig(f"cannot read config file {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise InvalidConfig(f"config file {path} is not valid JSON: {exc}") from None
    return config_from_dict(raw)
