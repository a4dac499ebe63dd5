"""Core value types: servers, tasks, task classes, and weighting parameters.

A fleet is a plain list of ``ServerState`` with dense ids ``0..n-1``.
Mutation of counters happens only inside a single-threaded run; the types
carry no locks.
"""

from dataclasses import dataclass, field
from enum import IntEnum

ServerId = int


class TaskClass(IntEnum):
    """Complexity class of a task; higher classes carry larger weights."""

    M1 = 1
    M2 = 2
    M3 = 3
    M4 = 4

    @property
    def index(self) -> int:
        """Zero-based position into per-class count/weight vectors."""
        return self.value - 1


@dataclass(frozen=True)
class WeightParams:
    """Coefficients of the dynamic weight and the four task-class weights.

    ``k1`` and ``k2`` weight the CPU and memory idle rates and must sum to 1;
    the default 3/5 : 2/5 split treats CPU headroom as the more important
    signal.  ``class_weights`` must be positive and non-decreasing so that
    more complex task classes count for more load.
    """

    k1: float = 0.6
    k2: float = 0.4
    class_weights: tuple[float, float, float, float] = (1.0, 2.0, 4.0, 8.0)

    def __post_init__(self):
        if not (0.0 < self.k1 < 1.0 and 0.0 < self.k2 < 1.0):
            raise ValueError("k1 and k2 must lie in (0, 1)")
        # exact fp equality rejects legitimate pairs like 0.7/0.3
        if abs(self.k1 + self.k2 - 1.0) > 1e-12:
            raise ValueError("k1 + k2 must equal 1")
        if len(self.class_weights) != 4:
            raise ValueError("exactly four class weights required")
        if any(w <= 0 for w in self.class_weights):
            raise ValueError("class weights must be positive")
        if any(a > b for a, b in zip(self.class_weights, self.class_weights[1:])):
            raise ValueError("class weights must be non-decreasing (P1 <= .. <= P4)")


@dataclass(frozen=True)
class TaskSpec:
    """One offloaded task: id, complexity class, work size, arrival time."""

    id: int
    task_class: TaskClass
    service_demand: float
    arrival_time: float = 0.0


@dataclass
class ServerState:
    """One participating node.

    ``connections`` must always equal ``sum(class_counts)``; the scheduler
    entry points keep that in sync.  ``dynamic_weight`` is 0 exactly when the
    server is down, and is refreshed from the idle rates before AWLC picks.
    ``static_weight`` is the administrator-set weight used by WRR and WLC.
    """

    id: ServerId
    speed: float = 1.0
    cpu_idle_rate: float = 1.0
    mem_idle_rate: float = 1.0
    static_weight: float = 1.0
    dynamic_weight: float = 1.0
    connections: int = 0
    class_counts: list[int] = field(default_factory=lambda: [0, 0, 0, 0])
    alive: bool = True


def validate_server(s: ServerState) -> list[str]:
    """Return every violated invariant of ``s``; an empty list means ok.

    Total: reports rather than raises, whatever the field values.
    """
    violations = []
    try:
        if s.id < 0:
            violations.append("server id must be non-negative")
        if not s.speed > 0:
            violations.append("speed must be positive")
        if not s.static_weight > 0:
            violations.append("static weight must be positive")
        if not 0.0 <= s.dynamic_weight <= 1.0:
            violations.append("dynamic weight must lie in [0, 1]")
        if len(s.class_counts) != 4:
            violations.append("class_counts must have exactly 4 entries")
        if any(c < 0 for c in s.class_counts):
            violations.append("class counts must be non-negative")
        if s.connections < 0:
            violations.append("connections must be non-negative")
        if s.connections != sum(s.class_counts):
            violations.append("connections must equal the sum of class counts")
        if not s.alive and s.dynamic_weight != 0.0:
            violations.append("down server must have weight 0")
        if s.alive:
            for name, rate in (("cpu", s.cpu_idle_rate), ("mem", s.mem_idle_rate)):
                if not 0.0 <= rate <= 1.0:
                    violations.append(f"{name} idle rate must lie in [0, 1]")
            if s.cpu_idle_rate == 0.0 and s.mem_idle_rate == 0.0:
                violations.append("idle rates cannot both be 0")
    except TypeError:
        violations.append("field with unusable type")
    return violations
