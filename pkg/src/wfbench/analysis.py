"""Checks for the Lipschitz and monotonicity properties of work functions."""
from __future__ import annotations

from dataclasses import dataclass, field

from .configuration import Configuration, matching_distance
from .errors import PreconditionError
from .space import DistanceSpace, TriangleViolation, validate_triangle
from .workfunction import WorkFunctionHistory, WorkFunctionTable

__all__ = [
    "HistoryReport",
    "LipschitzViolation",
    "MonotonicityViolation",
    "check_history",
    "check_lipschitz",
    "check_monotonicity",
    "pairwise_distances",
]


@dataclass(frozen=True)
class LipschitzViolation:
    """``w(X) > w(Y) + D(X, Y)`` within one layer."""

    step: int
    X: Configuration
    Y: Configuration
    wX: int
    wY: int
    dXY: int

    def to_json(self, space: DistanceSpace) -> dict:
        return {
            "kind": "lipschitz",
            "step": self.step,
            "config": str(self.X),
            "other": str(self.Y),
            "value": space.format(self.wX),
            "other_value": space.format(self.wY),
            "distance": space.format(self.dXY),
        }


@dataclass(frozen=True)
class MonotonicityViolation:
    """``w_t(X) < w_{t-1}(X)``; ``step`` is the request just applied."""

    step: int
    X: Configuration
    before: int
    after: int

    def to_json(self, space: DistanceSpace) -> dict:
        return {
            "kind": "monotonicity",
            "step": self.step,
            "config": str(self.X),
            "before": space.format(self.before),
            "after": space.format(self.after),
        }


def pairwise_distances(
    configs: list[Configuration], space: DistanceSpace
) -> dict[tuple[Configuration, Configuration], int]:
    out = {}
    for i, X in enumerate(configs):
        out[X, X] = 0
        for Y in configs[i + 1:]:
            out[X, Y] = out[Y, X] = matching_distance(X, Y, space)
    return out


def check_lipschitz(
    table: WorkFunctionTable,
    space: DistanceSpace | None = None,
    distances: dict | None = None,
) -> list[LipschitzViolation]:
    """Every ordered pair ``(X, Y)`` with ``w(X) > w(Y) + D(X, Y)``.

    Ordered by ``X`` then ``Y`` in enumeration order. ``distances`` may carry
    precomputed matching distances for the table's configurations.
    """
    space = space if space is not None else table.space
    configs = table.configs
    if distances is None:
        distances = pairwise_distances(configs, space)
    vals = table.values
    found = []
    for X in configs:
        wX = vals[X]
        for Y in configs:
            dXY = distances[X, Y]
            if wX > vals[Y] + dXY:
                found.append(LipschitzViolation(table.step, X, Y, wX, vals[Y], dXY))
    return found


def check_monotonicity(
    prev: WorkFunctionTable, next: WorkFunctionTable
) -> list[MonotonicityViolation]:
    """Configurations whose value dropped between two consecutive layers."""
    if next.step != prev.step + 1:
        raise PreconditionError(f"layers {prev.step} and {next.step} are not consecutive")
    if prev.values.keys() != next.values.keys():
        raise PreconditionError("layers are defined over different configuration domains")
    return [
        MonotonicityViolation(next.step, X, before, next.values[X])
        for X, before in prev.values.items()
        if next.values[X] < before
    ]


@dataclass
class HistoryReport:
    """Findings for a whole history.

    Lipschitz findings are per layer and monotonicity findings are per
    transition, so a failure of one can be lined up against the other.
    """

    mode: str
    steps: int
    triangle: list[TriangleViolation] = field(default_factory=list)
    lipschitz: dict[int, list[LipschitzViolation]] = field(default_factory=dict)
    monotonicity: list[MonotonicityViolation] = field(default_factory=list)

    @property
    def monotone(self) -> bool:
        return not self.monotonicity

    @property
    def verdict(self) -> str:
        return "monotone" if self.monotone else "non-monotone"

    @property
    def metric(self) -> bool:
        return not self.triangle

    def lipschitz_violations(self) -> list[LipschitzViolation]:
        return [v for t in sorted(self.lipschitz) for v in self.lipschitz[t]]

    def has_violations(self) -> bool:
        """True when either work-function property fails somewhere."""
        return bool(self.monotonicity) or any(self.lipschitz.values())

    def records(self, space: DistanceSpace) -> list[dict]:
        return [
            *(v.to_json(space) for v in self.triangle),
            *(v.to_json(space) for v in self.lipschitz_violations()),
            *(v.to_json(space) for v in self.monotonicity),
        ]

    def to_json(self, space: DistanceSpace) -> dict:
        return {
            "verdict": self.verdict,
            "mode": self.mode,
            "steps": self.steps,
            "metric": self.metric,
            "counts": {
                "triangle": len(self.triangle),
                "lipschitz": len(self.lipschitz_violations()),
                "monotonicity": len(self.monotonicity),
            },
            "lipschitz_layers": [t for t in sorted(self.lipschitz) if self.lipschitz[t]],
            "violations": self.records(space),
        }


def check_history(history: WorkFunctionHistory) -> HistoryReport:
    space = history.instance.space
    report = HistoryReport(
        mode=str(history.mode),
        steps=len(history) - 1,
        triangle=validate_triangle(space),
    )
    distances = pairwise_distances(history[0].configs, space)
    for table in history:
        report.lipschitz[table.step] = check_lipschitz(table, space, distances)
    for prev, nxt in zip(history.tables, history.tables[1:]):
        report.monotonicity.extend(check_monotonicity(prev, nxt))
    return report
