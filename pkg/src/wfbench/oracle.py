"""Brute-force reference semantics and a work-function-algorithm simulator.

``brute_force_table`` never touches the layered recurrence. It reads
``w_t(X)`` as: start with servers at ``X``, serve ``r_t, ..., r_1`` in that
order with lazy moves (one server travels straight to each request), then
pay the matching distance back to the initial configuration; take the
cheapest such schedule. Distances are symmetric, so this is the same
quantity seen backwards in time.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .configuration import Configuration, Mode, enumerate_configs, matching_distance, replace
from .errors import PreconditionError, ResourceLimitError
from .instance import Instance
from .space import DistanceSpace
from .workfunction import WorkFunctionTable, run_history

__all__ = [
    "Schedule",
    "WfaMove",
    "WfaRun",
    "brute_force_table",
    "competitive_bound",
    "lazy_schedules",
    "run_wfa",
]

SCHEDULE_LIMIT = 10**7


@dataclass(frozen=True)
class Schedule:
    """A lazy schedule: ``choices[t]`` is the server position sent to request ``t``."""

    choices: tuple[str, ...]
    cost: int
    final: Configuration


def _lazy_choices(X: Configuration, r: str, mode: Mode) -> list[str]:
    if mode is Mode.SET and r in X:
        return [r]
    return X.distinct()


def lazy_schedules(
    space: DistanceSpace,
    start: Configuration,
    requests: Sequence[str],
    mode: Mode | str = Mode.MULTISET,
) -> Iterator[Schedule]:
    """Every lazy schedule serving ``requests`` from ``start``, depth first.

    In set mode a request that is already covered is served in place, so
    servers never share a point.
    """
    mode = Mode(mode)
    requests = list(requests)

    def walk(X: Configuration, t: int, choices: tuple, cost: int):
        if t == len(requests):
            yield Schedule(choices, cost, X)
            return
        r = requests[t]
        for x in _lazy_choices(X, r, mode):
            yield from walk(replace(X, x, r), t + 1, choices + (x,), cost + space.d(x, r))

    yield from walk(start, 0, (), 0)


def brute_force_table(instance: Instance, t: int, mode: Mode | str = Mode.SET) -> WorkFunctionTable:
    """Layer ``t`` of the work function by exhaustive schedule enumeration."""
    mode = Mode(mode)
    if not 0 <= t <= len(instance.requests):
        raise PreconditionError(f"step {t} outside 0..{len(instance.requests)}")
    if instance.k**t > SCHEDULE_LIMIT:
        raise ResourceLimitError(
            f"{instance.k}^{t} schedules per configuration exceeds the limit of {SCHEDULE_LIMIT}"
        )
    space = instance.space
    backwards = list(reversed(instance.requests[:t]))
    to_initial: dict[Configuration, int] = {}
    values = {}
    for X in enumerate_configs(space, instance.k, mode):
        best = None
        for s in lazy_schedules(space, X, backwards, mode):
            back = to_initial.get(s.final)
            if back is None:
                back = to_initial[s.final] = matching_distance(s.final, instance.initial, space)
            if best is None or s.cost + back < best:
                best = s.cost + back
        values[X] = best
    return WorkFunctionTable(space, instance.k, mode, t, values)


@dataclass(frozen=True)
class WfaMove:
    request: str
    server: str | None
    cost: int
    config: Configuration


@dataclass
class WfaRun:
    moves: list[WfaMove] = field(default_factory=list)
    total_online_cost: int = 0
    opt_cost: int = 0

    @property
    def ratio(self) -> float | None:
        if self.opt_cost == 0:
            return None if self.total_online_cost else 1.0
        return self.total_online_cost / self.opt_cost

    def to_json(self, space: DistanceSpace) -> dict:
        return {
            "moves": [
                {
                    "step": t + 1,
                    "request": m.request,
                    "server": m.server,
                    "cost": space.format(m.cost),
                    "config": str(m.config),
                }
                for t, m in enumerate(self.moves)
            ],
            "total_online_cost": space.format(self.total_online_cost),
            "opt_cost": space.format(self.opt_cost),
        }


def run_wfa(instance: Instance, mode: Mode | str = Mode.SET) -> WfaRun:
    """Serve the requests online with the work function algorithm.

    A request already covered costs nothing. Otherwise the server ``x``
    minimising ``w'(X - x + r) + d(r, x)`` moves, ``w'`` being the layer that
    includes ``r``; ties go to the smallest label.
    """
    mode = Mode(mode)
    history = run_history(instance, mode)
    space = instance.space
    X = instance.initial
    run = WfaRun()
    for t, r in enumerate(instance.requests, start=1):
        if r in X:
            run.moves.append(WfaMove(r, None, 0, X))
            continue
        after = history[t].values
        best = min(X.distinct(), key=lambda x: (after[replace(X, x, r)] + space.d(r, x), x))
        X = replace(X, best, r)
        cost = space.d(r, best)
        run.moves.append(WfaMove(r, best, cost, X))
        run.total_online_cost += cost
    run.opt_cost = min(history[-1].values.values())
    return run


def competitive_bound(run: WfaRun, space: DistanceSpace, k: int) -> int:
    """``(2k - 1) * opt + k * diameter``, the sanity ceiling for online cost."""
    return (2 * k - 1) * run.opt_cost + k * space.diameter()
