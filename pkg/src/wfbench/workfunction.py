"""Work-function tables computed layer by layer over a request sequence.

Layer ``t`` maps every configuration ``X`` to ``w_t(X)``. Layer 0 is the
matching distance from the initial configuration; each request ``r`` then
applies

    w'(X) = min over x in X of  w(X - x + r) + d(r, x)

In set mode a candidate ``x`` is admissible only if ``X - x + r`` still has
``k`` distinct points, so a configuration that already covers ``r`` keeps
its value.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .configuration import Configuration, Mode, enumerate_configs, matching_distance, replace
from .errors import ConsistencyError, PreconditionError
from .instance import Instance
from .space import DistanceSpace

__all__ = [
    "WorkFunctionHistory",
    "WorkFunctionTable",
    "admissible",
    "format_tsv",
    "initial_table",
    "run_history",
    "trace_minimizer",
    "update",
]

EMPTY_REQUEST = "φ"


@dataclass(frozen=True)
class WorkFunctionTable:
    space: DistanceSpace
    k: int
    mode: Mode
    step: int
    values: Mapping[Configuration, int]

    def __getitem__(self, X: Configuration | str) -> int:
        if isinstance(X, str):
            X = Configuration.parse(X)
        return self.values[X]

    @property
    def configs(self) -> list[Configuration]:
        return list(self.values)

    def row(self) -> list[int]:
        return list(self.values.values())


@dataclass(frozen=True)
class WorkFunctionHistory:
    instance: Instance
    mode: Mode
    tables: tuple[WorkFunctionTable, ...]

    def __len__(self) -> int:
        return len(self.tables)

    def __getitem__(self, t: int) -> WorkFunctionTable:
        return self.tables[t]

    def __iter__(self):
        return iter(self.tables)

    def row_labels(self) -> list[str]:
        return [EMPTY_REQUEST, *self.instance.requests]


def initial_table(instance: Instance, mode: Mode | str = Mode.SET) -> WorkFunctionTable:
    mode = Mode(mode)
    space = instance.space
    if mode is Mode.SET and not instance.initial.is_set():
        raise PreconditionError(f"set mode needs distinct initial points, got {instance.initial}")
    values = {
        X: matching_distance(instance.initial, X, space)
        for X in enumerate_configs(space, instance.k, mode)
    }
    return WorkFunctionTable(space, instance.k, mode, 0, values)


def admissible(X: Configuration, r: str, mode: Mode) -> list[str]:
    """Servers of ``X`` that may be the one last sent to serve ``r``, in label order."""
    if mode is Mode.SET and r in X:
        return [r]
    return X.distinct()


def _candidates(table: WorkFunctionTable, r: str, X: Configuration):
    d_r = table.space.dist[table.space.index(r)]
    space = table.space
    for x in admissible(X, r, table.mode):
        pred = replace(X, x, r)
        try:
            w = table.values[pred]
        except KeyError:
            raise ConsistencyError(
                f"step {table.step}: configuration {pred} missing from the table"
            ) from None
        yield x, pred, w + d_r[space.index(x)]


def _check_request(table: WorkFunctionTable, r: str) -> None:
    if r not in table.space:
        raise PreconditionError(f"unknown request point {r!r}")


def update(table: WorkFunctionTable, r: str) -> WorkFunctionTable:
    """The layer after serving request ``r``."""
    _check_request(table, r)
    values = {
        X: min(v for _, _, v in _candidates(table, r, X)) for X in table.values
    }
    return WorkFunctionTable(table.space, table.k, table.mode, table.step + 1, values)


def trace_minimizer(
    prev: WorkFunctionTable, r: str, X: Configuration
) -> tuple[str, Configuration, int]:
    """The server ``x``, predecessor ``X - x + r`` and value attaining ``w'(X)``.

    Ties go to the smallest label of ``x``.
    """
    _check_request(prev, r)
    if X not in prev.values:
        raise PreconditionError(f"configuration {X} is outside the {prev.mode} domain")
    best = None
    for cand in _candidates(prev, r, X):
        if best is None or cand[2] < best[2]:
            best = cand
    return best


def run_history(instance: Instance, mode: Mode | str = Mode.SET) -> WorkFunctionHistory:
    mode = Mode(mode)
    tables = [initial_table(instance, mode)]
    for r in instance.requests:
        tables.append(update(tables[-1], r))
    return WorkFunctionHistory(instance, mode, tuple(tables))


def format_tsv(history: WorkFunctionHistory) -> str:
    """Tab-separated table: a header row, then one row per layer."""
    space = history.instance.space
    configs = history.tables[0].configs
    lines = ["\t".join(["request", *(str(X) for X in configs)])]
    for label, table in zip(history.row_labels(), history.tables):
        lines.append("\t".join([label, *(space.format(table.values[X]) for X in configs)]))
    return "\n".join(lines) + "\n"
