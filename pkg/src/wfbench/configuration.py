"""Server configurations and the minimum-cost matching distance between them."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations, combinations_with_replacement, permutations
from typing import Iterable

import numpy as np
from scipy.optimize import linear_sum_assignment

from .errors import PreconditionError
from .space import DistanceSpace

__all__ = [
    "Configuration",
    "Mode",
    "enumerate_configs",
    "matching_distance",
    "moved_points",
    "replace",
]

# exhaustive search is at most 6! = 720 bijections
PERMUTATION_LIMIT = 6


class Mode(str, enum.Enum):
    """Configuration domain: distinct points only, or multisets."""

    SET = "set"
    MULTISET = "multiset"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True, order=True)
class Configuration:
    """A multiset of point labels kept in sorted order.

    Sorting makes equality, hashing and ordering structural, so configurations
    can key dictionaries directly.
    """

    points: tuple[str, ...]

    def __init__(self, points: Iterable[str]):
        object.__setattr__(self, "points", tuple(sorted(points)))

    @classmethod
    def parse(cls, text: str, space: DistanceSpace | None = None) -> Configuration:
        """Inverse of ``str``: ``"cde"`` or, for multi-character labels, ``"p1,p2"``."""
        parts = text.split(",") if "," in text else list(text)
        if space is not None:
            unknown = [p for p in parts if p not in space]
            if unknown:
                raise PreconditionError(f"unknown point(s) {unknown} in configuration {text!r}")
        return cls(parts)

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, point: object) -> bool:
        return point in self.points

    def __str__(self) -> str:
        if all(len(p) == 1 for p in self.points):
            return "".join(self.points)
        return ",".join(self.points)

    def __repr__(self) -> str:
        return f"Configuration({str(self)!r})"

    def is_set(self) -> bool:
        return len(set(self.points)) == len(self.points)

    def distinct(self) -> list[str]:
        """Distinct points in label order."""
        return sorted(set(self.points))


def replace(X: Configuration, x: str, r: str) -> Configuration:
    """Remove one copy of ``x`` from ``X`` and add one copy of ``r``."""
    pts = list(X.points)
    try:
        pts.remove(x)
    except ValueError:
        raise PreconditionError(f"{x!r} is not in configuration {X}") from None
    pts.append(r)
    return Configuration(pts)


def enumerate_configs(space: DistanceSpace, k: int, mode: Mode | str = Mode.SET) -> list[Configuration]:
    """All configurations of ``k`` servers, in lexicographic order."""
    mode = Mode(mode)
    labels = sorted(space.labels)
    if k < 1:
        raise PreconditionError(f"k must be at least 1, got {k}")
    if mode is Mode.SET:
        if k > len(labels):
            raise PreconditionError(f"set mode needs k <= {len(labels)} points, got k={k}")
        combos = combinations(labels, k)
    else:
        combos = combinations_with_replacement(labels, k)
    return [Configuration(c) for c in combos]


def _cost_matrix(xs: list[str], ys: list[str], space: DistanceSpace) -> list[list[int]]:
    rows = [space.dist[space.index(x)] for x in xs]
    cols = [space.index(y) for y in ys]
    return [[row[j] for j in cols] for row in rows]


def _by_permutation(cost: list[list[int]]) -> int:
    k = len(cost)
    return min(sum(cost[i][p[i]] for i in range(k)) for p in permutations(range(k)))


def _by_assignment(cost: list[list[int]]) -> int:
    arr = np.asarray(cost, dtype=np.int64)
    rows, cols = linear_sum_assignment(arr)
    # summing the integer entries keeps the result exact
    return int(sum(cost[i][j] for i, j in zip(rows, cols)))


def moved_points(X: Configuration, Y: Configuration) -> tuple[list[str], list[str]]:
    """Multiset differences ``X - Y`` and ``Y - X``: the servers that must move."""
    xs, ys = list(X.points), []
    for y in Y.points:
        if y in xs:
            xs.remove(y)
        else:
            ys.append(y)
    return xs, ys


def matching_distance(
    X: Configuration,
    Y: Configuration,
    space: DistanceSpace,
    method: str = "auto",
    hold_common: bool = True,
) -> int:
    """Cheapest way to move servers from ``X`` to ``Y``.

    Servers on points shared by both configurations stay put and the rest are
    matched at minimum total distance. With ``hold_common=False`` every
    bijection is allowed; the two agree whenever the space is metric.

    ``method`` is ``"permutation"`` (exhaustive), ``"assignment"`` (Hungarian
    solver) or ``"auto"``, which enumerates for up to six moving servers.
    """
    if len(X) != len(Y):
        raise PreconditionError(f"configurations differ in size: {X} vs {Y}")
    if hold_common:
        xs, ys = moved_points(X, Y)
    else:
        xs, ys = list(X.points), list(Y.points)
    if not xs:
        return 0
    cost = _cost_matrix(xs, ys, space)
    if method == "auto":
        method = "permutation" if len(xs) <= PERMUTATION_LIMIT else "assignment"
    if method == "permutation":
        return _by_permutation(cost)
    if method == "assignment":
        return _by_assignment(cost)
    raise PreconditionError(f"unknown matching method {method!r}")
