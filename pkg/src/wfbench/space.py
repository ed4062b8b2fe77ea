"""Finite distance spaces with exact integer distances.

Distances are read as decimal strings and scaled by a common power of ten,
so every computation downstream is plain integer arithmetic.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from typing import Iterable, Mapping, Sequence

from .errors import StructuralError

__all__ = [
    "DistanceSpace",
    "TriangleViolation",
    "metric_closure",
    "parse_decimals",
    "validate_triangle",
]


def parse_decimals(values: Sequence[str]) -> tuple[list[int], int]:
    """Scale decimal strings to integers sharing one power-of-ten denominator.

    Returns ``(scaled, scale)`` with ``Decimal(values[i]) == scaled[i] / scale``.
    """
    decs = []
    for raw in values:
        try:
            d = Decimal(str(raw).strip())
        except InvalidOperation:
            raise StructuralError(f"not a decimal number: {raw!r}") from None
        if not d.is_finite():
            raise StructuralError(f"distance must be finite: {raw!r}")
        decs.append(d)
    places = max((-d.as_tuple().exponent for d in decs), default=0)
    places = max(places, 0)
    scale = 10**places
    return [int(d.scaleb(places)) for d in decs], scale


@dataclass(frozen=True)
class TriangleViolation:
    """Pair ``(x, y)`` whose direct distance exceeds the detour through ``via``."""

    x: str
    y: str
    via: str
    direct: int
    detour: int

    def to_json(self, space: DistanceSpace) -> dict:
        return {
            "kind": "triangle",
            "x": self.x,
            "y": self.y,
            "via": self.via,
            "direct": space.format(self.direct),
            "detour": space.format(self.detour),
        }


@dataclass(frozen=True)
class DistanceSpace:
    """Labelled points with a symmetric, non-negative integer distance matrix.

    ``scale`` is the denominator that maps stored integers back to input
    units. The matrix is validated on construction and never mutated.
    """

    labels: tuple[str, ...]
    dist: tuple[tuple[int, ...], ...]
    scale: int = 1
    _index: Mapping[str, int] = field(init=False, repr=False, compare=False)
    _violations: list = field(init=False, repr=False, compare=False, default=None)

    def __post_init__(self):
        labels = tuple(self.labels)
        dist = tuple(tuple(int(v) for v in row) for row in self.dist)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "dist", dist)
        if len(set(labels)) != len(labels):
            raise StructuralError(f"duplicate point labels in {labels}")
        if not labels:
            raise StructuralError("a distance space needs at least one point")
        if self.scale < 1:
            raise StructuralError(f"scale must be positive, got {self.scale}")
        n = len(labels)
        if len(dist) != n or any(len(row) != n for row in dist):
            raise StructuralError(f"distance matrix must be {n}x{n}")
        for i, a in enumerate(labels):
            if dist[i][i] != 0:
                raise StructuralError(f"nonzero diagonal entry d({a},{a}) = {dist[i][i]}")
            for j in range(i + 1, n):
                b = labels[j]
                if dist[i][j] < 0:
                    raise StructuralError(f"negative distance d({a},{b}) = {dist[i][j]}")
                if dist[i][j] != dist[j][i]:
                    raise StructuralError(
                        f"asymmetric entry d({a},{b}) = {dist[i][j]} but d({b},{a}) = {dist[j][i]}"
                    )
        object.__setattr__(self, "_index", {a: i for i, a in enumerate(labels)})

    @classmethod
    def from_pairs(
        cls, labels: Iterable[str], pairs: Iterable[tuple[str, str, str]]
    ) -> DistanceSpace:
        """Build a space from ``(label, label, decimal-string)`` triples.

        Every unordered pair of distinct labels must appear exactly once.
        """
        labels = tuple(labels)
        index = {a: i for i, a in enumerate(labels)}
        if len(index) != len(labels):
            raise StructuralError(f"duplicate point labels in {labels}")
        pairs = list(pairs)
        keys = []
        for pos, triple in enumerate(pairs):
            if len(triple) != 3:
                raise StructuralError(f"distances[{pos}]: expected [label, label, value]")
            a, b, _ = triple
            for p in (a, b):
                if p not in index:
                    raise StructuralError(f"distances[{pos}]: unknown point {p!r}")
            if a == b:
                raise StructuralError(f"distances[{pos}]: self-distance d({a},{b}) listed")
            key = frozenset((a, b))
            if key in keys:
                raise StructuralError(f"distances[{pos}]: pair ({a},{b}) listed twice")
            keys.append(key)
        scaled, scale = parse_decimals([t[2] for t in pairs])
        n = len(labels)
        matrix = [[0] * n for _ in range(n)]
        for (a, b, _), v in zip(pairs, scaled):
            if v < 0:
                raise StructuralError(f"negative distance d({a},{b})")
            matrix[index[a]][index[b]] = matrix[index[b]][index[a]] = v
        missing = [
            (labels[i], labels[j])
            for i in range(n)
            for j in range(i + 1, n)
            if frozenset((labels[i], labels[j])) not in keys
        ]
        if missing:
            a, b = missing[0]
            raise StructuralError(f"missing distance for pair ({a},{b})")
        return cls(labels, matrix, scale)

    @classmethod
    def uniform(cls, labels: Iterable[str], value: int = 1) -> DistanceSpace:
        labels = tuple(labels)
        n = len(labels)
        return cls(labels, [[0 if i == j else value for j in range(n)] for i in range(n)])

    def __len__(self) -> int:
        return len(self.labels)

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def index(self, label: str) -> int:
        return self._index[label]

    def d(self, x: str, y: str) -> int:
        return self.dist[self._index[x]][self._index[y]]

    def pairs(self) -> list[tuple[str, str, int]]:
        """Upper-triangle entries in label order."""
        n = len(self.labels)
        return [
            (self.labels[i], self.labels[j], self.dist[i][j])
            for i in range(n)
            for j in range(i + 1, n)
        ]

    def format(self, value: int) -> str:
        """Render a scaled integer in input units as an exact decimal string."""
        if self.scale == 1:
            return str(value)
        places = len(str(self.scale)) - 1
        return str(Decimal(value).scaleb(-places))

    def diameter(self) -> int:
        return max(max(row) for row in self.dist)

    @property
    def metricity(self) -> str:
        """``"unchecked"``, ``"metric"`` or ``"non-metric"``."""
        if self._violations is None:
            return "unchecked"
        return "non-metric" if self._violations else "metric"

    def is_metric(self) -> bool:
        return not validate_triangle(self)


def validate_triangle(space: DistanceSpace) -> list[TriangleViolation]:
    """Every pair with a strictly cheaper one-stop detour, in label order.

    The witness for each pair is the cheapest intermediate point; ties go to
    the earliest label.
    """
    if space._violations is not None:
        return list(space._violations)
    labels = space.labels
    order = sorted(range(len(labels)), key=lambda i: labels[i])
    dist = space.dist
    found = []
    for a, i in enumerate(order):
        for j in order[a + 1:]:
            best = None
            for z in order:
                if z in (i, j):
                    continue
                detour = dist[i][z] + dist[z][j]
                if best is None or detour < best[1]:
                    best = (z, detour)
            if best is not None and best[1] < dist[i][j]:
                found.append(
                    TriangleViolation(labels[i], labels[j], labels[best[0]], dist[i][j], best[1])
                )
    object.__setattr__(space, "_violations", tuple(found))
    return found


def metric_closure(space: DistanceSpace) -> DistanceSpace:
    """Shortest-path distances over the complete weighted graph (Floyd-Warshall)."""
    n = len(space)
    g = [list(row) for row in space.dist]
    for m in range(n):
        gm = g[m]
        for i in range(n):
            gi = g[i]
            via = gi[m]
            for j in range(n):
                if via + gm[j] < gi[j]:
                    gi[j] = via + gm[j]
    return DistanceSpace(space.labels, g, space.scale)
