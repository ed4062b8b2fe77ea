"""k-server instances and their JSON file format.

An instance file is one JSON document::

    {"points": ["a", "b", ...],
     "distances": [["a", "b", "1"], ...],   # each unordered pair once
     "k": 3,
     "initial": ["a", "b", "c"],
     "requests": ["e", "d", ...]}
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .configuration import Configuration
from .errors import StructuralError
from .space import DistanceSpace

__all__ = ["Instance", "load_instance", "paper_instance", "PAPER_INSTANCE_PATH"]

PAPER_INSTANCE_PATH = Path(str(resources.files("wfbench") / "data" / "paper_instance.json"))


@dataclass(frozen=True)
class Instance:
    space: DistanceSpace
    k: int
    initial: Configuration
    requests: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "requests", tuple(self.requests))
        if not isinstance(self.initial, Configuration):
            object.__setattr__(self, "initial", Configuration(self.initial))
        if self.k < 1:
            raise StructuralError(f"k must be at least 1, got {self.k}")
        if len(self.initial) != self.k:
            raise StructuralError(
                f"initial configuration {self.initial} has {len(self.initial)} points, expected k={self.k}"
            )
        for p in self.initial:
            if p not in self.space:
                raise StructuralError(f"initial: unknown point {p!r}")
        for t, r in enumerate(self.requests):
            if r not in self.space:
                raise StructuralError(f"requests[{t}]: unknown point {r!r}")

    def with_space(self, space: DistanceSpace) -> Instance:
        return Instance(space, self.k, self.initial, self.requests)

    def prefix(self, t: int) -> Instance:
        return Instance(self.space, self.k, self.initial, self.requests[:t])

    def to_dict(self) -> dict:
        space = self.space
        return {
            "points": list(space.labels),
            "distances": [[a, b, space.format(v)] for a, b, v in space.pairs()],
            "k": self.k,
            "initial": list(self.initial.points),
            "requests": list(self.requests),
        }

    @classmethod
    def from_dict(cls, doc: dict) -> Instance:
        if not isinstance(doc, dict):
            raise StructuralError("instance document must be a JSON object")
        for key in ("points", "distances", "k", "initial", "requests"):
            if key not in doc:
                raise StructuralError(f"missing field {key!r}")
        points = doc["points"]
        if not isinstance(points, list) or not all(isinstance(p, str) and p for p in points):
            raise StructuralError("points: expected a list of non-empty strings")
        if not isinstance(doc["distances"], list):
            raise StructuralError("distances: expected a list of triples")
        k = doc["k"]
        if not isinstance(k, int) or isinstance(k, bool):
            raise StructuralError(f"k: expected an integer, got {k!r}")
        for key in ("initial", "requests"):
            if not isinstance(doc[key], list):
                raise StructuralError(f"{key}: expected a list of labels")
        space = DistanceSpace.from_pairs(points, [tuple(t) for t in doc["distances"]])
        return cls(space, k, Configuration(doc["initial"]), tuple(doc["requests"]))

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def load_instance(path: str | Path) -> Instance:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise StructuralError(f"{path}: cannot read ({exc.strerror})") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise StructuralError(f"{path}:{exc.lineno}:{exc.colno}: invalid JSON ({exc.msg})") from exc
    try:
        return Instance.from_dict(doc)
    except StructuralError as exc:
        raise StructuralError(f"{path}: {exc}") from exc


def paper_instance() -> Instance:
    """The five-point, three-server counterexample instance bundled with the package."""
    return load_instance(PAPER_INSTANCE_PATH)
