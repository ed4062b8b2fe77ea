"""Random instance generation and violation hunting.

Instance ``i`` of a hunt with seed ``s`` is drawn from
``random.Random(f"wfbench:{s}:{i}")``: CPython's Mersenne Twister seeded
through SHA-512 of that string, which is stable across platforms and
releases. Instances therefore reproduce individually, independent of how
many others were drawn before them.
"""
from __future__ import annotations

import json
import random
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterable

from .analysis import check_history
from .configuration import Configuration, Mode
from .errors import PreconditionError, WorkbenchError
from .instance import Instance
from .oracle import competitive_bound, run_wfa
from .space import DistanceSpace, metric_closure, validate_triangle
from .workfunction import run_history

__all__ = ["SearchConfig", "SearchReport", "generate_instance", "hunt", "instance_rng"]

FILTERS = ("metric", "non-metric", "both")
# redraws allowed when hunting non-metric weights
MAX_REDRAWS = 1000


@dataclass(frozen=True)
class SearchConfig:
    seed: int = 0
    count: int = 100
    n: tuple[int, int] = (3, 6)
    k: tuple[int, int] = (1, 3)
    T: tuple[int, int] = (0, 8)
    weights: tuple[int, int] = (1, 10)
    mode_filter: str = "both"
    mode: str = "set"

    def __post_init__(self):
        for name in ("n", "k", "T", "weights"):
            lo, hi = getattr(self, name)
            object.__setattr__(self, name, (int(lo), int(hi)))
            if lo > hi:
                raise PreconditionError(f"{name}: empty range [{lo}, {hi}]")
        if self.count < 1:
            raise PreconditionError(f"count must be at least 1, got {self.count}")
        if self.n[0] < 1 or self.k[0] < 1 or self.T[0] < 0 or self.weights[0] < 0:
            raise PreconditionError("ranges must be non-negative and n, k at least 1")
        if self.k[0] > self.n[0]:
            raise PreconditionError(f"k range {self.k} admits more servers than points {self.n}")
        if self.n[1] > 26:
            raise PreconditionError("at most 26 points are supported")
        if self.mode_filter not in FILTERS:
            raise PreconditionError(f"mode_filter must be one of {FILTERS}, got {self.mode_filter!r}")
        if self.mode_filter == "non-metric":
            if self.n[0] < 3:
                raise PreconditionError("non-metric instances need at least 3 points")
            # some pair must be able to exceed the sum of two others
            if self.weights[1] <= 2 * self.weights[0]:
                raise PreconditionError(f"weight range {self.weights} cannot violate the triangle inequality")
        Mode(self.mode)

    @classmethod
    def from_dict(cls, doc: dict) -> SearchConfig:
        unknown = set(doc) - set(cls.__dataclass_fields__)
        if unknown:
            raise PreconditionError(f"unknown search config field(s): {sorted(unknown)}")
        doc = dict(doc)
        for name in ("n", "k", "T", "weights"):
            if name in doc:
                value = doc[name]
                doc[name] = (value, value) if isinstance(value, int) else tuple(value)
        return cls(**doc)

    def to_dict(self) -> dict:
        return {key: list(v) if isinstance(v, tuple) else v for key, v in asdict(self).items()}


def instance_rng(seed: int, index: int) -> random.Random:
    return random.Random(f"wfbench:{seed}:{index}")


def _labels(n: int) -> list[str]:
    return [chr(ord("a") + i) for i in range(n)]


def _draw_space(rng: random.Random, labels: list[str], weights: tuple[int, int]) -> DistanceSpace:
    n = len(labels)
    matrix = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            matrix[i][j] = matrix[j][i] = rng.randint(*weights)
    return DistanceSpace(labels, matrix)


def generate_instance(rng: random.Random, config: SearchConfig) -> Instance:
    n = rng.randint(*config.n)
    k = rng.randint(config.k[0], min(config.k[1], n))
    T = rng.randint(*config.T)
    labels = _labels(n)
    space = _draw_space(rng, labels, config.weights)
    if config.mode_filter == "metric":
        space = metric_closure(space)
    elif config.mode_filter == "non-metric":
        redraws = 0
        while not validate_triangle(space):
            redraws += 1
            if redraws > MAX_REDRAWS:
                raise WorkbenchError("could not draw a non-metric space; widen the weight range")
            space = _draw_space(rng, labels, config.weights)
    initial = Configuration(rng.sample(labels, k))
    requests = tuple(rng.choice(labels) for _ in range(T))
    return Instance(space, k, initial, requests)


@dataclass
class SearchReport:
    config: SearchConfig
    verdicts: list[dict] = field(default_factory=list)
    tallies: dict[str, int] = field(default_factory=lambda: {"monotonicity": 0, "lipschitz": 0, "wfa_bound": 0})
    reproducers: list[dict] = field(default_factory=list)

    @property
    def violations_found(self) -> bool:
        return bool(self.tallies["monotonicity"] or self.tallies["lipschitz"])

    def to_json(self) -> dict:
        return {
            "config": self.config.to_dict(),
            "instances": len(self.verdicts),
            "tallies": dict(self.tallies),
            "verdicts": self.verdicts,
            "reproducers": self.reproducers,
        }


def hunt(
    config: SearchConfig,
    out_dir: str | Path | None = None,
    inject: Iterable[Instance] = (),
) -> SearchReport:
    """Generate ``config.count`` instances, check each, and collect findings.

    Injected instances take the first slots. Every instance with a finding is
    kept whole as a reproducer; with ``out_dir`` set, each one is written as
    an instance file under ``out_dir/reproducers`` next to ``report.json``.
    Instances exceeding the competitive telemetry bound are flagged as
    ``wfa_bound`` without counting as violations.
    """
    injected = list(inject)
    if len(injected) > config.count:
        raise PreconditionError(f"{len(injected)} injected instances exceed count={config.count}")
    report = SearchReport(config)
    mode = Mode(config.mode)
    for index in range(config.count):
        if index < len(injected):
            instance, source = injected[index], "injected"
        else:
            instance, source = generate_instance(instance_rng(config.seed, index), config), "generated"
        result = check_history(run_history(instance, mode))
        kinds = []
        if result.monotonicity:
            kinds.append("monotonicity")
        if result.lipschitz_violations():
            kinds.append("lipschitz")
        if result.metric:
            wfa = run_wfa(instance, mode)
            if wfa.total_online_cost > competitive_bound(wfa, instance.space, instance.k):
                kinds.append("wfa_bound")
        report.verdicts.append(
            {
                "index": index,
                "source": source,
                "metric": result.metric,
                "verdict": result.verdict,
                "monotonicity": len(result.monotonicity),
                "lipschitz": len(result.lipschitz_violations()),
            }
        )
        if kinds:
            for kind in kinds:
                report.tallies[kind] += 1
            report.reproducers.append(
                {
                    "index": index,
                    "kinds": kinds,
                    "file": f"reproducers/instance_{index:04d}.json",
                    "instance": instance.to_dict(),
                    "violations": result.records(instance.space),
                }
            )
    if out_dir is not None:
        write_report(report, out_dir)
    return report


def write_report(report: SearchReport, out_dir: str | Path) -> Path:
    out = Path(out_dir)
    try:
        (out / "reproducers").mkdir(parents=True, exist_ok=True)
        for rec in report.reproducers:
            (out / rec["file"]).write_text(
                json.dumps(rec["instance"], indent=2) + "\n", encoding="utf-8"
            )
        path = out / "report.json"
        path.write_text(json.dumps(report.to_json(), indent=2, sort_keys=True) + "\n", encoding="utf-8")
    except OSError as exc:
        raise WorkbenchError(f"cannot write hunt results to {out}: {exc}") from exc
    return path
