"""Exit criteria for the workbench, one test per criterion."""
import json
import random
import time
from math import comb

from wfbench import (
    Configuration,
    DistanceSpace,
    Instance,
    SearchConfig,
    brute_force_table,
    check_history,
    check_lipschitz,
    enumerate_configs,
    generate_instance,
    hunt,
    matching_distance,
    metric_closure,
    run_history,
    validate_triangle,
)
from wfbench.cli import main
from wfbench.instance import PAPER_INSTANCE_PATH
from wfbench.search import instance_rng

from conftest import GOLDEN, PAPER_COLUMNS, PAPER_TABLE, labels
from test_configuration import bijection_oracle
from test_space import scan_triples, shortest_paths

FIXTURE = str(PAPER_INSTANCE_PATH)


def test_golden_table(capsys, criterion):
    with criterion("1 golden table") as c:
        start = time.perf_counter()
        code = main(["table", FIXTURE])
        elapsed = time.perf_counter() - start
        out = capsys.readouterr().out
        assert code == 0
        assert out.encode() == (GOLDEN / "paper_table.tsv").read_bytes()
        rows = [list(map(int, line.split("\t")[1:])) for line in out.splitlines()[1:]]
        assert out.splitlines()[0].split("\t")[1:] == PAPER_COLUMNS
        assert rows == [PAPER_TABLE[t] for t in range(7)]
        assert elapsed < 1.0
        c.detail = f"70 values byte-exact in {elapsed:.3f}s"


def test_violation_detection(capsys, criterion):
    with criterion("2 monotonicity violation") as c:
        code = main(["check", FIXTURE])
        out = capsys.readouterr().out
        assert code == 1
        mono = [json.loads(l) for l in out.splitlines() if l.startswith('{"kind": "monotonicity"')]
        assert mono == [{"kind": "monotonicity", "step": 5, "config": "cde", "before": "18", "after": "17"}]
        # independent columnwise scan of the published rows
        drops = [
            (t, PAPER_COLUMNS[j])
            for t in range(1, 7)
            for j in range(10)
            if PAPER_TABLE[t][j] < PAPER_TABLE[t - 1][j]
        ]
        assert drops == [(5, "cde")]
        c.detail = "step 5 cde 18->17, exit 1"


def test_lipschitz_finding(paper, criterion):
    with criterion("3 lipschitz finding") as c:
        layer = run_history(paper)[4]
        found = check_lipschitz(layer, paper.space)
        assert [(str(v.X), str(v.Y), v.wX, v.wY, v.dXY) for v in found] == [("cde", "bce", 18, 15, 2)]
        assert bijection_oracle(Configuration("cde"), Configuration("bce"), paper.space) == 2
        c.detail = "(cde, bce): 18 > 15 + 2"


def test_metricity_diagnosis(paper, criterion):
    with criterion("4 metricity diagnosis") as c:
        found = validate_triangle(paper.space)
        assert {(v.x, v.y) for v in found} == {("a", "c"), ("a", "d"), ("b", "e")} == scan_triples(paper.space)
        closed = metric_closure(paper.space)
        sp = shortest_paths(paper.space)
        expected = {("a", "c"): 5, ("a", "d"): 3, ("b", "e"): 8}
        for a, b, v in closed.pairs():
            assert v == sp[a][b]
            assert v == expected.get((a, b), paper.space.d(a, b))
        c.detail = "pairs ac, ad, be; closure 5, 3, 8"


def test_closure_restores_monotonicity(capsys, paper, criterion):
    with criterion("5 closure restores monotonicity") as c:
        code = main(["check", "--closure", FIXTURE])
        out = capsys.readouterr().out
        assert code == 0
        report = check_history(run_history(paper.with_space(metric_closure(paper.space))))
        assert report.monotonicity == [] and report.lipschitz_violations() == []
        assert "verdict: monotone" in out
        c.detail = "exit 0, no violations"


def test_oracle_equivalence(paper, criterion):
    with criterion("6 oracle equivalence") as c:
        start = time.perf_counter()
        cases = [paper]
        config = SearchConfig(seed=20261018, count=120, n=(1, 5), k=(1, 3), T=(0, 6), weights=(0, 10))
        cases += [generate_instance(instance_rng(config.seed, i), config) for i in range(config.count)]
        layers = 0
        for instance in cases:
            for mode in ("set", "multiset"):
                history = run_history(instance, mode)
                for t in range(len(history)):
                    assert brute_force_table(instance, t, mode).values == history[t].values
                    layers += 1
        elapsed = time.perf_counter() - start
        assert len(cases) >= 101
        assert elapsed < 30
        c.detail = f"{len(cases)} instances, {layers} layers in {elapsed:.1f}s"


def test_property_suite(criterion):
    with criterion("7 property suite") as c:
        rng = random.Random(7)

        def random_space(n, closed=False):
            raw = [[0] * n for _ in range(n)]
            for i in range(n):
                for j in range(i + 1, n):
                    raw[i][j] = raw[j][i] = rng.randint(0, 12)
            space = DistanceSpace(labels(n), raw)
            return metric_closure(space) if closed else space

        pairs = 0
        for _ in range(1000):
            space = random_space(rng.randint(2, 6))
            k = rng.randint(1, 4)
            X = Configuration(rng.choices(space.labels, k=k))
            Y = Configuration(rng.choices(space.labels, k=k))
            d = matching_distance(X, Y, space)
            assert d == matching_distance(Y, X, space)
            assert d == bijection_oracle(X, Y, space)
            assert matching_distance(X, X, space) == 0
            pairs += 1

        for _ in range(200):
            space = random_space(rng.randint(1, 7))
            closed = metric_closure(space)
            assert metric_closure(closed) == closed
            assert validate_triangle(closed) == []

        histories = 0
        for _ in range(200):
            n = rng.randint(2, 6)
            space = random_space(n, closed=rng.random() < 0.5)
            k = rng.randint(1, min(3, n))
            instance = Instance(
                space, k, Configuration(rng.sample(space.labels, k)),
                tuple(rng.choice(space.labels) for _ in range(rng.randint(0, 8))),
            )
            history = run_history(instance, "set")
            for prev, nxt, r in zip(history.tables, history.tables[1:], instance.requests):
                for X in nxt.values:
                    if r in X:
                        assert nxt.values[X] == prev.values[X]
            assert len(history[0].values) == comb(n, k) == len(enumerate_configs(space, k))
            histories += 1
        c.detail = f"{pairs} matching pairs, 200 closures, {histories} histories"


def test_metric_and_non_metric_hunts(capsys, tmp_path, criterion):
    with criterion("8 hunts") as c:
        start = time.perf_counter()
        code = main([
            "hunt", "--filter", "metric", "--count", "500", "--n", "2:6", "--k", "1:3",
            "--T", "0:8", "--seed", "20261018", "--out", str(tmp_path / "metric"),
        ])
        out = capsys.readouterr().out
        assert code == 0
        assert "monotonicity: 0 instance(s)" in out and "lipschitz: 0 instance(s)" in out
        code = main([
            "hunt", "--filter", "non-metric", "--count", "500", "--n", "3:6", "--k", "1:3",
            "--T", "0:8", "--weights", "1:10", "--seed", "20261018", "--out", str(tmp_path / "raw"),
        ])
        assert code == 1
        report = hunt(SearchConfig(
            seed=20261018, count=500, n=(3, 6), k=(1, 3), T=(0, 8), weights=(1, 10), mode_filter="non-metric"
        ))
        elapsed = time.perf_counter() - start
        assert report.tallies["monotonicity"] >= 1
        assert elapsed < 120
        c.detail = (
            f"metric: 0 violations; non-metric: {report.tallies['monotonicity']} monotonicity "
            f"hits in 500; {elapsed:.1f}s"
        )
