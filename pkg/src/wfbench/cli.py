"""Command-line interface.

Exit codes: 0 when the checked property holds, 1 when violations were
found, 2 for usage or input errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .analysis import check_history
from .configuration import Mode
from .errors import WorkbenchError
from .instance import Instance, load_instance, paper_instance
from .oracle import run_wfa
from .search import SearchConfig, hunt, write_report
from .space import metric_closure, validate_triangle
from .workfunction import format_tsv, run_history

EXIT_OK, EXIT_FOUND, EXIT_ERROR = 0, 1, 2


def _load(args) -> Instance:
    instance = load_instance(args.instance)
    if getattr(args, "closure", False):
        instance = instance.with_space(metric_closure(instance.space))
    return instance


def _write_json(path: str | None, doc) -> None:
    if path:
        Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n", encoding="utf-8")


def cmd_validate(args) -> int:
    instance = _load(args)
    space = instance.space
    found = validate_triangle(space)
    for v in found:
        print(
            f"d({v.x},{v.y}) = {space.format(v.direct)} > "
            f"d({v.x},{v.via}) + d({v.via},{v.y}) = {space.format(v.detour)}"
        )
    print("metric" if not found else f"non-metric: {len(found)} violated pair(s)")
    _write_json(args.json, {"metric": not found, "violations": [v.to_json(space) for v in found]})
    return EXIT_FOUND if found else EXIT_OK


def cmd_table(args) -> int:
    history = run_history(_load(args), args.mode)
    sys.stdout.write(format_tsv(history))
    if args.json:
        space = history.instance.space
        configs = history[0].configs
        _write_json(
            args.json,
            {
                "mode": str(history.mode),
                "columns": [str(X) for X in configs],
                "rows": [
                    {"request": label, "step": t.step, "values": [space.format(t.values[X]) for X in configs]}
                    for label, t in zip(history.row_labels(), history.tables)
                ],
            },
        )
    return EXIT_OK


def cmd_check(args) -> int:
    instance = _load(args)
    space = instance.space
    report = check_history(run_history(instance, args.mode))
    layers = [t for t in sorted(report.lipschitz) if report.lipschitz[t]]
    print(
        f"instance: {len(space)} points, k={instance.k}, {len(instance.requests)} requests, "
        f"mode={args.mode}, distances={'closure' if args.closure else 'raw'}"
    )
    print(f"triangle: {len(report.triangle)} violated pair(s)")
    print(
        f"lipschitz: {len(report.lipschitz_violations())} violation(s)"
        + (f" in layer(s) {','.join(map(str, layers))}" if layers else "")
    )
    print(f"monotonicity: {len(report.monotonicity)} violation(s)")
    print(f"verdict: {report.verdict}")
    for rec in report.records(space):
        print(json.dumps(rec))
    _write_json(args.json, report.to_json(space))
    return EXIT_FOUND if report.has_violations() else EXIT_OK


def cmd_wfa(args) -> int:
    instance = _load(args)
    space = instance.space
    run = run_wfa(instance, args.mode)
    print("step\trequest\tmove\tcost\tconfig")
    for t, m in enumerate(run.moves, start=1):
        move = f"{m.server}->{m.request}" if m.server is not None else "-"
        print(f"{t}\t{m.request}\t{move}\t{space.format(m.cost)}\t{m.config}")
    print(f"online cost: {space.format(run.total_online_cost)}")
    print(f"opt cost: {space.format(run.opt_cost)}")
    ratio = run.ratio
    print(f"ratio: {'undefined' if ratio is None else f'{ratio:.6g}'}")
    _write_json(args.json, run.to_json(space))
    return EXIT_OK


def cmd_hunt(args) -> int:
    doc = {}
    if args.config:
        try:
            doc = json.loads(Path(args.config).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise WorkbenchError(f"{args.config}: cannot load search config ({exc})") from exc
        if not isinstance(doc, dict):
            raise WorkbenchError(f"{args.config}: search config must be a JSON object")
    overrides = {
        "seed": args.seed,
        "count": args.count,
        "n": args.n,
        "k": args.k,
        "T": args.T,
        "weights": args.weights,
        "mode_filter": args.filter,
        "mode": args.mode,
    }
    doc.update({key: v for key, v in overrides.items() if v is not None})
    config = SearchConfig.from_dict(doc)
    inject = [load_instance(p) for p in args.inject or ()]
    if args.inject_paper:
        inject.insert(0, paper_instance())
    report = hunt(config, inject=inject)
    if args.out:
        path = write_report(report, args.out)
        print(f"report: {path}")
    t = report.tallies
    print(f"instances: {len(report.verdicts)}")
    print(f"monotonicity: {t['monotonicity']} instance(s)")
    print(f"lipschitz: {t['lipschitz']} instance(s)")
    print(f"wfa_bound: {t['wfa_bound']} instance(s) flagged")
    _write_json(args.json, report.to_json())
    return EXIT_FOUND if report.violations_found else EXIT_OK


def _range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition(":")
    try:
        return (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected LO:HI or N, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wfbench", description="k-server work function workbench")
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_command(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("instance", help="instance JSON file")
        p.add_argument("--closure", action="store_true", help="replace distances by shortest paths first")
        p.add_argument("--json", metavar="PATH", help="also write machine-readable JSON here")
        p.set_defaults(func=func)
        return p

    instance_command("validate", cmd_validate, "check the triangle inequality")
    for name, func, help in (
        ("table", cmd_table, "print the work-function table as TSV"),
        ("check", cmd_check, "check Lipschitz and monotonicity properties"),
        ("wfa", cmd_wfa, "simulate the work function algorithm"),
    ):
        p = instance_command(name, func, help)
        p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.SET.value)

    p = sub.add_parser("hunt", help="search random instances for violations")
    p.add_argument("--config", metavar="FILE", help="search config JSON (flags override it)")
    p.add_argument("--seed", type=int)
    p.add_argument("--count", type=int)
    p.add_argument("--n", type=_range, metavar="LO:HI")
    p.add_argument("--k", type=_range, metavar="LO:HI")
    p.add_argument("--T", type=_range, metavar="LO:HI")
    p.add_argument("--weights", type=_range, metavar="LO:HI")
    p.add_argument("--filter", choices=["metric", "non-metric", "both"])
    p.add_argument("--mode", choices=[m.value for m in Mode])
    p.add_argument("--inject", action="append", metavar="FILE", help="instance file to check first")
    p.add_argument("--inject-paper", action="store_true", help="check the bundled fixture first")
    p.add_argument("--out", metavar="DIR", help="write report.json and reproducers here")
    p.add_argument("--json", metavar="PATH")
    p.set_defaults(func=cmd_hunt)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except WorkbenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
