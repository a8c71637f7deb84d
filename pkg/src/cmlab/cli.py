"""Command line entry point: ``cmlab run | check | list-scenarios``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .algebra.text import ParseError
from .runner import bundled_scenarios, emit, load_bundled, run
from .scenario import parse_scenario


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cmlab", description="Exact checks for parameter, regular and Cohen-Macaulay questions.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(q):
        q.add_argument("--format", choices=["json", "text"], default="json")
        q.add_argument("--budget", type=int, default=None, help="reduction-step budget per check")
        q.add_argument("--jobs", type=int, default=1, help="worker threads for independent checks")
        q.add_argument("--timings", action="store_true", help="include wall-clock times (breaks byte-identical output)")

    r = sub.add_parser("run", help="run a scenario file or a bundled scenario")
    r.add_argument("scenario", help="path to a .cml file, or a bundled name such as bundled/valuation_pair")
    common(r)
    c = sub.add_parser("check", help="run an inline scenario, e.g. \"check sps (x, y) in QQ[x,y]\"")
    c.add_argument("text")
    common(c)
    sub.add_parser("list-scenarios", help="list bundled scenarios")
    return p


def _describe(text: str) -> str:
    for line in text.splitlines():
        if line.startswith("#"):
            return line.lstrip("# ").strip()
    return ""


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    if args.command == "list-scenarios":
        for name, text in bundled_scenarios().items():
            print(f"{name:40} {_describe(text)}")
        return 0
    if args.command == "run":
        path = Path(args.scenario)
        try:
            text = path.read_text(encoding="utf-8") if path.is_file() else load_bundled(args.scenario)
        except KeyError as exc:
            print(f"cmlab: {exc.args[0]}", file=sys.stderr)
            return 2
    else:
        text = args.text
    try:
        scenario = parse_scenario(text)
    except ParseError as exc:
        print(f"cmlab: syntax error at {exc}", file=sys.stderr)
        return 2
    report = run(scenario, budget=args.budget, jobs=max(1, args.jobs))
    sys.stdout.write(emit(report, args.format, args.timings))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
