"""Command-line front end.

Subcommands: simulate, adversary-path, adversary-cubic, bruteforce-path,
rotor-upper. Report-producing commands exit 0 exactly when the aggregate
verdict is pass; verification failures exit 1; bad flags or unreadable
inputs exit 2.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import agents as agents_mod
from .adversary import export_instance, verify_cubic_bound, verify_path_bound
from .errors import PortWalkError
from .experiments import (
    ExperimentReport,
    ReportRow,
    battery,
    brute_force_path_worst_case,
    rotor_upper_bound_sweep,
)
from .graphs import deserialize
from .simulate import export_trace, run


class UsageError(Exception):
    pass


def resolve_agent(name_or_path: str) -> agents_mod.PortFunction:
    """Builtin battery name, or a path to an agent script document."""
    builtin = battery()
    if name_or_path in builtin:
        return builtin[name_or_path]
    path = Path(name_or_path)
    if not path.exists():
        raise UsageError(
            f"unknown agent {name_or_path!r}: not a builtin "
            f"({', '.join(sorted(builtin))}) and no such file"
        )
    try:
        return agents_mod.load_agent_script(path.read_text(), name=path.stem)
    except (ValueError, PortWalkError) as e:
        raise UsageError(f"bad agent script {name_or_path}: {e}") from e


def parse_stop(text: str):
    if text == "covered":
        return "covered"
    kind, _, arg = text.partition(":")
    if kind in ("target", "steps") and arg.lstrip("-").isdigit():
        return (kind, int(arg))
    raise UsageError(f"bad stop condition {text!r} "
                     "(use covered, target:<node>, or steps:<k>)")


def emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def write_report(report: ExperimentReport, args) -> int:
    emit(report.to_json() if args.format == "json" else report.to_csv(), args.out)
    return 0 if report.passed else 1


def cmd_simulate(args) -> int:
    try:
        g = deserialize(Path(args.graph).read_text())
    except OSError as e:
        raise UsageError(f"cannot read graph: {e}") from e
    except PortWalkError as e:
        raise UsageError(f"bad graph document: {e}") from e
    agent = resolve_agent(args.agent)
    trace = run(g, agent, args.start, parse_stop(args.stop), cap=args.cap)
    emit(export_trace(trace), args.out)
    return 0


def cmd_adversary_path(args) -> int:
    agent = resolve_agent(args.agent)
    r = verify_path_bound(agent, args.n, cap=args.cap)
    report = ExperimentReport("adversary-path", {"agent": agent.name, "n": args.n})
    measured = "" if r.steps is None else str(r.steps)
    report.rows.append(ReportRow("adversary-path", agent.name, args.n,
                                 "steps-to-target", str(r.bound), measured,
                                 r.verdict))
    report.rows.append(ReportRow("adversary-path", agent.name, args.n,
                                 "entry-arc-count", str(r.arc_bound),
                                 str(r.arc_count), r.verdict))
    return write_report(report, args)


def cmd_adversary_cubic(args) -> int:
    agent = resolve_agent(args.agent)
    r = verify_cubic_bound(agent, args.n, cap=args.cap, start=args.start)
    if args.save_instance:
        graph_text, sidecar = export_instance(r.instance)
        Path(args.save_instance + ".graph.json").write_text(graph_text)
        Path(args.save_instance + ".instance.json").write_text(sidecar)
    report = ExperimentReport("adversary-cubic", {"agent": agent.name, "n": args.n})
    measured = "" if r.cover is None else str(r.cover)
    report.rows.append(ReportRow("adversary-cubic", agent.name, args.n,
                                 "cover-time", str(r.bound), measured, r.verdict))
    report.rows.append(ReportRow("adversary-cubic", agent.name, args.n,
                                 f"v-star-visits;v_star={r.v_star}",
                                 str(r.v_star_budget), str(r.v_star_visits),
                                 "pass" if r.v_star_visits <= r.v_star_budget
                                 else "fail"))
    return write_report(report, args)


def cmd_bruteforce_path(args) -> int:
    agent = resolve_agent(args.agent)
    result = brute_force_path_worst_case(agent, args.n, cap=args.cap)
    bound = (args.n - 1) ** 2
    ok = (result.max_steps is not None and result.max_steps >= bound) \
        or result.unstopped > 0
    report = ExperimentReport("bruteforce-path",
                              {"agent": agent.name, "n": args.n})
    measured = "" if result.max_steps is None else str(result.max_steps)
    report.rows.append(ReportRow(
        "bruteforce-path", agent.name, args.n,
        f"unstopped={result.unstopped}", str(bound), measured,
        "pass" if ok else "fail"))
    return write_report(report, args)


def cmd_rotor_upper(args) -> int:
    cases = []
    for text in args.case:
        parts = text.split(",")
        if len(parts) != 3 or not all(p.lstrip("-").isdigit() for p in parts):
            raise UsageError(f"bad case {text!r}, expected n,m,seed")
        cases.append(tuple(int(p) for p in parts))
    if args.n is not None or args.m is not None:
        if args.n is None or args.m is None:
            raise UsageError("--n and --m must be given together")
        cases.append((args.n, args.m, args.seed))
    if not cases:
        raise UsageError("need --n/--m/--seed or at least one --case n,m,seed")
    report = rotor_upper_bound_sweep(cases, factor=args.factor, cap=args.cap)
    return write_report(report, args)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="portwalk",
        description="Simulate oblivious agents on port-labeled graphs and "
                    "check worst-case exploration bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_report_flags(p):
        p.add_argument("--out", help="write output to this file instead of stdout")
        p.add_argument("--format", choices=("csv", "json"), default="csv")

    p = sub.add_parser("simulate", help="run one agent on one graph, emit the trace")
    p.add_argument("--graph", required=True, help="graph document file")
    p.add_argument("--agent", required=True, help="builtin name or script file")
    p.add_argument("--start", type=int, default=0)
    p.add_argument("--stop", default="covered",
                   help="covered | target:<node> | steps:<k>")
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--out")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("adversary-path",
                       help="build the worst-case path for an agent and "
                            "check the quadratic bound")
    p.add_argument("--agent", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cap", type=int, default=None)
    add_report_flags(p)
    p.set_defaults(func=cmd_adversary_path)

    p = sub.add_parser("adversary-cubic",
                       help="build the clique-path instance for an agent and "
                            "check the cubic cover bound")
    p.add_argument("--agent", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--start", type=int, default=0,
                   help="clique node the walk starts from")
    p.add_argument("--cap", type=int, default=None)
    p.add_argument("--save-instance", metavar="PREFIX",
                   help="also write PREFIX.graph.json and PREFIX.instance.json")
    add_report_flags(p)
    p.set_defaults(func=cmd_adversary_cubic)

    p = sub.add_parser("bruteforce-path",
                       help="enumerate all path labelings for an agent (n <= 14)")
    p.add_argument("--agent", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--cap", type=int, default=None)
    add_report_flags(p)
    p.set_defaults(func=cmd_bruteforce_path)

    p = sub.add_parser("rotor-upper",
                       help="check rotor-router cover time <= factor*m*D on "
                            "random graphs")
    p.add_argument("--case", action="append", default=[],
                   metavar="N,M,SEED", help="repeatable")
    p.add_argument("--n", type=int, default=None, help="single-case node count")
    p.add_argument("--m", type=int, default=None, help="single-case edge count")
    p.add_argument("--seed", type=int, default=0, help="single-case seed")
    p.add_argument("--factor", type=float, default=2.0)
    p.add_argument("--cap", type=int, default=None)
    add_report_flags(p)
    p.set_defaults(func=cmd_rotor_upper)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except PortWalkError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
