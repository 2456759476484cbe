"""Command-line front end.

Exit codes: 0 success/equivalent, 1 inequivalent, 2 usage/parse/config
error, 3 structural rejection, 4 solver limit reached.

Reports and traces contain no timing data, so identical runs produce
identical bytes; wall-clock numbers go to stderr and to --report-tsv.
"""

import argparse
import os
import sys
import time

from .checks import check_fanout, check_path_balance
from .errors import SfqlecError
from .faults import FAULT_KINDS, inject
from .itcl import ArrivalSchedule, apply_itcl, match_inputs
from .mcid import build_mcid
from .miter import build_miter, check_equivalence
from .netlist import parse_netlist, write_netlist
from .profiles import resolve_profile
from .sat import cnf_from_aig, to_dimacs
from .sim import parse_wave, simulate

EXIT_EQUIVALENT = 0
EXIT_INEQUIVALENT = 1
EXIT_ERROR = 2
EXIT_REJECTED = 3
EXIT_UNDECIDED = 4


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load(path: str):
    stem = os.path.splitext(os.path.basename(path))[0]
    return parse_netlist(_read(path), name=stem)


def _emit(lines: list[str], report_path: str | None) -> None:
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if report_path:
        _write(report_path, text)


def cmd_check_structure(args) -> int:
    netlist = _load(args.netlist)
    profile = resolve_profile(args.profile)
    lines = [f"netlist {netlist.name}", f"profile {profile.name}"]
    fan = check_fanout(netlist, profile)
    bal = check_path_balance(netlist, profile, po_only=args.po_only_balance)
    lines += fan.lines() + bal.lines()
    ok = fan.passed and bal.passed
    lines.append("checks passed" if ok else "checks failed")
    _emit(lines, args.report)
    return EXIT_EQUIVALENT if ok else EXIT_REJECTED


def cmd_build_mcid(args) -> int:
    netlist = _load(args.netlist)
    profile = resolve_profile(args.profile)
    mcid = build_mcid(netlist, profile)
    if args.arrivals:
        mcid = apply_itcl(mcid, ArrivalSchedule.parse(args.arrivals))
    bench = mcid.to_bench()
    if args.out:
        _write(args.out, bench)
    else:
        sys.stdout.write(bench)
    steps = [s.step for s in mcid.timed_inputs]
    lo, hi = (min(steps), max(steps)) if steps else (0, 0)
    print(
        f"mcid-gates {mcid.gate_count}\n"
        f"mcid-duplicated {mcid.duplicated_gate_count}\n"
        f"pins {len(mcid.timed_inputs)}\n"
        f"window {lo}..{hi}",
        file=sys.stderr,
    )
    return EXIT_EQUIVALENT


def _verdict_word(equivalent) -> str:
    if equivalent is None:
        return "unknown"
    return "equivalent" if equivalent else "inequivalent"


def cmd_verify(args) -> int:
    t0 = time.monotonic()
    netlist = _load(args.netlist)
    golden = _load(args.golden)
    profile = resolve_profile(args.profile)
    lines = [f"netlist {netlist.name}", f"golden {golden.name}", f"profile {profile.name}"]

    fan = check_fanout(netlist, profile)
    if not fan.passed:
        lines += fan.lines()
        lines.append("verdict rejected")
        _emit(lines, args.report)
        _finish(args, netlist.name, "rejected", "none", t0)
        return EXIT_REJECTED
    bal = check_path_balance(netlist, profile, po_only=args.po_only_balance)
    for v in bal.violations:
        print(f"WARNING {v.line()}", file=sys.stderr)

    mcid = build_mcid(netlist, profile)
    if args.arrivals:
        mcid = apply_itcl(mcid, ArrivalSchedule.parse(args.arrivals))
    matching = match_inputs(mcid, list(golden.primary_inputs))
    miter = build_miter(mcid, golden, matching)
    if args.cnf:
        if miter.root >> 1 == 0:
            _write(args.cnf, "p cnf 0 0\n" if miter.root == 0 else "p cnf 0 1\n0\n")
        else:
            _write(args.cnf, to_dimacs(cnf_from_aig(miter.aig, miter.root)))
    verdict = check_equivalence(
        miter,
        max_conflicts=args.max_conflicts,
        max_seconds=args.max_seconds,
        seed=args.seed,
        per_output=args.per_output,
    )

    steps = [s.step for s in mcid.timed_inputs]
    lo, hi = (min(steps), max(steps)) if steps else (0, 0)
    word = _verdict_word(verdict.equivalent)
    s = verdict.stats
    lines += [
        f"mcid-gates {mcid.gate_count}",
        f"mcid-duplicated {mcid.duplicated_gate_count}",
        f"window {lo}..{hi}",
        f"matched-step {matching.t_star}",
        f"verdict {word}",
        f"method {s.method}",
        f"aig-nodes {s.aig_nodes}",
        f"cnf-vars {s.cnf_vars}",
        f"cnf-clauses {s.cnf_clauses}",
        f"decisions {s.decisions}",
        f"conflicts {s.conflicts}",
    ]
    if verdict.per_output is not None:
        lines += [f"output {po} {_verdict_word(v)}" for po, v in verdict.per_output.items()]
    if verdict.trace is not None:
        if args.trace:
            _write(args.trace, verdict.trace.format())
        else:
            lines += verdict.trace.format_lines()
    _emit(lines, args.report)
    _finish(args, netlist.name, word, s.method, t0)
    if verdict.equivalent is None:
        return EXIT_UNDECIDED
    return EXIT_EQUIVALENT if verdict.equivalent else EXIT_INEQUIVALENT


def _finish(args, name: str, word: str, method: str, t0: float) -> None:
    ms = (time.monotonic() - t0) * 1000.0
    print(f"timing: verify {name}: {ms:.3f} ms", file=sys.stderr)
    if args.report_tsv:
        with open(args.report_tsv, "a", encoding="utf-8") as fh:
            fh.write(f"{name}\t{word}\t{method}\t{ms:.3f}\n")


def cmd_inject_fault(args) -> int:
    netlist = _load(args.netlist)
    mutated, spec = inject(netlist, args.kind, seed=args.seed, target=args.target)
    text = write_netlist(mutated) + f"# {spec.line()}\n"
    if args.out:
        _write(args.out, text)
        print(spec.line())
    else:
        sys.stdout.write(text)
    return EXIT_EQUIVALENT


def cmd_simulate(args) -> int:
    netlist = _load(args.netlist)
    profile = resolve_profile(args.profile)
    waves = []
    for raw in _read(args.waves).splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        wave = parse_wave(line)
        unknown = sorted(set(wave) - set(netlist.primary_inputs))
        if unknown:
            raise SfqlecError(f"wave drives unknown input(s): {', '.join(unknown)}")
        waves.append(wave)
    seen = simulate(netlist, waves, profile, extra_cycles=args.extra)
    for k, outs in enumerate(seen):
        bits = " ".join(f"{po}={outs[po]}" for po in netlist.primary_outputs)
        print(f"CYCLE {k}: {bits}")
    return EXIT_EQUIVALENT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sfqlec", description="structural checks and equivalence checking for clocked netlists"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--profile", default="rsfq", help="builtin profile name or profile file")

    p = sub.add_parser("check-structure", help="fanout and path-balance checks")
    p.add_argument("netlist")
    common(p)
    p.add_argument("--po-only-balance", action="store_true", help="only compare output depths")
    p.add_argument("--report", metavar="FILE", default=None)
    p.set_defaults(func=cmd_check_structure)

    p = sub.add_parser("build-mcid", help="dump the unrolled model as bench text")
    p.add_argument("netlist")
    common(p)
    p.add_argument("--arrivals", default=None, help="arrival schedule, e.g. 'a:0,d:1'")
    p.add_argument("--out", metavar="FILE", default=None)
    p.set_defaults(func=cmd_build_mcid)

    p = sub.add_parser("verify", help="check a netlist against a combinational golden spec")
    p.add_argument("netlist")
    p.add_argument("golden")
    common(p)
    p.add_argument("--arrivals", default=None, help="arrival schedule, e.g. 'a:0,d:1'")
    p.add_argument("--po-only-balance", action="store_true")
    p.add_argument("--per-output", action="store_true")
    p.add_argument("--seed", type=int, default=0, help="simulation pre-pass seed")
    p.add_argument("--max-conflicts", type=int, default=None)
    p.add_argument("--max-seconds", type=float, default=None)
    p.add_argument("--trace", metavar="FILE", default=None, help="write counterexample trace here")
    p.add_argument("--cnf", metavar="FILE", default=None, help="write miter DIMACS here")
    p.add_argument("--report", metavar="FILE", default=None)
    p.add_argument("--report-tsv", metavar="FILE", default=None, help="append a timing row here")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("inject-fault", help="mutate a netlist with a seeded structural fault")
    p.add_argument("netlist")
    p.add_argument("--kind", required=True, choices=FAULT_KINDS)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--target", default=None, help="gate id (default: seeded random pick)")
    p.add_argument("--out", metavar="FILE", default=None)
    p.set_defaults(func=cmd_inject_fault)

    p = sub.add_parser("simulate", help="cycle-accurate simulation of input waves")
    p.add_argument("netlist")
    common(p)
    p.add_argument("--waves", required=True, metavar="FILE", help="one wave per line: 'a=0 b=1'")
    p.add_argument("--extra", type=int, default=None, help="cycles after the last wave")
    p.set_defaults(func=cmd_simulate)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except SfqlecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
