"""``rank1`` command line.

Exit codes: 0 Yes, 1 No, 2 DepthLimited / not applicable / undetermined,
64 usage error, 65 invalid or unreadable spec, 70 internal certificate failure.
"""

from __future__ import annotations

import argparse
import sys

from . import decide
from .ergodic import all_hold, ed_holds, totally_ergodic_up_to
from .errors import (CapExceeded, CertificateFailed, DegenerateSpec, DepthLimited, InvalidSpec,
                     NotCanonicalAtDepth, OutOfWindow)
from .generate import DEFAULT_CAP, canonical_analysis, expand
from .params import bounds, finite_measure_check, parse_spec, validate
from .symbolic import PointedConfig, labels
from .verdict import Answer, Verdict
from .words import show

EXIT_YES, EXIT_NO, EXIT_LIMITED = 0, 1, 2
EXIT_USAGE, EXIT_SPEC, EXIT_SOFTWARE = 64, 65, 70

_ANSWER_CODES = {
    Answer.YES: EXIT_YES,
    Answer.NO: EXIT_NO,
    Answer.DEPTH_LIMITED: EXIT_LIMITED,
    Answer.NOT_APPLICABLE: EXIT_LIMITED,
}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def parse_spec_file(path: str):
    try:
        text = _read(path)
    except OSError as exc:
        raise InvalidSpec(f"{path}: cannot read: {exc.strerror or exc}") from None
    return parse_spec(text, source=path)


def _emit(lines, out):
    for line in lines:
        print(line, file=out)


def _verdict_out(v: Verdict, fmt: str, out) -> int:
    if fmt == "machine":
        _emit(v.to_lines(), out)
    else:
        print(f"{v.answer.value}  (rule {v.rule}, depth {v.depth_used})", file=out)
        if v.note:
            print(f"  {v.note}", file=out)
        for key in sorted(v.witnesses):
            print(f"  {key}: {v.witnesses[key]}", file=out)
    return _ANSWER_CODES[v.answer]


def _cmd_validate(args, out):
    spec = parse_spec_file(args.spec)
    problems = validate(spec)
    if problems:
        raise InvalidSpec(problems)
    bd = bounds(spec)
    lines = [f"stages_preamble: {len(spec.preamble)}",
             f"stages_period: {len(spec.tail) if spec.tail else 0}",
             f"R: {bd.R}", f"S: {bd.S}", f"bounds_certified: {str(bd.certified).lower()}"]
    if spec.has_tail:
        rep = finite_measure_check(spec, min(args.depth, 6))
        lines.append(f"finite_measure: {str(rep.holds).lower()}")
        lines.append("partial_sums: " + ",".join(str(x) for x in rep.partial_sums))
    _emit(["valid: true"] + lines, out)
    return 0


def _cmd_generate(args, out):
    spec = parse_spec_file(args.spec)
    gen = expand(spec, args.depth, args.cap)
    for n, (h, w) in enumerate(zip(gen.heights, gen.words)):
        if args.format == "machine":
            print(f"h.{n}: {h}", file=out)
            print(f"v.{n}: {show(w)}", file=out)
        else:
            print(f"v_{n} (h={h}): {show(w)}", file=out)
    return 0


def _cmd_canonical(args, out):
    spec = parse_spec_file(args.spec)
    rep = canonical_analysis(spec, args.depth, args.cap)
    lines = [
        f"depth: {rep.depth}",
        f"built_into: {len(rep.built_into)}",
        "member_lengths: " + ",".join(str(len(u)) for u in rep.built_into),
        "removable_stages: " + ",".join(str(n) for n in rep.removable_stages),
        f"degenerate: {str(rep.degenerate_flag).lower()}",
    ]
    for n in rep.removable_stages:
        u, w = rep.stage_witnesses[n]
        lines.append(f"witness.{n}: u={show(u)} w_length={len(w)}")
    if rep.degenerate_flag:
        lines.append(f"degenerate_base: {show(rep.degenerate_witness)}")
    lines.append(f"note: {rep.notes[0]}")
    _emit(lines, out)
    return EXIT_LIMITED if rep.degenerate_flag else 0


def _cmd_ergodic(args, out):
    spec = parse_spec_file(args.spec)
    if args.d is not None:
        traces = [ed_holds(spec, args.d)]
    else:
        upto = args.upto if args.upto is not None else bounds(spec).S
        traces = totally_ergodic_up_to(spec, upto)
    for t in traces:
        if t.holds:
            print(f"d={t.d}: holds (checked N < {t.cycle_end}, residues repeat from N={t.cycle_start})",
                  file=out)
        else:
            print(f"d={t.d}: fails at N={t.failing_N} (every later spacer value is "
                  f"{(-t.residues[t.failing_N]) % t.d} mod {t.d})", file=out)
    print(f"traces: {len(traces)}", file=out)
    print(f"all_hold: {str(all_hold(traces)).lower()}", file=out)
    return EXIT_YES if all_hold(traces) else EXIT_NO


def _cmd_pair(fn):
    def run(args, out):
        a, b = parse_spec_file(args.spec_a), parse_spec_file(args.spec_b)
        return _verdict_out(fn(a, b, args.depth, args.window), args.format, out)
    return run


def _cmd_msj(args, out):
    spec = parse_spec_file(args.spec)
    return _verdict_out(decide.decide_msj(spec, args.depth), args.format, out)


def _cmd_labels(args, out):
    spec = parse_spec_file(args.spec)
    gen = expand(spec, args.level, args.cap)
    lv = labels(PointedConfig(gen, args.level, args.offset))

    def fmt(x):
        return "inf" if x == float("inf") else str(x)

    print(f"level: {args.level}", file=out)
    print(f"offset: {args.offset}", file=out)
    print("lambda: " + ",".join(fmt(x) for x in lv.lambdas), file=out)
    print("kappa: " + ",".join(fmt(x) for x in lv.kappas), file=out)
    return 0


def _cmd_verify(args, out):
    a = parse_spec_file(args.spec_a)
    b = parse_spec_file(args.spec_b) if args.spec_b else None
    text = _read(args.verdict)
    try:
        v = Verdict.from_lines(text.splitlines())
    except ValueError as exc:
        raise UsageError(f"cannot parse verdict: {exc}") from None
    ok = decide.verify_verdict(v, a, b)
    print(f"verified: {str(ok).lower()}", file=out)
    print(f"answer: {v.answer.value}", file=out)
    print(f"rule: {v.rule}", file=out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="rank1", description="Decision procedures for bounded rank-one transformations.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, window=False):
        sp.add_argument("--depth", type=int, default=decide.DEFAULT_DEPTH)
        sp.add_argument("--format", choices=("text", "machine"), default="text")
        sp.add_argument("--cap", type=int, default=DEFAULT_CAP, help="letter cap for expanded words")
        if window:
            sp.add_argument("--window", type=int, default=decide.DEFAULT_WINDOW)

    sp = sub.add_parser("validate", help="check a spec file")
    sp.add_argument("spec")
    common(sp)
    sp.set_defaults(run=_cmd_validate)

    sp = sub.add_parser("generate", help="print v_0 .. v_depth")
    sp.add_argument("spec")
    common(sp)
    sp.set_defaults(run=_cmd_generate)

    sp = sub.add_parser("canonical", help="canonical generating sequence analysis")
    sp.add_argument("spec")
    common(sp)
    sp.set_defaults(run=_cmd_canonical, depth=4)

    sp = sub.add_parser("ergodic", help="evaluate (E_d)")
    sp.add_argument("spec")
    g = sp.add_mutually_exclusive_group()
    g.add_argument("--d", type=int)
    g.add_argument("--upto", type=int)
    common(sp)
    sp.set_defaults(run=_cmd_ergodic)

    for name, fn in (("check-iso", decide.check_isomorphic), ("check-disjoint", decide.check_disjoint)):
        sp = sub.add_parser(name)
        sp.add_argument("spec_a")
        sp.add_argument("spec_b")
        common(sp, window=True)
        sp.set_defaults(run=_cmd_pair(fn))

    sp = sub.add_parser("check-msj", help="minimal self-joinings")
    sp.add_argument("spec")
    common(sp)
    sp.set_defaults(run=_cmd_msj)

    sp = sub.add_parser("labels", help="λ_n and κ_n of a pointed configuration")
    sp.add_argument("--spec", required=True)
    sp.add_argument("--level", type=int, required=True)
    sp.add_argument("--offset", type=int, required=True)
    common(sp)
    sp.set_defaults(run=_cmd_labels)

    sp = sub.add_parser("verify", help="re-check a machine-format verdict from its witnesses")
    sp.add_argument("spec_a")
    sp.add_argument("spec_b", nargs="?")
    sp.add_argument("--verdict", required=True, help="machine-format verdict file, or - for stdin")
    sp.set_defaults(run=_cmd_verify)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            raise UsageError("a subcommand is required")
        if getattr(args, "depth", 0) is not None and getattr(args, "depth", 0) < 0:
            raise UsageError("--depth must be non-negative")
        return args.run(args, out)
    except UsageError as exc:
        print(f"rank1: usage error: {exc}", file=err)
        return EXIT_USAGE
    except InvalidSpec as exc:
        for problem in exc.problems:
            print(f"rank1: invalid spec: {problem}", file=err)
        return EXIT_SPEC
    except OutOfWindow as exc:
        print(f"rank1: {exc}", file=err)
        return EXIT_USAGE
    except (DegenerateSpec, NotCanonicalAtDepth) as exc:
        print(f"rank1: hypotheses not met: {exc}", file=err)
        if exc.witness:
            print(f"rank1: witness: {exc.witness}", file=err)
        return EXIT_LIMITED
    except (DepthLimited, CapExceeded) as exc:
        print(f"rank1: depth limited: {exc}", file=err)
        return EXIT_LIMITED
    except CertificateFailed as exc:
        print(f"rank1: internal error, certificate failed: {exc}", file=err)
        return EXIT_SOFTWARE
    except ValueError as exc:
        print(f"rank1: usage error: {exc}", file=err)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
