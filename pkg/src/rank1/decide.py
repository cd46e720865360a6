"""Verdicts on isomorphism, disjointness and minimal self-joinings.

Every decision needs periodic tails; tail-less specs get DepthLimited. The
negative isomorphism answer and the positive disjointness answer rest on
merged-stage incompatibility certificates, which are checked directly, so
they stay sound even when canonicity could only be judged to finite depth.
"""

from __future__ import annotations

from .ergodic import EdTrace, ed_holds, totally_ergodic_up_to, verify_ed_trace
from .errors import (CertificateFailed, DegenerateSpec, DepthLimited, InvalidSpec,
                     NotCanonicalAtDepth)
from .generate import (canonical_analysis, cut_sequence, incompatibility_telescope,
                       ryzhikov_step, telescope)
from .params import (ParameterSpec, bounds, check_valid, commensurate, common_presentation,
                     eventually_commensurate, heights)
from .verdict import Answer, Verdict
from .words import hidden_occurrence, incompatible, only_two_occurrences

DEFAULT_DEPTH = 12
DEFAULT_WINDOW = 20
# canonical analysis runs on the deepest v_n of at most this many letters
CANON_LETTERS = 10_000

__all__ = [
    "Answer", "Verdict", "check_isomorphic", "check_isomorphic_general", "check_disjoint",
    "check_msj", "check_msj_ryzhikov", "decide_msj", "verify_verdict",
]


def _canon_depth(spec: ParameterSpec, depth: int) -> int:
    hs = heights(spec, depth)
    n = depth
    while n > 0 and hs[n] > CANON_LETTERS:
        n -= 1
    return n


def _reject_degenerate(spec: ParameterSpec, depth: int, name: str):
    n = _canon_depth(spec, depth)
    report = canonical_analysis(spec, n)
    if report.degenerate_flag:
        u = report.degenerate_witness
        raise DegenerateSpec(f"{name}: v_{n} is simply built from a word of length {len(u)}",
                             witness={"depth": n, "u": list(u)})
    return report


def _not_canonical(reports):
    for name, report in reports:
        if report.removable_stages:
            n = report.removable_stages[0]
            u, w = report.stage_witnesses[n]
            return NotCanonicalAtDepth(
                f"{name}: v_{n} is not canonical at depth {report.depth}",
                witness={"stage": n, "u": list(u), "w": list(w)})
    return None


def agree_from(a: ParameterSpec, b: ParameterSpec):
    """Least N with identical stages from N on, or None if the tails differ."""
    a2, b2 = common_presentation(a, b)
    end = len(a2.preamble) + len(a2.tail)
    if any(a2.stage(n) != b2.stage(n) for n in range(len(a2.preamble), end)):
        return None
    N = len(a2.preamble)
    while N > 0 and a2.stage(N - 1) == b2.stage(N - 1):
        N -= 1
    return N


def _telescope_witnesses(res, N: int, M: int) -> dict:
    return {
        "alignment": [N, M],
        "cuts": list(res.cuts),
        "repeat": list(res.repeat),
        "certificates": [
            {"k": c.k, "stages": [c.start, c.start + c.span - 1], "s": list(c.s), "t": list(c.t)}
            for c in res.certificates
        ],
        "bounds": {"R": res.R_before, "S": res.S_before,
                   "R_telescoped": res.R_after, "S_telescoped": res.S_after},
    }


def _certified_telescope(a, b, N, M, depth, names=("a", "b")):
    """Run the merging construction on the aligned pair; explain failures."""
    sa, sb = a.shifted(N), b.shifted(M)
    try:
        res = incompatibility_telescope(sa, sb, depth)
    except CertificateFailed:
        reports = [(nm, canonical_analysis(sp, _canon_depth(sp, depth)))
                   for nm, sp in zip(names, (sa, sb))]
        err = _not_canonical(reports)
        if err is not None:
            raise err from None
        raise
    if not res.bounds_ok:
        raise CertificateFailed("telescoped bounds exceed R^3 / S")
    if not any(c.k >= len(res.a.preamble) for c in res.certificates):
        raise CertificateFailed("no incompatible merged stage inside the periodic tail")
    return res


def _prepare_pair(a, b, depth):
    check_valid(a)
    check_valid(b)
    if not (a.has_tail and b.has_tail):
        return False
    _reject_degenerate(a, depth, "first spec")
    _reject_degenerate(b, depth, "second spec")
    return True


def _tailless(rule, a, b, depth):
    com = commensurate(a, b, depth)
    if com.answer is Answer.NO:
        note = f"stages {com.witnesses['stage']} are not commensurate; no alignment is decidable without tails"
    else:
        note = "specs without a periodic tail only determine a finite prefix"
    return Verdict(Answer.DEPTH_LIMITED, rule, {}, depth, note)


def check_isomorphic(a: ParameterSpec, b: ParameterSpec, depth: int = DEFAULT_DEPTH,
                     window: int = DEFAULT_WINDOW) -> Verdict:
    """Isomorphism of two commensurate, canonically bounded rank-one transformations.

    Yes when the stages eventually coincide (the words at that stage form a
    replacement scheme); No when they differ infinitely often and the merged
    stages carry incompatibility certificates. Non-commensurate pairs are
    handed to :func:`check_isomorphic_general`.
    """
    if not _prepare_pair(a, b, depth):
        return _tailless("Cor3.5-1", a, b, depth)
    if commensurate(a, b).answer is not Answer.YES:
        return check_isomorphic_general(a, b, depth, window)
    return _iso_aligned(a, b, 0, 0, depth, "Thm3.1")


def _iso_aligned(a, b, N, M, depth, no_rule):
    k = agree_from(a.shifted(N), b.shifted(M))
    if k is not None:
        return Verdict(Answer.YES, "Cor2.3", {"agree_from": [N + k, M + k]}, depth,
                       note="stages agree from here on, so these words form a replacement scheme")
    res = _certified_telescope(a, b, N, M, depth)
    return Verdict(Answer.NO, no_rule, _telescope_witnesses(res, N, M), depth)


def check_isomorphic_general(a: ParameterSpec, b: ParameterSpec, depth: int = DEFAULT_DEPTH,
                             window: int = DEFAULT_WINDOW) -> Verdict:
    """Like :func:`check_isomorphic` after searching for an eventual alignment."""
    if not _prepare_pair(a, b, depth):
        return _tailless("Thm5.1", a, b, depth)
    al = eventually_commensurate(a, b, window)
    if al is None:
        return Verdict(Answer.DEPTH_LIMITED, "Thm5.1", {"window": window}, depth,
                       note="no eventually commensurate alignment within the window; "
                            "this does not show that none exists")
    return _iso_aligned(a, b, al.N, al.M, depth, "Thm5.1" if (al.N, al.M) != (0, 0) else "Thm3.1")


def _ergodic_cover(a, b, D):
    """For each ``1 < d <= D`` a holding trace from either side, or a common failure."""
    cover = []
    for d in range(2, D + 1):
        ta = ed_holds(a, d)
        if ta.holds:
            cover.append({"d": d, "side": "a", "trace": ta.to_dict()})
            continue
        tb = ed_holds(b, d)
        if tb.holds:
            cover.append({"d": d, "side": "b", "trace": tb.to_dict()})
            continue
        return None, (d, ta, tb)
    return cover, None


def check_disjoint(a: ParameterSpec, b: ParameterSpec, depth: int = DEFAULT_DEPTH,
                   window: int = DEFAULT_WINDOW) -> Verdict:
    """Disjointness of two (eventually) commensurate, canonically bounded transformations.

    Yes needs differing stages infinitely often (with certificates) and, for
    every ``1 < d <= S``, ergodicity of ``T^d`` on at least one side. No
    comes from eventually equal stages (isomorphic) or from some ``d`` at
    which both powers fail to be ergodic (a common rotation factor).
    """
    if not _prepare_pair(a, b, depth):
        return _tailless("Cor3.5-2", a, b, depth)
    if commensurate(a, b).answer is Answer.YES:
        N = M = 0
    else:
        al = eventually_commensurate(a, b, window)
        if al is None:
            return Verdict(Answer.DEPTH_LIMITED, "Thm5.1", {"window": window}, depth,
                           note="no eventually commensurate alignment within the window")
        N, M = al.N, al.M
    k = agree_from(a.shifted(N), b.shifted(M))
    if k is not None:
        return Verdict(Answer.NO, "Cor3.5-2", {"agree_from": [N + k, M + k]}, depth,
                       note="isomorphic, hence not disjoint")
    S = max(bounds(a).S, bounds(b).S)
    cover, common = _ergodic_cover(a, b, S)
    if common is not None:
        d, ta, tb = common
        return Verdict(Answer.NO, "Thm3.2", {"d": d, "trace_a": ta.to_dict(), "trace_b": tb.to_dict()},
                       depth, note=f"neither T^{d} nor S^{d} is ergodic: common cyclic factor of order {d}")
    res = _certified_telescope(a, b, N, M, depth)
    w = _telescope_witnesses(res, N, M)
    w["ergodic"] = cover
    w["D"] = S
    return Verdict(Answer.YES, "Cor3.5-2′", w, depth)


def check_msj(spec: ParameterSpec, depth: int = DEFAULT_DEPTH) -> Verdict:
    """Sufficient conditions for minimal self-joinings of all orders.

    Bounded parameters, no hidden occurrence of any ``s_n`` in
    ``s_n + (c,) + s_n``, and ergodicity of ``T^d`` for ``1 < d <= S``.
    Failing conditions give NotApplicable, never No.
    """
    check_valid(spec)
    if spec.tail is None:
        return Verdict(Answer.DEPTH_LIMITED, "Thm4.1", {}, depth,
                       note="conditions quantify over all stages; spec has no periodic tail")
    bd = bounds(spec)
    failed = []
    wit = {"R": bd.R, "S": bd.S}
    stages = sorted({st.s for st in spec.all_stages()})
    for s in stages:
        hid = hidden_occurrence(s)
        if hid is not None:
            failed.append("c")
            wit["c"] = {"s": list(s), "position": hid[0], "middle": hid[1]}
            break
    traces = totally_ergodic_up_to(spec, bd.S)
    bad = next((t for t in traces if not t.holds), None)
    if bad is not None:
        failed.append("d′")
        wit["d′"] = bad.to_dict()
    if failed:
        wit["failed"] = failed
        return Verdict(Answer.NOT_APPLICABLE, "Thm4.1", wit, depth,
                       note="failing condition(s): " + ", ".join(failed))
    wit["stages"] = [list(s) for s in stages]
    wit["ergodic"] = [t.to_dict() for t in traces]
    return Verdict(Answer.YES, "Thm4.1-d′", wit, depth)


def check_msj_ryzhikov(spec: ParameterSpec, depth: int = DEFAULT_DEPTH) -> Verdict:
    """Minimal self-joinings iff non-rigid and totally ergodic (bounded case).

    No as soon as some ``T^d`` is not ergodic. Yes after merging stages
    (2 at a time, 3 when the middle spacer word is constant) so that every
    merged spacer word has only its two demonstrated occurrences, with
    ``T^d`` ergodic for ``1 < d <= S``. Anything short of that is DepthLimited.
    """
    check_valid(spec)
    if spec.tail is None:
        return Verdict(Answer.DEPTH_LIMITED, "Cor4.6", {}, depth,
                       note="spec has no periodic tail")
    bd = bounds(spec)
    traces = totally_ergodic_up_to(spec, bd.S)
    bad = next((t for t in traces if not t.holds), None)
    if bad is not None:
        return Verdict(Answer.NO, "Cor4.6", {"trace": bad.to_dict()}, depth,
                       note=f"T^{bad.d} is not ergodic, so T is not totally ergodic")
    cuts, repeat = cut_sequence(lambda n: ryzhikov_step(spec, n), len(spec.preamble),
                                len(spec.tail), 0)
    merged = telescope(spec, cuts, repeat)
    words = [st.s for st in merged.all_stages()]
    bad_stage = next((k for k, s in enumerate(words) if not only_two_occurrences(s)), None)
    if bad_stage is None:
        return Verdict(Answer.YES, "Cor4.6", {
            "cuts": list(cuts), "repeat": list(repeat), "S": bd.S,
            "stages": [list(s) for s in words],
            "ergodic": [t.to_dict() for t in traces],
        }, depth)
    n = _canon_depth(spec, depth)
    report = canonical_analysis(spec, n)
    wit = {"merged_stage": bad_stage, "s": list(words[bad_stage]), "canonical_depth": n}
    if report.degenerate_flag:
        wit["degenerate_u"] = list(report.degenerate_witness)
        note = f"v_{n} is simply built from a shorter word; the rank-one word may be degenerate"
    elif report.removable_stages:
        st = report.removable_stages[0]
        wit["removable_stage"] = st
        note = f"v_{st} is not canonical; canonical parameters are unknown"
    else:
        note = "merged spacer word has a hidden occurrence; canonicity not refuted at this depth"
    return Verdict(Answer.DEPTH_LIMITED, "Cor4.6", wit, n, note=note)


def decide_msj(spec: ParameterSpec, depth: int = DEFAULT_DEPTH) -> Verdict:
    """The sufficient conditions first, then the iff characterization."""
    first = check_msj(spec, depth)
    if first.answer is Answer.YES:
        return first
    second = check_msj_ryzhikov(spec, depth)
    if second.answer.definite:
        return second
    return first


# re-verification from witnesses alone

def _same_from(a, b, Na, Nb) -> bool:
    if heights(a, Na)[-1] != heights(b, Nb)[-1]:
        return False
    sa, sb = common_presentation(a.shifted(Na), b.shifted(Nb))
    return sa == sb


def _check_telescope_witness(a, b, w) -> bool:
    N, M = w["alignment"]
    if heights(a, N)[-1] != heights(b, M)[-1]:
        return False
    sa, sb = common_presentation(a.shifted(N), b.shifted(M))
    ta = telescope(sa, w["cuts"], w["repeat"] or None)
    tb = telescope(sb, w["cuts"], w["repeat"] or None)
    if ta.tail is None or tb.tail is None:
        return False
    if len(ta.all_stages()) != len(tb.all_stages()):
        ta, tb = common_presentation(ta, tb)
    if commensurate(ta, tb).answer is not Answer.YES:
        return False
    stages_a, stages_b = ta.all_stages(), tb.all_stages()
    in_tail = False
    for cert in w["certificates"]:
        k = cert["k"]
        if k >= len(stages_a):
            return False
        s, t = tuple(cert["s"]), tuple(cert["t"])
        if stages_a[k].s != s or stages_b[k].s != t or not incompatible(s, t):
            return False
        in_tail = in_tail or k >= len(ta.preamble)
    R = max(bounds(a).R, bounds(b).R)
    S = max(bounds(a).S, bounds(b).S)
    return in_tail and max(bounds(ta).R, bounds(tb).R) <= R ** 3 and \
        max(bounds(ta).S, bounds(tb).S) <= S


def _check_traces(sides, entries, D) -> bool:
    ds = sorted(e["d"] for e in entries)
    if ds != list(range(2, D + 1)):
        return False
    for e in entries:
        trace = EdTrace.from_dict(e["trace"])
        if trace.d != e["d"] or not trace.holds or not verify_ed_trace(sides[e["side"]], trace):
            return False
    return True


def verify_verdict(verdict: Verdict, a: ParameterSpec, b: ParameterSpec | None = None) -> bool:
    """Re-check a definite verdict's witnesses with word and modular primitives only.

    Non-definite verdicts carry no claim and are accepted as they are.
    """
    try:
        check_valid(a)
        if b is not None:
            check_valid(b)
        return _verify(verdict, a, b)
    except (KeyError, TypeError, ValueError, IndexError, DepthLimited, InvalidSpec):
        return False


def _verify(v: Verdict, a, b) -> bool:
    w = v.witnesses
    if not v.answer.definite:
        return True
    if v.rule in ("Cor2.3", "Cor3.5-2") and "agree_from" in w:
        expected = Answer.YES if v.rule == "Cor2.3" else Answer.NO
        return v.answer is expected and _same_from(a, b, *w["agree_from"])
    if v.rule in ("Thm3.1", "Thm5.1") and v.answer is Answer.NO:
        return _check_telescope_witness(a, b, w)
    if v.rule == "Cor3.5-2′" and v.answer is Answer.YES:
        S = max(bounds(a).S, bounds(b).S)
        return (w["D"] == S and _check_telescope_witness(a, b, w)
                and _check_traces({"a": a, "b": b}, w["ergodic"], S))
    if v.rule == "Thm3.2" and v.answer is Answer.NO:
        ta, tb = EdTrace.from_dict(w["trace_a"]), EdTrace.from_dict(w["trace_b"])
        return (ta.d == tb.d == w["d"] and not ta.holds and not tb.holds
                and verify_ed_trace(a, ta) and verify_ed_trace(b, tb))
    if v.rule == "Thm4.1-d′" and v.answer is Answer.YES:
        if a.tail is None:
            return False
        stages = {tuple(s) for s in w["stages"]}
        if stages != {st.s for st in a.all_stages()}:
            return False
        if not all(only_two_occurrences(s) for s in stages):
            return False
        S = bounds(a).S
        entries = [{"d": t["d"], "side": "a", "trace": t} for t in w["ergodic"]]
        return _check_traces({"a": a}, entries, S)
    if v.rule == "Cor4.6" and v.answer is Answer.YES:
        merged = telescope(a, w["cuts"], w["repeat"] or None)
        if merged.tail is None:
            return False
        words = [st.s for st in merged.all_stages()]
        if words != [tuple(s) for s in w["stages"]]:
            return False
        if not all(only_two_occurrences(s) for s in words):
            return False
        entries = [{"d": t["d"], "side": "a", "trace": t} for t in w["ergodic"]]
        return _check_traces({"a": a}, entries, bounds(a).S)
    if v.rule == "Cor4.6" and v.answer is Answer.NO:
        trace = EdTrace.from_dict(w["trace"])
        return not trace.holds and verify_ed_trace(a, trace)
    return False
