"""Generating sequences, telescoping, and canonical-sequence analysis."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import CapExceeded, CertificateFailed, DepthLimited
from .params import ParameterSpec, Stage, bounds, common_presentation, heights
from .words import (_decompose, compose_stage, compatibility_witness, in_F, incompatible,
                    is_constant)

DEFAULT_CAP = 10 ** 7


@dataclass(frozen=True)
class GeneratingSequence:
    spec: ParameterSpec
    words: tuple
    heights: tuple

    @property
    def depth(self) -> int:
        return len(self.words) - 1


def next_word(v: tuple, st: Stage) -> tuple:
    out = list(v)
    for a in st.s:
        out.extend([1] * a)
        out.extend(v)
    return tuple(out)


def expand(spec: ParameterSpec, N: int, cap: int = DEFAULT_CAP) -> GeneratingSequence:
    """``v_0 .. v_N``; refuses to build a word longer than ``cap`` letters."""
    hs = heights(spec, N)
    if hs[-1] > cap:
        raise CapExceeded(f"lh(v_{N}) = {hs[-1]} exceeds the cap of {cap} letters")
    words = [(0,)]
    for n in range(N):
        words.append(next_word(words[-1], spec.stage(n)))
        assert len(words[-1]) == hs[n + 1]
    return GeneratingSequence(spec, tuple(words), tuple(hs))


def merge_stages(stages) -> Stage:
    """One stage equivalent to applying ``stages`` in order (finest first)."""
    stages = list(stages)
    r = math.prod(st.r for st in stages)
    s = stages[0].s
    for st in stages[1:]:
        s = compose_stage(st.s, s)
    return Stage(r, s)


def telescope(spec: ParameterSpec, cut_points, repeat=None) -> ParameterSpec:
    """Keep only the words ``v_{n_0}, v_{n_1}, ...`` of the generating sequence.

    ``cut_points`` is an explicit strictly increasing list starting at 0. If
    ``repeat`` (a list of positive steps) is given, cuts continue forever
    after the last explicit one, cycling through those steps; a periodic
    spec then telescopes to a periodic spec. Without ``repeat`` the result
    is the tail-less spec with ``len(cut_points) - 1`` merged stages.
    """
    cuts = [int(c) for c in cut_points]
    if not cuts or cuts[0] != 0:
        raise ValueError("cut points must start at 0")
    if any(b <= a for a, b in zip(cuts, cuts[1:])):
        raise ValueError("cut points must be strictly increasing")
    merged = [merge_stages(spec.stage(n) for n in range(a, b)) for a, b in zip(cuts, cuts[1:])]
    if not repeat:
        return ParameterSpec(tuple(merged), None)
    steps = [int(x) for x in repeat]
    if any(x <= 0 for x in steps):
        raise ValueError("repeat steps must be positive")
    if spec.tail is None:
        raise DepthLimited("a repeating cut pattern needs a periodic tail")
    P, L = len(spec.preamble), len(spec.tail)
    pos, j = cuts[-1], 0
    seen = {}
    while True:
        if pos >= P:
            state = ((pos - P) % L, j)
            if state in seen:
                start = seen[state]
                return ParameterSpec(tuple(merged[:start]), tuple(merged[start:]))
            seen[state] = len(merged)
        step = steps[j]
        merged.append(merge_stages(spec.stage(n) for n in range(pos, pos + step)))
        pos += step
        j = (j + 1) % len(steps)


def _failure(v: tuple) -> list[int]:
    """KMP failure function: ``fail[i]`` is the longest proper border of ``v[:i+1]``."""
    n = len(v)
    fail = [0] * n
    k = 0
    for i in range(1, n):
        while k and v[i] != v[k]:
            k = fail[k - 1]
        if v[i] == v[k]:
            k += 1
        fail[i] = k
    return fail


def _borders(fail, length: int):
    b = fail[length - 1] if length else 0
    while b:
        yield b
        b = fail[b - 1]


def built_into(v) -> list[tuple]:
    """Every ``u`` in F with ``u ≺ v``, shortest first.

    Such ``u`` is both a prefix and a suffix of ``v``, so only the borders
    of ``v`` (read off the KMP failure function) are tried.
    """
    v = tuple(v)
    if not in_F(v):
        raise ValueError("built_into expects a word in F")
    return _built_into(v, _failure(v))


def _built_into(v, fail):
    n = len(v)
    return [v[:b] for b in sorted(_borders(fail, n)) if 2 * b <= n and _decompose(v, v[:b]) is not None]


def _simple_bases(v, fail, length: int):
    """Lengths of every ``u`` with ``u ≺_s v[:length]``.

    ``w = (u 1^a)^k u`` has period ``p = lh(u) + a`` and ``lh(w) + a`` is a
    multiple of ``p``; the periods of a prefix of ``v`` come from its borders.
    """
    w = v[:length]
    out = []
    for b in _borders(fail, length):
        p = length - b
        head = w[:p]
        a = 0
        while a < p and head[p - 1 - a] == 1:
            a += 1
        ulen = p - a
        # a period p makes w = (w[:p])^(k-1) w[:p-a] exactly, which is the simple parse
        if ulen and (length + a) % p == 0 and (length + a) // p >= 2:
            out.append(ulen)
    return sorted(set(out))


def _persistent_simple_base(gen: GeneratingSequence, top_bases):
    """A ``u`` shorter than ``v_{N-1}`` that both ``v_{N-1}`` and ``v_N`` are simply built from, same gap.

    A single constant-gap stage (any ``r = 2`` stage, say) makes ``v_N`` simply
    built from ``v_{N-1}``; only a base that persists across levels points at
    ``V = (u 1^a)^∞``.
    """
    if gen.depth < 1:
        return None
    top, prev = gen.words[-1], gen.words[-2]
    for lu in top_bases:
        if lu >= len(prev):
            break
        u = top[:lu]
        d_top, d_prev = _decompose(top, u), _decompose(prev, u)
        if d_top and d_prev and d_prev.simple and d_prev.gaps[0] == d_top.gaps[0]:
            return u
    return None


@dataclass(frozen=True)
class CanonicalReport:
    """Canonical-sequence analysis of ``v_depth``.

    ``non_canonical`` maps each flagged member (as a word) to a witness
    ``(u, w)`` with ``u ≺ v ≺ w`` and ``u ≺_s w``. Flags are final; the
    absence of a flag only holds at this depth.
    """

    depth: int
    built_into: tuple
    canonical_members: tuple
    non_canonical: dict
    removable_stages: tuple
    stage_witnesses: dict
    degenerate_flag: bool
    degenerate_witness: tuple | None = None
    notes: tuple = field(default=())


def canonical_analysis(spec: ParameterSpec, N: int, cap: int = DEFAULT_CAP) -> CanonicalReport:
    """Flag members of ``{u : u ≺ v_N}`` that cannot be on the canonical sequence."""
    gen = expand(spec, N, cap)
    top = gen.words[-1]
    fail = _failure(top)
    members = _built_into(top, fail)
    lengths = [len(u) for u in members] + [len(top)]
    bases = {L: _simple_bases(top, fail, L) for L in lengths}

    memo = {}

    def rel(i: int, j: int) -> bool:
        # prefix of length i is built into prefix of length j; all members are prefixes of top
        if (i, j) not in memo:
            memo[(i, j)] = j == len(top) or _decompose(top[:j], top[:i]) is not None
        return memo[(i, j)]

    non_canonical = {}
    for v in members:
        lv = len(v)
        found = None
        for lw in reversed(lengths):
            if lw <= lv:
                break
            us = [lu for lu in bases[lw] if lu < lv]
            if not us or not rel(lv, lw):
                continue
            for lu in us:
                if rel(lu, lv):
                    found = (top[:lu], top[:lw])
                    break
            if found:
                break
        if found:
            non_canonical[v] = found
    removable = []
    stage_witnesses = {}
    for n, v in enumerate(gen.words[:-1]):
        if v in non_canonical:
            removable.append(n)
            stage_witnesses[n] = non_canonical[v]
    deg = _persistent_simple_base(gen, bases[len(top)])
    canonical = tuple(w for w in members if w not in non_canonical)
    return CanonicalReport(
        depth=N,
        built_into=tuple(members),
        canonical_members=canonical,
        non_canonical=non_canonical,
        removable_stages=tuple(removable),
        stage_witnesses=stage_witnesses,
        degenerate_flag=deg is not None,
        degenerate_witness=deg,
        notes=(f"canonicity judged against v_{N}; unflagged members may still be refuted deeper",),
    )


@dataclass(frozen=True)
class IncompatibilityCertificate:
    k: int
    start: int
    span: int
    s: tuple
    t: tuple


@dataclass(frozen=True)
class TelescopeResult:
    a: ParameterSpec
    b: ParameterSpec
    cuts: tuple
    repeat: tuple
    certificates: tuple
    R_before: int
    S_before: int
    R_after: int
    S_after: int
    certified_all: bool

    @property
    def bounds_ok(self) -> bool:
        return self.R_after <= self.R_before ** 3 and self.S_after <= self.S_before


def _next_cut(a: ParameterSpec, b: ParameterSpec, n: int) -> int:
    if a.stage(n).s == b.stage(n).s:
        return n + 1
    if not is_constant(a.stage(n + 1).s):
        return n + 2
    return n + 3


def ryzhikov_step(spec: ParameterSpec, n: int) -> int:
    """Next cut for the single-spec construction: merge 2 stages, or 3 if the middle spacer is constant."""
    return n + 2 if not is_constant(spec.stage(n + 1).s) else n + 3


def cut_sequence(step, P: int, L: int | None, limit: int):
    """Run ``n_{k+1} = step(n_k)`` from 0.

    With a period ``L`` the run stops when ``(n_k - P) mod L`` repeats and
    returns ``(explicit_cuts, repeat_steps)``; otherwise it stops past
    ``limit`` and returns ``(cuts, None)``.
    """
    cuts = [0]
    seen = {}
    while True:
        n = cuts[-1]
        if L is not None and n >= P:
            phase = (n - P) % L
            if phase in seen:
                k0 = seen[phase]
                repeat = [b - a for a, b in zip(cuts[k0:], cuts[k0 + 1:])]
                return cuts[:k0 + 1], repeat
            seen[phase] = len(cuts) - 1
        if L is None and n + 3 > limit:
            return cuts, None
        cuts.append(step(n))


def incompatibility_telescope(a: ParameterSpec, b: ParameterSpec, N: int = 12) -> TelescopeResult:
    """Merge stages of a commensurate pair until differing stages become incompatible.

    ``n_0 = 0``; ``n_{k+1} = n_k + 1`` when the stages agree, else ``n_k + 2``
    when ``s_{n_k+1}`` is not constant and ``n_k + 3`` otherwise. Every merged
    stage whose two spacer words differ gets a certificate that they are
    incompatible; a failing one raises :class:`CertificateFailed`.
    """
    periodic = a.has_tail and b.has_tail
    if periodic:
        a, b = common_presentation(a, b)
        cuts, repeat = cut_sequence(lambda n: _next_cut(a, b, n), len(a.preamble), len(a.tail), 0)
    else:
        limit = int(min(a.reach, b.reach, N))
        cuts, repeat = cut_sequence(lambda n: _next_cut(a, b, n), 0, None, limit)
    ta = telescope(a, cuts, repeat)
    tb = telescope(b, cuts, repeat)
    positions = list(cuts)
    if repeat:
        j = 0
        while len(positions) < len(ta.all_stages()) + 1:
            positions.append(positions[-1] + repeat[j % len(repeat)])
            j += 1
    certs = []
    for k, (sa, sb) in enumerate(zip(ta.all_stages(), tb.all_stages())):
        if sa.r != sb.r or sa.total != sb.total:
            raise CertificateFailed(f"merged stage {k} is not commensurate")
        if sa.s == sb.s:
            continue
        if not incompatible(sa.s, sb.s):
            wit = compatibility_witness(sa.s, sb.s)
            raise CertificateFailed(
                f"merged stage {k} (stages {positions[k]}..{positions[k + 1] - 1}) is compatible: "
                f"t' occurs in s'+({wit[1]})+s' at position {wit[0]}")
        certs.append(IncompatibilityCertificate(k, positions[k], positions[k + 1] - positions[k],
                                                sa.s, sb.s))
    before = bounds(a), bounds(b)
    after = bounds(ta), bounds(tb)
    return TelescopeResult(
        a=ta, b=tb, cuts=tuple(cuts), repeat=tuple(repeat or ()),
        certificates=tuple(certs),
        R_before=max(x.R for x in before), S_before=max(x.S for x in before),
        R_after=max(x.R for x in after), S_after=max(x.S for x in after),
        certified_all=periodic,
    )
