"""Cutting and spacer parameters, finitely presented.

A :class:`ParameterSpec` is an explicit preamble of stages followed by an
optional tail repeated forever. Specs without a tail only determine a
finite prefix of the parameter sequence; anything asked beyond it raises
:class:`~rank1.errors.DepthLimited` or yields a DepthLimited verdict.

Text format::

    # Chacon
    preamble:
    stage r=3 s=1,0
    period:
    stage r=3 s=0,1
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import DepthLimited, InvalidSpec
from .verdict import Answer, Verdict


@dataclass(frozen=True)
class Stage:
    r: int
    s: tuple

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(int(x) for x in self.s))

    @property
    def total(self) -> int:
        """Number of spacers inserted at this stage."""
        return sum(self.s)

    def problems(self) -> list[str]:
        out = []
        if self.r < 2:
            out.append(f"r={self.r} < 2")
        if len(self.s) != self.r - 1:
            out.append(f"lh(s)={len(self.s)} != r-1={self.r - 1}")
        if any(x < 0 for x in self.s):
            out.append("negative spacer value")
        return out


def stage(r, *s) -> Stage:
    return Stage(r, tuple(s))


@dataclass(frozen=True)
class ParameterSpec:
    preamble: tuple = ()
    tail: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "preamble", tuple(self.preamble))
        if self.tail is not None:
            tail = tuple(self.tail)
            if not tail:
                raise InvalidSpec("periodic tail must be nonempty")
            object.__setattr__(self, "tail", tail)

    @classmethod
    def periodic(cls, *tail, preamble=()) -> "ParameterSpec":
        return cls(tuple(preamble), tuple(tail))

    @property
    def has_tail(self) -> bool:
        return self.tail is not None

    @property
    def reach(self) -> float:
        """Number of stages determined by the spec (``inf`` with a tail)."""
        return math.inf if self.has_tail else len(self.preamble)

    def stage(self, n: int) -> Stage:
        if n < len(self.preamble):
            return self.preamble[n]
        if self.tail is None:
            raise DepthLimited(f"stage {n} is beyond a tail-less spec of {len(self.preamble)} stages")
        return self.tail[(n - len(self.preamble)) % len(self.tail)]

    def stages(self, count: int) -> list[Stage]:
        return [self.stage(n) for n in range(count)]

    def all_stages(self) -> tuple:
        """Every stage that occurs at least once: preamble then one period."""
        return self.preamble + (self.tail or ())

    def unrolled(self, preamble_len: int, period: int) -> "ParameterSpec":
        """An equivalent presentation with the given preamble length and period.

        ``period`` must be a multiple of the tail length and ``preamble_len``
        at least the current preamble length.
        """
        if self.tail is None:
            raise DepthLimited("cannot unroll a spec without a periodic tail")
        if preamble_len < len(self.preamble) or period % len(self.tail):
            raise ValueError("can only lengthen the preamble and multiply the period")
        pre = self.stages(preamble_len)
        tail = [self.stage(preamble_len + i) for i in range(period)]
        return ParameterSpec(tuple(pre), tuple(tail))

    def shifted(self, k: int) -> "ParameterSpec":
        """The stage sequence ``stage(k), stage(k+1), ...``."""
        if self.tail is None:
            if k > len(self.preamble):
                raise DepthLimited(f"cannot shift a {len(self.preamble)}-stage spec by {k}")
            return ParameterSpec(self.preamble[k:], None)
        if k <= len(self.preamble):
            return ParameterSpec(self.preamble[k:], self.tail)
        phase = (k - len(self.preamble)) % len(self.tail)
        return ParameterSpec((), self.tail[phase:] + self.tail[:phase])

    def normalized(self) -> "ParameterSpec":
        """Shortest equivalent presentation (minimal period, then minimal preamble)."""
        if self.tail is None:
            return self
        tail = self.tail
        for p in range(1, len(tail) + 1):
            if len(tail) % p == 0 and tail == tail[:p] * (len(tail) // p):
                tail = tail[:p]
                break
        pre = list(self.preamble)
        while pre and pre[-1] == tail[-1]:
            pre.pop()
            tail = (tail[-1],) + tail[:-1]
        return ParameterSpec(tuple(pre), tail)


def common_presentation(a: ParameterSpec, b: ParameterSpec):
    """Unroll two periodic specs to the same preamble length and period."""
    P = max(len(a.preamble), len(b.preamble))
    L = math.lcm(len(a.tail), len(b.tail))
    return a.unrolled(P, L), b.unrolled(P, L)


# text format

_STAGE_RE = re.compile(r"^stage\s+r=(\d+)\s+s=(\d+(?:\s*,\s*\d+)*)\s*$")


def parse_spec(text: str, source: str = "<spec>") -> ParameterSpec:
    """Parse the line-oriented spec format; errors carry ``source:line:col``."""
    preamble, period = [], []
    section = None
    seen_period = False
    problems = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        col = len(raw) - len(raw.lstrip()) + 1
        if line in ("preamble:", "period:"):
            if line == "period:":
                seen_period = True
            section = line[:-1]
            continue
        m = _STAGE_RE.match(line)
        if not m:
            problems.append(f"{source}:{lineno}:{col}: syntax error: {line!r}")
            continue
        if section is None:
            problems.append(f"{source}:{lineno}:{col}: stage outside a 'preamble:' or 'period:' section")
            continue
        st = Stage(int(m.group(1)), tuple(int(x) for x in m.group(2).split(",")))
        for p in st.problems():
            problems.append(f"{source}:{lineno}:{col}: {p}")
        (preamble if section == "preamble" else period).append(st)
    if not problems and not preamble and not period:
        problems.append(f"{source}: no stages")
    if not problems and seen_period and not period:
        problems.append(f"{source}: 'period:' section is empty")
    if problems:
        raise InvalidSpec(problems)
    return ParameterSpec(tuple(preamble), tuple(period) if period else None)


def format_spec(spec: ParameterSpec) -> str:
    def line(st):
        return f"stage r={st.r} s={','.join(str(x) for x in st.s)}"

    out = []
    if spec.preamble:
        out.append("preamble:")
        out.extend(line(st) for st in spec.preamble)
    if spec.tail:
        out.append("period:")
        out.extend(line(st) for st in spec.tail)
    return "\n".join(out) + "\n"


# operations

def validate(spec: ParameterSpec) -> list[str]:
    """Per-stage problems; an empty list means the spec is valid."""
    out = []
    for i, st in enumerate(spec.preamble):
        out.extend(f"preamble stage {i}: {p}" for p in st.problems())
    for i, st in enumerate(spec.tail or ()):
        out.extend(f"period stage {i}: {p}" for p in st.problems())
    return out


def check_valid(spec: ParameterSpec) -> ParameterSpec:
    problems = validate(spec)
    if problems:
        raise InvalidSpec(problems)
    return spec


def heights(spec: ParameterSpec, N: int) -> list[int]:
    """``[h_0, ..., h_N]`` with ``h_0 = 1`` and ``h_{n+1} = r_n h_n + sum(s_n)``."""
    if N > spec.reach:
        raise DepthLimited(f"h_{N} needs {N} stages, spec has {len(spec.preamble)}")
    hs = [1]
    for n in range(N):
        st = spec.stage(n)
        hs.append(st.r * hs[-1] + st.total)
    return hs


@dataclass(frozen=True)
class FiniteMeasureReport:
    holds: bool
    terms: tuple
    partial_sums: tuple
    reason: str


def finite_measure_check(spec: ParameterSpec, N: int) -> FiniteMeasureReport:
    """Summability of ``(h_{n+1} - r_n h_n) / h_{n+1}``, with exact terms up to depth N.

    With a periodic tail the parameters are bounded, ``h_n >= 2**n`` and each
    term is at most ``S (R-1) / 2**(n+1)``, so the series converges.
    """
    if spec.tail is None:
        raise DepthLimited("summability of a tail-less spec is undetermined")
    hs = heights(spec, N)
    terms = []
    for n in range(N):
        st = spec.stage(n)
        terms.append(Fraction(hs[n + 1] - st.r * hs[n], hs[n + 1]))
    sums = []
    acc = Fraction(0)
    for t in terms:
        acc += t
        sums.append(acc)
    R, S = bounds(spec).R, bounds(spec).S
    reason = (f"r_n <= {R} and s_n(i) <= {S} for all n; h_n >= 2^n, so each term is "
              f"<= {S * (R - 1)}/2^(n+1) and the series converges")
    return FiniteMeasureReport(True, tuple(terms), tuple(sums), reason)


@dataclass(frozen=True)
class Bounds:
    R: int
    S: int
    certified: bool


def bounds(spec: ParameterSpec) -> Bounds:
    """Max cutting value and max spacer value; ``certified`` only with a tail."""
    stages = spec.all_stages()
    if not stages:
        raise DepthLimited("spec has no stages")
    R = max(st.r for st in stages)
    S = max(max(st.s) for st in stages)
    return Bounds(R, S, spec.has_tail)


def _stage_commensurate(x: Stage, y: Stage) -> bool:
    return x.r == y.r and x.total == y.total


def commensurate(a: ParameterSpec, b: ParameterSpec, N: int = 12) -> Verdict:
    """Stagewise equal cutting values and equal spacer sums.

    Two periodic specs are decided exactly over one aligned common period.
    Otherwise only stages below ``N`` and within reach are compared.
    """
    if a.has_tail and b.has_tail:
        a2, b2 = common_presentation(a, b)
        span = len(a2.preamble) + len(a2.tail)
        for n in range(span):
            if not _stage_commensurate(a2.stage(n), b2.stage(n)):
                return Verdict(Answer.NO, "commensurate", {"stage": n}, span)
        return Verdict(Answer.YES, "commensurate", {"checked_through": span - 1}, span)
    limit = int(min(a.reach, b.reach, N))
    for n in range(limit):
        if not _stage_commensurate(a.stage(n), b.stage(n)):
            return Verdict(Answer.NO, "commensurate", {"stage": n}, limit)
    return Verdict(Answer.DEPTH_LIMITED, "commensurate", {"checked_through": limit - 1}, limit,
                   note="agree on every stage within reach")


def _aligned_span(a: ParameterSpec, b: ParameterSpec, N: int, M: int) -> int:
    """How many aligned stages ``(N+n, M+n)`` cover every pair that can occur."""
    pre = max(len(a.preamble) - N, len(b.preamble) - M, 0)
    return pre + math.lcm(len(a.tail), len(b.tail))


@dataclass(frozen=True)
class Alignment:
    N: int
    M: int
    certified: bool
    checked: int


def eventually_commensurate(a: ParameterSpec, b: ParameterSpec, search_window: int = 20):
    """Least ``(N, M)`` (lexicographic, both ``<= search_window``) with equal
    heights ``h^a_N == h^b_M`` and commensurate stages from there on.

    Returns an :class:`Alignment` or None when nothing is found in the window;
    None is not a proof that no alignment exists. Alignments between two
    periodic specs are certified for all later stages, others only within reach.
    """
    periodic = a.has_tail and b.has_tail
    ha = heights(a, int(min(search_window, a.reach)))
    hb = heights(b, int(min(search_window, b.reach)))
    where_b = {}
    for M, h in enumerate(hb):
        where_b.setdefault(h, []).append(M)
    for N, h in enumerate(ha):
        for M in where_b.get(h, ()):
            if periodic:
                span = _aligned_span(a, b, N, M)
            else:
                span = int(min(a.reach - N, b.reach - M))
            if all(_stage_commensurate(a.stage(N + n), b.stage(M + n)) for n in range(span)):
                return Alignment(N, M, periodic, span)
    return None
