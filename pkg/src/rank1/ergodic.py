"""The (E_d) criterion: ``T^d`` is ergodic iff for every N some spacer value at a
stage ``n >= N`` satisfies ``h_N + s_n(i) != 0 (mod d)``.

Only specs with a periodic tail are decided. The residues ``h_N mod d`` are
eventually periodic in the pair ``(h_N mod d, tail phase)``, so checking the
preperiod plus one cycle covers every N.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import DepthLimited
from .params import ParameterSpec, heights


@dataclass(frozen=True)
class EdTrace:
    """Outcome of (E_d) with its evidence.

    ``witnesses`` maps each checked N to ``(n, i, value)`` with ``n >= N`` and
    ``h_N + value != 0 mod d``. When (E_d) fails, ``failing_N`` is an index at
    which every spacer value from stage ``failing_N`` on is ``-h_N mod d``.
    The checked Ns are ``0 .. cycle_end - 1``; the state at ``cycle_end``
    repeats the one at ``cycle_start``.
    """

    d: int
    holds: bool
    failing_N: int | None
    witnesses: dict = field(default_factory=dict)
    cycle_start: int = 0
    cycle_end: int = 0
    residues: tuple = ()

    def to_dict(self) -> dict:
        return {
            "d": self.d,
            "holds": self.holds,
            "failing_N": self.failing_N,
            "witnesses": {str(k): list(v) for k, v in sorted(self.witnesses.items())},
            "cycle": [self.cycle_start, self.cycle_end],
            "residues": list(self.residues),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EdTrace":
        return cls(
            d=int(data["d"]),
            holds=bool(data["holds"]),
            failing_N=data["failing_N"],
            witnesses={int(k): tuple(v) for k, v in data["witnesses"].items()},
            cycle_start=int(data["cycle"][0]),
            cycle_end=int(data["cycle"][1]),
            residues=tuple(data["residues"]),
        )


def _values_from(spec: ParameterSpec, N: int):
    """Yield ``(n, i, value)`` for the first stage of every distinct occurrence from N on."""
    P, L = len(spec.preamble), len(spec.tail)
    for n in range(N, max(N, P) + L):
        for i, x in enumerate(spec.stage(n).s, 1):
            yield n, i, x


def ed_holds(spec: ParameterSpec, d: int) -> EdTrace:
    if d <= 1:
        raise ValueError(f"(E_d) needs d > 1, got {d}")
    if spec.tail is None:
        raise DepthLimited("(E_d) quantifies over all stages; spec has no periodic tail")
    P, L = len(spec.preamble), len(spec.tail)
    residues = [1 % d]
    seen = {}
    N = 0
    while True:
        if N >= P:
            state = (residues[N], (N - P) % L)
            if state in seen:
                cycle_start, cycle_end = seen[state], N
                break
            seen[state] = N
        st = spec.stage(N)
        residues.append((st.r * residues[N] + st.total) % d)
        N += 1
    witnesses = {}
    for N in range(cycle_end):
        hit = next(((n, i, x) for n, i, x in _values_from(spec, N) if (residues[N] + x) % d),
                   None)
        if hit is None:
            return EdTrace(d, False, N, witnesses, cycle_start, cycle_end,
                           tuple(residues[:cycle_end + 1]))
        witnesses[N] = hit
    return EdTrace(d, True, None, witnesses, cycle_start, cycle_end,
                   tuple(residues[:cycle_end + 1]))


def totally_ergodic_up_to(spec: ParameterSpec, D: int) -> list[EdTrace]:
    """Traces for ``d = 2 .. D`` (empty, hence vacuously true, when ``D < 2``)."""
    return [ed_holds(spec, d) for d in range(2, D + 1)]


def all_hold(traces) -> bool:
    return all(t.holds for t in traces)


def verify_ed_trace(spec: ParameterSpec, trace: EdTrace) -> bool:
    """Re-check a trace from exact heights, independently of :func:`ed_holds`."""
    d = trace.d
    if d <= 1 or spec.tail is None:
        return False
    P, L = len(spec.preamble), len(spec.tail)
    if trace.holds:
        end = trace.cycle_end
        if not (P <= trace.cycle_start < end):
            return False
        hs = heights(spec, end)
        if (hs[trace.cycle_start] - hs[end]) % d:
            return False
        if (trace.cycle_start - end) % L:
            return False
        for N in range(end):
            if N not in trace.witnesses:
                return False
            n, i, value = trace.witnesses[N]
            if n < N or not 1 <= i <= len(spec.stage(n).s):
                return False
            if spec.stage(n).s[i - 1] != value or (hs[N] + value) % d == 0:
                return False
        return True
    N = trace.failing_N
    if N is None or N < 0:
        return False
    h = heights(spec, N)[-1]
    for n in range(N, max(N, P) + L):
        if any((h + x) % d for x in spec.stage(n).s):
            return False
    return True
