"""Finite words over the naturals.

Words are plain tuples of non-negative ints. Positions are 1-indexed
throughout, so ``occurrences((0, 0, 1, 0), (0,))`` is ``[1, 2, 4]``.

Binary words that start and end with 0 (the set F) are the building blocks
of generating sequences; spacer words are arbitrary tuples of naturals.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

Word = tuple


def word(letters) -> Word:
    """Coerce ``letters`` (a sequence of ints or a digit string like "0010") to a word."""
    if isinstance(letters, str):
        letters = letters.replace(",", "").replace(" ", "")
        return tuple(int(ch) for ch in letters)
    out = tuple(int(x) for x in letters)
    if any(x < 0 for x in out):
        raise ValueError(f"letters must be natural numbers: {out}")
    return out


def show(w: Sequence[int]) -> str:
    """Render a word compactly: digits run together if every letter is a single digit."""
    if all(0 <= x <= 9 for x in w):
        return "".join(str(x) for x in w)
    return ",".join(str(x) for x in w)


def in_F(w: Sequence[int]) -> bool:
    """True iff ``w`` is a binary word starting and ending with 0."""
    return len(w) >= 1 and w[0] == 0 and w[-1] == 0 and set(w) <= {0, 1}


def is_constant(s: Sequence[int]) -> bool:
    """True iff all letters of ``s`` are equal. The empty word counts as constant."""
    return len(set(s)) <= 1


def occurrences(host: Sequence[int], pattern: Sequence[int]) -> list[int]:
    """Ascending 1-indexed positions ``k`` with ``host[k..k+len(pattern)-1] == pattern``."""
    if len(pattern) == 0:
        raise ValueError("occurrences of the empty word are undefined")
    host, pattern = tuple(host), tuple(pattern)
    m = len(pattern)
    first = pattern[0]
    out = []
    for k in range(len(host) - m + 1):
        if host[k] == first and host[k:k + m] == pattern:
            out.append(k + 1)
    return out


def _hidden_matches(s: Word, t: Word):
    """Yield ``(j, c)`` for every occurrence of ``t`` in ``s + (c,) + s`` at a
    position 2..L+1, i.e. one that covers the middle letter.

    Such an occurrence pins ``c`` to ``t[L+1-j]`` (0-indexed), so only L
    candidate values of ``c`` ever need checking.
    """
    L = len(s)
    for j in range(2, L + 2):
        c = t[L + 1 - j]
        host = s + (c,) + s
        if host[j - 1:j - 1 + L] == t:
            yield j, c


def incompatible(s: Sequence[int], t: Sequence[int]) -> bool:
    """``s ⊥ t``: ``t`` is a subword of no ``s + (c,) + s`` with ``c`` natural."""
    s, t = tuple(s), tuple(t)
    if len(s) != len(t):
        raise ValueError(f"incompatibility needs equal lengths, got {len(s)} and {len(t)}")
    if len(s) == 0:
        raise ValueError("incompatibility is defined for nonempty words")
    if s == t:
        return False
    return next(_hidden_matches(s, t), None) is None


def compatibility_witness(s: Sequence[int], t: Sequence[int]):
    """A ``(position, c)`` pair showing ``t`` occurs in ``s + (c,) + s``, or None."""
    s, t = tuple(s), tuple(t)
    if len(s) != len(t) or not s:
        raise ValueError("compatibility needs equal nonzero lengths")
    if s == t:
        return (1, 0)
    return next(_hidden_matches(s, t), None)


def only_two_occurrences(s: Sequence[int]) -> bool:
    """True iff for every ``c`` the word ``s`` occurs in ``s + (c,) + s`` only at
    positions 1 and ``len(s) + 2``."""
    s = tuple(s)
    if not s:
        raise ValueError("only_two_occurrences needs a nonempty word")
    return next(_hidden_matches(s, s), None) is None


def hidden_occurrence(s: Sequence[int]):
    """The first ``(position, c)`` where ``s`` occurs in ``s + (c,) + s`` not as
    demonstrated, or None."""
    s = tuple(s)
    return next(_hidden_matches(s, s), None)


def compose_stage(outer_gapword: Sequence[int], inner: Sequence[int]) -> Word:
    """``inner + (g1,) + inner + ... + (gm,) + inner`` for ``outer_gapword = (g1..gm)``.

    This is the spacer word of two merged stages: ``inner`` is the finer
    stage's spacer word and ``outer_gapword`` the coarser one's.
    """
    inner = tuple(inner)
    out = list(inner)
    for g in outer_gapword:
        out.append(g)
        out.extend(inner)
    return tuple(out)


@dataclass(frozen=True)
class Decomposition:
    """``host == base 1^gaps[0] base ... 1^gaps[-1] base`` with expected copies at ``positions``."""

    base: Word
    gaps: tuple
    positions: tuple

    def reassemble(self) -> Word:
        out = list(self.base)
        for a in self.gaps:
            out.extend([1] * a)
            out.extend(self.base)
        return tuple(out)

    @property
    def simple(self) -> bool:
        return is_constant(self.gaps)


def decompose(u: Sequence[int], v: Sequence[int]) -> Decomposition | None:
    """Parse ``u`` as ``v 1^a1 v ... 1^an v`` with ``n >= 1``; None if impossible.

    Since ``v`` starts with 0 each run of 1s is maximal, so the left-to-right
    parse never needs to backtrack and a failure is final.
    """
    u, v = tuple(u), tuple(v)
    if not in_F(u) or not in_F(v):
        raise ValueError("decompose expects binary words starting and ending with 0")
    return _decompose(u, v)


def _decompose(u: Word, v: Word) -> Decomposition | None:
    m, n = len(v), len(u)
    if n < 2 * m or u[:m] != v or u[n - m:] != v:
        return None
    pos = 0
    positions = []
    gaps = []
    while True:
        if u[pos:pos + m] != v:
            return None
        positions.append(pos + 1)
        pos += m
        if pos == n:
            break
        # u ends with 0, so a next 0 always exists; the letters skipped are all 1s
        nxt = u.index(0, pos)
        gaps.append(nxt - pos)
        pos = nxt
    if not gaps:
        return None
    return Decomposition(v, tuple(gaps), tuple(positions))


def built_from(u: Sequence[int], v: Sequence[int]) -> bool:
    """``v ≺ u``."""
    return decompose(u, v) is not None


def is_simply_built(u: Sequence[int], v: Sequence[int]) -> bool:
    """``v ≺_s u``: ``u`` is built from ``v`` with all gaps equal."""
    d = decompose(u, v)
    return d is not None and d.simple
