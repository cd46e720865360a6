"""Points of the symbolic system seen through a finite window.

A :class:`PointedConfig` stands for a point ``x`` whose coordinates around 0
agree with ``v_level``, with letter ``offset`` of ``v_level`` (1-indexed) at
coordinate 0. Everything below ``level`` (expected occurrences, the labels
λ_n and κ_n) is determined by the window; anything at or above it is not,
and asking for it raises :class:`OutOfWindow`.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import OutOfWindow, SchemeInvalid
from .generate import GeneratingSequence
from .words import _decompose, in_F

INF = math.inf


@dataclass(frozen=True)
class PointedConfig:
    gen: GeneratingSequence
    level: int
    offset: int

    def __post_init__(self):
        if not 0 <= self.level <= self.gen.depth:
            raise OutOfWindow(f"level {self.level} not materialized (depth {self.gen.depth})")
        if not 1 <= self.offset <= self.gen.heights[self.level]:
            raise OutOfWindow(f"offset {self.offset} outside v_{self.level}")

    def __eq__(self, other):
        return (isinstance(other, PointedConfig) and self.level == other.level
                and self.offset == other.offset
                and self.gen.words[self.level] == other.gen.words[other.level])

    def __hash__(self):
        return hash((self.level, self.offset, self.gen.heights[self.level]))

    @property
    def window(self) -> tuple:
        return self.gen.words[self.level]

    def letter(self, i: int) -> int:
        """The letter at point coordinate ``i``."""
        k = self.offset + i
        if not 1 <= k <= len(self.window):
            raise OutOfWindow(f"coordinate {i} outside the window")
        return self.window[k - 1]


@dataclass(frozen=True)
class LabelVector:
    lambdas: tuple
    kappas: tuple


def copy_offsets(gen: GeneratingSequence, n: int) -> list[int]:
    """0-based starts of the ``r_n`` expected copies of ``v_n`` inside ``v_{n+1}``."""
    st = gen.spec.stage(n)
    h = gen.heights[n]
    out = [0]
    for a in st.s:
        out.append(out[-1] + h + a)
    return out


def expected_positions(gen: GeneratingSequence, m: int, n: int) -> list[int]:
    """1-indexed positions of the expected occurrences of ``v_m`` in ``v_n``."""
    if not 0 <= m <= n <= gen.depth:
        raise ValueError(f"need 0 <= m <= n <= {gen.depth}, got m={m}, n={n}")
    positions = [1]
    for k in range(n - 1, m - 1, -1):
        offs = copy_offsets(gen, k)
        positions = [p + o for p in positions for o in offs]
    return positions


def kappa(lam, r: int):
    if lam == INF:
        return INF
    if lam == 1:
        return -1
    if lam == r:
        return 1
    return 0


def _descend(config: PointedConfig):
    """Per level ``k < level``: ``(λ_k, start of the v_k copy holding 0)``, from the top down."""
    gen = config.gen
    out = {}
    start, rel = 1, config.offset - 1
    for k in range(config.level - 1, -1, -1):
        h = gen.heights[k]
        hit = None
        for i, o in enumerate(copy_offsets(gen, k), 1):
            if o <= rel < o + h:
                hit = (i, o)
                break
            if o > rel:
                break
        if hit is None:
            for j in range(k, -1, -1):
                out[j] = (INF, None)
            break
        i, o = hit
        start += o
        rel -= o
        out[k] = (i, start)
    return out


def label(config: PointedConfig, n: int):
    """``(λ_n, κ_n)`` at coordinate 0; λ_n is ∞ when 0 sits in a spacer."""
    if not 0 <= n < config.level:
        raise OutOfWindow(f"λ_{n} needs the enclosing v_{n + 1}, window is v_{config.level}")
    lam = _descend(config)[n][0]
    return lam, kappa(lam, config.gen.spec.stage(n).r)


def labels(config: PointedConfig) -> LabelVector:
    path = _descend(config)
    lams = tuple(path[n][0] for n in range(config.level))
    kaps = tuple(kappa(lam, config.gen.spec.stage(n).r) for n, lam in enumerate(lams))
    return LabelVector(lams, kaps)


def anchor(config: PointedConfig, n: int):
    """Point coordinate where the expected ``v_n`` holding 0 starts, or None."""
    if not 0 <= n <= config.level:
        raise OutOfWindow(f"v_{n} is above the window v_{config.level}")
    if n == config.level:
        return 1 - config.offset
    lam, start = _descend(config)[n]
    if lam == INF:
        return None
    return start - config.offset


def copy_interval(config: PointedConfig, n: int):
    """Inclusive coordinates of the expected ``v_n`` holding 0, or None."""
    left = anchor(config, n)
    if left is None:
        return None
    return left, left + config.gen.heights[n] - 1


def overlap_interval(cx: PointedConfig, cy: PointedConfig, n: int):
    """Intersection ``(c, d)`` of the expected ``v_n`` copies holding 0 in both points."""
    ix, iy = copy_interval(cx, n), copy_interval(cy, n)
    if ix is None or iy is None:
        raise ValueError(f"coordinate 0 is not inside an expected v_{n} in both points")
    c, d = max(ix[0], iy[0]), min(ix[1], iy[1])
    return (c, d) if c <= d else None


def overlap_hypotheses(cx: PointedConfig, cy: PointedConfig, n: int) -> tuple:
    """Which of the two overlap criteria apply at level ``n`` (needs ``1 <= n <= level``).

    "same-label": λ_{n-1} equal and finite in both points.
    "centred": κ_{n-1}(x) = 0 and κ_{n-1}(y) finite.
    """
    lx, kx = label(cx, n - 1)
    ly, ky = label(cy, n - 1)
    out = []
    if lx == ly and lx != INF:
        out.append("same-label")
    if kx == 0 and ky != INF:
        out.append("centred")
    return tuple(out)


def random_config(gen: GeneratingSequence, level: int, rng: random.Random) -> PointedConfig:
    return PointedConfig(gen, level, rng.randint(1, gen.heights[level]))


def kappa_zero_density(gen: GeneratingSequence, level: int, samples: int, seed=0):
    """Pooled fraction of ``κ_n = 0`` among finite ``κ_n`` over random anchors.

    Returns ``(fraction, zero_count, finite_count)``.
    """
    rng = random.Random(seed)
    zeros = finite = 0
    for _ in range(samples):
        lv = labels(random_config(gen, level, rng))
        for k in lv.kappas:
            if k != INF:
                finite += 1
                zeros += k == 0
    return (zeros / finite if finite else 0.0), zeros, finite


def _expected(host, v):
    if host == v:
        return (1,)
    d = _decompose(host, v)
    return None if d is None else d.positions


def replace(config: PointedConfig, scheme, target_gen: GeneratingSequence) -> PointedConfig:
    """Swap every expected ``v`` for ``w`` keeping positions, padding with 1s.

    ``scheme = (v, w)``; the image is read at the same level of
    ``target_gen``, whose word there must have ``w`` at exactly the same
    expected positions.
    """
    v, w = (tuple(x) for x in scheme)
    if not in_F(v) or not in_F(w):
        raise SchemeInvalid("scheme words must start and end with 0")
    L = config.level
    if L > target_gen.depth:
        raise SchemeInvalid(f"target sequence not materialized to level {L}")
    host, target = config.window, target_gen.words[L]
    pv, pw = _expected(host, v), _expected(target, w)
    if pv is None:
        raise SchemeInvalid("v is not built into the source window")
    if pw is None:
        raise SchemeInvalid("w is not built into the target window")
    if pv != pw or len(host) != len(target):
        raise SchemeInvalid("expected occurrence positions differ inside the window")
    image = [1] * len(host)
    for p in pv:
        image[p - 1:p - 1 + len(w)] = w
    if tuple(image) != target:
        raise SchemeInvalid("image does not match the target window")
    return PointedConfig(target_gen, L, config.offset)
