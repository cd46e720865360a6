"""Brute-force reference implementations, deliberately naive."""

import random

from rank1.params import ParameterSpec, Stage


def naive_occurs(host, pattern):
    L = len(pattern)
    return [k + 1 for k in range(len(host) - L + 1) if tuple(host[k:k + L]) == tuple(pattern)]


def brute_incompatible(s, t):
    """No ``c`` in 0..max+L+1 puts ``t`` inside ``s c s``."""
    s, t = tuple(s), tuple(t)
    top = max(s + t) + len(s) + 1
    return not any(naive_occurs(s + (c,) + s, t) for c in range(top + 1))


def brute_two_occurrences(s):
    s = tuple(s)
    top = max(s) + len(s) + 1
    return all(naive_occurs(s + (c,) + s, s) == [1, len(s) + 2] for c in range(top + 1))


def brute_words(spec, N):
    """``v_0..v_N`` straight from the recursion, as strings."""
    out = ["0"]
    for n in range(N):
        st = spec.stage(n)
        v = out[-1]
        out.append(v + "".join("1" * a + v for a in st.s))
    return out


def random_stage(rng, R=4, S=3):
    r = rng.randint(2, R)
    return Stage(r, tuple(rng.randint(0, S) for _ in range(r - 1)))


def random_spec(rng: random.Random, R=4, S=3, max_pre=3, max_tail=3):
    pre = tuple(random_stage(rng, R, S) for _ in range(rng.randint(0, max_pre)))
    tail = tuple(random_stage(rng, R, S) for _ in range(rng.randint(1, max_tail)))
    return ParameterSpec(pre, tail)
