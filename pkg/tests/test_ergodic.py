import random

import pytest

from oracles import random_spec
from rank1.ergodic import EdTrace, all_hold, ed_holds, totally_ergodic_up_to, verify_ed_trace
from rank1.errors import DepthLimited
from rank1.params import ParameterSpec, heights, stage


def brute_ed(spec, d, horizon=60):
    """(E_d) over N < horizon, scanning stages up to horizon + a few periods."""
    P, L = len(spec.preamble), len(spec.tail)
    hs = heights(spec, horizon)
    last = horizon + P + 4 * L
    for N in range(horizon - 2 * L - 2):
        values = {v for n in range(N, last) for v in spec.stage(n).s}
        if all((hs[N] + v) % d == 0 for v in values):
            return False
    return True


@pytest.mark.parametrize("d", range(2, 11))
def test_chacon_holds(chacon, d):
    t = ed_holds(chacon, d)
    assert t.holds and t.failing_N is None
    assert verify_ed_trace(chacon, t)


def test_tail_r2_s1_d3():
    spec = ParameterSpec.periodic(stage(2, 1))
    t = ed_holds(spec, 3)
    assert t.holds and verify_ed_trace(spec, t)


def test_tail_r2_s2_fails_d2():
    spec = ParameterSpec.periodic(stage(2, 2))
    t = ed_holds(spec, 2)
    assert not t.holds and t.failing_N == 1
    assert verify_ed_trace(spec, t)
    hs = heights(spec, 3)
    assert hs == [1, 4, 10, 22]


def test_upto(chacon):
    assert totally_ergodic_up_to(chacon, 1) == []
    traces = totally_ergodic_up_to(chacon, 5)
    assert [t.d for t in traces] == [2, 3, 4, 5] and all_hold(traces)


def test_errors(chacon):
    with pytest.raises(ValueError):
        ed_holds(chacon, 1)
    with pytest.raises(DepthLimited):
        ed_holds(ParameterSpec((stage(2, 1),)), 2)


def test_trace_round_trip(chacon):
    for spec in (chacon, ParameterSpec.periodic(stage(2, 2))):
        t = ed_holds(spec, 2)
        assert EdTrace.from_dict(t.to_dict()) == t


def test_tampered_trace_rejected():
    spec = ParameterSpec.periodic(stage(2, 2))
    t = ed_holds(spec, 2).to_dict()
    t["holds"] = True
    assert not verify_ed_trace(spec, EdTrace.from_dict(t))
    good = ed_holds(ParameterSpec.periodic(stage(3, 0, 1)), 3).to_dict()
    good["witnesses"] = {}
    assert not verify_ed_trace(ParameterSpec.periodic(stage(3, 0, 1)), EdTrace.from_dict(good))


def test_random_against_brute_force():
    rng = random.Random(21)
    fails = 0
    for _ in range(80):
        spec = random_spec(rng, R=4, S=3)
        for d in range(2, 7):
            t = ed_holds(spec, d)
            assert t.holds == brute_ed(spec, d), (spec, d)
            assert verify_ed_trace(spec, t)
            fails += not t.holds
    assert fails > 0


def test_stable_under_presentation_change():
    rng = random.Random(22)
    for _ in range(30):
        spec = random_spec(rng)
        other = spec.unrolled(len(spec.preamble) + 2, 2 * len(spec.tail))
        for d in range(2, 6):
            assert ed_holds(spec, d).holds == ed_holds(other, d).holds
