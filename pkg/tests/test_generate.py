import random

import pytest

from oracles import brute_incompatible, brute_words, random_spec
from rank1.errors import CapExceeded, CertificateFailed
from rank1.generate import (built_into, canonical_analysis, cut_sequence, expand,
                            incompatibility_telescope, merge_stages, ryzhikov_step, telescope)
from rank1.params import ParameterSpec, bounds, commensurate, stage
from rank1.verdict import Answer
from rank1.words import built_from, decompose, in_F, incompatible, is_simply_built, show, word


def test_expand_chacon(chacon):
    gen = expand(chacon, 2)
    assert gen.words[0] == (0,)
    assert show(gen.words[1]) == "0010"
    assert show(gen.words[2]) == "0010001010010"
    assert gen.heights == (1, 4, 13)
    assert gen.depth == 2


def test_expand_cap(chacon):
    with pytest.raises(CapExceeded):
        expand(chacon, 10, cap=1000)


def test_expand_matches_recursion():
    rng = random.Random(5)
    for _ in range(20):
        spec = random_spec(rng)
        gen = expand(spec, 6)
        assert [show(w) for w in gen.words] == brute_words(spec, 6)
        assert list(gen.heights) == [len(w) for w in gen.words]
        # v_n is a prefix of v_{n+1}
        for a, b in zip(gen.words, gen.words[1:]):
            assert b[:len(a)] == a


def test_telescope_examples(chacon, mirror):
    t = telescope(chacon, [0], [2])
    assert t.tail == (stage(9, 0, 1, 0, 0, 1, 1, 0, 1),)
    assert telescope(mirror, [0], [2]).tail[0].s == (1, 0, 1, 1, 0, 0, 1, 0)
    assert telescope(chacon, [0], [1]).stages(5) == chacon.stages(5)
    with pytest.raises(ValueError):
        telescope(chacon, [1, 2])
    with pytest.raises(ValueError):
        telescope(chacon, [0, 2, 2])


def test_merge_three_stages():
    st = merge_stages([stage(3, 0, 1), stage(2, 1), stage(3, 0, 2)])
    assert st.r == 18
    assert len(st.s) == 17


def random_cuts(rng, limit):
    cuts = [0]
    while cuts[-1] + 1 <= limit:
        cuts.append(cuts[-1] + rng.randint(1, 3))
    return cuts[:-1] if cuts[-1] > limit else cuts


def test_telescope_soundness_random():
    rng = random.Random(8)
    for _ in range(20):
        spec = random_spec(rng, R=3, S=2)
        cuts = random_cuts(rng, 7)
        repeat = [rng.randint(1, 3) for _ in range(rng.randint(1, 2))]
        t = telescope(spec, cuts, repeat)
        full = expand(spec, cuts[-1] + sum(repeat))
        positions = cuts + [cuts[-1] + sum(repeat[:j + 1]) for j in range(len(repeat))]
        sub = expand(t, len(positions) - 1)
        assert sub.words == tuple(full.words[p] for p in positions)


def test_built_into_examples(chacon):
    v2 = expand(chacon, 2).words[2]
    members = built_into(v2)
    assert (0,) in members and word("0010") in members
    assert built_into(word("0010")) == [(0,)]
    assert built_into((0, 0)) == [(0,)]
    with pytest.raises(ValueError):
        built_into((1,))


def brute_built_into(v):
    return [v[:k] for k in range(1, len(v)) if in_F(v[:k]) and decompose(v, v[:k]) is not None]


def test_built_into_matches_brute_force():
    rng = random.Random(9)
    for _ in range(25):
        spec = random_spec(rng, R=3, S=2)
        v = expand(spec, 3).words[3]
        members = built_into(v)
        assert members == brute_built_into(v)
        # transitivity inside the set
        for i, u in enumerate(members):
            for w in members[i + 1:]:
                if built_from(w, u):
                    assert built_from(v, u)


def brute_non_canonical(top):
    members = brute_built_into(top)
    pool = members + [top]
    flagged = set()
    for v in members:
        for u in members:
            if len(u) >= len(v) or not built_from(v, u):
                continue
            for w in pool:
                if len(w) > len(v) and built_from(w, v) and is_simply_built(w, u):
                    flagged.add(v)
    return flagged


def test_canonical_chacon(chacon):
    rep = canonical_analysis(chacon, 4)
    assert rep.removable_stages == ()
    assert not rep.degenerate_flag
    assert [len(u) for u in rep.built_into] == [1, 4, 13, 40]


def test_canonical_degenerate_tail():
    spec = ParameterSpec.periodic(stage(2, 1))
    rep = canonical_analysis(spec, 4)
    assert rep.degenerate_flag
    assert rep.removable_stages
    for n in rep.removable_stages:
        u, w = rep.stage_witnesses[n]
        v = expand(spec, n).words[n]
        assert built_from(v, u) and is_simply_built(w, u)


def test_canonical_matches_brute_force():
    rng = random.Random(10)
    hits = 0
    for _ in range(80):
        spec = random_spec(rng, R=3, S=1)
        rep = canonical_analysis(spec, 3)
        top = expand(spec, 3).words[3]
        flagged = brute_non_canonical(top)
        assert set(rep.non_canonical) == flagged, spec
        hits += bool(flagged)
    assert hits >= 3


def test_canonical_flags_monotone_in_depth():
    rng = random.Random(12)
    for _ in range(15):
        spec = random_spec(rng, R=3, S=2)
        shallow = canonical_analysis(spec, 3)
        deep = canonical_analysis(spec, 4)
        assert set(shallow.removable_stages) <= set(deep.removable_stages)


def test_incompatibility_telescope_chacon(chacon, mirror):
    res = incompatibility_telescope(chacon, mirror)
    assert res.repeat == (2,)
    assert len(res.certificates) == 1
    cert = res.certificates[0]
    assert cert.s == (0, 1, 0, 0, 1, 1, 0, 1) and cert.t == (1, 0, 1, 1, 0, 0, 1, 0)
    assert brute_incompatible(cert.s, cert.t)
    assert (res.R_after, res.S_after) == (9, 1)
    assert res.bounds_ok and res.certified_all
    assert commensurate(res.a, res.b).answer is Answer.YES


def test_incompatibility_telescope_identity(chacon):
    res = incompatibility_telescope(chacon, chacon)
    assert res.certificates == ()
    assert res.a.stages(4) == chacon.stages(4)


def test_incompatibility_telescope_three_stage_merge():
    a = ParameterSpec.periodic(stage(3, 0, 1), stage(2, 1), stage(3, 0, 2))
    b = ParameterSpec.periodic(stage(3, 1, 0), stage(2, 1), stage(3, 2, 0))
    res = incompatibility_telescope(a, b)
    assert res.repeat == (3,)
    assert res.certificates and all(c.span == 3 for c in res.certificates)
    for c in res.certificates:
        assert incompatible(c.s, c.t) and brute_incompatible(c.s, c.t)
    assert res.bounds_ok


def test_incompatibility_telescope_random_commensurate():
    rng = random.Random(13)
    checked = 0
    for _ in range(60):
        a = random_spec(rng, R=3, S=2, max_tail=2)
        def flip(st):
            return type(st)(st.r, tuple(reversed(st.s)))
        b = ParameterSpec(a.preamble, tuple(flip(st) for st in a.tail))
        try:
            res = incompatibility_telescope(a, b)
        except CertificateFailed:
            continue
        checked += 1
        for c in res.certificates:
            assert brute_incompatible(c.s, c.t)
        assert res.R_after <= max(bounds(a).R, bounds(b).R) ** 3
        assert res.S_after <= max(bounds(a).S, bounds(b).S)
    assert checked > 10


def test_incompatibility_telescope_failure_names_witness():
    # differing stages whose merged words stay compatible
    a = ParameterSpec.periodic(stage(2, 0), stage(2, 0))
    b = ParameterSpec.periodic(stage(2, 0), stage(2, 0))
    assert incompatibility_telescope(a, b).certificates == ()
    a = ParameterSpec.periodic(stage(3, 0, 0), stage(3, 1, 1), stage(3, 1, 1))
    b = ParameterSpec.periodic(stage(3, 0, 0), stage(3, 2, 0), stage(3, 2, 0))
    try:
        incompatibility_telescope(a, b)
    except CertificateFailed as exc:
        assert "compatible" in str(exc)


def test_ryzhikov_cuts(chacon):
    cuts, repeat = cut_sequence(lambda n: ryzhikov_step(chacon, n), 0, 1, 0)
    assert cuts == [0] and repeat == [2]
    const = ParameterSpec.periodic(stage(3, 0, 1), stage(2, 1))
    assert ryzhikov_step(const, 0) == 3
