import dataclasses
import random

import pytest
from hypothesis import given, settings, strategies as st

from sctree.automorphism import standard_maps, translation_length
from sctree.bassserre import ID_A, Axis, act, distance
from sctree.galois import get_field
from sctree.greendlinger import (
    Presentation,
    Segment,
    compute_chain,
    configuration_violations,
    extract_configuration,
    is_admissible,
    make_admissible,
    minimize,
    random_conjugator,
    random_presentation,
    reduce_pairs,
    sct_sample,
    sct_verify,
)
from sctree.smallcancel import choose_exponent

F3 = get_field(3)
BT = standard_maps(F3)["bt"].to_word()
PARAMS = choose_exponent(BT, "greendlinger", 6, 6)  # n = 37

seeds = st.integers(0, 2**32)


def test_presentation_is_deterministic():
    a = random_presentation(11, 3, 3, PARAMS)
    b = random_presentation(11, 3, 3, PARAMS)
    assert a == b and a.to_json() == b.to_json()
    with pytest.raises(ValueError):
        random_presentation(11, 0, 3, PARAMS)


def test_element_composes_in_order():
    p = random_presentation(3, 2, 2, PARAMS)
    h1, h2 = p.elements()
    assert p.element() == h2 * h1


def test_cancelling_pair_gives_identity():
    psi = random_conjugator(F3, random.Random(4), 3)
    p = Presentation(ID_A, ((psi, 1), (psi, -1)), PARAMS)
    assert p.element().is_identity()


def test_identity_sample_is_skipped(monkeypatch):
    import sctree.greendlinger as gd

    psi = random_conjugator(F3, random.Random(4), 3)
    monkeypatch.setattr(gd, "random_presentation", lambda *a: Presentation(ID_A, ((psi, 1), (psi, -1)), PARAMS))
    assert sct_sample(0, 2, 3, PARAMS).verdict == "SKIP"


def test_single_factor_is_conjugate_to_a_power():
    r = sct_sample(5, 1, 3, PARAMS)
    assert r.verdict == "PASS"
    assert r.ell_h == PARAMS.ell and r.conjugate_witness is not None


@settings(max_examples=8)
@given(seeds, st.integers(1, 3))
def test_chain_identities(seed, m):
    p = random_presentation(seed, m, 3, PARAMS)
    chain = compute_chain(p)
    hs = p.elements()
    for i, h in enumerate(hs):
        assert chain.b[i] == act(h, chain.a[i])
        assert chain.x[i + 1] == act(h, chain.x[i])
        assert Axis(h).contains(chain.a[i])
        assert distance(chain.a[i], chain.b[i]) == PARAMS.ell


@settings(max_examples=8)
@given(seeds, st.integers(1, 3))
def test_rewriting_preserves_the_element(seed, m):
    p = random_presentation(seed, m, 3, PARAMS)
    q, rounds = make_admissible(p)
    assert q.element() == p.element()
    assert is_admissible(q)
    r, _ = minimize(p)
    assert r.element() == p.element() and is_admissible(r)
    hs = r.elements()
    assert all(hs[j] != hs[i].inverse() for i in range(len(hs)) for j in range(i + 1, len(hs)))


def _check_reduced(p, r):
    # admissibility splits may grow m again, so only the invariants are checked
    assert r.element() == p.element()
    assert is_admissible(r)
    hs = r.elements()
    assert all(hs[j] != hs[i].inverse() for i in range(len(hs)) for j in range(i + 1, len(hs)))


def test_reduce_adjacent_pair():
    rng = random.Random(2)
    a, b = random_conjugator(F3, rng, 2), random_conjugator(F3, rng, 2)
    p = Presentation(ID_A, ((a, 1), (b, 1), (b, -1)), PARAMS)
    _check_reduced(p, reduce_pairs(p))


def test_reduce_pair_two_apart():
    rng = random.Random(6)
    a, b = random_conjugator(F3, rng, 2), random_conjugator(F3, rng, 2)
    p = Presentation(ID_A, ((a, 1), (b, -1), (a, -1)), PARAMS)
    _check_reduced(p, reduce_pairs(p))


def _valid_configuration():
    for seed in range(50):
        p = random_presentation(seed, 2, 3, PARAMS)
        h = p.element()
        if translation_length(h) == 0:
            continue
        p, _ = minimize(p.with_base(Axis(h).project(ID_A)))
        chain = compute_chain(p)
        conf = extract_configuration(p, p.m, chain)
        if conf.k >= 1 and not configuration_violations(conf, p, p.m, chain):
            return p, chain, conf
    pytest.skip("no configuration found")


def test_validator_accepts_extracted_configuration():
    p, chain, conf = _valid_configuration()
    assert conf.labels[0].kind == "relator"
    assert conf.labels[-1].kind == "neutral"


def test_validator_rejects_consecutive_neutrals():
    p, chain, conf = _valid_configuration()
    bad = dataclasses.replace(conf, labels=[Segment("neutral")] * len(conf.labels))
    problems = configuration_violations(bad, p, p.m, chain)
    assert any("neutral" in s for s in problems)


def test_validator_rejects_short_second_relator():
    p, chain, conf = _valid_configuration()
    pts = list(conf.points)
    # pull c_1 back toward c_0 so the first relator loses length
    pts[2] = pts[1]
    bad = dataclasses.replace(conf, points=pts)
    assert configuration_violations(bad, p, p.m, chain)


@settings(max_examples=6)
@given(seeds)
def test_sampled_presentations_pass(seed):
    r = sct_sample(seed, random.Random(seed).randint(1, 3), 3, PARAMS)
    assert r.verdict in ("PASS", "SKIP"), r.problems
    if r.verdict == "PASS":
        assert r.ell_h >= PARAMS.ell


def test_verify_is_reproducible():
    a = [r.to_json() for r in sct_verify(PARAMS, 3, seed=7)]
    b = [r.to_json() for r in sct_verify(PARAMS, 3, seed=7)]
    assert a == b
