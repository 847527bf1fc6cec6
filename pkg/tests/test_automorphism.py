import pytest
from hypothesis import given, strategies as st

from sctree.automorphism import (
    FactorizationError,
    PolyMap,
    ReducedWord,
    UnsupportedCase,
    are_conjugate,
    classify,
    compose,
    cyclic_reduce,
    enumerate_conjugates,
    invert,
    jvdk_factorize,
    normalize,
    parse_map,
    standard_maps,
    translation_length,
)
from sctree.galois import get_field

from strategies import maps, words

F3, F5, F7 = get_field(3), get_field(5), get_field(7)


def m(F, text):
    return parse_map(F, text)


def test_bt_over_f5():
    s = standard_maps(F5)
    assert compose(s["b"], s["t"]) == m(F5, "(x^2-y, x)")


def test_compose_with_identity():
    f = m(F5, "(x^2-y, x)")
    assert compose(f, PolyMap.identity(F5)) == f
    assert compose(PolyMap.identity(F5), f) == f


def test_conjugation_relation_over_f7():
    g, f = m(F7, "(x^2-y, x)"), m(F7, "(2x, 4y)")
    assert compose(g, f) == m(F7, "(4x^2+3y, 2x)")
    assert compose(g, f) == compose(compose(f, f), g)
    assert compose(g, f) != compose(f, g)


def test_inverses():
    s = standard_maps(F5)
    assert invert(s["t"]) == s["t"]
    assert invert(s["b"]) == s["b"]
    assert invert(m(F5, "(x^2-y, x)")) == m(F5, "(y, y^2-x)")


def test_classify():
    assert classify(m(F5, "(y, x)")) == "AffineOnly"
    assert classify(m(F5, "(-x+y^2, y)")) == "ElementaryOnly"
    assert classify(m(F5, "(2x+y+1, 3y)")) == "Core"
    assert classify(m(F5, "(x^2-y, x)")) == "General"


def _recompose(syllables, F):
    f = PolyMap.identity(F)
    for s in syllables:
        f = compose(f, s.map)
    return f


def test_factorize_examples():
    bt = m(F5, "(x^2-y, x)")
    syl = jvdk_factorize(bt)
    assert len(syl) == 2 and _recompose(syl, F5) == bt
    assert [s.kind for s in jvdk_factorize(m(F5, "(2x+y, y+1)"))] == ["Core"]
    f = compose(compose(m(F5, "(x+y^3, y)"), m(F5, "(y, x)")), m(F5, "(x+y^2, y)"))
    syl = jvdk_factorize(f)
    assert len(syl) == 3 and _recompose(syl, F5) == f


@given(maps())
def test_factorize_round_trip(f):
    syl = jvdk_factorize(f)
    assert _recompose(syl, f.field) == f
    # syllables alternate between A and B
    kinds = [s.kind for s in syl]
    assert all(a != b for a, b in zip(kinds, kinds[1:]))


@given(maps())
def test_word_and_map_agree(f):
    w = f.to_word()
    assert w.to_polymap() == f
    assert w.inverse().to_polymap() == invert(f)
    assert compose(f, invert(f)) == PolyMap.identity(f.field)


@given(words(F5), words(F5), words(F5))
def test_group_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * a.inverse() == ReducedWord.identity(F5)
    assert (a * b).to_polymap() == compose(a.to_polymap(), b.to_polymap())


@given(words(F3), words(F3))
def test_equal_words_iff_equal_maps(a, b):
    assert (a == b) == (a.to_polymap() == b.to_polymap())


def test_normalize_examples():
    s = standard_maps(F5)
    assert normalize([s["t"], s["t"]]).is_identity()
    assert normalize([s["b"], s["t"], s["t"], s["b"]]).is_identity()
    c = m(F5, "(2x, 2y)")
    w = normalize([s["b"], c, s["t"]])
    assert len(w) == 2
    assert w.to_polymap() == compose(compose(s["b"], c), s["t"])


def test_normalize_empty_needs_field():
    with pytest.raises(ValueError):
        normalize([])
    assert normalize([], F3).is_identity()


def test_cyclic_reduce_examples():
    bt = standard_maps(F5)["bt"].to_word()
    cw = cyclic_reduce(bt)
    assert cw.core == bt and cw.conjugator.is_identity()
    t = standard_maps(F5)["t"].to_word()
    assert len(cyclic_reduce(bt.conj(t)).core) == 2
    a1 = ReducedWord.from_affine(F5, (1, 1, 1, 0, 0, 0))
    w = (bt**3).conj(a1)
    cw = cyclic_reduce(w)
    assert len(cw.core) == 6
    assert cw.recompose() == w
    assert are_conjugate(cw.core, bt**3) is not None


@given(words(F3, 5), st.integers(-3, 3))
def test_translation_length_is_conjugation_invariant(phi, k):
    bt = standard_maps(F3)["bt"].to_word()
    w = (bt**k).conj(phi)
    assert translation_length(w) == 2 * abs(k)
    assert cyclic_reduce(w).recompose() == w


def test_translation_length_examples():
    s = standard_maps(F3)
    assert translation_length(s["bt"].to_word()) == 2
    assert translation_length(s["t"].to_word()) == 0
    assert translation_length(s["bt"].to_word() ** 3) == 6


def test_are_conjugate_examples():
    s = standard_maps(F5)
    bt, tb = s["bt"].to_word(), compose(s["t"], s["b"]).to_word()
    w = are_conjugate(bt, tb)
    assert w is not None and bt.conj(w) == tb
    assert are_conjugate(bt, bt).is_identity()
    assert are_conjugate(bt, bt**2) is None


@given(words(F3, 4))
def test_are_conjugate_finds_witnesses(phi):
    bt = standard_maps(F3)["bt"].to_word()
    target = (bt**2).conj(phi)
    w = are_conjugate(bt**2, target)
    assert w is not None and (bt**2).conj(w) == target


def test_elliptic_conjugacy_outside_a_is_unsupported():
    b = standard_maps(F3)["b"].to_word()
    with pytest.raises(UnsupportedCase):
        are_conjugate(b, b.conj(standard_maps(F3)["t"].to_word()))


def test_enumerate_conjugates():
    bt = standard_maps(F3)["bt"].to_word()
    assert enumerate_conjugates(bt, 0) == [bt]
    tb = compose(standard_maps(F3)["t"], standard_maps(F3)["b"]).to_word()
    L1 = enumerate_conjugates(bt, 1)
    assert tb in L1
    assert len(L1) == len(set(L1))
    assert all(translation_length(w) == 2 for w in L1)


@pytest.mark.parametrize("text", ["(x^2, y)", "(x, y", "x, y", "(x)", "(x + z, y)"])
def test_parse_map_rejects(text):
    with pytest.raises(FactorizationError):
        parse_map(F3, text)


def test_pingpong_letters_are_involutions():
    from sctree.automorphism import pingpong_generator

    for lam in list(F3.elements()) + [None]:
        g = pingpong_generator(F3, lam)
        assert not g.is_identity() and (g * g).is_identity()


@given(words(F5, 4), words(F5, 4))
def test_normalize_is_a_congruence(u, v):
    pu, pv = u.to_polymap(), v.to_polymap()
    whole = normalize([*jvdk_maps(pu), *jvdk_maps(pv)])
    assert whole == normalize([normalize(jvdk_maps(pu)).to_polymap(), normalize(jvdk_maps(pv)).to_polymap()], F5)
    assert whole.to_polymap() == compose(pu, pv)


def jvdk_maps(f):
    return [s.map for s in jvdk_factorize(f)] or [PolyMap.identity(f.field)]


@given(words(F3, 3), st.integers(1, 5))
def test_translation_length_of_powers(phi, k):
    w = standard_maps(F3)["bt"].to_word().conj(phi)
    assert translation_length(w**k) == k * translation_length(w)


def test_involution_identities():
    s = standard_maps(F3)
    t, b = s["t"].to_word(), s["b"].to_word()
    assert (t * t).is_identity() and (b * b).is_identity()
    assert (b * t).inverse() == t * b
