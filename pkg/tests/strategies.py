"""Shared hypothesis strategies for words, maps and vertices."""
import random

from hypothesis import strategies as st

from sctree.acceptance import random_syllable
from sctree.automorphism import PolyMap, compose
from sctree.bassserre import vertex_of_word
from sctree.galois import get_field
from sctree.greendlinger import random_conjugator

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (3, 2)]


def field_strategy(fields=SMALL_FIELDS):
    return st.sampled_from(fields).map(lambda pk: get_field(*pk))


def random_map(F, rng: random.Random, max_syllables: int = 6) -> PolyMap:
    kind = rng.choice("AB")
    f = PolyMap.identity(F)
    for _ in range(rng.randint(1, max_syllables)):
        f = compose(f, random_syllable(F, rng, kind, max_deg=2))
        kind = "B" if kind == "A" else "A"
    return f


@st.composite
def maps(draw, F=None, max_syllables=6):
    F = F or draw(field_strategy())
    return random_map(F, random.Random(draw(st.integers(0, 2**32))), max_syllables)


@st.composite
def words(draw, F=None, conj_len=4):
    F = F or draw(field_strategy())
    return random_conjugator(F, random.Random(draw(st.integers(0, 2**32))), conj_len)


@st.composite
def vertices(draw, F=None, depth=6):
    F = F or draw(field_strategy())
    w = draw(words(F, depth))
    return vertex_of_word(w, draw(st.sampled_from("AB")))
