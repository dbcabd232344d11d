import itertools
from fractions import Fraction as F

import pytest
from hypothesis import given
from hypothesis import strategies as st

from normforge.monoids import (
    DYADIC,
    EMBEDDING,
    FAT_DYADIC,
    TRIVIAL,
    FatDyadicPoint,
    RationalEmbedding,
    TrivialMonoidError,
    axiom_violations,
    disjoint_family,
    dyadic_intersects,
    dyadic_mul,
    embedding_intersects,
    embedding_mul,
    fat_from_word,
    fat_intersects,
    fat_mul,
    fat_omega,
    fat_reduce,
    get_monoid,
    word_to_embedding,
)

words = st.text(alphabet="ab", max_size=6)
fractions = st.fractions(min_value=0, max_value=1, max_denominator=8)


@st.composite
def embeddings(draw):
    a = draw(st.fractions(min_value=F(1, 16), max_value=1, max_denominator=16))
    b = draw(st.fractions(min_value=0, max_value=1 - a, max_denominator=16))
    return RationalEmbedding(a, b)


@st.composite
def fat_points(draw):
    w = draw(st.text(alphabet="ab", max_size=4))
    ts = draw(st.lists(st.sampled_from([F(0), F(1, 3), F(1, 2), F(1)]), min_size=len(w), max_size=len(w)))
    return FatDyadicPoint(w, tuple(ts))


STRATEGIES = {"dyadic": words, "rational-embedding": embeddings(), "fat-dyadic": fat_points()}


def test_dyadic_examples():
    assert dyadic_intersects("a", "ab")
    assert not dyadic_intersects("ab", "aa")
    assert all(dyadic_intersects("", w) for w in ["", "a", "bab"])
    assert dyadic_mul("ab", "b") == "abb"


def test_embedding_examples():
    quarter = RationalEmbedding(F(1, 4))
    assert not embedding_intersects(quarter, RationalEmbedding(F(1, 4), F(3, 4)))
    assert embedding_intersects(EMBEDDING.unit, EMBEDDING.unit)
    assert embedding_mul(quarter, RationalEmbedding(F(1, 2), F(1, 2))) == RationalEmbedding(F(1, 8), F(1, 8))
    # touching closed intervals still count as disjoint interiors
    assert not embedding_intersects(RationalEmbedding(F(1, 2)), RationalEmbedding(F(1, 2), F(1, 2)))


def test_embedding_bounds():
    with pytest.raises(ValueError):
        RationalEmbedding(F(1, 2), F(3, 4))
    with pytest.raises(ValueError):
        RationalEmbedding(F(0), F(0))


def test_word_to_embedding_values():
    assert word_to_embedding("") == EMBEDDING.unit
    assert word_to_embedding("a") == RationalEmbedding(F(1, 2))
    assert word_to_embedding("ab") == RationalEmbedding(F(1, 4), F(1, 4))


@given(words, words)
def test_word_to_embedding_is_a_morphism(u, v):
    assert word_to_embedding(u + v) == embedding_mul(word_to_embedding(u), word_to_embedding(v))
    if not dyadic_intersects(u, v):
        assert not embedding_intersects(word_to_embedding(u), word_to_embedding(v))


def test_fat_examples():
    assert fat_reduce(FatDyadicPoint("ab", (1, 0))) == FatDyadicPoint("a", (1,))
    assert FatDyadicPoint("ab", (1, 0)) == fat_from_word("a")
    assert fat_omega(FatDyadicPoint("ab", (1, F(1, 2)))) == "ab"


@pytest.mark.parametrize("t", [F(1, 3), F(1, 2), F(1)])
def test_fat_intersection_follows_omega(t):
    # omega gives "ab" against "a": no differing letter in the common prefix,
    # so the relation induced through omega reports an intersection
    split = FatDyadicPoint("ab", (1, t))
    assert split != fat_from_word("a")
    assert fat_intersects(split, fat_from_word("a"))
    assert not fat_intersects(split, fat_from_word("b"))
    assert not fat_intersects(split, fat_from_word("aa"))


def test_fat_zero_weight_collapses_to_single_letter():
    assert fat_intersects(FatDyadicPoint("ab", (1, 0)), fat_from_word("aa"))
    assert fat_intersects(FatDyadicPoint("ab", (1, 0)), fat_from_word("ab"))


@given(fat_points())
def test_reduce_idempotent(p):
    r = fat_reduce(p)
    assert fat_reduce(r) == r
    assert all(t != 0 for t in r.weights)


@given(fat_points(), fat_points())
def test_omega_is_a_monoid_map(p, q):
    assert fat_omega(fat_mul(p, q)) == fat_omega(p) + fat_omega(q)


@pytest.mark.parametrize("name", ["dyadic", "rational-embedding", "fat-dyadic"])
def test_pool_satisfies_axioms(name):
    m = get_monoid(name)
    assert axiom_violations(m, m.pool(2)[:10]) == []


@pytest.mark.parametrize("name", ["dyadic", "rational-embedding", "fat-dyadic"])
def test_random_axioms(name):
    m = get_monoid(name)
    strategy = STRATEGIES[name]

    @given(strategy, strategy, strategy, strategy)
    def check(x1, x2, y1, y2):
        mul, meets = m.mul, m.intersects
        assert meets(x1, x1)
        assert meets(x1, x2) == meets(x2, x1)
        assert mul(mul(x1, x2), y1) == mul(x1, mul(x2, y1))
        assert mul(m.unit, x1) == x1 == mul(x1, m.unit)
        if meets(mul(x1, y1), mul(x2, y2)):
            assert meets(x1, x2)
        if meets(mul(x1, y1), mul(x1, y2)):
            assert meets(y1, y2)
        # disjoint restatements
        if not meets(x1, x2):
            assert not meets(mul(x1, y1), mul(x2, y2))
        if not meets(y1, y2):
            assert not meets(mul(x1, y1), mul(x1, y2))

    check()


def test_disjoint_family_small():
    assert disjoint_family(DYADIC, 1) == ["a"]
    assert disjoint_family(DYADIC, 2) == ["a", "b"]
    assert disjoint_family(DYADIC, 3) == ["a", "ba", "bb"]


@pytest.mark.parametrize("monoid", [DYADIC, EMBEDDING, FAT_DYADIC], ids=lambda m: m.name)
@pytest.mark.parametrize("n", [1, 2, 5, 17, 64])
def test_disjoint_family_pairwise_disjoint(monoid, n):
    fam = disjoint_family(monoid, n)
    assert len(fam) == n
    assert all(monoid.disjoint(u, v) for u, v in itertools.combinations(fam, 2))


def test_trivial_monoid():
    assert TRIVIAL.is_trivial()
    with pytest.raises(TrivialMonoidError):
        disjoint_family(TRIVIAL, 2)


def test_encodings_round_trip():
    e = RationalEmbedding(F(1, 8), F(5, 8))
    assert EMBEDDING.decode(EMBEDDING.encode(e)) == e
    p = FatDyadicPoint("ab", (F(1, 2), 1))
    assert FAT_DYADIC.decode(FAT_DYADIC.encode(p)) == p


def test_unknown_monoid():
    with pytest.raises(ValueError):
        get_monoid("cubes")
