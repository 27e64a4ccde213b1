import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from genus2lf.freegroup import (
    FreeAutomorphism,
    RankMismatch,
    Word,
    compose,
    conjugate,
    cyclically_reduce,
    inner_conjugator,
    is_conjugate,
    is_inner,
    reduce,
    substitute,
)

from oracles import naive_reduce, substitute_oracle

letters = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3, 4, -4, 5, -5]), max_size=40)


def W(*a):
    return Word(a)


# frozen examples, worked by hand


def test_reduce_examples():
    assert reduce([1, -1]).letters == ()
    assert reduce([2, 1, -1, -2, 3]).letters == (3,)
    assert reduce([1, 2, -2, -1, 1]).letters == (1,)
    assert reduce([1, 1, -2, 2, -1]).letters == (1,)


def test_cyclic_core_and_conjugator():
    core, h = cyclically_reduce(W(2, 1, 3, -2))
    assert core.letters == (1, 3)
    assert h.letters == (2,)
    assert conjugate(h, core) == W(2, 1, 3, -2)


def test_conjugacy_examples():
    assert is_conjugate(W(1, 2), W(2, 1)) is not None
    assert is_conjugate(W(1, 2), W(1, -2)) is None
    assert is_conjugate(W(1, 1, 2), W(1, 2, 2)) is None
    assert is_conjugate(W(), W()) == W()


def test_word_algebra():
    w = W(1, 2, -3)
    assert (w * ~w).letters == ()
    assert (w**3).letters == (1, 2, -3) * 3
    assert (w**-1) == ~w
    assert str(W()) == "1"


def test_inner_detects_conjugation():
    g = W(3, -1, 2)
    f = FreeAutomorphism.conjugation(g, 5)
    assert inner_conjugator(f.images) == g
    assert is_inner(FreeAutomorphism.identity(5)) == W()


def test_inner_needs_exponent_not_first_image_only():
    # x1 is fixed but x2 is not conjugated compatibly
    images = [W(1), W(1, 2, 1)]
    assert inner_conjugator(images) is None
    # g = x1^3 fixes x1; the exponent must be read from the x2 image
    images = [W(1), W(1, 1, 1, 2, -1, -1, -1)]
    assert inner_conjugator(images) == W(1, 1, 1)


def test_rank_mismatch():
    f = FreeAutomorphism.identity(2)
    with pytest.raises(RankMismatch):
        f(W(3))
    with pytest.raises(RankMismatch):
        compose(f, FreeAutomorphism.identity(3))


def test_compose_order():
    # f: x1 -> x1 x2, g: x2 -> x2 x1 ; (f o g)(x2) = f(x2 x1) = x2 x1 x2
    f = FreeAutomorphism([W(1, 2), W(2)], [W(1, -2), W(2)])
    g = FreeAutomorphism([W(1), W(2, 1)], [W(1), W(2, -1)])
    fg = compose(f, g)
    assert fg(W(2)) == W(2, 1, 2)
    assert compose(fg, fg.inverse()).is_identity()


# properties against the naive oracles


@given(letters)
def test_reduce_matches_naive(a):
    assert reduce(a).letters == naive_reduce(a)


@given(letters)
def test_reduce_idempotent(a):
    w = reduce(a)
    assert reduce(w.letters) == w


@given(letters, letters)
def test_product_is_reduced_concatenation(a, b):
    assert (reduce(a) * reduce(b)).letters == naive_reduce(list(a) + list(b))


@given(letters, letters)
def test_conjugate_found(a, b):
    w, g = reduce(a), reduce(b)
    h = is_conjugate(conjugate(g, w), w)
    assert h is not None
    assert conjugate(h, w) == conjugate(g, w)


@settings(max_examples=50)
@given(st.lists(letters, min_size=5, max_size=5), letters)
def test_substitute_matches_oracle(images, a):
    ims = [reduce(x) for x in images]
    got = substitute(ims, reduce(a))
    assert got.letters == substitute_oracle([w.letters for w in ims], naive_reduce(a))


@settings(max_examples=50)
@given(letters)
def test_inner_round_trip(a):
    g = reduce(a)
    f = FreeAutomorphism.conjugation(g, 5)
    h = inner_conjugator(f.images)
    assert h is not None
    assert all(conjugate(h, Word.generator(i)) == f.images[i - 1] for i in range(1, 6))
