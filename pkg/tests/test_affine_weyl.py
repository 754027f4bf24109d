"""Group structure of periodic permutations: lengths, words, cosets."""

import math

from hypothesis import given, strategies as st

from affine_schur import affine_weyl as aw


def random_elements(D, max_word=6):
    return st.tuples(st.integers(-2, 2),
                     st.lists(st.integers(0, D - 1), max_size=max_word)).map(
        lambda t: aw.from_word(D, t[0], t[1]))


def test_simple_and_rotation():
    s1 = aw.simple(3, 1)
    assert s1.length() == 1 and (s1 * s1).is_identity()
    rho = aw.rotation(3)
    assert rho.length() == 0
    assert rho.rotation_power() == 1
    assert (rho * rho.inverse()).is_identity()
    s0 = aw.simple(3, 0)
    assert s0.length() == 1
    # rho conjugates the simple reflections cyclically
    assert rho * aw.simple(3, 1) * rho.inverse() == aw.simple(3, 2)


def test_translation_length():
    # the translation by a dominant-ordered vector mu has length
    # sum_{i<j} |mu_i - mu_j| in the Coxeter part times rotations; here
    # just freeze small windows
    t = aw.translation(3, (1, 0, 0))
    assert t.window == (4, 2, 3)
    assert (t * aw.translation(3, (0, 1, 0))).rotation_power() is None


@given(random_elements(3))
def test_reduced_word_roundtrip(w):
    k, word = w.reduced_word()
    assert len(word) == w.length()
    assert aw.from_word(3, k, word) == w


@given(random_elements(4), random_elements(4))
def test_length_subadditive(x, y):
    assert (x * y).length() <= x.length() + y.length()
    assert abs(x.length() - y.length()) <= (x * y.inverse()).length()


@given(random_elements(3))
def test_inverse_length(w):
    assert w.inverse().length() == w.length()
    assert aw.AffinePermutation.from_text(w.to_text()) == w


def test_bruhat_order():
    e = aw.identity(3)
    s1 = aw.simple(3, 1)
    w = s1 * aw.simple(3, 2)
    assert aw.bruhat_leq(e, w)
    assert aw.bruhat_leq(s1, w)
    assert not aw.bruhat_leq(w, s1)
    assert aw.bruhat_leq(w, w)


def test_young_subgroup():
    # |S_lambda| is the product of the part factorials
    elems = aw.young_subgroup_elements(4, (1, 1, 2, 2))
    assert len(elems) == math.factorial(2) * math.factorial(2)
    gens = aw.young_generators((1, 1, 2, 2))
    assert all(g in (1, 3) for g in gens)


def test_min_coset_rep():
    # the minimal representative has no descent inside the stabilizer
    w = aw.min_coset_rep(2, (1, 1, 2), (2, 1, 1))
    assert w.length() == min(u.length() for u in
                             (y * w for y in aw.young_subgroup_elements(3, (1, 1, 2))))


def test_double_coset_elements():
    lam = mu = (1, 1, 2)
    rep = aw.min_double_coset_rep(3, lam, aw.simple(3, 1), mu)
    elems = aw.double_coset_elements(3, lam, rep, mu)
    assert rep in elems
    assert all(rep.length() <= u.length() for u in elems)
    assert len(set(elems)) == len(elems)
