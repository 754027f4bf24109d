"""Affine Hecke algebra: presentation, bar involution, coset sums."""

from hypothesis import given, settings, strategies as st

from affine_schur import affine_weyl as aw, flag_comb as fc, hecke
from affine_schur.hecke import HeckeElement
from affine_schur.laurent import LaurentScalar, ONE


def t(D, i):
    return HeckeElement.t(aw.simple(D, i))


def words(D, max_len=4):
    return st.lists(st.integers(1, D - 1), max_size=max_len)


def element_of(D, word):
    h = HeckeElement.unit(D)
    for i in word:
        h = hecke.mul(h, t(D, i))
    return h


def test_quadratic():
    D = 3
    vm2 = LaurentScalar.v(-2)
    for i in (1, 2):
        lhs = hecke.mul(t(D, i), t(D, i))
        rhs = t(D, i).scale(vm2 - ONE) + HeckeElement.unit(D).scale(vm2)
        assert lhs == rhs


def test_braid():
    D = 3
    assert (hecke.mul(hecke.mul(t(D, 1), t(D, 2)), t(D, 1))
            == hecke.mul(hecke.mul(t(D, 2), t(D, 1)), t(D, 2)))


def test_x_relations():
    D = 3
    vm2 = LaurentScalar.v(-2)
    x1, x2 = hecke.x_element(D, 1), hecke.x_element(D, 2)
    assert hecke.mul(x1, x2) == hecke.mul(x2, x1)
    assert hecke.mul(hecke.mul(t(D, 1), x1), t(D, 1)) == x2.scale(vm2)
    x3 = hecke.x_element(D, 3)
    assert hecke.mul(t(D, 1), x3) == hecke.mul(x3, t(D, 1))
    assert hecke.mul(x1, hecke.x_inverse(D, 1)) == HeckeElement.unit(D)


def test_tw_inverse():
    D = 3
    w = aw.from_word(D, 1, [1, 2])
    assert hecke.mul(HeckeElement.t(w), hecke.inverse_of_Tw(w)) == HeckeElement.unit(D)


@settings(max_examples=40)
@given(words(3), words(3))
def test_bar_antihomomorphic_on_products(u, w):
    D = 3
    hu, hw = element_of(D, u), element_of(D, w)
    assert hecke.bar(hecke.bar(hu)) == hu
    assert hecke.bar(hecke.mul(hu, hw)) == hecke.mul(hecke.bar(hu), hecke.bar(hw))


def test_bar_fixes_normalized_coset_sum():
    # bar(T_lambda) = v^{2 x_lambda} T_lambda, i.e. [lambda] is bar-fixed
    lam = fc.dominant_from_weight(2, 3, (2, 1))
    h = hecke.coset_sum(lam, lam)
    assert hecke.bar(h) == h.scale(LaurentScalar.v(2 * fc.x_stat(lam)))


def test_double_coset_sum_support():
    lam = fc.dominant_from_weight(2, 3, (2, 1))
    mu = fc.dominant_from_weight(2, 3, (1, 2))
    s = fc.matrix_of_pair(lam, mu)
    h = hecke.double_coset_sum(lam, mu, s)
    rep = fc.double_coset_min_rep(s, lam, mu)
    elems = aw.double_coset_elements(3, lam.values, rep, mu.values)
    assert set(h.terms) == set(elems)
    assert all(c == ONE for c in h.terms.values())
