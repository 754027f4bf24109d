"""Rank-lowering transfer: comultiplication route, span solve, checkers."""

import pytest

from affine_schur import canonical, flag_comb as fc, schur, transfer
from affine_schur.flag_comb import PeriodicMatrix
from affine_schur.laurent import LaurentScalar, ONE
from affine_schur.schur import SchurElement, UdotMonomial


def test_frozen_conventions():
    assert transfer.PSI_FLAG == ("offset", -1)
    assert transfer.EPS_RHO == ONE


def test_reduce_monomial():
    m = UdotMonomial(2, (("a", (2, 2)), ("e", 1, 1)))
    red = transfer.reduce_monomial(m)
    assert red.letters == (("a", (1, 1)), ("e", 1, 1))
    # weights with a zero part cannot be reduced
    assert transfer.reduce_monomial(UdotMonomial(2, (("a", (2, 0)),))) is None


def test_phi_twist_tracks_letters():
    m = UdotMonomial(2, (("a", (2, 2)), ("e", 1, 1), ("f", 0, 1), ("e", 0, 1)))
    red, scalar = transfer.phi_twist(m)
    assert scalar == LaurentScalar.v(1)  # two e letters, one f letter


def test_resolve_weights():
    m = UdotMonomial(2, (("a", (1, 1)), ("e", 1, 1)))
    gens, weights = transfer.resolve_weights(m)
    assert weights[0] == (1, 1)
    # a_{mu+w_1} e_1 = e_1 a_{mu+w_2}
    assert weights[-1] == (0, 2)
    # clashing idempotents resolve to nothing
    bad = UdotMonomial(2, (("a", (1, 1)), ("a", (2, 0))))
    assert transfer.resolve_weights(bad) is None


def test_delta_generator_legs():
    legs = transfer.delta_generator("e", (1, 1), 1)
    # four splits of the weight (1, 1), two legs each
    assert len(legs) == 8
    for coeff, left, right in legs:
        carries = [any(g[0] != "a" for g in m.letters) for m in (left, right)]
        assert carries.count(True) == 1


def test_composition_on_short_words():
    for m in transfer.enumerate_monomials(2, 3, 2):
        red = transfer.reduce_monomial(m)
        expected = (SchurElement.zero(2, 1) if red is None
                    else schur.phi_monomial(red, 1))
        assert transfer.transfer_route_b(m, 1) == expected


def test_transfer_of_idempotent(span4):
    x = schur.phi_idempotent(2, 4, (2, 2))
    y = transfer.transfer_map(x, span4)
    assert y == schur.phi_idempotent(2, 2, (1, 1))


def test_transfer_linear_in_scalars(span4):
    x = schur.phi_e(2, 4, 1, (2, 2))
    y = transfer.transfer_map(x, span4)
    y2 = transfer.transfer_map(x.scale(LaurentScalar.v(3)), span4)
    assert y2 == y.scale(LaurentScalar.v(3))


def test_periodic_basis_outside_domain(span4):
    s = PeriodicMatrix.make(2, 4, {(1, 1): 1, (2, 2): 1, (1, 2): 1, (2, 3): 1})
    with pytest.raises(ValueError):
        transfer.transfer_map(SchurElement.basis(s), span4, grow_to=4)


def test_leading_term_on_generator_matrix(span4):
    lam = fc.dominant_from_weight(2, 4, (2, 2))
    e_mat, _ = fc.generator_matrices(lam, 1)
    s = PeriodicMatrix.make(2, 4, dict(e_mat.entries))
    r = transfer.check_leading_term(s, span4)
    assert r["ok"] and r["leading"] == ONE


def test_canonical_transfer_both_verdicts(span4, sys24, sys22):
    diag = PeriodicMatrix.make(2, 4, {(1, 1): 2, (2, 2): 2})
    r = transfer.check_canonical_transfer(diag, span4, sys24, sys22)
    assert r["verdict"] == "matches-(b)"
    assert r["output"].terms() == {
        PeriodicMatrix.make(2, 2, {(1, 1): 1, (2, 2): 1}): ONE}
    # a matrix with an empty diagonal entry transfers to zero
    z = PeriodicMatrix.make(2, 4, {(1, 1): 2, (1, 2): 1, (2, 3): 1})
    if fc.is_aperiodic(z):
        rz = transfer.check_canonical_transfer(z, span4, sys24, sys22)
        assert rz["verdict"] == "matches-(a)"


def test_band_enumeration_counts():
    mats = transfer.band_matrices(2, 2, 1)
    assert all(m.total() == 2 for m in mats)
    assert len(set(mats)) == len(mats)
    aper = transfer.aperiodic_band_matrices(2, 4, 2)
    assert len(aper) == 501
    assert all(fc.is_aperiodic(s) for s in aper)


def test_calibration_unique_psi():
    flags = transfer.calibrate_flags(n=2, Ds=(1,), max_len=2)
    assert {f[0] for f in flags} == {("offset", -1)}
