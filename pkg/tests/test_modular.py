"""Tests for exact modular forms, reductions and the Hecke action."""

import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from sslab.errors import (NonPIntegral, NotInSpan, PrecisionLoss,
                          WeightMismatch)
from sslab.modular import (GradedPiece, HeckeMatrix, IsobaricPoly, QExpansion,
                           bernoulli, discriminant_series, eisenstein_series,
                           eisenstein_embedding, graded_piece, hasse_companion,
                           hasse_form, hasse_multiplication_injective,
                           hecke_image, hecke_matrix, hecke_operator,
                           in_quotient_ideal, multiplier_commutation_holds,
                           polynomial_from_expansion, power_identity_holds,
                           reduce_in_quotient, weight_injectivity_holds)

PRIMES = (5, 7, 11, 13)


# -- exact expansions -------------------------------------------------------

def test_bernoulli_oracle_values():
    assert bernoulli(0) == 1
    assert bernoulli(1) == Fraction(-1, 2)
    assert bernoulli(4) == Fraction(-1, 30)
    assert bernoulli(12) == Fraction(-691, 2730)
    assert all(bernoulli(m) == 0 for m in (3, 5, 7, 9))
    with pytest.raises(ValueError):
        bernoulli(61)


def test_eisenstein_frozen_coefficients():
    e4 = eisenstein_series(4, 5)
    assert [e4.coeff(r) for r in range(4)] == [1, 240, 2160, 6720]
    assert e4.weight == 4 and e4.precision == 5
    e6 = eisenstein_series(6, 4)
    assert [e6.coeff(r) for r in range(3)] == [1, -504, -16632]
    with pytest.raises(ValueError):
        eisenstein_series(2, 10)
    with pytest.raises(ValueError):
        eisenstein_series(5, 10)


def test_discriminant_frozen_coefficients():
    d = discriminant_series(8)
    assert [d.coeff(r) for r in range(6)] == [0, 1, -24, 252, -1472, 4830]
    assert d.weight == 12


def test_expansion_ring_rules():
    e4 = eisenstein_series(4, 10)
    e6 = eisenstein_series(6, 10)
    prod = e4 * e6
    assert prod.weight == 10
    with pytest.raises(WeightMismatch):
        e4 + e6
    # e4^3 - e6^2 = 1728 * delta, the one classical identity worth a pin
    lhs = e4 * e4 * e4 - e6 * e6
    assert lhs == discriminant_series(10).scale(1728)


def test_reduction_and_nonintegrality():
    e4 = eisenstein_series(4, 6).reduce(5)
    assert e4.coeffs == (1, 0, 0, 0, 0, 0)
    with pytest.raises(NonPIntegral):
        eisenstein_series(12, 4).reduce(691)
    with pytest.raises(ValueError):
        e4.reduce(5)


def test_laurent_shift_bookkeeping():
    # (q^-1 + 1) * (q + 2q^2) knows exponents 0 and 1 only
    a = QExpansion(0, [1, 1], shift=-1, modulus=7)
    b = QExpansion(0, [0, 1, 2], shift=0, modulus=7)
    c = a * b
    assert c.shift == -1 and c.precision == 1
    assert c.coeff(-1) == 0 and c.coeff(0) == 1
    with pytest.raises(PrecisionLoss):
        c.coeff(1)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 4), st.lists(st.integers(0, 12), min_size=3, max_size=6),
       st.lists(st.integers(0, 12), min_size=3, max_size=6))
def test_hecke_operator_is_linear_mod_p(c, xs, ys):
    p, ell, k = 13, 3, 8
    f = QExpansion(k, xs, 0, p)
    g = QExpansion(k, ys, 0, p)
    lhs = hecke_operator(f.scale(c) + g, ell)
    rhs = hecke_operator(f, ell).scale(c) + hecke_operator(g, ell)
    assert lhs == rhs


# -- the hecke operator on expansions ---------------------------------------

def test_hecke_frozen_examples():
    t = hecke_operator(eisenstein_series(4, 20), 2)
    assert t == eisenstein_series(4, 10).scale(9)
    td = hecke_operator(discriminant_series(30), 2)
    assert td == discriminant_series(15).scale(-24)
    zero = QExpansion(12, [0] * 12)
    assert hecke_operator(zero, 3) == QExpansion(12, [0] * 4)
    t3 = hecke_operator(eisenstein_series(6, 21), 3)
    assert t3 == eisenstein_series(6, 7).scale(1 + 3 ** 5)


def test_hecke_precision_contract():
    g = QExpansion(4, list(range(20)), 0, 7)
    assert hecke_operator(g, 3).precision == 6
    with pytest.raises(PrecisionLoss):
        hecke_operator(QExpansion(4, [1], 0, 7), 5)
    with pytest.raises(ValueError):
        hecke_operator(g, 7)


# -- reconstruction ---------------------------------------------------------

def test_polynomial_from_expansion_basics():
    for p in PRIMES:
        f = polynomial_from_expansion(4, eisenstein_series(4, 6).reduce(p))
        assert f.terms == {(1, 0): 1}
    with pytest.raises(NotInSpan):
        polynomial_from_expansion(4, QExpansion(4, [1, 1, 0, 0, 0], 0, 7))
    with pytest.raises(PrecisionLoss):
        polynomial_from_expansion(16, QExpansion(16, [1, 0], 0, 7))


def test_polynomial_round_trip_weight_16():
    rng = random.Random(7)
    for p in (7, 13):
        for _ in range(5):
            terms = {(4, 0): rng.randrange(p), (1, 2): rng.randrange(p)}
            f = IsobaricPoly(p, 16, terms)
            g = f.q_expansion(8)
            assert polynomial_from_expansion(16, g).terms == f.terms


def test_isobaric_weight_guard():
    with pytest.raises(WeightMismatch):
        IsobaricPoly(5, 10, {(1, 0): 1})


def test_delta_poly_matches_series():
    for p in (5, 11):
        assert (IsobaricPoly.delta(p).q_expansion(30)
                == discriminant_series(30).reduce(p))


def test_evaluate_at_curve_gives_discriminant():
    from sslab.fields import field
    from sslab.curves import Curve
    F = field(13)
    E = Curve(F, 2, 3)
    assert IsobaricPoly.delta(13).evaluate(E) == E.disc
    assert IsobaricPoly.e4(13).evaluate(E) == E.c4


# -- the two distinguished forms --------------------------------------------

def test_hasse_form_frozen():
    assert hasse_form(5).terms == {(1, 0): 1}
    assert hasse_form(7).terms == {(0, 1): 1}
    assert hasse_form(11).terms == {(1, 1): 1}
    assert hasse_form(13).terms == {(3, 0): 6, (0, 2): 8}


def test_hasse_companion_frozen():
    assert hasse_companion(5).terms == {(0, 1): 1}
    assert hasse_companion(7).terms == {(2, 0): 1}
    assert hasse_companion(11).terms == {(3, 0): 5, (0, 2): 7}
    assert hasse_companion(13).terms == {(2, 1): 1}


def test_hasse_expansion_is_one():
    for p in PRIMES:
        e = hasse_form(p).q_expansion(50)
        assert e.coeff(0) == 1
        assert not any(e.coeff(r) for r in range(1, 50))


def test_hasse_form_matches_curve_side_polynomial():
    # same normalization on both sides, so the scalar is exactly one
    from sslab.curves import hasse_polynomial
    for p in PRIMES:
        assert hasse_polynomial(p) == hasse_form(p).terms


def test_injectivity_and_regularity_witnesses():
    for p in (5, 13):
        for W in range(0, p * p, 4):
            assert weight_injectivity_holds(p, W)
            assert hasse_multiplication_injective(p, W)


# -- the graded quotient ----------------------------------------------------

def test_graded_dimensions_frozen():
    dims = lambda p: [graded_piece(p, n).dim for n in range(0, 12, 2)]
    assert dims(5) == [1, 0, 0, 1, 0, 0]
    assert dims(7) == [1, 0, 1, 0, 1, 0]
    assert dims(11) == [2, 0, 1, 1, 1, 0]
    assert dims(13) == [1, 1, 1, 1, 1, 1]
    assert all(graded_piece(p, n).dim == 0 for p in PRIMES for n in (1, 3, 5))


def test_graded_piece_shape():
    piece = graded_piece(5, 0)
    assert piece.weight == 12
    assert piece.basis == ((0, 2),)
    assert graded_piece(7, 0).basis == ((3, 0),)
    assert graded_piece(11, 0).dim == 2
    f = piece.basis_classes()[0]
    assert f.delta_shift == 1 and f.class_weight == 0


def test_ideal_membership_frozen():
    # the discriminant collapses onto a single monomial in each quotient
    d5 = IsobaricPoly.delta(5) - IsobaricPoly.monomial(5, 0, 2).scale(3)
    assert in_quotient_ideal(d5)
    d7 = IsobaricPoly.delta(7) + IsobaricPoly.monomial(7, 3, 0)
    assert in_quotient_ideal(d7)
    assert in_quotient_ideal(hasse_form(5) * IsobaricPoly.e4(5))
    assert not in_quotient_ideal(IsobaricPoly.e4(7))
    assert any(reduce_in_quotient(IsobaricPoly.delta(11)))


def test_quotient_weight_guard():
    piece = graded_piece(5, 0)
    with pytest.raises(WeightMismatch):
        piece.coordinates(IsobaricPoly.e4(5))


def test_cross_weight_coordinates_agree():
    # a class reduced directly and after multiplying through by the
    # discriminant must land on the same coordinates
    for p in (5, 11):
        piece = graded_piece(p, 0)
        for f in piece.basis_classes():
            direct = piece.coordinates(f)
            lifted = piece.coordinates(f.shift_delta(2))
            assert direct == lifted


# -- hecke matrices on the quotient -----------------------------------------

def test_hecke_matrix_eigen_frozen():
    for ell in (2, 3, 5):
        assert hecke_matrix(7, 4, ell).rows == (((1 + ell ** 3) % 7,),)
    for ell in (2, 3):
        assert hecke_matrix(5, 6, ell).rows == (((1 + ell) % 5,),)
        # weight class zero sees the inverse of ell
        assert hecke_matrix(5, 0, ell).rows == (((1 + pow(ell, 3, 5)) % 5,),)


def test_hecke_matrix_dim_two_frozen():
    # p = 11, class 12: the discriminant line carries tau(ell) and the
    # Eisenstein line 1 + ell^11
    m = hecke_matrix(11, 12, 2)
    delta_vec = (1, 10)
    assert m.apply(delta_vec) == tuple(-24 * v % 11 for v in delta_vec)
    eis_vec = (5, 7)
    assert m.apply(eis_vec) == tuple((1 + 2 ** 11) * v % 11 for v in eis_vec)


def test_hecke_matrices_commute():
    from sslab.modular import _matmul
    for p, n in ((11, 0), (13, 0), (11, 12)):
        a = hecke_matrix(p, n, 2).rows
        b = hecke_matrix(p, n, 3).rows
        assert _matmul(a, b, p) == _matmul(b, a, p)


def test_hecke_periodicity_full_period():
    assert hecke_matrix(5, 6, 2) == hecke_matrix(5, 6 + 24, 2)
    assert hecke_matrix(7, 4, 3) == hecke_matrix(7, 4 + 48, 3)
    assert hecke_matrix(11, 0, 2) == hecke_matrix(11, 120, 2)


def test_hecke_twelve_shift_differs():
    # multiplying by the discriminant does not intertwine the operators;
    # the twelve-step shift genuinely changes the matrix
    assert hecke_matrix(7, 4, 2).rows != hecke_matrix(7, 16, 2).rows
    assert hecke_matrix(11, 0, 2).rows != hecke_matrix(11, 12, 2).rows


def test_hecke_image_lift_independent():
    rng = random.Random(11)
    for p in (5, 7):
        piece = graded_piece(p, 0)
        base = piece.basis_classes()[0]
        A = hasse_form(p)
        for _ in range(5):
            noise_w = piece.weight - (p - 1)
            mons = [(i, j) for j in range(noise_w // 6 + 1)
                    for i in range(noise_w // 4 + 1) if 4 * i + 6 * j == noise_w]
            terms = {m: rng.randrange(p) for m in mons}
            noise = A * IsobaricPoly(p, noise_w, terms)
            other = base + IsobaricPoly(p, piece.weight, noise.terms,
                                        base.delta_shift)
            for ell in (2, 3):
                assert hecke_image(base, ell) == hecke_image(other, ell)


def test_negative_weight_classes():
    piece = graded_piece(5, -6)
    assert piece.dim == 1
    m = hecke_matrix(5, -6, 2)
    # class weight -6 = 6*(-1): eigenvalue ell^-1 + ell^-2
    expect = (pow(2, 3, 5) + pow(2, 6, 5)) % 5
    assert m.rows == ((expect,),)


# -- the two theorem-level identities ---------------------------------------

def test_power_identity_all_primes():
    for p in PRIMES:
        assert power_identity_holds(p)


def test_multiplier_commutation_small_span():
    for p in PRIMES:
        for ell in (2, 3):
            if ell != p:
                assert multiplier_commutation_holds(p, ell, span=12)


# -- the eisenstein eigensearch ---------------------------------------------

def test_eisenstein_embedding_frozen():
    # the weight-4 class at p=5 is the hasse form itself, so the piece is
    # empty and the congruence prediction comes back unwitnessed
    assert eisenstein_embedding(5, 4, 4) == (True, False, None)
    assert eisenstein_embedding(5, 0, 0) == (True, True, (1,))
    assert eisenstein_embedding(5, 24, 0) == (True, True, (1,))
    assert eisenstein_embedding(5, 12, 0) == (False, False, None)
    assert eisenstein_embedding(5, 2, 2) == (True, False, None)
    pred, found, witness = eisenstein_embedding(7, 4, 4)
    assert (pred, found) == (True, True) and witness is not None
    # weight classes that only an exponent twin reaches
    assert eisenstein_embedding(5, 0, 4) == (False, True, (1,))
    assert eisenstein_embedding(7, 8, 2) == (False, True, (1,))
    with pytest.raises(ValueError):
        eisenstein_embedding(5, 0, 1)


def test_embedding_search_on_dim_two_piece():
    # p = 11, class 0 has dimension two; the constant class is the
    # simultaneous eigenvector for weight 0
    pred, found, witness = eisenstein_embedding(11, 0, 0)
    assert pred and found
    piece = graded_piece(11, 0)
    one = IsobaricPoly.one(11)
    coords = piece.coordinates(one)
    w = tuple(witness)
    scale = next(pow(c, 9, 11) * w[i] % 11
                 for i, c in enumerate(coords) if c)
    assert tuple(v * scale % 11 for v in coords) == w


# -- the bridge to formal groups --------------------------------------------

def test_companion_power_matches_second_probe():
    from sslab.fields import field
    from sslab.curves import standard_curve, ss_j_invariants
    from sslab.formal import FormalGroup
    for p in (5, 7):
        K = field(p, 2)
        j = ss_j_invariants(p)[0]
        E = standard_curve(K, j)
        assert not hasse_form(p).evaluate(E)
        B = hasse_companion(p).evaluate(E)
        u2 = FormalGroup(E, p * p + 2).p_series_coefficient(2)
        assert u2 == -B ** (p - 1)
