"""Tests for explicit isogenies: quotients, duals, factorization, graphs."""

import pytest

from sslab.curves import Curve, TwistMap, point_count
from sslab.errors import (InseparableInput, InseparableKernel, NoDecomposition,
                          NotASubgroup)
from sslab.fields import field
from sslab.isogenies import (Isogeny, agree_on, compose, dual_isogeny,
                             ell_isogenous_j_invariants, frobenius_isogeny,
                             multiplication_isogeny, negation_isogeny,
                             project_to_quadratic, separable_factorization,
                             ss_isogeny_graph, torsion_points,
                             torsion_quotient, torsion_subgroups,
                             twist_isogeny, velu, _linear_kernel_neighbors,
                             _sample_points)
from sslab.poly import Poly, RationalFunction


def _curve(p, a, b, k=1):
    F = field(p, k)
    return Curve(F, F.element(a), F.element(b))


# -- quotient construction --------------------------------------------------

def test_trivial_kernel_gives_identity():
    E = _curve(13, 1, 2)
    phi = velu(E, [E.infinity()])
    assert phi.degree == 1
    assert phi.codomain == E
    assert phi.x_map == RationalFunction(Poly.x(E.field))
    for P in _sample_points(E):
        assert phi(P) == P


def test_two_isogeny_basics():
    E = _curve(13, 1, 2)
    EK, subs = torsion_subgroups(E, 2)
    phi = velu(EK, subs[0])
    assert phi.degree == 2
    assert phi.is_separable()
    assert phi.separability_index() == 2
    assert phi.is_normalized()
    # isogenous curves over the same field have the same point count
    assert point_count(phi.codomain) == point_count(EK)
    # kernel polynomial is the monic linear factor at the 2-torsion x
    ker_x = subs[0][1].x
    assert phi.kernel_polynomial() == Poly(EK.field, [-ker_x, EK.field.one])
    # kernel maps to the point at infinity, nothing else does
    assert phi(subs[0][1]).is_infinity()
    for P in _sample_points(EK, 6):
        if P not in subs[0]:
            assert not phi(P).is_infinity()


def test_three_isogeny_over_quadratic_field():
    E = _curve(5, 0, 4, k=2)
    EK, subs = torsion_subgroups(E, 3)
    assert EK.field is E.field  # the full 3-torsion is already rational here
    assert len(subs) == 4
    for group in subs:
        phi = velu(EK, group)
        assert phi.degree == 3
        assert phi.is_normalized()
        assert point_count(phi.codomain) == point_count(EK)


def test_kernel_validation():
    E = _curve(13, 1, 2)
    other = _curve(13, 1, 5)
    P = next(iter(p for p in E.points() if not p.is_infinity()))
    with pytest.raises(NotASubgroup):
        velu(E, [])
    with pytest.raises(NotASubgroup):
        velu(E, [P])  # misses the point at infinity
    with pytest.raises(NotASubgroup):
        velu(E, [E.infinity(), E.infinity()])
    with pytest.raises(NotASubgroup):
        velu(E, [E.infinity()] + [p for p in other.points()][:1])
    if P.order() > 3:
        with pytest.raises(NotASubgroup):
            velu(E, [E.infinity(), P, -P])  # not closed under addition


def test_torsion_quotient_matches_multiplication_j():
    E = _curve(13, 1, 2)
    phi = torsion_quotient(E, 2)
    assert phi.degree == 4
    # E/E[n] is a twist of E, so the j-invariant comes back
    assert phi.codomain.j == phi.domain.j


def test_torsion_quotient_refuses_p_kernel():
    E = _curve(5, 1, 1)
    with pytest.raises(InseparableKernel):
        torsion_quotient(E, 5)
    with pytest.raises(InseparableKernel):
        torsion_quotient(E, 10)


# -- multiplication and frobenius -------------------------------------------

@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_multiplication_isogeny_pointwise(n):
    E = _curve(13, 1, 2)
    phi = multiplication_isogeny(E, n)
    assert phi.degree == n * n
    for P in _sample_points(E, 10):
        assert phi(P) == n * P
    K = E.field.extension(2)
    phiK = phi.base_change(K)
    for P in _sample_points(E.base_change(K), 8):
        assert phiK(P) == n * P


def test_multiplication_formal_expansion_scales_by_n():
    E = _curve(7, 1, 3)
    for n in (2, 3):
        ser = multiplication_isogeny(E, n).formal_expansion(prec=4)
        assert ser.coeffs[1] == E.field.element(n)
        assert not ser.coeffs[0]


def test_multiplication_y_scale_is_derivative_over_n():
    # for n prime to p the map is [n]-normalized: W = X' / n
    E = _curve(11, 3, 8)
    for n in (2, 3):
        phi = multiplication_isogeny(E, n)
        lhs = phi.y_scale * n
        assert lhs == phi.x_map.derivative()


def test_frobenius_isogeny():
    E = _curve(7, 1, 3)
    fr = frobenius_isogeny(E)
    assert fr.degree == 7
    assert not fr.is_separable()
    assert fr.separability_index() == 0
    for P in _sample_points(E, 8):
        img = fr(P)
        if not P.is_infinity():
            assert img.x == P.x ** 7 and img.y == P.y ** 7
    with pytest.raises(InseparableInput):
        fr.kernel_polynomial()
    # stacking one frobenius on another is the square
    fr2 = compose(frobenius_isogeny(fr.codomain), fr)
    direct = frobenius_isogeny(E, 2)
    assert fr2.x_map == direct.x_map
    assert fr2.y_scale == direct.y_scale


def test_composition_of_multiplications():
    E = _curve(5, 1, 1)
    m2, m3 = multiplication_isogeny(E, 2), multiplication_isogeny(E, 3)
    m6 = compose(m2, m3)
    direct = multiplication_isogeny(E, 6)
    assert m6.degree == 36
    assert m6.x_map == direct.x_map
    assert m6.y_scale == direct.y_scale


def test_separability_index_is_multiplicative():
    E = _curve(5, 1, 1)
    m2, m3 = multiplication_isogeny(E, 2), multiplication_isogeny(E, 3)
    assert compose(m2, m3).separability_index() == \
        m2.separability_index() * m3.separability_index() % 5
    fr = frobenius_isogeny(E)
    assert compose(fr, m2).separability_index() == 0


def test_twist_isogeny_matches_twist_map():
    F = field(13)
    E = _curve(13, 1, 2)
    tau = TwistMap(E, F.element(2))
    iso = twist_isogeny(tau)
    assert iso.degree == 1
    for P in _sample_points(E, 8):
        assert iso(P) == tau(P)


# -- duals ------------------------------------------------------------------

def test_dual_of_two_isogeny_is_multiplication_by_two():
    E = _curve(13, 1, 2)
    EK, subs = torsion_subgroups(E, 2)
    phi = velu(EK, subs[0])
    back = dual_isogeny(phi)
    assert back.degree == 2
    comp = compose(back, phi)
    m2 = multiplication_isogeny(phi.domain, 2)
    assert comp.x_map == m2.x_map
    assert comp.y_scale == m2.y_scale


def test_dual_of_three_isogeny_pointwise():
    E = _curve(5, 0, 4, k=2)
    EK, subs = torsion_subgroups(E, 3)
    phi = velu(EK, subs[1])
    back = dual_isogeny(phi)
    m3 = multiplication_isogeny(phi.domain, 3)
    for P in _sample_points(phi.domain, 12):
        assert back(phi(P)) == m3(P)


def test_dual_needs_separable_input():
    E = _curve(7, 1, 3)
    with pytest.raises(InseparableInput):
        dual_isogeny(frobenius_isogeny(E))


# -- separable factorization ------------------------------------------------

def test_multiplication_by_p_on_supersingular_curve_is_negated_bifrobenius():
    E = _curve(5, 0, 4)
    m5 = multiplication_isogeny(E, 5)
    assert not m5.is_separable()
    m, sep = separable_factorization(m5)
    assert m == 2
    assert sep.degree == 1
    assert sep.x_map == RationalFunction(Poly.x(E.field))
    assert sep.y_scale == RationalFunction(Poly.const(E.field, -1))
    # so multiplication by p is literally negation after double frobenius
    rebuilt = compose(negation_isogeny(E), frobenius_isogeny(E, 2))
    assert rebuilt.x_map == m5.x_map
    assert rebuilt.y_scale == m5.y_scale


def test_multiplication_by_p_on_ordinary_curve_unwinds_once():
    E = _curve(5, 1, 1)
    m, sep = separable_factorization(multiplication_isogeny(E, 5))
    assert m == 1
    assert sep.degree == 5
    assert sep.is_separable()
    assert sep.kernel_polynomial().degree == 2


def test_factorization_of_separable_map_is_trivial():
    E = _curve(5, 0, 4)
    m2 = multiplication_isogeny(E, 2)
    m, sep = separable_factorization(m2)
    assert m == 0 and sep is m2


def test_factorization_of_frobenius_power():
    E = _curve(7, 1, 3)
    m, sep = separable_factorization(frobenius_isogeny(E, 2))
    assert m == 2 and sep.degree == 1
    assert sep.x_map == RationalFunction(Poly.x(E.field))


def test_no_decomposition_for_inconsistent_map():
    # an x-map through frobenius paired with a y-scale that is not
    E = _curve(5, 1, 1)
    F = E.field
    fake = Isogeny(E, Curve(F, E.a ** 5, E.b ** 5),
                   RationalFunction(Poly.x(F) ** 5),
                   RationalFunction(Poly.const(F, 1)), 5)
    with pytest.raises(NoDecomposition):
        separable_factorization(fake)


# -- base change ------------------------------------------------------------

def test_base_change_commutes_with_evaluation():
    E = _curve(13, 1, 2)
    phi = multiplication_isogeny(E, 2)
    K = E.field.extension(2)
    phiK = phi.base_change(K)
    EK = E.base_change(K)
    for P in _sample_points(E, 6):
        if P.is_infinity():
            continue
        PK = EK.point(P.x.embed(K), P.y.embed(K))
        img, imgK = phi(P), phiK(PK)
        assert imgK.x == img.x.embed(K) and imgK.y == img.y.embed(K)


# -- torsion bookkeeping ----------------------------------------------------

def test_torsion_point_counts():
    E = _curve(13, 1, 2)
    for n in (2, 3):
        EK, pts = torsion_points(E, n)
        assert len(pts) == n * n
        for P in pts:
            assert (n * P).is_infinity()


def test_torsion_subgroup_partition():
    E = _curve(13, 1, 2)
    EK, subs = torsion_subgroups(E, 3)
    assert len(subs) == 4
    seen = set()
    for group in subs:
        assert len(group) == 3
        seen.update(P for P in group if not P.is_infinity())
    assert len(seen) == 8


# -- supersingular graphs ---------------------------------------------------

def _as_ints(graph):
    verts = [tuple(int(c) for c in v.coeffs) for v in graph["vertices"]]
    adj = [[tuple(int(c) for c in w.coeffs) for w in row]
           for row in graph["adjacency"]]
    return verts, adj


def test_graph_frozen_small_primes():
    verts, adj = _as_ints(ss_isogeny_graph(5, 2))
    assert verts == [(0, 0)] and adj == [[(0, 0)] * 3]
    verts, adj = _as_ints(ss_isogeny_graph(7, 3))
    assert verts == [(6, 0)] and adj == [[(6, 0)] * 4]
    verts, adj = _as_ints(ss_isogeny_graph(13, 2))
    assert verts == [(5, 0)] and adj == [[(5, 0)] * 3]


def test_graph_p11_brandt_structure():
    from sslab.curves import automorphisms, standard_curve
    K = field(11, 2)
    verts, adj = _as_ints(ss_isogeny_graph(11, 2))
    assert verts == [(0, 0), (1, 0)]
    assert adj[0] == [(1, 0)] * 3
    assert sorted(adj[1]) == [(0, 0), (0, 0), (1, 0)]
    for ell in (2, 3):
        g = ss_isogeny_graph(11, ell)
        counts = [[row.count(w) for w in g["vertices"]] for row in g["adjacency"]]
        weights = [len(automorphisms(standard_curve(K, j))) // 2
                   for j in g["vertices"]]
        # weighted symmetry of the edge counts between the two vertices
        assert counts[0][1] * weights[1] == counts[1][0] * weights[0]
    verts, adj = _as_ints(ss_isogeny_graph(11, 3))
    assert adj[0].count((0, 0)) == 1 and adj[0].count((1, 0)) == 3
    assert adj[1].count((0, 0)) == 2 and adj[1].count((1, 0)) == 2


def test_graph_regularity():
    for p, ell in ((5, 3), (7, 2), (13, 3)):
        g = ss_isogeny_graph(p, ell)
        for row in g["adjacency"]:
            assert len(row) == ell + 1


def test_neighbors_live_in_quadratic_field():
    E = _curve(11, 0, 4, k=2)  # j = 0 is supersingular at 11
    for j in ell_isogenous_j_invariants(E, 2):
        assert j.field.k == 2


def test_project_to_quadratic():
    K = field(5, 2)
    big = field(5, 4)
    e = K.element((3, 2))
    assert project_to_quadratic(e.embed(big)) == e
    gen = big.generator()
    from sslab.errors import FieldMismatch
    if gen.subfield_degree() == 4:
        with pytest.raises(FieldMismatch):
            project_to_quadratic(gen)


# -- multiplication by the characteristic and frobenius squared -------------

def test_char_multiplication_pointwise():
    from sslab.isogenies import char_multiplication_isogeny
    E = _curve(5, 1, 1, k=2)
    m5 = char_multiplication_isogeny(E)
    assert m5.degree == 25
    assert all(m5(P) == 5 * P for P in E.points())


def test_char_multiplication_commutes_with_doubling():
    from sslab.isogenies import char_multiplication_isogeny
    E = _curve(5, 1, 1, k=2)
    m5 = char_multiplication_isogeny(E)
    m2 = multiplication_isogeny(E, 2)
    assert compose(m2, m5) == compose(m5, m2)


def test_automorphism_isogeny_negation():
    from sslab.curves import Automorphism
    from sslab.isogenies import automorphism_isogeny
    E = _curve(13, 2, 3)
    aut = Automorphism(E, E.field.element(-1))
    assert automorphism_isogeny(aut) == negation_isogeny(E)


def test_frobenius_squared_is_minus_p_on_ss_standard_curves():
    # standard models have coefficients down in F_p where the trace is
    # zero, so the squared frobenius is exactly -[p]
    from sslab.curves import ss_j_invariants, standard_curve
    from sslab.isogenies import frobenius_squared_decomposition
    for p in (5, 7, 13):
        K = field(p, 2)
        for j in ss_j_invariants(p):
            E = standard_curve(K, j)
            aut = frobenius_squared_decomposition(E)
            assert aut.zeta == K.element(-1)


def test_frobenius_squared_refuses_ordinary():
    from sslab.errors import NotSupersingular
    from sslab.isogenies import frobenius_squared_decomposition
    with pytest.raises(NotSupersingular):
        frobenius_squared_decomposition(_curve(7, 1, 1, k=2))


def test_frobenius_squared_needs_stable_coefficients():
    from sslab.isogenies import frobenius_squared_decomposition
    big = field(5, 4)
    a = big.generator()
    if a ** 25 != a:
        with pytest.raises(ValueError):
            frobenius_squared_decomposition(Curve(big, a, big.element(1)))


def test_graph_connectivity():
    from sslab.isogenies import graph_is_connected
    assert graph_is_connected(ss_isogeny_graph(11, 2))
    assert graph_is_connected(ss_isogeny_graph(13, 3))
    assert not graph_is_connected({"vertices": ["u", "v"],
                                   "adjacency": [["u"], ["v"]]})


def test_linear_kernel_neighbors_match_point_route():
    from sslab.curves import ss_j_invariants, standard_curve
    for p in (11, 13, 17):
        K = field(p, 2)
        for ell in (2, 3):
            for j in ss_j_invariants(p):
                E = standard_curve(K, j)
                assert (_linear_kernel_neighbors(E, ell)
                        == ell_isogenous_j_invariants(E, ell))


def test_linear_kernel_neighbors_rejects_big_degree():
    E = _curve(11, 1, 1, k=2)
    with pytest.raises(ValueError):
        _linear_kernel_neighbors(E, 5)
