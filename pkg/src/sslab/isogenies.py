"""Separable and inseparable maps between curves in the flat model.

An isogeny here is a pair of rational maps (X(x), y * W(x)) together with
its books: domain, codomain, degree.  Quotients by explicit finite
subgroups are assembled pointwise in the function field F(x)[y]/(y^2 - rhs)
and the parts proportional to y are required to cancel over the +/- pairs
of the kernel; the codomain is recovered by a two-point linear solve and
then certified by the exact identity rhs'(X) = rhs * W^2.  Quotient maps
are normalized (they pull the invariant differential back to itself), so
their y-scale is the derivative of their x-map.
"""

import functools

from .curves import (Automorphism, Curve, Point, TwistMap, automorphisms,
                     division_polynomial, torsion_splitting_degree)
from .errors import (DegreeTooLarge, FieldMismatch, InseparableInput,
                     InseparableKernel, NoDecomposition, NotASubgroup,
                     NotSupersingular)
from .poly import (Poly, RationalFunction, factor, inverse_mod, pow_mod,
                   roots_in_field, squarefree_part)
from .formal import FormalGroup, LaurentSeries, Series

_COMPOSE_CAP = 2500


class Isogeny:
    """A map (x, y) -> (x_map(x), y * y_scale(x)) between two curves."""

    __slots__ = ("domain", "codomain", "x_map", "y_scale", "degree")

    def __init__(self, domain, codomain, x_map, y_scale, degree):
        object.__setattr__(self, "domain", domain)
        object.__setattr__(self, "codomain", codomain)
        object.__setattr__(self, "x_map", x_map)
        object.__setattr__(self, "y_scale", y_scale)
        object.__setattr__(self, "degree", degree)

    def __setattr__(self, name, value):
        raise AttributeError("isogenies are immutable")

    def __eq__(self, other):
        return (isinstance(other, Isogeny)
                and self.domain == other.domain
                and self.codomain == other.codomain
                and self.x_map == other.x_map
                and self.y_scale == other.y_scale)

    def __hash__(self):
        return hash((self.domain, self.codomain, self.x_map.num.coeffs,
                     self.x_map.den.coeffs))

    def __repr__(self):
        return (f"Isogeny(degree {self.degree}: {self.domain!r} -> "
                f"{self.codomain!r})")

    def __call__(self, P):
        if not isinstance(P, Point) or P.curve != self.domain:
            raise ValueError("point does not lie on the domain")
        if P.is_infinity():
            return self.codomain.infinity()
        if not self.x_map.den(P.x):
            return self.codomain.infinity()
        return self.codomain.point(self.x_map(P.x), P.y * self.y_scale(P.x))

    def is_separable(self):
        num, den = self.x_map.num, self.x_map.den
        return bool(num.derivative()) or bool(den.derivative())

    def separability_index(self):
        """The degree reduced mod p; zero exactly for inseparable maps."""
        return self.degree % self.domain.field.p

    def kernel_polynomial(self):
        """Monic squarefree polynomial vanishing on the kernel x-values."""
        if not self.is_separable():
            raise InseparableInput("an inseparable map has no point kernel")
        den = self.x_map.den
        if den.degree <= 0:
            return Poly.const(self.domain.field, 1)
        return squarefree_part(den)

    def base_change(self, K):
        def lift_poly(f):
            return Poly(K, [c.embed(K) for c in f.coeffs])

        def lift(rf):
            return RationalFunction(lift_poly(rf.num), lift_poly(rf.den))

        return Isogeny(self.domain.base_change(K), self.codomain.base_change(K),
                       lift(self.x_map), lift(self.y_scale), self.degree)

    # -- formal behaviour ---------------------------------------------------

    def formal_expansion(self, prec=8):
        """The induced map on formal parameters, as a power series in t."""
        fg = FormalGroup(self.domain,
                         prec=prec + 2 * max(self.x_map.degree(), 2) + 10)
        xs, ys = fg.x_series(), fg.y_series()

        def laurent_poly(f):
            F = self.domain.field
            acc = LaurentSeries(0, Series(F, [F.zero] * fg.prec))
            for c in reversed(f.coeffs):
                acc = acc * xs + LaurentSeries(
                    0, Series(F, [c] + [F.zero] * (fg.prec - 1)))
            return acc

        num = laurent_poly(self.x_map.num)
        den = laurent_poly(self.x_map.den)
        wn = laurent_poly(self.y_scale.num)
        wd = laurent_poly(self.y_scale.den)
        t_img = (num * wd * (-2)) * (den * wn * ys).inverse()
        ser = t_img.power_series_part()
        return ser.truncate(min(prec, ser.prec))

    def is_normalized(self):
        """Whether the formal expansion starts exactly at t."""
        ser = self.formal_expansion(prec=3)
        return ser.coeffs[1] == self.domain.field.one and not ser.coeffs[0]


def _sorted_points(pts):
    def key(P):
        if P.is_infinity():
            return (0, (), ())
        return (1, P.x.coeffs, P.y.coeffs)
    return sorted(pts, key=key)


def velu(curve, kernel):
    """Quotient of a curve by an explicit finite subgroup of its points.

    The kernel must contain the point at infinity and be closed under the
    group law.  The result is the normalized separable isogeny with exactly
    that kernel.
    """
    pts = list(kernel)
    if not pts:
        raise NotASubgroup("the kernel must contain the point at infinity")
    for P in pts:
        if not isinstance(P, Point):
            raise NotASubgroup(f"{P!r} is not a point")
        if P.curve != curve:
            raise NotASubgroup(f"{P!r} does not lie on {curve!r}")
    pset = set(pts)
    if len(pset) != len(pts):
        raise NotASubgroup("kernel listed a point twice")
    if curve.infinity() not in pset:
        raise NotASubgroup("the kernel must contain the point at infinity")
    for P in pset:
        if -P not in pset:
            raise NotASubgroup(f"kernel is not closed under negation at {P!r}")
    for P in pset:
        for Q in pset:
            if P + Q not in pset:
                raise NotASubgroup(
                    f"kernel is not closed under addition at {P!r} + {Q!r}")

    F = curve.field
    x = RationalFunction(Poly.x(F))
    rhs = RationalFunction(curve.rhs_poly())
    quarter = F.element(4).inverse()
    half2 = F.element(2).inverse()
    even_part = x
    odd_part = RationalFunction(Poly(F, []))
    for Q in _sorted_points(pset):
        if Q.is_infinity():
            continue
        shift = RationalFunction(Poly(F, [-Q.x, F.one]))
        inv_sq = 1 / (shift * shift)
        # x(P + Q) - x(Q) with y^2 reduced to rhs(x); the y-linear piece
        # must die once the whole +/- symmetric kernel is summed
        even_part = even_part + (rhs + Q.y * Q.y) * inv_sq * quarter - x - 2 * Q.x
        odd_part = odd_part + (-Q.y) * inv_sq * half2
    if odd_part:
        raise NotASubgroup("kernel is not symmetric under negation")
    X = even_part
    m = len(pset)
    assert max(X.num.degree, X.den.degree) == m, "quotient degree is off"
    W = X.derivative()
    a2, b2 = _solve_codomain(curve, X, W)
    codomain = Curve(F, a2, b2)
    return Isogeny(curve, codomain, X, W, m)


def _solve_codomain(curve, X, W):
    """Find (a', b') with 4X^3 - a'X - b' = rhs * W^2, then certify it."""
    F = curve.field
    rhs = RationalFunction(curve.rhs_poly())
    G = 4 * (X * X * X) - rhs * (W * W)
    samples = []
    for xv in F.elements():
        if not X.den(xv) or not G.den(xv):
            continue
        Xv = X(xv)
        if any(Xv == prev for prev, _ in samples):
            continue
        samples.append((Xv, G(xv)))
        if len(samples) == 2:
            break
    (X0, G0), (X1, G1) = samples
    a2 = (G0 - G1) / (X0 - X1)
    b2 = G0 - a2 * X0
    assert G == a2 * X + b2, "codomain identity failed symbolically"
    return a2, b2


def multiplication_isogeny(curve, n):
    """Multiplication by n as an explicit isogeny of degree n^2."""
    if n < 1:
        raise ValueError("n must be positive")
    F = curve.field
    X = _multiplication_x(curve, n)
    # y-scale from the doubled index: v-part of psi_(2n) over 2 psi_n^4
    from .curves import _psi_pair
    un, vn = _psi_pair(curve, n)
    u2n, v2n = _psi_pair(curve, 2 * n)
    assert u2n.is_zero(), "even-index division value should be y-proportional"
    fs = curve.short_rhs_poly()
    if n % 2:
        psi4 = un ** 4
    else:
        psi4 = (vn * vn * fs) ** 2
    W = RationalFunction(v2n, 2 * psi4)
    return Isogeny(curve, curve, X, W, n * n)


def _multiplication_x(curve, n):
    from .curves import _psi_pair
    F = curve.field
    if n == 1:
        return RationalFunction(Poly.x(F))
    fs = curve.short_rhs_poly()
    um, vm = _psi_pair(curve, n)
    up, vp = _psi_pair(curve, n + 1)
    uq, vq = _psi_pair(curve, n - 1)
    if n % 2:
        num_shift = vp * vq * fs
        den = um * um
    else:
        num_shift = up * uq
        den = vm * vm * fs
    X = RationalFunction(Poly.x(F)) - RationalFunction(num_shift, den)
    assert max(X.num.degree, X.den.degree) == n * n, "x-map degree is off"
    return X


def char_multiplication_isogeny(curve):
    """Multiplication by the field characteristic as an explicit map.

    Division-polynomial indices divisible by p are off limits, so [p] is
    completed from [p - 1] by one chord addition with the identity map:
    the slope through ([p-1]P, P) is y * (W - 1)/(X - x), its square
    trades y^2 for the curve equation, and the secant formulas stay
    rational in x.
    """
    F = curve.field
    p = F.p
    phi = multiplication_isogeny(curve, p - 1)
    x = RationalFunction(Poly.x(F))
    X, W = phi.x_map, phi.y_scale
    rhs = RationalFunction(curve.rhs_poly())
    mfac = (W - 1) / (X - x)
    quarter = F.element(4).inverse()
    x3 = rhs * mfac * mfac * quarter - X - x
    w3 = -(W + mfac * (x3 - X))
    assert max(x3.num.degree, x3.den.degree) == p * p, "x-map degree is off"
    return Isogeny(curve, curve, x3, w3, p * p)


def negation_isogeny(curve):
    """Multiplication by -1 as a degree-one isogeny."""
    F = curve.field
    return Isogeny(curve, curve, RationalFunction(Poly.x(F)),
                   RationalFunction(Poly.const(F, -1)), 1)


def frobenius_isogeny(curve, m=1):
    """The p^m power Frobenius onto the coefficientwise-conjugated curve."""
    if m < 1:
        raise ValueError("m must be positive")
    F = curve.field
    q = F.p ** m
    if 3 * q > _COMPOSE_CAP * 2:
        raise DegreeTooLarge(f"frobenius power {m} is too large here")
    codomain = Curve(F, curve.a ** q, curve.b ** q)
    X = RationalFunction(Poly.x(F) ** q)
    W = RationalFunction(curve.rhs_poly() ** ((q - 1) // 2))
    return Isogeny(curve, codomain, X, W, q)


def twist_isogeny(tau):
    """A twist map repackaged as a degree-one isogeny."""
    if not isinstance(tau, TwistMap):
        raise ValueError("expected a twist map")
    F = tau.domain.field
    v = tau.v
    X = RationalFunction(Poly(F, [F.zero, v * v]))
    W = RationalFunction(Poly.const(F, v ** 3))
    return Isogeny(tau.domain, tau.codomain, X, W, 1)


def automorphism_isogeny(aut):
    """An automorphism (x, y) -> (z^2 x, z^3 y) repackaged as an isogeny."""
    if not isinstance(aut, Automorphism):
        raise ValueError("expected an automorphism")
    F = aut.curve.field
    z = aut.zeta
    X = RationalFunction(Poly(F, [F.zero, z * z]))
    W = RationalFunction(Poly.const(F, z ** 3))
    return Isogeny(aut.curve, aut.curve, X, W, 1)


def frobenius_squared_decomposition(curve):
    """Write the squared Frobenius as automorphism-after-[p], or refuse.

    Needs coefficients fixed by the p^2 power map so that both sides are
    endomorphisms; the rational maps are compared exactly in lowest
    terms.  On an ordinary curve no automorphism closes the triangle and
    NotSupersingular is raised.
    """
    fr2 = frobenius_isogeny(curve, 2)
    if fr2.codomain != curve:
        raise ValueError("coefficients must be fixed by the p^2 power map")
    mult = char_multiplication_isogeny(curve)
    for aut in automorphisms(curve):
        if compose(automorphism_isogeny(aut), mult) == fr2:
            return aut
    raise NotSupersingular("the squared frobenius is not an automorphism "
                           "composed with [p]")


def compose(outer, inner):
    """outer after inner; degrees multiply."""
    if inner.codomain != outer.domain:
        raise FieldMismatch("the inner codomain is not the outer domain")
    dx = max(outer.x_map.degree(), outer.y_scale.degree())
    if dx * max(inner.x_map.degree(), 1) > _COMPOSE_CAP:
        raise DegreeTooLarge("symbolic composition would be too large; "
                             "compare the maps pointwise instead")

    def through(f):
        num = _poly_at_rational(f.num, inner.x_map)
        den = _poly_at_rational(f.den, inner.x_map)
        return num / den

    X = through(outer.x_map)
    W = through(outer.y_scale) * inner.y_scale
    return Isogeny(inner.domain, outer.codomain, X, W,
                   outer.degree * inner.degree)


def _poly_at_rational(f, r):
    F = f.field
    acc = RationalFunction(Poly(F, []))
    for c in reversed(f.coeffs):
        acc = acc * r + c
    return acc


def agree_on(phi, psi, points):
    """Pointwise equality of two maps on an iterable of points."""
    return all(phi(P) == psi(P) for P in points)


def _sample_points(curve, count=8):
    out = []
    for P in curve.points():
        out.append(P)
        if len(out) >= count:
            break
    return out


# -- torsion subgroups ------------------------------------------------------

def torsion_points(curve, n):
    """All n-torsion points, over the canonical splitting extension.

    Returns (extended curve, points); the extension degree respects the
    environment cap on extension size.
    """
    d = torsion_splitting_degree(curve, n)
    K = curve.field.extension(d) if d > 1 else curve.field
    EK = curve.base_change(K)
    pts = [EK.infinity()]
    h = division_polynomial(EK, n)
    for r in roots_in_field(h):
        P = EK.lift_x(r)
        pts.append(P)
        if P.y:
            pts.append(-P)
    expected = n * n
    assert len(pts) == expected, f"expected {expected} points, got {len(pts)}"
    return EK, _sorted_points(pts)


def torsion_subgroups(curve, ell):
    """The ell + 1 cyclic subgroups of the ell-torsion, ell prime."""
    EK, pts = torsion_points(curve, ell)
    remaining = [P for P in pts if not P.is_infinity()]
    seen = set()
    subgroups = []
    for P in remaining:
        if P in seen:
            continue
        group = [EK.infinity()]
        Q = P
        while not Q.is_infinity():
            group.append(Q)
            seen.add(Q)
            Q = Q + P
        subgroups.append(_sorted_points(group))
    assert len(subgroups) == ell + 1, "wrong subgroup count"
    return EK, subgroups


def torsion_quotient(curve, n):
    """Quotient by the full n-torsion; p must not divide n.

    When p divides n the n-torsion subgroup scheme has a connected piece
    that no list of points can represent, so the quotient assembled here
    would be wrong; that case is refused.
    """
    if n % curve.field.p == 0:
        raise InseparableKernel(
            f"the {n}-torsion of a characteristic {curve.field.p} curve "
            f"is not a listable kernel")
    EK, pts = torsion_points(curve, n)
    return velu(EK, pts)


# -- duals ------------------------------------------------------------------

def dual_isogeny(phi):
    """The isogeny back with composite equal to multiplication by the degree.

    Built over the splitting field of the degree-torsion of the domain:
    push the full n-torsion through phi, quotient the codomain by the
    image, and untwist the result onto the domain.
    """
    if not phi.is_separable():
        raise InseparableInput("dual construction needs a separable map")
    n = phi.degree
    EK, pts = torsion_points(phi.domain, n)
    K = EK.field
    phiK = phi.base_change(K) if K is not phi.domain.field else phi
    images = {phiK(P) for P in pts}
    assert len(images) == n, "image of the n-torsion has the wrong size"
    back = velu(phiK.codomain, images)
    expected = phiK.domain.twist(K.element(n * n))
    assert back.codomain == expected, "quotient landed on an unexpected twist"
    tau = TwistMap(back.codomain, K.element(n).inverse())
    assert tau.codomain == phiK.domain
    return compose(twist_isogeny(tau), back)


# -- inseparable factorization ----------------------------------------------

def _exponents_divided(f, p):
    if any(c and (i % p) for i, c in enumerate(f.coeffs)):
        return None
    return Poly(f.field, [f.coeffs[i] for i in range(0, len(f.coeffs), p)])


def separable_factorization(phi):
    """Write the map as (separable part) after (power of Frobenius).

    Returns (m, psi) with phi = psi o frobenius^m and psi separable.
    """
    p = phi.domain.field.p
    m = 0
    cur = phi
    while not cur.is_separable():
        num = _exponents_divided(cur.x_map.num, p)
        den = _exponents_divided(cur.x_map.den, p)
        if num is None or den is None:
            raise NoDecomposition("x-map is not a series in x^p")
        rhs_half = cur.domain.rhs_poly() ** ((p - 1) // 2)
        w_shifted = cur.y_scale / RationalFunction(rhs_half)
        wn = _exponents_divided(w_shifted.num, p)
        wd = _exponents_divided(w_shifted.den, p)
        if wn is None or wd is None:
            raise NoDecomposition("y-scale does not factor through frobenius")
        new_domain = Curve(cur.domain.field,
                           cur.domain.a ** p, cur.domain.b ** p)
        if cur.degree % p:
            raise NoDecomposition("degree is prime to p but the map looks "
                                  "inseparable")
        cur = Isogeny(new_domain, cur.codomain,
                      RationalFunction(num, den),
                      RationalFunction(wn, wd), cur.degree // p)
        m += 1
    if m:
        frob = frobenius_isogeny(phi.domain, m)
        if frob.codomain != cur.domain:
            raise NoDecomposition("frobenius landed off the separable part")
        K = phi.domain.field.extension(2)
        phiK, curK = phi.base_change(K), cur.base_change(K)
        frobK = frobenius_isogeny(phiK.domain, m)
        for P in _sample_points(phiK.domain, 12):
            if phiK(P) != curK(frobK(P)):
                raise NoDecomposition("reassembly disagrees with the input")
    return m, cur


# -- supersingular isogeny graphs -------------------------------------------

@functools.lru_cache(maxsize=None)
def _subfield_table(K, k):
    """Map from embedded images in K back to the subfield of degree k."""
    from .fields import field
    sub = field(K.p, k)
    return sub, {e.embed(K): e for e in sub.elements()}


def project_to_quadratic(elem):
    """Express a field element inside the quadratic subfield, if it fits."""
    K = elem.field
    if K.k == 2:
        return elem
    sub, table = _subfield_table(K, 2)
    try:
        return table[elem]
    except KeyError:
        raise FieldMismatch(f"{elem!r} does not lie in the quadratic subfield")


def ell_isogenous_j_invariants(curve, ell):
    """The multiset of j-invariants ell-isogenous to the given curve,
    expressed in the quadratic subfield of the splitting extension."""
    EK, subgroups = torsion_subgroups(curve, ell)
    out = []
    for group in subgroups:
        step = velu(EK, group)
        out.append(project_to_quadratic(step.codomain.j))
    return sorted(out, key=lambda e: e.coeffs)


def _charpoly_of_multiplication(r, m):
    """det(X - M) for M the multiplication-by-r operator on F[x]/(m).

    Expanded by the Leibniz sum, which is fine at the degrees (at most 4)
    this is used for.
    """
    from itertools import permutations
    F = m.field
    d = m.degree
    x = Poly.x(F)
    cols = []
    for i in range(d):
        ri = (r * pow_mod(x, i, m)) % m
        cols.append([ri.coeff(k) for k in range(d)])
    total = Poly.const(F, 0)
    for perm in permutations(range(d)):
        inversions = sum(1 for i in range(d) for j in range(i + 1, d)
                         if perm[i] > perm[j])
        term = Poly.const(F, -1 if inversions % 2 else 1)
        for col in range(d):
            row = perm[col]
            if row == col:
                term = term * Poly(F, [-cols[col][row], F.one])
            else:
                term = term * Poly.const(F, -cols[col][row])
        total = total + term
    return total


def _linear_kernel_neighbors(curve, ell):
    """Neighbor j-invariants for ell in {2, 3} without leaving the base field.

    Every kernel polynomial is linear for these degrees, so the codomain
    j-invariant is a fixed rational expression J(x0) in the corresponding
    division-polynomial root x0.  Rather than chasing the roots into their
    splitting fields, push J through each irreducible factor as a
    multiplication operator on the quotient ring; the factor's contribution
    to the edge multiset is the operator's spectrum.  Returns None when
    some neighbor does not lie in the base field (possible for ordinary
    curves); callers then fall back to the point-based route.
    """
    if ell not in (2, 3):
        raise ValueError("the linear-kernel route covers degrees 2 and 3")
    F = curve.field
    quarter = F.element(4).inverse()
    A = -curve.a * quarter
    B = -curve.b * quarter

    def const(n):
        return Poly.const(F, F.element(n % F.p))

    xpoly = division_polynomial(curve, ell).monic()
    out = []
    for fac, mult in factor(xpoly):
        assert mult == 1, "torsion away from p is etale"
        t = Poly.x(F) % fac
        ca, cb = Poly.const(F, A), Poly.const(F, B)
        if ell == 2:
            v = (const(3) * t * t + ca) % fac
            w = (t * v) % fac
        else:
            v = (const(6) * t * t + const(2) * ca) % fac
            u = (const(4) * (t * t * t + ca * t + cb)) % fac
            w = (u + t * v) % fac
        big_a = (ca - const(5) * v) % fac
        big_b = (cb - const(7) * w) % fac
        a2 = (const(-4) * big_a) % fac
        b2 = (const(-4) * big_b) % fac
        cube = (a2 * a2 * a2) % fac
        den = (cube - const(27) * b2 * b2) % fac
        jr = (const(1728) * cube * inverse_mod(den, fac)) % fac
        if fac.degree == 1:
            out.append(jr.coeff(0))
            continue
        spectrum = _charpoly_of_multiplication(jr, fac)
        for lin, e in factor(spectrum):
            if lin.degree != 1:
                return None
            out.extend([-lin.coeff(0)] * e)
    return sorted(out, key=lambda r: r.coeffs)


def ss_isogeny_graph(p, ell):
    """Adjacency of the supersingular ell-isogeny graph in characteristic p.

    Vertices are the supersingular j-invariants in the quadratic field;
    each vertex carries its ell + 1 outgoing edges with multiplicity.
    """
    from .curves import ss_j_invariants, standard_curve
    from .fields import field
    js = ss_j_invariants(p)
    K = field(p, 2)
    adjacency = []
    for j in js:
        E = standard_curve(K, j)
        row = _linear_kernel_neighbors(E, ell) if ell in (2, 3) else None
        if row is None:
            row = ell_isogenous_j_invariants(E, ell)
        adjacency.append(row)
    return {"p": p, "ell": ell, "vertices": js, "adjacency": adjacency}


def graph_is_connected(graph):
    """Breadth-first reachability over a table built by ss_isogeny_graph."""
    verts = list(graph["vertices"])
    if not verts:
        return True
    rows = dict(zip(verts, graph["adjacency"]))
    seen = {verts[0]}
    frontier = [verts[0]]
    while frontier:
        nxt = []
        for v in frontier:
            for w in rows[v]:
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        frontier = nxt
    return len(seen) == len(verts)
