"""Elliptic curves in the flat model y^2 = 4*x^3 - a*x - b.

The characteristic is always at least 5.  Attached quantities follow the
normalizations c4 = 12*a, c6 = -216*b, disc = a^3 - 27*b^2 and
j = 1728*a^3 / disc, so disc = (c4^3 - c6^2)/1728 and j = c4^3/disc.

A curve remembers its field; points carry their curve.  The point at
infinity is represented with x = y = None.  Scalar multiples, twists,
automorphisms, division polynomials, the Deuring supersingularity test and
the census of supersingular j-invariants all live here.
"""

import functools
import os

import numpy as np

from .errors import (
    BadN,
    ExtensionTooLarge,
    FieldTooSmall,
    NotAnAutomorphism,
    SingularCurve,
    TooLarge,
    ZeroTwist,
)
from .fields import field
from .poly import Poly, factor, pow_mod, roots_in_field

_SS_ENUM_CAP = 200


def max_extension():
    """Current cap on field extension degrees, from SSLAB_MAX_EXT."""
    return int(os.environ.get("SSLAB_MAX_EXT", "12"))


class Curve:
    __slots__ = ("field", "a", "b", "_hash")

    def __init__(self, F, a, b):
        if F.p < 5:
            raise FieldTooSmall(
                f"curves need characteristic at least 5, got {F.p}")
        a, b = F.element(a), F.element(b)
        if not (a ** 3 - 27 * b * b):
            raise SingularCurve(f"a={a!r}, b={b!r} has zero discriminant")
        object.__setattr__(self, "field", F)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "_hash",
                           hash((id(F), a.coeffs, b.coeffs)))

    def __setattr__(self, name, value):
        raise AttributeError("curves are immutable")

    @property
    def c4(self):
        return 12 * self.a

    @property
    def c6(self):
        return -216 * self.b

    @property
    def disc(self):
        return self.a ** 3 - 27 * self.b * self.b

    @property
    def j(self):
        return 1728 * self.a ** 3 / self.disc

    def __eq__(self, other):
        return (isinstance(other, Curve) and self.field is other.field
                and self.a == other.a and self.b == other.b)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Curve({self.field!r}, a={self.a!r}, b={self.b!r})"

    def rhs(self, x):
        """4*x^3 - a*x - b."""
        return 4 * x ** 3 - self.a * x - self.b

    def rhs_poly(self):
        F = self.field
        return Poly(F, [-self.b, -self.a, F.zero, F.element(4)])

    def short_rhs_poly(self):
        """x^3 - (a/4)x - b/4, the model with y = 2*Y."""
        F = self.field
        q = F.element(4).inverse()
        return Poly(F, [-self.b * q, -self.a * q, F.zero, F.one])

    def infinity(self):
        return Point(self, None, None)

    def point(self, x, y):
        x, y = self.field.element(x), self.field.element(y)
        if y * y != self.rhs(x):
            raise ValueError(f"({x!r}, {y!r}) does not lie on {self!r}")
        return Point(self, x, y)

    def lift_x(self, x):
        """The point over x with the canonical square root as y."""
        x = self.field.element(x)
        return Point(self, x, self.rhs(x).sqrt())

    def points(self):
        """Every rational point, infinity first, then by x in canonical order."""
        yield self.infinity()
        for x in self.field.elements():
            v = self.rhs(x)
            if not v:
                yield Point(self, x, self.field.zero)
            elif v.legendre() == 1:
                y = v.sqrt()
                yield Point(self, x, y)
                yield Point(self, x, -y)

    def twist(self, u):
        """The quadratic-family twist by u: coefficients (u^2 a, u^3 b)."""
        u = self.field.element(u)
        if not u:
            raise ZeroTwist("twisting by zero is not a curve")
        return Curve(self.field, u * u * self.a, u ** 3 * self.b)

    def base_change(self, K):
        """The same equation over a larger field."""
        return Curve(K, self.a.embed(K), self.b.embed(K))

    def to_json(self):
        return {"p": self.field.p, "k": self.field.k,
                "a": list(self.a.coeffs), "b": list(self.b.coeffs)}


def curve_from_json(obj):
    F = field(int(obj["p"]), int(obj["k"]))
    return Curve(F, F.element(obj["a"]), F.element(obj["b"]))


class Point:
    __slots__ = ("curve", "x", "y")

    def __init__(self, curve, x, y):
        object.__setattr__(self, "curve", curve)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    def __setattr__(self, name, value):
        raise AttributeError("points are immutable")

    def is_infinity(self):
        return self.x is None

    def __eq__(self, other):
        return (isinstance(other, Point) and self.curve == other.curve
                and self.x == other.x and self.y == other.y)

    def __hash__(self):
        return hash((self.curve, None if self.x is None else self.x.coeffs,
                     None if self.y is None else self.y.coeffs))

    def __neg__(self):
        if self.is_infinity():
            return self
        return Point(self.curve, self.x, -self.y)

    def __add__(self, other):
        if not isinstance(other, Point) or self.curve != other.curve:
            return NotImplemented
        if self.is_infinity():
            return other
        if other.is_infinity():
            return self
        E = self.curve
        x1, y1, x2, y2 = self.x, self.y, other.x, other.y
        if x1 == x2:
            if y1 != y2 or not y1:
                return E.infinity()
            lam = (12 * x1 * x1 - E.a) / (2 * y1)
        else:
            lam = (y2 - y1) / (x2 - x1)
        x3 = lam * lam / 4 - x1 - x2
        y3 = lam * (x1 - x3) - y1
        return Point(E, x3, y3)

    def __sub__(self, other):
        return self + (-other)

    def __rmul__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return (-n) * (-self)
        acc = self.curve.infinity()
        add = self
        while n:
            if n & 1:
                acc = acc + add
            n >>= 1
            if n:
                add = add + add
        return acc

    def order(self):
        n, Q = 1, self
        while not Q.is_infinity():
            Q = Q + self
            n += 1
            if n > 5 * (self.curve.field.q + 1):
                raise AssertionError("runaway point order")
        return n

    def __repr__(self):
        if self.is_infinity():
            return "O"
        return f"({self.x!r}, {self.y!r})"


def standard_curve(F, j):
    """The standard model with the given j-invariant over F."""
    j = F.element(j)
    if j == 0:
        return Curve(F, 0, 4)
    if j == 1728:
        return Curve(F, 4, 0)
    c = 27 * j / (j - 1728)
    return Curve(F, c, c)


# ---------------------------------------------------------------------------
# Twists and automorphisms as explicit maps.


class TwistMap:
    """(x, y) -> (v^2 x, v^3 y), an isomorphism from E onto its twist by v^2.

    The invariant differential scales by 1/v under pullback, so the induced
    map on formal parameters is t -> v^{-1} t read through the codomain.
    """

    __slots__ = ("domain", "codomain", "v")

    def __init__(self, curve, v):
        v = curve.field.element(v)
        if not v:
            raise ZeroTwist("twist maps need a nonzero scale")
        object.__setattr__(self, "domain", curve)
        object.__setattr__(self, "codomain", curve.twist(v * v))
        object.__setattr__(self, "v", v)

    def __setattr__(self, name, value):
        raise AttributeError("twist maps are immutable")

    @property
    def omega_scale(self):
        return self.v.inverse()

    def __call__(self, P):
        if P.curve != self.domain:
            raise ValueError("point is not on the domain curve")
        if P.is_infinity():
            return self.codomain.infinity()
        v = self.v
        return Point(self.codomain, v * v * P.x, v ** 3 * P.y)

    def inverse(self):
        out = TwistMap(self.codomain, self.v.inverse())
        assert out.codomain == self.domain
        return out


class Automorphism:
    """The automorphism (x, y) -> (z^2 x, z^3 y) attached to a scalar z.

    Requires z^4 a = a and z^6 b = b so the image lands back on the curve.
    Acts on the formal parameter t = -2x/y as multiplication by 1/z.
    """

    __slots__ = ("curve", "zeta")

    def __init__(self, curve, zeta):
        zeta = curve.field.element(zeta)
        if not zeta or zeta ** 4 * curve.a != curve.a or zeta ** 6 * curve.b != curve.b:
            raise NotAnAutomorphism(f"scalar {zeta!r} does not preserve {curve!r}")
        object.__setattr__(self, "curve", curve)
        object.__setattr__(self, "zeta", zeta)

    def __setattr__(self, name, value):
        raise AttributeError("automorphisms are immutable")

    @property
    def formal_scale(self):
        return self.zeta.inverse()

    def __call__(self, P):
        if P.curve != self.curve:
            raise ValueError("point is not on the curve")
        if P.is_infinity():
            return P
        z = self.zeta
        return Point(self.curve, z * z * P.x, z ** 3 * P.y)

    def __eq__(self, other):
        return (isinstance(other, Automorphism) and self.curve == other.curve
                and self.zeta == other.zeta)

    def __hash__(self):
        return hash((self.curve, self.zeta))

    def __repr__(self):
        return f"Automorphism(zeta={self.zeta!r})"


def automorphisms(curve):
    """All automorphisms rational over the curve's field, canonically ordered."""
    F = curve.field
    if not curve.a:
        n = 6
    elif not curve.b:
        n = 4
    else:
        n = 2
    xp = Poly(F, [-F.one] + [F.zero] * (n - 1) + [F.one])  # x^n - 1
    zetas = roots_in_field(xp)
    return [Automorphism(curve, z) for z in zetas]


# ---------------------------------------------------------------------------
# Supersingularity.


def hasse_coefficient(curve):
    """Coefficient of x^(p-1) in (4x^3 - ax - b)^((p-1)/2).

    Vanishes exactly on the supersingular curves, over any field of
    definition.  For ordinary curves this is the value of the weight p-1
    level-one Eisenstein reduction at the curve.
    """
    p = curve.field.p
    f = curve.rhs_poly()
    g = f ** ((p - 1) // 2)
    return g.coeff(p - 1)


def is_supersingular(curve):
    return not hasse_coefficient(curve)


def ss_count(p):
    """How many supersingular j-invariants exist in characteristic p."""
    eps = {1: 0, 5: 1, 7: 1, 11: 2}[p % 12]
    return p // 12 + eps


@functools.cache
def _family_hasse_in_j(p):
    """Coefficients (constant first, ints mod p) of a polynomial in j whose
    roots away from 0 and 1728 are exactly the supersingular j-invariants.

    Built by expanding (4x^3 - cx - c)^((p-1)/2) as a table over (x-degree,
    c-degree), reading off the x^(p-1) row for the one-parameter family
    a = b = c, then substituting c = 27j/(j - 1728) and clearing the
    denominator.
    """
    n = (p - 1) // 2
    arr = np.zeros((1, 1), dtype=np.int64)
    arr[0, 0] = 1
    for _ in range(n):
        new = np.zeros((arr.shape[0] + 3, arr.shape[1] + 1), dtype=np.int64)
        new[3:, :-1] += 4 * arr
        new[1:-2, 1:] -= arr
        new[:-3, 1:] -= arr
        arr = new % p
    row = [int(v) for v in arr[p - 1, :]]
    F = field(p)
    D = len(row) - 1
    while D >= 0 and row[D] == 0:
        D -= 1
    j = Poly.x(F)
    jm = j - 1728
    out = Poly(F, [])
    pow27 = F.one
    jm_pows = [Poly.const(F, 1)]
    for _ in range(D):
        jm_pows.append(jm_pows[-1] * jm)
    jpow = Poly.const(F, 1)
    for m in range(D + 1):
        if row[m]:
            out = out + (row[m] * pow27) * jpow * jm_pows[D - m]
        pow27 = pow27 * 27
        jpow = jpow * j
    return tuple(int(c.coeffs[0]) for c in out.coeffs)


def ss_j_invariants(p, brute=False):
    """All supersingular j-invariants in characteristic p, as elements of
    the quadratic extension, in canonical order."""
    K = field(p, 2)
    if p > _SS_ENUM_CAP:
        raise TooLarge(f"supersingular census supports p up to {_SS_ENUM_CAP}")
    if brute:
        js = [j for j in K.elements() if is_supersingular(standard_curve(K, j))]
        return sorted(js, key=lambda r: r.coeffs)
    return list(_ss_census(p))


@functools.lru_cache(maxsize=None)
def _ss_census(p):
    K = field(p, 2)
    found = set()
    for j0 in (0, 1728):
        if is_supersingular(standard_curve(K, K(j0))):
            found.add(K(j0))
    fam = Poly.from_ints(K, _family_hasse_in_j(p))
    for r in roots_in_field(fam):
        if r != 0 and r != 1728:
            found.add(r)
    return tuple(sorted(found, key=lambda r: r.coeffs))


def hasse_polynomial(p):
    """The x^(p-1) coefficient of (4x^3 - ax - b)^((p-1)/2) as a polynomial
    in (c4, c6), returned as a dict {(i, j): coefficient mod p}.

    Isobaric: every monomial c4^i c6^j satisfies 4i + 6j = p - 1.
    """
    if p > 50:
        raise TooLarge("the symbolic Hasse polynomial supports p up to 50")
    if field(p).p < 5:
        raise FieldTooSmall("the Hasse polynomial needs characteristic at least 5")
    n = (p - 1) // 2
    # table over (x-degree, a-degree, b-degree)
    arr = np.zeros((1, 1, 1), dtype=np.int64)
    arr[0, 0, 0] = 1
    for _ in range(n):
        new = np.zeros((arr.shape[0] + 3, arr.shape[1] + 1, arr.shape[2] + 1),
                       dtype=np.int64)
        new[3:, :-1, :-1] += 4 * arr
        new[1:-2, 1:, :-1] -= arr
        new[:-3, :-1, 1:] -= arr
        arr = new % p
    inv12 = pow(12, p - 2, p)
    inv216n = pow((-216) % p, p - 2, p)
    out = {}
    plane = arr[p - 1]
    for i in range(plane.shape[0]):
        for jj in range(plane.shape[1]):
            c = int(plane[i, jj])
            if c:
                assert 4 * i + 6 * jj == p - 1
                out[(i, jj)] = c * pow(inv12, i, p) * pow(inv216n, jj, p) % p
    return out


def hasse_polynomial_value(p, curve):
    """Evaluate hasse_polynomial(p) at the curve's (c4, c6)."""
    H = hasse_polynomial(p)
    c4, c6 = curve.c4, curve.c6
    acc = curve.field.zero
    for (i, jj), c in H.items():
        acc = acc + c * c4 ** i * c6 ** jj
    return acc


# ---------------------------------------------------------------------------
# Point counts.


def point_count(curve, m=1):
    """Number of rational points over the m-th extension of the curve's field.

    m = 1 is a direct character sum; larger m follow from the trace by the
    standard second order recurrence.
    """
    F = curve.field
    N1 = 1 + F.q
    for x in F.elements():
        v = curve.rhs(x)
        if v:
            N1 += v.legendre()
    if m == 1:
        return N1
    t = F.q + 1 - N1
    s_prev, s = 2, t
    for _ in range(m - 1):
        s_prev, s = s, t * s - F.q * s_prev
    return F.q ** m + 1 - s


def frobenius_trace(curve):
    return curve.field.q + 1 - point_count(curve)


# ---------------------------------------------------------------------------
# Division polynomials.  Internally these live in F[x][Y]/(Y^2 - fs) with
# fs = x^3 - (a/4)x - (b/4); a pair (u, v) stands for u + v*Y.


def _pair_mul(P1, P2, fs):
    u1, v1 = P1
    u2, v2 = P2
    return (u1 * u2 + v1 * v2 * fs, u1 * v2 + v1 * u2)


def _pair_sub(P1, P2):
    return (P1[0] - P2[0], P1[1] - P2[1])


@functools.lru_cache(maxsize=None)
def _psi_pair(curve, n):
    F = curve.field
    fs = curve.short_rhs_poly()
    zero, one = Poly(F, []), Poly.const(F, 1)
    A, B = fs.coeff(1), fs.coeff(0)
    if n == 0:
        return (zero, zero)
    if n == 1:
        return (one, zero)
    if n == 2:
        return (zero, Poly.const(F, 2))
    if n == 3:
        return (Poly(F, [-A * A, 12 * B, 6 * A, F.zero, F.element(3)]), zero)
    if n == 4:
        c = [-8 * B * B - A ** 3, -4 * A * B, -5 * A * A, 20 * B, 5 * A,
             F.zero, F.one]
        return (zero, 4 * Poly(F, c))
    m, r = divmod(n, 2)
    if r:
        a1 = _pair_mul(_psi_pair(curve, m + 2),
                       _pair_mul(_psi_pair(curve, m),
                                 _pair_mul(_psi_pair(curve, m), _psi_pair(curve, m), fs), fs), fs)
        b1 = _pair_mul(_psi_pair(curve, m - 1),
                       _pair_mul(_psi_pair(curve, m + 1),
                                 _pair_mul(_psi_pair(curve, m + 1), _psi_pair(curve, m + 1), fs), fs), fs)
        return _pair_sub(a1, b1)
    s1 = _pair_mul(_psi_pair(curve, m + 2),
                   _pair_mul(_psi_pair(curve, m - 1), _psi_pair(curve, m - 1), fs), fs)
    s2 = _pair_mul(_psi_pair(curve, m - 2),
                   _pair_mul(_psi_pair(curve, m + 1), _psi_pair(curve, m + 1), fs), fs)
    num = _pair_mul(_psi_pair(curve, m), _pair_sub(s1, s2), fs)
    u, v = num
    assert v.is_zero(), "even division polynomial lost its parity"
    q, rem = divmod(u, fs)
    assert rem.is_zero(), "even division polynomial is not divisible by the cubic"
    half = F.element(2).inverse()
    return (zero, q * half)


def division_polynomial(curve, n):
    """Vanishing locus of the x-coordinates of the nonzero n-torsion.

    For odd n this is the classical n-division polynomial of the short
    model; for even n the 2-torsion cubic 4x^3 - ax - b is folded in, so
    n = 2 returns exactly that cubic.  Degree is (n^2 - 1)/2 for odd n and
    (n^2 + 2)/2 for even n.
    """
    if n < 1:
        raise BadN(f"n must be positive, got {n}")
    if n % curve.field.p == 0:
        raise BadN(
            f"n = {n} is divisible by the characteristic {curve.field.p}")
    u, v = _psi_pair(curve, n)
    if n % 2:
        return u
    return 2 * v * curve.short_rhs_poly()


def torsion_splitting_degree(curve, n):
    """Degree over the base field where all of the n-torsion is rational.

    Factors the n-division polynomial to place the x-coordinates, then
    checks whether each batch of y-coordinates needs a further quadratic
    step.  Raises ExtensionTooLarge past the SSLAB_MAX_EXT cap.
    """
    from math import lcm

    F = curve.field
    fs = curve.rhs_poly()
    cap = max_extension()
    deg = 1
    for g, _ in factor(division_polynomial(curve, n)):
        d = g.degree
        # y over this factor: fs must be a square in F[x]/(g), and a factor
        # dividing the 2-torsion cubic carries y = 0 at no extra cost
        h = fs % g
        if h.is_zero():
            dy = d
        else:
            dy = d if pow_mod(h, (F.q ** d - 1) // 2, g) == 1 else 2 * d
        deg = lcm(deg, dy)
        if deg > cap:
            raise ExtensionTooLarge(
                f"the {n}-torsion needs degree {deg}, above the cap {cap}")
    return deg
