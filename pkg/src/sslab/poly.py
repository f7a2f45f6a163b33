"""Dense univariate polynomials and rational functions over a Field.

Coefficients are stored constant term first and trimmed, so ``degree`` of
the zero polynomial is -1.  Factorization is fully deterministic: the
equal-degree splitting stage draws its trial polynomials from a fixed
counter-driven sequence instead of a random generator, so factor lists,
roots and everything built on them come out identical on every run.
"""

import itertools

from .errors import FieldMismatch, NoRoot


class Poly:
    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        cs = list(coeffs)
        while cs and not cs[-1]:
            cs.pop()
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("polynomials are immutable")

    @classmethod
    def from_ints(cls, field, ints):
        return cls(field, [field.element(c) for c in ints])

    @classmethod
    def x(cls, field):
        return cls(field, [field.zero, field.one])

    @classmethod
    def const(cls, field, c):
        return cls(field, [field.element(c)])

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def leading(self):
        if not self.coeffs:
            return self.field.zero
        return self.coeffs[-1]

    def is_monic(self):
        return bool(self.coeffs) and self.coeffs[-1] == self.field.one

    def monic(self):
        if self.is_zero() or self.is_monic():
            return self
        inv = self.coeffs[-1].inverse()
        return Poly(self.field, [c * inv for c in self.coeffs])

    def coeff(self, i):
        """Coefficient of x^i (zero beyond the stored degree)."""
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.field is not self.field:
                raise FieldMismatch("polynomials over different fields")
            return other
        if isinstance(other, int):
            return Poly.const(self.field, other)
        if type(other).__name__ == "FieldElement":
            return Poly(self.field, [self.field.element(other)])
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return Poly(self.field, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        a, b = self.coeffs, o.coeffs
        if not a or not b:
            return Poly(self.field, [])
        zero = self.field.zero
        out = [zero] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] = out[i + j] + ai * bj
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dg = o.degree
        inv = o.coeffs[-1].inverse()
        q = [self.field.zero] * max(len(rem) - dg, 0)
        while len(rem) > dg:
            while rem and not rem[-1]:
                rem.pop()
            if len(rem) <= dg:
                break
            c = rem[-1] * inv
            shift = len(rem) - 1 - dg
            q[shift] = c
            for i in range(dg):
                rem[shift + i] = rem[shift + i] - c * o.coeffs[i]
            rem.pop()
        return Poly(self.field, q), Poly(self.field, rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        r = Poly.const(self.field, 1)
        b = self
        while e:
            if e & 1:
                r = r * b
            e >>= 1
            if e:
                b = b * b
        return r

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field is other.field and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self == Poly.const(self.field, other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __call__(self, x):
        """Evaluate by Horner.  Accepts ints and field elements."""
        x = self.field.element(x) if isinstance(x, int) else x
        acc = self.field.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def shift(self, n):
        """Multiply by x^n."""
        if self.is_zero():
            return self
        return Poly(self.field, [self.field.zero] * n + list(self.coeffs))

    def derivative(self):
        return Poly(self.field, [c * i for i, c in enumerate(self.coeffs)][1:])

    def compose(self, other):
        """self(other(x))."""
        acc = Poly(self.field, [])
        for c in reversed(self.coeffs):
            acc = acc * other + c
        return acc

    def map_coeffs(self, fn):
        return Poly(self.field, [fn(c) for c in self.coeffs])

    def sort_key(self):
        return (self.degree, tuple(c.coeffs for c in self.coeffs))

    def __repr__(self):
        if not self.coeffs:
            return "Poly(0)"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = repr(c)
            if self.field.k > 1 and " " in cs:
                cs = f"({cs})"
            if i == 0:
                parts.append(cs)
            elif i == 1:
                parts.append("x" if c == 1 else f"{cs}*x")
            else:
                parts.append(f"x^{i}" if c == 1 else f"{cs}*x^{i}")
        return "Poly(" + " + ".join(parts) + ")"


def gcd(f, g):
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def inverse_mod(f, m):
    """The inverse of f modulo m, by the extended euclidean algorithm.

    Raises ValueError when f and m share a factor of positive degree.
    """
    F = f.field
    r0, r1 = f % m, m
    s0, s1 = Poly.const(F, 1), Poly.const(F, 0)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
    if r0.degree != 0:
        raise ValueError("no inverse: the gcd has positive degree")
    return (s0 * Poly.const(F, r0.coeff(0).inverse())) % m


def pow_mod(f, e, m):
    """f**e reduced modulo m, by square and multiply."""
    r = Poly.const(f.field, 1)
    f = f % m
    while e:
        if e & 1:
            r = (r * f) % m
        e >>= 1
        if e:
            f = (f * f) % m
    return r


def _trial_polys(field, deg_bound):
    """Deterministic sequence of nonconstant trial polynomials of degree < deg_bound."""
    p, k = field.p, field.k
    q = field.q
    n = q  # start at x, skipping the constants
    while True:
        digits = []
        m = n
        while m:
            m, d = divmod(m, q)
            digits.append(d)
        coeffs = []
        for d in digits[: deg_bound]:
            cs = []
            for _ in range(k):
                d, r = divmod(d, p)
                cs.append(r)
            coeffs.append(field.element(cs))
        yield Poly(field, coeffs)
        n += 1


def _equal_degree_split(f, d):
    """Split a monic squarefree product of degree-d irreducibles."""
    if f.degree == d:
        return [f]
    q = f.field.q
    if q % 2:
        e = (q ** d - 1) // 2
        for t in _trial_polys(f.field, f.degree):
            h = pow_mod(t, e, f) - 1
            u = gcd(h, f)
            if 0 < u.degree < f.degree:
                return _equal_degree_split(u, d) + _equal_degree_split(f // u, d)
    else:
        # characteristic 2: split with the trace map instead of a power
        bits = d * f.field.k
        for t in _trial_polys(f.field, f.degree):
            h = t % f
            tr = h
            for _ in range(bits - 1):
                h = (h * h) % f
                tr = tr + h
            u = gcd(tr, f)
            if 0 < u.degree < f.degree:
                return _equal_degree_split(u, d) + _equal_degree_split(f // u, d)
    raise AssertionError("unreachable")


def _distinct_degree(f):
    """Pairs (product of irreducible factors of degree d, d) for squarefree monic f."""
    out = []
    q = f.field.q
    x = Poly.x(f.field)
    h = x
    d = 0
    while f.degree > 0:
        d += 1
        if 2 * d > f.degree:
            out.append((f, f.degree))
            break
        h = pow_mod(h, q, f)
        g = gcd(h - x, f)
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f
    return out


def _pth_root_poly(f):
    """For f with zero derivative, the g with g**p == f."""
    F = f.field
    p = F.p
    root = lambda c: c ** (p ** (F.k - 1))  # inverse of frobenius
    return Poly(F, [root(f.coeff(i * p)) for i in range(f.degree // p + 1)])


def factor(f):
    """Monic irreducible factors with multiplicities, deterministically ordered.

    Returns a list of (g, e) pairs sorted by degree then coefficient tuples.
    The unit (leading coefficient of f) is dropped.
    """
    acc = {}
    _factor_into(f.monic(), 1, acc)
    return sorted(acc.items(), key=lambda t: t[0].sort_key())


def _factor_into(f, mult, acc):
    if f.degree <= 0:
        return
    d = f.derivative()
    if d.is_zero():
        _factor_into(_pth_root_poly(f), mult * f.field.p, acc)
        return
    s = f // gcd(f, d)
    for g_prod, deg in _distinct_degree(s):
        for g in _equal_degree_split(g_prod, deg):
            e = 0
            while True:
                q, r = divmod(f, g)
                if not r.is_zero():
                    break
                f = q
                e += 1
            acc[g] = acc.get(g, 0) + mult * e
    # whatever is left is a p-th power (all its factor multiplicities
    # were divisible by p, so the squarefree part missed them)
    if f.degree > 0:
        _factor_into(f, mult, acc)


def is_irreducible(f):
    if f.degree <= 0:
        return False
    if f.degree == 1:
        return True
    q = f.field.q
    x = Poly.x(f.field)
    n = f.degree
    if pow_mod(x, q ** n, f) != x % f:
        return False
    from .fields import prime_factors

    for r in prime_factors(n):
        h = pow_mod(x, q ** (n // r), f)
        if gcd(h - x, f).degree != 0:
            return False
    return True


def roots_in_field(f):
    """Distinct roots of f in its coefficient field, in canonical order."""
    if f.is_zero():
        raise ValueError("the zero polynomial has every root")
    if f.degree == 0:
        return []
    q = f.field.q
    x = Poly.x(f.field)
    g = gcd(pow_mod(x, q, f) - x, f)
    roots = []
    if g.degree > 0:
        for lin in _equal_degree_split(g, 1):
            roots.append(-lin.coeff(0))
    return sorted(roots, key=lambda r: r.coeffs)


def squarefree_part(f):
    """Product of the distinct monic irreducible factors of f."""
    out = Poly.const(f.field, 1)
    for g, _ in factor(f):
        out = out * g
    return out


class RationalFunction:
    """Quotient of two Polys, kept in lowest terms with monic denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = Poly.const(num.field, 1)
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        if not num.is_zero():
            g = gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        else:
            den = Poly.const(num.field, 1)
        lead_inv = den.leading().inverse()
        object.__setattr__(self, "num", num * lead_inv)
        object.__setattr__(self, "den", den * lead_inv)

    def __setattr__(self, name, value):
        raise AttributeError("rational functions are immutable")

    @property
    def field(self):
        return self.num.field

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Poly):
            return RationalFunction(other)
        if isinstance(other, int):
            return RationalFunction(Poly.const(self.field, other))
        if type(other).__name__ == "FieldElement":
            return RationalFunction(Poly(self.field, [other]))
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if o.num.is_zero():
            raise ZeroDivisionError("division by the zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.num == o.num and self.den == o.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __bool__(self):
        return not self.num.is_zero()

    def __call__(self, x):
        d = self.den(x)
        if not d:
            raise ZeroDivisionError("evaluation at a pole")
        return self.num(x) / d

    def derivative(self):
        return RationalFunction(
            self.num.derivative() * self.den - self.num * self.den.derivative(),
            self.den * self.den)

    def degree(self):
        """max(deg num, deg den), the degree as a map of projective lines."""
        return max(self.num.degree, self.den.degree)

    def __repr__(self):
        return f"({self.num!r}) / ({self.den!r})"
