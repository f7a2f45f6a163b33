"""Arithmetic in small finite fields F_{p^k} with canonical representations.

Each field is built exactly once per (p, k) through the cached factory
``field(p, k)``.  Elements are immutable and hashable.  Coefficient tuples
are stored constant term first, so ``(c0, c1, ..., c_{k-1})`` denotes
c0 + c1*x + ... + c_{k-1}*x^{k-1} in F_p[x] modulo the defining polynomial.

Canonical choices, frozen by the test suite:

* The defining modulus is the first monic irreducible polynomial of degree k
  when candidates are ordered by their coefficient vector read from the
  x^{k-1} coefficient down to the constant term.  This gives x^2 + 2 for
  F_25, x^2 + 1 for F_49 and F_121, x^2 + 2 for F_169.
* Elements are ordered by their coeffs tuple (constant term compared first).
  ``sqrt`` returns the smaller of the two roots in this order, ``generator``
  returns the smallest multiplicative generator, and an embedding into a
  larger field sends the residue class of x to the smallest root of the
  source modulus there.  Every canonical object is therefore reproducible
  across runs and platforms with no random state.
"""

import functools
import itertools

from .errors import CompositeP, DegreeTooLarge, FieldMismatch, NoRoot, PrimeTooLarge

__all__ = ["field", "Field", "FieldElement", "element_from_json"]

_PRIME_CAP = 1000
_DEGREE_CAP = 30

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n):
    """Deterministic Miller-Rabin, exact for every n below 3.3e24."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for b in _MR_BASES:
        x = pow(b, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n):
    """Sorted distinct prime factors of n, by trial division."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


# ---------------------------------------------------------------------------
# Plain int-list polynomial helpers over F_p, used for modulus search and for
# the element arithmetic kernel.  Lists are constant-first and trimmed.


def _trim(f):
    while f and f[-1] == 0:
        f.pop()
    return f


def _mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, fi in enumerate(f):
        if fi:
            for j, gj in enumerate(g):
                out[i + j] += fi * gj
    return _trim([c % p for c in out])


def _rem(f, g, p):
    f = _trim([c % p for c in f])
    dg = len(g) - 1
    inv = pow(g[-1], p - 2, p)
    while len(f) > dg:
        c = f[-1] * inv % p
        if c:
            off = len(f) - 1 - dg
            for i in range(dg):
                f[off + i] = (f[off + i] - c * g[i]) % p
        f.pop()
        _trim(f)
    return f


def _powmod(f, e, m, p):
    r = [1]
    f = _rem(f, m, p)
    while e:
        if e & 1:
            r = _rem(_mul(r, f, p), m, p)
        e >>= 1
        if e:
            f = _rem(_mul(f, f, p), m, p)
    return r


def _gcd(f, g, p):
    f, g = _trim([c % p for c in f]), _trim([c % p for c in g])
    while g:
        f, g = g, _rem(f, g, p)
    if f:
        inv = pow(f[-1], p - 2, p)
        f = [c * inv % p for c in f]
    return f


def _inv(f, m, p):
    # extended Euclid: return g with f*g = 1 mod m
    r0, r1 = list(m), _trim([c % p for c in f])
    s0, s1 = [], [1]
    while r1:
        dg = len(r1) - 1
        inv = pow(r1[-1], p - 2, p)
        q = []
        r0 = list(r0)
        while len(r0) > dg:
            c = r0[-1] * inv % p
            shift = len(r0) - 1 - dg
            while len(q) < shift + 1:
                q.append(0)
            q[shift] = c
            for i in range(dg):
                r0[shift + i] = (r0[shift + i] - c * r1[i]) % p
            r0.pop()
            _trim(r0)
        r0, r1 = r1, r0
        s0, s1 = s1, _trim([(a - b) % p for a, b in
                            itertools.zip_longest(s0, _mul(q, s1, p), fillvalue=0)])
    if len(r0) != 1:
        return None
    c = pow(r0[0], p - 2, p)
    return [x * c % p for x in s0]


def _is_irreducible_modp(m, p):
    k = len(m) - 1
    x = [0, 1]
    if _powmod(x, p ** k, m, p) != _rem(x, m, p):
        return False
    for r in prime_factors(k):
        h = _powmod(x, p ** (k // r), m, p)
        diff = _trim([(a - b) % p for a, b in itertools.zip_longest(h, x, fillvalue=0)])
        if len(_gcd(diff, m, p)) != 1:
            return False
    return True


@functools.cache
def _find_modulus(p, k):
    if k == 1:
        return (0, 1)
    for top in itertools.product(range(p), repeat=k):
        # top lists the x^{k-1} coefficient first, constant last
        m = [top[k - 1 - i] for i in range(k)] + [1]
        if m[0] == 0:
            continue
        if _is_irreducible_modp(m, p):
            return tuple(m)
    raise AssertionError("no irreducible polynomial found, which cannot happen")


class FieldElement:
    """Immutable element of a Field; supports mixed arithmetic with int."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field, coeffs):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "coeffs", coeffs)

    def __setattr__(self, name, value):
        raise AttributeError("field elements are immutable")

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.field is not self.field:
                raise FieldMismatch(
                    f"cannot combine elements of {self.field} and {other.field}")
            return other
        if isinstance(other, int):
            return self.field.element(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FieldElement(self.field, tuple(
            (a + b) % p for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        p = self.field.p
        return FieldElement(self.field, tuple(
            (a - b) % p for a, b in zip(self.coeffs, o.coeffs)))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple(-a % p for a in self.coeffs))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        F = self.field
        prod = _rem(_mul(list(self.coeffs), list(o.coeffs), F.p), F._mod, F.p)
        prod += [0] * (F.k - len(prod))
        return FieldElement(F, tuple(prod))

    __rmul__ = __mul__

    def inverse(self):
        if not self:
            raise ZeroDivisionError("inverse of zero field element")
        F = self.field
        g = _inv(list(self.coeffs), F._mod, F.p)
        g += [0] * (F.k - len(g))
        return FieldElement(F, tuple(g))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            return NotImplemented
        if e < 0:
            return self.inverse() ** (-e)
        F = self.field
        r = _powmod(list(self.coeffs), e, F._mod, F.p)
        r += [0] * (F.k - len(r))
        return FieldElement(F, tuple(r))

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.field.element(other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self.field is other.field and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.field.p, self.field.k, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def frobenius(self, m=1):
        """Apply x -> x^p m times (m may be any integer, acts through m mod k)."""
        F = self.field
        m %= F.k
        return self ** (F.p ** m) if m else self

    def inverse_frobenius(self, m=1):
        F = self.field
        return self.frobenius((F.k - m % F.k) % F.k)

    def legendre(self):
        """Quadratic character: 1, -1 or 0.  Odd fields only."""
        F = self.field
        if F.p == 2:
            raise NoRoot("the quadratic character is not defined in characteristic 2")
        if not self:
            return 0
        return 1 if self ** ((F.q - 1) // 2) == F.one else -1

    def sqrt(self):
        """Canonical square root (smaller of the two in coeffs order)."""
        F = self.field
        if F.p == 2:
            return self.frobenius(F.k - 1)
        if not self:
            return self
        if self.legendre() != 1:
            raise NoRoot(f"{self!r} is not a square in {F}")
        if F.q % 4 == 3:
            r = self ** ((F.q + 1) // 4)
        else:
            r = _tonelli_shanks(self)
        s = -r
        return r if r.coeffs <= s.coeffs else s

    def subfield_degree(self):
        """Smallest d with self lying in the subfield of p^d elements."""
        for d in sorted(d for d in range(1, self.field.k + 1)
                        if self.field.k % d == 0):
            if self.frobenius(d) == self:
                return d
        raise AssertionError("element fixed by no power of frobenius")

    def embed(self, target):
        """Image under the canonical embedding into a larger field."""
        F = self.field
        if target is F:
            return self
        if not isinstance(target, Field) or target.p != F.p or target.k % F.k:
            raise FieldMismatch(f"no embedding of {F} into {target}")
        alpha = _embedding_image(F, target)
        acc = target.zero
        for c in reversed(self.coeffs):
            acc = acc * alpha + c
        return acc

    def to_json(self):
        return {"p": self.field.p, "k": self.field.k, "coeffs": list(self.coeffs)}

    def __repr__(self):
        if self.field.k == 1:
            return str(self.coeffs[0])
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append(f"{c}*x" if c != 1 else "x")
            else:
                terms.append(f"{c}*x^{i}" if c != 1 else f"x^{i}")
        return " + ".join(terms) if terms else "0"


def _tonelli_shanks(a):
    F = a.field
    q = F.q
    s, t = 0, q - 1
    while t % 2 == 0:
        t //= 2
        s += 1
    n = F.first_nonresidue()
    z = n ** t
    r = a ** ((t + 1) // 2)
    b = a ** t
    while b != F.one:
        # find least i with b^(2^i) = 1
        i, c = 0, b
        while c != F.one:
            c = c * c
            i += 1
        e = z ** (1 << (s - i - 1))
        r = r * e
        b = b * e * e
        z = e * e
        s = i
    return r


@functools.cache
def _embedding_image(src, dst):
    from .poly import Poly, roots_in_field

    m = Poly.from_ints(dst, src.modulus)
    roots = roots_in_field(m)
    if not roots:
        raise AssertionError("source modulus must split in the target field")
    return roots[0]


class Field:
    """The finite field with p^k elements.  Use the ``field`` factory."""

    def __init__(self, p, k, _token=None):
        if _token is not _FIELD_TOKEN:
            raise TypeError("construct fields through field(p, k)")
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = _find_modulus(p, k)
        self._mod = list(self.modulus)
        self.zero = FieldElement(self, (0,) * k)
        self.one = FieldElement(self, (1,) + (0,) * (k - 1))
        self._nonresidue = None
        self._generator = None

    def element(self, value):
        """Coerce an int, a coefficient sequence or an element of self."""
        if isinstance(value, FieldElement):
            if value.field is not self:
                raise FieldMismatch(f"element of {value.field} is not in {self}")
            return value
        if isinstance(value, int):
            return FieldElement(self, (value % self.p,) + (0,) * (self.k - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.k:
            raise ValueError(f"coefficient vector too long for {self}")
        coeffs += [0] * (self.k - len(coeffs))
        return FieldElement(self, tuple(coeffs))

    def __call__(self, value):
        return self.element(value)

    def elements(self):
        """All elements in canonical order (constant term most significant)."""
        for t in itertools.product(range(self.p), repeat=self.k):
            yield FieldElement(self, t)

    __iter__ = elements

    def __len__(self):
        return self.q

    def first_nonresidue(self):
        if self._nonresidue is None:
            for x in self.elements():
                if x and x.legendre() == -1:
                    self._nonresidue = x
                    break
        return self._nonresidue

    def generator(self):
        """Smallest multiplicative generator in canonical element order."""
        if self._generator is None:
            n = self.q - 1
            fac = prime_factors(n)
            for x in self.elements():
                if not x:
                    continue
                if all(x ** (n // r) != self.one for r in fac):
                    self._generator = x
                    break
        return self._generator

    def extension(self, m):
        """The field with p^(k*m) elements, sharing canonical conventions."""
        return field(self.p, self.k * m)

    def prime_field(self):
        return field(self.p, 1)

    def to_json(self):
        return {"p": self.p, "k": self.k, "modulus": list(self.modulus)}

    def __repr__(self):
        return f"F({self.p})" if self.k == 1 else f"F({self.p}^{self.k})"

    # identity semantics: the factory caches one instance per (p, k)
    __hash__ = object.__hash__
    __eq__ = object.__eq__


_FIELD_TOKEN = object()


def field(p, k=1):
    """Cached factory for F_{p^k}; the only supported way to make a Field."""
    if not isinstance(p, int) or not is_prime(p):
        raise CompositeP(f"{p} is not prime")
    if p > _PRIME_CAP:
        raise PrimeTooLarge(f"primes above {_PRIME_CAP} are not supported, got {p}")
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"extension degree must be a positive integer, got {k}")
    if k > _DEGREE_CAP:
        raise DegreeTooLarge(f"extension degrees above {_DEGREE_CAP} are not supported")
    return _field_instance(p, k)


@functools.cache
def _field_instance(p, k):
    return Field(p, k, _token=_FIELD_TOKEN)


def element_from_json(obj):
    F = field(int(obj["p"]), int(obj["k"]))
    return F.element(obj["coeffs"])
