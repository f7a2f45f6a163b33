"""Level-one modular forms with exact q-expansions and their mod-p shadows.

Everything upstream of a reduction is a Fraction, so irregular denominators
survive intact until a caller explicitly asks for residues.  Weight-graded
polynomials in the weight-4 and weight-6 Eisenstein generators carry the
mod-p side: the Hasse form cuts out the supersingular locus, and the graded
pieces of the quotient by (p, hasse) support an exact Hecke action computed
by lifting classes to honest q-expansions and reconstructing afterwards.
"""

import functools
from fractions import Fraction

from .errors import (NonPIntegral, NotInSpan, PrecisionLoss, WeightMismatch)

_BERNOULLI_CAP = 60
_QEXP_CAP = 2000


# ---------------------------------------------------------------------------
# Bernoulli numbers and exact Eisenstein expansions.


@functools.lru_cache(maxsize=1)
def _bernoulli_table():
    table = [Fraction(1)]
    for m in range(1, _BERNOULLI_CAP + 1):
        binom = 1
        acc = Fraction(0)
        for i in range(m):
            acc += binom * table[i]
            binom = binom * (m + 1 - i) // (i + 1)
        table.append(-acc / (m + 1))
    return tuple(table)


def bernoulli(m):
    """The m-th Bernoulli number as an exact Fraction (m at most 60)."""
    if not 0 <= m <= _BERNOULLI_CAP:
        raise ValueError(f"bernoulli numbers are tabulated up to {_BERNOULLI_CAP}")
    return _bernoulli_table()[m]


class QExpansion:
    """A truncated q-expansion of a fixed weight.

    Coefficients run over exponents shift, shift+1, ..., precision-1; the
    exponents below shift are exactly zero and everything from precision on
    is unknown.  modulus None means exact Fractions, a prime p means
    residues.  Instances are immutable.
    """

    __slots__ = ("weight", "shift", "coeffs", "modulus")

    def __init__(self, weight, coeffs, shift=0, modulus=None):
        if modulus is None:
            coeffs = tuple(Fraction(c) for c in coeffs)
        else:
            coeffs = tuple(int(c) % modulus for c in coeffs)
        object.__setattr__(self, "weight", int(weight))
        object.__setattr__(self, "shift", int(shift))
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "modulus", modulus)

    def __setattr__(self, name, value):
        raise AttributeError("q-expansions are immutable")

    @property
    def precision(self):
        return self.shift + len(self.coeffs)

    def coeff(self, r):
        if r >= self.precision:
            raise PrecisionLoss(
                f"coefficient {r} lies beyond precision {self.precision}")
        if r < self.shift:
            return 0 if self.modulus else Fraction(0)
        return self.coeffs[r - self.shift]

    def valuation(self):
        for r, c in enumerate(self.coeffs):
            if c:
                return self.shift + r
        return None

    def _zero(self):
        return 0 if self.modulus else Fraction(0)

    def __eq__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        if self.weight != other.weight or self.modulus != other.modulus:
            return False
        lo = min(self.shift, other.shift)
        hi = min(self.precision, other.precision)
        return all(self.coeff(r) == other.coeff(r) for r in range(lo, hi))

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        if self.weight != other.weight:
            raise WeightMismatch(
                f"cannot add weights {self.weight} and {other.weight}")
        if self.modulus != other.modulus:
            raise ValueError("mixed moduli in q-expansion sum")
        lo = min(self.shift, other.shift)
        hi = min(self.precision, other.precision)
        vals = [self.coeff(r) + other.coeff(r) for r in range(lo, hi)]
        return QExpansion(self.weight, vals, lo, self.modulus)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        if not isinstance(other, QExpansion):
            return NotImplemented
        if self.modulus != other.modulus:
            raise ValueError("mixed moduli in q-expansion product")
        la, lb = len(self.coeffs), len(other.coeffs)
        n = min(la, lb)
        out = [self._zero()] * n
        for i, a in enumerate(self.coeffs):
            if not a or i >= n:
                continue
            for j, b in enumerate(other.coeffs[:n - i]):
                if b:
                    out[i + j] += a * b
        return QExpansion(self.weight + other.weight, out,
                          self.shift + other.shift, self.modulus)

    def scale(self, c):
        return QExpansion(self.weight, [c * v for v in self.coeffs],
                          self.shift, self.modulus)

    def power(self, e):
        if e < 0:
            raise ValueError("negative powers need an explicit inverse")
        unit = QExpansion(0, [1] + [0] * (len(self.coeffs) - 1), 0, self.modulus)
        acc, base = unit, self
        while e:
            if e & 1:
                acc = acc * base
            e >>= 1
            if e:
                base = base * base
        return acc

    def truncate(self, precision):
        if precision >= self.precision:
            return self
        return QExpansion(self.weight, self.coeffs[:precision - self.shift],
                          self.shift, self.modulus)

    def reduce(self, p):
        """Residues mod p; NonPIntegral if p divides some denominator."""
        if self.modulus is not None:
            raise ValueError("expansion is already reduced")
        vals = []
        for c in self.coeffs:
            if c.denominator % p == 0:
                raise NonPIntegral(
                    f"coefficient {c} is not integral at {p}")
            vals.append(c.numerator * pow(c.denominator, p - 2, p) % p)
        return QExpansion(self.weight, vals, self.shift, p)

    def __repr__(self):
        head = ", ".join(str(c) for c in self.coeffs[:6])
        tail = ", ..." if len(self.coeffs) > 6 else ""
        return (f"QExpansion(weight={self.weight}, shift={self.shift}, "
                f"[{head}{tail}], modulus={self.modulus})")


def _divisor_power_sums(exponent, M):
    sums = [0] * M
    for d in range(1, M):
        dk = d ** exponent
        for r in range(d, M, d):
            sums[r] += dk
    return sums


def eisenstein_series(k, M):
    """E_k = 1 - (2k/B_k) * sum sigma_{k-1}(r) q^r, exact to precision M."""
    if k < 4 or k % 2:
        raise ValueError("even weight at least 4 required")
    if not 1 <= M <= _QEXP_CAP:
        raise ValueError(f"precision must lie in [1, {_QEXP_CAP}]")
    factor = -Fraction(2 * k) / bernoulli(k)
    sums = _divisor_power_sums(k - 1, M)
    coeffs = [Fraction(1)] + [factor * s for s in sums[1:]]
    return QExpansion(k, coeffs, 0, None)


def _mul_trunc_int(a, b, M):
    out = [0] * M
    for i, av in enumerate(a):
        if not av or i >= M:
            continue
        for j, bv in enumerate(b[:M - i]):
            if bv:
                out[i + j] += av * bv
    return out


def discriminant_series(M):
    """q * prod (1-q^n)^24 via the pentagonal number expansion."""
    if not 1 <= M <= _QEXP_CAP:
        raise ValueError(f"precision must lie in [1, {_QEXP_CAP}]")
    euler = [0] * max(M, 2)
    euler[0] = 1
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 >= len(euler) and g2 >= len(euler):
            break
        sign = -1 if k % 2 else 1
        if g1 < len(euler):
            euler[g1] += sign
        if g2 < len(euler):
            euler[g2] += sign
        k += 1
    e2 = _mul_trunc_int(euler, euler, M)
    e4 = _mul_trunc_int(e2, e2, M)
    e8 = _mul_trunc_int(e4, e4, M)
    e16 = _mul_trunc_int(e8, e8, M)
    e24 = _mul_trunc_int(e16, e8, M)
    coeffs = [Fraction(0)] + [Fraction(c) for c in e24[:M - 1]]
    return QExpansion(12, coeffs, 0, None)


# ---------------------------------------------------------------------------
# Cached mod-p expansions of the generators.


@functools.lru_cache(maxsize=None)
def _e4_modp(p, M):
    return eisenstein_series(4, M).reduce(p)


@functools.lru_cache(maxsize=None)
def _e6_modp(p, M):
    return eisenstein_series(6, M).reduce(p)


@functools.lru_cache(maxsize=None)
def _delta_modp(p, M):
    return discriminant_series(M + 1).reduce(p).truncate(M + 1)


@functools.lru_cache(maxsize=None)
def _delta_inverse_modp(p, M):
    """Expansion of 1/discriminant: a pole of order one at q = 0."""
    unit = _delta_modp(p, M + 1).coeffs[1:M + 1]
    inv = [0] * M
    inv[0] = 1
    for n in range(1, M):
        acc = 0
        for i in range(1, n + 1):
            if i < len(unit) and unit[i]:
                acc += unit[i] * inv[n - i]
        inv[n] = -acc % p
    return QExpansion(-12, inv, -1, p)


@functools.lru_cache(maxsize=None)
def _monomial_modp(p, i, j, M):
    return (_e4_modp(p, M).power(i) * _e6_modp(p, M).power(j)).truncate(M)


# ---------------------------------------------------------------------------
# Weight-graded polynomials in the two generators.


def _monomials(W):
    """Exponent pairs (i, j) with 4i + 6j = W, heaviest e4 power first."""
    if W < 0:
        return ()
    out = []
    for j in range(W // 6, -1, -1):
        rem = W - 6 * j
        if rem % 4 == 0:
            out.append((rem // 4, j))
    out.sort(key=lambda ij: -ij[0])
    return tuple(out)


class IsobaricPoly:
    """A mod-p polynomial in the weight-4 and weight-6 generators, all of
    whose monomials share one weight, times an optional negative power of
    the discriminant recorded in delta_shift.

    The object stands for (sum c_ij e4^i e6^j) * disc^(-delta_shift); its
    class weight is weight - 12*delta_shift.
    """

    __slots__ = ("p", "weight", "terms", "delta_shift")

    def __init__(self, p, weight, terms, delta_shift=0):
        clean = {}
        for (i, j), c in terms.items():
            if 4 * i + 6 * j != weight:
                raise WeightMismatch(
                    f"monomial ({i},{j}) has weight {4 * i + 6 * j}, not {weight}")
            c = int(c) % p
            if c:
                clean[(i, j)] = c
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "weight", int(weight))
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "delta_shift", int(delta_shift))

    def __setattr__(self, name, value):
        raise AttributeError("isobaric polynomials are immutable")

    @classmethod
    def e4(cls, p):
        return cls(p, 4, {(1, 0): 1})

    @classmethod
    def e6(cls, p):
        return cls(p, 6, {(0, 1): 1})

    @classmethod
    def delta(cls, p):
        inv = pow(1728 % p, p - 2, p)
        return cls(p, 12, {(3, 0): inv, (0, 2): -inv})

    @classmethod
    def one(cls, p):
        return cls(p, 0, {(0, 0): 1})

    @classmethod
    def monomial(cls, p, i, j, delta_shift=0):
        return cls(p, 4 * i + 6 * j, {(i, j): 1}, delta_shift)

    @property
    def class_weight(self):
        return self.weight - 12 * self.delta_shift

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return (isinstance(other, IsobaricPoly) and self.p == other.p
                and self.weight == other.weight and self.terms == other.terms
                and self.delta_shift == other.delta_shift)

    __hash__ = None

    def __add__(self, other):
        if not isinstance(other, IsobaricPoly):
            return NotImplemented
        if self.p != other.p or self.delta_shift != other.delta_shift:
            raise ValueError("mismatched modulus or discriminant shift")
        if self.weight != other.weight:
            raise WeightMismatch(
                f"cannot add weights {self.weight} and {other.weight}")
        terms = dict(self.terms)
        for key, c in other.terms.items():
            terms[key] = (terms.get(key, 0) + c) % self.p
        return IsobaricPoly(self.p, self.weight, terms, self.delta_shift)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __mul__(self, other):
        if not isinstance(other, IsobaricPoly):
            return NotImplemented
        if self.p != other.p:
            raise ValueError("mismatched modulus")
        terms = {}
        for (i1, j1), c1 in self.terms.items():
            for (i2, j2), c2 in other.terms.items():
                key = (i1 + i2, j1 + j2)
                terms[key] = (terms.get(key, 0) + c1 * c2) % self.p
        return IsobaricPoly(self.p, self.weight + other.weight, terms,
                            self.delta_shift + other.delta_shift)

    def scale(self, c):
        return IsobaricPoly(self.p, self.weight,
                            {k: c * v for k, v in self.terms.items()},
                            self.delta_shift)

    def power(self, e):
        acc = IsobaricPoly(self.p, 0, {(0, 0): 1})
        base = self
        while e:
            if e & 1:
                acc = acc * base
            e >>= 1
            if e:
                base = base * base
        return acc

    def shift_delta(self, s):
        """The same class written with delta_shift increased by s."""
        if s == 0:
            return self
        if s < 0:
            raise ValueError("discriminant shifts only increase")
        poly = self * IsobaricPoly.delta(self.p).power(s)
        return IsobaricPoly(self.p, poly.weight, poly.terms,
                            self.delta_shift + s)

    def q_expansion(self, M):
        """Expansion of the class, exponents running up to precision M."""
        p, m = self.p, self.delta_shift
        work = M + abs(m) + 1
        acc = QExpansion(self.weight, [0] * work, 0, p)
        for (i, j), c in self.terms.items():
            acc = acc + _monomial_modp(p, i, j, work).scale(c)
        if m > 0:
            acc = acc * _delta_inverse_modp(p, work).power(m)
        elif m < 0:
            acc = acc * _delta_modp(p, work).power(-m)
        return acc.truncate(M)

    def evaluate(self, curve):
        """Value at a curve, substituting its (c4, c6) for the generators."""
        if curve.field.p != self.p:
            raise ValueError("curve lives in the wrong characteristic")
        c4, c6 = curve.c4, curve.c6
        acc = curve.field.zero
        for (i, j), c in self.terms.items():
            acc = acc + c * c4 ** i * c6 ** j
        if self.delta_shift:
            acc = acc * curve.disc ** (-self.delta_shift)
        return acc

    def __repr__(self):
        if not self.terms:
            body = "0"
        else:
            body = " + ".join(f"{c}*e4^{i}*e6^{j}"
                              for (i, j), c in sorted(self.terms.items()))
        tail = f", delta_shift={self.delta_shift}" if self.delta_shift else ""
        return f"IsobaricPoly(p={self.p}, weight={self.weight}, {body}{tail})"


# ---------------------------------------------------------------------------
# Small exact linear algebra mod p.


def _rref(rows, p):
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(mat)) if mat[i][c] % p), None)
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = pow(mat[r][c], p - 2, p)
        mat[r] = [v * inv % p for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] % p:
                f = mat[i][c]
                mat[i] = [(v - f * w) % p for v, w in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return [tuple(row) for row in mat[:r]], pivots


def _nullspace(rows, ncols, p):
    rref, pivots = _rref(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for row, pc in zip(rref, pivots):
            vec[pc] = (-row[fc]) % p
        basis.append(tuple(vec))
    return basis


def _solve_columns(columns, target, p, unique_prefix=0):
    """Solve sum x_j * columns[j] = target mod p.

    Returns the solution with free variables set to zero, or None when the
    system is inconsistent.  The first unique_prefix coordinates are checked
    to be independent of the choice of free variables.
    """
    ncols = len(columns)
    nrows = len(target)
    rows = [[columns[j][i] for j in range(ncols)] + [target[i] % p]
            for i in range(nrows)]
    rref, pivots = _rref(rows, p)
    if ncols in pivots:
        return None
    x = [0] * ncols
    for row, pc in zip(rref, pivots):
        x[pc] = row[ncols]
    if unique_prefix:
        for vec in _nullspace([r[:ncols] for r in rref], ncols, p):
            assert not any(vec[:unique_prefix]), \
                "discriminant-power basis columns are dependent"
    return x


# ---------------------------------------------------------------------------
# Expansion of polynomials and the inverse solve.


def _expansion_vector(g, rows):
    if g.shift < 0 and any(g.coeff(r) for r in range(g.shift, 0)):
        raise NotInSpan("expansion has a pole, no holomorphic form matches")
    return [g.coeff(r) for r in range(rows)]


def polynomial_from_expansion(W, g):
    """The weight-W polynomial in the generators whose expansion is g mod p.

    Raises NotInSpan when no such polynomial exists and PrecisionLoss when g
    carries too few coefficients to pin one down.
    """
    p = g.modulus
    if p is None:
        raise ValueError("reduce the expansion mod p first")
    mons = _monomials(W)
    if not mons:
        if g == QExpansion(g.weight, [0] * max(g.precision, 1), 0, p):
            return IsobaricPoly(p, W, {})
        raise NotInSpan(f"weight {W} admits no isobaric monomials")
    rows = len(mons) + 1
    if g.precision < rows:
        raise PrecisionLoss(
            f"need {rows} coefficients to reconstruct at weight {W}, "
            f"have {g.precision}")
    rows = min(g.precision, rows + 4)
    target = _expansion_vector(g, rows)
    columns = [_monomial_modp(p, i, j, rows).coeffs[:rows] for i, j in mons]
    x = _solve_columns(columns, target, p, unique_prefix=len(mons))
    if x is None:
        raise NotInSpan(f"expansion is not a weight-{W} form mod {p}")
    return IsobaricPoly(p, W, dict(zip(mons, x)))


@functools.lru_cache(maxsize=None)
def hasse_form(p):
    """The weight p-1 polynomial whose q-expansion is 1 mod p."""
    mons = _monomials(p - 1)
    one = QExpansion(p - 1, [1] + [0] * (len(mons) + 5), 0, p)
    return polynomial_from_expansion(p - 1, one)


@functools.lru_cache(maxsize=None)
def hasse_companion(p):
    """The mod-p reduction of the weight p+1 Eisenstein series."""
    mons = _monomials(p + 1)
    exact = eisenstein_series(p + 1, len(mons) + 6)
    return polynomial_from_expansion(p + 1, exact.reduce(p))


# ---------------------------------------------------------------------------
# Graded pieces of the supersingular quotient.


class GradedPiece:
    """One weight class of the quotient by p and the Hasse form.

    Classes of weight n are represented at the smallest weight W >= p+1
    congruent to n mod 12; the gap is bridged by discriminant powers.  The
    quotient basis consists of the representative-weight monomials away
    from the pivots of the row-reduced relation space.
    """

    __slots__ = ("p", "weight_class", "weight", "monomials", "rel_rref",
                 "rel_pivots", "basis", "dim")

    def __init__(self, p, weight_class):
        W = p + 1 + ((weight_class - p - 1) % 12)
        mons = _monomials(W)
        index = {m: i for i, m in enumerate(mons)}
        A = hasse_form(p)
        rel_rows = []
        for e in _monomials(W - (p - 1)):
            prod = A * IsobaricPoly.monomial(p, *e)
            row = [0] * len(mons)
            for key, c in prod.terms.items():
                row[index[key]] = c
            rel_rows.append(row)
        rref, pivots = _rref(rel_rows, p)
        basis = tuple(m for i, m in enumerate(mons) if i not in pivots)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "weight_class", weight_class)
        object.__setattr__(self, "weight", W)
        object.__setattr__(self, "monomials", mons)
        object.__setattr__(self, "rel_rref", tuple(rref))
        object.__setattr__(self, "rel_pivots", tuple(pivots))
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "dim", len(basis))

    def __setattr__(self, name, value):
        raise AttributeError("graded pieces are immutable")

    def basis_classes(self):
        """Basis monomials as classes of the piece's own weight."""
        shift = (self.weight - self.weight_class) // 12
        return [IsobaricPoly.monomial(self.p, i, j, shift)
                for i, j in self.basis]

    def _reduce_vector(self, vec):
        p = self.p
        vec = [v % p for v in vec]
        for row, pc in zip(self.rel_rref, self.rel_pivots):
            f = vec[pc]
            if f:
                vec = [(v - f * w) % p for v, w in zip(vec, row)]
        keep = [i for i, m in enumerate(self.monomials) if m in set(self.basis)]
        return tuple(vec[i] for i in keep)

    def coordinates(self, f):
        """Canonical coordinates of an isobaric class in this piece."""
        p = self.p
        if f.p != p:
            raise ValueError("class lives in the wrong characteristic")
        if f.class_weight != self.weight_class:
            raise WeightMismatch(
                f"class weight {f.class_weight} does not match piece "
                f"{self.weight_class}")
        if f.weight < self.weight:
            f = f.shift_delta((self.weight - f.weight) // 12)
        if f.weight == self.weight:
            index = {m: i for i, m in enumerate(self.monomials)}
            vec = [0] * len(self.monomials)
            for key, c in f.terms.items():
                vec[index[key]] = c
            return self._reduce_vector(vec)
        # Cross-weight reduction: express f against the basis multiplied by
        # the matching discriminant power, modulo the relations up in f's
        # own weight.
        d = (f.weight - self.weight) // 12
        W2 = f.weight
        mons2 = _monomials(W2)
        index2 = {m: i for i, m in enumerate(mons2)}

        def vec_of(poly):
            out = [0] * len(mons2)
            for key, c in poly.terms.items():
                out[index2[key]] = c
            return out

        dpow = IsobaricPoly.delta(p).power(d)
        columns = [vec_of(dpow * IsobaricPoly.monomial(p, i, j))
                   for i, j in self.basis]
        A = hasse_form(p)
        for e in _monomials(W2 - (p - 1)):
            columns.append(vec_of(A * IsobaricPoly.monomial(p, *e)))
        x = _solve_columns(columns, vec_of(f), p, unique_prefix=self.dim)
        if x is None:
            raise NotInSpan("class does not reduce into the piece")
        return tuple(x[:self.dim])


@functools.lru_cache(maxsize=None)
def graded_piece(p, weight_class):
    return GradedPiece(p, weight_class)


def reduce_in_quotient(f):
    """Coordinates of f in its graded piece; all zero iff f lies in the
    ideal generated by p and the Hasse form."""
    return graded_piece(f.p, f.class_weight).coordinates(f)


def in_quotient_ideal(f):
    return not any(reduce_in_quotient(f))


# ---------------------------------------------------------------------------
# Hecke operators.


def hecke_operator(g, ell):
    """T_ell at the expansion's own weight: a_r -> a_{ell r} + ell^{k-1} a_{r/ell}."""
    if g.modulus is not None and ell % g.modulus == 0:
        raise ValueError("the operator prime must differ from the modulus")
    k = g.weight
    if g.modulus is None:
        scalar = Fraction(ell) ** (k - 1)
    else:
        scalar = pow(ell, (k - 1) % (g.modulus - 1), g.modulus)
    out_prec = g.precision // ell
    s = g.shift
    out_shift = min(ell * s, -((-s) // ell))
    if out_prec <= out_shift:
        raise PrecisionLoss(
            f"precision {g.precision} leaves nothing after dividing by {ell}")
    vals = []
    for r in range(out_shift, out_prec):
        c = g.coeff(ell * r)
        if r % ell == 0:
            c = c + scalar * g.coeff(r // ell)
        vals.append(c)
    return QExpansion(k, vals, out_shift, g.modulus)


class HeckeMatrix:
    """Matrix of T_ell on one graded piece, columns indexed by the basis."""

    __slots__ = ("p", "weight_class", "ell", "piece", "rows")

    def __init__(self, p, weight_class, ell, piece, rows):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "weight_class", weight_class)
        object.__setattr__(self, "ell", ell)
        object.__setattr__(self, "piece", piece)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("hecke matrices are immutable")

    def apply(self, coords):
        p = self.p
        return tuple(sum(row[j] * coords[j] for j in range(len(coords))) % p
                     for row in self.rows)

    def __eq__(self, other):
        return (isinstance(other, HeckeMatrix) and self.p == other.p
                and self.ell == other.ell and self.rows == other.rows)

    __hash__ = None

    def __repr__(self):
        return (f"HeckeMatrix(p={self.p}, n={self.weight_class}, "
                f"ell={self.ell}, rows={self.rows})")


def _hecke_image_coordinates(piece, f, ell):
    """Coordinates in the piece of T_ell applied to the class of f."""
    p = piece.p
    n = piece.weight_class
    m = f.delta_shift
    lift_extra = max(ell * m, 0)
    W2 = n + 12 * lift_extra
    rows_needed = len(_monomials(W2)) + 2
    g = f.q_expansion(ell * (rows_needed + 1))
    h = hecke_operator(g, ell)
    if lift_extra:
        h = h * _delta_modp(p, h.precision + ell * abs(m) + 2).power(lift_extra)
    assert h.shift >= 0 or not any(h.coeff(r) for r in range(h.shift, 0)), \
        "pole failed to cancel against the discriminant power"
    poly = polynomial_from_expansion(W2, h)
    back = IsobaricPoly(p, W2, poly.terms, lift_extra)
    return piece.coordinates(back)


def hecke_image(f, ell):
    """Coordinates of T_ell applied to the class of f, taken in the graded
    piece of f's class weight.  Lifts of the same class give equal output."""
    piece = graded_piece(f.p, f.class_weight)
    return _hecke_image_coordinates(piece, f, ell)


@functools.lru_cache(maxsize=None)
def hecke_matrix(p, weight_class, ell):
    """T_ell on graded_piece(p, weight_class), certified to preserve the
    quotient ideal before the matrix is returned."""
    if ell == p:
        raise ValueError("the operator prime must differ from p")
    piece = graded_piece(p, weight_class)
    shift = (piece.weight - weight_class) // 12
    columns = [_hecke_image_coordinates(piece, f, ell)
               for f in piece.basis_classes()]
    A = hasse_form(p)
    for e in _monomials(piece.weight - (p - 1)):
        gen = A * IsobaricPoly.monomial(p, *e)
        gen = IsobaricPoly(p, gen.weight, gen.terms, shift)
        image = _hecke_image_coordinates(piece, gen, ell)
        assert not any(image), \
            "hecke image of an ideal generator left the ideal"
    rows = tuple(tuple(columns[j][i] for j in range(piece.dim))
                 for i in range(piece.dim))
    return HeckeMatrix(p, weight_class, ell, piece, rows)


# ---------------------------------------------------------------------------
# The two commutation identities and the Eisenstein eigensearch.


def _matmul(a, b, p):
    if not a or not b:
        return ()
    cols = len(b[0])
    inner = len(b)
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(inner)) % p
                       for j in range(cols))
                 for i in range(len(a)))


def _mat_scale(a, c, p):
    return tuple(tuple(v * c % p for v in row) for row in a)


def multiplier_commutation_holds(p, ell, span=24):
    """T_ell applied after multiplication by the weight p+1 companion equals
    ell times the other order, in every graded piece with |n| <= span."""
    B = hasse_companion(p)
    for n in range(-span, span + 1):
        piece = graded_piece(p, n)
        if piece.dim == 0:
            continue
        target = graded_piece(p, n + p + 1)
        columns = [target.coordinates(B * f) for f in piece.basis_classes()]
        mat_B = tuple(tuple(columns[j][i] for j in range(piece.dim))
                      for i in range(target.dim))
        t_low = hecke_matrix(p, n, ell).rows
        t_high = hecke_matrix(p, n + p + 1, ell).rows
        if _matmul(t_high, mat_B, p) != _mat_scale(_matmul(mat_B, t_low, p),
                                                   ell, p):
            return False
    return True


def power_identity_holds(p):
    """The companion to the power p-1 cancels the matching discriminant
    power inside the quotient ideal."""
    sign = 1 if p % 4 == 1 else -1
    B = hasse_companion(p)
    f = B.power(p - 1) + IsobaricPoly.delta(p).power((p * p - 1) // 12).scale(sign)
    return in_quotient_ideal(f)


def weight_injectivity_holds(p, W):
    """Full column rank of the monomial q-expansion matrix at weight W."""
    mons = _monomials(W)
    if not mons:
        return True
    rows = len(mons) + 2
    mat = [[_monomial_modp(p, i, j, rows).coeffs[r] for i, j in mons]
           for r in range(rows)]
    _, pivots = _rref(mat, p)
    return len(pivots) == len(mons)


def hasse_multiplication_injective(p, W):
    """Multiplication by the Hasse form is injective from weight W up."""
    mons = _monomials(W)
    if not mons:
        return True
    up = _monomials(W + p - 1)
    index = {m: i for i, m in enumerate(up)}
    A = hasse_form(p)
    cols = []
    for e in mons:
        prod = A * IsobaricPoly.monomial(p, *e)
        col = [0] * len(up)
        for key, c in prod.terms.items():
            col[index[key]] = c
        cols.append(col)
    rows = [[cols[j][i] for j in range(len(cols))] for i in range(len(up))]
    _, pivots = _rref(rows, p)
    return len(pivots) == len(mons)


def _hecke_primes(p, count):
    out = []
    candidate = 2
    while len(out) < count:
        if candidate != p and all(candidate % q for q in out):
            out.append(candidate)
        candidate += 1
    return out


def eisenstein_embedding(p, n, k):
    """Search weight class n for a simultaneous eigenvector with the
    Eisenstein eigenvalues 1 + ell^(k-1) mod p.

    Returns (predicted, found, witness): predicted is the plain congruence
    test n = k or n = p*k mod p^2 - 1, found reports the eigensearch, and
    witness carries the eigenvector's coordinates when one exists.
    """
    if k % 2:
        raise ValueError("even weight required")
    period = p * p - 1
    predicted = (n - k) % period == 0 or (n - p * k) % period == 0
    piece = graded_piece(p, n)
    if piece.dim == 0:
        return predicted, False, None
    count = 3
    while True:
        rows = []
        for ell in _hecke_primes(p, count):
            lam = (1 + pow(ell, (k - 1) % (p - 1), p)) % p
            mat = hecke_matrix(p, n, ell).rows
            for i in range(piece.dim):
                row = list(mat[i])
                row[i] = (row[i] - lam) % p
                rows.append(row)
        space = _nullspace(rows, piece.dim, p)
        if len(space) <= 1 or count >= 4:
            break
        count += 1
    if not space:
        return predicted, False, None
    return predicted, True, space[0]
