"""Finite groupoids, modules over them, and bar-complex cohomology.

A groupoid is stored as an explicit composition table and validated
exhaustively on construction: category axioms, identities, inverses.
Cochains in degree n are functions on composable n-tuples with values in
the module at the codomain object, and the three low differentials are
assembled as integer matrices mod q, so every cohomology dimension is an
exact rank computation.  Normal collections of morphisms give quotient
groupoids whose composition is re-checked representative by
representative rather than trusted.
"""

import itertools
import json

import numpy as np

from .errors import NotConnected, NotNormal, TooLarge

_MAX_MORPHISMS = 2000
_MAX_VALIDATION_TRIPLES = 300_000
_MAX_PAIR_COORDS = 1500
_MAX_TRIPLE_COORDS = 30000


def _canon(items):
    return tuple(sorted(items, key=repr))


class FiniteGroupoid:
    """A small category, given by tables, in which every morphism is invertible.

    ``dom`` and ``cod`` map morphism ids to object ids and ``compose`` maps
    the pair ``(g, f)`` with ``dom g == cod f`` to ``g`` after ``f``.  The
    constructor checks the whole table: exact composability domain,
    endpoint compatibility, associativity over every composable triple,
    a unique two-sided identity per object, and a two-sided inverse for
    every morphism.
    """

    def __init__(self, objects, dom, cod, compose):
        self.objects = tuple(objects)
        if len(set(self.objects)) != len(self.objects):
            raise ValueError("duplicate object ids")
        self.dom = dict(dom)
        self.cod = dict(cod)
        if set(self.dom) != set(self.cod):
            raise ValueError("dom and cod must cover the same morphisms")
        self.morphisms = _canon(self.dom)
        for f in self.morphisms:
            if self.dom[f] not in self.objects or self.cod[f] not in self.objects:
                raise ValueError("morphism endpoint is not an object")
        self.compose = dict(compose)
        self._by_dom = {x: [] for x in self.objects}
        self._by_cod = {x: [] for x in self.objects}
        for f in self.morphisms:
            self._by_dom[self.dom[f]].append(f)
            self._by_cod[self.cod[f]].append(f)
        self._validate()

    def _validate(self):
        dom, cod, table = self.dom, self.cod, self.compose
        pairs = [(g, f) for f in self.morphisms for g in self._by_dom[cod[f]]]
        if set(table) != set(pairs):
            raise ValueError("composition table does not match composable pairs")
        for g, f in pairs:
            h = table[(g, f)]
            if h not in dom:
                raise ValueError("composite is not a morphism")
            if dom[h] != dom[f] or cod[h] != cod[g]:
                raise ValueError("composite has wrong endpoints")

        self.identity = {}
        for x in self.objects:
            loops = [e for e in self._by_dom[x] if cod[e] == x]
            units = [e for e in loops
                     if all(table[(f, e)] == f for f in self._by_dom[x])
                     and all(table[(e, g)] == g for g in self._by_cod[x])]
            if len(units) != 1:
                raise ValueError("object %r needs exactly one identity" % (x,))
            self.identity[x] = units[0]

        triple_count = sum(len(self._by_cod[dom[g]]) * len(self._by_dom[cod[g]])
                           for g in self.morphisms)
        if triple_count > _MAX_VALIDATION_TRIPLES:
            raise TooLarge("%d composable triples is past the exhaustive "
                           "validation budget" % triple_count)
        for g, f in pairs:
            gf = table[(g, f)]
            for h in self._by_dom[cod[g]]:
                if table[(table[(h, g)], f)] != table[(h, gf)]:
                    raise ValueError("composition is not associative")

        self.inverse = {}
        for f in self.morphisms:
            invs = [g for g in self._by_dom[cod[f]]
                    if cod[g] == dom[f]
                    and table[(g, f)] == self.identity[dom[f]]
                    and table[(f, g)] == self.identity[cod[f]]]
            if len(invs) != 1:
                raise ValueError("morphism %r needs exactly one inverse" % (f,))
            self.inverse[f] = invs[0]

    def hom(self, x, y):
        return tuple(f for f in self._by_dom[x] if self.cod[f] == y)

    def vertex_group(self, x):
        """The one-object groupoid of loops at ``x``."""
        loops = self.hom(x, x)
        dom = {f: x for f in loops}
        table = {(g, f): self.compose[(g, f)] for g in loops for f in loops}
        return FiniteGroupoid((x,), dom, dict(dom), table)

    def composable_pairs(self):
        return tuple((g, f) for f in self.morphisms
                     for g in self._by_dom[self.cod[f]])


def connected_components(groupoid):
    """Partition of the objects by zigzags of morphisms (a union-find pass)."""
    parent = {x: x for x in groupoid.objects}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for f in groupoid.morphisms:
        a, b = find(groupoid.dom[f]), find(groupoid.cod[f])
        if a != b:
            parent[a] = b
    buckets = {}
    for x in groupoid.objects:
        buckets.setdefault(find(x), []).append(x)
    return _canon(_canon(part) for part in buckets.values())


# -- builders ---------------------------------------------------------------

def cyclic_group_groupoid(n):
    """Z/n as a groupoid with one object ``"*"`` and morphisms 0..n-1."""
    dom = {k: "*" for k in range(n)}
    table = {(a, b): (a + b) % n for a in range(n) for b in range(n)}
    return FiniteGroupoid(("*",), dom, dict(dom), table)


def symmetric_group_groupoid(n):
    """The symmetric group on ``range(n)``; morphism ids are the permutation tuples."""
    perms = tuple(itertools.permutations(range(n)))
    dom = {s: "*" for s in perms}
    table = {(g, f): tuple(g[f[i]] for i in range(n)) for g in perms for f in perms}
    return FiniteGroupoid(("*",), dom, dict(dom), table)


def connected_groupoid(objects, group):
    """Spread a one-object ``group`` over several objects.

    Morphisms are triples ``(y, g, x)`` from ``x`` to ``y``, composing
    through the group: ``(z, h, y) o (y, g, x) = (z, h o g, x)``.
    """
    if len(group.objects) != 1:
        raise ValueError("the vertex group must have a single object")
    objects = tuple(objects)
    els = group.morphisms
    dom = {}
    cod = {}
    for x in objects:
        for y in objects:
            for g in els:
                dom[(y, g, x)] = x
                cod[(y, g, x)] = y
    table = {}
    for x in objects:
        for y in objects:
            for z in objects:
                for g in els:
                    for h in els:
                        table[((z, h, y), (y, g, x))] = (z, group.compose[(h, g)], x)
    return FiniteGroupoid(objects, dom, cod, table)


def disjoint_union(*groupoids):
    """Side-by-side union; ids are tagged ``(index, original id)``."""
    objects = []
    dom = {}
    cod = {}
    table = {}
    for i, g in enumerate(groupoids):
        objects.extend((i, x) for x in g.objects)
        for f in g.morphisms:
            dom[(i, f)] = (i, g.dom[f])
            cod[(i, f)] = (i, g.cod[f])
        for (a, b), c in g.compose.items():
            table[((i, a), (i, b))] = (i, c)
    return FiniteGroupoid(objects, dom, cod, table)


def groupoid_from_json(data):
    """Build a groupoid from ``{"objects": [...], "morphisms": [...], "compose": [...]}``.

    Morphisms are ``{"id":..., "dom":..., "cod":...}`` records and each
    compose entry ``[g, f, h]`` declares that ``g`` after ``f`` is ``h``.
    """
    if isinstance(data, str):
        data = json.loads(data)
    dom = {}
    cod = {}
    for rec in data["morphisms"]:
        dom[rec["id"]] = rec["dom"]
        cod[rec["id"]] = rec["cod"]
    table = {(g, f): h for g, f, h in data["compose"]}
    return FiniteGroupoid(tuple(data["objects"]), dom, cod, table)


# -- matrices over F_q ------------------------------------------------------

def _mat_id(d):
    return tuple(tuple(int(i == j) for j in range(d)) for i in range(d))

def _mat_mul(a, b, q):
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) % q
                       for col in zip(*b)) for row in a)

def _mat_inv(a, q):
    d = len(a)
    work = [list(row) + list(ident) for row, ident in zip(a, _mat_id(d))]
    for c in range(d):
        piv = next((r for r in range(c, d) if work[r][c] % q), None)
        if piv is None:
            raise ValueError("matrix is singular mod %d" % q)
        work[c], work[piv] = work[piv], work[c]
        inv = pow(work[c][c], q - 2, q)
        work[c] = [v * inv % q for v in work[c]]
        for r in range(d):
            if r != c and work[r][c] % q:
                s = work[r][c]
                work[r] = [(v - s * w) % q for v, w in zip(work[r], work[c])]
    return tuple(tuple(row[d:]) for row in work)

def _block_diag(a, b):
    da, db = len(a), len(b)
    top = tuple(row + (0,) * db for row in a)
    bot = tuple((0,) * da + row for row in b)
    return top + bot


class GroupoidModule:
    """A functor from a groupoid to F_q vector spaces, as one matrix per morphism.

    ``dims[x]`` is the dimension at object ``x`` and ``mats[f]`` has shape
    (dim at cod, dim at dom).  Functoriality and normalization of the
    identities are checked over the whole composition table.
    """

    def __init__(self, groupoid, char, dims, mats):
        if char < 2 or any(char % d == 0 for d in range(2, char)):
            raise ValueError("the coefficient characteristic must be prime")
        self.groupoid = groupoid
        self.char = char
        self.dims = dict(dims)
        self.mats = {f: tuple(tuple(v % char for v in row) for row in m)
                     for f, m in mats.items()}
        for x in groupoid.objects:
            if self.dims.get(x, 0) < 1:
                raise ValueError("every object needs a positive dimension")
        for f in groupoid.morphisms:
            m = self.mats.get(f)
            want = (self.dims[groupoid.cod[f]], self.dims[groupoid.dom[f]])
            if m is None or (len(m), len(m[0])) != want:
                raise ValueError("matrix for %r must have shape %r" % (f, want))
        for x in groupoid.objects:
            if self.mats[groupoid.identity[x]] != _mat_id(self.dims[x]):
                raise ValueError("identity morphisms must act as the identity")
        for g, f in groupoid.composable_pairs():
            left = self.mats[groupoid.compose[(g, f)]]
            if left != _mat_mul(self.mats[g], self.mats[f], char):
                raise ValueError("module is not functorial at (%r, %r)" % (g, f))

    def matrix(self, f):
        return self.mats[f]

    def dim(self, x):
        return self.dims[x]

    def restrict(self, sub):
        """The same functor on a groupoid holding a subset of the ids."""
        return GroupoidModule(sub, self.char,
                              {x: self.dims[x] for x in sub.objects},
                              {f: self.mats[f] for f in sub.morphisms})


def trivial_module(groupoid, char, dim):
    """Every object gets F_q^dim and every morphism the identity."""
    eye = _mat_id(dim)
    return GroupoidModule(groupoid, char,
                          {x: dim for x in groupoid.objects},
                          {f: eye for f in groupoid.morphisms})


def module_from_representation(groupoid, char, rep, twists=None):
    """Extend a vertex-group representation over a connected groupoid.

    ``rep`` maps group element ids to matrices.  On a groupoid built by
    ``connected_groupoid`` (morphism ids ``(y, g, x)``) the matrix used is
    ``T_y rep[g] T_x^{-1}`` with ``twists`` supplying the optional
    invertible change of basis per object; a bare one-object group is
    accepted directly.
    """
    dim = len(next(iter(rep.values())))
    twists = dict(twists or {})
    for x in groupoid.objects:
        twists.setdefault(x, _mat_id(dim))
    untwists = {x: _mat_inv(t, char) for x, t in twists.items()}
    mats = {}
    for f in groupoid.morphisms:
        if f in rep:
            mats[f] = rep[f]
        else:
            y, g, x = f
            mats[f] = _mat_mul(twists[y], _mat_mul(rep[g], untwists[x], char), char)
    return GroupoidModule(groupoid, char,
                          {x: dim for x in groupoid.objects}, mats)


# -- the bar complex --------------------------------------------------------

def _triples(groupoid):
    return tuple((h, g, f) for g, f in groupoid.composable_pairs()
                 for h in groupoid._by_dom[groupoid.cod[g]])


def _offsets(cells, dims):
    offsets = {}
    total = 0
    for cell, d in zip(cells, dims):
        offsets[cell] = total
        total += d
    return offsets, total


def _bar_differentials(groupoid, module, top):
    """The matrices of d^0, ..., d^(top-1) as int16 arrays mod q.

    Degree-n cochains assign to a composable n-tuple a vector in the module
    at the codomain of its leftmost morphism; objects serve as 0-tuples.
    """
    q = module.char
    dims, mats, dom, cod = module.dims, module.mats, groupoid.dom, groupoid.cod
    obj_off, c0 = _offsets(groupoid.objects, [dims[x] for x in groupoid.objects])
    mors = groupoid.morphisms
    mor_off, c1 = _offsets(mors, [dims[cod[f]] for f in mors])
    out = []

    d0 = np.zeros((c1, c0), dtype=np.int16)
    for f in mors:
        r, d = mor_off[f], dims[cod[f]]
        block = np.array(mats[f], dtype=np.int16).reshape(d, dims[dom[f]])
        d0[r:r + d, obj_off[dom[f]]:obj_off[dom[f]] + dims[dom[f]]] += block
        d0[r:r + d, obj_off[cod[f]]:obj_off[cod[f]] + d] -= np.eye(d, dtype=np.int16)
    out.append(d0 % q)
    if top >= 2:
        pairs = groupoid.composable_pairs()
        pair_off, c2 = _offsets(pairs, [dims[cod[g]] for g, f in pairs])

        def add(mat, row, rd, col, block):
            mat[row:row + rd, col:col + block.shape[1]] += block

        d1 = np.zeros((c2, c1), dtype=np.int16)
        for g, f in pairs:
            r, d = pair_off[(g, f)], dims[cod[g]]
            mg = np.array(mats[g], dtype=np.int16)
            add(d1, r, d, mor_off[f], mg)
            gf = groupoid.compose[(g, f)]
            eye = np.eye(d, dtype=np.int16)
            add(d1, r, d, mor_off[gf], -eye)
            add(d1, r, d, mor_off[g], eye)
        out.append(d1 % q)
    if top >= 3:
        trips = _triples(groupoid)
        trip_off, c3 = _offsets(trips, [dims[cod[h]] for h, g, f in trips])
        d2 = np.zeros((c3, c2), dtype=np.int16)
        for h, g, f in trips:
            r, d = trip_off[(h, g, f)], dims[cod[h]]
            eye = np.eye(d, dtype=np.int16)
            add(d2, r, d, pair_off[(g, f)], np.array(mats[h], dtype=np.int16))
            add(d2, r, d, pair_off[(groupoid.compose[(h, g)], f)], -eye)
            add(d2, r, d, pair_off[(h, groupoid.compose[(g, f)])], eye)
            add(d2, r, d, pair_off[(h, g)], -eye)
        out.append(d2 % q)
    return out


def _rank_mod(a, q):
    a = (a.astype(np.int64) % q).astype(np.int16)
    rows, cols = a.shape
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), q - 2, q)
        if inv != 1:
            a[r, c:] = a[r, c:] * inv % q
        hit = np.nonzero(a[r + 1:, c])[0] + r + 1
        if hit.size:
            a[hit, c:] = (a[hit, c:] - np.outer(a[hit, c], a[r, c:])) % q
        r += 1
    return r


def _size_guard(groupoid, module, degree):
    if len(groupoid.morphisms) > _MAX_MORPHISMS:
        raise TooLarge("groupoid has %d morphisms, cap is %d"
                       % (len(groupoid.morphisms), _MAX_MORPHISMS))
    dims, cod = module.dims, groupoid.cod
    if degree >= 1:
        c2 = sum(dims[cod[g]] for g, f in groupoid.composable_pairs())
        if c2 > _MAX_PAIR_COORDS:
            raise TooLarge("degree-2 cochains need %d coordinates" % c2)
    if degree >= 2:
        c3 = sum(dims[cod[h]] for h, g, f in _triples(groupoid))
        if c3 > _MAX_TRIPLE_COORDS:
            raise TooLarge("degree-3 cochains need %d coordinates" % c3)


def cohomology(groupoid, module, n):
    """The dimension of H^n of the bar complex, for n in {0, 1, 2}.

    H^0 is literally the fixed-point space: the kernel of
    ``phi -> M(f) phi(dom f) - phi(cod f)``.
    """
    if n not in (0, 1, 2):
        raise ValueError("only degrees 0, 1, 2 are computed")
    _size_guard(groupoid, module, n)
    diffs = _bar_differentials(groupoid, module, n + 1)
    q = module.char
    below = _rank_mod(diffs[n - 1], q) if n else 0
    kernel = diffs[n].shape[1] - _rank_mod(diffs[n], q)
    return kernel - below


def cohomology_dims(groupoid, module):
    """(dim H^0, dim H^1, dim H^2) with each rank computed once."""
    _size_guard(groupoid, module, 2)
    d0, d1, d2 = _bar_differentials(groupoid, module, 3)
    q = module.char
    r0, r1, r2 = _rank_mod(d0, q), _rank_mod(d1, q), _rank_mod(d2, q)
    return (d0.shape[1] - r0, d1.shape[1] - r1 - r0, d2.shape[1] - r2 - r1)


def vertex_reduction_check(groupoid, module, base):
    """Whether H^n of the whole groupoid matches H^n of one vertex group.

    Requires a connected groupoid; the comparison runs the same bar
    machinery on the loops at ``base`` with the restricted module.
    """
    if len(connected_components(groupoid)) != 1:
        raise NotConnected("vertex reduction needs a connected groupoid")
    vertex = groupoid.vertex_group(base)
    return cohomology_dims(groupoid, module) == cohomology_dims(
        vertex, module.restrict(vertex))


# -- normality and quotients ------------------------------------------------

class NormalSubgroupoid:
    """A set of morphisms closed enough to divide by.

    Checked on construction: all identities present, closure under
    composition and inverse, and stability of every vertex part under
    conjugation by arbitrary morphisms of the ambient groupoid.
    """

    def __init__(self, groupoid, morphisms):
        self.groupoid = groupoid
        self.morphisms = frozenset(morphisms)
        if not self.morphisms <= set(groupoid.morphisms):
            raise NotNormal("unknown morphism ids in the subgroupoid")
        missing = set(groupoid.identity.values()) - self.morphisms
        if missing:
            raise NotNormal("subgroupoid must contain every identity")
        for f in self.morphisms:
            if groupoid.inverse[f] not in self.morphisms:
                raise NotNormal("subgroupoid is not closed under inverse")
        for g in self.morphisms:
            for f in self.morphisms:
                if groupoid.dom[g] == groupoid.cod[f]:
                    if groupoid.compose[(g, f)] not in self.morphisms:
                        raise NotNormal("subgroupoid is not closed under composition")
        for f in groupoid.morphisms:
            x, y = groupoid.dom[f], groupoid.cod[f]
            fi = groupoid.inverse[f]
            for n in self.morphisms:
                if groupoid.dom[n] == groupoid.cod[n] == x:
                    conj = groupoid.compose[(groupoid.compose[(f, n)], fi)]
                    if conj not in self.morphisms:
                        raise NotNormal("vertex part at %r is not conjugation "
                                        "stable" % (x,))

    def hom(self, x, y):
        g = self.groupoid
        return tuple(n for n in _canon(self.morphisms)
                     if g.dom[n] == x and g.cod[n] == y)


def quotient_projection(groupoid, normal):
    """The quotient groupoid with its object and morphism class maps.

    Objects merge along the normal morphisms and two morphisms are merged
    when one is ``q o f o p^(-1)`` for ``p, q`` normal.  Composition of
    classes is computed from representatives and then re-verified over all
    representative choices; a failure raises ``NotNormal``.
    """
    if not isinstance(normal, NormalSubgroupoid):
        normal = NormalSubgroupoid(groupoid, normal)
    G = groupoid
    nset = _canon(normal.morphisms)

    mor_index = {f: i for i, f in enumerate(G.morphisms)}
    parent = list(range(len(G.morphisms)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def join(a, b):
        ra, rb = find(mor_index[a]), find(mor_index[b])
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for f in G.morphisms:
        for p in nset:
            if G.dom[p] != G.dom[f]:
                continue
            fp = G.compose[(f, G.inverse[p])]
            for q_ in nset:
                if G.dom[q_] == G.cod[f]:
                    join(f, G.compose[(q_, fp)])

    mor_class = {f: G.morphisms[find(mor_index[f])] for f in G.morphisms}
    obj_class = {x: mor_class[G.identity[x]] for x in G.objects}
    # the object class is named by the class of its identity loop; collect
    # the member objects under each name for the partition-style label
    members = {}
    for x in G.objects:
        members.setdefault(obj_class[x], []).append(x)
    obj_label = {rep: _canon(xs) for rep, xs in members.items()}

    new_objects = _canon(obj_label.values())
    new_dom = {}
    new_cod = {}
    for f in set(mor_class.values()):
        new_dom[f] = obj_label[obj_class[G.dom[f]]]
        new_cod[f] = obj_label[obj_class[G.cod[f]]]

    classes = _canon(set(mor_class.values()))
    by_dom_class = {}
    for f in classes:
        by_dom_class.setdefault(new_dom[f], []).append(f)

    reps = {}
    for f in G.morphisms:
        reps.setdefault(mor_class[f], []).append(f)

    table = {}
    for a in classes:
        for b in by_dom_class.get(new_cod[a], ()):
            results = set()
            for f in reps[a]:
                for g in reps[b]:
                    for n in normal.hom(G.cod[f], G.dom[g]):
                        results.add(mor_class[G.compose[(g, G.compose[(n, f)])]])
            if len(results) != 1:
                raise NotNormal("composition of classes is not well defined")
            table[(b, a)] = results.pop()

    quotient = FiniteGroupoid(new_objects, new_dom, new_cod, table)
    obj_map = {x: obj_label[obj_class[x]] for x in G.objects}
    return quotient, obj_map, dict(mor_class)


def quotient_groupoid(groupoid, normal):
    """Divide a groupoid by a normal collection of morphisms."""
    return quotient_projection(groupoid, normal)[0]


# -- a small representation catalog and randomized instances ----------------

def _perm_sign(perm):
    flips = sum(1 for i, j in itertools.combinations(range(len(perm)), 2)
                if perm[i] > perm[j])
    return -1 if flips % 2 else 1


def standard_representation(group, char):
    """The permutation action on sum-zero coordinates, dimension n - 1.

    Basis vector ``t`` of the sum-zero subspace of F_q^n is
    ``e_(t-1) - e_t``; the matrix columns are the images of these vectors
    written back in that basis by partial sums.
    """
    n = len(next(iter(group.morphisms)))

    def coords(vec):
        out = []
        total = 0
        for v in vec[:-1]:
            total += v
            out.append(total % char)
        return out

    rep = {}
    for perm in group.morphisms:
        cols = []
        for t in range(1, n):
            vec = [0] * n
            vec[perm[t - 1]] += 1
            vec[perm[t]] -= 1
            cols.append(coords(vec))
        rep[perm] = tuple(tuple(col[i] for col in cols) for i in range(n - 1))
    return rep


def sign_representation(group, char):
    return {perm: ((_perm_sign(perm) % char,),) for perm in group.morphisms}


def cyclic_representation(group, char, generator_matrix):
    """Powers of one matrix indexed by the elements 0..n-1 of a cyclic group."""
    n = len(group.morphisms)
    rep = {0: _mat_id(len(generator_matrix))}
    for k in range(1, n):
        rep[k] = _mat_mul(rep[k - 1], generator_matrix, char)
    if _mat_mul(rep[n - 1], generator_matrix, char) != rep[0]:
        raise ValueError("generator matrix order does not divide %d" % n)
    return rep


_CYCLIC_GENERATORS = {
    (2, 2): ((1, 1), (0, 1)),
    (2, 3): ((2,),),
    (3, 2): ((0, 1), (1, 1)),
    (3, 3): ((1, 1), (0, 1)),
    (4, 2): ((0, 0, 1), (1, 0, 1), (0, 1, 1)),
    (4, 3): ((0, 1), (2, 0)),
}

_GROUP_KINDS = ("z2", "z3", "z4", "s3")


def _group_for(kind):
    if kind == "s3":
        return symmetric_group_groupoid(3)
    return cyclic_group_groupoid(int(kind[1]))


def _pad_rep(rep, dim, char):
    have = len(next(iter(rep.values())))
    if have > dim:
        raise ValueError("representation does not fit in dimension %d" % dim)
    pad = _mat_id(dim - have)
    return {g: _block_diag(m, pad) if have < dim else m for g, m in rep.items()}


def _random_invertible(rng, dim, char):
    while True:
        m = tuple(tuple(rng.randrange(char) for _ in range(dim))
                  for _ in range(dim))
        try:
            _mat_inv(m, char)
        except ValueError:
            continue
        return m


def _random_vertex_rep(rng, kind, group, char, dim):
    trivial_rep = {g: _mat_id(dim) for g in group.morphisms}
    options = [trivial_rep]
    if kind == "s3":
        if dim >= 2:
            options.append(_pad_rep(standard_representation(group, char), dim, char))
        if char == 3:
            options.append(_pad_rep(sign_representation(group, char), dim, char))
    else:
        n = int(kind[1])
        gen = _CYCLIC_GENERATORS[(n, char)]
        if len(gen) <= dim:
            options.append(_pad_rep(cyclic_representation(group, char, gen),
                                    dim, char))
    rep = options[rng.randrange(len(options))]
    if rep is not trivial_rep and rng.randrange(2):
        s = _random_invertible(rng, dim, char)
        si = _mat_inv(s, char)
        rep = {g: _mat_mul(s, _mat_mul(m, si, char), char)
               for g, m in rep.items()}
    return rep


def random_groupoid(rng):
    """One randomized (groupoid, module) pair inside the cohomology budget.

    Up to three connected components over at most six objects, vertex
    groups drawn from Z/2, Z/3, Z/4 and S3, module dimensions up to three
    over F_2 or F_3, with scrambled but functorial matrices.
    """
    char = rng.choice((2, 3))
    parts = []
    objects_left = 6
    pair_coords = 0
    triple_coords = 0
    for index in range(rng.choice((1, 1, 2, 2, 3))):
        if not objects_left:
            break
        for _ in range(20):
            k = min(rng.choice((1, 1, 2, 2, 3)), objects_left)
            kind = rng.choice(_GROUP_KINDS)
            dim = rng.choice((1, 1, 2, 2, 3))
            m = 6 if kind == "s3" else int(kind[1])
            if (pair_coords + k ** 3 * m * m * dim <= 900
                    and triple_coords + k ** 4 * m ** 3 * dim <= 18000):
                break
        else:
            k, kind, dim, m = 1, "z2", 1, 2
        pair_coords += k ** 3 * m * m * dim
        triple_coords += k ** 4 * m ** 3 * dim
        objects_left -= k
        group = _group_for(kind)
        names = tuple("c%d.o%d" % (index, i) for i in range(k))
        part = connected_groupoid(names, group) if k > 1 else None
        if part is None:
            part = group
            rep = _random_vertex_rep(rng, kind, group, char, dim)
            mod = module_from_representation(part, char, rep)
        else:
            rep = _random_vertex_rep(rng, kind, group, char, dim)
            twists = {x: _random_invertible(rng, dim, char) if rng.randrange(2)
                      else _mat_id(dim) for x in names}
            mod = module_from_representation(part, char, rep, twists)
        parts.append((part, mod))
    union = disjoint_union(*(g for g, _ in parts))
    dims = {}
    mats = {}
    for i, (g, mod) in enumerate(parts):
        for x in g.objects:
            dims[(i, x)] = mod.dims[x]
        for f in g.morphisms:
            mats[(i, f)] = mod.mats[f]
    return union, GroupoidModule(union, char, dims, mats)
