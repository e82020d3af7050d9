"""Differential graded Lie and commutative algebras by structure constants.

Sign conventions used everywhere in this package:

    [x,y] = -(-1)^{|x||y|} [y,x]
    [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
    d[x,y] = [dx,y] + (-1)^{|x|} [x,dy]
    [a@x, b@y] = (-1)^{|x||b|} (ab) @ [x,y]
    d(a@x) = (da)@x + (-1)^{|a|} a@(dx)

Elements are sparse dicts {global basis index: Fraction}.  Axioms are
validated eagerly at construction on every basis pair/triple; internal
constructions that preserve the axioms may opt out (they stay covered by
randomized validation in the test suite).
"""

from fractions import Fraction

from .cochain import Cochain, CochainMap, GradedSpace, DEFAULT_TOP_DEGREE
from .linalg import ZERO, coords_in_span, span_basis, zero_matrix


# ---------------------------------------------------------------------------
# sparse element helpers


def el_add(x, y):
    out = dict(x)
    for k, v in y.items():
        s = out.get(k, ZERO) + v
        if s:
            out[k] = s
        else:
            out.pop(k, None)
    return out


def el_sub(x, y):
    return el_add(x, {k: -v for k, v in y.items()})


def el_scale(c, x):
    if not c:
        return {}
    return {k: c * v for k, v in x.items()}


def el_is_zero(x):
    return all(not v for v in x.values())


def el_eq(x, y):
    return el_is_zero(el_sub(x, y))


def el_from_pairs(pairs):
    out = {}
    for k, v in pairs:
        if v:
            out[k] = out.get(k, ZERO) + v
            if not out[k]:
                del out[k]
    return out


class DgLieAlgebra:
    """Finite-dimensional non-negatively graded dg Lie algebra."""

    def __init__(self, cochain, brackets, validate=True, name=None):
        """brackets: {(i, j): {k: coeff}} on global basis indices.

        Missing pairs are zero; the (j, i) entry is filled in from graded
        antisymmetry when only one order is given.
        """
        self.cochain = cochain
        self.space = cochain.space
        self.name = name
        table = {}
        for (i, j), val in brackets.items():
            val = {k: v for k, v in val.items() if v}
            di, dj = self.space.degree_of(i), self.space.degree_of(j)
            for k in val:
                if self.space.degree_of(k) != di + dj:
                    raise ValueError(
                        f"bracket [{i},{j}] hits degree "
                        f"{self.space.degree_of(k)}, expected {di + dj}")
            if (i, j) in table and table[(i, j)] != val:
                raise ValueError(f"conflicting entries for bracket ({i},{j})")
            table[(i, j)] = val
            sign = -Fraction((-1) ** (di * dj))
            flipped = {k: sign * v for k, v in val.items()}
            if (j, i) in table:
                if table[(j, i)] != flipped and not (i == j):
                    raise ValueError(
                        f"brackets ({i},{j}) and ({j},{i}) break antisymmetry")
            elif i != j:
                table[(j, i)] = flipped
        self.table = {ij: v for ij, v in table.items() if v}
        self.d_table = _differential_table(self.cochain)
        if validate:
            self.validate()

    # -- basic structure ----------------------------------------------------

    def degree_of(self, gidx):
        return self.space.degree_of(gidx)

    def total_dim(self):
        return self.space.total_dim()

    def bracket_basis(self, i, j):
        return self.table.get((i, j), {})

    def bracket(self, x, y):
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                c = a * b
                if not c:
                    continue
                for k, s in self.bracket_basis(i, j).items():
                    v = out.get(k, ZERO) + c * s
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return out

    def d_element(self, x):
        out = {}
        for i, a in x.items():
            for gk, c in self.d_table.get(i, {}).items():
                v = out.get(gk, ZERO) + a * c
                if v:
                    out[gk] = v
                else:
                    out.pop(gk, None)
        return out

    def basis_element(self, gidx):
        return {gidx: Fraction(1)}

    def is_abelian(self):
        return not self.table

    # -- dense/sparse conversions -------------------------------------------

    def to_degree_vector(self, x, n):
        idxs = self.space.degree_indices(n)
        return [x.get(g, ZERO) for g in idxs]

    def from_degree_vector(self, n, vec):
        idxs = self.space.degree_indices(n)
        return el_from_pairs(zip(idxs, vec))

    def to_global_vector(self, x):
        return [x.get(g, ZERO) for g in range(self.total_dim())]

    def from_global_vector(self, vec):
        return el_from_pairs(enumerate(vec))

    def degree_component(self, x, n):
        return {k: v for k, v in x.items() if self.degree_of(k) == n}

    # -- validation ----------------------------------------------------------

    def validate(self):
        """Check graded antisymmetry, Jacobi and Leibniz on all basis tuples."""
        n = self.total_dim()
        for i in range(n):
            di = self.degree_of(i)
            if di % 2 == 0 and self.bracket_basis(i, i):
                raise ValueError(f"[x,x] != 0 for even basis element {i}")
            for j in range(n):
                dj = self.degree_of(j)
                lhs = self.bracket_basis(i, j)
                rhs = el_scale(-Fraction((-1) ** (di * dj)),
                               self.bracket_basis(j, i))
                if not el_eq(lhs, rhs):
                    raise ValueError(f"antisymmetry fails on pair ({i},{j})")
                # Leibniz
                xi, xj = self.basis_element(i), self.basis_element(j)
                left = self.d_element(self.bracket_basis(i, j))
                right = el_add(
                    self.bracket(self.d_element(xi), xj),
                    el_scale(Fraction((-1) ** di),
                             self.bracket(xi, self.d_element(xj))))
                if not el_eq(left, right):
                    raise ValueError(f"Leibniz fails on pair ({i},{j})")
        for i in range(n):
            di = self.degree_of(i)
            xi = self.basis_element(i)
            for j in range(n):
                dj = self.degree_of(j)
                xj = self.basis_element(j)
                for k in range(n):
                    xk = self.basis_element(k)
                    lhs = self.bracket(xi, self.bracket(xj, xk))
                    rhs = el_add(
                        self.bracket(self.bracket(xi, xj), xk),
                        el_scale(Fraction((-1) ** (di * dj)),
                                 self.bracket(xj, self.bracket(xi, xk))))
                    if not el_eq(lhs, rhs):
                        raise ValueError(
                            f"Jacobi fails on triple ({i},{j},{k})")
        return True


def _differential_table(cochain):
    """Sparse form of the differential: {gidx: {gidx: coeff}}."""
    space = cochain.space
    table = {}
    for n in space.nonzero_degrees():
        M = cochain.d_matrix(n)
        targets = space.degree_indices(n + 1)
        for col, src in enumerate(space.degree_indices(n)):
            entry = {targets[r]: M[r][col]
                     for r in range(len(targets)) if M[r][col]}
            if entry:
                table[src] = entry
    return table


class DgLieMap:
    """Map of dg Lie algebras: chain map respecting brackets."""

    def __init__(self, source, target, blocks, validate=True):
        self.source = source
        self.target = target
        self.cmap = CochainMap(source.cochain, target.cochain, blocks)
        self.map_table = {}
        for n in source.space.nonzero_degrees():
            M = self.cmap.block(n)
            targets = target.space.degree_indices(n)
            for col, src in enumerate(source.space.degree_indices(n)):
                entry = {targets[r]: M[r][col]
                         for r in range(len(targets)) if M[r][col]}
                if entry:
                    self.map_table[src] = entry
        if validate:
            n = source.total_dim()
            for i in range(n):
                for j in range(n):
                    lhs = self.apply(source.bracket_basis(i, j))
                    rhs = target.bracket(self.apply(source.basis_element(i)),
                                         self.apply(source.basis_element(j)))
                    if not el_eq(lhs, rhs):
                        raise ValueError(
                            f"map breaks the bracket on pair ({i},{j})")

    def apply(self, x):
        out = {}
        for i, a in x.items():
            for gk, c in self.map_table.get(i, {}).items():
                v = out.get(gk, ZERO) + a * c
                if v:
                    out[gk] = v
                else:
                    out.pop(gk, None)
        return out

    def is_surjective(self):
        return self.cmap.is_surjective()


def identity_map(g):
    blocks = {}
    for n in g.space.nonzero_degrees():
        k = g.space.dim(n)
        blocks[n] = [[Fraction(i == j) for j in range(k)] for i in range(k)]
    return DgLieMap(g, g, blocks, validate=False)


# ---------------------------------------------------------------------------
# commutative side: dg commutative algebras and artinian local algebras


class DgCommAlgebra:
    """Graded commutative dg algebra with unit, by structure constants."""

    def __init__(self, cochain, products, unit_index, validate=True):
        self.cochain = cochain
        self.space = cochain.space
        self.products = {}
        for (i, j), val in products.items():
            val = {k: v for k, v in val.items() if v}
            di = self.space.degree_of(i) + self.space.degree_of(j)
            for k in val:
                if self.space.degree_of(k) != di:
                    raise ValueError("product breaks the grading")
            self.products[(i, j)] = val
        self.unit_index = unit_index
        self.d_table = _differential_table(cochain)
        if validate:
            self.validate()

    def degree_of(self, gidx):
        return self.space.degree_of(gidx)

    def multiply_basis(self, i, j):
        if (i, j) in self.products:
            return self.products[(i, j)]
        if (j, i) in self.products:
            di, dj = self.degree_of(i), self.degree_of(j)
            return el_scale(Fraction((-1) ** (di * dj)), self.products[(j, i)])
        return {}

    def multiply(self, x, y):
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, s in self.multiply_basis(i, j).items():
                    v = out.get(k, ZERO) + a * b * s
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return out

    def d_element(self, x):
        out = {}
        for i, a in x.items():
            for gk, c in self.d_table.get(i, {}).items():
                v = out.get(gk, ZERO) + a * c
                if v:
                    out[gk] = v
                else:
                    out.pop(gk, None)
        return out

    def basis_element(self, gidx):
        return {gidx: Fraction(1)}

    def validate(self):
        n = self.space.total_dim()
        one = self.basis_element(self.unit_index)
        if self.degree_of(self.unit_index) != 0:
            raise ValueError("unit must sit in degree 0")
        for i in range(n):
            xi = self.basis_element(i)
            if not el_eq(self.multiply(one, xi), xi) or \
                    not el_eq(self.multiply(xi, one), xi):
                raise ValueError(f"unit axiom fails on {i}")
            di = self.degree_of(i)
            for j in range(n):
                dj = self.degree_of(j)
                xj = self.basis_element(j)
                lhs = self.multiply_basis(i, j)
                rhs = el_scale(Fraction((-1) ** (di * dj)),
                               self.multiply_basis(j, i))
                if not el_eq(lhs, rhs):
                    raise ValueError(f"commutativity fails on ({i},{j})")
                left = self.d_element(self.multiply_basis(i, j))
                right = el_add(
                    self.multiply(self.d_element(xi), xj),
                    el_scale(Fraction((-1) ** di),
                             self.multiply(xi, self.d_element(xj))))
                if not el_eq(left, right):
                    raise ValueError(f"Leibniz fails on ({i},{j})")
                for k in range(n):
                    xk = self.basis_element(k)
                    a1 = self.multiply(self.multiply(xi, xj), xk)
                    a2 = self.multiply(xi, self.multiply(xj, xk))
                    if not el_eq(a1, a2):
                        raise ValueError(
                            f"associativity fails on ({i},{j},{k})")
        return True


def ground_field(label="1"):
    """The field k as a dg commutative algebra concentrated in degree 0."""
    space = GradedSpace({0: [label]})
    cochain = Cochain(space, {})
    return DgCommAlgebra(cochain, {(0, 0): {0: Fraction(1)}}, 0,
                         validate=False)


class MaximalIdeal:
    """Non-unital nilpotent commutative algebra, all in degree 0."""

    def __init__(self, labels, products, nilpotency=None):
        """products: {(i, j): {k: coeff}} on ideal basis indices."""
        self.labels = list(labels)
        n = len(self.labels)
        self.products = {}
        for (i, j), val in products.items():
            val = {k: v for k, v in val.items() if v}
            if val:
                self.products[(i, j)] = val
        # commutativity and associativity
        for i in range(n):
            for j in range(n):
                if not el_eq(self.multiply_basis(i, j),
                             self.multiply_basis(j, i)):
                    raise ValueError(f"ideal multiplication not commutative "
                                     f"on ({i},{j})")
                for k in range(n):
                    a1 = self.multiply({i: Fraction(1)},
                                       self.multiply_basis(j, k))
                    a2 = self.multiply(self.multiply_basis(i, j),
                                       {k: Fraction(1)})
                    if not el_eq(a1, a2):
                        raise ValueError("ideal multiplication not associative")
        self.nilpotency = self._nilpotency_degree()
        if nilpotency is not None and nilpotency != self.nilpotency:
            raise ValueError("declared nilpotency degree is wrong")

    def dim(self):
        return len(self.labels)

    def multiply_basis(self, i, j):
        return self.products.get((i, j), self.products.get((j, i), {}))

    def multiply(self, x, y):
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                for k, s in self.multiply_basis(i, j).items():
                    v = out.get(k, ZERO) + a * b * s
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return out

    def _nilpotency_degree(self):
        """Smallest s with m^s = 0; raises if the powers never die."""
        n = self.dim()
        power = [[Fraction(i == j) for j in range(n)] for i in range(n)]
        s = 1
        while power:
            nxt = []
            for v in power:
                x = el_from_pairs(enumerate(v))
                for i in range(n):
                    w = self.multiply({i: Fraction(1)}, x)
                    if w:
                        nxt.append([w.get(j, ZERO) for j in range(n)])
            power = span_basis(nxt)
            s += 1
            if s > n + 1:
                raise ValueError("ideal is not nilpotent")
        return s


class ArtinAlgebra:
    """Commutative local artinian algebra A = k.1 (+) m with m nilpotent.

    The input is a raw multiplication table on the full basis (unit
    first); locality is validated by checking that the span of the
    non-unit basis is closed under multiplication and nilpotent.
    """

    def __init__(self, ideal_labels, ideal_products, name=None):
        self.name = name
        self.ideal = MaximalIdeal(ideal_labels, ideal_products)
        self.labels = ["1"] + list(ideal_labels)

    @classmethod
    def from_table(cls, labels, products, unit="1", name=None):
        """labels include the unit; products on full-basis indices."""
        if unit not in labels:
            raise ValueError("unit label missing")
        u = labels.index(unit)
        ideal_labels = [lab for lab in labels if lab != unit]
        reindex = {labels.index(lab): k for k, lab in enumerate(ideal_labels)}
        ideal_products = {}
        for (i, j), val in products.items():
            if i == u or j == u:
                # unit row/column must be the identity
                other = j if i == u else i
                expected = {other: Fraction(1)}
                if {k: v for k, v in val.items() if v} != expected:
                    raise ValueError("unit does not act as the identity")
                continue
            entry = {}
            for k, v in val.items():
                if not v:
                    continue
                if k == u:
                    raise ValueError(
                        "maximal ideal is not closed under multiplication")
                entry[reindex[k]] = v
            ideal_products[(reindex[i], reindex[j])] = entry
        return cls(ideal_labels, ideal_products, name=name)

    def dim(self):
        return 1 + self.ideal.dim()

    def maximal_ideal(self):
        return self.ideal


# ---------------------------------------------------------------------------
# tensor products


def _tensor_space(a_basis, g, a_degrees, top_degree):
    degrees = {}
    for ai, alab in enumerate(a_basis):
        for gi in range(g.total_dim()):
            n = a_degrees[ai] + g.degree_of(gi)
            degrees.setdefault(n, []).append((alab, g.space.label_of(gi)))
    return GradedSpace(degrees, top_degree=top_degree)


def tensor_lie(A, g, validate=True):
    """Tensor a commutative algebra (or artinian ideal) with a dg Lie algebra.

    For a MaximalIdeal / ArtinAlgebra input the result is nilpotent and is
    returned as a NilpotentDgLie (certified by computing the lower central
    series); for a DgCommAlgebra input a plain DgLieAlgebra is returned.
    """
    if isinstance(A, ArtinAlgebra):
        A = A.maximal_ideal()
    if isinstance(A, MaximalIdeal):
        a_basis = list(A.labels)
        a_degrees = [0] * len(a_basis)
        a_mult = A.multiply_basis
        a_d = None
        certify = True
    elif isinstance(A, DgCommAlgebra):
        a_basis = [A.space.label_of(i) for i in range(A.space.total_dim())]
        a_degrees = [A.degree_of(i) for i in range(A.space.total_dim())]
        a_mult = A.multiply_basis
        a_d = A
        certify = False
    else:
        raise TypeError("tensor_lie expects a DgCommAlgebra, ArtinAlgebra "
                        "or MaximalIdeal")

    g_top = max(g.space.nonzero_degrees(), default=0)
    a_top = max(a_degrees, default=0)
    top = max(DEFAULT_TOP_DEGREE, g_top + a_top)
    space = _tensor_space(a_basis, g, a_degrees, top)
    index = {}
    for ai, alab in enumerate(a_basis):
        for gi in range(g.total_dim()):
            n = a_degrees[ai] + g.degree_of(gi)
            index[(ai, gi)] = space.index(n, (alab, g.space.label_of(gi)))

    # differential: d(a@x) = (da)@x + (-1)^{|a|} a@(dx)
    back = {v: k for k, v in index.items()}
    dmats = {}
    for n in space.nonzero_degrees():
        rows = space.dim(n + 1)
        cols = space.dim(n)
        if rows == 0 or cols == 0:
            continue
        M = zero_matrix(rows, cols)
        row_of = {gk: r for r, gk in enumerate(space.degree_indices(n + 1))}
        any_entry = False
        for col, src in enumerate(space.degree_indices(n)):
            ai, gi = back[src]
            img = {}
            if a_d is not None:
                for aj, c in a_d.d_element({ai: Fraction(1)}).items():
                    t = index[(aj, gi)]
                    img[t] = img.get(t, ZERO) + c
            sign = Fraction((-1) ** a_degrees[ai])
            for gj, c in g.d_element({gi: Fraction(1)}).items():
                t = index[(ai, gj)]
                img[t] = img.get(t, ZERO) + sign * c
            for tgt, c in img.items():
                if c:
                    M[row_of[tgt]][col] = c
                    any_entry = True
        if any_entry:
            dmats[n] = M
    cochain = Cochain(space, dmats)

    # bracket: [a@x, b@y] = (-1)^{|x||b|} (ab) @ [x,y]
    brackets = {}
    for (ai, gi), src_i in index.items():
        for (bj, gj), src_j in index.items():
            gbr = g.bracket_basis(gi, gj)
            if not gbr:
                continue
            ab = a_mult(ai, bj)
            if not ab:
                continue
            sign = Fraction((-1) ** (g.degree_of(gi) * a_degrees[bj]))
            entry = {}
            for ck, cv in ab.items():
                for gk, gv in gbr.items():
                    t = index[(ck, gk)]
                    v = entry.get(t, ZERO) + sign * cv * gv
                    if v:
                        entry[t] = v
                    else:
                        entry.pop(t, None)
            if entry:
                brackets[(src_i, src_j)] = entry
    out = DgLieAlgebra(cochain, brackets, validate=validate,
                       name=f"tensor({getattr(A, 'name', 'A')},{g.name})")
    out.tensor_index = index
    if certify:
        nil = lower_central_series(out)
        if isinstance(nil, NotNilpotent):
            raise AssertionError("tensor with a nilpotent ideal must be "
                                 "nilpotent")  # signals bad input constants
        assert nil.nilpotency_class < A.nilpotency
        return nil
    return out


# ---------------------------------------------------------------------------
# lower central series and nilpotency


class NotNilpotent:
    """Stabilized nonzero term of the lower central series."""

    def __init__(self, stage, subspace):
        self.stage = stage
        self.subspace = subspace

    def __bool__(self):
        return False

    def __repr__(self):
        return f"NotNilpotent(stage={self.stage})"


class NilpotentDgLie:
    """A dg Lie algebra together with its lower central series.

    lcs[i] for i >= 1 holds, per degree, an echelonized basis of F^i as
    dense degree-vectors; lcs[c+1] is empty where c is the class.
    """

    def __init__(self, algebra, lcs, nilpotency_class):
        self.algebra = algebra
        self.lcs = lcs
        self.nilpotency_class = nilpotency_class

    def stage_basis(self, i, degree):
        """Dense basis vectors of F^i in the given degree."""
        if i <= 0:
            raise ValueError("stages are numbered from 1")
        if i > self.nilpotency_class:
            return []
        return self.lcs[i].get(degree, [])

    def stage_elements(self, i, degree):
        g = self.algebra
        return [g.from_degree_vector(degree, v)
                for v in self.stage_basis(i, degree)]

    def stage_dim(self, i):
        if i > self.nilpotency_class:
            return 0
        return sum(len(v) for v in self.lcs[i].values())


def lower_central_series(g, max_stages=None):
    """F^1 = g, F^{i+1} = [g, F^i]; returns NilpotentDgLie or NotNilpotent."""
    if max_stages is None:
        max_stages = g.total_dim() + 1
    lcs = {1: {n: [row[:] for row in
                   _degree_identity(g, n)] for n in g.space.nonzero_degrees()}}
    if g.total_dim() == 0:
        return NilpotentDgLie(g, lcs, 0)
    i = 1
    while True:
        current = lcs[i]
        nxt_vecs = {}
        for n, vecs in current.items():
            for v in vecs:
                x = g.from_degree_vector(n, v)
                for b in range(g.total_dim()):
                    w = g.bracket(g.basis_element(b), x)
                    if w:
                        m = g.degree_of(next(iter(w)))
                        nxt_vecs.setdefault(m, []).append(
                            g.to_degree_vector(w, m))
        nxt = {n: span_basis(vs) for n, vs in nxt_vecs.items()}
        nxt = {n: vs for n, vs in nxt.items() if vs}
        dim_now = sum(len(v) for v in current.values())
        dim_next = sum(len(v) for v in nxt.values())
        if dim_next == 0:
            return NilpotentDgLie(g, lcs, i)
        if dim_next == dim_now or i >= max_stages:
            return NotNilpotent(i + 1, nxt)
        lcs[i + 1] = nxt
        i += 1


def _degree_identity(g, n):
    k = g.space.dim(n)
    return [[Fraction(r == c) for c in range(k)] for r in range(k)]


def _sub_cochain(nil, stage):
    """The complex F^stage with its induced differential."""
    g = nil.algebra
    degrees = {}
    basis = {}
    for n in g.space.nonzero_degrees():
        vecs = nil.stage_basis(stage, n)
        if vecs:
            degrees[n] = [f"s{stage}d{n}_{i}" for i in range(len(vecs))]
            basis[n] = vecs
    space = GradedSpace(degrees,
                        top_degree=max(degrees, default=0) + 1
                        if degrees else 1)
    dmats = {}
    for n, vecs in basis.items():
        target = basis.get(n + 1, [])
        M = zero_matrix(len(target), len(vecs))
        nonzero = False
        for col, v in enumerate(vecs):
            dv = g.d_element(g.from_degree_vector(n, v))
            dvec = g.to_degree_vector(dv, n + 1)
            if el_is_zero(dv):
                continue
            coords = coords_in_span(target, dvec)
            if coords is None:
                raise AssertionError(
                    "differential does not preserve the lower central series")
            for r, c in enumerate(coords):
                if c:
                    M[r][col] = c
                    nonzero = True
        if nonzero:
            dmats[n] = M
    return Cochain(space, dmats), basis


def is_acyclic_fibration(f, nil_source=None, nil_target=None):
    """Surjective, and a quasi-isomorphism on every F^i."""
    if nil_source is None:
        nil_source = lower_central_series(f.source)
    if nil_target is None:
        nil_target = lower_central_series(f.target)
    if isinstance(nil_source, NotNilpotent) or \
            isinstance(nil_target, NotNilpotent):
        raise ValueError("acyclic fibrations are defined between nilpotent "
                         "algebras")
    if not f.is_surjective():
        return False
    from .cochain import is_quasi_iso
    top_stage = max(nil_source.nilpotency_class, nil_target.nilpotency_class)
    for i in range(1, top_stage + 1):
        src_c, src_basis = _sub_cochain(nil_source, i)
        tgt_c, tgt_basis = _sub_cochain(nil_target, i)
        blocks = {}
        for n, vecs in src_basis.items():
            tvecs = tgt_basis.get(n, [])
            M = zero_matrix(len(tvecs), len(vecs))
            for col, v in enumerate(vecs):
                img = f.apply(f.source.from_degree_vector(n, v))
                if el_is_zero(img):
                    continue
                coords = coords_in_span(
                    tvecs, f.target.to_degree_vector(img, n))
                if coords is None:
                    raise AssertionError(
                        "map does not preserve the lower central series")
                for r, c in enumerate(coords):
                    M[r][col] = c
            if any(any(x for x in row) for row in M):
                blocks[n] = M
        fmap = CochainMap(src_c, tgt_c, blocks)
        if not is_quasi_iso(fmap):
            return False
    return True


# ---------------------------------------------------------------------------
# direct products (used for Cech levels)


def direct_product(factors, tags=None, validate=False):
    """Product dg Lie algebra with componentwise structure.

    Basis labels are (tag, original label); the returned algebra carries
    a .components list of (tag, factor, {factor gidx: product gidx}).
    """
    if tags is None:
        tags = list(range(len(factors)))
    degrees = {}
    for tag, g in zip(tags, factors):
        for gi in range(g.total_dim()):
            n = g.degree_of(gi)
            degrees.setdefault(n, []).append((tag, g.space.label_of(gi)))
    top = max([DEFAULT_TOP_DEGREE] +
              [max(g.space.nonzero_degrees(), default=0) for g in factors])
    space = GradedSpace(degrees, top_degree=top)
    components = []
    for tag, g in zip(tags, factors):
        emb = {}
        for gi in range(g.total_dim()):
            n = g.degree_of(gi)
            emb[gi] = space.index(n, (tag, g.space.label_of(gi)))
        components.append((tag, g, emb))
    back = {}
    for ci, (tag, g, emb) in enumerate(components):
        for gi, pidx in emb.items():
            back[pidx] = (ci, gi)
    dmats = {}
    for n in space.nonzero_degrees():
        rows, cols = space.dim(n + 1), space.dim(n)
        if rows == 0 or cols == 0:
            continue
        M = zero_matrix(rows, cols)
        nonzero = False
        row_of = {gk: r for r, gk in enumerate(space.degree_indices(n + 1))}
        for col, src in enumerate(space.degree_indices(n)):
            ci, gi = back[src]
            tag, g, emb = components[ci]
            for gj, c in g.d_element({gi: Fraction(1)}).items():
                M[row_of[emb[gj]]][col] = c
                nonzero = True
        if nonzero:
            dmats[n] = M
    cochain = Cochain(space, dmats)
    brackets = {}
    for tag, g, emb in components:
        for (i, j), val in g.table.items():
            brackets[(emb[i], emb[j])] = {emb[k]: v for k, v in val.items()}
    out = DgLieAlgebra(cochain, brackets, validate=validate,
                       name="x".join(str(t) for t in tags))
    out.components = components
    return out
