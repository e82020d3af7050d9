"""Totalization of cosimplicial objects, three ways.

* complexes: the conormalized double complex, totalized;
* dg Lie algebras: families (omega_p in Omega_p (x) g^p) compatible with
  the pullback/pushforward exchange, truncated at polynomial degree D;
* groupoids: descent data (a, theta) with the cocycle condition.

The truncation level N must dominate the level above which the
conormalization vanishes ("finite in the cosimplicial sense"); the
constructors check this on the stored levels and the reports record N.
"""

from fractions import Fraction

from .cochain import Cochain, GradedSpace
from .dgla import (NilpotentDgLie, el_add, el_eq, el_is_zero, el_scale,
                   el_sub, lower_central_series)
from .forms import (PolyForm, compose_maps, degeneracy_map, face_map,
                    mono_form_degree, mono_mul, monomials_up_to,
                    omega_apply)
from .linalg import (ZERO, coords_in_span, span_basis, sparse_kernel)
from .mcgauge import FiniteLieContext, bch, gauge_act, mc_residual
from .simplicial import monotone_factorize

ONE = Fraction(1)


class CosimplicialDgLie:
    """Levels g^0..g^N with cofaces and codegeneracies.

    cofaces[q] is the list of maps g^q -> g^{q+1} (i = 0..q+1);
    codegens[q] the list g^{q+1} -> g^q (i = 0..q).  Functoriality on
    all composable pairs of elementary maps is validated, which covers
    every cosimplicial identity; failures name the offending composite.
    """

    def __init__(self, levels, cofaces, codegens, validate=True,
                 vanishing_level=None, name=None):
        self.levels = list(levels)
        self.N = len(self.levels) - 1
        self.cofaces = [list(v) for v in cofaces]
        self.codegens = [list(v) for v in codegens]
        self.name = name
        if len(self.cofaces) != self.N or len(self.codegens) != self.N:
            raise ValueError("need coface/codegeneracy lists for each "
                             "adjacent pair of levels")
        for q, maps in enumerate(self.cofaces):
            if len(maps) != q + 2:
                raise ValueError(f"level {q} needs {q + 2} cofaces")
        for q, maps in enumerate(self.codegens):
            if len(maps) != q + 1:
                raise ValueError(f"level {q} needs {q + 1} codegeneracies")
        if validate:
            self._validate_identities()
        self.vanishing_level = self._check_vanishing(vanishing_level)

    # -- structure maps ---------------------------------------------------------

    def level(self, q):
        return self.levels[q]

    def coface(self, q, i):
        return self.cofaces[q][i]

    def codegeneracy(self, q, i):
        return self.codegens[q][i]

    def structure_map_to(self, u, q, x, p=None):
        """g(u) for u: [p] -> [q] with the codomain given explicitly."""
        if p is None:
            p = len(u) - 1
        faces, degens = monotone_factorize(u, q)
        cur = x
        level = p
        for j in reversed(degens):
            cur = self.codegens[level - 1][j].apply(cur)
            level -= 1
        for i in reversed(faces):
            cur = self.cofaces[level][i].apply(cur)
            level += 1
        assert level == q
        return cur

    def _validate_identities(self):
        # functoriality over composable elementary pairs covers all the
        # cosimplicial identities
        for q in range(self.N + 1):
            elem_from_q = []
            if q < self.N:
                elem_from_q += [("coface", i, face_map(i, q + 1), q + 1)
                                for i in range(q + 2)]
            if q > 0:
                elem_from_q += [("codeg", i, degeneracy_map(i, q - 1), q - 1)
                                for i in range(q)]
            for kind1, i1, u1, lvl1 in elem_from_q:
                elem_next = []
                if lvl1 < self.N:
                    elem_next += [("coface", i, face_map(i, lvl1 + 1),
                                   lvl1 + 1) for i in range(lvl1 + 2)]
                if lvl1 > 0:
                    elem_next += [("codeg", i, degeneracy_map(i, lvl1 - 1),
                                   lvl1 - 1) for i in range(lvl1)]
                for kind2, i2, u2, lvl2 in elem_next:
                    w = compose_maps(u2, u1)
                    for b in range(self.levels[q].total_dim()):
                        x = self.levels[q].basis_element(b)
                        step = self._apply_elementary(kind1, i1, q, x)
                        step = self._apply_elementary(kind2, i2, lvl1, step)
                        direct = self.structure_map_to(w, lvl2, x, p=q)
                        if not el_eq(step, direct):
                            raise ValueError(
                                f"cosimplicial identity fails: "
                                f"{kind2}^{i2} after {kind1}^{i1} at "
                                f"level {q}")

    def _apply_elementary(self, kind, i, level, x):
        if kind == "coface":
            return self.cofaces[level][i].apply(x)
        return self.codegens[level - 1][i].apply(x)

    # -- conormalization ----------------------------------------------------------

    def normalization_basis(self, q):
        """Basis of N^q = joint kernel of the codegeneracies out of
        level q, as dense global vectors of the level-q algebra."""
        g = self.levels[q]
        if q == 0:
            return [row[:] for row in _identity_rows(g.total_dim())]
        # stack the matrices of all codegeneracies out of level q
        tgt = self.levels[q - 1]
        mat = []
        for i in range(q):
            sigma = self.codegens[q - 1][i]
            for t in range(tgt.total_dim()):
                row = []
                for b in range(g.total_dim()):
                    img = sigma.apply(g.basis_element(b))
                    row.append(img.get(t, ZERO))
                mat.append(row)
        from .linalg import kernel_basis
        return kernel_basis(mat, g.total_dim())

    def _check_vanishing(self, declared):
        vanish = -1
        for q in range(self.N, -1, -1):
            if self.normalization_basis(q):
                vanish = q
                break
        if declared is not None and vanish > declared:
            raise ValueError(
                f"normalization does not vanish above the declared level "
                f"{declared}: N^{vanish} != 0")
        return vanish

    def nilpotent_levels(self):
        nils = []
        for g in self.levels:
            nil = lower_central_series(g)
            if not isinstance(nil, NilpotentDgLie):
                raise ValueError("cosimplicial levels must be nilpotent")
            nils.append(nil)
        return nils


def constant_cosimplicial(g, N, validate=False):
    from .dgla import identity_map
    levels = [g] * (N + 1)
    cofaces = [[identity_map(g) for _ in range(q + 2)] for q in range(N)]
    codegens = [[identity_map(g) for _ in range(q + 1)] for q in range(N)]
    return CosimplicialDgLie(levels, cofaces, codegens, validate=validate,
                             name=f"const({g.name})")


def _identity_rows(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


# ---------------------------------------------------------------------------
# totalization of the underlying complexes


def tot_cochain(cc, N=None):
    """Total complex of the conormalized double complex.

    Degree n holds the conormalized pieces N^{q, n-q}; the differential
    is the alternating coface sum plus (-1)^q times the internal one.
    Returns (Cochain, identification), the identification listing, per
    total degree, the (level, level element) pairs of basis vectors.
    """
    if N is None:
        N = cc.N
    if N > cc.N:
        raise ValueError("not enough levels stored")
    if N < cc.vanishing_level:
        raise ValueError(
            f"truncation level {N} is below the normalization vanishing "
            f"level {cc.vanishing_level}")
    pieces = {}
    collected = {}
    for q in range(N + 1):
        g = cc.level(q)
        for vec in cc.normalization_basis(q):
            el = g.from_global_vector(vec)
            # the conormalization is graded; split defensively anyway
            by_deg = {}
            for k, v in el.items():
                by_deg.setdefault(g.degree_of(k), {})[k] = v
            for dd, part in by_deg.items():
                collected.setdefault((q, q + dd), []).append(part)
    for (q, n), parts in sorted(collected.items()):
        g = cc.level(q)
        dense = span_basis([g.to_global_vector(p) for p in parts])
        for vec in dense:
            pieces.setdefault(n, []).append((q, g.from_global_vector(vec)))
    degrees = {n: [f"t{n}_{i}" for i in range(len(v))]
               for n, v in pieces.items()}
    top = max(degrees, default=0) + 1
    space = GradedSpace(degrees, top_degree=max(top, 8))
    dmats = {}
    for n, basis in sorted(pieces.items()):
        target = pieces.get(n + 1, [])
        if not basis or not target:
            continue
        # dense coordinates for the target, per (level, global index)
        tkeys = sorted({(q, k) for q, el in target for k in el})
        tmat = [[el.get(k, ZERO) if q == qq else ZERO
                 for (qq, k) in tkeys] for q, el in target]
        M = [[ZERO] * len(basis) for _ in range(len(target))]
        nonzero = False
        for col, (q, el) in enumerate(basis):
            img = {}
            # Cech differential: alternating sum of cofaces
            if q + 1 <= N:
                delta = {}
                for i in range(q + 2):
                    sgn = -ONE if i % 2 else ONE
                    delta = el_add(delta, el_scale(
                        sgn, cc.coface(q, i).apply(el)))
                for k, v in delta.items():
                    img[(q + 1, k)] = img.get((q + 1, k), ZERO) + v
            # internal differential with the Koszul sign
            sgn = -ONE if q % 2 else ONE
            for k, v in el_scale(sgn, cc.level(q).d_element(el)).items():
                img[(q, k)] = img.get((q, k), ZERO) + v
            img = {k: v for k, v in img.items() if v}
            if not img:
                continue
            vec = [img.get(k, ZERO) for k in tkeys]
            coords = coords_in_span(tmat, vec)
            if coords is None:
                raise AssertionError("total differential left the "
                                     "conormalized subspace")
            for r, c in enumerate(coords):
                if c:
                    M[r][col] = c
                    nonzero = True
        if nonzero:
            dmats[n] = M
    return Cochain(space, dmats), pieces


# ---------------------------------------------------------------------------
# the Thom-Sullivan side: compatible form families


class TotContext:
    """Ambient product of Omega_p (x) g^p for p <= N.

    Keys are (p, basis index of g^p, monomial on Delta^p); brackets and
    differentials act levelwise, so the lower-central-series machinery
    of the gauge searches works with the levelwise filtrations.
    Membership in the totalization is a linear condition handled by
    compatibility_defect / subspace bases, not by the ambient itself.
    """

    def __init__(self, cc, N=None):
        self.cc = cc
        self.N = cc.N if N is None else N
        if self.N > cc.N:
            raise ValueError(f"only levels 0..{cc.N} are stored")
        if self.N < cc.vanishing_level:
            raise ValueError(
                f"truncation level {self.N} is below the normalization "
                f"vanishing level {cc.vanishing_level}")
        self.nils = cc.nilpotent_levels()[:self.N + 1]
        self._zero_monos = {p: ((0,) * p, 0) for p in range(self.N + 1)}

    def nclass(self):
        return max(nil.nilpotency_class for nil in self.nils)

    def key_degree(self, key):
        p, gi, mono = key
        return self.cc.level(p).degree_of(gi) + mono_form_degree(mono)

    def d_el(self, x):
        out = {}
        for (p, gi, mono), v in x.items():
            g = self.cc.level(p)
            dform = PolyForm(p, {mono: ONE}).d()
            for m2, c in dform.terms.items():
                k = (p, gi, m2)
                s = out.get(k, ZERO) + v * c
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
            sign = -ONE if mono_form_degree(mono) % 2 else ONE
            for gj, c in g.d_table.get(gi, {}).items():
                k = (p, gj, mono)
                s = out.get(k, ZERO) + v * (sign * c)
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    def bracket_el(self, x, y):
        out = {}
        for (p, gi, m1), a in x.items():
            g = self.cc.level(p)
            di = g.degree_of(gi)
            for (pp, gj, m2), b in y.items():
                if pp != p:
                    continue
                entry = g.table.get((gi, gj))
                if not entry:
                    continue
                prod = mono_mul(m1, m2)
                if prod is None:
                    continue
                m, sign = prod
                if di % 2 and mono_form_degree(m2) % 2:
                    sign = -sign
                ab = a * b
                if not ab:
                    continue
                for gk, c in entry.items():
                    k = (p, gk, m)
                    s = out.get(k, ZERO) + ab * (sign * c)
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return out

    def degree_component(self, x, n):
        return {k: v for k, v in x.items() if self.key_degree(k) == n}

    def stage_vectors_for(self, stage, keys):
        by_slot = {}
        for (p, gi, mono) in keys:
            by_slot.setdefault((p, mono), set()).add(
                self.cc.level(p).degree_of(gi))
        out = []
        for (p, mono), degs in sorted(
                by_slot.items(), key=lambda kv: (kv[0][0], kv[0][1][1],
                                                 kv[0][1][0])):
            for n in sorted(degs):
                for el in self.nils[p].stage_elements(stage, n):
                    out.append({(p, gi, mono): c for gi, c in el.items()})
        return out

    # -- level embeddings and projections ------------------------------------------

    def embed_level(self, p, el, mono=None):
        mono = mono or self._zero_monos[p]
        return {(p, gi, mono): v for gi, v in el.items()}

    def embed_form_level(self, p, form_el):
        """A FormLieContext-style element of level p into Tot keys."""
        return {(p, gi, mono): v for (gi, mono), v in form_el.items()}

    def level_component(self, x, p):
        return {(gi, mono): v for (pp, gi, mono), v in x.items() if pp == p}

    def level0(self, x):
        """The p = 0 component as a plain element of g^0."""
        return {gi: v for (p, gi, mono), v in x.items() if p == 0}

    def keys_up_to(self, D, degree=None):
        out = []
        for p in range(self.N + 1):
            g = self.cc.level(p)
            for mono in monomials_up_to(p, D):
                fd = mono_form_degree(mono)
                for gi in range(g.total_dim()):
                    if degree is None or g.degree_of(gi) + fd == degree:
                        out.append((p, gi, mono))
        return out

    # -- compatibility with the structure maps ----------------------------------------

    def generators(self):
        """The monotone maps whose exchange conditions cut out Tot."""
        gens = []
        for p in range(1, self.N + 1):
            for i in range(p + 1):
                gens.append((face_map(i, p), p - 1, p))      # [p-1] -> [p]
        for p in range(self.N):
            for i in range(p + 1):
                gens.append((degeneracy_map(i, p), p + 1, p))  # [p+1] -> [p]
        return gens

    def compatibility_defect(self, u, psrc, qtgt, x):
        """Omega(u)(level-q part) - g(u)(level-p part), a dict over
        (target Lie index, monomial on Delta^{p_src}) keys."""
        out = {}
        # form side: pull the level-qtgt component back along u
        for (gi, mono), v in self.level_component(x, qtgt).items():
            pulled = omega_apply(u, PolyForm(qtgt, {mono: v}), psrc)
            for m2, c in pulled.terms.items():
                k = (gi, m2)
                s = out.get(k, ZERO) + c
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        # Lie side: push the level-psrc component forward along g(u)
        by_mono = {}
        for (gi, mono), v in self.level_component(x, psrc).items():
            by_mono.setdefault(mono, {})[gi] = v
        for mono, el in by_mono.items():
            img = self.cc.structure_map_to(u, qtgt, el, p=psrc)
            for gj, c in img.items():
                k = (gj, mono)
                s = out.get(k, ZERO) - c
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    def is_tot_element(self, x):
        return all(not self.compatibility_defect(u, p, q, x)
                   for (u, p, q) in self.generators())

    def tot_basis(self, degree, D, with_free=False):
        """Basis of the degree-(D-truncated) totalization in one total
        degree, by a sparse kernel computation.

        With with_free=True also returns the free keys: basis vector i
        is the unique one with coefficient 1 on free key i and 0 on the
        other free keys, so span coordinates are plain lookups.
        """
        keys = self.keys_up_to(D, degree=degree)
        index = {k: i for i, k in enumerate(keys)}
        rows = {}
        for (u, psrc, qtgt) in self.generators():
            for k in keys:
                p, gi, mono = k
                if p not in (psrc, qtgt):
                    continue
                defect = self.compatibility_defect(
                    u, psrc, qtgt, {k: ONE})
                for dk, c in defect.items():
                    rows.setdefault((u, psrc, dk), {})[index[k]] = c
        basis, free_cols = sparse_kernel(list(rows.values()), len(keys),
                                         with_free=True)
        out = [{keys[i]: c for i, c in v.items()} for v in basis]
        if with_free:
            return out, [keys[f] for f in free_cols]
        return out


class TotLieComplex:
    """The degree-D truncation of the Thom-Sullivan totalization.

    Carries the truncated complex, the termwise bracket (landing in the
    2D-truncation), the projection to level 0, and the ambient context
    used by the groupoid machinery.
    """

    def __init__(self, cc, D, N=None):
        self.cc = cc
        self.D = D
        self.ctx = TotContext(cc, N)
        self.N = self.ctx.N
        degs = set()
        for p in range(self.N + 1):
            g = cc.level(p)
            for n in g.space.nonzero_degrees():
                for k in range(p + 1):
                    degs.add(n + k)
        self.basis_by_degree = {}
        self.free_keys_by_degree = {}
        for n in sorted(degs):
            vecs, free = self.ctx.tot_basis(n, D, with_free=True)
            if vecs:
                self.basis_by_degree[n] = vecs
                self.free_keys_by_degree[n] = free
        degrees = {n: [f"T{n}_{i}" for i in range(len(v))]
                   for n, v in self.basis_by_degree.items()}
        space = GradedSpace(degrees,
                            top_degree=max(list(degrees) + [8]) + 1)
        dmats = {}
        for n, vecs in self.basis_by_degree.items():
            target = self.basis_by_degree.get(n + 1, [])
            if not target:
                continue
            free = self.free_keys_by_degree[n + 1]
            M = [[ZERO] * len(vecs) for _ in range(len(target))]
            nonzero = False
            for col, v in enumerate(vecs):
                dv = self.ctx.d_el(v)
                if not dv:
                    continue
                # coordinates are lookups on the free keys; verify the
                # reconstruction exactly (d must stay in the truncation)
                coords = [dv.get(k, ZERO) for k in free]
                recon = {}
                for c, t in zip(coords, target):
                    if c:
                        recon = el_add(recon, el_scale(c, t))
                if not el_eq(recon, dv):
                    raise AssertionError(
                        "differential left the truncated totalization")
                for r, c in enumerate(coords):
                    if c:
                        M[r][col] = c
                        nonzero = True
            if nonzero:
                dmats[n] = M
        self.cochain = Cochain(space, dmats)

    def bracket(self, x, y):
        return self.ctx.bracket_el(x, y)

    def projection_level0(self, x):
        return self.ctx.level0(x)

    def element(self, degree, coords):
        out = {}
        for c, v in zip(coords, self.basis_by_degree.get(degree, [])):
            if c:
                out = el_add(out, el_scale(c, v))
        return out


def tot_lie(cc, D, N=None):
    return TotLieComplex(cc, D, N=N)


# ---------------------------------------------------------------------------
# totalization of groupoids: descent data


class DescentDatum:
    """An object of the total groupoid: a in the level-0 Deligne
    groupoid, theta a level-1 gauge from coface^1(a) to coface^0(a)."""

    def __init__(self, a, theta):
        self.a = dict(a)
        self.theta = dict(theta)

    def __repr__(self):
        return f"DescentDatum(a={self.a!r}, theta={self.theta!r})"


class DescentGroupoid:
    """Tot of the levelwise Deligne groupoids of a cosimplicial algebra.

    Levels 0..2 are required: the cocycle condition lives at level 2.
    Morphism equality and composition go through bch; in the abelian
    case pi0 and Aut have exact linear presentations.
    """

    def __init__(self, cc):
        if cc.N < 2:
            raise ValueError("descent groupoids need levels 0..2")
        self.cc = cc
        nils = cc.nilpotent_levels()
        self.nil0, self.nil1, self.nil2 = nils[0], nils[1], nils[2]
        self.ctx0 = FiniteLieContext(self.nil0)
        self.ctx1 = FiniteLieContext(self.nil1)
        self.ctx2 = FiniteLieContext(self.nil2)

    # -- structure shorthands -----------------------------------------------------

    def cf(self, q, i, x):
        return self.cc.coface(q, i).apply(x)

    def cd(self, q, i, x):
        return self.cc.codegeneracy(q, i).apply(x)

    def verify_object(self, datum, reasons=None):
        """The three object conditions; failures are named."""
        a, th = datum.a, datum.theta
        out = []
        if not el_is_zero(mc_residual(self.ctx0, a)):
            out.append("base object is not Maurer-Cartan")
        if not el_is_zero(self.cd(0, 0, th)):
            out.append("codegeneracy of theta is not the identity")
        src = self.cf(0, 1, a)
        tgt = self.cf(0, 0, a)
        if not el_eq(gauge_act(self.ctx1, th, src), tgt):
            out.append("theta does not carry coface^1(a) to coface^0(a)")
        lhs = self.cf(1, 1, th)
        rhs = bch(self.ctx2, self.cf(1, 0, th), self.cf(1, 2, th))
        if not el_eq(lhs, rhs):
            out.append("cocycle condition fails at level 2")
        if reasons is not None:
            reasons.extend(out)
        return not out

    def verify_morphism(self, d1, d2, r):
        """r in exp((g^0)^0) as a morphism d1 -> d2."""
        if not el_eq(gauge_act(self.ctx0, r, d1.a), d2.a):
            return False
        lhs = bch(self.ctx1, d2.theta, self.cf(0, 1, r))
        rhs = bch(self.ctx1, self.cf(0, 0, r), d1.theta)
        return el_eq(lhs, rhs)

    def identity_morphism(self):
        return {}

    def compose(self, r1, r2):
        return bch(self.ctx0, r1, r2)

    # -- abelian presentation -------------------------------------------------------

    def is_abelian(self):
        return all(g.is_abelian() for g in self.cc.levels[:3])

    def _object_space(self):
        """Linear description of the objects in the abelian case:
        unknowns (a in degree 1 of g^0, theta in degree 0 of g^1)."""
        g0, g1, g2 = self.cc.levels[0], self.cc.levels[1], self.cc.levels[2]
        akeys = g0.space.degree_indices(1)
        tkeys = g1.space.degree_indices(0)
        cols = len(akeys) + len(tkeys)

        def as_vec(ael, tel):
            return [ael.get(k, ZERO) for k in akeys] + \
                [tel.get(k, ZERO) for k in tkeys]

        rows = []
        # da = 0
        for k in g0.space.degree_indices(2):
            row = [ZERO] * cols
            for j, ak in enumerate(akeys):
                row[j] = g0.d_element({ak: ONE}).get(k, ZERO)
            rows.append(row)
        # d theta = coface^0 a - coface^1 a
        for k in g1.space.degree_indices(1):
            row = [ZERO] * cols
            for j, ak in enumerate(akeys):
                img = el_sub(self.cf(0, 0, {ak: ONE}),
                             self.cf(0, 1, {ak: ONE}))
                row[j] = -img.get(k, ZERO)
            for j, tk in enumerate(tkeys):
                row[len(akeys) + j] = g1.d_element({tk: ONE}).get(k, ZERO)
            rows.append(row)
        # codegeneracy^0 theta = 0
        for k in g0.space.degree_indices(0):
            row = [ZERO] * cols
            for j, tk in enumerate(tkeys):
                row[len(akeys) + j] = self.cd(0, 0, {tk: ONE}).get(k, ZERO)
            rows.append(row)
        # cocycle: coface^1 theta - coface^0 theta - coface^2 theta = 0
        for k in g2.space.degree_indices(0):
            row = [ZERO] * cols
            for j, tk in enumerate(tkeys):
                img = el_sub(self.cf(1, 1, {tk: ONE}),
                             el_add(self.cf(1, 0, {tk: ONE}),
                                    self.cf(1, 2, {tk: ONE})))
                row[len(akeys) + j] = img.get(k, ZERO)
            rows.append(row)
        from .linalg import kernel_basis
        sol = kernel_basis(rows, cols) if rows else _identity_rows(cols)
        return akeys, tkeys, sol

    def _morphism_directions(self):
        """Images of r |-> (dr, coface^0 r - coface^1 r)."""
        g0 = self.cc.levels[0]
        akeys = g0.space.degree_indices(1)
        tkeys = self.cc.levels[1].space.degree_indices(0)
        dirs = []
        for rk in g0.space.degree_indices(0):
            r = {rk: ONE}
            da = g0.d_element(r)
            dth = el_sub(self.cf(0, 0, r), self.cf(0, 1, r))
            dirs.append([da.get(k, ZERO) for k in akeys] +
                        [dth.get(k, ZERO) for k in tkeys])
        return dirs

    def pi0_dimension(self):
        if not self.is_abelian():
            raise ValueError("exact pi0 needs abelian levels")
        _, _, sol = self._object_space()
        dirs = self._morphism_directions()
        dim_objects = len(span_basis(sol)) if sol else 0
        dim_orbits = len(span_basis(dirs)) if dirs else 0
        return dim_objects - dim_orbits

    def aut_dimension(self):
        """dim of {r : dr = 0, coface^0 r = coface^1 r}."""
        if not self.is_abelian():
            raise ValueError("exact Aut needs abelian levels")
        g0 = self.cc.levels[0]
        rkeys = g0.space.degree_indices(0)
        rows = []
        for k in g0.space.degree_indices(1):
            rows.append([g0.d_element({rk: ONE}).get(k, ZERO)
                         for rk in rkeys])
        for k in self.cc.levels[1].space.degree_indices(0):
            rows.append([el_sub(self.cf(0, 0, {rk: ONE}),
                                self.cf(0, 1, {rk: ONE})).get(k, ZERO)
                         for rk in rkeys])
        from .linalg import kernel_basis
        return len(kernel_basis(rows, len(rkeys))) if rows else len(rkeys)

    def abelian_object(self, coords):
        akeys, tkeys, sol = self._object_space()
        vec = [ZERO] * (len(akeys) + len(tkeys))
        for c, basis_vec in zip(coords, sol):
            for i, v in enumerate(basis_vec):
                vec[i] += c * v
        a = {k: v for k, v in zip(akeys, vec[:len(akeys)]) if v}
        th = {k: v for k, v in zip(tkeys, vec[len(akeys):]) if v}
        return DescentDatum(a, th)


def tot_groupoid(cc):
    """The groupoid of descent data of a cosimplicial nilpotent algebra."""
    return DescentGroupoid(cc)
