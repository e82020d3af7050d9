"""Maurer-Cartan theory of nilpotent dg Lie algebras.

Elements are sparse coordinate dicts over ambient-specific keys; the two
ambients used everywhere share one informal protocol (d_el, bracket_el,
key_degree, stage vectors, nilpotency class):

  * FiniteLieContext -- the algebra itself, keys are basis indices;
  * FormLieContext   -- forms on the n-simplex tensored with the algebra,
    keys are (basis index, form monomial).

The gauge action is the time-1 flow of rho(y)(x) = dy + [x, y]; the flow
is polynomial in time by nilpotency, so Picard iteration reaches its
fixed point after at most class+1 rounds and everything stays exact.

Composition convention: gauge elements are stored as logarithm
coordinates, and bch(y1, y2) is defined as the gauge whose action is
"act by y2, then by y1".  For the flow above this is log(exp Y2 exp Y1)
of the free associative world, evaluated through the Dynkin bracketing;
the class-2 instance in the tests pins the convention down.  All
groupoid composition, cocycle conditions and nerve simplices downstream
use bch, so the convention is fixed in exactly one place.
"""

from fractions import Fraction
from functools import lru_cache

from .dgla import el_add, el_eq, el_is_zero, el_scale, el_sub
from .forms import (PolyForm, mono_form_degree, mono_mul,
                    monomials_up_to)
from .linalg import NoSolution, ZERO, solve_affine, span_basis

ONE = Fraction(1)
HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# parameter polynomials for the staged searches


class KPoly:
    """Polynomial in scalar search parameters, exact coefficients.

    Monomials are sorted tuples of (variable, exponent).  Mixed
    arithmetic with Fraction/int works from either side, so parameterized
    elements can share all the plain element helpers.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def const(cls, c):
        c = Fraction(c)
        return cls({(): c} if c else {})

    @classmethod
    def var(cls, i):
        return cls({((i, 1),): ONE})

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = KPoly.const(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, ZERO) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return KPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return KPoly({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = KPoly.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if not c:
                return KPoly()
            return KPoly({m: c * v for m, v in self.terms.items()})
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                d = dict(m1)
                for var, e in m2:
                    d[var] = d.get(var, 0) + e
                m = tuple(sorted(d.items()))
                v = out.get(m, ZERO) + c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return KPoly(out)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = KPoly.const(other)
        if not isinstance(other, KPoly):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def degree(self):
        return max((sum(e for _, e in m) for m in self.terms), default=0)

    def is_affine(self):
        return self.degree() <= 1

    def constant_part(self):
        return self.terms.get((), ZERO)

    def linear_part(self):
        out = {}
        for m, c in self.terms.items():
            if len(m) == 1 and m[0][1] == 1:
                out[m[0][0]] = c
        return out

    def __repr__(self):
        return f"KPoly({self.terms!r})"


def as_kpoly(v):
    return v if isinstance(v, KPoly) else KPoly.const(v)


def value_constant(v):
    return v.constant_part() if isinstance(v, KPoly) else Fraction(v)


# ---------------------------------------------------------------------------
# ambient contexts


class FiniteLieContext:
    """A nilpotent dg Lie algebra as an ambient; keys = basis indices."""

    def __init__(self, nil):
        self.nil = nil
        self.g = nil.algebra

    def nclass(self):
        return self.nil.nilpotency_class

    def key_degree(self, key):
        return self.g.degree_of(key)

    def d_el(self, x):
        out = {}
        for k, v in x.items():
            for t, c in self.g.d_table.get(k, {}).items():
                s = out.get(t, ZERO) + v * c
                if s:
                    out[t] = s
                else:
                    out.pop(t, None)
        return out

    def bracket_el(self, x, y):
        out = {}
        for i, a in x.items():
            for j, b in y.items():
                entry = self.g.table.get((i, j))
                if not entry:
                    continue
                ab = a * b
                if not ab:
                    continue
                for k, c in entry.items():
                    s = out.get(k, ZERO) + ab * c
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return out

    def degree_keys(self, n):
        return self.g.space.degree_indices(n)

    def basis_of_degree(self, n):
        return [{k: ONE} for k in self.degree_keys(n)]

    def stage_vectors_for(self, stage, keys):
        """Spanning elements of F^stage restricted to degrees present."""
        degs = sorted({self.key_degree(k) for k in keys})
        out = []
        for n in degs:
            out.extend(self.nil.stage_elements(stage, n))
        return out

    def degree_component(self, x, n):
        return {k: v for k, v in x.items() if self.key_degree(k) == n}


class FormLieContext:
    """Omega_n tensor g as an ambient; keys = (basis index, monomial).

    The total differential is the de Rham d on the form side plus the
    internal d with the Koszul sign; brackets multiply forms and carry
    the (-1)^{|x||omega'|} sign past the first Lie factor.
    """

    def __init__(self, nil, n):
        self.nil = nil
        self.g = nil.algebra
        self.n = n
        self._zero_mono = ((0,) * n, 0)

    def nclass(self):
        return self.nil.nilpotency_class

    def key_degree(self, key):
        gi, mono = key
        return self.g.degree_of(gi) + mono_form_degree(mono)

    def embed(self, x):
        """A plain algebra element as a constant form-valued element."""
        return {(gi, self._zero_mono): v for gi, v in x.items()}

    def d_el(self, x):
        out = {}
        for (gi, mono), v in x.items():
            # de Rham part on the monomial
            dform = PolyForm(self.n, {mono: ONE}).d()
            for m2, c in dform.terms.items():
                k = (gi, m2)
                s = out.get(k, ZERO) + v * c
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
            # internal part with the form-degree sign
            sign = -ONE if mono_form_degree(mono) % 2 else ONE
            for gj, c in self.g.d_table.get(gi, {}).items():
                k = (gj, mono)
                s = out.get(k, ZERO) + v * (sign * c)
                if s:
                    out[k] = s
                else:
                    out.pop(k, None)
        return out

    def bracket_el(self, x, y):
        out = {}
        for (gi, m1), a in x.items():
            di = self.g.degree_of(gi)
            for (gj, m2), b in y.items():
                entry = self.g.table.get((gi, gj))
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
                    k = (gk, m)
                    s = out.get(k, ZERO) + ab * (sign * c)
                    if s:
                        out[k] = s
                    else:
                        out.pop(k, None)
        return out

    def restrict(self, u, x, p=None):
        """Pullback along a monotone map on the form side."""
        if p is None:
            p = len(u) - 1
        by_g = {}
        for (gi, mono), v in x.items():
            by_g.setdefault(gi, {})[mono] = v
        out = {}
        for gi, terms in by_g.items():
            from .forms import omega_apply
            pulled = omega_apply(u, PolyForm(self.n, terms), p)
            for m, c in pulled.terms.items():
                out[(gi, m)] = c
        return {k: v for k, v in out.items() if v}

    def vertex(self, i, x):
        """Evaluate at the i-th vertex; a plain algebra element."""
        res = self.restrict((i,), x, 0)
        return {gi: v for (gi, mono), v in res.items()}

    def keys_up_to(self, D, degree=None):
        out = []
        for mono in monomials_up_to(self.n, D):
            fd = mono_form_degree(mono)
            for gi in range(self.g.total_dim()):
                if degree is None or self.g.degree_of(gi) + fd == degree:
                    out.append((gi, mono))
        return out

    def stage_vectors_for(self, stage, keys):
        by_mono = {}
        for (gi, mono) in keys:
            by_mono.setdefault(mono, set()).add(self.g.degree_of(gi))
        out = []
        for mono, degs in sorted(by_mono.items(),
                                 key=lambda kv: (kv[0][1], kv[0][0])):
            for n in sorted(degs):
                for el in self.nil.stage_elements(stage, n):
                    out.append({(gi, mono): c for gi, c in el.items()})
        return out

    def degree_component(self, x, n):
        return {k: v for k, v in x.items() if self.key_degree(k) == n}


# ---------------------------------------------------------------------------
# residual and flows


def mc_residual(ctx, x):
    """dx + (1/2)[x,x]; zero exactly when x is Maurer-Cartan."""
    return el_add(ctx.d_el(x), el_scale(HALF, ctx.bracket_el(x, x)))


def mc_element(ctx, coords):
    """Validate degree-1 support and the MC equation; returns the dict."""
    for k in coords:
        if ctx.key_degree(k) != 1:
            raise ValueError("MC elements live in degree 1")
    if not el_is_zero(mc_residual(ctx, coords)):
        raise ValueError("not a Maurer-Cartan element")
    return dict(coords)


def gauge_element(ctx, coords):
    for k in coords:
        if ctx.key_degree(k) != 0:
            raise ValueError("gauge elements live in degree 0")
    return dict(coords)


def flow_path(ctx, y_coeffs, x0, max_rounds=None):
    """Time coefficients of the flow of x' = dy(t) + [x, y(t)], x(0)=x0.

    y_coeffs is the list of time coefficients of y (constant gauge:
    [y]).  Picard iteration; by nilpotency the fixed point is reached
    after at most class+1 rounds and is a genuine polynomial solution.
    """
    rounds = max_rounds or (ctx.nclass() + 2)
    dy = [ctx.d_el(c) for c in y_coeffs]
    coeffs = [dict(x0)]
    for _ in range(rounds + 1):
        # integrand = dy(t) + [x(t), y(t)] as time coefficients
        deg = len(coeffs) + len(y_coeffs)
        integrand = [dict() for _ in range(deg)]
        for k, c in enumerate(dy):
            integrand[k] = el_add(integrand[k], c)
        for i, xc in enumerate(coeffs):
            for j, yc in enumerate(y_coeffs):
                b = ctx.bracket_el(xc, yc)
                if b:
                    integrand[i + j] = el_add(integrand[i + j], b)
        new = [dict(x0)] + [el_scale(Fraction(1, k + 1), integrand[k])
                            for k in range(len(integrand))]
        while new and not new[-1]:
            new.pop()
        if len(new) == len(coeffs) and all(
                el_eq(a, b) for a, b in zip(new, coeffs)):
            return coeffs
        coeffs = new
    raise ArithmeticError("gauge flow did not stabilize; "
                          "ambient is not nilpotent")


def gauge_act(ctx, y, x):
    """Time-1 value of the flow: the gauge action of exp(y) on x."""
    coeffs = flow_path(ctx, [y], x)
    out = {}
    for c in coeffs:
        out = el_add(out, c)
    return out


def nonautonomous_gauge_act(ctx, y_coeffs, x):
    coeffs = flow_path(ctx, y_coeffs, x)
    out = {}
    for c in coeffs:
        out = el_add(out, c)
    return out


# ---------------------------------------------------------------------------
# Baker-Campbell-Hausdorff through the free associative algebra


@lru_cache(maxsize=None)
def _log_expexp_words(depth):
    """log(exp X0 exp X1) in the free associative algebra on two letters,
    truncated beyond word length `depth`; {word tuple: coefficient}."""
    def trunc_mul(f, g):
        out = {}
        for w1, c1 in f.items():
            for w2, c2 in g.items():
                w = w1 + w2
                if len(w) > depth:
                    continue
                v = out.get(w, ZERO) + c1 * c2
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
        return out

    def exp_letter(letter):
        out = {(): ONE}
        fact = 1
        for a in range(1, depth + 1):
            fact *= a
            out[(letter,) * a] = Fraction(1, fact)
        return out

    E = trunc_mul(exp_letter(0), exp_letter(1))
    E1 = dict(E)
    E1.pop((), None)  # E - 1
    out = {}
    power = {(): ONE}
    for m in range(1, depth + 1):
        power = trunc_mul(power, E1)
        sign = Fraction((-1) ** (m - 1), m)
        for w, c in power.items():
            v = out.get(w, ZERO) + sign * c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    out.pop((), None)
    return out


def _dynkin_eval(ctx, words, letters):
    """Evaluate a Lie series given by words via the Dynkin projection:
    a word w contributes coeff/len(w) times the right-nested bracket."""
    out = {}
    for w, coeff in words.items():
        cur = letters[w[-1]]
        for letter in reversed(w[:-1]):
            cur = ctx.bracket_el(letters[letter], cur)
            if not cur:
                break
        if cur:
            out = el_add(out, el_scale(coeff * Fraction(1, len(w)), cur))
    return out


def bch(ctx, y1, y2):
    """The gauge with gauge_act(bch(y1,y2), x) = gauge_act(y1, gauge_act(y2, x)).

    Computed as log(exp Y2 exp Y1) in the free associative algebra
    truncated beyond the nilpotency class, pushed into the algebra by
    the Dynkin bracketing.
    """
    words = _log_expexp_words(ctx.nclass())
    return _dynkin_eval(ctx, words, (y2, y1))


def gauge_inverse(y):
    return el_scale(-ONE, y)


def bch_many(ctx, ys):
    """Compose a list of gauges; the rightmost acts first."""
    out = {}
    for y in reversed(ys):
        out = bch(ctx, y, out)
    return out


# ---------------------------------------------------------------------------
# holonomy of a time-dependent gauge path (right Magnus expansion)


@lru_cache(maxsize=None)
def _bernoulli_plus(k):
    """Bernoulli numbers with B1 = +1/2 (the "plus" convention)."""
    if k == 0:
        return ONE
    if k == 1:
        return HALF
    # standard recurrence for B^- then flip the sign at odd k (only k=1 odd
    # is nonzero, so only the parity of k matters through (-1)^k)
    from math import comb
    B = [ONE, Fraction(-1, 2)]
    for m in range(2, k + 1):
        s = sum(Fraction(comb(m + 1, j)) * B[j] for j in range(m))
        B.append(-s / (m + 1))
    return B[k] * Fraction((-1) ** k)


def holonomy(ctx, y_coeffs, max_rounds=None):
    """theta with exp(theta) the time-ordered exponential of the path y(t).

    Solves theta' = sum_k (B+_k / k!) ad_theta^k (y(t)) exactly by
    Picard iteration on time coefficients; gauge_act(theta, x) equals
    the time-1 nonautonomous flow from x for every MC x (tested).
    """
    nc = ctx.nclass()
    rounds = max_rounds or (nc + 2)
    fact = [1]
    for k in range(1, nc + 1):
        fact.append(fact[-1] * k)
    theta = []
    for _ in range(rounds + 1):
        # rhs(t) = sum_k B+_k/k! ad_theta(t)^k y(t), as time coefficients
        term = list(y_coeffs)
        rhs = [el_scale(_bernoulli_plus(0), c) for c in term]
        for k in range(1, nc):
            nxt = [dict() for _ in range(len(theta) + len(term))]
            for i, tc in enumerate(theta):
                for j, yc in enumerate(term):
                    b = ctx.bracket_el(tc, yc)
                    if b:
                        nxt[i + j] = el_add(nxt[i + j], b)
            term = nxt
            if all(not c for c in term):
                break
            coeff = _bernoulli_plus(k) * Fraction(1, fact[k])
            while len(rhs) < len(term):
                rhs.append({})
            for idx, c in enumerate(term):
                if c:
                    rhs[idx] = el_add(rhs[idx], el_scale(coeff, c))
        new = [{}] + [el_scale(Fraction(1, k + 1), rhs[k])
                      for k in range(len(rhs))]
        while new and not new[-1]:
            new.pop()
        if len(new) == len(theta) and all(
                el_eq(a, b) for a, b in zip(new, theta)):
            break
        theta = new
    out = {}
    for c in theta:
        out = el_add(out, c)
    return out


# ---------------------------------------------------------------------------
# the 1-simplex attached to a gauge transformation


def solve_1simplex(ctx1, x0, theta):
    """The MC element of Omega_1 (x) g built from the flow of theta.

    ctx1 is the FormLieContext of the owner at n = 1; x0 an MC element
    of the owner; theta a gauge element.  Returns z = x(t) + dt theta
    with x(t) the exact flow, so z restricts to x0 at the 0-vertex and
    to gauge_act(theta, x0) at the 1-vertex, and z is MC upstairs.
    """
    fin = FiniteLieContext(ctx1.nil)
    coeffs = flow_path(fin, [theta], x0)
    out = {}
    for k, c in enumerate(coeffs):
        mono = ((k,), 0)
        for gi, v in c.items():
            out[(gi, mono)] = out.get((gi, mono), ZERO) + v
    dt_mono = ((0,), 1)
    for gi, v in theta.items():
        out[(gi, dt_mono)] = out.get((gi, dt_mono), ZERO) + v
    out = {k: v for k, v in out.items() if v}
    assert el_is_zero(mc_residual(ctx1, out)), \
        "1-simplex construction lost the MC equation"
    return out


# ---------------------------------------------------------------------------
# staged affine machinery


class GaugeSearchResult:
    """Verdict of a staged gauge-orbit search.

    status is "witness", "distinct" or "unknown"; a witness verifies
    gauge_act(witness, x) == xp exactly before being returned; distinct
    carries the stage whose affine system is insoluble, which is a
    certificate when the search stayed complete (no parameter entered a
    stage nonlinearly and the witness space covered all gauges).
    """

    def __init__(self, status, witness=None, stage=None, complete=True,
                 reason=""):
        self.status = status
        self.witness = witness
        self.stage = stage
        self.complete = complete
        self.reason = reason

    def __repr__(self):
        return (f"GaugeSearchResult({self.status!r}, stage={self.stage}, "
                f"complete={self.complete})")


def _keys_of(elements):
    keys = set()
    for e in elements:
        keys.update(e)
    return keys


def _to_dense(elements, key_order):
    idx = {k: i for i, k in enumerate(key_order)}
    out = []
    for e in elements:
        v = [ZERO] * len(key_order)
        for k, c in e.items():
            v[idx[k]] = c
        out.append(v)
    return out


def _from_dense(vec, key_order):
    return {k: c for k, c in zip(key_order, vec) if c}


def elements_span_intersection(els1, els2):
    """Basis (as elements) of span(els1) & span(els2)."""
    keys = sorted(_keys_of(els1) | _keys_of(els2))
    if not keys:
        return []
    from .linalg import intersect_spans
    inter = intersect_spans(_to_dense(els1, keys), _to_dense(els2, keys))
    return [_from_dense(v, keys) for v in inter]


def _solve_congruence(ctx, images, residual_const, residual_linear, stage,
                      nparams):
    """Solve sum z_j images[j] = residual (mod F^{stage+1}) jointly affine
    in the z's and the active parameters.

    residual_linear: list (per parameter) of constant elements.  Returns
    (z_coeffs, param_values, kernel) or NoSolution.  kernel vectors run
    over (params..., z...) coordinates.
    """
    keys = set(_keys_of(images)) | set(residual_const)
    for r in residual_linear:
        keys |= set(r)
    aux = ctx.stage_vectors_for(stage + 1, keys) if stage + 1 <= ctx.nclass() \
        else []
    keys = sorted(keys | _keys_of(aux))
    nz = len(images)
    na = len(aux)
    cols = nparams + nz + na
    idx = {k: i for i, k in enumerate(keys)}
    rows = [[ZERO] * cols for _ in keys]
    # sum_i kappa_i * (-residual_linear_i) + sum_j z_j images_j
    #   - sum_m w_m aux_m = residual_const
    for i, r in enumerate(residual_linear):
        for k, c in r.items():
            rows[idx[k]][i] = -c
    for j, im in enumerate(images):
        for k, c in im.items():
            rows[idx[k]][nparams + j] = c
    for m, a in enumerate(aux):
        for k, c in a.items():
            rows[idx[k]][nparams + nz + m] = -c
    b = [residual_const.get(k, ZERO) for k in keys]
    res = solve_affine(rows, b)
    if isinstance(res, NoSolution):
        return res
    x0, ker = res
    # strip the aux coordinates from the kernel directions
    ker = [k[:nparams + nz] for k in ker]
    return x0[:nparams], x0[nparams:nparams + nz], ker


def _split_parameterized(el, nparams):
    """Split a KPoly-valued element into constant, per-parameter linear
    parts, and an affinity flag."""
    const = {}
    linear = [dict() for _ in range(nparams)]
    affine = True
    for k, v in el.items():
        v = as_kpoly(v)
        if not v.is_affine():
            affine = False
        c = v.constant_part()
        if c:
            const[k] = c
        for var, coef in v.linear_part().items():
            linear[var][k] = coef
    return const, linear, affine


def staged_gauge_search(ctx, x, xp, witness_space, y_init=None,
                        max_depth=None, step_budget=None):
    """Search for y = y_init + (span of witness_space) with
    gauge_act(y, x) = xp, stage by stage along the lower central series.

    Solution-space parameters from earlier stages propagate symbolically
    into later stages while they enter affinely; a stage where they do
    not stays sound but forfeits the completeness needed to certify
    "distinct".
    """
    c = ctx.nclass()
    depth = min(max_depth or c, c)
    y0 = dict(y_init or {})
    params = []       # elements: active parameter directions
    complete = True
    budget = step_budget or (depth + 1)
    steps = 0
    for stage in range(1, depth + 1):
        steps += 1
        if steps > budget:
            return GaugeSearchResult("unknown", stage=stage,
                                     complete=False,
                                     reason="step budget exhausted")
        # y with symbolic parameters
        y_sym = {k: as_kpoly(v) for k, v in y0.items()}
        for i, p in enumerate(params):
            y_sym = el_add(y_sym, {k: KPoly.var(i) * v
                                   for k, v in p.items()})
        res = el_sub(xp, gauge_act(ctx, y_sym, x))
        const, linear, affine = _split_parameterized(res, len(params))
        if not affine:
            # freeze the parameters at zero and go on incompletely
            complete = False
            params = []
            res0 = el_sub(xp, gauge_act(ctx, y0, x))
            const = res0
            linear = []
        cand = ctx.stage_vectors_for(stage, _keys_of(witness_space + [y0]))
        cand = [e for e in (ctx.degree_component(v, 0) for v in cand) if e]
        cand = elements_span_intersection(witness_space, cand) \
            if stage > 1 else list(witness_space)
        images = [ctx.d_el(z) for z in cand]
        sol = _solve_congruence(ctx, images, const, linear, stage,
                                len(params))
        if isinstance(sol, NoSolution):
            if complete:
                return GaugeSearchResult(
                    "distinct", stage=stage, complete=True,
                    reason=f"affine obstruction insoluble at stage {stage}")
            return GaugeSearchResult(
                "unknown", stage=stage, complete=False,
                reason=f"greedy search stuck at stage {stage} after a "
                       f"nonlinear parameter entry")
        kvals, zvals, kernel = sol
        new_y0 = dict(y0)
        for i, val in enumerate(kvals):
            if val:
                new_y0 = el_add(new_y0, el_scale(val, params[i]))
        for j, val in enumerate(zvals):
            if val:
                new_y0 = el_add(new_y0, el_scale(val, cand[j]))
        new_params = []
        for kv in kernel:
            direction = {}
            for i, coef in enumerate(kv[:len(params)]):
                if coef:
                    direction = el_add(direction,
                                       el_scale(coef, params[i]))
            for j, coef in enumerate(kv[len(params):]):
                if coef:
                    direction = el_add(direction, el_scale(coef, cand[j]))
            if direction:
                new_params.append(direction)
        # echelonize directions over their keys to keep the count small
        if new_params:
            keys = sorted(_keys_of(new_params))
            dense = span_basis(_to_dense(new_params, keys))
            new_params = [_from_dense(v, keys) for v in dense]
        y0, params = new_y0, new_params
    if el_eq(gauge_act(ctx, y0, x), xp):
        return GaugeSearchResult("witness", witness=y0, complete=complete)
    if complete and depth == c:
        raise AssertionError("complete staged search ended off-orbit; "
                             "staging invariant broken")
    return GaugeSearchResult("unknown", stage=depth, complete=complete,
                             reason="depth exhausted before equality")


def gauge_equivalent(ctx, x, xp, max_depth=None):
    """Witness / distinct / unknown for the gauge orbit question.

    The witness space is the whole degree-0 part, so "distinct" verdicts
    are genuine certificates whenever the staged search stays complete
    (always, in the abelian case).
    """
    if el_eq(x, xp):
        return GaugeSearchResult("witness", witness={}, complete=True)
    witness_space = ctx.basis_of_degree(0)
    return staged_gauge_search(ctx, x, xp, witness_space,
                               max_depth=max_depth)


# ---------------------------------------------------------------------------
# staged Maurer-Cartan solving under affine constraints


class ObstructionUnsolvable(Exception):
    """The staged correction hit an insoluble affine system."""

    def __init__(self, stage, label=""):
        self.stage = stage
        self.label = label
        super().__init__(f"obstruction unsolvable at stage {stage}"
                         + (f" ({label})" if label else ""))


def constrained_mc_solve(ctx, candidates, constraints=(), rng=None,
                         start=None, label="", max_attempts=4):
    """MC element in an affine slice of the degree-1 candidate space.

    candidates: elements spanning the search space (degree 1).
    constraints: pairs (linear map on elements, target element); the
    solution x satisfies every map(x) == target exactly and
    mc_residual(x) == 0 exactly.  rng, when given, randomizes the free
    choices at every stage (the sampler hook); random choices can land
    on obstructed points of the MC variety, so failed attempts fall
    back to fresh draws and finally to the deterministic greedy path
    before the obstruction is reported.
    """
    rounds = ([rng] * max_attempts + [None]) if rng is not None else [None]
    last_exc = None
    for r in rounds:
        try:
            return _constrained_mc_once(ctx, candidates, constraints, r,
                                        start, label)
        except ObstructionUnsolvable as exc:
            last_exc = exc
    raise last_exc


def _random_combination(rng, particular, kernel):
    out = dict(particular)
    for k in kernel:
        c = Fraction(rng.randint(-2, 2))
        if c:
            out = el_add(out, el_scale(c, k))
    return out


def _constrained_mc_once(ctx, candidates, constraints, rng, start, label):
    # solve the affine constraints over the candidate coordinates
    ncand = len(candidates)
    rows = []
    rhs = []
    images = []
    for fn, target in constraints:
        imgs = [fn(z) for z in candidates]
        keys = sorted(_keys_of(imgs) | set(target))
        base = fn(start) if start else {}
        for k in keys:
            rows.append([im.get(k, ZERO) for im in imgs])
            rhs.append(target.get(k, ZERO) - base.get(k, ZERO))
        images.append(imgs)
    if rows:
        res = solve_affine(rows, rhs)
        if isinstance(res, NoSolution):
            raise ObstructionUnsolvable(0, label or "constraints")
        coeffs, kernel = res
    else:
        coeffs = [ZERO] * ncand
        kernel = [[ONE if i == j else ZERO for j in range(ncand)]
                  for i in range(ncand)]
    x = dict(start or {})
    for c, z in zip(coeffs, candidates):
        if c:
            x = el_add(x, el_scale(c, z))
    free = []
    for kv in kernel:
        direction = {}
        for c, z in zip(kv, candidates):
            if c:
                direction = el_add(direction, el_scale(c, z))
        if direction:
            free.append(direction)
    if rng is not None and free:
        x = _random_combination(rng, x, free)
    # staged MC correction along the free directions (all of degree 1)
    c = ctx.nclass()
    for stage in range(1, c + 1):
        R = mc_residual(ctx, x)
        if el_is_zero(R):
            break
        if stage == 1:
            cand_stage = free
        else:
            stage_deg1 = [v for v in ctx.stage_vectors_for(
                stage, _keys_of(free) | set(R))
                if v and ctx.key_degree(next(iter(v))) == 1]
            cand_stage = elements_span_intersection(free, stage_deg1)
        imgs = [ctx.d_el(z) for z in cand_stage]
        sol = _solve_congruence(ctx, imgs, el_scale(-ONE, R), [], stage, 0)
        if isinstance(sol, NoSolution):
            raise ObstructionUnsolvable(stage, label)
        _, zvals, kern = sol
        z = {}
        for val, zc in zip(zvals, cand_stage):
            if val:
                z = el_add(z, el_scale(val, zc))
        if rng is not None and kern:
            dirs = []
            for kv in kern:
                direction = {}
                for val, zc in zip(kv, cand_stage):
                    if val:
                        direction = el_add(direction, el_scale(val, zc))
                if direction:
                    dirs.append(direction)
            z = _random_combination(rng, z, dirs)
        x = el_add(x, z)
    R = mc_residual(ctx, x)
    if not el_is_zero(R):
        raise ObstructionUnsolvable(ctx.nclass(), label or "final residual")
    for fn, target in constraints:
        assert el_eq(fn(x), target), "constraints drifted during correction"
    return x


def mc_lift(f, nil_g, nil_h, xbar):
    """Lift an MC element along an acyclic fibration, exactly.

    Induction over the lower central series: each stage's correction
    lives in ker(f) and F^stage and is found by an affine solve against
    the obstruction cocycle; solvability is what the acyclic-fibration
    hypothesis guarantees, so an ObstructionUnsolvable means f was not
    one (re-validate the input).
    """
    ctx = FiniteLieContext(nil_g)
    candidates = ctx.basis_of_degree(1)
    constraints = [(lambda z: f.apply(z), dict(xbar))]
    x = constrained_mc_solve(ctx, candidates, constraints, label="mc_lift")
    assert el_eq(f.apply(x), xbar)
    return x


# ---------------------------------------------------------------------------
# the Deligne groupoid interface


class DeligneGroupoid:
    """Objects: MC elements; morphisms x -> x' : gauges g with x' = g(x).

    Composition of morphisms is bch; hom-sets are witness sets, and the
    orbit decision is the three-valued staged search.  The abelian case
    carries the exact presentation pi0 = H^1, Aut = Z^0.
    """

    def __init__(self, nil):
        self.nil = nil
        self.ctx = FiniteLieContext(nil)

    def is_object(self, x):
        return all(self.ctx.key_degree(k) == 1 for k in x) and \
            el_is_zero(mc_residual(self.ctx, x))

    def act(self, y, x):
        return gauge_act(self.ctx, y, x)

    def compose(self, y1, y2):
        """The morphism acting by y2 first, then y1."""
        return bch(self.ctx, y1, y2)

    def inverse(self, y):
        return gauge_inverse(y)

    def identity(self):
        return {}

    def hom_witness(self, x, xp, max_depth=None):
        return gauge_equivalent(self.ctx, x, xp, max_depth=max_depth)

    def is_abelian(self):
        return self.nil.algebra.is_abelian()

    def pi0_dimension(self):
        """dim H^1 of the underlying complex; abelian owners only."""
        if not self.is_abelian():
            raise ValueError("exact pi0 presentation needs an abelian owner")
        return self.nil.algebra.cochain.cohomology(1)[0]

    def aut_dimension(self):
        """dim Z^0; abelian owners only (Aut is exp of the 0-cocycles)."""
        if not self.is_abelian():
            raise ValueError("exact Aut presentation needs an abelian owner")
        return len(self.nil.algebra.cochain.cocycles(0))

    def random_mc_element(self, rng):
        ctx = self.ctx
        return constrained_mc_solve(ctx, ctx.basis_of_degree(1), (),
                                    rng=rng, label="sample")

    def random_gauge(self, rng, spread=2):
        out = {}
        for k in self.ctx.degree_keys(0):
            c = Fraction(rng.randint(-spread, spread))
            if c:
                out[k] = c
        return out
