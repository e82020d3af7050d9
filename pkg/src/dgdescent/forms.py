"""Polynomial differential forms on standard simplices, exactly over Q.

Forms on the n-simplex live in the free graded-commutative algebra on
t_1..t_n (degree 0) and dt_1..dt_n (degree 1); t_0 and dt_0 are
eliminated through t_0 = 1 - sum(t_i), dt_0 = -sum(dt_i), so the
relations of the simplicial forms algebra hold by construction and
equality of forms is equality of coefficient dicts.

A monomial is (exps, mask): exps a length-n tuple of exponents of the
t's, mask a bitmask of the dt factors, always written in increasing
index order.  The polynomial degree of a monomial counts every t and
every dt once; the form degree is the number of dt factors.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def mono_poly_degree(mono):
    exps, mask = mono
    return sum(exps) + bin(mask).count("1")


def mono_form_degree(mono):
    return bin(mono[1]).count("1")


def _merge_masks(m1, m2):
    """Wedge two increasing dt products; None if they share a factor.

    Returns (mask, sign) with sign the parity of moving the factors of
    m2 past those of m1 into one increasing word.
    """
    if m1 & m2:
        return None
    inversions = 0
    m = m2
    while m:
        low = m & -m
        # factors of m1 above this bit must jump over it
        inversions += bin(m1 >> low.bit_length()).count("1")
        m ^= low
    sign = -ONE if inversions % 2 else ONE
    return m1 | m2, sign


def mono_mul(a, b):
    (e1, m1), (e2, m2) = a, b
    merged = _merge_masks(m1, m2)
    if merged is None:
        return None
    mask, sign = merged
    return (tuple(x + y for x, y in zip(e1, e2)), mask), sign


class PolyForm:
    """Exact polynomial differential form on the standard n-simplex."""

    __slots__ = ("n", "terms")

    def __init__(self, n, terms=None):
        self.n = n
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, n):
        return cls(n)

    @classmethod
    def constant(cls, n, c):
        c = Fraction(c)
        if not c:
            return cls(n)
        return cls(n, {((0,) * n, 0): c})

    @classmethod
    def one(cls, n):
        return cls.constant(n, 1)

    @classmethod
    def t(cls, n, i):
        """The barycentric coordinate t_i, 1 <= i <= n."""
        if not 1 <= i <= n:
            raise ValueError(f"t_{i} is not a free coordinate on the "
                             f"{n}-simplex")
        exps = tuple(1 if j == i - 1 else 0 for j in range(n))
        return cls(n, {(exps, 0): ONE})

    @classmethod
    def dt(cls, n, i):
        if not 1 <= i <= n:
            raise ValueError(f"dt_{i} is not a free coordinate on the "
                             f"{n}-simplex")
        return cls(n, {((0,) * n, 1 << (i - 1)): ONE})

    @classmethod
    def t0(cls, n):
        """1 - t_1 - ... - t_n."""
        out = cls.one(n)
        for i in range(1, n + 1):
            out = out - cls.t(n, i)
        return out

    @classmethod
    def dt0(cls, n):
        out = cls.zero(n)
        for i in range(1, n + 1):
            out = out - cls.dt(n, i)
        return out

    @classmethod
    def monomial(cls, n, mono, coeff=ONE):
        return cls(n, {mono: Fraction(coeff)})

    # -- ring structure --------------------------------------------------------

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, ZERO) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return PolyForm(self.n, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return PolyForm(self.n, {m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            return PolyForm(self.n, {m: c * v for m, v in self.terms.items()})
        self._check(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                prod = mono_mul(m1, m2)
                if prod is None:
                    continue
                m, sign = prod
                v = out.get(m, ZERO) + sign * c1 * c2
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return PolyForm(self.n, out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, k):
        out = PolyForm.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        return isinstance(other, PolyForm) and self.n == other.n and \
            self.terms == other.terms

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if not isinstance(other, PolyForm) or other.n != self.n:
            raise ValueError("forms live on different simplices")

    # -- structure -------------------------------------------------------------

    def d(self):
        """Exterior differential: d t_i = dt_i as a graded derivation."""
        out = {}
        for (exps, mask), c in self.terms.items():
            for i in range(self.n):
                e = exps[i]
                if not e or (mask >> i) & 1:
                    continue
                nexps = tuple(x - 1 if j == i else x
                              for j, x in enumerate(exps))
                below = bin(mask & ((1 << i) - 1)).count("1")
                sign = -ONE if below % 2 else ONE
                m = (nexps, mask | (1 << i))
                v = out.get(m, ZERO) + sign * e * c
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return PolyForm(self.n, out)

    def poly_degree(self):
        return max((mono_poly_degree(m) for m in self.terms), default=0)

    def form_degrees(self):
        return sorted({mono_form_degree(m) for m in self.terms})

    def form_component(self, k):
        return PolyForm(self.n, {m: c for m, c in self.terms.items()
                                 if mono_form_degree(m) == k})

    def truncate(self, D):
        return PolyForm(self.n, {m: c for m, c in self.terms.items()
                                 if mono_poly_degree(m) <= D})

    def __repr__(self):
        return f"PolyForm({self.n}, {format_form(self)!r})"


# ---------------------------------------------------------------------------
# simplicial operator algebra on monotone maps


def monotone_maps(p, q):
    """All monotone maps [p] -> [q], as value tuples of length p+1."""
    out = []

    def rec(prefix, low):
        if len(prefix) == p + 1:
            out.append(tuple(prefix))
            return
        for v in range(low, q + 1):
            rec(prefix + [v], v)
    rec([], 0)
    return out


def is_monotone(u):
    return all(u[i] <= u[i + 1] for i in range(len(u) - 1))


def compose_maps(u, v):
    """(u . v)(k) = u(v(k)); v into the domain of u."""
    return tuple(u[x] for x in v)


def face_map(i, n):
    """The injection [n-1] -> [n] missing i."""
    return tuple(j for j in range(n + 1) if j != i)


def degeneracy_map(i, n):
    """The surjection [n+1] -> [n] repeating i."""
    out = []
    for j in range(n + 2):
        out.append(j if j <= i else j - 1)
    return tuple(out)


def vertex_map(i, n):
    return (i,)


def identity_monotone(n):
    return tuple(range(n + 1))


def omega_apply(u, omega, p=None):
    """Pullback of forms along a monotone map u: [p] -> [q].

    The algebra map is determined by t_i |-> sum over the preimage of i
    of the source coordinates (and the same on dt), with the eliminated
    coordinates t_0, dt_0 written out through the simplex relations.
    Commutes with d and with products.
    """
    if p is None:
        p = len(u) - 1
    q = omega.n
    if len(u) != p + 1 or any(x > q for x in u) or not is_monotone(u):
        raise ValueError(f"{u} is not a monotone map into [{q}]")
    src_t = [PolyForm.t0(p)] + [PolyForm.t(p, j) for j in range(1, p + 1)]
    src_dt = [PolyForm.dt0(p)] + [PolyForm.dt(p, j) for j in range(1, p + 1)]
    sub_t = []
    sub_dt = []
    for i in range(1, q + 1):
        st = PolyForm.zero(p)
        sdt = PolyForm.zero(p)
        for j, uj in enumerate(u):
            if uj == i:
                st = st + src_t[j]
                sdt = sdt + src_dt[j]
        sub_t.append(st)
        sub_dt.append(sdt)
    out = PolyForm.zero(p)
    for (exps, mask), c in omega.terms.items():
        term = PolyForm.constant(p, c)
        for i in range(q):
            for _ in range(exps[i]):
                term = term * sub_t[i]
            if not term:
                break
        if not term:
            continue
        for i in range(q):
            if (mask >> i) & 1:
                term = term * sub_dt[i]
        out = out + term
    return out


def restrict_to_face(omega, i):
    """Pullback along the i-th face inclusion."""
    return omega_apply(face_map(i, omega.n), omega)


def evaluate_at_vertex(omega, i):
    """Pullback along the vertex [0] -> [n]; a constant form."""
    return omega_apply(vertex_map(i, omega.n), omega)


# ---------------------------------------------------------------------------
# finite-dimensional truncations F_D


def monomials_up_to(n, D):
    """All monomials on the n-simplex of polynomial degree <= D, sorted."""
    out = []

    def exps_rec(prefix, remaining):
        if len(prefix) == n:
            out_exps.append(tuple(prefix))
            return
        for e in range(remaining + 1):
            exps_rec(prefix + [e], remaining - e)

    for mask in range(1 << n):
        k = bin(mask).count("1")
        if k > D:
            continue
        out_exps = []
        exps_rec([], D - k)
        for exps in out_exps:
            out.append((exps, mask))
    out.sort(key=lambda m: (mono_form_degree(m), m[1], m[0]))
    return out


def truncated_form_cochain(n, D, top_degree=None):
    """The complex F_D(Omega_n) with basis the monomials of degree <= D.

    Returns (Cochain, monomial lists per form degree).  d preserves the
    polynomial degree, so F_D really is a subcomplex.
    """
    from .cochain import Cochain, GradedSpace
    monos = monomials_up_to(n, D)
    by_deg = {}
    for m in monos:
        by_deg.setdefault(mono_form_degree(m), []).append(m)
    degrees = {k: [format_mono(mono) for mono in v]
               for k, v in by_deg.items()}
    space = GradedSpace(degrees, top_degree=top_degree or max(n + 1, 8))
    dmats = {}
    for k, ms in sorted(by_deg.items()):
        targets = by_deg.get(k + 1, [])
        tindex = {m: r for r, m in enumerate(targets)}
        M = [[ZERO] * len(ms) for _ in range(len(targets))]
        nonzero = False
        for col, m in enumerate(ms):
            df = PolyForm(n, {m: ONE}).d()
            for mm, c in df.terms.items():
                M[tindex[mm]][col] = c
                nonzero = True
        if nonzero:
            dmats[k] = M
    return Cochain(space, dmats), by_deg


# ---------------------------------------------------------------------------
# printing


def format_mono(mono):
    exps, mask = mono
    parts = []
    for i, e in enumerate(exps):
        if e == 1:
            parts.append(f"t{i + 1}")
        elif e > 1:
            parts.append(f"t{i + 1}^{e}")
    for i in range(len(exps)):
        if (mask >> i) & 1:
            parts.append(f"dt{i + 1}")
    return " ".join(parts) if parts else "1"


def format_form(omega):
    if not omega.terms:
        return "0"
    parts = []
    for m in sorted(omega.terms,
                    key=lambda mm: (mono_form_degree(mm), mm[1], mm[0])):
        c = omega.terms[m]
        mono = format_mono(m)
        if mono == "1":
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        elif c == -1:
            parts.append(f"-{mono}")
        else:
            parts.append(f"{c} {mono}")
    text = " + ".join(parts)
    return text.replace("+ -", "- ")
