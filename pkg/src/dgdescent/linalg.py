"""Exact linear algebra over the rationals.

Everything in this package reduces to solving linear systems over Q.
Matrices are dense lists of lists of Fraction; a sparse row format
(dict col -> Fraction) is provided for the larger constraint systems
assembled by the totalization machinery.  No floats anywhere.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x):
    """Coerce ints, strings like "3/4", and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot make an exact rational out of {x!r}")


class NoSolution:
    """Witness of inconsistency of A x = b.

    certificate is a row vector y with y A = 0 and y . b != 0, or None
    when the solver was run without transform tracking.
    """

    def __init__(self, certificate=None):
        self.certificate = certificate

    def __bool__(self):
        return False

    def __repr__(self):
        return f"NoSolution(certificate={self.certificate!r})"


# ---------------------------------------------------------------------------
# dense matrices


def zero_vector(n):
    return [ZERO] * n


def zero_matrix(rows, cols):
    return [[ZERO] * cols for _ in range(rows)]


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def mat_vec(A, v):
    if A and len(A[0]) != len(v):
        raise ValueError(f"dimension mismatch: {len(A[0])} columns vs vector of length {len(v)}")
    return [sum((row[j] * v[j] for j in range(len(v))), ZERO) for row in A]


def mat_mul(A, B):
    if A and B and len(A[0]) != len(B):
        raise ValueError("dimension mismatch in matrix product")
    cols = len(B[0]) if B else 0
    return [[sum((row[k] * B[k][j] for k in range(len(B))), ZERO) for j in range(cols)]
            for row in A]


def transpose(A):
    if not A:
        return []
    return [[A[i][j] for i in range(len(A))] for j in range(len(A[0]))]


def vec_add(u, v):
    return [a + b for a, b in zip(u, v)]

def vec_sub(u, v):
    return [a - b for a, b in zip(u, v)]

def vec_scale(c, v):
    return [c * a for a in v]

def is_zero_vector(v):
    return all(a == 0 for a in v)


def rref(A, track=False):
    """Reduced row echelon form.

    Returns (R, pivots) or, with track=True, (R, pivots, T) where T is
    the invertible transform with R = T A.
    """
    R = [row[:] for row in A]
    m = len(R)
    n = len(R[0]) if R else 0
    T = identity(m) if track else None
    pivots = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        if track:
            T[r], T[p] = T[p], T[r]
        inv = ONE / R[r][c]
        if inv != 1:
            R[r] = [x * inv for x in R[r]]
            if track:
                T[r] = [x * inv for x in T[r]]
        for i in range(m):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
                if track:
                    T[i] = [x - f * y for x, y in zip(T[i], T[r])]
        pivots.append(c)
        r += 1
        if r == m:
            break
    if track:
        return R, pivots, T
    return R, pivots


def rank(A):
    return len(rref(A)[1])


def kernel_basis(A, ncols=None):
    """Basis of {x : A x = 0}; ncols needed when A has no rows."""
    if ncols is None:
        if not A:
            raise ValueError("ncols required for an empty matrix")
        ncols = len(A[0])
    if not A:
        return [e for e in identity(ncols)]
    R, pivots = rref(A)
    pivset = set(pivots)
    free = [j for j in range(ncols) if j not in pivset]
    basis = []
    for f in free:
        v = zero_vector(ncols)
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        basis.append(v)
    return basis


def solve_affine(A, b):
    """Solve A x = b exactly.

    Returns (x0, kernel) with A x0 = b and kernel a basis of the
    homogeneous solutions, or a NoSolution carrying a certificate row.
    The elimination runs on the augmented matrix; the certificate is
    recomputed with transform tracking only on the inconsistent path.
    """
    m = len(A)
    if len(b) != m:
        raise ValueError(f"dimension mismatch: {m} rows vs rhs of length {len(b)}")
    n = len(A[0]) if A else 0
    if m == 0:
        return zero_vector(n), identity(n)
    aug = [row + [bv] for row, bv in zip(A, b)]
    R, pivots = rref(aug)
    if n in pivots:
        # 0 = 1 after elimination; rebuild the certificate row
        _, piv2, T = rref(A, track=True)
        tb = mat_vec(T, b)
        for i in range(len(piv2), m):
            if tb[i] != 0:
                return NoSolution(certificate=T[i])
        raise AssertionError("augmented and tracked eliminations disagree")
    x0 = zero_vector(n)
    for i, p in enumerate(pivots):
        x0[p] = R[i][n]
    # kernel from the already-eliminated coefficient part
    pivset = set(pivots)
    free = [j for j in range(n) if j not in pivset]
    kernel = []
    for f in free:
        v = zero_vector(n)
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -R[i][f]
        kernel.append(v)
    return x0, kernel


def solve_unique(A, b):
    res = solve_affine(A, b)
    if isinstance(res, NoSolution):
        raise ValueError("inconsistent system")
    x0, ker = res
    if ker:
        raise ValueError("solution not unique")
    return x0


def span_basis(vectors):
    """Echelonized basis of the span of the given vectors."""
    if not vectors:
        return []
    R, pivots = rref(vectors)
    return [R[i] for i in range(len(pivots))]


def coords_in_span(basis, v):
    """Coefficients of v over basis, or None if v is outside the span."""
    if not basis:
        return None if any(a != 0 for a in v) else []
    res = solve_affine(transpose(basis), v)
    if isinstance(res, NoSolution):
        return None
    return res[0]


def span_contains(basis, v):
    return coords_in_span(basis, v) is not None


def spans_equal(B1, B2):
    e1 = span_basis(B1)
    e2 = span_basis(B2)
    return e1 == e2


def intersect_spans(B1, B2):
    """Basis of span(B1) & span(B2)."""
    if not B1 or not B2:
        return []
    n = len(B1[0])
    # combos (a, b) with sum a_i B1_i - sum b_j B2_j = 0
    cols = transpose(B1 + [[-x for x in row] for row in B2])
    ker = kernel_basis(cols, len(B1) + len(B2))
    out = []
    for k in ker:
        v = zero_vector(n)
        for i, row in enumerate(B1):
            if k[i] != 0:
                v = vec_add(v, vec_scale(k[i], row))
        out.append(v)
    return span_basis(out)


# ---------------------------------------------------------------------------
# sparse rows: dict col -> Fraction (zero values never stored)


def sparse_from_dense(A):
    return [{j: x for j, x in enumerate(row) if x != 0} for row in A]


def _sparse_axpy(row, f, pivot_row):
    # row -= f * pivot_row, in place on a fresh dict
    out = dict(row)
    for j, x in pivot_row.items():
        v = out.get(j, ZERO) - f * x
        if v:
            out[j] = v
        else:
            out.pop(j, None)
    return out


def sparse_eliminate(rows, rhs=None):
    """Forward elimination on sparse rows.

    Returns (pivot_rows, pivot_cols, reduced_rhs, inconsistent_index).
    pivot_rows are fully reduced (each pivot column appears in exactly
    one row, with coefficient 1).  If rhs is given, inconsistency is
    reported as the index of an original row whose reduction became
    0 = nonzero; otherwise inconsistent_index is None.
    """
    work = [dict(r) for r in rows]
    rvals = list(rhs) if rhs is not None else [ZERO] * len(rows)
    pivot_of_col = {}
    pivot_rows = []
    pivot_cols = []
    pivot_rhs = []
    # process rows in order of current sparsity for less fill-in
    order = sorted(range(len(work)), key=lambda i: len(work[i]))
    pending = [(i, work[i], rvals[i]) for i in order]
    for orig_i, row, rv in pending:
        row = dict(row)
        # reduce against existing pivots
        while True:
            hit = None
            for j in row:
                if j in pivot_of_col:
                    hit = j
                    break
            if hit is None:
                break
            k = pivot_of_col[hit]
            f = row[hit]
            row = _sparse_axpy(row, f, pivot_rows[k])
            rv = rv - f * pivot_rhs[k]
        if not row:
            if rv != 0:
                return pivot_rows, pivot_cols, pivot_rhs, orig_i
            continue
        # pick the sparsest-column heuristic: just take min column index
        pj = min(row)
        inv = ONE / row[pj]
        if inv != 1:
            row = {j: x * inv for j, x in row.items()}
            rv = rv * inv
        # back-substitute into previous pivots
        for k in range(len(pivot_rows)):
            if pj in pivot_rows[k]:
                f = pivot_rows[k][pj]
                pivot_rows[k] = _sparse_axpy(pivot_rows[k], f, row)
                pivot_rhs[k] = pivot_rhs[k] - f * rv
        pivot_of_col[pj] = len(pivot_rows)
        pivot_rows.append(row)
        pivot_cols.append(pj)
        pivot_rhs.append(rv)
    return pivot_rows, pivot_cols, pivot_rhs, None


def sparse_kernel(rows, ncols, with_free=False):
    """Kernel basis (list of sparse vectors) of a sparse homogeneous system.

    Basis vector i has coefficient 1 on its free column and 0 on every
    other free column, so coordinates over the basis are lookups; pass
    with_free=True to get the free columns alongside.
    """
    pivot_rows, pivot_cols, _, _ = sparse_eliminate(rows)
    pivset = set(pivot_cols)
    basis = []
    free = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = {f: ONE}
        for prow, pcol in zip(pivot_rows, pivot_cols):
            c = prow.get(f)
            if c:
                v[pcol] = -c
        basis.append(v)
        free.append(f)
    if with_free:
        return basis, free
    return basis


def sparse_solve_affine(rows, rhs, ncols):
    """Sparse analogue of solve_affine; kernel returned sparse."""
    pivot_rows, pivot_cols, pivot_rhs, bad = sparse_eliminate(rows, rhs)
    if bad is not None:
        return NoSolution()
    x0 = {}
    for pcol, rv in zip(pivot_cols, pivot_rhs):
        if rv:
            x0[pcol] = rv
    return x0, sparse_kernel(rows, ncols)
