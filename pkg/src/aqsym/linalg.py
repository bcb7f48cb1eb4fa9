"""Exact dense linear algebra over Q and over rational-function fields.

Matrices are plain lists of row lists.  Entries may be any field scalar
supporting ``+ - * /`` and truthiness (``gmpy2.mpq``, ``RatFunc``); the
rational case additionally gets a fraction-free Bareiss fast path that
clears each row to integers first, which keeps intermediate growth
polynomial instead of thrashing gcd normalization.

All results are exact.  Kernel bases are returned column-style: each
basis element is a length-``ncols`` vector ``v`` with ``A v = 0``.
"""

from gmpy2 import mpq, mpz, gcd as _zgcd

__all__ = [
    "zeros", "identity", "transpose", "mat_mul", "mat_vec", "mat_add",
    "mat_sub", "mat_scale", "mat_eq", "rref", "rank", "right_kernel",
    "solve", "inverse", "det", "row_space", "in_span", "intersect_spans",
    "clear_row_denominators",
]


def zeros(r, c, zero=mpq(0)):
    return [[zero] * c for _ in range(r)]


def identity(n, one=mpq(1), zero=mpq(0)):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(a):
    return [list(col) for col in zip(*a)] if a else []


def _dot(u, v):
    acc = None
    for x, y in zip(u, v):
        if x and y:
            acc = x * y if acc is None else acc + x * y
    if acc is None:
        return mpq(0)
    return acc


def mat_mul(a, b):
    bt = list(zip(*b))
    return [[_dot(row, col) for col in bt] for row in a]


def mat_vec(a, v):
    return [_dot(row, v) for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(r1, r2)] for r1, r2 in zip(a, b)]


def mat_scale(a, s):
    return [[x * s for x in row] for row in a]


def mat_eq(a, b):
    if len(a) != len(b):
        return False
    return all(len(r1) == len(r2) and all(x == y for x, y in zip(r1, r2))
               for r1, r2 in zip(a, b))


def _is_rational(x):
    return isinstance(x, (type(mpq(0)), type(mpz(0)), int))


def clear_row_denominators(row):
    """Scale a rational row to coprime integers (sign preserved)."""
    lcm = mpz(1)
    for x in row:
        d = mpq(x).denominator
        g = _zgcd(lcm, d)
        lcm = lcm // g * d
    ints = [mpz(x * lcm) for x in row]
    g = mpz(0)
    for v in ints:
        g = _zgcd(g, v)
    if g > 1:
        ints = [v // g for v in ints]
    return ints


def _gcd_normalize(ints):
    g = mpz(0)
    for v in ints:
        g = _zgcd(g, v)
        if g == 1:
            return ints
    if g > 1:
        return [v // g for v in ints]
    return ints


# ---------------------------------------------------------------------------
# Reduced row echelon form over a generic field
# ---------------------------------------------------------------------------

def rref(a):
    """Reduced row echelon form.  Returns ``(R, pivot_columns)``.

    Works over any exact field (rationals, rational functions).  The input
    is not modified.
    """
    if not a:
        return [], []
    rows = [list(r) for r in a]
    nrows, ncols = len(rows), len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        if piv != 1:
            inv = 1 / piv
            rows[r] = [x * inv for x in rows[r]]
        for i in range(nrows):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows, pivots


# ---------------------------------------------------------------------------
# Fraction-free integer echelon (Bareiss) for rational matrices
# ---------------------------------------------------------------------------

def _int_echelon(rows, ncols):
    """Bareiss fraction-free echelon on integer rows.

    Returns ``(echelon_rows, pivot_cols)``; echelon_rows[i] has its first
    nonzero entry in column pivot_cols[i].
    """
    rows = [list(r) for r in rows if any(r)]
    pivots = []
    prev = mpz(1)
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if rows[i][c]:
                pr = i
                break
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            ri = rows[i]
            f = ri[c]
            rr = rows[r]
            if f:
                rows[i] = [(piv * ri[j] - f * rr[j]) // prev
                           for j in range(ncols)]
            elif prev != 1:
                rows[i] = [(piv * x) // prev for x in ri]
            else:
                rows[i] = [piv * x for x in ri]
        prev = piv
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return rows[:r], pivots


def _to_int_rows(a):
    return [clear_row_denominators(row) for row in a if any(row)]


def _all_rational(a):
    return all(_is_rational(x) for row in a for x in row)


def rank(a):
    """Exact rank.  Rational matrices use fraction-free Bareiss."""
    if not a or not a[0]:
        return 0
    if _all_rational(a):
        _, pivots = _int_echelon(_to_int_rows(a), len(a[0]))
        return len(pivots)
    return len(rref(a)[1])


def right_kernel(a, ncols=None):
    """Basis of ``{v : A v = 0}``.

    Rational matrices use the fraction-free echelon plus exact back
    substitution; basis vectors are scaled to coprime integers.  Over
    other fields the reduced echelon form is used directly.
    """
    if ncols is None:
        if not a or not a[0]:
            raise ValueError("empty matrix needs explicit ncols")
        ncols = len(a[0])
    if not a or not any(any(row) for row in a):
        return [[mpq(1) if j == i else mpq(0) for j in range(ncols)]
                for i in range(ncols)]
    if _all_rational(a):
        ech, pivots = _int_echelon(_to_int_rows(a), ncols)
        basis = []
        pivset = set(pivots)
        for free in range(ncols):
            if free in pivset:
                continue
            v = [mpq(0)] * ncols
            v[free] = mpq(1)
            for i in range(len(pivots) - 1, -1, -1):
                c = pivots[i]
                row = ech[i]
                s = mpq(0)
                for j in range(c + 1, ncols):
                    if row[j] and v[j]:
                        s += row[j] * v[j]
                v[c] = -s / row[c]
            basis.append([mpq(x) for x in clear_row_denominators(v)])
        return basis
    red, pivots = rref(a)
    sample = next(x for row in a for x in row if x)
    one = (sample / sample)
    zero = one - one
    basis = []
    pivset = set(pivots)
    for free in range(ncols):
        if free in pivset:
            continue
        v = [zero] * ncols
        v[free] = one
        for i, c in enumerate(pivots):
            v[c] = zero - red[i][free]
        basis.append(v)
    return basis


def solve(a, b):
    """One exact solution of ``A x = b`` or ``None`` if inconsistent.

    ``b`` may be a vector or a matrix (solved column-wise).  Free
    variables are set to zero.
    """
    vector_rhs = bool(b) and not isinstance(b[0], list)
    cols_b = [[x] for x in b] if vector_rhs else b
    ncols = len(a[0]) if a else 0
    aug = [list(ra) + list(rb) for ra, rb in zip(a, cols_b)]
    red, pivots = rref(aug)
    pivots_a = [c for c in pivots if c < ncols]
    if len(pivots_a) != len(pivots):
        return None
    nrhs = len(cols_b[0]) if cols_b else 0
    xs = [[mpq(0)] * nrhs for _ in range(ncols)]
    for i, c in enumerate(pivots_a):
        for k in range(nrhs):
            xs[c][k] = red[i][ncols + k]
    if vector_rhs:
        return [row[0] for row in xs]
    return xs


def inverse(a):
    """Exact inverse or ``None`` when singular."""
    n = len(a)
    red, pivots = rref([list(r) + list(e) for r, e in zip(a, identity(n))])
    if pivots != list(range(n)):
        return None
    return [row[n:] for row in red]


def det(a):
    """Exact determinant via fraction-free Bareiss (rational entries)."""
    n = len(a)
    if n == 0:
        return mpq(1)
    scale = mpq(1)
    ints = []
    for row in a:
        row = [mpq(x) for x in row]
        nz = next((j for j in range(n) if row[j]), None)
        if nz is None:
            return mpq(0)
        cleared = clear_row_denominators(row)
        scale *= row[nz] / cleared[nz]
        ints.append(cleared)
    sign = 1
    prev = mpz(1)
    for c in range(n - 1):
        pr = next((i for i in range(c, n) if ints[i][c]), None)
        if pr is None:
            return mpq(0)
        if pr != c:
            ints[c], ints[pr] = ints[pr], ints[c]
            sign = -sign
        piv = ints[c][c]
        for i in range(c + 1, n):
            f = ints[i][c]
            ints[i] = [(piv * ints[i][j] - f * ints[c][j]) // prev
                       for j in range(n)]
        prev = piv
    return scale * sign * mpq(ints[n - 1][n - 1])


# ---------------------------------------------------------------------------
# Span utilities
# ---------------------------------------------------------------------------

def row_space(vectors):
    """Independent subset of *vectors* spanning their row space.

    Returns ``(subset, indices)`` picking the earliest independent vectors
    (deterministic).
    """
    if not vectors:
        return [], []
    ncols = len(vectors[0])
    rational = _all_rational(vectors)
    chosen, idx, ech, pivots = [], [], [], []
    for i, v in enumerate(vectors):
        row = clear_row_denominators(v) if rational else list(v)
        for erow, p in zip(ech, pivots):
            if row[p]:
                f, g = row[p], erow[p]
                row = [g * x - f * y for x, y in zip(row, erow)]
                if rational:
                    row = _gcd_normalize(row)
        p = next((j for j in range(ncols) if row[j]), None)
        if p is None:
            continue
        ech.append(row)
        pivots.append(p)
        chosen.append(list(v))
        idx.append(i)
    return chosen, idx


def in_span(basis, v):
    """Coordinates of ``v`` in ``span(basis)`` or ``None``."""
    if not basis:
        return [] if not any(v) else None
    a = [list(col) for col in zip(*basis)]
    return solve(a, list(v))


def intersect_spans(basis_a, basis_b):
    """Basis of ``span(A) ∩ span(B)`` inside the common ambient space."""
    if not basis_a or not basis_b:
        return []
    na = len(basis_a)
    cols = [list(col) for col in
            zip(*(basis_a + [[-x for x in v] for v in basis_b]))]
    out = []
    for k in right_kernel(cols):
        vec = [mpq(0)] * len(basis_a[0])
        for i in range(na):
            if k[i]:
                vec = [acc + k[i] * x for acc, x in zip(vec, basis_a[i])]
        if any(vec):
            out.append(vec)
    return row_space(out)[0]
