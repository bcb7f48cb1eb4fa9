"""Exact matrices with integer cores and CSR kernels for sparse maps.

Heavy exact computations keep matrices in the form N/d with ``N`` integer
(python ints, arbitrary size) and ``d`` a positive integer denominator.
Products route through :func:`aqsym.modular.exact_int_matmul`, so they
stay exact regardless of entry growth.

Sparse linear maps (cochain differentials, module actions) are stored in
a CSR-like integer triple (data, cols, indptr) and applied to dense
integer matrices with numpy int64 when a rigorous bound check allows it,
falling back to python big integers otherwise.  Both paths are exact.
"""

import numpy as np
from gmpy2 import mpq, mpz, gcd as _zgcd

from .rationals import lcm_denominators
from .modular import exact_int_matmul

__all__ = ["IntMat", "SparseIntRows", "sparse_from_dicts"]

_INT64_SAFE = 2 ** 62


class IntMat:
    """Dense exact matrix stored as integer rows over a common denominator."""

    __slots__ = ("num", "den", "shape")

    def __init__(self, num, den=1):
        self.num = [[int(x) for x in row] for row in num]
        self.den = int(den)
        if self.den < 0:
            self.den = -self.den
            self.num = [[-x for x in row] for row in self.num]
        if self.den == 0:
            raise ZeroDivisionError("IntMat denominator is zero")
        self.shape = (len(self.num), len(self.num[0]) if self.num else 0)

    @classmethod
    def from_mpq(cls, rows):
        flat = [x for row in rows for x in row]
        den = int(lcm_denominators(flat)) if flat else 1
        num = [[int(mpq(x) * den) for x in row] for row in rows]
        return cls(num, den)

    def to_mpq(self):
        d = self.den
        return [[mpq(x, d) for x in row] for row in self.num]

    def normalize(self):
        g = mpz(self.den)
        for row in self.num:
            for x in row:
                if x:
                    g = _zgcd(g, x)
                    if g == 1:
                        return self
        if g > 1:
            g = int(g)
            return IntMat([[x // g for x in row] for row in self.num],
                          self.den // g)
        return self

    def matmul(self, other):
        num = exact_int_matmul(self.num, other.num)
        return IntMat(num, self.den * other.den).normalize()

    def sub(self, other):
        if self.den == other.den:
            num = [[a - b for a, b in zip(r1, r2)]
                   for r1, r2 in zip(self.num, other.num)]
            return IntMat(num, self.den)
        da, db = self.den, other.den
        num = [[a * db - b * da for a, b in zip(r1, r2)]
               for r1, r2 in zip(self.num, other.num)]
        return IntMat(num, da * db)

    def is_zero(self):
        return all(not x for row in self.num for x in row)

    def eq(self, other):
        return self.sub(other).is_zero()

    def col(self, j):
        return [mpq(row[j], self.den) for row in self.num]

    def __repr__(self):
        return "IntMat(%dx%d, den=%d)" % (self.shape[0], self.shape[1], self.den)


class SparseIntRows:
    """CSR-style sparse integer matrix for fast exact row application."""

    def __init__(self, rows, ncols):
        self.nrows = len(rows)
        self.ncols = ncols
        data, cols, indptr = [], [], [0]
        for row in rows:
            for c, v in sorted(row.items()):
                if v:
                    data.append(int(v))
                    cols.append(c)
            indptr.append(len(data))
        self.max_abs = max((abs(x) for x in data), default=0)
        self.max_row_nnz = max((indptr[i + 1] - indptr[i]
                                for i in range(self.nrows)), default=0)
        self._data_obj = data
        self._cols = np.array(cols, dtype=np.int64)
        self._indptr = np.array(indptr, dtype=np.int64)
        self._rows_dicts = rows
        if self.max_abs < _INT64_SAFE:
            self._data64 = np.array(data, dtype=np.int64)
        else:
            self._data64 = None

    def apply_dense(self, b):
        """Exact product (self @ b) for an integer matrix ``b``.

        ``b`` is a list of integer rows (length ncols).  Uses vectorized
        int64 when the worst-case entry bound fits, else python ints.
        """
        width = len(b[0]) if b else 0
        max_b = max((abs(x) for row in b for x in row), default=0)
        bound = self.max_abs * max_b * max(self.max_row_nnz, 1)
        if self._data64 is not None and bound < _INT64_SAFE and \
                max_b < _INT64_SAFE:
            bn = np.array(b, dtype=np.int64)
            out = np.zeros((self.nrows, width), dtype=np.int64)
            chunk = max(1, (1 << 23) // max(width, 1))
            for start in range(0, self.nrows, chunk):
                stop = min(start + chunk, self.nrows)
                lo, hi = self._indptr[start], self._indptr[stop]
                if lo == hi:
                    continue
                prods = self._data64[lo:hi, None] * bn[self._cols[lo:hi]]
                # clamp trailing empty-row starts (== hi-lo) into range;
                # those rows are zeroed by the empty-segment mask below
                ptr = np.minimum(self._indptr[start:stop] - lo, hi - lo - 1)
                seg = np.add.reduceat(prods, ptr, axis=0)
                # reduceat repeats the row when a segment is empty; fix those
                empty = (self._indptr[start + 1:stop + 1] ==
                         self._indptr[start:stop])
                if empty.any():
                    seg[empty] = 0
                out[start:stop] = seg
            return [[int(x) for x in row] for row in out]
        # exact big-int fallback
        out = []
        for row in self._rows_dicts:
            acc = [0] * width
            for c, v in row.items():
                brow = b[c]
                for t in range(width):
                    x = brow[t]
                    if x:
                        acc[t] += v * x
            out.append(acc)
        return out

    def apply_vec(self, v):
        out = []
        for row in self._rows_dicts:
            s = 0
            for c, val in row.items():
                x = v[c]
                if x:
                    s += val * x
            out.append(s)
        return out


def sparse_from_dicts(rows, ncols):
    return SparseIntRows(rows, ncols)
