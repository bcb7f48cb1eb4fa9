"""Modular fast paths with exactness certificates.

Large exact kernels and matrix products are computed through word-size
prime fields and then *certified*: candidate kernel vectors are verified
against the exact matrix, and completeness follows from the rank bound
``rank(A) >= rank(A mod p)``.  When the certificate passes, the result
is exact — the primes only ever speed things up, they never weaken the
claim.  A failed certificate raises ``CertificateError`` (and the public
entry points retry with fresh primes before giving up).

Conventions: primes are ~2**20 (see ``rationals.MODULAR_PRIMES``) so
residue products fit comfortably in int64 and chunked float64 matrix
products of inner dimension <= 4096 are exact.
"""

from collections import namedtuple

import numpy as np
from gmpy2 import mpq, mpz

from .errors import CertificateError
from .rationals import MODULAR_PRIMES, crt_pair, rational_reconstruct
from .linalg import clear_row_denominators

__all__ = [
    "residue_matrix", "rref_mod", "kernel_mod", "matmul_mod",
    "certified_kernel", "exact_int_matmul", "reconstruct_rational_matrix",
    "KernelResult",
]

# basis[i] is an exact kernel vector scaled to coprime integers whose only
# nonzero free coordinate is free_cols[i]; rank is the exact rank.
KernelResult = namedtuple("KernelResult", ["basis", "rank", "free_cols"])

_CHUNK = 4096  # float64 dot products of this length stay exact for p ~ 2**20


def residue_matrix(rows, ncols, p):
    """Dense int64 residue matrix from sparse integer rows ({col: val})."""
    out = np.zeros((len(rows), ncols), dtype=np.int64)
    for i, row in enumerate(rows):
        for c, v in row.items():
            out[i, c] = v % p
    return out


def rref_mod(mat, p, max_rank=None):
    """In-place reduced row echelon form of an int64 residue matrix.

    Returns ``(reduced_rows, pivot_cols)``; ``reduced_rows`` is the view of
    the first ``len(pivot_cols)`` rows of *mat* after reduction.
    """
    m, n = mat.shape
    pivots = []
    r = 0
    for c in range(n):
        if r >= m:
            break
        col = mat[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        pr = r + int(nz[0])
        if pr != r:
            mat[[r, pr]] = mat[[pr, r]]
        inv = pow(int(mat[r, c]), -1, p)
        mat[r] = (mat[r] * inv) % p
        colv = mat[:, c].copy()
        colv[r] = 0
        hit = np.nonzero(colv)[0]
        for start in range(0, hit.size, 2048):
            blk = hit[start:start + 2048]
            mat[blk] = (mat[blk] - colv[blk, None] * mat[r][None, :]) % p
        pivots.append(c)
        r += 1
        if max_rank is not None and r >= max_rank:
            break
    return mat[:r], pivots


def kernel_mod(reduced, pivots, ncols, p):
    """Kernel residue vectors from a reduced echelon form mod *p*.

    Returns an int64 array of shape (ncols - rank, ncols) in the standard
    RREF normalization: kernel vector ``j`` has 1 at the j-th free column
    and zeros at the other free columns.
    """
    pivset = set(pivots)
    free = [c for c in range(ncols) if c not in pivset]
    out = np.zeros((len(free), ncols), dtype=np.int64)
    for j, f in enumerate(free):
        out[j, f] = 1
        for i, c in enumerate(pivots):
            out[j, c] = (-int(reduced[i, f])) % p
    return out


def matmul_mod(a, b, p):
    """Exact ``a @ b mod p`` via chunked float64 BLAS (int64 in/out)."""
    a = np.ascontiguousarray(a, dtype=np.float64)
    b = np.ascontiguousarray(b, dtype=np.float64)
    k = a.shape[1]
    acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.float64)
    for s in range(0, k, _CHUNK):
        acc += a[:, s:s + _CHUNK] @ b[s:s + _CHUNK]
        acc %= p
    return acc.astype(np.int64)


def reconstruct_rational_matrix(residue_mats, moduli):
    """Entrywise CRT + rational reconstruction.

    ``residue_mats`` is a list of int64 arrays over pairwise-coprime
    ``moduli``.  Returns a list-of-lists of mpq, or ``None`` when any
    entry fails to reconstruct (caller adds primes).
    """
    shape = residue_mats[0].shape
    m = int(moduli[0])
    combined = residue_mats[0].astype(object)
    for res, p in zip(residue_mats[1:], moduli[1:]):
        p = int(p)
        inv = pow(m, -1, p)
        res = res.astype(object)
        combined = combined + m * (((res - combined) * inv) % p)
        m *= p
    out = []
    for i in range(shape[0]):
        row = []
        for j in range(shape[1]):
            q = rational_reconstruct(combined[i, j], m)
            if q is None:
                return None
            row.append(q)
        out.append(row)
    return out


def _sparse_dot_zero(rows, vecs_int):
    """Exact check that every sparse integer row annihilates every vector.

    Vectorizes in int64 when a rigorous worst-case bound permits; the
    big-integer fallback is exact for arbitrary entries.
    """
    max_row = max((abs(v) for row in rows for v in row.values()), default=0)
    max_vec = max((abs(x) for v in vecs_int for x in v), default=0)
    max_nnz = max((len(row) for row in rows), default=0)
    if rows and vecs_int and max_row * max_vec * max_nnz < 2 ** 62:
        vmat = np.array(vecs_int, dtype=np.int64).T
        data, cols, indptr = [], [], [0]
        for row in rows:
            for c, v in row.items():
                data.append(v)
                cols.append(c)
            indptr.append(len(data))
        data = np.array(data, dtype=np.int64)
        cols = np.array(cols, dtype=np.int64)
        indptr = np.array(indptr, dtype=np.int64)
        chunk = max(1, (1 << 22) // max(vmat.shape[1], 1))
        for start in range(0, len(rows), chunk):
            stop = min(start + chunk, len(rows))
            lo, hi = indptr[start], indptr[stop]
            if lo == hi:
                continue
            prods = data[lo:hi, None] * vmat[cols[lo:hi]]
            # clamp trailing empty-row starts (== hi-lo) into range;
            # those rows are zeroed by the empty-segment mask below
            ptr = np.minimum(indptr[start:stop] - lo, hi - lo - 1)
            seg = np.add.reduceat(prods, ptr, axis=0)
            empty = indptr[start + 1:stop + 1] == indptr[start:stop]
            if empty.any():
                seg[empty] = 0
            if seg.any():
                return False
        return True
    for row in rows:
        items = list(row.items())
        for v in vecs_int:
            s = 0
            for c, val in items:
                x = v[c]
                if x:
                    s += val * x
            if s:
                return False
    return True


def certified_kernel(rows, ncols, primes=MODULAR_PRIMES, max_new_primes=6):
    """Exact right kernel of a sparse integer matrix, modular but certified.

    ``rows``: list of dicts {column: int} (exact integer entries).
    Returns a :class:`KernelResult` whose basis spans the kernel exactly
    and whose rank ``= ncols - len(basis)`` is the exact rank.

    Certificate: the candidate vectors are verified against the exact
    rows, and their count equals ``ncols - rank_p`` which upper-bounds the
    kernel dimension; equality pins both kernel and rank exactly.
    """
    for attempt in range(3):
        shift = attempt * (1 + max_new_primes)
        pool = list(primes[shift:]) + list(primes[:shift])
        pivots = None
        residue_kernels = []
        moduli = []
        for p in pool[:1 + max_new_primes]:
            mat = residue_matrix(rows, ncols, p)
            reduced, piv = rref_mod(mat, p)
            if pivots is None:
                pivots = piv
                if len(pivots) == ncols:
                    # rank_p == ncols certifies a trivial kernel outright
                    return KernelResult([], ncols, [])
            elif piv != pivots:
                break
            residue_kernels.append(kernel_mod(reduced, pivots, ncols, p))
            moduli.append(p)
            candidate = reconstruct_rational_matrix(residue_kernels, moduli)
            if candidate is None:
                continue
            vecs_int = [clear_row_denominators(v) for v in candidate]
            if _sparse_dot_zero(rows, vecs_int):
                basis = [[mpq(x) for x in v] for v in vecs_int]
                pivset = set(pivots)
                free = [c for c in range(ncols) if c not in pivset]
                return KernelResult(basis, len(pivots), free)
    raise CertificateError("modular kernel failed to certify")


def exact_int_matmul(a, b):
    """Exact integer matrix product (lists of python-int rows).

    Small products run directly in int64; anything bigger goes through
    enough ~2**20 primes for the CRT bound, which makes the result exact
    (not probabilistic).
    """
    m, k = len(a), len(a[0]) if a else 0
    n = len(b[0]) if b else 0
    if k != len(b):
        raise ValueError("shape mismatch")
    max_a = max((abs(x) for row in a for x in row), default=0)
    max_b = max((abs(x) for row in b for x in row), default=0)
    bound = max_a * max_b * max(k, 1)
    if bound < 2 ** 62:
        an = np.array(a, dtype=np.int64)
        bn = np.array(b, dtype=np.int64)
        prod = an @ bn
        return [[int(x) for x in row] for row in prod]
    moduli = []
    residue_prods = []
    mprod = 1
    for p in MODULAR_PRIMES:
        ar = np.array([[x % p for x in row] for row in a], dtype=np.int64)
        br = np.array([[x % p for x in row] for row in b], dtype=np.int64)
        residue_prods.append(matmul_mod(ar, br, p))
        moduli.append(p)
        mprod *= p
        if mprod > 2 * bound + 1:
            break
    else:
        raise CertificateError("not enough primes for exact product bound")
    half = mprod // 2
    combined = residue_prods[0].astype(object)
    mcur = int(moduli[0])
    for res, p in zip(residue_prods[1:], moduli[1:]):
        p = int(p)
        inv = pow(mcur, -1, p)
        combined = combined + mcur * (((res.astype(object) - combined) * inv) % p)
        mcur *= p
    out = []
    for i in range(m):
        row = []
        for j in range(n):
            v = combined[i, j] % mprod
            if v > half:
                v -= mprod
            row.append(int(v))
        out.append(row)
    return out
