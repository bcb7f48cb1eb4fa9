"""Lie-algebra cohomology of the abelian bottom layer, and module matching.

This module exposes the full Chevalley--Eilenberg complex of the degree -1
abelian subalgebra acting on the whole graded algebra, decomposes the
harmonic second cohomology into homogeneous summands, and matches those
summands against the explicit tensor models by constructing (and exactly
verifying) an invertible equivariant map.

Everything is exact: differentials are sparse rational matrices, harmonic
representatives are exact cocycles, and an equivariant isomorphism is only
returned after the intertwining identity has been checked on every basis
element of the degree-0 subalgebra by exact integer matrix products.
"""

import random
from itertools import combinations
from math import gcd

import numpy as np
from gmpy2 import mpq

from .cohomology import h2_summands, wedge_pairs, _assemble_d2_rows, \
    _assemble_dstar_rows, _clear_sparse_rows, wedge_triples
from .errors import CertificateError, NoEquivariantIso
from .hmod import annihilator
from .intmat import IntMat
from .linalg import clear_row_denominators, inverse, right_kernel, row_space
from .modular import certified_kernel
from .rationals import MODULAR_PRIMES

__all__ = [
    "CochainSpace",
    "CEDifferential",
    "ce_differential",
    "HarmonicSummand",
    "h2_decompose",
    "harmonic_dimension_recheck",
    "EquivariantIso",
    "match_module",
]


class CochainSpace:
    """Alternating k-forms on the degree -1 layer valued in the algebra.

    A basis element is an ascending k-subset S of dual labels together with
    a basis element of the full algebra; its flat index is
    ``subset_position * alg.dim + value_index``.
    """

    def __init__(self, alg, k):
        self.alg = alg
        self.k = k
        self.subsets = list(combinations(range(alg.dim_gm1), k))
        self.subset_pos = {s: i for i, s in enumerate(self.subsets)}
        self.dim = len(self.subsets) * alg.dim

    def index(self, subset, value):
        return self.subset_pos[tuple(subset)] * self.alg.dim + value

    def unindex(self, idx):
        spos, value = divmod(idx, self.alg.dim)
        return self.subsets[spos], value


class CEDifferential:
    """Sparse exact matrix of the differential C^k -> C^(k+1)."""

    def __init__(self, source, target, columns):
        self.source = source
        self.target = target
        self.columns = columns          # dict col -> tuple of (row, mpq)
        self.nrows = target.dim
        self.ncols = source.dim
        self.k = source.k

    def apply(self, vec):
        """Image of a sparse cochain (dict index -> mpq); exact."""
        out = {}
        for col, v in vec.items():
            if not v:
                continue
            for row, c in self.columns.get(col, ()):
                out[row] = out.get(row, mpq(0)) + c * v
        return {i: v for i, v in out.items() if v}


def ce_differential(alg, k):
    """Differential of the complex of the abelian degree -1 subalgebra.

    On a basis cochain xi_S (x) u it inserts every remaining dual label t
    in front, with the sign of sorting t into S, and brackets the
    corresponding degree -1 element with the value u.  Composing two
    consecutive differentials gives zero exactly.
    """
    source = CochainSpace(alg, k)
    target = CochainSpace(alg, k + 1)
    dim = alg.dim
    columns = {}
    for spos, subset in enumerate(source.subsets):
        inserts = []
        sset = set(subset)
        for t in range(alg.dim_gm1):
            if t in sset:
                continue
            merged = tuple(sorted(subset + (t,)))
            sign = (-1) ** merged.index(t)
            inserts.append((t, sign, target.subset_pos[merged]))
        for value in range(dim):
            col = spos * dim + value
            entries = {}
            for t, sign, tpos in inserts:
                for out_val, c in alg.algebra.bracket_basis(t, value).items():
                    row = tpos * dim + out_val
                    entries[row] = entries.get(row, mpq(0)) + sign * c
            cleaned = tuple((r, v) for r, v in sorted(entries.items()) if v)
            if cleaned:
                columns[col] = cleaned
    return CEDifferential(source, target, columns)


class HarmonicSummand:
    """A homogeneous summand of harmonic second cohomology.

    Wraps the certified harmonic computation and embeds every basis
    representative into the full two-cochain space, where it is an exact
    cocycle of :func:`ce_differential`.
    """

    def __init__(self, alg, inner):
        self.alg = alg
        self.inner = inner
        self.homogeneity = inner.hom
        self.dim = inner.dim
        self.rho = inner.rho            # list of IntMat, one per g(0) index
        nv = len(inner.value_indices)
        self.basis_c2 = []
        for vec in inner.basis:
            emb = {}
            for i, x in enumerate(vec):
                if x:
                    ppos, vpos = divmod(i, nv)
                    emb[ppos * alg.dim + inner.value_indices[vpos]] = mpq(x)
            self.basis_c2.append(emb)

    def rho_combo(self, coeffs):
        """Dense mpq matrix of the action of a degree-0 combination."""
        out = [[mpq(0)] * self.dim for _ in range(self.dim)]
        for p, c in enumerate(coeffs):
            if not c:
                continue
            mat = self.rho[p]
            den = mpq(c, mat.den)
            num = mat.num
            for i in range(self.dim):
                row_in = num[i]
                row_out = out[i]
                for j in range(self.dim):
                    if row_in[j]:
                        row_out[j] += den * row_in[j]
        return out


def h2_decompose(alg, homs=(1, 2, 3)):
    """Nonzero homogeneous summands of harmonic second cohomology.

    Returns a list of :class:`HarmonicSummand`, sorted by homogeneity.
    Each carries exact basis representatives (as full two-cochains) and
    the certified action matrices of the degree-0 subalgebra.
    """
    table = h2_summands(alg, homs=tuple(homs), with_action=True)
    out = []
    for hom in sorted(table):
        inner = table[hom]
        if inner.dim:
            out.append(HarmonicSummand(alg, inner))
    return out


def harmonic_dimension_recheck(alg, hom, seed=0):
    """Harmonic dimension recomputed in shuffled two-cochain coordinates.

    Rebuilds the defining linear conditions, permutes the coordinate order
    with a seeded shuffle, and recomputes the certified kernel dimension.
    The result must not depend on the coordinate presentation.
    """
    pairs = wedge_pairs(alg.dim_gm1)
    triples = wedge_triples(alg.dim_gm1)
    vals2 = _vals(alg, hom - 2)
    vals1 = _vals(alg, hom - 1)
    vals3 = _vals(alg, hom - 3)
    ncols = len(pairs) * len(vals2)
    nv3rows = len(triples) * len(vals3)
    rows = {}
    _assemble_d2_rows(alg, pairs, triples, vals2, vals3, rows, 0)
    _assemble_dstar_rows(alg, pairs, vals2, vals1, rows, nv3rows)
    perm = list(range(ncols))
    random.Random(seed).shuffle(perm)
    shuffled = [{perm[c]: v for c, v in row.items()} for row in rows.values()]
    kres = certified_kernel(_clear_sparse_rows(shuffled), ncols)
    return len(kres.basis)


def _vals(alg, deg):
    if deg == -1:
        return list(range(0, 4 * alg.n))
    if deg == 0:
        return list(range(4 * alg.n, 4 * alg.n + alg.dim_g0))
    if deg == 1:
        return list(range(4 * alg.n + alg.dim_g0, alg.dim))
    return []


# --------------------------------------------------------------------------
# Equivariant matching
# --------------------------------------------------------------------------


class EquivariantIso:
    """An exactly verified invertible intertwiner, model coords -> summand."""

    def __init__(self, summand, module, matrix, source_vector, image_vector):
        self.summand = summand
        self.module = module
        self.matrix = matrix            # IntMat, maps module coordinates
        self.source_vector = source_vector
        self.image_vector = image_vector

    def apply(self, coords):
        num = self.matrix.num
        den = self.matrix.den
        return [mpq(sum(num[i][j] * coords[j] for j in range(len(coords))),
                    den) for i in range(len(num))]


def match_module(summand, module):
    """Invertible equivariant map between a harmonic summand and a model.

    Raises :class:`NoEquivariantIso` when dimensions differ, when no vector
    on the cohomology side is killed by the annihilator of the model's
    distinguished extremal vector, or when every candidate fails the exact
    intertwining verification.  A returned map has been checked against
    every basis element of the degree-0 subalgebra by exact integer matrix
    products, and its invertibility is certified.
    """
    if summand.dim != module.dim:
        raise NoEquivariantIso(
            "dimensions differ: summand %d, model %d"
            % (summand.dim, module.dim))
    dim = module.dim
    g0dim = module.alg.dim_g0
    w = module.extremal()
    ann_coords, _ = annihilator(module, w)

    rows = []
    for coeffs in ann_coords:
        rows.extend(summand.rho_combo(coeffs))
    candidates = right_kernel(rows, ncols=dim)
    if not candidates:
        raise NoEquivariantIso(
            "no cohomology vector shares the annihilator of the extremal")

    w_int = _primitive_ints(w)
    tree, m_v_cols = _span_from(module, w_int)
    m_v = [[m_v_cols[j][i] for j in range(dim)] for i in range(dim)]
    m_v_inv = inverse([[mpq(x) for x in row] for row in m_v])
    if m_v_inv is None:
        raise CertificateError("transported spanning set is not invertible")

    rho_v = [module.action(p) for p in range(g0dim)]
    reasons = []
    for y in candidates:
        h_cols = _replay(summand, tree, [mpq(x) for x in y])
        m_h = [[h_cols[j][i] for j in range(dim)] for i in range(dim)]
        phi = IntMat.from_mpq(_matmul_mpq(m_h, m_v_inv)).normalize()
        ok, why = _verify_intertwiner(phi, summand.rho, rho_v, dim)
        if ok:
            image = [mpq(sum(phi.num[i][j] * w[j] for j in range(dim)),
                         phi.den) for i in range(dim)]
            return EquivariantIso(summand, module, phi, list(w), image)
        reasons.append(why)
    raise NoEquivariantIso(
        "every candidate failed exact verification: " + "; ".join(reasons))


def _verify_intertwiner(phi, rho_h, rho_v, dim):
    if not _invertible_certificate(phi, dim):
        return False, "candidate map is singular"
    for p in range(len(rho_v)):
        left = rho_h[p].matmul(phi)
        right = phi.matmul(rho_v[p])
        if not left.eq(right):
            return False, "intertwining fails on degree-0 element %d" % p
    return True, ""


def _invertible_certificate(mat, dim):
    """True iff the matrix is invertible (nonzero determinant, certified)."""
    for p in MODULAR_PRIMES[:6]:
        red = np.array([[int(x) % p for x in row] for row in mat.num],
                       dtype=np.int64)
        if _rank_mod(red, p) == dim:
            return True
    return bool(right_kernel([[mpq(x) for x in row] for row in mat.num],
                             ncols=dim) == [])


def _rank_mod(mat, p):
    m = mat % p
    nrows, ncols = m.shape
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i, c]:
                piv = i
                break
        if piv is None:
            continue
        m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), p - 2, p)
        m[r] = (m[r] * inv) % p
        col = m[r + 1:, c].copy()
        if col.any():
            m[r + 1:] = (m[r + 1:] - np.outer(col, m[r])) % p
        r += 1
    return r


class _ModFilter:
    """Incremental mod-p row reduction; acceptance certifies independence."""

    def __init__(self, ncols, prime):
        self.p = prime
        self.ncols = ncols
        self.rows = []                  # list of (pivot_col, residue row)

    def accepts(self, vec_ints):
        p = self.p
        r = np.array([int(x) % p for x in vec_ints], dtype=np.int64)
        for pc, row in self.rows:
            if r[pc]:
                r = (r - r[pc] * row) % p
        nz = np.flatnonzero(r)
        if nz.size == 0:
            return False
        pc = int(nz[0])
        r = (r * pow(int(r[pc]), p - 2, p)) % p
        self.rows.append((pc, r))
        return True


def _span_from(module, w_int):
    """Breadth-first spanning transport of the extremal under degree 0.

    Returns ``(tree, columns)`` where ``columns[i]`` is an integer vector
    and ``tree[i] = (parent, generator, alpha)`` records that column i is
    ``alpha`` times the generator image of column ``parent`` (alpha a
    positive rational bookkeeping factor from clearing denominators).
    Acceptance goes through a mod-p filter (acceptance is a proof of
    independence); a stalled filter first widens exactly before concluding
    that the extremal generates a proper invariant subspace.
    """
    dim = module.dim
    g0dim = module.alg.dim_g0
    rho = [module.action(p) for p in range(g0dim)]
    columns = [list(w_int)]
    tree = [(-1, -1, mpq(1))]
    prime_iter = iter(MODULAR_PRIMES)
    filt = _seed_filter(dim, prime_iter, columns)
    frontier = [0]
    while len(columns) < dim:
        new_idx = []
        for p in range(g0dim):
            num, den = rho[p].num, rho[p].den
            for parent in frontier:
                v = columns[parent]
                img = [sum(num[i][j] * v[j] for j in range(dim) if v[j])
                       for i in range(dim)]
                g = 0
                for x in img:
                    g = gcd(g, x)
                    if g == 1:
                        break
                if g == 0:
                    continue
                child = [x // g for x in img]
                if filt.accepts(child):
                    columns.append(child)
                    tree.append((parent, p, mpq(den, g)))
                    new_idx.append(len(columns) - 1)
                    if len(columns) == dim:
                        return tree, columns
        if new_idx:
            frontier = new_idx
            continue
        # Stall: re-check exactly from every known column, reseed filter.
        grew = _exact_widen(module, rho, columns, tree)
        if not grew:
            raise CertificateError(
                "extremal generates a proper invariant subspace of "
                "dimension %d < %d" % (len(columns), dim))
        filt = _seed_filter(dim, prime_iter, columns)
        frontier = list(range(len(columns)))
    return tree, columns


def _seed_filter(dim, prime_iter, columns):
    """A mod-p filter whose rows certify all known columns; retries primes."""
    while True:
        try:
            cand = _ModFilter(dim, next(prime_iter))
        except StopIteration:
            raise CertificateError("modular filter primes exhausted")
        if all(cand.accepts(col) for col in columns):
            return cand


def _exact_widen(module, rho, columns, tree):
    """One exact expansion pass; appends any independent images found."""
    dim = module.dim
    known = [list(map(mpq, c)) for c in columns]
    grew = False
    for p in range(len(rho)):
        num, den = rho[p].num, rho[p].den
        for parent in range(len(columns)):
            v = columns[parent]
            img = [sum(num[i][j] * v[j] for j in range(dim) if v[j])
                   for i in range(dim)]
            g = 0
            for x in img:
                g = gcd(g, x)
                if g == 1:
                    break
            if g == 0:
                continue
            child = [x // g for x in img]
            stacked = row_space(known + [list(map(mpq, child))])[0]
            if len(stacked) > len(known):
                columns.append(child)
                tree.append((parent, p, mpq(den, g)))
                known.append(list(map(mpq, child)))
                grew = True
                if len(columns) == dim:
                    return True
    return grew


def _replay(summand, tree, y):
    """Mirror the spanning transport on the cohomology side, exactly."""
    dim = summand.dim
    cols = [list(y)]
    for parent, p, alpha in tree[1:]:
        mat = summand.rho[p]
        num, den = mat.num, mat.den
        src = cols[parent]
        scale = alpha / den
        cols.append([scale * sum(num[i][j] * src[j]
                                 for j in range(dim) if src[j])
                     for i in range(dim)])
    return cols


def _matmul_mpq(a, b):
    n = len(a)
    k = len(b)
    m = len(b[0])
    out = [[mpq(0)] * m for _ in range(n)]
    for i in range(n):
        arow = a[i]
        orow = out[i]
        for t in range(k):
            x = arow[t]
            if x:
                brow = b[t]
                for j in range(m):
                    if brow[j]:
                        orow[j] += x * brow[j]
    return out


def _primitive_ints(vec):
    ints = clear_row_denominators(list(vec))
    g = 0
    for x in ints:
        g = gcd(g, int(x))
        if g == 1:
            break
    if g == 0:
        raise CertificateError("zero vector cannot seed the transport")
    return [int(x) // g for x in ints]
