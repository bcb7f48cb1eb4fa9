"""Second cohomology of the abelian negative part with values in the
full graded algebra, split by homogeneity, with exact g(0)-actions.

Cochains ``C^k = Lambda^k g(-1)* (x) g`` carry the homogeneity grading
``k + deg(value)``.  Because g(-1) is abelian the differential is

    d(xi_S (x) u) = sum_t  xi_t ^ xi_S (x) [v_t, u],

and the harmonic complement is cut out by the codifferential

    d*(xi_a ^ xi_b (x) u) = xi_a (x) [Z(xi_b), u] - xi_b (x) [Z(xi_a), u],

where ``Z(xi)`` is the element of g(+1) Killing-dual to the functional
``xi`` on g(-1).  The homogeneity-h harmonic space is

    H2_h = ker d2_h  intersect  ker d*_h,

computed as one certified sparse kernel.  The construction certifies the
Hodge-style splitting  ker d2 = im d1 (+) H2  exactly (rank bookkeeping
plus an independence check), and the g(0)-action matrices on H2 are
verified exactly during extraction, which in particular proves H2 is an
invariant subspace.
"""

from gmpy2 import mpq

from .errors import CertificateError
from .intmat import IntMat, SparseIntRows
from .linalg import clear_row_denominators
from .modular import certified_kernel, exact_int_matmul, residue_matrix, rref_mod
from .rationals import MODULAR_PRIMES, lcm_denominators

__all__ = ["H2Summand", "h2_summands", "wedge_pairs"]


def wedge_pairs(m):
    return [(a, b) for a in range(m) for b in range(a + 1, m)]


def wedge_triples(m):
    return [(a, b, c) for a in range(m) for b in range(a + 1, m)
            for c in range(b + 1, m)]


def _block_indices(alg, deg):
    """Global basis index range of the degree-`deg` part of the algebra."""
    if deg == -1:
        return list(range(0, 4 * alg.n))
    if deg == 0:
        return list(range(4 * alg.n, 4 * alg.n + alg.dim_g0))
    if deg == 1:
        return list(range(4 * alg.n + alg.dim_g0, alg.dim))
    return []


def _clear_sparse_rows(rows_mpq):
    """Scale each sparse mpq row to coprime integers (kernel unchanged)."""
    out = []
    for row in rows_mpq:
        if not row:
            continue
        cols = sorted(row)
        vals = [row[c] for c in cols]
        ints = clear_row_denominators(vals)
        out.append({c: int(v) for c, v in zip(cols, ints) if v})
    return out


def _wedge_sign_insert(t, a, b):
    """xi_t ^ xi_a ^ xi_b as (sign, sorted triple); None if degenerate."""
    if t == a or t == b:
        return None
    if t < a:
        return 1, (t, a, b)
    if t < b:
        return -1, (a, t, b)
    return 1, (a, b, t)


def _wedge_sign_pair(t, s):
    """xi_t ^ xi_s as (sign, sorted pair); None if degenerate."""
    if t == s:
        return None
    if t < s:
        return 1, (t, s)
    return -1, (s, t)


class H2Summand:
    """One homogeneous summand of the harmonic second cohomology."""

    def __init__(self, hom, nargs, pairs, value_indices, basis, free_cols,
                 rho, certificates):
        self.hom = hom
        self.nargs = nargs
        self.pairs = pairs
        self.value_indices = value_indices
        self.basis = basis                  # list of integer mpq vectors
        self.free_cols = free_cols
        self.scales = [basis[j][free_cols[j]] for j in range(len(basis))]
        self.rho = rho                      # list of IntMat per g(0) index
        self.certificates = certificates
        self.dim = len(basis)
        self.ncols = len(pairs) * len(value_indices)

    def column(self, a, b, value_global):
        """Flat C^2 column index of (xi_a ^ xi_b) (x) basis[value_global]."""
        vpos = self.value_indices.index(value_global)
        ppos = self.pairs.index((a, b))
        return ppos * len(self.value_indices) + vpos

    def cochain_of(self, coeffs):
        """Dense C^2 coordinate vector of a combination of basis vectors."""
        out = [mpq(0)] * self.ncols
        for c, vec in zip(coeffs, self.basis):
            if c:
                for i, x in enumerate(vec):
                    if x:
                        out[i] += c * x
        return out

    def coords_of(self, vec):
        """Coordinates in the harmonic basis, or None (exact, verified)."""
        coords = [vec[self.free_cols[j]] / self.scales[j]
                  for j in range(self.dim)]
        check = self.cochain_of(coords)
        if any(a != b for a, b in zip(check, vec)):
            return None
        return coords


def _assemble_d2_rows(alg, pairs, triples, vals2, vals3, rows, row_offset):
    """Rows of d: C^2_h -> C^3_h appended into *rows* (dict-of-dict mpq)."""
    if not vals3 or not triples:
        return
    tri_pos = {t: i for i, t in enumerate(triples)}
    v3_pos = {g: i for i, g in enumerate(vals3)}
    nv2, nv3 = len(vals2), len(vals3)
    for ppos, (a, b) in enumerate(pairs):
        for vpos, u in enumerate(vals2):
            col = ppos * nv2 + vpos
            for t in range(alg.dim_gm1):
                ins = _wedge_sign_insert(t, a, b)
                if ins is None:
                    continue
                sign, tri = ins
                tbase = tri_pos[tri] * nv3
                for k, c in alg.algebra.bracket_basis(t, u).items():
                    row = rows.setdefault(row_offset + tbase + v3_pos[k], {})
                    row[col] = row.get(col, mpq(0)) + sign * c


def _assemble_dstar_rows(alg, pairs, vals2, vals1, rows, row_offset):
    """Rows of d*: C^2_h -> C^1_h appended into *rows*."""
    if not vals1:
        return
    v1_pos = {g: i for i, g in enumerate(vals1)}
    nv2, nv1 = len(vals2), len(vals1)
    dual = alg.killing_dual()
    base1 = 4 * alg.n + alg.dim_g0
    nv = alg.dim_gm1
    # bracket of the dual of xi_s with value u, cached per (s, u)
    def z_bracket(s, u):
        acc = {}
        for p in range(alg.dim_g1):
            c = dual[p][s]
            if c:
                for k, c2 in alg.algebra.bracket_basis(base1 + p, u).items():
                    acc[k] = acc.get(k, mpq(0)) + c * c2
        return acc
    cache = {}
    for ppos, (a, b) in enumerate(pairs):
        for vpos, u in enumerate(vals2):
            col = ppos * nv2 + vpos
            for s, arg, sgn in ((a, b, 1), (b, a, -1)):
                key = (arg, u)
                if key not in cache:
                    cache[key] = z_bracket(arg, u)
                for k, c in cache[key].items():
                    row = rows.setdefault(
                        row_offset + s * nv1 + v1_pos[k], {})
                    row[col] = row.get(col, mpq(0)) + sgn * c


def _assemble_d1_rows(alg, pairs, vals1, vals2):
    """Rows of d: C^1_h -> C^2_h (columns over C^1_h)."""
    rows = {}
    if not vals1:
        return rows, 0
    pair_pos = {t: i for i, t in enumerate(pairs)}
    v2_pos = {g: i for i, g in enumerate(vals2)}
    nv1, nv2 = len(vals1), len(vals2)
    for s in range(alg.dim_gm1):
        for vpos, m in enumerate(vals1):
            col = s * nv1 + vpos
            for t in range(alg.dim_gm1):
                ws = _wedge_sign_pair(t, s)
                if ws is None:
                    continue
                sign, pair = ws
                pbase = pair_pos[pair] * nv2
                for k, c in alg.algebra.bracket_basis(t, m).items():
                    row = rows.setdefault(pbase + v2_pos[k], {})
                    row[col] = row.get(col, mpq(0)) + sign * c
    return rows, alg.dim_gm1 * nv1


def _action_rows_c2(alg, phi_local, pairs, vals2):
    """Sparse action of the g(0) basis element on C^2_h (dict rows, mpq)."""
    rows = {}
    nv2 = len(vals2)
    v2_pos = {g: i for i, g in enumerate(vals2)}
    pair_pos = {t: i for i, t in enumerate(pairs)}
    phi_global = 4 * alg.n + phi_local
    amat = alg.action_on_gm1()[phi_local]
    acols = {}
    for a in range(alg.dim_gm1):
        acols[a] = [(t, amat[a][t]) for t in range(alg.dim_gm1) if amat[a][t]]
    for ppos, (a, b) in enumerate(pairs):
        for vpos, u in enumerate(vals2):
            col = ppos * nv2 + vpos
            # value part: same wedge, bracket the value
            for k, c in alg.algebra.bracket_basis(phi_global, u).items():
                row = rows.setdefault(ppos * nv2 + v2_pos[k], {})
                row[col] = row.get(col, mpq(0)) + c
            # argument parts: phi . xi_a = -sum_t A[a][t] xi_t
            for arg, other, first in ((a, b, True), (b, a, False)):
                for t, coeff in acols[arg]:
                    ws = _wedge_sign_pair(t, other) if first else \
                        _wedge_sign_pair(other, t)
                    if ws is None:
                        continue
                    sign, pair = ws
                    row = rows.setdefault(pair_pos[pair] * nv2 + vpos, {})
                    row[col] = row.get(col, mpq(0)) - sign * coeff
    return rows


def _sparse_int_from_dict_rows(rows, nrows, ncols):
    """Uniformly scale dict-of-dict mpq rows to one integer sparse matrix.

    Returns (SparseIntRows, scale) with int_matrix == scale * exact_matrix.
    """
    denoms = []
    for row in rows.values():
        denoms.extend(row.values())
    scale = int(lcm_denominators(denoms)) if denoms else 1
    int_rows = []
    for i in range(nrows):
        row = rows.get(i, {})
        int_rows.append({c: int(v * scale) for c, v in row.items() if v})
    return SparseIntRows(int_rows, ncols), scale


def _rank_mod(columns_int, p=MODULAR_PRIMES[0]):
    """Rank mod p of a matrix given by integer columns (lower bound)."""
    rows = []
    ncols = len(columns_int)
    nrows = len(columns_int[0]) if columns_int else 0
    dicts = []
    for i in range(nrows):
        d = {}
        for j in range(ncols):
            v = columns_int[j][i]
            if v:
                d[j] = int(v)
        dicts.append(d)
    mat = residue_matrix(dicts, ncols, p)
    _, pivots = rref_mod(mat, p)
    return len(pivots)


def h2_summands(alg, homs=(1, 2, 3), with_action=True):
    """Harmonic H^2 summands by homogeneity, with exact certificates.

    Returns {hom: H2Summand}.  Certificates stored on each summand:

    ``dim_ker_d2``   exact kernel dimension of d on C^2_h
    ``rank_d1``      exact rank of d: C^1_h -> C^2_h
    ``split``        True iff dim_ker_d2 == dim H + rank_d1 and the
                     combined family is independent (Hodge splitting)
    ``dd_zero``      d(d(C^1_h)) == 0 exactly
    """
    n = alg.n
    m = alg.dim_gm1
    pairs = wedge_pairs(m)
    triples = wedge_triples(m)
    out = {}
    for hom in homs:
        vals2 = _block_indices(alg, hom - 2)
        vals1 = _block_indices(alg, hom - 1)
        vals3 = _block_indices(alg, hom - 3)
        ncols = len(pairs) * len(vals2)
        nv3rows = len(triples) * len(vals3)
        nv1rows = m * len(vals1)
        d2_rows = {}
        _assemble_d2_rows(alg, pairs, triples, vals2, vals3, d2_rows, 0)
        rows = {i: dict(r) for i, r in d2_rows.items()}
        _assemble_dstar_rows(alg, pairs, vals2, vals1, rows, nv3rows)
        stacked = _clear_sparse_rows(
            [rows.get(i, {}) for i in range(nv3rows + nv1rows)])
        kres = certified_kernel(stacked, ncols)

        # --- Hodge splitting certificate -------------------------------
        d2_only = _clear_sparse_rows(
            [d2_rows.get(i, {}) for i in range(nv3rows)])
        k2 = certified_kernel(d2_only, ncols)
        dim_ker_d2 = len(k2.basis)
        d1_rows, nc1 = _assemble_d1_rows(alg, pairs, vals1, vals2)
        d1_sparse = _clear_sparse_rows(
            [d1_rows.get(i, {}) for i in range(ncols)]) if nc1 else []
        if nc1:
            k1 = certified_kernel(d1_sparse, nc1)
            rank_d1 = k1.rank
        else:
            rank_d1 = 0
        split = (dim_ker_d2 == len(kres.basis) + rank_d1)
        # independence of im(d1) with H: columns = d1 images + H basis
        if split and rank_d1:
            img_cols = []
            for s_col in range(nc1):
                colvec = [0] * ncols
                nonzero = False
                for i in range(ncols):
                    v = d1_rows.get(i, {}).get(s_col)
                    if v:
                        colvec[i] = v
                        nonzero = True
                if nonzero:
                    img_cols.append(colvec)
            h_cols = [[int(x) for x in vec] for vec in kres.basis]
            img_int = []
            for col in img_cols:
                ints = clear_row_denominators(col)
                img_int.append([int(x) for x in ints])
            got = _rank_mod(img_int + h_cols)
            split = (got == rank_d1 + len(kres.basis))

        # --- d о d == 0 exactly ----------------------------------------
        dd_zero = True
        if nc1 and nv3rows:
            # compose sparse maps: columns of d1 pushed through d2
            d2_sparse_rows = [d2_rows.get(i, {}) for i in range(nv3rows)]
            for s_col in range(nc1):
                image = {i: d1_rows[i][s_col]
                         for i in d1_rows if s_col in d1_rows[i]}
                if not image:
                    continue
                for i, row in enumerate(d2_sparse_rows):
                    acc = mpq(0)
                    for c, v in image.items():
                        rv = row.get(c)
                        if rv:
                            acc += rv * v
                    if acc:
                        dd_zero = False
                        break
                if not dd_zero:
                    break

        certificates = {
            "dim_ker_d2": dim_ker_d2,
            "rank_d1": rank_d1,
            "split": split,
            "dd_zero": dd_zero,
        }
        if not split or not dd_zero:
            raise CertificateError(
                "harmonic splitting failed at homogeneity %d" % hom)

        # --- exact g(0)-action on the harmonic basis --------------------
        rho = None
        if with_action and kres.basis:
            rho = []
            b_rows = [[int(vec[i]) for vec in kres.basis]
                      for i in range(ncols)]
            scales = [int(vec[f]) for vec, f in
                      zip(kres.basis, kres.free_cols)]
            lcm_s = 1
            for s in scales:
                g = _gcd(lcm_s, s)
                lcm_s = lcm_s // g * s
            for phi_local in range(alg.dim_g0):
                act_rows = _action_rows_c2(alg, phi_local, pairs, vals2)
                sp, c_phi = _sparse_int_from_dict_rows(act_rows, ncols, ncols)
                x = sp.apply_dense(b_rows)          # c_phi * (phi . B)
                y_scaled = [[x[f][l] * (lcm_s // s)
                             for l in range(len(kres.basis))]
                            for f, s in zip(kres.free_cols, scales)]
                lhs = exact_int_matmul(b_rows, y_scaled)
                ok = all(lhs[i][l] == lcm_s * x[i][l]
                         for i in range(ncols)
                         for l in range(len(kres.basis)))
                if not ok:
                    raise CertificateError(
                        "harmonic space is not g(0)-invariant "
                        "(hom %d, phi %d)" % (hom, phi_local))
                rho.append(IntMat(y_scaled, c_phi * lcm_s).normalize())
        elif with_action:
            rho = []

        out[hom] = H2Summand(hom, m, pairs, vals2, kres.basis,
                             kres.free_cols, rho, certificates)
    return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a
