"""The graded Lie algebra sl(n+1, H) and its distinguished subalgebras.

Elements are quaternionic (n+1) x (n+1) matrices with vanishing real
trace, realized exactly over Q via ``quaternions.qmat`` dicts.  The
basis is ordered by the block grading

    g = g(-1) + g(0) + g(+1)

where, splitting a matrix into blocks [[a, p], [v, A]] with a scalar,
p a row over H^n, v a column over H^n and A an n x n block:

    g(-1) = {v}                          (dim 4n)
    g(0)  = {(a, A) : Re a + Re tr A = 0}  (dim 4n^2 + 3)
    g(+1) = {p}                          (dim 4n)

g(0) further splits as  sp(1) + R Z + sl(n, H)  with sp(1) the imaginary
scalars in the a-slot and Z the grading element.  The right-multiplication
convention matters everywhere downstream: the bracket action of the
sp(1)-part on a column v in g(-1) is  v -> -(v a), while sl(n, H) acts by
v -> A v.

``build_graded`` returns a ``GradedSLH`` bundling the exact structure
constants, the grading bookkeeping, the g(0)-action matrices on g(-1),
and the Killing identification of g(-1)* with g(+1) used by the harmonic
complement in the cohomology module.
"""

from gmpy2 import mpq

from .errors import ConfigError, NotClosed
from .liealg import LieAlgebra, SpanSolver
from .linalg import inverse, mat_vec, right_kernel, row_space, transpose
from .quaternions import UNITS, qmat_add, qmat_commutator, qmat_scale, unit

__all__ = ["GradedSLH", "build_graded", "build_parabolic"]


class GradedSLH:
    """sl(n+1, H) with grading data and precomputed module actions."""

    def __init__(self, n):
        if n < 2:
            raise ConfigError("the construction needs n >= 2")
        self.n = n
        self.dim = 4 * (n + 1) ** 2 - 1
        self.dim_gm1 = 4 * n
        self.dim_g0 = 4 * n * n + 3
        self.dim_g1 = 4 * n
        self._build_basis()
        self._build_algebra()
        self._action_gm1 = None
        self._action_g1 = None
        self._killing_dual = None

    # -- basis ---------------------------------------------------------------

    def _build_basis(self):
        n = self.n
        basis = []
        labels = []
        degrees = []
        # g(-1): columns v, entries (r, 0), r = 1..n, all four units
        for r in range(1, n + 1):
            for u in range(4):
                basis.append({(r, 0): unit(u)})
                labels.append("v%d.%s" % (r, UNITS[u]))
                degrees.append(-1)
        # g(0): sp(1) scalars
        for u in range(1, 4):
            basis.append({(0, 0): unit(u)})
            labels.append("sp1.%s" % UNITS[u])
            degrees.append(0)
        # g(0): grading element Z = diag(n/(n+1), -1/(n+1), ...)
        z = {(0, 0): [mpq(n, n + 1), mpq(0), mpq(0), mpq(0)]}
        for r in range(1, n + 1):
            z[(r, r)] = [mpq(-1, n + 1), mpq(0), mpq(0), mpq(0)]
        basis.append(z)
        labels.append("Z")
        degrees.append(0)
        # g(0): sl(n, H) block (indices 1..n)
        #   imaginary diagonals
        for r in range(1, n + 1):
            for u in range(1, 4):
                basis.append({(r, r): unit(u)})
                labels.append("a%d%d.%s" % (r, r, UNITS[u]))
                degrees.append(0)
        #   off-diagonals, all four units
        for r in range(1, n + 1):
            for c in range(1, n + 1):
                if r == c:
                    continue
                for u in range(4):
                    basis.append({(r, c): unit(u)})
                    labels.append("a%d%d.%s" % (r, c, UNITS[u]))
                    degrees.append(0)
        #   real diagonal differences E_rr - E_nn
        for r in range(1, n):
            basis.append({(r, r): unit(0), (n, n): [mpq(-1), mpq(0), mpq(0), mpq(0)]})
            labels.append("d%d" % r)
            degrees.append(0)
        # g(+1): rows p, entries (0, c)
        for c in range(1, n + 1):
            for u in range(4):
                basis.append({(0, c): unit(u)})
                labels.append("p%d.%s" % (c, UNITS[u]))
                degrees.append(1)
        assert len(basis) == self.dim
        self.basis = basis
        self.labels = labels
        self.degrees = degrees
        self.z_index = 4 * n + 3
        # index helpers
        self.gm1_slice = slice(0, 4 * n)
        self.g0_slice = slice(4 * n, 4 * n + self.dim_g0)
        self.g1_slice = slice(4 * n + self.dim_g0, self.dim)
        self._imdiag_base = 4 * n + 4
        self._offdiag_base = self._imdiag_base + 3 * n
        self._realdiag_base = self._offdiag_base + 4 * n * (n - 1)

    def coords(self, q):
        """Exact coordinates of a real-traceless quaternionic matrix."""
        n = self.n
        out = [mpq(0)] * self.dim
        a = q.get((0, 0), [mpq(0)] * 4)
        # grading element carries the real scalar part
        zc = a[0] * mpq(n + 1, n)
        if zc:
            out[self.z_index] = zc
        for u in range(1, 4):
            if a[u]:
                out[4 * n + u - 1] = a[u]
        shift = zc * mpq(-1, n + 1)
        realdiag = [mpq(0)] * (n + 1)
        for (r, c), val in q.items():
            if r == 0 and c == 0:
                continue
            if r >= 1 and c == 0:
                for u in range(4):
                    if val[u]:
                        out[4 * (r - 1) + u] = val[u]
            elif r == 0 and c >= 1:
                base = 4 * n + self.dim_g0 + 4 * (c - 1)
                for u in range(4):
                    if val[u]:
                        out[base + u] = val[u]
            elif r == c:
                realdiag[r] = val[0] - shift
                for u in range(1, 4):
                    if val[u]:
                        out[self._imdiag_base + 3 * (r - 1) + u - 1] = val[u]
            else:
                pos = (r - 1) * (n - 1) + (c - 1 if c < r else c - 2)
                base = self._offdiag_base + 4 * pos
                for u in range(4):
                    if val[u]:
                        out[base + u] = val[u]
        if shift:
            for r in range(1, n + 1):
                if (r, r) not in q:
                    realdiag[r] = -shift
        if sum(realdiag[1:], start=mpq(0)):
            raise NotClosed("matrix has nonzero real trace")
        for r in range(1, n):
            if realdiag[r]:
                out[self._realdiag_base + r - 1] = realdiag[r]
        return out

    def qmat(self, vec):
        """Quaternionic matrix of a coordinate vector."""
        out = {}
        for i, c in enumerate(vec):
            if c:
                out = qmat_add(out, qmat_scale(self.basis[i], c))
        return out

    # -- structure constants ---------------------------------------------------

    def _build_algebra(self):
        table = {}
        for i in range(self.dim):
            for j in range(i + 1, self.dim):
                w = qmat_commutator(self.basis[i], self.basis[j])
                if not w:
                    continue
                coords = self.coords(w)
                entry = {k: c for k, c in enumerate(coords) if c}
                if entry:
                    table[(i, j)] = entry
        self.algebra = LieAlgebra(self.dim, table, self.labels)

    # -- grading ---------------------------------------------------------------

    def grading_respected(self):
        """Check [g_a, g_b] lands in g_{a+b} (exact, all basis pairs)."""
        for (i, j), terms in self.algebra.table.items():
            target = self.degrees[i] + self.degrees[j]
            for k, c in terms.items():
                if c and self.degrees[k] != target:
                    return False
        return True

    def grading_element_eigenvalues(self):
        """Check ad(Z) is diagonal on the basis with the right degrees."""
        z = [mpq(0)] * self.dim
        z[self.z_index] = mpq(1)
        ad = self.algebra.adjoint(z)
        for i in range(self.dim):
            for k in range(self.dim):
                want = mpq(self.degrees[i]) if k == i else mpq(0)
                if ad[k][i] != want:
                    return False
        return True

    # -- g(0) bookkeeping --------------------------------------------------------

    def g0_basis_indices(self):
        return list(range(4 * self.n, 4 * self.n + self.dim_g0))

    def g0_vector(self, coeffs):
        """Embed a g(0)-coordinate vector into full coordinates."""
        out = [mpq(0)] * self.dim
        for i, c in enumerate(coeffs):
            if c:
                out[4 * self.n + i] = c
        return out

    def g0_part(self, vec):
        return list(vec[self.g0_slice])

    def action_on_gm1(self):
        """Action matrices of the g(0) basis on g(-1) coordinates."""
        if self._action_gm1 is not None:
            return self._action_gm1
        mats = []
        for i in self.g0_basis_indices():
            m = [[mpq(0)] * self.dim_gm1 for _ in range(self.dim_gm1)]
            for j in range(self.dim_gm1):
                for k, c in self.algebra.bracket_basis(i, j).items():
                    m[k][j] = c
            mats.append(m)
        self._action_gm1 = mats
        return mats

    def action_on_g1(self):
        """Action matrices of the g(0) basis on g(+1) coordinates."""
        if self._action_g1 is not None:
            return self._action_g1
        base = 4 * self.n + self.dim_g0
        mats = []
        for i in self.g0_basis_indices():
            m = [[mpq(0)] * self.dim_g1 for _ in range(self.dim_g1)]
            for j in range(self.dim_g1):
                for k, c in self.algebra.bracket_basis(i, base + j).items():
                    m[k - base][j] = c
            mats.append(m)
        self._action_g1 = mats
        return mats

    # -- Killing identification of g(-1)* with g(+1) ----------------------------

    def killing_dual(self):
        """Matrix D with column s = the g(+1) vector dual to v_s* under
        the Killing pairing:  kappa(D e_s, v_t) = delta_st."""
        if self._killing_dual is not None:
            return self._killing_dual
        kappa = self.algebra.killing_matrix()
        base1 = 4 * self.n + self.dim_g0
        pairing = [[kappa[base1 + p][s] for p in range(self.dim_g1)]
                   for s in range(self.dim_gm1)]
        inv = inverse(pairing)
        if inv is None:
            raise NotClosed("Killing pairing of g(+1) with g(-1) degenerate")
        self._killing_dual = inv
        return inv


def build_graded(n):
    """Construct sl(n+1, H) with its grading (main entry point)."""
    return GradedSLH(n)


# ---------------------------------------------------------------------------
# The hook parabolic inside the sl(n, H) block
# ---------------------------------------------------------------------------

def build_parabolic(alg):
    """Distinguished subalgebras of g(0) used by the structural matching.

    All vectors are in g(0)-coordinates (length 4n^2 + 3).  Returns a dict
    with keys:

    ``sp1``        the scalar sp(1) summand of g(0)
    ``z``          the grading element Z
    ``sp1_left``   imaginary units at the (1,1) block entry
    ``sp1_right``  imaginary units at the (n,n) block entry
    ``gl_mid``     the middle gl(n-2, H), real diagonals trace-compensated
    ``zprime``     diag(1, 0, ..., 0, -1)/(2 if n == 2 else 1) in the block
    ``h_plus``     first row + last column of the block (nilradical)
    ``h_minus``    the transposed hook (opposite nilradical)
    ``h2``         the (1, n) block entry (center of h_plus for n >= 3)
    """
    n = alg.n
    d0 = alg.dim_g0

    def embed(qm):
        full = alg.coords(qm)
        if any(full[alg.gm1_slice]) or any(full[alg.g1_slice]):
            raise NotClosed("parabolic element escapes g(0)")
        return alg.g0_part(full)

    out = {}
    out["sp1"] = [embed({(0, 0): unit(u)}) for u in range(1, 4)]
    zq = {(0, 0): [mpq(alg.n, alg.n + 1), mpq(0), mpq(0), mpq(0)]}
    for r in range(1, n + 1):
        zq[(r, r)] = [mpq(-1, n + 1), mpq(0), mpq(0), mpq(0)]
    out["z"] = embed(zq)
    out["sp1_left"] = [embed({(1, 1): unit(u)}) for u in range(1, 4)]
    out["sp1_right"] = [embed({(n, n): unit(u)}) for u in range(1, 4)]
    gl_mid = []
    for r in range(2, n):
        for c in range(2, n):
            for u in range(4):
                if r == c and u == 0:
                    gl_mid.append(embed({
                        (r, r): unit(0),
                        (1, 1): [mpq(-1, 2), mpq(0), mpq(0), mpq(0)],
                        (n, n): [mpq(-1, 2), mpq(0), mpq(0), mpq(0)],
                    }))
                else:
                    gl_mid.append(embed({(r, c): unit(u)}))
    out["gl_mid"] = gl_mid
    half = mpq(1, 2) if n == 2 else mpq(1)
    out["zprime"] = embed({(1, 1): [half, mpq(0), mpq(0), mpq(0)],
                           (n, n): [-half, mpq(0), mpq(0), mpq(0)]})
    h_plus = []
    for c in range(2, n + 1):
        for u in range(4):
            h_plus.append(embed({(1, c): unit(u)}))
    for r in range(2, n):
        for u in range(4):
            h_plus.append(embed({(r, n): unit(u)}))
    out["h_plus"] = h_plus
    h_minus = []
    for r in range(2, n + 1):
        for u in range(4):
            h_minus.append(embed({(r, 1): unit(u)}))
    for c in range(2, n):
        for u in range(4):
            h_minus.append(embed({(n, c): unit(u)}))
    out["h_minus"] = h_minus
    out["h2"] = [embed({(1, n): unit(u)}) for u in range(4)]
    return out


def first_prolongation(alg, a0_g0_coords):
    """Basis of {X in g(+1) : [X, g(-1)] inside span(a0)} (may be empty).

    ``a0_g0_coords``: list of g(0)-coordinate vectors spanning a
    subalgebra a0 of g(0).  Exact: returns kernel vectors in g(+1)
    coordinates.
    """
    d0 = alg.dim_g0
    # functionals vanishing exactly on span(a0)
    functionals = right_kernel([list(v) for v in a0_g0_coords], ncols=d0)
    base1 = 4 * alg.n + d0
    rows = []
    for s in range(alg.dim_gm1):
        # column c of M_s: g(0)-part of [P_c, V_s]
        cols = []
        for c in range(alg.dim_g1):
            w = alg.algebra.bracket_basis(base1 + c, s)
            vec = [mpq(0)] * d0
            for k, coeff in w.items():
                vec[k - 4 * alg.n] = coeff
            cols.append(vec)
        for nu in functionals:
            rows.append([sum((nu[t] * col[t] for t in range(d0)
                              if nu[t] and col[t]), start=mpq(0))
                         for col in cols])
    return right_kernel(rows, ncols=alg.dim_g1)
