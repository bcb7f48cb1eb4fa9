"""Coordinate models of the two extremal almost-quaternionic structures.

This module realizes the two deformed algebras geometrically: explicit
triples (I, J, K) of anticommuting almost-complex structures on a
rational chart, spanning a quaternionic subbundle of endomorphisms.
Everything is exact: matrix entries are rational functions of the chart
coordinates, symmetry vector fields are found by sampling exact linear
systems and then verified symbolically, and all tensor identities
(integrability defects, torsion, curvature, invariance) are checked as
identities of rational functions.

The curvature-type model carries rational entries with denominator
``alpha^2 = h2^2 + h3^2 + h4^2`` and is torsion-free; the torsion-type
model is polynomial and has nonvanishing structure torsion.  Both have
symmetry algebras of the submaximal dimension, matching the deformed
filtered algebras constructed in :mod:`aqsym.deform`.
"""

from gmpy2 import mpq

from .errors import AnsatzInsufficient, CertificateError, MatchFailure
from .liealg import LieAlgebra
from .linalg import right_kernel, row_space, solve
from .modular import certified_kernel
from .polynomial import Poly, RatFunc

__all__ = [
    "AQStructure",
    "Connection",
    "SymmetryFamily",
    "build_QI",
    "build_QII",
    "bracket_close",
    "cov_deriv_curvature",
    "curvature",
    "gauge_change",
    "hypercomplex_symmetry_solve",
    "invariant_connections",
    "invariant_metric_check",
    "lie_bracket",
    "lie_derivative_endo",
    "nijenhuis",
    "quaternionic_average",
    "ricci",
    "structure_tensor",
    "symmetry_solve",
    "torsion",
]


# ---------------------------------------------------------------------------
# small exact matrix/vector helpers over RatFunc
# ---------------------------------------------------------------------------

def _rf(c, nvars):
    return RatFunc(Poly.const(mpq(c), nvars))


def _zero_mat(m, nvars):
    z = _rf(0, nvars)
    return [[z for _ in range(m)] for _ in range(m)]


def _identity_mat(m, nvars):
    out = _zero_mat(m, nvars)
    one = _rf(1, nvars)
    for i in range(m):
        out[i][i] = one
    return out


def _mat_mul(a, b):
    m = len(a)
    out = []
    for i in range(m):
        row = []
        arow = a[i]
        for j in range(m):
            acc = None
            for k in range(m):
                if arow[k].is_zero() or b[k][j].is_zero():
                    continue
                term = arow[k] * b[k][j]
                acc = term if acc is None else acc + term
            row.append(acc if acc is not None
                       else _rf(0, arow[0].num.nvars))
        out.append(row)
    return out


def _mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _mat_scale(c, a):
    return [[c * x for x in row] for row in a]


def _mat_eq(a, b):
    return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))


def _mat_is_zero(a):
    return all(x.is_zero() for row in a for x in row)


def _mat_vec(a, v):
    out = []
    for row in a:
        acc = None
        for x, y in zip(row, v):
            if x.is_zero() or y.is_zero():
                continue
            term = x * y
            acc = term if acc is None else acc + term
        out.append(acc if acc is not None else _rf(0, v[0].num.nvars))
    return out


def _mat_trace(a):
    acc = a[0][0]
    for i in range(1, len(a)):
        acc = acc + a[i][i]
    return acc


def _mat_eval(a, point):
    return [[x.eval(point) for x in row] for row in a]


# ---------------------------------------------------------------------------
# the two explicit structures
# ---------------------------------------------------------------------------

class AQStructure:
    """An exact almost-quaternionic triple on a rational chart.

    ``I, J, K`` are ``4n x 4n`` matrices of rational functions in the
    chart coordinates ``h1..h(4n)``; ``guards`` lists polynomials that
    must stay nonzero on the chart (denominators).  ``verify`` checks
    the quaternionic relations as exact rational-function identities.
    """

    def __init__(self, n, I, J, K, guards, name):
        self.n = n
        self.nvars = 4 * n
        self.I = I
        self.J = J
        self.K = K
        self.guards = guards
        self.name = name

    def triple(self):
        return (self.I, self.J, self.K)

    def verify(self):
        """Exact quaternionic relations; raises on any failure."""
        nv = self.nvars
        minus_id = _mat_scale(_rf(-1, nv), _identity_mat(nv, nv))
        for label, a in (("I", self.I), ("J", self.J), ("K", self.K)):
            if not _mat_eq(_mat_mul(a, a), minus_id):
                raise CertificateError(
                    "%s: %s^2 + Id != 0" % (self.name, label))
        if not _mat_eq(_mat_mul(self.I, self.J), self.K):
            raise CertificateError("%s: IJ != K" % self.name)
        anti = _mat_add(_mat_mul(self.I, self.J), _mat_mul(self.J, self.I))
        if not _mat_is_zero(anti):
            raise CertificateError("%s: IJ + JI != 0" % self.name)
        return True

    def guard_ok(self, point):
        return all(g.eval(point) != 0 for g in self.guards)


def _poly_of(expr_terms, nvars):
    """Poly from integer-coefficient term list [(coeff, {var: exp})]."""
    terms = {}
    for coeff, mono in expr_terms:
        exps = [0] * nvars
        for v, e in mono.items():
            exps[v - 1] = e
        terms[tuple(exps)] = terms.get(tuple(exps), mpq(0)) + mpq(coeff)
    return Poly(nvars, terms)


def _lift_blocks(top, block, n):
    """Block-diagonal extension: ``top`` 8x8 in the corner, then copies
    of the constant 4x4 ``block`` down the diagonal."""
    nv = 4 * n
    out = _zero_mat(nv, nv)
    for i in range(8):
        for j in range(8):
            out[i][j] = top[i][j]
    for b in range(2, n):
        for i in range(4):
            for j in range(4):
                out[4 * b + i][4 * b + j] = block[i][j]
    return out


def _constant_mat(entries, nvars):
    return [[_rf(c, nvars) for c in row] for row in entries]


A_BLOCK_I = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]]
A_BLOCK_J = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]


def _qii_top(nvars):
    """The 8x8 corner of the curvature-type model (chart h1..h8)."""
    h = {i: Poly.var(i - 1, nvars) for i in range(1, 9)}
    alpha2 = h[2] * h[2] + h[3] * h[3] + h[4] * h[4]
    beta2 = h[2] * h[2] - h[3] * h[3] - h[4] * h[4]
    two = Poly.const(mpq(2), nvars)
    three = Poly.const(mpq(3), nvars)
    four = Poly.const(mpq(4), nvars)
    five = Poly.const(mpq(5), nvars)
    six = Poly.const(mpq(6), nvars)

    def over(p, den):
        return RatFunc(p, den)

    a_i = _constant_mat(A_BLOCK_I, nvars)
    a_j = _constant_mat(A_BLOCK_J, nvars)

    b_i_num = [
        [Poly.zero(nvars), two * h[2] * h[2] - alpha2,
         -two * h[2] * h[4], two * h[2] * h[3]],
        [alpha2 - two * h[2] * h[2], Poly.zero(nvars),
         two * h[2] * h[3], two * h[2] * h[4]],
        [two * h[2] * h[4], -(two * h[2] * h[3]),
         Poly.zero(nvars), two * h[2] * h[2] - alpha2],
        [-(two * h[2] * h[3]), -(two * h[2] * h[4]),
         alpha2 - two * h[2] * h[2], Poly.zero(nvars)],
    ]
    b_i = [[over(p, alpha2) for p in row] for row in b_i_num]

    b_j_num = [
        [Poly.zero(nvars), -(two * h[2] * h[3]),
         two * h[3] * h[4], alpha2 - two * h[3] * h[3]],
        [two * h[2] * h[3], Poly.zero(nvars),
         alpha2 - two * h[3] * h[3], -(two * h[3] * h[4])],
        [-(two * h[3] * h[4]), two * h[3] * h[3] - alpha2,
         Poly.zero(nvars), -(two * h[2] * h[3])],
        [two * h[3] * h[3] - alpha2, two * h[3] * h[4],
         two * h[2] * h[3], Poly.zero(nvars)],
    ]
    b_j = [[over(p, alpha2) for p in row] for row in b_j_num]

    # transposed in the source layout: rows below are columns of C_I
    c_i_t_main = [
        [Poly.zero(nvars), h[2] * (two * alpha2 - three * h[2] * h[2]),
         h[3] * (alpha2 - three * h[2] * h[2]),
         h[4] * (alpha2 - three * h[2] * h[2])],
        [h[2] * (four * alpha2 - three * h[2] * h[2]), Poly.zero(nvars),
         -(h[4] * (h[2] * h[2] + alpha2)), h[3] * (h[2] * h[2] + alpha2)],
        [h[4] * (three * h[2] * h[2] - alpha2),
         h[3] * (three * h[2] * h[2] + alpha2),
         h[2] * (three * h[3] * h[3] + h[4] * h[4]),
         two * h[2] * h[3] * h[4]],
        [h[3] * (alpha2 - three * h[2] * h[2]),
         h[4] * (three * h[2] * h[2] + alpha2),
         two * h[2] * h[3] * h[4],
         h[2] * (h[3] * h[3] + three * h[4] * h[4])],
    ]
    c_i_t_extra = [
        [h[2] * h[5] + h[3] * h[7] + h[4] * h[8],
         -(h[2] * h[6]) - h[3] * h[8] + h[4] * h[7],
         Poly.zero(nvars), Poly.zero(nvars)],
        [h[2] * h[6] - h[3] * h[8] + h[4] * h[7],
         h[2] * h[5] - h[3] * h[7] - h[4] * h[8],
         Poly.zero(nvars), Poly.zero(nvars)],
        [h[2] * h[7] - h[3] * h[5] - h[4] * h[6],
         -(h[2] * h[8]) + h[3] * h[6] - h[4] * h[5],
         Poly.zero(nvars), Poly.zero(nvars)],
        [h[2] * h[8] + h[3] * h[6] - h[4] * h[5],
         h[2] * h[7] + h[3] * h[5] + h[4] * h[6],
         Poly.zero(nvars), Poly.zero(nvars)],
    ]
    c_i = [[over(c_i_t_main[j][i], two * alpha2)
            + over(c_i_t_extra[j][i], alpha2)
            for j in range(4)] for i in range(4)]

    c_j_t_main = [
        [three * h[4] * alpha2,
         h[3] * (six * h[2] * h[2] - alpha2),
         h[2] * (six * h[3] * h[3] - alpha2),
         six * h[2] * h[3] * h[4]],
        [h[3] * (six * h[2] * h[2] - five * alpha2),
         -(three * h[4] * alpha2),
         two * h[2] * h[3] * h[4],
         h[2] * (three * alpha2 - two * h[3] * h[3])],
        [-(six * h[2] * h[3] * h[4]),
         three * h[2] * (alpha2 - two * h[3] * h[3]),
         h[3] * (beta2 - four * h[3] * h[3]),
         h[4] * (three * alpha2 - four * h[3] * h[3])],
        [h[2] * (six * h[3] * h[3] - alpha2),
         -(six * h[2] * h[3] * h[4]),
         -(h[4] * (three * alpha2 + four * h[3] * h[3])),
         h[3] * (beta2 - four * h[4] * h[4])],
    ]
    c_j_t_extra = [
        [h[2] * h[7] - h[3] * h[5] + h[4] * h[6], Poly.zero(nvars),
         h[2] * h[6] + h[3] * h[8] - h[4] * h[7], Poly.zero(nvars)],
        [-(h[2] * h[8]) - h[3] * h[6] - h[4] * h[5], Poly.zero(nvars),
         -(h[2] * h[5]) + h[3] * h[7] + h[4] * h[8], Poly.zero(nvars)],
        [-(h[2] * h[5]) - h[3] * h[7] + h[4] * h[8], Poly.zero(nvars),
         h[2] * h[8] - h[3] * h[6] + h[4] * h[5], Poly.zero(nvars)],
        [h[2] * h[6] - h[3] * h[8] - h[4] * h[7], Poly.zero(nvars),
         -(h[2] * h[7]) - h[3] * h[5] - h[4] * h[6], Poly.zero(nvars)],
    ]
    c_j = [[over(c_j_t_main[j][i], four * alpha2)
            + over(c_j_t_extra[j][i], alpha2)
            for j in range(4)] for i in range(4)]

    def assemble(a, c, b):
        top = _zero_mat(8, nvars)
        for i in range(4):
            for j in range(4):
                top[i][j] = a[i][j]
                top[i][4 + j] = c[i][j]
                top[4 + i][4 + j] = b[i][j]
        return top

    return assemble(a_i, c_i, b_i), assemble(a_j, c_j, b_j), alpha2


def _mat_transpose(m):
    return [[m[j][i] for j in range(len(m))] for i in range(len(m))]


def build_QII(n):
    """The curvature-type model: rational entries over alpha^2 != 0.

    The source tables list each operator acting on row vectors; the
    column-vector operator is the transpose.  Only the transposed reading
    is torsion-free (the structure-tensor certificate), which pins the
    convention.
    """
    if n < 2:
        raise MatchFailure("the models need quaternionic dimension >= 2")
    nvars = 4 * n
    top_i, top_j, alpha2 = _qii_top(nvars)
    i_mat = _mat_transpose(_lift_blocks(top_i, _constant_mat(A_BLOCK_I, nvars), n))
    j_mat = _mat_transpose(_lift_blocks(top_j, _constant_mat(A_BLOCK_J, nvars), n))
    k_mat = _mat_mul(i_mat, j_mat)
    return AQStructure(n, i_mat, j_mat, k_mat, [alpha2], "curvature-type")


def _qi_top(nvars):
    h7 = RatFunc(Poly.var(6, nvars))
    z = _rf(0, nvars)
    one = _rf(1, nvars)
    mone = _rf(-1, nvars)

    i_rows = [
        [z, mone, z, z, z, h7, z, z],
        [one, z, z, z, h7, z, z, z],
        [z, z, z, one, z, z, z, z],
        [z, z, mone, z, z, z, z, z],
        [z, z, z, z, z, mone, z, z],
        [z, z, z, z, one, z, z, z],
        [z, z, z, z, z, z, z, one],
        [z, z, z, z, z, z, mone, z],
    ]
    j_rows = [
        [z, z, one, z, z, z, -h7, z],
        [z, z, z, one, z, z, z, z],
        [mone, z, z, z, -h7, z, z, z],
        [z, mone, z, z, z, z, z, z],
        [z, z, z, z, z, z, one, z],
        [z, z, z, z, z, z, z, one],
        [z, z, z, z, mone, z, z, z],
        [z, z, z, z, z, mone, z, z],
    ]
    return i_rows, j_rows


def build_QI(n):
    """The torsion-type model: polynomial entries, no chart guard."""
    if n < 2:
        raise MatchFailure("the models need quaternionic dimension >= 2")
    nvars = 4 * n
    top_i, top_j = _qi_top(nvars)
    i_mat = _lift_blocks(top_i, _constant_mat(A_BLOCK_I, nvars), n)
    j_mat = _lift_blocks(top_j, _constant_mat(A_BLOCK_J, nvars), n)
    k_mat = _mat_mul(i_mat, j_mat)
    return AQStructure(n, i_mat, j_mat, k_mat, [], "torsion-type")


# ---------------------------------------------------------------------------
# exact vector-field calculus
# ---------------------------------------------------------------------------

def lie_bracket(x, y):
    """[X, Y]^i = sum_j X^j d_j Y^i - Y^j d_j X^i, exact."""
    nv = len(x)
    out = []
    for i in range(nv):
        acc = None
        for j in range(nv):
            if not x[j].is_zero():
                t = x[j] * y[i].derivative(j)
                acc = t if acc is None else acc + t
            if not y[j].is_zero():
                t = y[j] * x[i].derivative(j)
                acc = -t if acc is None else acc - t
        out.append(acc if acc is not None else _rf(0, x[0].num.nvars))
    return out


def _jacobian(x):
    nv = len(x)
    return [[x[i].derivative(j) for j in range(nv)] for i in range(nv)]


def lie_derivative_endo(x, a):
    """(L_X A) as a matrix: X(A) - (DX) A + A (DX)."""
    nv = len(x)
    dx = _jacobian(x)
    xa = []
    for i in range(nv):
        row = []
        for j in range(nv):
            acc = None
            for k in range(nv):
                if x[k].is_zero():
                    continue
                d = a[i][j].derivative(k)
                if d.is_zero():
                    continue
                t = x[k] * d
                acc = t if acc is None else acc + t
            row.append(acc if acc is not None else _rf(0, x[0].num.nvars))
        xa.append(row)
    return _mat_add(xa, _mat_add(_mat_scale(_rf(-1, nv), _mat_mul(dx, a)),
                                 _mat_mul(a, dx)))


def nijenhuis(a):
    """Integrability defect of an endomorphism field, on frame pairs.

    Returns ``{(p, q): vector}`` for ``p < q`` with
    ``N(e_p, e_q) = [Ae_p, Ae_q] - A[Ae_p, e_q] - A[e_p, Ae_q]``
    (coordinate frames commute, so the last bracket term drops).
    """
    nv = len(a)
    zero = _rf(0, nv)
    cols = [[a[i][p] for i in range(nv)] for p in range(nv)]
    dcols = [[[a[i][p].derivative(k) for k in range(nv)] for i in range(nv)]
             for p in range(nv)]
    out = {}
    for p in range(nv):
        for q in range(p + 1, nv):
            vec = []
            for i in range(nv):
                acc = None
                for j in range(nv):
                    # [Ae_p, Ae_q]^i
                    if not cols[p][j].is_zero():
                        t = cols[p][j] * dcols[q][i][j]
                        acc = t if acc is None else acc + t
                    if not cols[q][j].is_zero():
                        t = cols[q][j] * dcols[p][i][j]
                        acc = -t if acc is None else acc - t
                    # + A d_q(Ae_p) - A d_p(Ae_q)
                    if not a[i][j].is_zero():
                        d = dcols[p][j][q] - dcols[q][j][p]
                        if not d.is_zero():
                            t = a[i][j] * d
                            acc = t if acc is None else acc + t
                vec.append(acc if acc is not None else zero)
            out[(p, q)] = vec
    return out


def structure_tensor(struct):
    """The canonical first-order invariant of the quaternionic span.

    ``B = (N_I + N_J + N_K)/6`` corrected by the alternation of the
    normalized traces ``tau_A(X) = Tr(A B(X))/(4n-2)``; the structure is
    integrable to a torsion-free geometry exactly when this vanishes.
    """
    nv = struct.nvars
    sixth = _rf(mpq(1, 6), nv)
    n_i = nijenhuis(struct.I)
    n_j = nijenhuis(struct.J)
    n_k = nijenhuis(struct.K)
    b = {}
    for key in n_i:
        b[key] = [sixth * (x + y + z)
                  for x, y, z in zip(n_i[key], n_j[key], n_k[key])]

    # tau_A(e_p) = Tr(A . B(e_p)) / (4n - 2); B(e_p)^i_q = B^i_{pq}
    def b_entry(p, q, i):
        if p == q:
            return _rf(0, nv)
        if p < q:
            return b[(p, q)][i]
        return -(b[(q, p)][i])

    norm = _rf(mpq(1, 4 * struct.n - 2), nv)
    taus = {}
    for label, mat in (("I", struct.I), ("J", struct.J), ("K", struct.K)):
        tau = []
        for p in range(nv):
            acc = None
            for i in range(nv):
                for j in range(nv):
                    if mat[i][j].is_zero():
                        continue
                    e = b_entry(p, i, j)
                    if e.is_zero():
                        continue
                    t = mat[i][j] * e
                    acc = t if acc is None else acc + t
            tau.append(norm * acc if acc is not None else _rf(0, nv))
        taus[label] = tau

    out = {}
    for (p, q), vec in b.items():
        corr = []
        for i in range(nv):
            acc = vec[i]
            for label, mat in (("I", struct.I), ("J", struct.J),
                               ("K", struct.K)):
                tau = taus[label]
                acc = acc + tau[p] * mat[i][q] - tau[q] * mat[i][p]
            corr.append(acc)
        out[(p, q)] = corr
    return out


def tensor_is_zero(tensor):
    return all(x.is_zero() for vec in tensor.values() for x in vec)
