"""Exact quaternion arithmetic and its real matrix realizations.

A quaternion is a length-4 list of rationals over the unit basis
``(1, i, j, k)`` with ``i*j = k``.  Matrices over the quaternions are
dicts mapping ``(row, col)`` to such coefficient lists; missing keys are
zero.  ``left_matrix``/``right_matrix`` give the 4x4 real matrices of
left/right multiplication acting on coordinate columns, which is how the
quaternionic module structures in this package are realized over Q.
"""

from gmpy2 import mpq

__all__ = [
    "UNITS", "TABLE", "unit", "quat", "quat_mul", "quat_conj", "quat_re",
    "left_matrix", "right_matrix", "qmat_mul", "qmat_commutator",
    "qmat_add", "qmat_scale", "qmat_re_trace", "qmat_is_zero",
]

UNITS = ("1", "i", "j", "k")

# TABLE[a][b] = (sign, idx) with  e_a * e_b = sign * e_idx
TABLE = (
    ((1, 0), (1, 1), (1, 2), (1, 3)),
    ((1, 1), (-1, 0), (1, 3), (-1, 2)),
    ((1, 2), (-1, 3), (-1, 0), (1, 1)),
    ((1, 3), (1, 2), (-1, 1), (-1, 0)),
)


def unit(a):
    """Coefficient vector of a quaternion unit given by index or name."""
    if isinstance(a, str):
        a = UNITS.index(a)
    v = [mpq(0)] * 4
    v[a] = mpq(1)
    return v


def quat(c0=0, c1=0, c2=0, c3=0):
    return [mpq(c0), mpq(c1), mpq(c2), mpq(c3)]


def quat_mul(x, y):
    out = [mpq(0)] * 4
    for a in range(4):
        xa = x[a]
        if not xa:
            continue
        for b in range(4):
            yb = y[b]
            if yb:
                sign, idx = TABLE[a][b]
                out[idx] += xa * yb if sign > 0 else -xa * yb
    return out


def quat_conj(x):
    return [x[0], -x[1], -x[2], -x[3]]


def quat_re(x):
    return x[0]


def left_matrix(x):
    """4x4 real matrix of y -> x*y on coordinate columns."""
    m = [[mpq(0)] * 4 for _ in range(4)]
    for a in range(4):
        if not x[a]:
            continue
        for b in range(4):
            sign, idx = TABLE[a][b]
            m[idx][b] += x[a] if sign > 0 else -x[a]
    return m


def right_matrix(x):
    """4x4 real matrix of y -> y*x on coordinate columns."""
    m = [[mpq(0)] * 4 for _ in range(4)]
    for a in range(4):
        if not x[a]:
            continue
        for b in range(4):
            sign, idx = TABLE[b][a]
            m[idx][b] += x[a] if sign > 0 else -x[a]
    return m


# ---------------------------------------------------------------------------
# Quaternion-valued matrices as sparse dicts {(r, c): quat}
# ---------------------------------------------------------------------------

def qmat_mul(x, y):
    out = {}
    ycols = {}
    for (r, c), q in y.items():
        ycols.setdefault(r, []).append((c, q))
    for (r, s), qx in x.items():
        for c, qy in ycols.get(s, ()):
            prod = quat_mul(qx, qy)
            if any(prod):
                cur = out.get((r, c))
                if cur is None:
                    out[(r, c)] = prod
                else:
                    acc = [a + b for a, b in zip(cur, prod)]
                    if any(acc):
                        out[(r, c)] = acc
                    else:
                        del out[(r, c)]
    return out


def qmat_add(x, y, sy=1):
    out = {k: list(v) for k, v in x.items()}
    for k, q in y.items():
        cur = out.get(k)
        if cur is None:
            acc = [sy * c for c in q]
        else:
            acc = [a + sy * b for a, b in zip(cur, q)]
        if any(acc):
            out[k] = acc
        else:
            out.pop(k, None)
    return out


def qmat_scale(x, s):
    if not s:
        return {}
    return {k: [s * c for c in q] for k, q in x.items()}


def qmat_commutator(x, y):
    return qmat_add(qmat_mul(x, y), qmat_mul(y, x), sy=-1)


def qmat_re_trace(x):
    t = mpq(0)
    for (r, c), q in x.items():
        if r == c:
            t += q[0]
    return t


def qmat_is_zero(x):
    return all(not any(q) for q in x.values())
