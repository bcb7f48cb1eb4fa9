"""Finite-dimensional Lie algebras over Q by exact structure constants.

A ``LieAlgebra`` stores the bracket of basis pairs sparsely:
``table[(i, j)]`` (only for i < j) maps basis index ``k`` to the rational
coefficient of ``e_k`` in ``[e_i, e_j]``.  Everything downstream —
Jacobi checking, Killing forms, derived/lower-central series, radicals,
structural fingerprints — is computed exactly from this table.

Subalgebras come with exact change-of-basis bookkeeping so their own
structure constants are again exact rationals.
"""

from gmpy2 import mpq

from .errors import JacobiFailure, NotClosed
from .linalg import (
    clear_row_denominators, in_span, mat_vec, rank, right_kernel,
    row_space, rref, solve, transpose,
)

__all__ = ["LieAlgebra", "SpanSolver", "structure_fingerprint"]


class SpanSolver:
    """Fast repeated coordinate solves against a fixed independent basis."""

    def __init__(self, basis):
        self.basis = [list(v) for v in basis]
        self.k = len(basis)
        self.ambient = len(basis[0]) if basis else 0
        aug = [[basis[j][i] for j in range(self.k)] +
               [mpq(1) if t == i else mpq(0) for t in range(self.ambient)]
               for i in range(self.ambient)]
        red, pivots = rref(aug)
        if [c for c in pivots if c < self.k] != list(range(self.k)):
            raise ValueError("basis vectors are dependent")
        self.red = red
        self.pivots = pivots

    def coords(self, v):
        """Coordinates of v in the span, or None when v is outside it."""
        k, red = self.k, self.red
        out = [mpq(0)] * k
        for i, c in enumerate(self.pivots):
            w = mpq(0)
            row = red[i]
            for t in range(self.ambient):
                x = v[t]
                if x:
                    r = row[k + t]
                    if r:
                        w += r * x
            if c < k:
                out[c] = w
            elif w:
                return None
        return out


class LieAlgebra:
    """Lie algebra given by exact structure constants."""

    def __init__(self, dim, table, labels=None):
        self.dim = dim
        self.labels = list(labels) if labels else ["e%d" % i for i in range(dim)]
        # normalize: keep only i < j, drop zeros
        self.table = {}
        for (i, j), terms in table.items():
            if i == j:
                continue
            if i > j:
                i, j, sign = j, i, -1
            else:
                sign = 1
            cur = self.table.setdefault((i, j), {})
            for k, c in terms.items():
                c = mpq(c) * sign
                if c:
                    cur[k] = cur.get(k, mpq(0)) + c
            self.table[(i, j)] = {k: c for k, c in cur.items() if c}
        self.table = {ij: t for ij, t in self.table.items() if t}
        self._killing = None
        self._radical = None

    # -- bracket ---------------------------------------------------------

    def bracket_basis(self, i, j):
        """[e_i, e_j] as a sparse dict {k: coeff}."""
        if i == j:
            return {}
        if i < j:
            return self.table.get((i, j), {})
        return {k: -c for k, c in self.table.get((j, i), {}).items()}

    def bracket(self, u, v):
        """Bracket of two coordinate vectors; returns a dense vector."""
        out = [mpq(0)] * self.dim
        nzu = [(i, x) for i, x in enumerate(u) if x]
        nzv = [(j, y) for j, y in enumerate(v) if y]
        for i, x in nzu:
            for j, y in nzv:
                if i == j:
                    continue
                for k, c in self.bracket_basis(i, j).items():
                    out[k] += x * y * c
        return out

    def adjoint(self, u):
        """Matrix of ad(u) acting on coordinate columns."""
        cols = []
        for j in range(self.dim):
            col = [mpq(0)] * self.dim
            for i, x in enumerate(u):
                if x:
                    for k, c in self.bracket_basis(i, j).items():
                        col[k] += x * c
            cols.append(col)
        return transpose(cols)

    # -- verification -----------------------------------------------------

    def jacobi_check(self, raise_on_fail=True):
        """Exact Jacobi identity over all basis triples."""
        d = self.dim
        for i in range(d):
            for j in range(i + 1, d):
                bij = self.bracket_basis(i, j)
                for k in range(j + 1, d):
                    acc = {}
                    for t, c in bij.items():
                        for s, c2 in self.bracket_basis(t, k).items():
                            acc[s] = acc.get(s, mpq(0)) + c * c2
                    for t, c in self.bracket_basis(j, k).items():
                        for s, c2 in self.bracket_basis(t, i).items():
                            acc[s] = acc.get(s, mpq(0)) + c * c2
                    for t, c in self.bracket_basis(k, i).items():
                        for s, c2 in self.bracket_basis(t, j).items():
                            acc[s] = acc.get(s, mpq(0)) + c * c2
                    if any(acc.values()):
                        if raise_on_fail:
                            raise JacobiFailure(
                                "Jacobi fails on basis triple (%d, %d, %d)"
                                % (i, j, k))
                        return False
        return True

    # -- invariants ---------------------------------------------------------

    def killing_matrix(self):
        if self._killing is not None:
            return self._killing
        ads = [self.adjoint([mpq(1) if t == i else mpq(0)
                             for t in range(self.dim)])
               for i in range(self.dim)]
        kappa = [[mpq(0)] * self.dim for _ in range(self.dim)]
        for i in range(self.dim):
            for j in range(i, self.dim):
                tr = mpq(0)
                a, b = ads[i], ads[j]
                for r in range(self.dim):
                    for s in range(self.dim):
                        if a[r][s] and b[s][r]:
                            tr += a[r][s] * b[s][r]
                kappa[i][j] = tr
                kappa[j][i] = tr
        self._killing = kappa
        return kappa

    def _bracket_span(self, basis_a, basis_b):
        prods = []
        for u in basis_a:
            for v in basis_b:
                w = self.bracket(u, v)
                if any(w):
                    prods.append(w)
        return row_space(prods)[0]

    def derived_series(self):
        """Bases of g = g^(0) >= [g, g] >= ... until stable."""
        cur = [[mpq(1) if t == i else mpq(0) for t in range(self.dim)]
               for i in range(self.dim)]
        series = [cur]
        while True:
            nxt = self._bracket_span(series[-1], series[-1])
            if len(nxt) == len(series[-1]):
                break
            series.append(nxt)
            if not nxt:
                break
        return series

    def lower_central_series(self):
        full = [[mpq(1) if t == i else mpq(0) for t in range(self.dim)]
                for i in range(self.dim)]
        series = [full]
        while True:
            nxt = self._bracket_span(full, series[-1])
            if len(nxt) == len(series[-1]):
                break
            series.append(nxt)
            if not nxt:
                break
        return series

    def is_nilpotent(self):
        return not self.lower_central_series()[-1]

    def is_solvable(self):
        return not self.derived_series()[-1]

    def center(self):
        # x is central iff ad(e_i) x = 0 for every basis vector e_i
        rows = []
        for i in range(self.dim):
            e = [mpq(1) if t == i else mpq(0) for t in range(self.dim)]
            rows.extend(self.adjoint(e))
        return right_kernel(rows, ncols=self.dim)

    def centralizer(self, basis):
        """Basis of the subspace commuting with every vector in `basis`."""
        rows = []
        for b in basis:
            rows.extend(self.adjoint(b))
        return right_kernel(rows, ncols=self.dim)

    def radical(self):
        """Solvable radical via Cartan: rad = [g,g]-perp under Killing."""
        if self._radical is not None:
            return self._radical
        kappa = self.killing_matrix()
        derived = self._bracket_span(
            [[mpq(1) if t == i else mpq(0) for t in range(self.dim)]
             for i in range(self.dim)],
            [[mpq(1) if t == i else mpq(0) for t in range(self.dim)]
             for i in range(self.dim)])
        rows = [mat_vec(kappa, d) for d in derived]
        rad = right_kernel(rows, ncols=self.dim) if rows else \
            [[mpq(1) if t == i else mpq(0) for t in range(self.dim)]
             for i in range(self.dim)]
        sub = self.subalgebra(rad, check_closed=True)
        if not sub.is_solvable():
            raise NotClosed("killing-perp of derived algebra not solvable")
        self._radical = rad
        return rad

    def nilradical(self):
        """Largest nilpotent ideal.

        Computed as (radical intersect Killing-radical); this always
        contains the nilradical, so verifying the result is a nilpotent
        ideal certifies equality.
        """
        rad = self.radical()
        kappa = self.killing_matrix()
        if rad:
            rows = []
            for krow in kappa:
                rows.append([sum((krow[t] * b[t] for t in range(self.dim)
                                  if krow[t] and b[t]), start=mpq(0))
                             for b in rad])
            coords_basis = right_kernel(rows, ncols=len(rad))
            cand = []
            for cv in coords_basis:
                vec = [mpq(0)] * self.dim
                for c, b in zip(cv, rad):
                    if c:
                        vec = [a + c * x for a, x in zip(vec, b)]
                cand.append(vec)
            cand = row_space(cand)[0]
        else:
            cand = []
        if cand:
            if not self.is_ideal(cand):
                raise NotClosed("nilradical candidate is not an ideal")
            sub = self.subalgebra(cand, check_closed=True)
            if not sub.is_nilpotent():
                raise NotClosed("nilradical candidate is not nilpotent")
        return cand

    def is_ideal(self, basis):
        if not basis:
            return True
        solver = SpanSolver(row_space(basis)[0])
        for i in range(self.dim):
            e = [mpq(1) if t == i else mpq(0) for t in range(self.dim)]
            for b in basis:
                w = self.bracket(e, b)
                if any(w) and solver.coords(w) is None:
                    return False
        return True

    def is_subalgebra(self, basis):
        if not basis:
            return True
        solver = SpanSolver(row_space(basis)[0])
        for a in range(len(basis)):
            for b in range(a + 1, len(basis)):
                w = self.bracket(basis[a], basis[b])
                if any(w) and solver.coords(w) is None:
                    return False
        return True

    def subalgebra(self, basis, labels=None, check_closed=True):
        """Lie algebra induced on the span of *basis* (must be closed)."""
        basis = [list(v) for v in basis]
        if not basis:
            return LieAlgebra(0, {}, [])
        solver = SpanSolver(basis)
        table = {}
        k = len(basis)
        for a in range(k):
            for b in range(a + 1, k):
                w = self.bracket(basis[a], basis[b])
                if not any(w):
                    continue
                coords = solver.coords(w)
                if coords is None:
                    if check_closed:
                        raise NotClosed(
                            "span not closed under the bracket at pair "
                            "(%d, %d)" % (a, b))
                    continue
                entry = {t: c for t, c in enumerate(coords) if c}
                if entry:
                    table[(a, b)] = entry
        return LieAlgebra(k, table, labels)

    # -- fingerprint / export ------------------------------------------------

    def fingerprint(self):
        return structure_fingerprint(self)

    def to_json_dict(self):
        return {
            "dim": self.dim,
            "labels": list(self.labels),
            "table": {
                "%d,%d" % ij: {str(k): str(c) for k, c in sorted(t.items())}
                for ij, t in sorted(self.table.items())
            },
        }

    @classmethod
    def from_json_dict(cls, data):
        table = {}
        for key, terms in data["table"].items():
            i, j = (int(x) for x in key.split(","))
            table[(i, j)] = {int(k): mpq(c) for k, c in terms.items()}
        return cls(data["dim"], table, data.get("labels"))


def structure_fingerprint(alg):
    """Isomorphism-invariant summary used to compare abstract Lie algebras."""
    derived = [len(b) for b in alg.derived_series()]
    lcs = [len(b) for b in alg.lower_central_series()]
    rad = alg.radical()
    nil = alg.nilradical()
    return {
        "dim": alg.dim,
        "derived_dims": derived,
        "lower_central_dims": lcs,
        "center_dim": len(alg.center()),
        "radical_dim": len(rad),
        "levi_dim": alg.dim - len(rad),
        "nilradical_dim": len(nil),
        "killing_rank": rank(alg.killing_matrix()),
    }
