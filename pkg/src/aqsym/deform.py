"""Bracket deformations of the extremal-annihilator models.

Each harmonic tensor model singles out, through its extremal vector, a
graded Lie algebra: the abelian degree ``-1`` layer extended by the
extremal annihilator inside the degree-0 algebra.  This module

* builds those graded models with exact structure constants and markers
  for the distinguished subspaces (quaternionic line slots, the
  positive-weight part of the annihilator and its center),
* computes the unique equivariant map from the homogeneity-two tensor
  model into two-forms on the layer valued in the degree-0 algebra
  (existence and one-dimensionality of the solution space are certified
  exactly), and
* deforms the graded brackets by the resulting exact two-cocycles,
  re-verifying the Jacobi identity and every structural containment.

All computations are over exact rationals; failures raise typed errors.
"""

from gmpy2 import mpq

from .cohomology import _clear_sparse_rows
from .errors import CertificateError, MatchFailure, NonUniqueSolution
from .hmod import annihilator, build_curvature_module, build_torsion_module
from .kostant import _primitive_ints, _span_from
from .liealg import LieAlgebra, SpanSolver
from .linalg import in_span, inverse, right_kernel, row_space
from .modular import certified_kernel, residue_matrix, rref_mod
from .rationals import MODULAR_PRIMES
from .slh import build_graded, build_parabolic

__all__ = [
    "WedgeValueRep", "EquivariantB", "GradedModel", "DeformedAlgebra",
    "equivariant_b", "build_graded_model", "deform_curvature",
    "deform_torsion", "symmetric_pair_check",
]


class WedgeValueRep:
    """Two-forms on the degree ``-1`` layer valued in the degree-0 algebra.

    Basis vectors are ``(xi_a ^ xi_b) (x) E_v`` with ``a < b`` running over
    the layer basis and ``E_v`` over the degree-0 basis; the column index
    is ``pair_position * g0dim + v``.  A degree-0 element acts by the dual
    action on both form slots plus the adjoint action on the value slot.
    """

    def __init__(self, alg):
        self.alg = alg
        m = alg.dim_gm1
        self.nargs = m
        self.g0dim = alg.dim_g0
        self.pairs = [(a, b) for a in range(m) for b in range(a + 1, m)]
        self._pair_pos = {pr: i for i, pr in enumerate(self.pairs)}
        self.dim = len(self.pairs) * self.g0dim
        self._amats = alg.action_on_gm1()
        base0 = m
        self._ad = [
            [tuple((k - base0, c)
                   for k, c in alg.algebra.bracket_basis(base0 + p,
                                                         base0 + v).items())
             for v in range(self.g0dim)]
            for p in range(self.g0dim)]

    def encode(self, pair, val):
        return self._pair_pos[pair] * self.g0dim + val

    def decode(self, col):
        pr, val = divmod(col, self.g0dim)
        return self.pairs[pr], val

    def column_terms(self, p, col):
        """Sparse action of degree-0 basis element ``p`` on basis column."""
        pr_pos, val = divmod(col, self.g0dim)
        a, b = self.pairs[pr_pos]
        amat = self._amats[p]
        g0dim = self.g0dim
        out = []
        for t in range(self.nargs):
            ca = amat[a][t]
            if ca and t != b:
                if t < b:
                    out.append((self._pair_pos[(t, b)] * g0dim + val, -ca))
                else:
                    out.append((self._pair_pos[(b, t)] * g0dim + val, ca))
            cb = amat[b][t]
            if cb and t != a:
                if a < t:
                    out.append((self._pair_pos[(a, t)] * g0dim + val, -cb))
                else:
                    out.append((self._pair_pos[(t, a)] * g0dim + val, cb))
        for k, c in self._ad[p][val]:
            out.append((pr_pos * g0dim + k, c))
        return out

    def apply_local(self, p, vec):
        """Image of a sparse vector under the degree-0 basis element p."""
        out = {}
        for col, coeff in vec.items():
            for r, c in self.column_terms(p, col):
                out[r] = out.get(r, mpq(0)) + coeff * c
        return {r: c for r, c in out.items() if c}

    def apply_combo(self, coeffs, vec):
        """Image of a sparse vector under a degree-0 coordinate vector."""
        out = {}
        for p, cp in enumerate(coeffs):
            if not cp:
                continue
            for col, coeff in vec.items():
                for r, c in self.column_terms(p, col):
                    out[r] = out.get(r, mpq(0)) + cp * coeff * c
        return {r: c for r, c in out.items() if c}

    def labeled_terms(self, vec):
        """Human-readable ``(dual, dual, value, coefficient)`` tuples."""
        labels = self.alg.labels
        base0 = self.nargs
        out = []
        for col in sorted(vec):
            coeff = vec[col]
            if not coeff:
                continue
            (a, b), val = self.decode(col)
            out.append((labels[a], labels[b], labels[base0 + val], coeff))
        return out


def _joint_kernel(rep, operators):
    """Exact joint kernel of sparse operators on the wedge-value module.

    ``operators`` is a list of ``(coeffs, shift)``: the operator is the
    degree-0 action of ``coeffs`` minus ``shift`` times the identity.
    Kernels are intersected operator by operator, each step restricted to
    the previous kernel so the modular-certified elimination stays small.
    Returns a list of sparse candidate vectors ``{column: mpq}``.
    """
    basis = None
    for coeffs, shift in operators:
        if basis is None:
            rows = {}
            for p, cp in enumerate(coeffs):
                if not cp:
                    continue
                for col in range(rep.dim):
                    for r, c in rep.column_terms(p, col):
                        d = rows.setdefault(r, {})
                        d[col] = d.get(col, mpq(0)) + cp * c
            if shift:
                for col in range(rep.dim):
                    d = rows.setdefault(col, {})
                    d[col] = d.get(col, mpq(0)) - shift
            stacked = _clear_sparse_rows(list(rows.values()))
            kres = certified_kernel(stacked, rep.dim)
            basis = [{c: mpq(x) for c, x in enumerate(vec) if x}
                     for vec in kres.basis]
        else:
            images = []
            for vec in basis:
                img = rep.apply_combo(coeffs, vec)
                if shift:
                    for col, coeff in vec.items():
                        img[col] = img.get(col, mpq(0)) - shift * coeff
                images.append({r: c for r, c in img.items() if c})
            rows = {}
            for i, img in enumerate(images):
                for r, c in img.items():
                    rows.setdefault(r, {})[i] = c
            stacked = _clear_sparse_rows(list(rows.values()))
            kres = certified_kernel(stacked, len(basis))
            new_basis = []
            for combo in kres.basis:
                acc = {}
                for i, x in enumerate(combo):
                    if x:
                        for col, coeff in basis[i].items():
                            acc[col] = acc.get(col, mpq(0)) + x * coeff
                new_basis.append({c: v for c, v in acc.items() if v})
            basis = new_basis
        if not basis:
            return []
    return basis


def _eigenvalue_on(module, coeffs, coords):
    """The exact scalar by which a degree-0 combo acts on a module vector."""
    amb = module.vector(coords)
    img = module.apply_g0_combo(coeffs, amb)
    theta = None
    for key, val in amb.items():
        if val:
            theta = img.get(key, mpq(0)) / val
            break
    if theta is None:
        raise CertificateError("eigenvalue requested on the zero vector")
    scaled = {k: theta * v for k, v in amb.items() if theta * v}
    if scaled != {k: v for k, v in img.items() if v}:
        raise CertificateError("vector is not an eigenvector of the combo")
    return theta


def _transport_columns(rep, tree, m_v_inv, seed):
    """Columns of the transported candidate map in the standard basis.

    Mirrors the module-side spanning tree on the wedge-value side starting
    from ``seed``, then re-expresses the images over the standard module
    basis through the exact inverse of the tree-column matrix.
    """
    cols = [dict(seed)]
    for parent, p, alpha in tree[1:]:
        img = rep.apply_local(p, cols[parent])
        cols.append({r: alpha * c for r, c in img.items() if alpha * c})
    dim = len(tree)
    phi = []
    for j in range(dim):
        acc = {}
        for i in range(dim):
            wgt = m_v_inv[i][j]
            if wgt:
                for r, c in cols[i].items():
                    acc[r] = acc.get(r, mpq(0)) + wgt * c
        phi.append({r: c for r, c in acc.items() if c})
    return phi


def _defect_kernel(rep, module, phis):
    """Coefficient combinations making a transported map equivariant.

    For every degree-0 basis element and every standard module basis
    vector, the equivariance defect of each candidate map is collected;
    the defects are linear in the candidate, so the exact kernel of the
    collected rows is the space of equivariant combinations.
    """
    k = len(phis)
    dim = module.dim
    reduced = []                     # (pivot index, normalized row)

    def feed(row):
        for pc, red in reduced:
            if row[pc]:
                f = row[pc]
                row = [x - f * y for x, y in zip(row, red)]
        for idx, x in enumerate(row):
            if x:
                reduced.append((idx, [y / x for y in row]))
                break

    for p in range(module.alg.dim_g0):
        mat = module.action(p)
        num, den = mat.num, mat.den
        for cdx in range(dim):
            per_cand = []
            for phi in phis:
                d = rep.apply_local(p, phi[cdx])
                for rdx in range(dim):
                    wgt = num[rdx][cdx]
                    if wgt:
                        scale = mpq(wgt, den)
                        for r, c in phi[rdx].items():
                            d[r] = d.get(r, mpq(0)) - scale * c
                per_cand.append({r: c for r, c in d.items() if c})
            for r in set().union(*per_cand):
                row = [pc.get(r, mpq(0)) for pc in per_cand]
                if any(row):
                    feed(row)
        if len(reduced) == k:
            break                    # defect rows already force zero
    return right_kernel([row for _, row in reduced], ncols=k)


class EquivariantB:
    """The unique equivariant map into wedge-valued degree-0 cochains.

    ``columns[j]`` is the sparse image of the ``j``-th standard basis
    vector of the source tensor model; ``seed_image`` is the image of the
    extremal vector in the chosen normalization.
    """

    def __init__(self, rep, module, columns, seed_image, candidate_dim,
                 weight):
        self.rep = rep
        self.module = module
        self.columns = columns
        self.seed_image = seed_image
        self.candidate_dim = candidate_dim    # cut out by annihilator+weight
        self.solution_dim = 1                 # certified by the defect solve
        self.weight = weight

    def apply(self, coords):
        out = {}
        for j, x in enumerate(coords):
            if x:
                for r, c in self.columns[j].items():
                    out[r] = out.get(r, mpq(0)) + x * c
        return {r: c for r, c in out.items() if c}

    def bilinear(self):
        """The seed image as an alternating pair table ``(a, b) -> vec``."""
        g0dim = self.rep.g0dim
        out = {}
        for col, coeff in self.seed_image.items():
            (a, b), val = self.rep.decode(col)
            vec = out.setdefault((a, b), [mpq(0)] * g0dim)
            vec[val] += coeff
        return out


def equivariant_b(n, alg=None, module=None):
    """The unique (up to scale) equivariant map from the homogeneity-two
    tensor model to two-forms on the layer valued in the degree-0 algebra.

    Candidate images of the extremal vector are cut out exactly by the
    annihilator action and the grading weight; each candidate is
    transported to a full linear map along a spanning tree, and the
    equivariance defect -- linear in the candidate -- is solved exactly.
    The solution space must be exactly one-dimensional, otherwise
    :class:`NonUniqueSolution` is raised.  The generator is normalized so
    the corner coefficient on ``(first dual unit ^ j-unit) (x) (identity
    corner value)`` equals ``-1``, and injectivity is certified.
    """
    if alg is None:
        alg = build_graded(n)
    if module is None:
        module = build_curvature_module(alg)
    rep = WedgeValueRep(alg)
    w = module.extremal()
    ann, _ = annihilator(module, w)
    par = build_parabolic(alg)
    zprime = par["zprime"]
    theta = _eigenvalue_on(module, zprime, w)

    # Exact necessary conditions: same grading weight, killed by the
    # annihilator.  Sparse generators first keeps the eliminations small.
    ann_homog, _ = _weight_split(alg, ann, zprime)
    ops = [(zprime, theta)]
    ops.extend((vec, mpq(0)) for vec in sorted(
        ann_homog, key=lambda v: sum(1 for x in v if x)))
    candidates = _joint_kernel(rep, ops)
    if not candidates:
        raise NonUniqueSolution(
            "no wedge-valued vector shares the extremal's annihilator "
            "and weight")

    w_int = _primitive_ints(w)
    tree, m_v_cols = _span_from(module, w_int)
    dim = module.dim
    m_v = [[mpq(m_v_cols[j][i]) for j in range(dim)] for i in range(dim)]
    m_v_inv = inverse(m_v)
    if m_v_inv is None:
        raise CertificateError("transported spanning set is not invertible")

    phis = [_transport_columns(rep, tree, m_v_inv, seed)
            for seed in candidates]
    combos = _defect_kernel(rep, module, phis)
    if len(combos) != 1:
        raise NonUniqueSolution(
            "equivariance solution space has dimension %d" % len(combos))
    combo = combos[0]

    seed = {}
    for i, x in enumerate(combo):
        if x:
            for col, c in candidates[i].items():
                seed[col] = seed.get(col, mpq(0)) + x * c
    seed = {c: v for c, v in seed.items() if v}

    base = 4 * (n - 1)
    anchor_val = alg.labels.index("a1%d.1" % n) - alg.dim_gm1
    anchor = rep.encode((base, base + 2), anchor_val)
    if not seed.get(anchor):
        raise CertificateError("anchor coefficient of the seed image is 0")
    scale = mpq(-1) / seed[anchor]
    seed = {c: scale * v for c, v in seed.items()}
    # the tree was rooted at the primitive integer rescaling of the
    # extremal vector; fold that content back in so the returned map
    # sends the module's extremal vector itself to the seed image
    lead = next(j for j, x in enumerate(w_int) if x)
    col_scale = scale / (w[lead] / mpq(w_int[lead]))
    columns = []
    for i in range(dim):
        acc = {}
        for cand, x in enumerate(combo):
            if x:
                for r, c in phis[cand][i].items():
                    acc[r] = acc.get(r, mpq(0)) + x * c
        columns.append({r: col_scale * c for r, c in acc.items() if c})

    _assert_injective(rep, columns, dim)
    return EquivariantB(rep, module, columns, seed, len(candidates), theta)


def _assert_injective(rep, columns, dim):
    """Certify that the map with the given sparse columns is injective."""
    int_rows = _clear_sparse_rows(columns)
    for p in MODULAR_PRIMES[:4]:
        mat = residue_matrix(int_rows, rep.dim, p)
        if len(rref_mod(mat, p)[1]) == dim:
            return
    rows = {}
    for j, col in enumerate(columns):
        for r, c in col.items():
            rows.setdefault(r, {})[j] = c
    dense = [[row.get(j, mpq(0)) for j in range(dim)]
             for row in rows.values()]
    if right_kernel(dense, ncols=dim):
        raise CertificateError("equivariant map is not injective")


def _weight_split(alg, vectors, zprime):
    """Split degree-0 vectors into exact grading-weight eigencomponents.

    Returns ``(homogeneous_basis, degrees)`` sorted by increasing weight;
    the span is unchanged.  Raises :class:`MatchFailure` when a component
    fails the eigenvector check or the total dimension drops.
    """
    g0dim = alg.dim_g0
    base0 = alg.dim_gm1
    admat = [[mpq(0)] * g0dim for _ in range(g0dim)]
    for p, cp in enumerate(zprime):
        if not cp:
            continue
        for q in range(g0dim):
            for k, c in alg.algebra.bracket_basis(base0 + p,
                                                  base0 + q).items():
                admat[k - base0][q] += cp * c

    def apply_ad(vec):
        return [sum(admat[r][q] * vec[q] for q in range(g0dim) if vec[q])
                for r in range(g0dim)]

    weights = (mpq(0), mpq(1), mpq(2))
    per_weight = {d: [] for d in weights}
    for vec in vectors:
        total = [mpq(0)] * g0dim
        for d in weights:
            comp = list(vec)
            for e in weights:
                if e != d:
                    img = apply_ad(comp)
                    comp = [(img[r] - e * comp[r]) / (d - e)
                            for r in range(g0dim)]
            if any(comp):
                img = apply_ad(comp)
                if img != [d * x for x in comp]:
                    raise MatchFailure(
                        "weight-%s component is not an eigenvector" % d)
                per_weight[d].append(comp)
                total = [t + c for t, c in zip(total, comp)]
        if total != list(vec):
            raise MatchFailure(
                "vector is not a sum of weight-0,1,2 components")
    basis, degrees = [], []
    for d in weights:
        if per_weight[d]:
            indep, _ = row_space(per_weight[d])
            basis.extend(indep)
            degrees.extend([int(d)] * len(indep))
    if len(basis) != len(row_space(list(vectors))[0]):
        raise MatchFailure("weight splitting changed the span dimension")
    return basis, degrees


class GradedModel:
    """The graded candidate symmetry algebra of a tensor model.

    Basis: the full degree ``-1`` layer of the ambient graded algebra
    (abelian here), followed by a grading-weight-homogeneous basis of the
    extremal annihilator.  Markers expose the distinguished quaternionic
    line slots, the positive-weight part of the annihilator, and its
    center (the corner block).
    """

    def __init__(self, alg, module):
        self.alg = alg
        self.module = module
        self.kind = module.kind
        n = alg.n
        self.layer_dim = alg.dim_gm1
        w = module.extremal()
        ann, _ = annihilator(module, w)
        par = build_parabolic(alg)
        self.ann_basis, self.ann_degrees = _weight_split(
            alg, ann, par["zprime"])
        k = len(self.ann_basis)
        self.dim = self.layer_dim + k
        self.degrees = [-1] * self.layer_dim + self.ann_degrees

        def embed(vec):
            full = [mpq(0)] * alg.dim
            for p, x in enumerate(vec):
                full[self.layer_dim + p] = x
            return full

        sub = alg.algebra.subalgebra(
            [embed(v) for v in self.ann_basis], check_closed=True)
        self.ann_lie = sub
        amats = alg.action_on_gm1()
        table = {}
        for (a, b), entry in sub.table.items():
            table[(self.layer_dim + a, self.layer_dim + b)] = {
                self.layer_dim + t: c for t, c in entry.items()}
        for idx, avec in enumerate(self.ann_basis):
            col = self.layer_dim + idx
            for j in range(self.layer_dim):
                img = {}
                for p, cp in enumerate(avec):
                    if cp:
                        for t in range(self.layer_dim):
                            c = amats[p][t][j]
                            if c:
                                img[t] = img.get(t, mpq(0)) + cp * c
                entry = {t: -c for t, c in img.items() if c}
                if entry:
                    table[(j, col)] = entry
        labels = list(alg.labels[:self.layer_dim])
        labels += ["s%d.%d" % (d, i)
                   for i, d in enumerate(self.ann_degrees)]
        self.lie = LieAlgebra(self.dim, table, labels)

        self._ann_solver = SpanSolver(self.ann_basis)
        self.h_plus = [self._ann_vector(v) for v in par["h_plus"]]
        self.corner = [self._ann_vector(v) for v in par["h2"]]
        self.active_slot = n          # the line whose pairs deform
        self.image_slot = 1           # the line (or corner row) receiving it

    def _ann_vector(self, g0vec):
        coords = self._ann_solver.coords(g0vec)
        if coords is None:
            raise MatchFailure(
                "distinguished degree-0 vector lies outside the annihilator")
        vec = [mpq(0)] * self.dim
        for i, c in enumerate(coords):
            vec[self.layer_dim + i] = c
        return vec

    def slot_indices(self, r):
        """Model indices of the r-th quaternionic line of the layer."""
        return list(range(4 * (r - 1), 4 * r))

    def slot_vectors(self, r):
        out = []
        for i in self.slot_indices(r):
            vec = [mpq(0)] * self.dim
            vec[i] = mpq(1)
            out.append(vec)
        return out

    def layer_vectors(self):
        out = []
        for i in range(self.layer_dim):
            vec = [mpq(0)] * self.dim
            vec[i] = mpq(1)
            out.append(vec)
        return out


class DeformedAlgebra:
    """A graded model with its bracket deformed by an exact two-cocycle.

    Only brackets between layer elements differ from the graded model;
    the Jacobi identity and the structural containments are re-verified
    on construction by the builder functions.
    """

    def __init__(self, model, lie, provenance):
        self.model = model
        self.lie = lie
        self.provenance = provenance

    @property
    def dim(self):
        return self.lie.dim

    def deformation_support(self):
        """Pairs whose bracket differs from the graded model."""
        changed = set()
        keys = set(self.lie.table) | set(self.model.lie.table)
        for key in keys:
            if self.lie.table.get(key, {}) != self.model.lie.table.get(
                    key, {}):
                changed.add(key)
        return changed

    def to_json_dict(self):
        return self.lie.to_json_dict()


def build_graded_model(n, kind, alg=None, module=None):
    """Graded model for ``kind`` in ``{"curvature", "torsion"}``."""
    if alg is None:
        alg = build_graded(n)
    if module is None:
        builder = (build_curvature_module if kind == "curvature"
                   else build_torsion_module)
        module = builder(alg)
    return GradedModel(alg, module)


def _copy_table(table):
    return {key: dict(entry) for key, entry in table.items()}


def deform_torsion(n, alg=None, module=None):
    """Deform the torsion graded model by its extremal two-cocycle.

    The cocycle adds layer-valued brackets between layer elements; the
    Jacobi identity is verified exhaustively, the layer stays a nilpotent
    ideal, and the active quaternionic line brackets into the image line.
    """
    if alg is None:
        alg = build_graded(n)
    if module is None:
        module = build_torsion_module(alg)
    model = GradedModel(alg, module)
    table = _copy_table(model.lie.table)
    for idx, coeff in module.extremal_ambient().items():
        (a, b), out = module.decode(idx)
        entry = table.setdefault((a, b), {})
        entry[out] = entry.get(out, mpq(0)) + coeff
        if not entry[out]:
            del entry[out]
    lie = LieAlgebra(model.dim, table, model.lie.labels)
    lie.jacobi_check()

    active = set(model.slot_indices(model.active_slot))
    image = set(model.slot_indices(model.image_slot))
    layer = set(range(model.layer_dim))
    for (a, b), entry in lie.table.items():
        if a in layer and b in layer:
            if not set(entry) <= layer:
                raise MatchFailure(
                    "layer bracket escapes the layer at (%d, %d)" % (a, b))
            if a in active and b in active:
                if not set(entry) <= image:
                    raise MatchFailure(
                        "active line bracket escapes the image line")
            elif entry:
                raise MatchFailure(
                    "deformation touches a non-active layer pair")
    if not lie.is_ideal(model.layer_vectors()):
        raise MatchFailure("layer is not an ideal of the deformed algebra")
    layer_sub = lie.subalgebra(model.layer_vectors(), check_closed=True)
    if not layer_sub.is_nilpotent():
        raise MatchFailure("layer is not nilpotent under the deformation")
    return DeformedAlgebra(model, lie, "torsion extremal two-cocycle")


def deform_curvature(n, alg=None, module=None, bmap=None):
    """Deform the curvature graded model by the equivariant cocycle image.

    The deformation values land in the corner block (the center of the
    positive-weight part), so the layer brackets now take values in the
    annihilator; Jacobi and the containments are verified exhaustively.
    """
    if alg is None:
        alg = build_graded(n)
    if module is None:
        module = build_curvature_module(alg)
    if bmap is None:
        bmap = equivariant_b(n, alg=alg, module=module)
    model = GradedModel(alg, module)
    table = _copy_table(model.lie.table)
    for (a, b), g0vec in bmap.bilinear().items():
        coords = model._ann_solver.coords(g0vec)
        if coords is None:
            raise MatchFailure(
                "deformation value leaves the annihilator at (%d, %d)"
                % (a, b))
        entry = table.setdefault((a, b), {})
        for t, c in enumerate(coords):
            if c:
                entry[model.layer_dim + t] = entry.get(
                    model.layer_dim + t, mpq(0)) + c
        if not entry:
            del table[(a, b)]
    lie = LieAlgebra(model.dim, table, model.lie.labels)
    lie.jacobi_check()

    active = set(model.slot_indices(model.active_slot))
    layer = set(range(model.layer_dim))
    for (a, b), entry in lie.table.items():
        if a in layer and b in layer and entry:
            if not (a in active and b in active):
                raise MatchFailure(
                    "deformation touches a non-active layer pair")
            vec = [mpq(0)] * model.dim
            for t, c in entry.items():
                vec[t] = c
            if not in_span(model.corner, vec):
                raise MatchFailure(
                    "active line bracket escapes the corner block")
    expected_levi = 3 + max(0, 4 * (n - 2) ** 2 - 1)
    fp = lie.fingerprint()
    if fp["levi_dim"] != expected_levi:
        raise MatchFailure(
            "Levi factor dimension %d, expected %d"
            % (fp["levi_dim"], expected_levi))
    return DeformedAlgebra(model, lie, "equivariant curvature cocycle image")


def symmetric_pair_check(deformed):
    """True when layer brackets land entirely outside the layer.

    With the layer as the reductive complement of the annihilator part,
    this is the symmetric-pair condition for the deformed algebra.
    """
    layer = set(range(deformed.model.layer_dim))
    for (a, b), entry in deformed.lie.table.items():
        if a in layer and b in layer:
            if any(t in layer and c for t, c in entry.items()):
                return False
    return True
