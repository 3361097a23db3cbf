"""Right modules over a realized algebra: covers, resolutions, Ext, Tor.

Everything is written once for right modules over an "algebra view" (a
PresentedAlgebra or its opposite); left modules enter as right modules
over the opposite view.  A module is a vertex-graded space with one
action per arrow, in the row convention (v . M_a), so the action of a
path is the composition of its arrow actions in reading order.

Arrow actions are stored sparsely ({row: {col: coeff}}): enveloping
algebras have hundreds of arrows, each acting on a single vertex block.
Actions are validated against the defining relations of the algebra at
construction time, which catches sign errors from the anti-commutative
squares immediately.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import Subspace, left_nullspace, vec_is_zero


class ModuleError(ValueError):
    pass


def sapply(f, vec, smat, ncols):
    out = [f.zero] * ncols
    for i, c in enumerate(vec):
        if c == f.zero:
            continue
        row = smat.get(i)
        if not row:
            continue
        for j, a in row.items():
            out[j] = f.add(out[j], f.mul(c, a))
    return out


def scompose(f, m1, m2):
    """Sparse composition: apply m1, then m2."""
    out: dict = {}
    for i, row1 in m1.items():
        acc: dict = {}
        for k, c in row1.items():
            row2 = m2.get(k)
            if not row2:
                continue
            for j, a in row2.items():
                val = f.add(acc.get(j, f.zero), f.mul(c, a))
                if val == f.zero:
                    acc.pop(j, None)
                else:
                    acc[j] = val
        if acc:
            out[i] = acc
    return out


class RightModule:
    def __init__(self, alg, vertex_of, action, validate=True):
        self.alg = alg
        self.field = alg.field
        self.vertex_of = list(vertex_of)
        self.dim = len(self.vertex_of)
        self.action = action  # arrow name -> sparse matrix {i: {j: c}}
        self._positions = None
        self._wordact: dict[int, dict] = {}
        if validate:
            self.validate()

    def positions(self, vidx: int):
        if self._positions is None:
            self._positions = {}
            for i, v in enumerate(self.vertex_of):
                self._positions.setdefault(v, []).append(i)
        return self._positions.get(vidx, [])

    def act(self, vec, arrow_name):
        return sapply(self.field, vec, self.action[arrow_name], self.dim)

    def act_word(self, vec, word):
        for a in word:
            vec = self.act(vec, a)
        return vec

    def word_matrix(self, word_idx: int) -> dict:
        """Sparse action of an algebra basis word, cached per module."""
        hit = self._wordact.get(word_idx)
        if hit is not None:
            return hit
        alg = self.alg
        f = self.field
        if alg.word_len(word_idx) == 0:
            m = {i: {i: f.one} for i in self.positions(alg.word_src(word_idx))}
        else:
            prev, a = alg.ext_link(word_idx)
            m = scompose(f, self.word_matrix(prev), self.action[a])
        self._wordact[word_idx] = m
        return m

    def element_row(self, i: int, coeffs: dict):
        """Image of basis vector i under an algebra element {word: coeff}."""
        f = self.field
        out = [f.zero] * self.dim
        for j, c in coeffs.items():
            row = self.word_matrix(j).get(i)
            if row:
                for k, a in row.items():
                    out[k] = f.add(out[k], f.mul(c, a))
        return out

    def validate(self):
        f = self.field
        names = {a for a, _, _ in self.alg.arrow_list}
        if set(self.action) != names:
            raise ModuleError("action must cover exactly the arrows")
        for a, s, t in self.alg.arrow_list:
            for i, row in self.action[a].items():
                if self.vertex_of[i] != s:
                    raise ModuleError(f"action of {a} has a row outside its source block")
                for j, c in row.items():
                    if c != f.zero and self.vertex_of[j] != t:
                        raise ModuleError(f"action of {a} leaves its target block")
        arrow_src = {a: s for a, s, _ in self.alg.arrow_list}
        for rel in self.alg.validation_relations():
            # apply each relation to every basis vector at its source vertex
            svert = arrow_src[rel[0][1][0]]
            for i in self.positions(svert):
                unit = [f.zero] * self.dim
                unit[i] = f.one
                acc = [f.zero] * self.dim
                for c, word in rel:
                    img = self.act_word(unit, word)
                    for k in range(self.dim):
                        if img[k] != f.zero:
                            acc[k] = f.add(acc[k], f.mul(c, img[k]))
                if not vec_is_zero(f, acc):
                    raise ModuleError("action violates a defining relation")

    def radical_rows(self):
        rows = []
        for a, _, _ in self.alg.arrow_list:
            for i, srow in self.action[a].items():
                vec = [self.field.zero] * self.dim
                nz = False
                for j, c in srow.items():
                    vec[j] = c
                    nz = nz or c != self.field.zero
                if nz:
                    rows.append(vec)
        return rows

    def top_generators(self):
        """(vertex, lift vector) pairs projecting to a basis of V / V rad."""
        f = self.field
        rad = self.radical_rows()
        by_vertex: dict = {}
        for row in rad:
            nz = next((i for i, c in enumerate(row) if c != f.zero), None)
            if nz is not None:
                by_vertex.setdefault(self.vertex_of[nz], []).append(row)
        gens = []
        for v in sorted(set(self.vertex_of)):
            sp = Subspace(f, self.dim)
            for row in by_vertex.get(v, ()):
                sp.add(row)
            for i in self.positions(v):
                unit = [f.zero] * self.dim
                unit[i] = f.one
                if sp.add(unit):
                    gens.append((v, unit))
        return gens


def simple_module(alg, vidx: int) -> RightModule:
    action = {a: {} for a, _, _ in alg.arrow_list}
    return RightModule(alg, [vidx], action)


def zero_module(alg) -> RightModule:
    action = {a: {} for a, _, _ in alg.arrow_list}
    return RightModule(alg, [], action)


def module_from_words(alg, word_indices) -> RightModule:
    """Right module on a right-multiplication-closed set of basis words."""
    idxs = list(word_indices)
    pos = {w: i for i, w in enumerate(idxs)}
    vertex_of = [alg.word_tgt(w) for w in idxs]
    action = {}
    for a, _, _ in alg.arrow_list:
        aw = alg.arrow_word_index(a)
        m: dict = {}
        for i, w in enumerate(idxs):
            row = {}
            for k, c in alg.mul(w, aw).items():
                j = pos.get(k)
                if j is None:
                    raise ModuleError("word set not closed under the action")
                row[j] = c
            if row:
                m[i] = row
        action[a] = m
    return RightModule(alg, vertex_of, action)


def regular_module(alg) -> RightModule:
    return module_from_words(alg, range(alg.dim))


def dual_regular_module(alg) -> RightModule:
    """D of the left regular module, as a right module over the same view.

    Basis: dual basis of the normal words; (w* . a)(x) = w*(a x).
    """
    n = alg.dim
    vertex_of = [alg.word_src(i) for i in range(n)]
    action = {}
    for a, _, _ in alg.arrow_list:
        aw = alg.arrow_word_index(a)
        m: dict = {}
        for j in range(n):
            for i, c in alg.mul(aw, j).items():
                m.setdefault(i, {})[j] = c
        action[a] = m
    return RightModule(alg, vertex_of, action)


def direct_sum(*mods: RightModule) -> RightModule:
    alg = mods[0].alg
    vertex_of = [v for m in mods for v in m.vertex_of]
    action = {}
    for a, _, _ in alg.arrow_list:
        big: dict = {}
        off = 0
        for m in mods:
            for i, row in m.action[a].items():
                big[off + i] = {off + j: c for j, c in row.items()}
            off += m.dim
        action[a] = big
    return RightModule(alg, vertex_of, action, validate=False)


def submodule(V: RightModule, rows) -> tuple[RightModule, list]:
    """Module on an action-stable span; rows must be vertex-homogeneous.

    Returns the submodule plus its basis rows (embedding into V).
    """
    f = V.field
    by_vertex: dict[int, Subspace] = {}
    basis_rows, vertex_of = [], []
    for row in rows:
        nz = [i for i, c in enumerate(row) if c != f.zero]
        if not nz:
            continue
        v = V.vertex_of[nz[0]]
        if any(V.vertex_of[i] != v for i in nz):
            raise ModuleError("submodule generator mixes vertices")
        sp = by_vertex.setdefault(v, Subspace(f, V.dim))
        if sp.add(row):
            basis_rows.append(list(row))
            vertex_of.append(v)
    coords = {v: Subspace(f, V.dim, track_coords=True) for v in by_vertex}
    order: dict = {v: [] for v in by_vertex}
    for i, (row, v) in enumerate(zip(basis_rows, vertex_of)):
        coords[v].add(row)
        order[v].append(i)
    action = {}
    for a, s, t in V.alg.arrow_list:
        m: dict = {}
        for i, row in enumerate(basis_rows):
            if vertex_of[i] != s:
                continue
            img = V.act(row, a)
            if vec_is_zero(f, img):
                continue
            sp = coords.get(t)
            if sp is None:
                raise ModuleError("span not stable under the action")
            res, comb = sp.reduce_with_coords(img)
            if not vec_is_zero(f, res):
                raise ModuleError("span not stable under the action")
            srow = {}
            for k, c in enumerate(comb):
                if c != f.zero:
                    srow[order[t][k]] = c
            if srow:
                m[i] = srow
        action[a] = m
    return RightModule(V.alg, vertex_of, action, validate=False), basis_rows


def quotient_module(V: RightModule, rows) -> tuple[RightModule, list, object]:
    """V / span(rows); returns (module, complement unit indices, projector)."""
    f = V.field
    span = Subspace(f, V.dim)
    for row in rows:
        span.add(row)
    sp2 = Subspace(f, V.dim, track_coords=True)
    for row in span.rows:
        sp2.add(list(row))
    nspan = span.dim
    picks, pick_cols = [], []
    col = nspan
    for i in range(V.dim):
        unit = [f.zero] * V.dim
        unit[i] = f.one
        if sp2.add(unit):
            picks.append(i)
            pick_cols.append(col)
        col += 1

    def project(vec):
        res, comb = sp2.reduce_with_coords(vec)
        if not vec_is_zero(f, res):
            raise ModuleError("projector applied outside the span")
        return [comb[c] for c in pick_cols]

    vertex_of = [V.vertex_of[i] for i in picks]
    action = {}
    for a, s, _ in V.alg.arrow_list:
        m: dict = {}
        for r, i in enumerate(picks):
            if V.vertex_of[i] != s:
                continue
            srow = V.action[a].get(i)
            if not srow:
                continue
            img = [f.zero] * V.dim
            for j, c in srow.items():
                img[j] = c
            prow = project(img)
            entries = {k: c for k, c in enumerate(prow) if c != f.zero}
            if entries:
                m[r] = entries
        action[a] = m
    Q = RightModule(V.alg, vertex_of, action, validate=False)
    return Q, picks, project


# ---------------------------------------------------------------------------
# Projective covers and minimal resolutions
# ---------------------------------------------------------------------------

@dataclass
class ProjectiveSum:
    """Concrete direct sum of indecomposable projectives e_v A."""

    module: RightModule
    gen_vertices: list
    labels: list  # position -> (generator index, algebra word index)


def projective_sum(alg, gen_vertices) -> ProjectiveSum:
    labels = []
    for r, v in enumerate(gen_vertices):
        for w in range(alg.dim):
            if alg.word_src(w) == v:
                labels.append((r, w))
    pos = {lab: i for i, lab in enumerate(labels)}
    vertex_of = [alg.word_tgt(w) for _, w in labels]
    action = {}
    for a, _, _ in alg.arrow_list:
        aw = alg.arrow_word_index(a)
        m: dict = {}
        for i, (r, w) in enumerate(labels):
            row = {pos[(r, k)]: c for k, c in alg.mul(w, aw).items()}
            if row:
                m[i] = row
        action[a] = m
    return ProjectiveSum(
        RightModule(alg, vertex_of, action, validate=False), list(gen_vertices), labels
    )


@dataclass
class CoverData:
    proj: ProjectiveSum
    lifts: list  # generator images in the covered module's coordinates
    diff: list  # concrete matrix (dense rows) proj -> covered module


def _cover_from_gens(V: RightModule, gens) -> CoverData:
    ps = projective_sum(V.alg, [v for v, _ in gens])
    lifts = [vec for _, vec in gens]
    phi: dict[tuple, list] = {}
    diff = []
    for (r, w) in ps.labels:
        if V.alg.word_len(w) == 0:
            row = list(lifts[r])
        else:
            prev, a = V.alg.ext_link(w)
            row = V.act(phi[(r, prev)], a)
        phi[(r, w)] = row
        diff.append(row)
    return CoverData(ps, lifts, diff)


def projective_cover(V: RightModule) -> CoverData:
    """Minimal cover: one projective summand per top basis element."""
    return _cover_from_gens(V, V.top_generators())


def kernel_rows(diff, vertex_of_domain, vertex_of_codomain, f):
    """Vertex-homogeneous basis of {v : v . diff = 0}."""
    out = []
    for v in sorted(set(vertex_of_domain)):
        rows_idx = [i for i, x in enumerate(vertex_of_domain) if x == v]
        cols_idx = [j for j, x in enumerate(vertex_of_codomain) if x == v]
        block = [[diff[i][j] for j in cols_idx] for i in rows_idx]
        for kv in left_nullspace(f, block):
            full = [f.zero] * len(vertex_of_domain)
            for local, i in enumerate(rows_idx):
                full[i] = kv[local]
            out.append(full)
    return out


@dataclass
class ResolutionTrace:
    """Minimal projective resolution: ... -> P_1 -> P_0 -> V -> 0.

    steps[k] records the projective summand vertices, generator images in
    the previous stage's coordinates, the concrete differential matrix
    over the field, and the per-step rank/dimension.  `completed` is
    False when the cap was reached before the syzygy vanished.
    """

    steps: list = field(default_factory=list)
    completed: bool = False
    minimal: bool = True
    cap: int = 0

    def pd(self):
        """Projective dimension; 0 for the zero module by convention."""
        if not self.completed:
            return None
        return max(len(self.steps) - 1, 0)

    def summands(self, k):
        return self.steps[k]["vertices"]


def _embed(f, vec, rows, ncols):
    out = [f.zero] * ncols
    for k, c in enumerate(vec):
        if c == f.zero:
            continue
        row = rows[k]
        for j in range(ncols):
            if row[j] != f.zero:
                out[j] = f.add(out[j], f.mul(c, row[j]))
    return out


def _resolve_loop(V: RightModule, cap: int, pad_vertex=None) -> ResolutionTrace:
    f = V.field
    trace = ResolutionTrace(cap=cap, minimal=pad_vertex is None)
    cur = V
    embed_rows = None  # basis of cur inside the previous projective
    prev_dim = V.dim
    for _ in range(cap + 1):
        if cur.dim == 0:
            trace.completed = True
            return trace
        gens = cur.top_generators()
        if pad_vertex is not None:
            gens = gens + [(pad_vertex, [f.zero] * cur.dim)]
        cd = _cover_from_gens(cur, gens)
        if embed_rows is None:
            lifts = cd.lifts
            diff = cd.diff
        else:
            lifts = [_embed(f, v, embed_rows, prev_dim) for v in cd.lifts]
            diff = [_embed(f, v, embed_rows, prev_dim) for v in cd.diff]
        trace.steps.append(
            {
                "vertices": list(cd.proj.gen_vertices),
                "labels": cd.proj.labels,
                "lifts": lifts,
                "diff": diff,
                "rank": cur.dim,  # covers are surjective
                "dim": cd.proj.module.dim,
            }
        )
        krows = kernel_rows(cd.diff, cd.proj.module.vertex_of, cur.vertex_of, f)
        if not krows:
            trace.completed = True
            return trace
        cur, embed_rows = submodule(cd.proj.module, krows)
        prev_dim = cd.proj.module.dim
    return trace


def resolve(V: RightModule, cap: int) -> ResolutionTrace:
    """Iterated minimal covers with exact kernels, up to cap+1 stages.

    Lifts and differentials of step n are stored in the coordinates of the
    *previous projective* P_{n-1} (for n = 0, of V itself), so the trace
    is a genuine complex of concrete matrices.
    """
    return _resolve_loop(V, cap)


def resolve_nonminimal(V: RightModule, cap: int, pad_vertex: int) -> ResolutionTrace:
    """Exact but non-minimal resolution: every cover gains a superfluous
    projective summand at pad_vertex.  Never terminates on its own, so it
    always runs to the cap; used to cross-check that Ext and Tor do not
    depend on minimality."""
    return _resolve_loop(V, cap, pad_vertex=pad_vertex)


# ---------------------------------------------------------------------------
# Ext and Tor from a resolution trace
# ---------------------------------------------------------------------------

def _hom_coords(Y: RightModule, gen_vertices):
    coords = []
    for r, v in enumerate(gen_vertices):
        for p in Y.positions(v):
            coords.append((r, p))
    return coords


def _induced_hom_map(trace, n, Y: RightModule):
    """Matrix of Hom(P_{n-1}, Y) -> Hom(P_n, Y), precomposition with d_n."""
    f = Y.field
    prev = trace.steps[n - 1]
    cur = trace.steps[n]
    dom = _hom_coords(Y, prev["vertices"])
    cod = _hom_coords(Y, cur["vertices"])
    cod_pos = {lab: i for i, lab in enumerate(cod)}
    mat = [[f.zero] * len(cod) for _ in dom]
    for di, (r, p) in enumerate(dom):
        for s, lift in enumerate(cur["lifts"]):
            acc = [f.zero] * Y.dim
            touched = False
            for idx, c in enumerate(lift):
                if c == f.zero:
                    continue
                rr, j = prev["labels"][idx]
                if rr != r:
                    continue
                row = Y.word_matrix(j).get(p)
                if row:
                    for q, a in row.items():
                        acc[q] = f.add(acc[q], f.mul(c, a))
                touched = True
            if touched:
                for q in Y.positions(cur["vertices"][s]):
                    if acc[q] != f.zero:
                        mat[di][cod_pos[(s, q)]] = acc[q]
    return mat, len(dom), len(cod)


def ext_dims(trace: ResolutionTrace, Y: RightModule, n_max: int):
    """dim Ext^n for n = 1..n_max from the resolution trace."""
    from .linalg import rank as mat_rank

    f = Y.field
    nsteps = len(trace.steps)
    if not trace.completed and nsteps < n_max + 2:
        raise ModuleError("resolution too short for the requested Ext degree")
    dims_c = [
        len(_hom_coords(Y, trace.steps[n]["vertices"])) if n < nsteps else 0
        for n in range(0, n_max + 2)
    ]
    ranks = []
    for n in range(1, n_max + 2):
        if n < nsteps:
            m, _, _ = _induced_hom_map(trace, n, Y)
            ranks.append(mat_rank(f, m) if m else 0)
        else:
            ranks.append(0)
    out = []
    for n in range(1, n_max + 1):
        # Ext^n = ker(delta^{n+1}) / im(delta^n) on Hom(P_n, Y)
        out.append(dims_c[n] - ranks[n] - ranks[n - 1])
    return out


def _induced_tensor_map(trace, n, N_op: RightModule):
    """Matrix of P_n (x) N -> P_{n-1} (x) N for a left module N.

    N is supplied as a right module over the opposite view, whose word
    action implements left multiplication by the original words.
    """
    f = N_op.field
    prev = trace.steps[n - 1]
    cur = trace.steps[n]
    dom = _hom_coords(N_op, cur["vertices"])
    cod = _hom_coords(N_op, prev["vertices"])
    cod_pos = {lab: i for i, lab in enumerate(cod)}
    mat = [[f.zero] * len(cod) for _ in dom]
    for di, (s, p) in enumerate(dom):
        lift = cur["lifts"][s]
        for idx, c in enumerate(lift):
            if c == f.zero:
                continue
            r, j = prev["labels"][idx]
            row = N_op.word_matrix(j).get(p)
            if not row:
                continue
            for q in N_op.positions(prev["vertices"][r]):
                a = row.get(q)
                if a is not None and a != f.zero:
                    cur_val = mat[di][cod_pos[(r, q)]]
                    mat[di][cod_pos[(r, q)]] = f.add(cur_val, f.mul(c, a))
    return mat, len(dom), len(cod)


def tor_dims(trace: ResolutionTrace, N_op: RightModule, n_max: int):
    """dim Tor_n for n = 1..n_max; N given over the opposite view."""
    from .linalg import rank as mat_rank

    f = N_op.field
    nsteps = len(trace.steps)
    if not trace.completed and nsteps < n_max + 2:
        raise ModuleError("resolution too short for the requested Tor degree")
    dims_c = [
        len(_hom_coords(N_op, trace.steps[n]["vertices"])) if n < nsteps else 0
        for n in range(0, n_max + 2)
    ]
    ranks = []
    for n in range(1, n_max + 2):
        if n < nsteps:
            m, _, _ = _induced_tensor_map(trace, n, N_op)
            ranks.append(mat_rank(f, m) if m else 0)
        else:
            ranks.append(0)
    out = []
    for n in range(1, n_max + 1):
        # Tor_n = ker(d_n (x) N) / im(d_{n+1} (x) N)
        out.append(dims_c[n] - ranks[n - 1] - ranks[n])
    return out


def is_projective(V: RightModule) -> bool:
    """Projectivity via the cover: iso iff dimensions agree."""
    if V.dim == 0:
        return True
    cd = projective_cover(V)
    return cd.proj.module.dim == V.dim


def pd_of(V: RightModule, cap: int):
    return resolve(V, cap).pd()
