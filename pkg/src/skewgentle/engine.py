"""Exact realization of kQ/<R> for homogeneous quadratic relations.

`realize` runs a degree-synchronous noncommutative Buchberger completion
under the degree-lexicographic order (arrow order = declaration order).
Input relations must be homogeneous of path length 2; completion may add
rewrite rules of higher degree.  Because normal words are closed under
subwords, the first degree with no normal words certifies that every
higher degree vanishes, which is the finite-dimensionality certificate.

`oracle_dimension` is the independent cross-check: it never rewrites.  It
enumerates paths degree by degree and computes the ideal layer by exact
(sparse) Gaussian elimination on two-sided multiples of the relations.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fields import Field
from .quiver import QuiverSpec, RelationExpr, QuiverError


class EngineError(ValueError):
    pass


class CapExceeded(EngineError):
    """No finite-dimensionality certificate within the degree cap."""

    def __init__(self, message, cap, witness=None):
        super().__init__(message)
        self.cap = cap
        self.witness = witness


def _deglex(word):
    return (len(word), word)


class PresentedAlgebra:
    """kQ/<R> with its normal-word basis and rewrite rules.

    Basis entries are paths: trivial paths first (in vertex declaration
    order), then normal words by (degree, lex).  Structure constants are
    computed lazily and cached per pair; `structure_constants` materializes
    the full sparse table.
    """

    def __init__(self, spec, field, rules, basis, cert_degree, arrow_index):
        self.spec = spec
        self.field = field
        self.groebner = rules  # dict tip-word -> dict word -> coeff
        self._basis = basis  # list of (word, src_vidx, tgt_vidx)
        self.cert_degree = cert_degree
        self._arrow_index = arrow_index  # arrow name -> position
        self.vertex_names = list(spec.vertices)
        self._vidx = {v: i for i, v in enumerate(spec.vertices)}
        self.dim = len(basis)
        self._tip_lengths = sorted({len(t) for t in rules})
        self._windex = {}
        self._idem = [None] * len(spec.vertices)
        for i, (w, s, t) in enumerate(basis):
            if w:
                self._windex[w] = i
            else:
                self._idem[s] = i
        self._mul_cache: dict[tuple[int, int], dict] = {}
        self._sc_table = None
        self._ext = None
        self.arrow_list = [
            (name, self._vidx[s], self._vidx[t]) for name, s, t in spec.arrows
        ]
        self._arrow_names = [name for name, _, _ in spec.arrows]

    # -- basis bookkeeping ---------------------------------------------------
    @property
    def dimension(self) -> int:
        return self.dim

    @property
    def basis(self):
        """Basis words as (source vertex, tuple of arrow names)."""
        return [
            (self.vertex_names[s], tuple(self._arrow_names[a] for a in w))
            for w, s, _ in self._basis
        ]

    def word_src(self, i: int) -> int:
        return self._basis[i][1]

    def word_tgt(self, i: int) -> int:
        return self._basis[i][2]

    def word_len(self, i: int) -> int:
        return len(self._basis[i][0])

    def idem_index(self, vidx: int) -> int:
        return self._idem[vidx]

    def arrow_word_index(self, name: str) -> int:
        return self._windex[(self._arrow_index[name],)]

    def vertex_index(self, name: str) -> int:
        return self._vidx[name]

    def ext_link(self, i: int):
        """(prefix basis index, last arrow name) for a positive-length word."""
        w, s, _ = self._basis[i]
        if not w:
            raise EngineError("trivial path has no extension link")
        if len(w) == 1:
            return self._idem[s], self._arrow_names[w[0]]
        return self._windex[w[:-1]], self._arrow_names[w[-1]]

    def validation_relations(self):
        out = []
        for rel in self.spec.relations:
            out.append(
                [
                    (self.field.of(c), tuple(p))
                    for c, p in rel.terms
                ]
            )
        return out

    # -- arithmetic ------------------------------------------------------------
    def _nf_word(self, word):
        """Normal form of an arrow-index word as dict basis_index -> coeff."""
        poly = _reduce({word: self.field.one}, self.groebner, self._tip_lengths, self.field)
        out = {}
        for w, c in poly.items():
            i = self._windex.get(w)
            if i is None:
                raise EngineError("normal form left the certified basis (engine bug)")
            out[i] = c
        return out

    def mul(self, i: int, j: int) -> dict:
        """Structure constants of basis_i * basis_j (sparse, cached)."""
        key = (i, j)
        hit = self._mul_cache.get(key)
        if hit is not None:
            return hit
        wi, si, ti = self._basis[i]
        wj, sj, tj = self._basis[j]
        if ti != sj:
            res: dict = {}
        elif not wi:
            res = {j: self.field.one}
        elif not wj:
            res = {i: self.field.one}
        else:
            res = self._nf_word(wi + wj)
        self._mul_cache[key] = res
        return res

    @property
    def structure_constants(self):
        """Full sparse table {(i, j): {k: coeff}} of nonzero products."""
        if self._sc_table is None:
            table = {}
            by_src = {}
            for j, (_, sj, _) in enumerate(self._basis):
                by_src.setdefault(sj, []).append(j)
            for i, (_, _, ti) in enumerate(self._basis):
                for j in by_src.get(ti, ()):
                    prod = self.mul(i, j)
                    if prod:
                        table[(i, j)] = prod
            self._sc_table = table
        return self._sc_table

    # -- elements ---------------------------------------------------------------
    def zero(self):
        return AlgebraElement(self, {})

    def one(self):
        return AlgebraElement(self, {i: self.field.one for i in self._idem if i is not None})

    def idempotent(self, vertex: str):
        return AlgebraElement(self, {self._idem[self._vidx[vertex]]: self.field.one})

    def arrow(self, name: str):
        return AlgebraElement(self, {self.arrow_word_index(name): self.field.one})

    def path_element(self, arrow_names):
        """Normal form of a path given by arrow names (0 allowed)."""
        names = list(arrow_names)
        if not names:
            raise EngineError("use idempotent(v) for trivial paths")
        word = tuple(self._arrow_index[a] for a in names)
        src = {n: s for n, s, _ in self.spec.arrows}
        tgt = {n: t for n, _, t in self.spec.arrows}
        for a, b in zip(names, names[1:]):
            if tgt[a] != src[b]:
                raise QuiverError(f"non-composable path at {a!r}*{b!r}")
        return AlgebraElement(self, self._nf_word(word))

    def opposite(self):
        return OppositeAlgebra(self)

    def to_json(self):
        """Basis and structure constants with coefficients as strings."""
        return {
            "schema": "skewgentle-algebra/1",
            "field": self.field.name,
            "dimension": self.dim,
            "basis": [
                {"source": v, "arrows": list(w)} for v, w in self.basis
            ],
            "constants": {
                f"{i},{j}": [[k, str(c)] for k, c in sorted(prod.items())]
                for (i, j), prod in sorted(self.structure_constants.items())
            },
        }


@dataclass
class AlgebraElement:
    """Sparse coefficient vector over the normal-word basis."""

    alg: PresentedAlgebra
    coeffs: dict

    def __post_init__(self):
        z = self.alg.field.zero
        self.coeffs = {i: c for i, c in self.coeffs.items() if c != z}

    def is_zero(self) -> bool:
        return not self.coeffs

    def __add__(self, other):
        self._chk(other)
        f = self.alg.field
        out = dict(self.coeffs)
        for i, c in other.coeffs.items():
            out[i] = f.add(out.get(i, f.zero), c)
        return AlgebraElement(self.alg, out)

    def __sub__(self, other):
        return self + other.scale(self.alg.field.neg(self.alg.field.one))

    def scale(self, c):
        f = self.alg.field
        return AlgebraElement(self.alg, {i: f.mul(c, a) for i, a in self.coeffs.items()})

    def __mul__(self, other):
        self._chk(other)
        f = self.alg.field
        out: dict = {}
        for i, ci in self.coeffs.items():
            for j, cj in other.coeffs.items():
                prod = self.alg.mul(i, j)
                if prod:
                    c = f.mul(ci, cj)
                    for k, ck in prod.items():
                        out[k] = f.add(out.get(k, f.zero), f.mul(c, ck))
        return AlgebraElement(self.alg, out)

    def __eq__(self, other):
        return isinstance(other, AlgebraElement) and self.alg is other.alg and self.coeffs == other.coeffs

    def _chk(self, other):
        if self.alg is not other.alg:
            raise EngineError("elements of different algebras")

    def to_vector(self):
        f = self.alg.field
        v = [f.zero] * self.alg.dim
        for i, c in self.coeffs.items():
            v[i] = c
        return v


def multiply(a: AlgebraElement, b: AlgebraElement) -> AlgebraElement:
    """Bilinear associative product in normal form."""
    return a * b


class OppositeAlgebra:
    """Read-only opposite-algebra view sharing the basis index set."""

    def __init__(self, base: PresentedAlgebra):
        self.base = base
        self.field = base.field
        self.vertex_names = base.vertex_names
        self.dim = base.dim
        self.arrow_list = [(name, t, s) for name, s, t in base.arrow_list]

    def word_src(self, i):
        return self.base.word_tgt(i)

    def word_tgt(self, i):
        return self.base.word_src(i)

    def word_len(self, i):
        return self.base.word_len(i)

    def idem_index(self, vidx):
        return self.base.idem_index(vidx)

    def arrow_word_index(self, name):
        return self.base.arrow_word_index(name)

    def mul(self, i, j):
        return self.base.mul(j, i)

    def ext_link(self, i):
        # prefix of the reversed word = original word minus its first arrow
        w, s, t = self.base._basis[i]
        if not w:
            raise EngineError("trivial path has no extension link")
        if len(w) == 1:
            return self.base._idem[t], self.base._arrow_names[w[0]]
        return self.base._windex[w[1:]], self.base._arrow_names[w[0]]

    def validation_relations(self):
        return [
            [(c, tuple(reversed(p))) for c, p in rel]
            for rel in self.base.validation_relations()
        ]

    def opposite(self):
        return self.base


# ---------------------------------------------------------------------------
# Rewriting and completion
# ---------------------------------------------------------------------------

def _find_tip(word, rules, tip_lengths):
    n = len(word)
    for L in tip_lengths:
        if L > n:
            break
        for pos in range(n - L + 1):
            if word[pos : pos + L] in rules:
                return pos, L
    return None


def _reduce(poly, rules, tip_lengths, field):
    """Full normal form of {word: coeff}; terminates since rewrites drop deglex."""
    z = field.zero
    work = True
    while work:
        work = False
        for w in sorted(poly, key=_deglex, reverse=True):
            c = poly.get(w)
            if c is None or c == z:
                poly.pop(w, None)
                continue
            hit = _find_tip(w, rules, tip_lengths)
            if hit is None:
                continue
            pos, L = hit
            rhs = rules[w[pos : pos + L]]
            pre, suf = w[:pos], w[pos + L :]
            del poly[w]
            for rw, rc in rhs.items():
                nw = pre + rw + suf
                nc = field.add(poly.get(nw, z), field.mul(c, rc))
                if nc == z:
                    poly.pop(nw, None)
                else:
                    poly[nw] = nc
            work = True
            break
    return poly


def realize(spec: QuiverSpec, field: Field, degree_cap: int = 64) -> PresentedAlgebra:
    """Realize kQ/<relations> with a finite-dimensionality certificate.

    Raises CapExceeded when no degree <= degree_cap has zero normal words
    (the quotient is then not certified finite; nothing is truncated).
    """
    if degree_cap < 2:
        raise EngineError("degree_cap must be >= 2")
    for rel in spec.relations:
        if rel.length() != 2:
            raise EngineError("engine requires homogeneous quadratic relations")
    arrow_index = {name: i for i, (name, _, _) in enumerate(spec.arrows)}
    vidx = {v: i for i, v in enumerate(spec.vertices)}
    asrc = [vidx[s] for _, s, _ in spec.arrows]
    atgt = [vidx[t] for _, _, t in spec.arrows]
    arrows_from = {}
    for i in range(len(spec.arrows)):
        arrows_from.setdefault(asrc[i], []).append(i)

    rules: dict[tuple, dict] = {}
    tip_lengths: list[int] = []

    def insert(poly) -> bool:
        poly = _reduce(poly, rules, tip_lengths, field)
        if not poly:
            return False
        tip = max(poly, key=_deglex)
        lead = poly[tip]
        rhs = {
            w: field.neg(field.div(c, lead)) for w, c in poly.items() if w != tip
        }
        rules[tip] = rhs
        if len(tip) not in tip_lengths:
            tip_lengths.append(len(tip))
            tip_lengths.sort()
        return True

    for rel in spec.relations:
        poly = {}
        for coef, path in rel.terms:
            w = tuple(arrow_index[a] for a in path)
            c = field.add(poly.get(w, field.zero), field.of(coef))
            if c == field.zero:
                poly.pop(w, None)
            else:
                poly[w] = c
        insert(poly)

    normal = {1: [(a,) for a in range(len(spec.arrows))]}
    cert = None
    if not normal[1]:
        cert = 1
    else:
        for d in range(2, degree_cap + 1):
            if d >= 3:
                # resolve every overlap ambiguity of total degree d
                added = True
                while added:
                    added = False
                    items = list(rules.items())
                    for t1, r1 in items:
                        for t2, r2 in items:
                            k = len(t1) + len(t2) - d
                            if k < 1 or k >= min(len(t1), len(t2)):
                                continue
                            if t1[len(t1) - k :] != t2[:k]:
                                continue
                            suf = t2[k:]
                            pre = t1[: len(t1) - k]
                            spoly: dict = {}
                            for w, c in r1.items():
                                nw = w + suf
                                nc = field.add(spoly.get(nw, field.zero), c)
                                spoly[nw] = nc
                            for w, c in r2.items():
                                nw = pre + w
                                nc = field.sub(spoly.get(nw, field.zero), c)
                                spoly[nw] = nc
                            if insert(spoly):
                                added = True
            prev = normal[d - 1]
            cur = []
            for w in prev:
                for a in arrows_from.get(atgt[w[-1]], ()):
                    nw = w + (a,)
                    ok = True
                    for L in tip_lengths:
                        if L <= d and nw[d - L :] in rules:
                            ok = False
                            break
                    if ok:
                        cur.append(nw)
            normal[d] = cur
            if not cur:
                cert = d
                break
        if cert is None:
            raise CapExceeded(
                f"no finite-dimensionality certificate within degree cap {degree_cap}",
                degree_cap,
            )

    # interreduce right-hand sides for the reduced rewriting system
    for tip in list(rules):
        rhs = dict(rules[tip])
        rules[tip] = _reduce(rhs, rules, tip_lengths, field)

    basis = [((), vidx[v], vidx[v]) for v in spec.vertices]
    for d in range(1, cert):
        for w in normal[d]:
            basis.append((w, asrc[w[0]], atgt[w[-1]]))
    return PresentedAlgebra(spec, field, rules, basis, cert, arrow_index)


def radical_filtration(alg: PresentedAlgebra):
    """Bases of rad^0 >= rad^1 >= ... down to the last nonzero layer.

    For these length-graded quotients the radical is the span of the
    positive-length normal words, so layer j is the words of length >= j.
    """
    layers = []
    j = 0
    while True:
        layer = [i for i in range(alg.dim) if alg.word_len(i) >= j]
        if not layer:
            break
        layers.append(layer)
        j += 1
    return layers


# ---------------------------------------------------------------------------
# Independent brute-force dimension oracle
# ---------------------------------------------------------------------------

class OracleCapExceeded(EngineError):
    def __init__(self, message, cap, last_dim):
        super().__init__(message)
        self.cap = cap
        self.last_dim = last_dim


def oracle_dimension(spec: QuiverSpec, field: Field, length_cap: int) -> int:
    """dim kQ/<relations> by per-degree path enumeration and elimination.

    Shares no code with the rewriting engine: the ideal layer at each
    degree is spanned by two-sided multiples u*r*v of the relations, with
    monomial relations handled as forbidden subwords and the remaining
    generators eliminated sparsely over the surviving paths.
    """
    from .linalg import SparseSubspace

    arrow_index = {name: i for i, (name, _, _) in enumerate(spec.arrows)}
    vidx = {v: i for i, v in enumerate(spec.vertices)}
    asrc = [vidx[s] for _, s, _ in spec.arrows]
    atgt = [vidx[t] for _, _, t in spec.arrows]
    arrows_from = {}
    for i in range(len(spec.arrows)):
        arrows_from.setdefault(asrc[i], []).append(i)

    mono: set[tuple] = set()
    multi = []
    for rel in spec.relations:
        terms = [(field.of(c), tuple(arrow_index[a] for a in p)) for c, p in rel.terms]
        if len(terms) == 1:
            mono.add(terms[0][1])
        else:
            multi.append(terms)
    mono_lengths = sorted({len(m) for m in mono})

    def dead(word) -> bool:
        for L in mono_lengths:
            for pos in range(len(word) - L + 1):
                if word[pos : pos + L] in mono:
                    return True
        return False

    # alive[d] = paths of length d with no forbidden subword, by source/target
    alive = {0: [()]}  # placeholder; degree 0 handled via vertices
    total = len(spec.vertices)
    alive_words = {1: [(a,) for a in range(len(spec.arrows)) if not dead((a,))]}
    # index alive paths by endpoints for generator enumeration (degree 0 = trivial)
    by_tgt = {0: {v: [None] for v in range(len(spec.vertices))}}
    by_src = {0: {v: [None] for v in range(len(spec.vertices))}}

    def endpoints(word):
        return asrc[word[0]], atgt[word[-1]]

    d = 0
    while True:
        d += 1
        if d == 1:
            cur = alive_words[1]
        else:
            cur = []
            for w in alive_words[d - 1]:
                for a in arrows_from.get(atgt[w[-1]], ()):
                    nw = w + (a,)
                    ok = True
                    for L in mono_lengths:
                        if L <= d and nw[d - L :] in mono:
                            ok = False
                            break
                    if ok:
                        cur.append(nw)
            alive_words[d] = cur
        index = {w: i for i, w in enumerate(cur)}
        by_tgt[d] = {}
        by_src[d] = {}
        for w in cur:
            s, t = endpoints(w)
            by_tgt[d].setdefault(t, []).append(w)
            by_src[d].setdefault(s, []).append(w)

        span = SparseSubspace(field)
        for terms in multi:
            ell = len(terms[0][1])
            if ell > d:
                continue
            rs = asrc[terms[0][1][0]]
            rt = atgt[terms[0][1][-1]]
            for du in range(0, d - ell + 1):
                dv = d - ell - du
                us = by_tgt.get(du, {}).get(rs, [])
                vs = by_src.get(dv, {}).get(rt, [])
                for u in us:
                    uw = () if u is None else u
                    for v in vs:
                        vw = () if v is None else v
                        vec = {}
                        for c, w in terms:
                            full = uw + w + vw
                            if dead(full):
                                continue
                            i = index[full]
                            nc = field.add(vec.get(i, field.zero), c)
                            if nc == field.zero:
                                vec.pop(i, None)
                            else:
                                vec[i] = nc
                        if vec:
                            span.add(vec)
        dim_d = len(cur) - span.dim
        if dim_d == 0:
            return total
        total += dim_d
        if d >= length_cap:
            raise OracleCapExceeded(
                f"paths still alive modulo the ideal at length cap {length_cap}",
                length_cap,
                dim_d,
            )


# ---------------------------------------------------------------------------
# Enveloping-algebra presentation (tensor quiver of A^op and A)
# ---------------------------------------------------------------------------

def opposite_spec(spec: QuiverSpec) -> QuiverSpec:
    """The opposite presentation: reversed arrows, reversed relation words."""
    arrows = tuple((name, t, s) for name, s, t in spec.arrows)
    rels = tuple(
        RelationExpr(tuple((c, tuple(reversed(p))) for c, p in rel.terms))
        for rel in spec.relations
    )
    return QuiverSpec(spec.vertices, arrows, rels, spec.special)


def tensor_vertex(i: str, j: str) -> str:
    return f"{i}__x__{j}"


def enveloping_spec(spec: QuiverSpec) -> QuiverSpec:
    """Quiver presentation of A^op (x) A for a quadratic presentation of A.

    Right modules over this algebra are A-A-bimodules, acted on by
    x . (u (x) v) = u x v.  Relations: both lifted relation families plus
    the square commutation relations; all homogeneous of length 2.
    """
    op = opposite_spec(spec)
    verts = tuple(tensor_vertex(i, j) for i in spec.vertices for j in spec.vertices)
    arrows = []
    for name, s, t in op.arrows:
        for j in spec.vertices:
            arrows.append((f"L__{name}__{j}", tensor_vertex(s, j), tensor_vertex(t, j)))
    for name, s, t in spec.arrows:
        for i in spec.vertices:
            arrows.append((f"R__{name}__{i}", tensor_vertex(i, s), tensor_vertex(i, t)))
    rels = []
    for rel in op.relations:
        for j in spec.vertices:
            rels.append(
                RelationExpr(
                    tuple((c, tuple(f"L__{a}__{j}" for a in p)) for c, p in rel.terms)
                )
            )
    for rel in spec.relations:
        for i in spec.vertices:
            rels.append(
                RelationExpr(
                    tuple((c, tuple(f"R__{a}__{i}" for a in p)) for c, p in rel.terms)
                )
            )
    from fractions import Fraction

    for aname, as_, at in op.arrows:
        for bname, bs, bt in spec.arrows:
            p1 = (f"L__{aname}__{bs}", f"R__{bname}__{at}")
            p2 = (f"R__{bname}__{as_}", f"L__{aname}__{bt}")
            rels.append(RelationExpr(((Fraction(1), p1), (Fraction(-1), p2))))
    return QuiverSpec(verts, tuple(arrows), tuple(rels), ())
