"""The vertex-splitting construction and its structural probes.

`split_triple` produces the quiver with relations (Q^A, I^A) of the
quotient algebra attached to a validated triple: every special vertex
splits into a plus and a minus copy, arrows multiply by the 1/2/2/4 rule,
relations through an ordinary middle vertex lift to zero relations in all
sign variants, and relations through a special middle vertex lift to
anti-commutative squares, stored as two-term sums p + p'.

`build_gamma` produces the companion gentle pair (Q^Gamma, I^Gamma) with
its order-2 diagram automorphism (ordinary vertices doubled instead).

`structure_probes` re-checks, on the realized algebra, the structural
facts the corner computations later rely on; a probe failure therefore
always indicates a construction bug and carries the witness path.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .engine import PresentedAlgebra
from .gentle import SkewGentleTriple
from .quiver import QuiverSpec, RelationExpr

PLUS, MINUS, ORD = "p", "m", "o"


def split_vertex_name(v: str, sign: str) -> str:
    return f"{v}__{sign}"


def split_arrow_name(a: str, left: str, right: str) -> str:
    if left == ORD and right == ORD:
        return a
    return f"{a}__{left}_{right}"


@dataclass(frozen=True)
class SplitQuiver:
    spec: QuiverSpec
    vertex_kind: dict  # split vertex -> "ordinary" | "plus" | "minus"
    origin: dict  # split vertex/arrow name -> original name
    minus_idempotent_vertices: tuple[str, ...]

    def minus_vertices(self):
        return [v for v in self.spec.vertices if self.vertex_kind[v] == "minus"]

    def plus_vertices(self):
        return [v for v in self.spec.vertices if self.vertex_kind[v] == "plus"]


@dataclass(frozen=True)
class GammaPair:
    spec: QuiverSpec
    vertex_action: dict  # involution on Q^Gamma_0
    arrow_action: dict  # involution on Q^Gamma_1


def _signs(vertex: str, special: set) -> list[str]:
    return [PLUS, MINUS] if vertex in special else [ORD]


def split_triple(triple: SkewGentleTriple) -> SplitQuiver:
    """Build (Q^A, I^A) from the triple.

    Arrow multiplicity by endpoint kinds is 1 (ordinary/ordinary), 2 (one
    special endpoint) or 4 (both special); the plus copy of a split item
    is always listed first, which fixes the symmetric +/- choice.
    """
    base = triple.base
    special = set(triple.special_vertices)
    vertices: list[str] = []
    vkind: dict = {}
    origin: dict = {}
    for v in base.vertices:
        if v in special:
            for s in (PLUS, MINUS):
                sv = split_vertex_name(v, s)
                vertices.append(sv)
                vkind[sv] = "plus" if s == PLUS else "minus"
                origin[sv] = v
        else:
            vertices.append(v)
            vkind[v] = "ordinary"
            origin[v] = v

    def endpoint(v: str, sign: str) -> str:
        return split_vertex_name(v, sign) if sign != ORD else v

    arrows: list[tuple[str, str, str]] = []
    for a, s, t in base.arrows:
        for ls in _signs(s, special):
            for rs in _signs(t, special):
                nm = split_arrow_name(a, ls, rs)
                arrows.append((nm, endpoint(s, ls), endpoint(t, rs)))
                origin[nm] = a

    src = {a: s for a, s, _ in base.arrows}
    tgt = {a: t for a, _, t in base.arrows}
    relations: list[RelationExpr] = []
    one = Fraction(1)
    for rel in base.relations:
        alpha, beta = rel.terms[0][1]
        j, i, k = src[alpha], tgt[alpha], tgt[beta]
        ls_list = _signs(j, special)
        rs_list = _signs(k, special)
        if i not in special:
            # zero relations in every existing sign variant
            for ls in ls_list:
                for rs in rs_list:
                    word = (
                        split_arrow_name(alpha, ls, ORD),
                        split_arrow_name(beta, ORD, rs),
                    )
                    relations.append(RelationExpr(((one, word),)))
        else:
            # anti-commutative square per choice of outer decorations
            for ls in ls_list:
                for rs in rs_list:
                    through_plus = (
                        split_arrow_name(alpha, ls, PLUS),
                        split_arrow_name(beta, PLUS, rs),
                    )
                    through_minus = (
                        split_arrow_name(alpha, ls, MINUS),
                        split_arrow_name(beta, MINUS, rs),
                    )
                    relations.append(
                        RelationExpr(((one, through_plus), (one, through_minus)))
                    )
    spec = QuiverSpec(tuple(vertices), tuple(arrows), tuple(relations), ())
    minus = tuple(v for v in vertices if vkind[v] == "minus")
    return SplitQuiver(spec, vkind, origin, minus)


def build_gamma(triple: SkewGentleTriple) -> GammaPair:
    """Companion gentle pair: ordinary vertices doubled, arrows in +/- pairs."""
    base = triple.base
    special = set(triple.special_vertices)
    vertices: list[str] = []
    vact: dict = {}
    for v in base.vertices:
        if v in special:
            vertices.append(v)
            vact[v] = v
        else:
            vp, vm = split_vertex_name(v, PLUS), split_vertex_name(v, MINUS)
            vertices.extend([vp, vm])
            vact[vp], vact[vm] = vm, vp

    def endpoint(v: str, sign: str) -> str:
        return v if v in special else split_vertex_name(v, sign)

    arrows: list[tuple[str, str, str]] = []
    aact: dict = {}
    for a, s, t in base.arrows:
        ap, am = f"{a}__{PLUS}", f"{a}__{MINUS}"
        arrows.append((ap, endpoint(s, PLUS), endpoint(t, PLUS)))
        arrows.append((am, endpoint(s, MINUS), endpoint(t, MINUS)))
        aact[ap], aact[am] = am, ap

    tgt = {a: t for a, _, t in base.arrows}
    one = Fraction(1)
    relations: list[RelationExpr] = []
    for rel in base.relations:
        alpha, beta = rel.terms[0][1]
        if tgt[alpha] in special:
            lifted = [(f"{alpha}__{PLUS}", f"{beta}__{MINUS}"),
                      (f"{alpha}__{MINUS}", f"{beta}__{PLUS}")]
        else:
            lifted = [(f"{alpha}__{PLUS}", f"{beta}__{PLUS}"),
                      (f"{alpha}__{MINUS}", f"{beta}__{MINUS}")]
        for word in lifted:
            relations.append(RelationExpr(((one, word),)))
    spec = QuiverSpec(tuple(vertices), tuple(arrows), tuple(relations), ())
    return GammaPair(spec, vact, aact)


# ---------------------------------------------------------------------------
# Structural probes on the realized split algebra
# ---------------------------------------------------------------------------

@dataclass
class ProbeReport:
    ok: bool
    failures: list
    checked: dict

    def to_json(self):
        return {"ok": self.ok, "failures": self.failures, "checked": self.checked}


def _twin_arrow(sq: SplitQuiver, name: str, flip_left: bool, flip_right: bool) -> str:
    """The sign-twin of a split arrow (flip the requested endpoint signs)."""
    base, _, deco = name.rpartition("__")
    if not deco or "_" not in deco:
        return name
    left, right = deco.split("_")
    swap = {PLUS: MINUS, MINUS: PLUS, ORD: ORD}
    if flip_left:
        left = swap[left]
    if flip_right:
        right = swap[right]
    return split_arrow_name(base, left, right)


def structure_probes(sq: SplitQuiver, alg: PresentedAlgebra) -> ProbeReport:
    """Instance checks of the corner-structure facts used downstream.

    (a)/(b) degree bounds at minus vertices, (c) no alive cycle at a minus
    vertex, (d2)+(e) the sign-twin law p = (-1)^s p' in normal form, where
    s counts the flipped intermediate vertices, (d3) uniqueness of the
    surviving all-ordinary connection, (f) products of surviving corner
    paths survive.
    """
    spec = sq.spec
    failures = []
    checked = {"a": 0, "b": 0, "c": 0, "d2": 0, "d3": 0, "f": 0}
    minus = set(sq.minus_vertices())
    plus = set(sq.plus_vertices())
    nonminus = set(spec.vertices) - minus
    src = {a: s for a, s, _ in spec.arrows}
    tgt = {a: t for a, _, t in spec.arrows}

    for v in minus:
        to_minus = [a for a in spec.arrows_from(v) if tgt[a] in minus]
        from_minus = [a for a in spec.arrows_into(v) if src[a] in minus]
        checked["a"] += 1
        if len(to_minus) > 1 or len(from_minus) > 1:
            failures.append(("a", v, to_minus, from_minus))
        to_other = [a for a in spec.arrows_from(v) if tgt[a] in nonminus]
        from_other = [a for a in spec.arrows_into(v) if src[a] in nonminus]
        checked["b"] += 1
        if len(to_other) > 1 or len(from_other) > 1:
            failures.append(("b", v, to_other, from_other))

    vname = alg.vertex_names
    for i in range(alg.dim):
        if alg.word_len(i) >= 1:
            s, t = vname[alg.word_src(i)], vname[alg.word_tgt(i)]
            if s == t and s in minus:
                failures.append(("c", alg.basis[i]))
    checked["c"] = alg.dim

    def survivors(starts, ends, interior):
        """Nonzero paths starts -> ends whose interior vertices stay in
        `interior`; pruning by vanishing normal form bounds the search."""
        out = []
        stack = []
        for v in starts:
            for a in spec.arrows_from(v):
                stack.append(((a,), alg.arrow(a)))
        while stack:
            word, el = stack.pop()
            if el.is_zero():
                continue
            at = tgt[word[-1]]
            if at in ends:
                out.append((word, el))
            if at in interior:
                for a in spec.arrows_from(at):
                    stack.append((word + (a,), el * alg.arrow(a)))
        return out

    def twin_of(p):
        return tuple(
            _twin_arrow(sq, a, flip_left=idx > 0, flip_right=idx < len(p) - 1)
            for idx, a in enumerate(p)
        )

    # (d2): minus -> minus through plus interiors, and the dual direction;
    # the twin through the opposite sign class differs by (-1)^(#interiors)
    for tag, starts, ends, interior in (
        ("d2", minus, minus, plus),
        ("d2-dual", nonminus, nonminus, minus),
    ):
        for p, el in survivors(starts, ends, interior):
            if len(p) < 2:
                continue
            s = len(p) - 1
            twin = twin_of(p)
            sign = alg.field.of(Fraction((-1) ** s))
            checked["d2"] += 1
            if el != alg.path_element(twin).scale(sign):
                failures.append((tag, p, twin, s))

    # (d3): at most one surviving all-ordinary connection per minus pair
    ordinary = {v for v, k in sq.vertex_kind.items() if k == "ordinary"}
    conn: dict = {}
    for p, _ in survivors(minus, minus, ordinary):
        conn.setdefault((src[p[0]], tgt[p[-1]]), []).append(p)
    for key, ps in conn.items():
        checked["d3"] += 1
        if len(ps) > 1:
            failures.append(("d3", key, ps))

    # (f): concatenation of surviving corner paths survives
    by_start: dict = {}
    corner = survivors(minus, minus, nonminus)
    for p, _ in corner:
        by_start.setdefault(src[p[0]], []).append(p)
    for p1, _ in corner:
        for p2 in by_start.get(tgt[p1[-1]], []):
            checked["f"] += 1
            if alg.path_element(p1 + p2).is_zero():
                failures.append(("f", p1, p2))
    return ProbeReport(not failures, failures, checked)
