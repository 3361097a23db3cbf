"""Gentle-pair and skew-gentle-triple validation with violation witnesses.

The four gentle axioms: (1) every vertex starts and ends at most two
arrows; (2) for each arrow at most one forward/backward continuation
outside the relation set; (3) at most one inside it; (4) the quotient
algebra is finite dimensional.  Axiom 4 is decided by the normal-word
engine, whose empty-degree certificate is an actual proof; for monomial
quadratic relations a cap overrun implies an alive relation-free cycle,
which is reported as the witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .engine import CapExceeded, realize
from .fields import QQ
from .quiver import QuiverSpec, RelationExpr, QuiverError


class GentleInputError(QuiverError):
    """Relations not in gentle form (monomial of length 2)."""


@dataclass(frozen=True)
class Violation:
    axiom: int
    witness: dict

    def to_json(self):
        return {"axiom": self.axiom, "witness": self.witness}


@dataclass(frozen=True)
class GentleVerdict:
    is_gentle: bool
    violations: tuple[Violation, ...]

    def to_json(self):
        return {
            "is_gentle": self.is_gentle,
            "violations": [v.to_json() for v in self.violations],
        }


@dataclass(frozen=True)
class SkewGentleTriple:
    """Validated (Q, I, Sp): attaching square-zero special loops stays gentle."""

    base: QuiverSpec
    special_vertices: tuple[str, ...]
    ordinary_vertices: tuple[str, ...]
    augmented: QuiverSpec
    loop_names: dict = field(compare=False, default=None)


def _relation_pairs(spec: QuiverSpec) -> set[tuple[str, str]]:
    for rel in spec.relations:
        if not rel.is_monomial() or rel.length() != 2:
            raise GentleInputError(
                "gentle pairs carry only monomial relations of length 2"
            )
    return {rel.terms[0][1] for rel in spec.relations}


def _alive_cycle_witness(spec: QuiverSpec, pairs) -> list[str] | None:
    """A relation-free oriented arrow cycle, if one exists.

    Walks the composition graph (arrow -> arrow when the length-2 path is
    not a relation); a directed cycle there is exactly an alive cycle,
    i.e. a proof of infinite dimension for monomial quadratic relations.
    """
    succ = {}
    tgt = {name: t for name, _, t in spec.arrows}
    src = {name: s for name, s, _ in spec.arrows}
    for a, _, _ in spec.arrows:
        succ[a] = [b for b, _, _ in spec.arrows if src[b] == tgt[a] and (a, b) not in pairs]
    color = {a: 0 for a, _, _ in spec.arrows}
    stack: list[str] = []

    def dfs(a):
        color[a] = 1
        stack.append(a)
        for b in succ[a]:
            if color[b] == 1:
                return stack[stack.index(b):]
            if color[b] == 0:
                found = dfs(b)
                if found:
                    return found
        stack.pop()
        color[a] = 2
        return None

    for a, _, _ in spec.arrows:
        if color[a] == 0:
            cyc = dfs(a)
            if cyc:
                return cyc
    return None


def check_gentle(spec: QuiverSpec) -> GentleVerdict:
    """Decide the four gentle axioms, collecting every violation."""
    pairs = _relation_pairs(spec)
    violations: list[Violation] = []
    for v in spec.vertices:
        outs = spec.arrows_from(v)
        ins = spec.arrows_into(v)
        if len(outs) > 2:
            violations.append(Violation(1, {"vertex": v, "outgoing": outs}))
        if len(ins) > 2:
            violations.append(Violation(1, {"vertex": v, "incoming": ins}))
    src = {name: s for name, s, _ in spec.arrows}
    tgt = {name: t for name, _, t in spec.arrows}
    names = [name for name, _, _ in spec.arrows]
    for a in names:
        succ_in = [b for b in names if src[b] == tgt[a] and (a, b) in pairs]
        succ_out = [b for b in names if src[b] == tgt[a] and (a, b) not in pairs]
        pred_in = [g for g in names if tgt[g] == src[a] and (g, a) in pairs]
        pred_out = [g for g in names if tgt[g] == src[a] and (g, a) not in pairs]
        if len(succ_out) > 1:
            violations.append(Violation(2, {"arrow": a, "continuations": succ_out}))
        if len(pred_out) > 1:
            violations.append(Violation(2, {"arrow": a, "predecessors": pred_out}))
        if len(succ_in) > 1:
            violations.append(Violation(3, {"arrow": a, "continuations": succ_in}))
        if len(pred_in) > 1:
            violations.append(Violation(3, {"arrow": a, "predecessors": pred_in}))
    # axiom 4 through the engine; the certificate degree is a proof either way
    try:
        realize(spec, QQ, degree_cap=len(spec.arrows) + 2)
    except CapExceeded:
        cyc = _alive_cycle_witness(spec, pairs)
        violations.append(Violation(4, {"alive_cycle": cyc}))
    return GentleVerdict(not violations, tuple(violations))


def special_loop_name(spec: QuiverSpec, vertex: str) -> str:
    name = f"delta__{vertex}"
    taken = {a for a, _, _ in spec.arrows}
    while name in taken:
        name += "_"
    return name


def augmented_spec(spec: QuiverSpec):
    """Q' = Q plus one loop per special vertex, with square-zero relations."""
    arrows = list(spec.arrows)
    rels = list(spec.relations)
    taken = {a for a, _, _ in spec.arrows}
    loops = {}
    for v in spec.special:
        nm = f"delta__{v}"
        while nm in taken:
            nm += "_"
        taken.add(nm)
        loops[v] = nm
        arrows.append((nm, v, v))
        rels.append(RelationExpr(((Fraction(1), (nm, nm)),)))
    return QuiverSpec(spec.vertices, tuple(arrows), tuple(rels), ()), loops


def check_skew_gentle(spec: QuiverSpec):
    """Validate (Q, I, Sp); returns SkewGentleTriple or a GentleVerdict.

    An empty special set is allowed (plain gentle pairs are skew-gentle).
    Failure verdicts name the offending special vertex through its loop.
    """
    base_verdict = check_gentle(
        QuiverSpec(spec.vertices, spec.arrows, spec.relations, ())
    )
    if not base_verdict.is_gentle:
        return base_verdict
    aug, loops = augmented_spec(spec)
    verdict = check_gentle(aug)
    if not verdict.is_gentle:
        loop_to_vertex = {nm: v for v, nm in loops.items()}
        annotated = []
        for viol in verdict.violations:
            w = dict(viol.witness)
            named = set()
            for val in w.values():
                items = val if isinstance(val, (list, tuple)) else [val]
                for item in items:
                    if item in loop_to_vertex:
                        named.add(loop_to_vertex[item])
                    if item in loops:
                        named.add(item)
            if w.get("vertex") in loops:
                named.add(w["vertex"])
            if named:
                w["special_vertices"] = sorted(named)
            annotated.append(Violation(viol.axiom, w))
        return GentleVerdict(False, tuple(annotated))
    ordinary = tuple(v for v in spec.vertices if v not in set(spec.special))
    aug_with_special = QuiverSpec(aug.vertices, aug.arrows, aug.relations, spec.special)
    return SkewGentleTriple(spec, tuple(spec.special), ordinary, aug_with_special, loops)


def require_triple(spec: QuiverSpec) -> SkewGentleTriple:
    res = check_skew_gentle(spec)
    if isinstance(res, SkewGentleTriple):
        return res
    raise QuiverError(f"not a skew-gentle triple: {res.to_json()}")


def split_relations(triple: SkewGentleTriple):
    """Partition I by the middle vertex: (I_ordinary, I_special)."""
    special = set(triple.special_vertices)
    tgt = {name: t for name, _, t in triple.base.arrows}
    i_or, i_sp = [], []
    for rel in triple.base.relations:
        a, _b = rel.terms[0][1]
        (i_sp if tgt[a] in special else i_or).append(rel)
    return tuple(i_or), tuple(i_sp)


def find_full_relation_cycles(spec: QuiverSpec):
    """Oriented cycles whose every cyclically-consecutive pair is a relation.

    Cycles are reported up to rotation, canonicalized to start at the
    arrow that is least in declaration order; requires a gentle-shaped
    relation set (monomial length 2).
    """
    pairs = _relation_pairs(spec)
    order = {name: i for i, (name, _, _) in enumerate(spec.arrows)}
    succ = {a: [] for a in order}
    for a, b in pairs:
        succ[a].append(b)
    cycles = set()
    names = [name for name, _, _ in spec.arrows]

    def walk(path, seen):
        cur = path[-1]
        for nxt in succ[cur]:
            if nxt == path[0]:
                rots = [tuple(path[i:] + path[:i]) for i in range(len(path))]
                cycles.add(min(rots, key=lambda t: [order[x] for x in t]))
            elif nxt not in seen and order[nxt] > order[path[0]]:
                walk(path + [nxt], seen | {nxt})

    for a in names:
        walk([a], {a})
    return sorted(cycles, key=lambda t: ([order[x] for x in t]))
