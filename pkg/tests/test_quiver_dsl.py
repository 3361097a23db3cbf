from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from skewgentle.quiver import (
    DslSyntaxError,
    Path,
    QuiverError,
    QuiverSpec,
    RelationExpr,
    ZERO_PATH,
    display_name,
    parse,
    path_compose,
    serialize,
)


def test_parse_example():
    spec = parse(
        "vertices 1 2 3 4; arrow a: 1->2; arrow b: 2->3; arrow c: 3->4; rel a*b; special 1 2;"
    )
    assert spec.vertices == ("1", "2", "3", "4")
    assert [a for a, _, _ in spec.arrows] == ["a", "b", "c"]
    assert spec.relations[0].terms == ((Fraction(1), ("a", "b")),)
    assert spec.special == ("1", "2")


def test_parse_single_vertex():
    spec = parse("vertices v;")
    assert spec.vertices == ("v",)
    assert spec.arrows == ()
    assert spec.relations == ()


def test_parse_noncomposable_relation():
    with pytest.raises(QuiverError, match="non-composable"):
        parse("vertices 1 2; arrow a: 1->2; rel a*a;")


def test_parse_errors_carry_position():
    with pytest.raises(DslSyntaxError) as ei:
        parse("vertices 1 2;\narrow @: 1->2;")
    assert ei.value.line == 2


def test_duplicate_and_dangling():
    with pytest.raises(QuiverError, match="duplicate vertex"):
        parse("vertices 1 1;")
    with pytest.raises(QuiverError, match="duplicate arrow"):
        parse("vertices 1 2; arrow a: 1->2; arrow a: 2->1;")
    with pytest.raises(QuiverError, match="dangling"):
        QuiverSpec(("1",), (("a", "1", "2"),))
    with pytest.raises(QuiverError, match="special vertex"):
        parse("vertices 1; special 2;")


def test_mixed_length_relation_rejected():
    with pytest.raises(QuiverError, match="mixed-length"):
        parse("vertices 1 2 3; arrow a: 1->2; arrow b: 2->3; arrow c: 1->3; rel a*b + c;")


def test_arrow_name_must_not_be_integer():
    with pytest.raises(DslSyntaxError, match="integer literal"):
        parse("vertices 1 2; arrow 7: 1->2;")


def test_coefficients_and_signs():
    spec = parse(
        "vertices 1 2 3; arrow a: 1->2; arrow b: 2->3; arrow c: 1->2; "
        "rel 2/3*a*b - c*b; rel -1*a*b + 5*c*b;"
    )
    assert spec.relations[0].terms == (
        (Fraction(2, 3), ("a", "b")),
        (Fraction(-1), ("c", "b")),
    )
    assert spec.relations[1].terms == (
        (Fraction(-1), ("a", "b")),
        (Fraction(5), ("c", "b")),
    )
    assert parse(serialize(spec)) == spec


def test_comments_and_whitespace():
    spec = parse("# heading\nvertices 1 2; # trailing\narrow a: 1->2;\n")
    assert spec.arrows == (("a", "1", "2"),)


def test_serialize_roundtrip_example():
    spec = parse(
        "vertices 1 2 3 4; arrow a: 1->2; arrow b: 2->3; arrow c: 3->4; rel a*b; special 1 2;"
    )
    assert parse(serialize(spec)) == spec


def test_serialize_empty_quiver_canonical():
    assert serialize(parse("vertices v;")) == "vertices v;\n"


# -- path composition --------------------------------------------------------

def _chain():
    return parse("vertices 1 2 3 4; arrow a: 1->2; arrow b: 2->3; arrow c: 3->4;")


def test_path_compose_basic():
    q = _chain()
    a, b, c = q.path(["a"]), q.path(["b"]), q.path(["c"])
    ab = path_compose(a, b)
    assert ab == Path("1", "3", ("a", "b"))
    assert path_compose(a, c) is ZERO_PATH
    assert path_compose(q.trivial_path("2"), b) == b
    assert path_compose(b, q.trivial_path("3")) == b
    assert not ZERO_PATH


def test_path_compose_associative_up_to_len4():
    q = parse(
        "vertices 1 2; arrow a: 1->2; arrow b: 2->1; arrow l: 2->2;"
    )
    paths = [q.trivial_path(v) for v in q.vertices]
    frontier = [q.path([a]) for a, _, _ in q.arrows]
    paths += frontier
    for _ in range(3):
        nxt = []
        for p in frontier:
            for a, s, _ in q.arrows:
                if p.target == s:
                    nxt.append(Path(p.source, q.arrow_target(a), p.arrows + (a,)))
        paths += nxt
        frontier = nxt
    for p in paths:
        for r in paths:
            for s in paths:
                lhs = path_compose(p, r)
                lhs = path_compose(lhs, s) if lhs is not ZERO_PATH else ZERO_PATH
                rhs = path_compose(r, s)
                rhs = path_compose(p, rhs) if rhs is not ZERO_PATH else ZERO_PATH
                assert lhs == rhs


# -- randomized round-trip ---------------------------------------------------

@st.composite
def quiver_specs(draw):
    nv = draw(st.integers(1, 5))
    vertices = tuple(f"v{i}" for i in range(nv))
    na = draw(st.integers(0, 6))
    arrows = []
    for k in range(na):
        s = vertices[draw(st.integers(0, nv - 1))]
        t = vertices[draw(st.integers(0, nv - 1))]
        arrows.append((f"x{k}", s, t))
    tgt = {a: t for a, _, t in arrows}
    src = {a: s for a, s, _ in arrows}
    pairs = [(a, b) for a, _, _ in arrows for b, _, _ in arrows if tgt[a] == src[b]]
    rels = []
    seen_words = set()
    for _ in range(draw(st.integers(0, 3))):
        if not pairs:
            break
        p = pairs[draw(st.integers(0, len(pairs) - 1))]
        if p in seen_words:
            continue
        seen_words.add(p)
        c = Fraction(draw(st.integers(-4, 4)) or 1, draw(st.integers(1, 4)))
        # optionally a parallel second term
        mates = [
            q
            for q in pairs
            if q != p and src[q[0]] == src[p[0]] and tgt[q[1]] == tgt[p[1]]
        ]
        terms = [(c, p)]
        if mates and draw(st.booleans()):
            c2 = Fraction(draw(st.integers(-4, 4)) or 1)
            terms.append((c2, mates[draw(st.integers(0, len(mates) - 1))]))
        rels.append(RelationExpr(tuple(terms)))
    special = tuple(v for v in vertices if draw(st.booleans()))
    return QuiverSpec(vertices, tuple(arrows), tuple(rels), special)


@given(quiver_specs())
@settings(max_examples=80, deadline=None)
def test_roundtrip_random(spec):
    assert parse(serialize(spec)) == spec


def test_display_names():
    assert display_name("a__p_m") == "+a-"
    assert display_name("a__p_o") == "+a"
    assert display_name("a__o_m") == "a-"
    assert display_name("1__p") == "1+"
    assert display_name("plain") == "plain"
