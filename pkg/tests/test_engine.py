import json

import pytest

from skewgentle.engine import (
    CapExceeded,
    OracleCapExceeded,
    enveloping_spec,
    multiply,
    oracle_dimension,
    radical_filtration,
    realize,
)
from skewgentle.fields import F2, F3, QQ
from skewgentle.gentle import require_triple
from skewgentle.quiver import parse
from skewgentle.splitting import split_triple

from conftest import triple_spec

A4 = "vertices 1 2 3 4; arrow a: 1->2; arrow b: 2->3; arrow c: 3->4; rel a*b;"


def test_example_dimension_8():
    alg = realize(parse(A4), QQ)
    assert alg.dim == 8
    assert oracle_dimension(parse(A4), QQ, 10) == 8
    words = {w for _, w in alg.basis}
    assert ("b", "c") in words and ("a", "b") not in words


def test_single_vertex():
    alg = realize(parse("vertices v;"), QQ)
    assert alg.dim == 1
    assert oracle_dimension(parse("vertices v;"), QQ, 4) == 1


def test_split_example_same_dim_over_fields(example_triple):
    sq = split_triple(example_triple)
    dims = {F.name: realize(sq.spec, F).dim for F in (QQ, F2, F3)}
    assert dims == {"q": 19, "f2": 19, "f3": 19}
    assert oracle_dimension(sq.spec, F2, 12) == 19


def test_multiply_rules(example_triple):
    sq = split_triple(example_triple)
    alg = realize(sq.spec, QQ)
    e = alg.idempotent("1__p")
    assert multiply(e, e) == e
    # anti-commutative square: (+a+)(+b) = -(+a-)(-b)
    lhs = multiply(alg.arrow("a__p_p"), alg.arrow("b__p_o"))
    rhs = multiply(alg.arrow("a__p_m"), alg.arrow("b__m_o"))
    assert lhs == rhs.scale(QQ.of(-1))
    # zero relation
    base = realize(parse(A4), QQ)
    assert multiply(base.arrow("a"), base.arrow("b")).is_zero()
    # non-composable product is zero
    assert multiply(base.arrow("a"), base.arrow("c")).is_zero()


def test_identity_and_associativity_exhaustive():
    alg = realize(parse(A4), QQ)
    one = alg.one()
    units = [alg.idempotent(v) for v in alg.vertex_names]
    assert sum(units[1:], units[0]) == one
    from skewgentle.engine import AlgebraElement

    basis_elems = [AlgebraElement(alg, {i: QQ.one}) for i in range(alg.dim)]
    for x in basis_elems:
        assert multiply(one, x) == x and multiply(x, one) == x
        for y in basis_elems:
            xy = multiply(x, y)
            for z in basis_elems:
                assert multiply(xy, z) == multiply(x, multiply(y, z))


def test_grading_of_products(example_triple):
    sq = split_triple(example_triple)
    alg = realize(sq.spec, QQ)
    for i in range(alg.dim):
        for j in range(alg.dim):
            for k in alg.mul(i, j):
                assert alg.word_len(k) == alg.word_len(i) + alg.word_len(j)


def test_radical_filtration_examples(example_triple):
    semis = realize(parse("vertices u v w;"), QQ)
    assert [len(l) for l in radical_filtration(semis)] == [3]
    alg = realize(parse(A4), QQ)
    assert [len(l) for l in radical_filtration(alg)] == [8, 4, 1]
    sq = split_triple(example_triple)
    layers = radical_filtration(realize(sq.spec, QQ))
    dims = [len(l) for l in layers]
    assert dims[0] == 19
    assert all(a > b for a, b in zip(dims, dims[1:]))


def test_cap_exceeded_reported_not_truncated():
    loop = parse("vertices 1; arrow l: 1->1;")
    with pytest.raises(CapExceeded):
        realize(loop, QQ, degree_cap=8)
    with pytest.raises(OracleCapExceeded):
        oracle_dimension(loop, QQ, 8)


def test_engine_oracle_agreement_both_fields(small_corpus):
    for tr in small_corpus[:40]:
        base = triple_spec(tr)
        sq = split_triple(tr)
        for F in (QQ, F2):
            a1 = realize(base, F)
            assert oracle_dimension(base, F, a1.cert_degree + 1) == a1.dim
            a2 = realize(sq.spec, F)
            assert oracle_dimension(sq.spec, F, a2.cert_degree + 1) == a2.dim


def test_char_robust_dimensions(small_corpus):
    for tr in small_corpus[:25]:
        sq = split_triple(tr)
        dims = {realize(sq.spec, F).dim for F in (QQ, F2, F3)}
        assert len(dims) == 1


def test_opposite_view(example_triple):
    sq = split_triple(example_triple)
    alg = realize(sq.spec, QQ)
    op = alg.opposite()
    assert op.dim == alg.dim
    assert op.opposite() is alg
    for i in range(alg.dim):
        for j in range(alg.dim):
            assert op.mul(i, j) == alg.mul(j, i)
    # arrow endpoints swap
    for (a, s, t), (a2, s2, t2) in zip(alg.arrow_list, op.arrow_list):
        assert a == a2 and s == t2 and t == s2


def test_structure_constants_json():
    alg = realize(parse(A4), F2)
    payload = alg.to_json()
    assert payload["dimension"] == 8
    json.dumps(payload)  # serializable
    # identity row: e_1 * a = a
    a_idx = alg.arrow_word_index("a")
    e1 = alg.idem_index(0)
    assert payload["constants"][f"{e1},{a_idx}"] == [[a_idx, "1"]]


def test_enveloping_spec_dimension():
    spec = parse("vertices 1 2; arrow a: 1->2;")
    alg = realize(spec, QQ)
    T = realize(enveloping_spec(spec), QQ)
    assert T.dim == alg.dim**2


def test_nonquadratic_relations_rejected():
    spec = parse("vertices 1 2 3 4; arrow a: 1->2; arrow b: 2->3; arrow c: 3->4; rel a*b*c;")
    with pytest.raises(Exception):
        realize(spec, QQ)


def test_rational_coefficients_respected():
    # a parallel pair with rational coefficients: x = -(2/3) y in the quotient
    spec = parse(
        "vertices 1 2 3; arrow x: 1->2; arrow y: 1->2; arrow z: 2->3; "
        "rel 3*x*z + 2*y*z;"
    )
    alg = realize(spec, QQ)
    xz = multiply(alg.arrow("x"), alg.arrow("z"))
    yz = multiply(alg.arrow("y"), alg.arrow("z"))
    assert xz == yz.scale(QQ.of("-2/3"))
    assert alg.dim == oracle_dimension(spec, QQ, 6)
