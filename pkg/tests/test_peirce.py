import pytest

from skewgentle.engine import oracle_dimension, realize
from skewgentle.fields import F2, QQ
from skewgentle.gentle import require_triple
from skewgentle.peirce import (
    PeirceError,
    decompose_bimodules,
    f_image_nilpotent,
    g_lands_in_radical,
    morita_compatibility,
    peirce,
    present_B,
    present_C,
    quotient_iso_check,
)
from skewgentle.quiver import parse
from skewgentle.splitting import split_triple

from conftest import triple_spec


@pytest.fixture(scope="module", params=["q", "f2"])
def example_pd(request, example_triple):
    from skewgentle.fields import field_by_name

    sq = split_triple(example_triple)
    alg = realize(sq.spec, field_by_name(request.param))
    return peirce(alg, sq)


def test_example_block_dimensions(example_pd):
    dims = example_pd.dims
    assert dims == {"A": 19, "B": 10, "M": 1, "N": 5, "C": 3, "f_image": 2}
    assert dims["A"] == dims["B"] + dims["M"] + dims["N"] + dims["C"]


def test_example_block_contents(example_pd):
    alg = example_pd.alg
    c_words = {alg.basis[i] for i in example_pd.C}
    assert c_words == {("1__m", ()), ("2__m", ()), ("1__m", ("a__m_m",))}
    m_words = {alg.basis[i] for i in example_pd.M}
    assert m_words == {("1__p", ("a__p_m",))}


def test_peirce_requires_special():
    tr = require_triple(parse("vertices 1 2; arrow a: 1->2;"))
    sq = split_triple(tr)
    alg = realize(sq.spec, QQ)
    with pytest.raises(PeirceError):
        peirce(alg, sq)


def test_degenerate_corner_all_special_no_arrows():
    # isolated special vertices split into k x k factors: the corner C
    # picks up one k per special vertex and M = N = 0
    tr = require_triple(parse("vertices u v; special u v;"))
    sq = split_triple(tr)
    alg = realize(sq.spec, QQ)
    pd = peirce(alg, sq)
    assert pd.dims == {"A": 4, "B": 2, "M": 0, "N": 0, "C": 2, "f_image": 0}
    assert present_C(pd).factors == ["k", "k"]


def test_present_C_example(example_pd, example_triple):
    cp = present_C(example_pd)
    assert cp.factors == ["A2"]
    assert cp.components == [["1__m", "2__m"]]
    assert [a for a, _, _ in cp.quiver.arrows] == ["a__m_m"]
    assert cp.algebra.dim == 3


def test_present_C_with_composite_arrow():
    # relation through an ordinary middle with both outer vertices special:
    # the surviving all-ordinary path 1- -> 2 -> 3- becomes a Q^C arrow
    tr = require_triple(
        parse("vertices 1 2 3; arrow a: 1->2; arrow b: 2->3; special 1 3;")
    )
    sq = split_triple(tr)
    alg = realize(sq.spec, QQ)
    pd = peirce(alg, sq)
    cp = present_C(pd)
    assert cp.factors == ["A2"]
    names = [a for a, _, _ in cp.quiver.arrows]
    assert names == ["path_a__m_o_b__o_m"]


def test_present_B_example(example_pd, example_triple):
    bp = present_B(example_pd, example_triple)
    assert bp.algebra.dim == 10  # hereditary A_4 path algebra
    assert bp.quiver.relations == ()  # I^or is empty here
    assert len(bp.quiver.arrows) == 3


def test_present_B_with_ordinary_relation():
    tr = require_triple(
        parse(
            "vertices 1 2 3 4; arrow a: 1->2; arrow b: 2->3; arrow c: 3->4; rel b*c; special 1;"
        )
    )
    sq = split_triple(tr)
    alg = realize(sq.spec, QQ)
    pd = peirce(alg, sq)
    bp = present_B(pd, tr)
    words = [r.terms[0][1] for r in bp.quiver.relations]
    assert words == [("b", "c")]
    assert bp.algebra.dim == len(pd.B)


def test_bimodule_decomposition_example(example_pd, example_triple):
    cp = present_C(example_pd)
    bd = decompose_bimodules(example_pd, cp)
    assert bd.ok
    assert bd.m_arrow_groups == [["a__p_m"]]
    assert bd.n_arrow_groups == [["a__m_p", "b__m_o"]]
    assert sum(bd.m_part_dims) == 1 and sum(bd.n_part_dims) == 5


def test_morita_context_invariants(example_pd):
    assert morita_compatibility(example_pd)
    assert g_lands_in_radical(example_pd)
    assert f_image_nilpotent(example_pd)


def test_quotient_iso_example(example_pd, example_triple):
    qr = quotient_iso_check(example_pd, example_triple)
    assert qr.ok and qr.generator_check
    assert qr.dim_quotient == qr.dim_target == 8
    # cross-check both sides against the independent oracle
    f = example_pd.alg.field
    assert oracle_dimension(triple_spec(example_triple), f, 10) == 8


def test_corpus_properties(small_corpus):
    for tr in small_corpus:
        if not tr.special_vertices:
            continue
        sq = split_triple(tr)
        alg = realize(sq.spec, F2)
        pd = peirce(alg, sq)
        d = pd.dims
        assert d["A"] == d["B"] + d["M"] + d["N"] + d["C"]
        cp = present_C(pd)
        assert all(x == "k" or x.startswith("A") for x in cp.factors)
        bp = present_B(pd, tr)
        bd = decompose_bimodules(pd, cp)
        assert bd.ok
        assert morita_compatibility(pd)
        assert g_lands_in_radical(pd)
        assert f_image_nilpotent(pd)
        qr = quotient_iso_check(pd, tr)
        assert qr.ok, triple_spec(tr)
