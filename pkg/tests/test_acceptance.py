"""Acceptance criteria, one test per criterion, each printing a verdict line.

The corpus is the repo-pinned 500-instance stream (seed 20260810, see
conftest.ACCEPTANCE_CONFIG); every tolerance here is exact.
"""

import time
from fractions import Fraction

import pytest

from skewgentle.cli import main
from skewgentle.engine import oracle_dimension, realize
from skewgentle.fields import F2, F3, QQ
from skewgentle.gentle import require_triple
from skewgentle.homology import (
    SizeGuardExceeded,
    bimodule_pd_bound,
    check_one_sided_projectivity,
    gorenstein_check,
    selfinjective_check,
    stratifying_check,
    tor_over_C,
)
from skewgentle.peirce import peirce, present_C, quotient_iso_check
from skewgentle.quiver import parse
from skewgentle.splitting import split_triple, structure_probes

from conftest import EXAMPLE_DSL, triple_spec


def _report(num, label, ok, detail=""):
    line = f"ACCEPTANCE {num} ({label}): {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  [{detail}]"
    print(line)
    assert ok, line


def test_acceptance_1_example_reproduction(tmp_path, capsys):
    t0 = time.time()
    src = tmp_path / "example.quiver"
    src.write_text(EXAMPLE_DSL)
    assert main(["split", str(src)]) == 0
    split_dsl = capsys.readouterr().out
    spec = parse(split_dsl)
    ok = (
        len(spec.vertices) == 6
        and len(spec.arrows) == 7
        and len(spec.relations) == 2
        and {tuple(p for _, p in rel.terms) for rel in spec.relations}
        == {
            (("a__p_p", "b__p_o"), ("a__p_m", "b__m_o")),
            (("a__m_p", "b__p_o"), ("a__m_m", "b__m_o")),
        }
        and all(c == 1 for rel in spec.relations for c, _ in rel.terms)
    )
    bad = tmp_path / "bad.quiver"
    bad.write_text(EXAMPLE_DSL.replace("special 1 2;", "special 3;"))
    code = main(["check", str(bad)])
    out = capsys.readouterr().out
    ok = ok and code == 1 and "delta__3" in out
    with capsys.disabled():
        _report(1, "worked-example reproduction", ok, f"{time.time()-t0:.2f}s")


def test_acceptance_2_quotient_and_corner(example_triple, capsys):
    t0 = time.time()
    sq = split_triple(example_triple)
    alg = realize(sq.spec, QQ)
    pd = peirce(alg, sq)
    cp = present_C(pd)
    qr = quotient_iso_check(pd, example_triple)
    odim = oracle_dimension(triple_spec(example_triple), QQ, 10)
    ok = (
        cp.factors == ["A2"]
        and cp.algebra.dim == 3
        and qr.ok
        and qr.dim_quotient == qr.dim_target == 8 == odim
    )
    with capsys.disabled():
        _report(2, "quotient iso and corner classification", ok, f"{time.time()-t0:.2f}s")


def test_acceptance_3_stratifying_corpus(example_triple, full_corpus, capsys):
    t0 = time.time()
    failures = []
    checked = 0
    for field in (QQ, F2):
        for i, tr in enumerate([example_triple] + full_corpus):
            if not tr.special_vertices:
                continue  # zero ideal: vacuously stratifying
            sq = split_triple(tr)
            alg = realize(sq.spec, field)
            pd = peirce(alg, sq)
            cp = present_C(pd)
            st = stratifying_check(pd, cp)
            checked += 1
            if not st["stratifying"]:
                failures.append((field.name, i))
    ok = not failures
    with capsys.disabled():
        _report(
            3,
            "stratifying ideal over Q and F2",
            ok,
            f"{checked} checks, {time.time()-t0:.1f}s" + (f"; failures {failures[:3]}" if failures else ""),
        )


def test_acceptance_4_gorenstein_three_fields(full_corpus, capsys):
    t0 = time.time()
    failures = []
    for i, tr in enumerate(full_corpus):
        sq = split_triple(tr)
        ids = set()
        for field in (QQ, F2, F3):
            alg = realize(sq.spec, field)
            gc = gorenstein_check(alg, cap=20)
            if not gc["gorenstein"]:
                failures.append((i, field.name, "cap"))
                continue
            ids.add((gc["id_left"], gc["id_right"]))
        if len(ids) != 1:
            failures.append((i, "cross-field", sorted(ids)))
    ok = not failures
    with capsys.disabled():
        _report(
            4,
            "Gorenstein over Q, F2, F3 with agreement",
            ok,
            f"{len(full_corpus)} instances x 3 fields, {time.time()-t0:.1f}s"
            + (f"; failures {failures[:3]}" if failures else ""),
        )


def test_acceptance_5_selfinjectivity(full_corpus, capsys):
    t0 = time.time()
    failures = []
    for i, tr in enumerate(full_corpus):
        spec = triple_spec(tr)
        sq = split_triple(tr)
        alg = realize(sq.spec, F2)
        try:
            out = selfinjective_check(alg, spec)
        except Exception as exc:
            failures.append((i, repr(exc)))
            continue
        if not out["agree"]:
            failures.append((i, "disagree"))
        if tr.special_vertices and out["selfinjective"]:
            failures.append((i, "selfinjective with Sp nonempty"))
    for n in range(2, 7):
        vs = " ".join(str(i) for i in range(n))
        arrows = " ".join(f"arrow a{i}: {i}->{(i + 1) % n};" for i in range(n))
        rels = " ".join(f"rel a{i}*a{(i + 1) % n};" for i in range(n))
        spec = parse(f"vertices {vs}; {arrows} {rels}")
        out = selfinjective_check(realize(spec, F2), spec)
        if not (out["selfinjective"] and out["agree"]):
            failures.append((f"cycle{n}", "not selfinjective"))
    ok = not failures
    with capsys.disabled():
        _report(
            5,
            "selfinjectivity classification",
            ok,
            f"{len(full_corpus)} instances + cycles 2..6, {time.time()-t0:.1f}s"
            + (f"; failures {failures[:3]}" if failures else ""),
        )


def _assoc_exhaustive(alg) -> bool:
    f = alg.field
    by_src = {}
    for j in range(alg.dim):
        by_src.setdefault(alg.word_src(j), []).append(j)
    for i in range(alg.dim):
        for j in by_src.get(alg.word_tgt(i), ()):
            ij = alg.mul(i, j)
            for k in by_src.get(alg.word_tgt(j), ()):
                jk = alg.mul(j, k)
                lhs, rhs = {}, {}
                for m, c in ij.items():
                    for n, c2 in alg.mul(m, k).items():
                        v = f.add(lhs.get(n, f.zero), f.mul(c, c2))
                        lhs[n] = v
                for m, c in jk.items():
                    for n, c2 in alg.mul(i, m).items():
                        v = f.add(rhs.get(n, f.zero), f.mul(c, c2))
                        rhs[n] = v
                if {k2: v for k2, v in lhs.items() if v != f.zero} != {
                    k2: v for k2, v in rhs.items() if v != f.zero
                }:
                    return False
    return True


def test_acceptance_6_engine_soundness(full_corpus, capsys):
    t0 = time.time()
    failures = []
    assoc_checked = 0
    for i, tr in enumerate(full_corpus):
        base = triple_spec(tr)
        sq = split_triple(tr)
        a1 = realize(base, QQ)
        if oracle_dimension(base, QQ, a1.cert_degree + 1) != a1.dim:
            failures.append((i, "base oracle"))
        a2 = realize(sq.spec, QQ)
        if oracle_dimension(sq.spec, QQ, a2.cert_degree + 1) != a2.dim:
            failures.append((i, "split oracle"))
        if a2.dim <= 40:
            assoc_checked += 1
            if not _assoc_exhaustive(a2):
                failures.append((i, "associativity"))
    ok = not failures
    with capsys.disabled():
        _report(
            6,
            "engine = oracle, exhaustive associativity",
            ok,
            f"{len(full_corpus)} instances, {assoc_checked} assoc sweeps, {time.time()-t0:.1f}s"
            + (f"; failures {failures[:3]}" if failures else ""),
        )


def test_acceptance_7_structure_probes(full_corpus, capsys):
    t0 = time.time()
    failures = []
    d2_total = 0
    for i, tr in enumerate(full_corpus):
        sq = split_triple(tr)
        alg = realize(sq.spec, QQ)  # signs only visible away from char 2
        rep = structure_probes(sq, alg)
        d2_total += rep.checked["d2"]
        if not rep.ok:
            failures.append((i, rep.failures[:2]))
    ok = not failures
    with capsys.disabled():
        _report(
            7,
            "corner-structure probes incl. sign law",
            ok,
            f"{len(full_corpus)} instances, {d2_total} sign-twin checks, {time.time()-t0:.1f}s"
            + (f"; failures {failures[:2]}" if failures else ""),
        )


def test_acceptance_8_bimodule_pd(full_corpus, capsys):
    t0 = time.time()
    failures = []
    checked = skipped = 0
    for i, tr in enumerate(full_corpus):
        if not tr.special_vertices:
            continue  # zero ideal has pd 0 by convention
        sq = split_triple(tr)
        alg = realize(sq.spec, F2)
        if alg.dim > 30:
            skipped += 1
            continue
        pd = peirce(alg, sq)
        val = bimodule_pd_bound(pd, dim_guard=30, cap=3)
        checked += 1
        if val is None or val > 1:
            failures.append((i, val))
        # spot-check characteristic independence on the small instances
        if alg.dim <= 12:
            algq = realize(sq.spec, QQ)
            pdq = peirce(algq, sq)
            vq = bimodule_pd_bound(pdq, dim_guard=30, cap=3)
            if vq != val:
                failures.append((i, "field disagreement", val, vq))
    ok = not failures
    with capsys.disabled():
        _report(
            8,
            "bimodule pd of the ideal <= 1",
            ok,
            f"{checked} checked, {skipped} over guard, {time.time()-t0:.1f}s"
            + (f"; failures {failures[:3]}" if failures else ""),
        )


def test_acceptance_9_projectivity_and_tor(full_corpus, capsys):
    t0 = time.time()
    failures = []
    checked = 0
    for field in (QQ, F2):
        for i, tr in enumerate(full_corpus):
            if not tr.special_vertices:
                continue
            sq = split_triple(tr)
            alg = realize(sq.spec, field)
            pd = peirce(alg, sq)
            cp = present_C(pd)
            pj = check_one_sided_projectivity(pd, cp)
            tors = tor_over_C(pd, cp, 4)
            checked += 1
            if not (pj["M_projective_right_C"] and pj["N_projective_left_C"]):
                failures.append((field.name, i, "projectivity"))
            if tors != [0, 0, 0, 0]:
                failures.append((field.name, i, tors))
    ok = not failures
    with capsys.disabled():
        _report(
            9,
            "M, N one-sided projective; Tor^C vanishes",
            ok,
            f"{checked} checks, {time.time()-t0:.1f}s"
            + (f"; failures {failures[:3]}" if failures else ""),
        )
