"""Full verification pipeline over one parsed instance, with reporting.

Levels: `structural` covers validation, splitting, engine/oracle
cross-checks, probes, Peirce dims and the corner presentations;
`homological` adds projectivity, Tor vanishing, the stratifying ideal,
Gorensteinness and selfinjectivity; `full` adds the bimodule projective
dimension (size-guarded), the finitistic-dimension report and the Ext
spot check.  Every block is present in the report, or explicitly marked
skipped/vacuous with its reason.
"""

from __future__ import annotations

import hashlib
import time

from .engine import CapExceeded, OracleCapExceeded, oracle_dimension, realize
from .fields import field_by_name
from .gentle import SkewGentleTriple, check_gentle, check_skew_gentle
from .homology import (
    SizeGuardExceeded,
    bimodule_pd_bound,
    check_one_sided_projectivity,
    ext_vanishing_spot_check,
    findim_report,
    gorenstein_check,
    selfinjective_check,
    stratifying_check,
    syzygy_module,
    tor_over_C,
)
from .modules import simple_module
from .peirce import decompose_bimodules, peirce, present_B, present_C, quotient_iso_check
from .peirce import f_image_nilpotent, g_lands_in_radical, morita_compatibility
from .quiver import QuiverSpec, parse, serialize
from .splitting import build_gamma, split_triple, structure_probes

SCHEMA = "skewgentle-report/1"
LEVELS = ("structural", "homological", "full")


def _block(status, **kw):
    out = {"status": status}
    out.update(kw)
    return out


def verify_spec(
    spec: QuiverSpec,
    fields=("q",),
    level: str = "full",
    resolution_cap: int = 20,
    bimodule_guard: int = 30,
    instance: str = "<memory>",
):
    """Run the pipeline at the requested depth; returns the report dict."""
    if level not in LEVELS:
        raise ValueError(f"unknown level {level!r}")
    depth = LEVELS.index(level)
    t_start = time.perf_counter()
    report = {
        "schema": SCHEMA,
        "instance": instance,
        "level": level,
        "fields": list(fields),
        "blocks": {},
        "timings": {},
    }
    blocks = report["blocks"]

    res = check_skew_gentle(spec)
    if not isinstance(res, SkewGentleTriple):
        blocks["triple"] = _block("fail", verdict=res.to_json())
        report["verdict"] = "fail"
        return report
    triple = res
    vacuous = not triple.special_vertices
    blocks["triple"] = _block(
        "pass",
        special=list(triple.special_vertices),
        ordinary=list(triple.ordinary_vertices),
    )

    sq = split_triple(triple)
    blocks["split"] = _block(
        "pass",
        n_vertices=len(sq.spec.vertices),
        n_arrows=len(sq.spec.arrows),
        n_relations=len(sq.spec.relations),
        dsl=serialize(sq.spec),
    )
    gamma = build_gamma(triple)
    gv = check_gentle(gamma.spec)
    blocks["gamma"] = _block(
        "pass" if gv.is_gentle else "fail",
        n_vertices=len(gamma.spec.vertices),
        n_arrows=len(gamma.spec.arrows),
        gentle=gv.is_gentle,
    )

    per_field = {}
    cross = {"dims": set(), "id_pairs": set(), "bools": set()}
    any_fail = gv.is_gentle is False
    any_cap = False
    for fname in fields:
        t0 = time.perf_counter()
        f = field_by_name(fname)
        fb: dict = {}
        try:
            alg = realize(sq.spec, f)
        except CapExceeded as exc:
            fb["engine"] = _block("cap", detail=str(exc))
            per_field[fname] = fb
            any_cap = True
            continue
        try:
            odim = oracle_dimension(sq.spec, f, alg.cert_degree + 1)
            agree = odim == alg.dim
        except OracleCapExceeded as exc:
            odim, agree = None, False
        fb["engine"] = _block(
            "pass" if agree else "fail", dim=alg.dim, oracle=odim
        )
        any_fail |= not agree
        cross["dims"].add(alg.dim)

        probes = structure_probes(sq, alg)
        fb["probes"] = _block(
            "pass" if probes.ok else "fail", checked=probes.checked,
            failures=probes.failures,
        )
        any_fail |= not probes.ok

        if vacuous:
            for name in ("peirce", "corners", "bimodules", "quotient_iso"):
                fb[name] = _block("vacuous", reason="empty special set")
            quotient_ok = True
        else:
            pd = peirce(alg, sq)
            dims = pd.dims
            peirce_ok = (
                dims["A"] == dims["B"] + dims["M"] + dims["N"] + dims["C"]
                and morita_compatibility(pd)
                and g_lands_in_radical(pd)
                and f_image_nilpotent(pd)
            )
            fb["peirce"] = _block("pass" if peirce_ok else "fail", dims=dims)
            any_fail |= not peirce_ok
            try:
                cp = present_C(pd)
                bp = present_B(pd, triple)
                fb["corners"] = _block(
                    "pass", C_factors=cp.factors, B_dim=bp.algebra.dim
                )
            except Exception as exc:
                fb["corners"] = _block("fail", detail=str(exc))
                any_fail = True
                per_field[fname] = fb
                continue
            bd = decompose_bimodules(pd, cp)
            fb["bimodules"] = _block(
                "pass" if bd.ok else "fail",
                m_groups=bd.m_arrow_groups,
                n_groups=bd.n_arrow_groups,
            )
            any_fail |= not bd.ok
            qr = quotient_iso_check(pd, triple)
            fb["quotient_iso"] = _block(
                "pass" if qr.ok else "fail",
                dim_quotient=qr.dim_quotient,
                dim_target=qr.dim_target,
                generators_match=qr.generator_check,
            )
            any_fail |= not qr.ok

        if depth >= 1:
            if vacuous:
                fb["projectivity"] = _block("vacuous", reason="empty special set")
                fb["tor"] = _block("vacuous", reason="empty special set")
                fb["stratifying"] = _block(
                    "vacuous", reason="zero ideal is stratifying", stratifying=True
                )
            else:
                pj = check_one_sided_projectivity(pd, cp)
                ok = pj["M_projective_right_C"] and pj["N_projective_left_C"]
                fb["projectivity"] = _block("pass" if ok else "fail", **pj)
                any_fail |= not ok
                tors = tor_over_C(pd, cp)
                fb["tor"] = _block(
                    "pass" if all(t == 0 for t in tors) else "fail", dims=tors
                )
                any_fail |= any(t != 0 for t in tors)
                st = stratifying_check(pd, cp)
                fb["stratifying"] = _block(
                    "pass" if st["stratifying"] else "fail", **st
                )
                any_fail |= not st["stratifying"]
            gc = gorenstein_check(alg, resolution_cap)
            if gc["gorenstein"]:
                fb["gorenstein"] = _block("pass", **gc)
                cross["id_pairs"].add((gc["id_left"], gc["id_right"]))
            else:
                fb["gorenstein"] = _block("cap", **gc)
                any_cap = True
            si = selfinjective_check(alg, spec)
            fb["selfinjective"] = _block(
                "pass" if si.get("agree", True) else "fail", **si
            )
            any_fail |= not si.get("agree", True)
            cross["bools"].add((fb["stratifying"].get("stratifying"), si["selfinjective"]))

        if depth >= 2:
            if vacuous:
                fb["bimodule_pd"] = _block(
                    "vacuous", reason="zero ideal", pd=0
                )
            else:
                try:
                    bpd = bimodule_pd_bound(pd, dim_guard=bimodule_guard)
                    fb["bimodule_pd"] = _block(
                        "pass" if bpd is not None and bpd <= 1 else (
                            "cap" if bpd is None else "fail"
                        ),
                        pd=bpd,
                    )
                    any_fail |= bpd is not None and bpd > 1
                    any_cap |= bpd is None
                except SizeGuardExceeded as exc:
                    fb["bimodule_pd"] = _block("skipped", reason=str(exc))
            if fb.get("gorenstein", {}).get("status") == "pass":
                fr = findim_report(alg, resolution_cap)
                fb["findim"] = _block(
                    "pass",
                    witness=fr["findim_witness"],
                    empirical=fr["empirical_max_finite_pd"],
                )
            else:
                fb["findim"] = _block("skipped", reason="no Gorenstein verdict")
            flags = []
            for v in range(len(alg.vertex_names)):
                sy = syzygy_module(alg, simple_module(alg, v))
                ev = ext_vanishing_spot_check(alg, sy, k_max=8)
                if ev["flagged"]:
                    flags.append(alg.vertex_names[v])
            fb["ext_spot"] = _block("pass" if not flags else "fail", flags=flags)
            any_fail |= bool(flags)

        per_field[fname] = fb
        report["timings"][fname] = round(time.perf_counter() - t0, 4)

    blocks["per_field"] = per_field
    blocks["cross_field"] = _block(
        "pass"
        if len(cross["dims"]) <= 1 and len(cross["id_pairs"]) <= 1 and len(cross["bools"]) <= 1
        else "fail",
        dims=sorted(cross["dims"]),
        id_pairs=sorted(cross["id_pairs"]),
    )
    any_fail |= blocks["cross_field"]["status"] == "fail"
    report["timings"]["total"] = round(time.perf_counter() - t_start, 4)
    report["verdict"] = "fail" if any_fail else ("cap" if any_cap else "pass")
    return report


def verify_file(path, **kw):
    text = open(path, "rb").read()
    spec = parse(text.decode("utf-8"))
    rep = verify_spec(spec, instance=str(path), **kw)
    rep["sha256"] = hashlib.sha256(text).hexdigest()
    return rep


def render_text(report) -> str:
    """Human-readable view derived from the same report object."""
    lines = [f"instance: {report['instance']}  level: {report['level']}"]
    blocks = report["blocks"]
    for name in ("triple", "split", "gamma"):
        if name in blocks:
            lines.append(f"  {name}: {blocks[name]['status']}")
    for fname, fb in blocks.get("per_field", {}).items():
        lines.append(f"  field {fname}:")
        for bname, b in fb.items():
            extra = ""
            if bname == "engine" and "dim" in b:
                extra = f" (dim {b['dim']}, oracle {b.get('oracle')})"
            if bname == "gorenstein" and "id_left" in b:
                extra = f" (id {b['id_left']}, {b['id_right']})"
            if bname == "corners" and "C_factors" in b:
                extra = f" (C = {' x '.join(b['C_factors']) or '0'})"
            lines.append(f"    {bname}: {b['status']}{extra}")
    if "cross_field" in blocks:
        lines.append(f"  cross-field agreement: {blocks['cross_field']['status']}")
    lines.append(f"verdict: {report['verdict']}  ({report['timings'].get('total')}s)")
    return "\n".join(lines)


def aggregate(reports) -> dict:
    """Summary over many reports (for the `report` subcommand)."""
    out = {
        "schema": "skewgentle-aggregate/1",
        "count": len(reports),
        "verdicts": {},
        "failures": [],
    }
    for r in reports:
        v = r.get("verdict", "missing")
        out["verdicts"][v] = out["verdicts"].get(v, 0) + 1
        if v == "fail":
            out["failures"].append(r.get("instance"))
    return out
