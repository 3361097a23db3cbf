"""Command-line front end.

Subcommands: check, split, gamma, corners, verify, corpus, report.
Exit codes are a stable contract: 0 success, 1 verdict failure, 2 input
error, 3 cap exceeded.  `--json` output is schema-versioned; the text
output is rendered from the same report objects.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .corpus import GenConfig, write_corpus
from .engine import realize
from .fields import field_by_name
from .gentle import SkewGentleTriple, check_skew_gentle
from .peirce import decompose_bimodules, peirce, present_B, present_C
from .quiver import DslSyntaxError, QuiverError, parse, serialize
from .report import aggregate, render_text, verify_file
from .splitting import build_gamma, split_triple

EXIT_OK = 0
EXIT_VERDICT = 1
EXIT_INPUT = 2
EXIT_CAP = 3

CACHE_ENV = "SKEWGENTLE_CACHE"


def _load_spec(path):
    try:
        return parse(Path(path).read_text())
    except FileNotFoundError as exc:
        raise _InputError(f"cannot read {path}: {exc}")
    except (DslSyntaxError, QuiverError) as exc:
        raise _InputError(f"{path}: {exc}")


class _InputError(Exception):
    pass


def _emit(args, payload, text):
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=1, default=str))
    else:
        print(text)


def cmd_check(args) -> int:
    spec = _load_spec(args.file)
    res = check_skew_gentle(spec)
    if isinstance(res, SkewGentleTriple):
        payload = {
            "schema": "skewgentle-verdict/1",
            "is_triple": True,
            "special": list(res.special_vertices),
        }
        _emit(args, payload, f"valid skew-gentle triple (Sp = {set(res.special_vertices) or '{}'})")
        return EXIT_OK
    payload = {"schema": "skewgentle-verdict/1", "is_triple": False}
    payload.update(res.to_json())
    _emit(args, payload, "not a skew-gentle triple:\n" + json.dumps(res.to_json(), indent=1))
    return EXIT_VERDICT


def cmd_split(args) -> int:
    spec = _load_spec(args.file)
    res = check_skew_gentle(spec)
    if not isinstance(res, SkewGentleTriple):
        print(json.dumps(res.to_json(), indent=1), file=sys.stderr)
        return EXIT_VERDICT
    text = serialize(split_triple(res).spec)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_gamma(args) -> int:
    spec = _load_spec(args.file)
    res = check_skew_gentle(spec)
    if not isinstance(res, SkewGentleTriple):
        print(json.dumps(res.to_json(), indent=1), file=sys.stderr)
        return EXIT_VERDICT
    g = build_gamma(res)
    text = serialize(g.spec)
    if args.json:
        payload = {
            "schema": "skewgentle-gamma/1",
            "dsl": text,
            "vertex_action": g.vertex_action,
            "arrow_action": g.arrow_action,
        }
        out = json.dumps(payload, indent=1)
        if args.output:
            Path(args.output).write_text(out + "\n")
        else:
            print(out)
        return EXIT_OK
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_corners(args) -> int:
    spec = _load_spec(args.file)
    res = check_skew_gentle(spec)
    if not isinstance(res, SkewGentleTriple):
        print(json.dumps(res.to_json(), indent=1), file=sys.stderr)
        return EXIT_VERDICT
    field = field_by_name(args.field)
    sq = split_triple(res)
    alg = realize(sq.spec, field)
    if not res.special_vertices:
        payload = {
            "schema": "skewgentle-corners/1",
            "dims": {"A": alg.dim, "B": alg.dim, "M": 0, "N": 0, "C": 0},
            "note": "empty special set: B = A, C = 0",
        }
        _emit(args, payload, json.dumps(payload, indent=1))
        return EXIT_OK
    pd = peirce(alg, sq)
    cp = present_C(pd)
    bp = present_B(pd, res)
    bd = decompose_bimodules(pd, cp)
    payload = {
        "schema": "skewgentle-corners/1",
        "field": field.name,
        "dims": pd.dims,
        "C_factors": cp.factors,
        "C_quiver": serialize(cp.quiver),
        "B_quiver": serialize(bp.quiver),
        "bimodule_groups": {
            "M": bd.m_arrow_groups,
            "N": bd.n_arrow_groups,
        },
        "verdicts": {"bimodule_decomposition": bd.ok},
    }
    text = (
        f"dims: {pd.dims}\nC factors: {cp.factors}\n"
        f"M groups: {bd.m_arrow_groups}\nN groups: {bd.n_arrow_groups}"
    )
    _emit(args, payload, text)
    return EXIT_OK if bd.ok else EXIT_VERDICT


def _cache_path(path, fields, level):
    root = os.environ.get(CACHE_ENV)
    if not root:
        return None
    digest = hashlib.sha256(
        Path(path).read_bytes() + f"|{','.join(fields)}|{level}".encode()
    ).hexdigest()
    d = Path(root)
    d.mkdir(parents=True, exist_ok=True)
    return d / f"{digest}.json"


def _verify_one(path, fields, level, cap, guard):
    cpath = _cache_path(path, fields, level)
    if cpath and cpath.exists():
        return json.loads(cpath.read_text())
    rep = verify_file(
        path,
        fields=fields,
        level=level,
        resolution_cap=cap,
        bimodule_guard=guard,
    )
    if cpath:
        cpath.write_text(json.dumps(rep, default=str))
    return rep


def cmd_verify(args) -> int:
    fields = tuple(args.field) if args.field else ("q",)
    reports = []
    if args.jobs > 1 and len(args.files) > 1:
        from multiprocessing import Pool

        with Pool(args.jobs) as pool:
            reports = pool.starmap(
                _verify_one,
                [(p, fields, args.level, args.cap, args.guard) for p in args.files],
            )
    else:
        for p in args.files:
            reports.append(_verify_one(p, fields, args.level, args.cap, args.guard))
    worst = EXIT_OK
    for rep in reports:
        if args.json:
            print(json.dumps(rep, indent=1, default=str))
        else:
            print(render_text(rep))
        if rep["verdict"] == "fail":
            worst = max(worst, EXIT_VERDICT)
        elif rep["verdict"] == "cap":
            worst = max(worst, EXIT_CAP)
    return worst


def cmd_corpus(args) -> int:
    cfg = GenConfig(
        seed=args.seed,
        count=args.count,
        n_vertices=(args.min_vertices, args.max_vertices),
        n_arrows=(args.min_arrows, args.max_arrows),
        relation_density=Fraction(args.relation_density),
        special_density=Fraction(args.special_density),
    )
    manifest = write_corpus(cfg, args.out)
    print(
        f"wrote {len(manifest['instances'])} instances to {args.out} "
        f"(seed {cfg.seed})"
    )
    return EXIT_OK


def cmd_report(args) -> int:
    reports = []
    for p in args.files:
        reports.append(json.loads(Path(p).read_text()))
    agg = aggregate(reports)
    print(json.dumps(agg, indent=1))
    return EXIT_OK if not agg["failures"] else EXIT_VERDICT


def build_parser():
    ap = argparse.ArgumentParser(
        prog="skewgentle",
        description="Exact verification toolkit for skew-gentle algebras",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="validate a skew-gentle triple")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("split", help="emit the split quiver (Q^A, I^A) as DSL")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_split)

    p = sub.add_parser("gamma", help="emit the companion gentle pair and action")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_gamma)

    p = sub.add_parser("corners", help="Peirce dimensions and corner data")
    p.add_argument("file")
    p.add_argument("--field", default="q")
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_corners)

    p = sub.add_parser("verify", help="run the verification pipeline")
    p.add_argument("files", nargs="+")
    p.add_argument(
        "--field",
        action="append",
        choices=["q", "f2", "f3", "f5", "f7"],
        help="coefficient field (repeatable; default q)",
    )
    p.add_argument("--level", choices=["structural", "homological", "full"], default="full")
    p.add_argument("--cap", type=int, default=20, help="resolution cap")
    p.add_argument("--guard", type=int, default=30, help="bimodule size guard")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json", action="store_true")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("corpus", help="generate a deterministic corpus")
    p.add_argument("--seed", type=int, default=20260810)
    p.add_argument("--count", type=int, default=500)
    p.add_argument("--min-vertices", type=int, default=2)
    p.add_argument("--max-vertices", type=int, default=7)
    p.add_argument("--min-arrows", type=int, default=2)
    p.add_argument("--max-arrows", type=int, default=8)
    p.add_argument("--relation-density", default="7/10")
    p.add_argument("--special-density", default="1/2")
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_corpus)

    p = sub.add_parser("report", help="aggregate verify reports")
    p.add_argument("files", nargs="+")
    p.set_defaults(fn=cmd_report)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (DslSyntaxError, QuiverError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
