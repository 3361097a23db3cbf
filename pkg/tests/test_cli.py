import json

import pytest

from skewgentle.cli import main
from skewgentle.quiver import parse

from conftest import EXAMPLE_DSL

BAD_SPECIAL = EXAMPLE_DSL.replace("special 1 2;", "special 3;")


@pytest.fixture
def example_file(tmp_path):
    p = tmp_path / "example.quiver"
    p.write_text(EXAMPLE_DSL)
    return p


def test_check_exit_codes(tmp_path, example_file, capsys):
    assert main(["check", str(example_file)]) == 0
    bad = tmp_path / "bad.quiver"
    bad.write_text(BAD_SPECIAL)
    assert main(["check", str(bad)]) == 1
    out = capsys.readouterr().out
    assert "delta__3" in out
    broken = tmp_path / "broken.quiver"
    broken.write_text("vertices 1 2; arrow a 1->2;")
    assert main(["check", str(broken)]) == 2
    assert main(["check", str(tmp_path / "missing.quiver")]) == 2


def test_check_json(example_file, capsys):
    assert main(["check", str(example_file), "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["is_triple"] and set(payload["special"]) == {"1", "2"}


def test_split_emits_expected_dsl(example_file, capsys):
    assert main(["split", str(example_file)]) == 0
    out = capsys.readouterr().out
    spec = parse(out)
    assert len(spec.vertices) == 6
    assert len(spec.arrows) == 7
    assert len(spec.relations) == 2


def test_split_output_rerealizes(tmp_path, example_file):
    out = tmp_path / "split.quiver"
    assert main(["split", str(example_file), "-o", str(out)]) == 0
    from skewgentle.engine import oracle_dimension, realize
    from skewgentle.fields import QQ

    spec = parse(out.read_text())
    assert realize(spec, QQ).dim == 19 == oracle_dimension(spec, QQ, 12)


def test_split_empty_special_roundtrip(tmp_path, capsys):
    p = tmp_path / "plain.quiver"
    p.write_text("vertices 1 2;\narrow a: 1->2;\n")
    assert main(["split", str(p)]) == 0
    out = capsys.readouterr().out
    assert parse(out) == parse(p.read_text())


def test_gamma_json(example_file, capsys):
    assert main(["gamma", str(example_file), "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    g = parse(payload["dsl"])
    assert len(g.vertices) == 6 and len(g.arrows) == 6
    assert payload["arrow_action"]["a__p"] == "a__m"


def test_corners_json(example_file, capsys):
    assert main(["corners", str(example_file), "--json", "--field", "f2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["dims"] == {"A": 19, "B": 10, "M": 1, "N": 5, "C": 3, "f_image": 2}
    assert payload["C_factors"] == ["A2"]


def test_verify_full_green(example_file, capsys):
    code = main(["verify", str(example_file), "--field", "q", "--field", "f2", "--level", "full"])
    assert code == 0
    assert "verdict: pass" in capsys.readouterr().out


def test_verify_json_schema(example_file, capsys):
    assert main(["verify", str(example_file), "--level", "structural", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["schema"] == "skewgentle-report/1"
    assert payload["verdict"] == "pass"
    assert "sha256" in payload


def test_verify_structural_vacuous_markers(tmp_path, capsys):
    p = tmp_path / "plain.quiver"
    p.write_text("vertices 1 2 3;\narrow a: 1->2;\narrow b: 2->3;\nrel a*b;\n")
    assert main(["verify", str(p), "--level", "structural", "--json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    fb = payload["blocks"]["per_field"]["q"]
    assert fb["peirce"]["status"] == "vacuous"
    assert fb["quotient_iso"]["status"] == "vacuous"


def test_verify_invalid_input_exit1(tmp_path):
    p = tmp_path / "bad.quiver"
    p.write_text(BAD_SPECIAL)
    assert main(["verify", str(p)]) == 1


def test_verify_cache(tmp_path, example_file, monkeypatch, capsys):
    cache = tmp_path / "cache"
    monkeypatch.setenv("SKEWGENTLE_CACHE", str(cache))
    assert main(["verify", str(example_file), "--level", "structural"]) == 0
    files = list(cache.glob("*.json"))
    assert len(files) == 1
    # cached rerun produces the same verdict
    assert main(["verify", str(example_file), "--level", "structural"]) == 0


def test_corpus_command_and_report(tmp_path, capsys):
    out1 = tmp_path / "corpus1"
    out2 = tmp_path / "corpus2"
    assert main(["corpus", "--seed", "12", "--count", "6", "--out", str(out1)]) == 0
    assert main(["corpus", "--seed", "12", "--count", "6", "--out", str(out2)]) == 0
    m1 = json.loads((out1 / "manifest.json").read_text())
    m2 = json.loads((out2 / "manifest.json").read_text())
    assert [e["sha256"] for e in m1["instances"]] == [e["sha256"] for e in m2["instances"]]
    # generated instances pass check; structural verify reports aggregate
    capsys.readouterr()
    reports = []
    for e in m1["instances"]:
        path = out1 / e["file"]
        assert main(["check", str(path)]) == 0
        capsys.readouterr()
        rp = tmp_path / f"rep{e['id']}.json"
        assert main(["verify", str(path), "--level", "structural", "--json"]) == 0
        rp.write_text(capsys.readouterr().out)
        reports.append(rp)
    assert main(["report", *map(str, reports)]) == 0
    agg = json.loads(capsys.readouterr().out)
    assert agg["count"] == 6 and agg["verdicts"].get("pass") == 6


def test_verify_jobs_parallel(tmp_path, capsys):
    files = []
    for i, body in enumerate([EXAMPLE_DSL, "vertices 1 2;\narrow a: 1->2;\n"]):
        p = tmp_path / f"f{i}.quiver"
        p.write_text(body)
        files.append(str(p))
    assert main(["verify", *files, "--level", "structural", "--jobs", "2"]) == 0
