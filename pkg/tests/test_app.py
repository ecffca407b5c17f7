import hashlib
import json

import pytest

import app
from liepoisson.documents import loads
from models import Certificate, Report, RunConfig


def run(argv):
    return app.parse_and_dispatch(argv)


def test_verify_sl2_borel(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = run(["verify", "--series", "A", "--rank", "1", "--scenario", "borel", "--samples", "8",
                "--out", str(out)])
    assert code == 0
    doc = loads(out.read_text(encoding="utf-8"), "report")
    assert doc["status"] == "pass"
    assert doc["seed"] == "42"
    printed = capsys.readouterr().out.splitlines()
    assert printed[0].split() == ["pass", "structure"]
    assert printed[-1].startswith("pass")


def test_verify_is_byte_identical(tmp_path):
    path = tmp_path / "report.json"
    argv = ["verify", "--series", "A", "--rank", "1", "--scenario", "involution",
            "--seed", "5", "--samples", "4", "--out", str(path)]
    assert run(argv) == 0
    first = path.read_bytes()
    assert run(argv) == 0
    assert path.read_bytes() == first
    assert loads(first.decode("utf-8"), "report")["out"] == str(path)


@pytest.mark.parametrize("role", ["pc", "centre-0", "centre-inf", "witness"])
def test_report_digests_match_generator_documents(tmp_path, capsys, role):
    out = tmp_path / "report.json"
    algebra = ["--series", "A", "--rank", "1", "--scenario", "borel"]
    assert run(["verify", *algebra, "--samples", "4", "--out", str(out)]) == 0
    capsys.readouterr()
    digests = loads(out.read_text(encoding="utf-8"), "report")["digests"]
    assert run(["generators", *algebra, "--role", role]) == 0
    printed = capsys.readouterr().out
    assert digests[f"generators:{role}"] == hashlib.sha256(printed.encode("utf-8")).hexdigest()


def test_report_digest_matches_build(tmp_path, capsys):
    out = tmp_path / "report.json"
    algebra = ["--series", "A", "--rank", "1", "--scenario", "involution"]
    assert run(["verify", *algebra, "--samples", "4", "--out", str(out)]) == 0
    capsys.readouterr()
    digests = loads(out.read_text(encoding="utf-8"), "report")["digests"]
    assert run(["build", *algebra]) == 0
    printed = capsys.readouterr().out
    assert digests["algebra"] == hashlib.sha256(printed.encode("utf-8")).hexdigest()


def test_verify_failure_exit_code(monkeypatch, tmp_path):
    def failing(scenario, series, rank, seed, samples, **kwargs):
        config = RunConfig("verify", series, rank, scenario, seed, samples)
        return Report(config, (Certificate("structure", "fail", {"failed": ["jacobi"]}, seed),))

    monkeypatch.setattr(app, "run_scenario", failing)
    code = run(["verify", "--series", "A", "--rank", "1", "--scenario", "borel"])
    assert code == 1


def test_verify_inconclusive_is_not_a_failure(monkeypatch):
    def unsure(scenario, series, rank, seed, samples, **kwargs):
        config = RunConfig("verify", series, rank, scenario, seed, samples)
        return Report(config, (Certificate("trdeg", "inconclusive", {}, seed),))

    monkeypatch.setattr(app, "run_scenario", unsure)
    assert run(["verify", "--series", "A", "--rank", "1", "--scenario", "borel"]) == 0


@pytest.mark.parametrize("argv", [
    ["verify", "--series", "A", "--rank", "1", "--scenario", "parabolic"],
    ["verify", "--series", "A", "--rank", "1", "--scenario", "borel", "--samples", "0"],
    ["verify", "--series", "A", "--rank", "1", "--scenario", "involution", "--seed", "-1"],
    ["verify", "--series", "C", "--rank", "2", "--scenario", "involution"],
    ["build", "--series", "A", "--rank", "9"],
    ["build", "--series", "G", "--rank", "2"],
    ["generators", "--series", "A", "--rank", "1", "--scenario", "involution", "--role", "witness"],
    ["frobnicate"],
])
def test_usage_errors_exit_2(argv):
    assert run(argv) == 2


def test_build_prints_document(capsys):
    assert run(["build", "--series", "A", "--rank", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["kind"] == "algebra"
    assert doc["basis"] == ["e_1", "h_1", "f_1"]


def test_build_adapted_basis(capsys):
    assert run(["build", "--series", "A", "--rank", "1", "--scenario", "involution"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["basis"] == ["e_1", "h_1", "k_1"]
    assert doc["parts"] == {"e_1": "h", "h_1": "h", "k_1": "r"}


def test_invariants_command(tmp_path):
    out = tmp_path / "inv.json"
    assert run(["invariants", "--series", "A", "--rank", "2", "--out", str(out)]) == 0
    doc = loads(out.read_text(encoding="utf-8"), "invariants")
    assert [i["degree"] for i in doc["invariants"]] == ["2", "3"]


@pytest.mark.parametrize("role,count", [("pc", "2"), ("centre-0", "1"), ("centre-inf", "1"), ("witness", "3")])
def test_generators_command(capsys, role, count):
    assert run(["generators", "--series", "A", "--rank", "1", "--scenario", "borel", "--role", role]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["role"] == role
    assert doc["count"] == count


def test_pencil_command(tmp_path, capsys):
    point = tmp_path / "point.json"
    point.write_text(json.dumps({"coords": ["1", "0", "1"]}), encoding="utf-8")
    code = run(["pencil", "--series", "A", "--rank", "1", "--scenario", "borel", "--point", str(point)])
    assert code == 0
    doc = json.loads(capsys.readouterr().out)
    assert [s["kind"] for s in doc["singular"]] == ["infinity"]


def test_pencil_bad_point(tmp_path):
    point = tmp_path / "point.json"
    point.write_text(json.dumps({"coords": ["1", "0"]}), encoding="utf-8")
    assert run(["pencil", "--series", "A", "--rank", "1", "--scenario", "borel", "--point", str(point)]) == 2
