import json

import pytest
import yaml
from click.testing import CliRunner

from shelljet.cli.corpus import load_corpus
from shelljet.cli.main import cli
from shelljet.cli.specfile import SpecError, parse_spec


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def spec_file(tmp_path):
    def make(data, name="spec.yaml"):
        p = tmp_path / name
        p.write_text(yaml.safe_dump(data))
        return str(p)

    return make


C1 = {"group": ["T1"], "module": [{"factor": 0, "tag": "weights", "weights": [[1], [-1]]}]}
C3 = {"group": ["SL2"], "module": [{"factor": 0, "tag": "standard", "multiplicity": 3}]}
C6 = {"group": ["SL2"], "module": [{"factor": 0, "tag": "adjoint", "multiplicity": 2}]}


def test_shell_report_is_byte_identical(runner, spec_file):
    path = spec_file(C1)
    a = runner.invoke(cli, ["shell", path])
    b = runner.invoke(cli, ["shell", path])
    assert a.exit_code == 0 and a.output == b.output
    doc = json.loads(a.output)
    assert (doc["format"], doc["version"]) == ("shelljet-report", "1.0")
    assert doc["records"][0]["result"]["dim_n"] == 3
    assert "runtime" not in a.output


def test_timings_flag(runner, spec_file):
    res = runner.invoke(cli, ["shell", spec_file(C1), "--timings"])
    assert '"runtime"' in res.output


def test_jet_levels(runner, spec_file):
    res = runner.invoke(cli, ["jet", spec_file(C1), "--level", "1", "--level", "2"])
    doc = json.loads(res.output)
    lhs = [r["result"]["lhs"] for r in doc["records"] if r["name"].startswith("mustata")]
    assert lhs == [4, 7]


@pytest.mark.parametrize("what", ["m0", "modularity", "stability", "slices"])
def test_torus_subcommands(runner, spec_file, what):
    res = runner.invoke(cli, ["torus", spec_file(C1), what])
    assert res.exit_code == 0, res.output
    assert json.loads(res.output)["command"] == f"torus {what}"


def test_torus_needs_torus(runner, spec_file):
    assert runner.invoke(cli, ["torus", spec_file(C3), "m0"]).exit_code == 3


def test_criteria_chain(runner, spec_file):
    res = runner.invoke(cli, ["criteria", spec_file(C6)])
    doc = json.loads(res.output)
    status = {r["name"]: r["status"] for r in doc["records"]}
    assert status["condition_star"] == "holds" and status["CIFR"] == "holds"
    assert status["H=T.use_Em"] == "holds"


def test_criteria_slice_file(runner, spec_file):
    data = {"slices": [{"label": "a", "dim_h": 1, "h_is_torus": True, "dim_u": 0, "dim_w0": 2, "dim_w0_t": 0}]}
    res = runner.invoke(cli, ["criteria", spec_file(data)])
    assert res.exit_code == 0
    status = {r["name"]: r["status"] for r in json.loads(res.output)["records"]}
    assert status["a.use_Em"] == "unknown" and status["CIFR"] == "unknown"
    bad = {"slices": [{"label": "a", "dim_h": 1, "colour": 2}]}
    assert runner.invoke(cli, ["criteria", spec_file(bad, "bad.yaml")]).exit_code == 3


def test_unknown_keys_rejected(runner, spec_file):
    with pytest.raises(SpecError):
        parse_spec({**C1, "extra": 1})
    with pytest.raises(SpecError):
        parse_spec({"group": ["T1"], "module": [{"tag": "weights", "weights": [[1]], "colour": "red"}]})
    with pytest.raises(SpecError):
        parse_spec({**C1, "options": {"speed": "fast"}})
    res = runner.invoke(cli, ["shell", spec_file({**C1, "extra": 1})])
    assert res.exit_code == 3 and "unknown key" in res.output


def test_resource_abort(runner, spec_file):
    res = runner.invoke(cli, ["shell", spec_file(C3)], env={"SHELLJET_MAX_PAIRS": "2"})
    assert res.exit_code == 2


def test_corpus_single_entry(runner):
    res = runner.invoke(cli, ["corpus", "--id", "C6"])
    assert res.exit_code == 0, res.output
    doc = json.loads(res.output)
    checks = doc["records"][0]["result"]["checks"]
    assert all(c["match"] for c in checks)
    assert any(c["key"] == "chain.cifr" for c in checks)


def test_corpus_unknown_id(runner):
    assert runner.invoke(cli, ["corpus", "--id", "C99"]).exit_code == 3


def test_corpus_mismatch_exit_code(runner, monkeypatch):
    import shelljet.cli.corpus as corpus_mod

    entries = load_corpus()
    broken = entries["C1"]
    exp = list(broken.expected)
    exp[0] = {**exp[0], "value": 99}
    patched = {**entries, "C1": type(broken)(broken.id, broken.title, broken.spec, tuple(exp))}
    monkeypatch.setattr("shelljet.cli.main.load_corpus", lambda: patched)
    monkeypatch.setattr(corpus_mod, "load_corpus", lambda: patched)
    assert runner.invoke(cli, ["corpus", "--id", "C1"]).exit_code == 1


def test_corpus_provenance_required():
    with pytest.raises(ValueError):
        load_corpus(
            "entries:\n  - id: X\n    title: t\n    spec: {group: [T1], module: [{tag: trivial}]}\n"
            "    expected: [{key: shell.dim_n, value: 1, citation: c}]\n"
        )


def test_repvar_command(runner):
    args = ["repvar", "--genus", "2", "--samples", "2"]
    a = runner.invoke(cli, args)
    assert a.exit_code == 0
    assert a.output == runner.invoke(cli, args).output
    status = {r["name"]: r["status"] for r in json.loads(a.output)["records"]}
    assert status["identity_point"] == "singular" and status["summary"] == "holds"


def test_export(runner, spec_file, tmp_path):
    out = tmp_path / "c1.txt"
    assert runner.invoke(cli, ["export", spec_file(C1), "-o", str(out)]).exit_code == 0
    assert out.read_text().splitlines()[1] == "x1_0*xi1_0 - x2_0*xi2_0"
