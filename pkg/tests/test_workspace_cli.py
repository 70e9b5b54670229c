import json
import subprocess
import sys
from pathlib import Path

import pytest

from omegafam import cli
from omegafam import workspace as wsp
from omegafam.exact_linalg import is_zero

DEMO = Path(__file__).resolve().parents[1] / "demos" / "workspace.json"


def write(tmp_path, data, name="ws.json"):
    p = tmp_path / name
    p.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(p)


@pytest.fixture(scope="module")
def corpus_file(tmp_path_factory):
    p = tmp_path_factory.mktemp("corpus") / "corpus.json"
    wsp.dump_workspace(wsp.corpus_workspace(), p)
    return str(p)


# parsing

def test_minimal_workspace(tmp_path):
    ws = wsp.parse_workspace(write(tmp_path, {"semigroups": {"one": {"builtin": "trivial"}}}))
    assert ws.names() == [("semigroups", "one")]


@pytest.mark.parametrize("data,path", [
    ({"semigroups": {"one": {"builtin": "trivial"}},
      "families": {"f": {"semigroup": "one", "algebra": "nope", "maps": [[[0]]]}}}, "$.families.f.algebra"),
    ({"algebras": {"k": {"dim": 1, "mult": [[["1/0"]]]}}}, "$.algebras.k"),
    ({"algebras": {"k": {"dim": 2, "mult": [[[1]]]}}}, "$.algebras.k"),
    ({"algebras": {"k": {"mult": [[[1]]]}}}, "$.algebras.k.dim"),
    ({"algebras": {"k": {"dim": 1, "mult": [[["x"]]]}}}, "$.algebras.k"),
    ({"gadgets": {}}, "$.gadgets"),
    ({"semigroups": {"bad": {"table": [[1, 0], [0, 0]]}}}, "$.semigroups.bad"),
])
def test_parse_errors_name_the_path(tmp_path, data, path):
    with pytest.raises(wsp.WorkspaceError) as e:
        wsp.parse_workspace(write(tmp_path, data))
    assert e.value.path == path


def test_dangling_reference_mentions_key(tmp_path):
    p = write(tmp_path, {"semigroups": {"one": {"builtin": "trivial"}},
                         "families": {"f": {"semigroup": "one", "algebra": "nope", "maps": [[[0]]]}}})
    code, text = cli.run(["--workspace", p, "--cmd", "validate"])
    assert code == 2 and "nope" in text and "$.families.f" in text


def test_malformed_json(tmp_path):
    with pytest.raises(wsp.WorkspaceError) as e:
        wsp.parse_workspace(write(tmp_path, "{not json"))
    assert e.value.path == "$"


def test_corpus_round_trip(corpus_file, tmp_path):
    ws = wsp.parse_workspace(corpus_file)
    out = tmp_path / "again.json"
    wsp.dump_workspace(ws, out)
    ws2 = wsp.parse_workspace(str(out))
    assert ws.names() == ws2.names()
    for sec, name in ws.names():
        if sec == "families":
            assert is_zero(ws.get(name).maps - ws2.get(name).maps)


def test_corpus_validation_matches_family_checks(corpus_file, corpus):
    code, text = cli.run(["--workspace", corpus_file, "--cmd", "validate", "--out", "json"])
    rep = json.loads(text)
    assert code == 1  # the corpus deliberately contains failing families
    verdict = {v["object"]: v["ok"] for v in rep["verdicts"]}
    from omegafam import families as fm
    for inst in corpus:
        assert verdict[inst.name] == fm.check_twisted_o_family(inst.family, inst.algebra, inst.bimodule,
                                                               inst.cocycle).ok


# commands and exit codes

def test_validate_single_objects():
    code, _ = cli.run(["--workspace", str(DEMO), "--cmd", "validate", "--object", "k2_nijenhuis"])
    assert code == 0
    code, text = cli.run(["--workspace", str(DEMO), "--cmd", "validate", "--object", "id_rb", "--out", "json"])
    assert code == 1
    v = next(v for v in json.loads(text)["verdicts"] if not v["ok"])
    assert v["check"] == "Rota-Baxter family"
    assert v["witness"]["alpha"] == 0 and v["witness"]["beta"] == 0


def test_usage_errors():
    assert cli.run([])[0] == 2
    assert cli.run(["--workspace", str(DEMO), "--cmd", "validate", "--object", "ghost"])[0] == 2
    assert cli.run(["--workspace", str(DEMO), "--cmd", "nonsense"])[0] == 2
    assert cli.run(["--workspace", "/nonexistent/ws.json", "--cmd", "validate"])[0] == 2


def test_cohomology_command():
    code, text = cli.run(["--workspace", str(DEMO), "--cmd", "cohomology", "--object", "zero_rb",
                          "--n-max", "3", "--out", "json"])
    assert code == 0
    rep = json.loads(text)
    assert [r["dim_H"] for r in rep["table"]] == [1, 1, 1, 1]
    a = cli.run(["--workspace", str(DEMO), "--cmd", "cohomology", "--object", "k2_rb", "--out", "json"])
    b = cli.run(["--workspace", str(DEMO), "--cmd", "cohomology", "--object", "k2_rb", "--out", "json",
                 "--complex", "omega_hoch"])
    assert a[0] == b[0] == 0
    assert json.loads(a[1])["table"] == json.loads(b[1])["table"]


def test_deform_command():
    code, text = cli.run(["--workspace", str(DEMO), "--cmd", "deform", "--object", "k2_rb", "--order", "2",
                          "--seed", "3"])
    assert code == 0 and "FAIL" not in text
    code, _ = cli.run(["--workspace", str(DEMO), "--cmd", "deform", "--object", "k2_rb_const"])
    assert code == 0


def test_search_command():
    code, text = cli.run(["--workspace", str(DEMO), "--cmd", "search", "--target", "rb", "--algebra", "k",
                          "--semigroup", "one", "--coeffs=0,1", "--out", "json"])
    assert code == 0
    rep = json.loads(text)
    assert rep["count"] == 1
    code, text = cli.run(["--workspace", str(DEMO), "--cmd", "search", "--target", "rb", "--algebra", "k2",
                          "--semigroup", "lz2", "--coeffs=-1,0,1", "--bound", "10"])
    assert code == 1 and "bound" in text


@pytest.mark.parametrize("recipe,args", [("semidirect", "k2,k2_adj"), ("induce-ns", "k2_nijenhuis"),
                                         ("collapse", "k2_rb")])
def test_construct_recipes(tmp_path, recipe, args):
    out = tmp_path / "saved.json"
    code, text = cli.run(["--workspace", str(DEMO), "--cmd", "construct", "--recipe", recipe, "--args", args,
                          "--name", "new", "--save", str(out)])
    assert code == 0, text
    ws = wsp.parse_workspace(str(out))
    assert any(n.startswith("new") for _, n in ws.names())


def test_construct_precondition_failure():
    code, text = cli.run(["--workspace", str(DEMO), "--cmd", "construct", "--recipe", "induce-ns",
                          "--args", "id_rb", "--name", "x"])
    assert code == 1 and "FAIL precondition" in text


def test_reynolds_from_non_nilpotent_derivation(tmp_path):
    # on the zero algebra the identity is a derivation, but it is not nilpotent
    p = write(tmp_path, {"semigroups": {"one": {"builtin": "trivial"}},
                         "algebras": {"z": {"dim": 1, "mult": [[[0]]]}},
                         "families": {"d": {"semigroup": "one", "algebra": "z", "kind": "derivation",
                                            "maps": {"0": [[1]]}}}})
    code, text = cli.run(["--workspace", p, "--cmd", "construct", "--recipe", "reynolds-from-derivation",
                          "--args", "d", "--name", "r"])
    assert code == 1 and "nilpotent" in text


def test_requests_run_when_no_command():
    code, text = cli.run(["--workspace", str(DEMO), "--out", "json"])
    rep = json.loads(text)
    assert rep["command"] == "requests" and len(rep["reports"]) == 12
    failing = [v.get("object") for r in rep["reports"] for v in r.get("verdicts", []) if not v["ok"]]
    assert code == 1 and set(failing) == {"id_rb"}


def test_deterministic_output(tmp_path):
    cmd = [sys.executable, "-m", "omegafam", "--workspace", str(DEMO), "--out", "json"]
    first = subprocess.run(cmd, capture_output=True)
    second = subprocess.run(cmd, capture_output=True)
    assert first.returncode == second.returncode == 1
    assert first.stdout == second.stdout and first.stdout
