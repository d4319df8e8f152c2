import io as stdio
import json
import random

import pytest

from lwr import io
from lwr.catalog import BAD_CONDITIONS, CATALOG, VALID, heisenberg
from lwr.cli import run_command
from lwr.embedding import build_tables
from lwr.hom import HomSpace
from lwr.scalars import QQ, CharacteristicTwo


def run(argv):
    out, err = stdio.StringIO(), stdio.StringIO()
    code = run_command(argv, stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def fixture_file(tmp_path):
    def make(name, prime=None):
        path = tmp_path / f"{name}.json"
        argv = ["catalog", name, "--out", str(path)] + (["--prime", str(prime)] if prime else [])
        assert run(argv)[0] == 0
        return str(path)
    return make


def test_parse_heisenberg_round_trip(fixture_file):
    d = io.parse_presentation(fixture_file("heisenberg"))
    ref = heisenberg()
    assert d.M == ref.M and d.L == ref.L and d.action == ref.action and d.g == ref.g


def test_prime_two_rejected():
    obj = io.presentation_to_json(heisenberg())
    obj["field"] = {"type": "prime", "p": 2}
    with pytest.raises(CharacteristicTwo):
        io.presentation_from_json(obj)


def test_bracket_with_equal_indices_rejected():
    obj = io.presentation_to_json(heisenberg())
    obj["L"]["brackets"] = [{"i": 1, "j": 1, "coeffs": {"e1": "1"}}]
    with pytest.raises(io.PresentationError) as info:
        io.presentation_from_json(obj)
    assert info.value.path == "L.brackets[0]"


@pytest.mark.parametrize("mutate,path", [
    (lambda o: o["M"].update(dim=4), "M.dim"),
    (lambda o: o["factor_set"][0]["value"].update(w="1"), "factor_set[0].value.w"),
    (lambda o: o["factor_set"][0].update(v=7), "factor_set[0].v"),
    (lambda o: o["factor_set"][0]["value"].update(z="1/0"), "factor_set[0].value.z"),
    (lambda o: o.pop("field"), ""),
])
def test_presentation_errors_have_paths(mutate, path):
    obj = io.presentation_to_json(heisenberg())
    mutate(obj)
    with pytest.raises(io.PresentationError) as info:
        io.presentation_from_json(obj)
    assert info.value.path == path


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_canonical_round_trip(name):
    d = CATALOG[name](QQ)
    text = io.dump_presentation(d)
    again = io.dump_presentation(io.presentation_from_json(json.loads(text)))
    assert again == text


def test_hom_json_round_trip():
    d = VALID["direct-sum"](QQ)
    S = HomSpace(d.M, d.L)
    f = S.random_hom(random.Random(2), 3)
    back = io.hom_from_json(json.loads(io.dumps(io.hom_to_json(f, d.M, d.L))), d.M, d.L)
    assert back.valid_degree == f.valid_degree and back.same_values(f)


@pytest.mark.parametrize("name", ["heisenberg", "oscillator", "sl2-module-trivial-g"])
def test_tables_json_round_trip(name):
    d = VALID[name](QQ)
    t = build_tables(d, 3)
    assert io.tables_from_json(json.loads(io.dumps(io.tables_to_json(t))), d) == t


def test_verify_heisenberg(fixture_file):
    code, out, _ = run(["verify", fixture_file("heisenberg"), "--degree", "3", "--json"])
    assert code == 0
    rep = json.loads(out)
    assert rep["summary"]["total"]["fail"] == 0 and rep["failures"] == []
    for rel in ("R1", "R2", "R3", "HOM", "INJ"):
        s = rep["summary"][rel]
        n = sum(c["relation"] == rel for c in rep["certificates"])
        assert s["pass"] + s["fail"] == n > 0


def test_validate_bad_cocycle(fixture_file):
    code, out, _ = run(["validate", fixture_file("cocycle-bad"), "--json"])
    assert code == 1
    viol = json.loads(out)["validation"]["violations"]
    assert [(v["condition"], v["instance"]) for v in viol] == [("b", ["e1", "e2", "e3"])]


def test_embed_heisenberg(fixture_file, tmp_path):
    out_path = tmp_path / "t.json"
    code, _, _ = run(["embed", fixture_file("heisenberg"), "--degree", "2", "--out", str(out_path)])
    assert code == 0
    dump = json.loads(out_path.read_text())
    rows = {(r["index"], r["monomial"]): r["value"] for r in dump["fo"]}
    assert rows[("e1", "e2")] == {"z": "1/2"}


@pytest.mark.parametrize("name", sorted(VALID))
def test_catalog_fixture_validates(fixture_file, name):
    assert run(["validate", fixture_file(name)])[0] == 0


@pytest.mark.parametrize("name", sorted(BAD_CONDITIONS))
def test_bad_fixture_fails_documented_condition(fixture_file, name):
    code, out, _ = run(["validate", fixture_file(name), "--json"])
    assert code == 1
    conds = {v["condition"] for v in json.loads(out)["validation"]["violations"]}
    assert BAD_CONDITIONS[name] in conds


def test_build_emits_structure_constants(fixture_file, tmp_path):
    out_path = tmp_path / "n.json"
    code, out, _ = run(["build", fixture_file("heisenberg"), "--out", str(out_path), "--json"])
    assert code == 0
    ext = json.loads(out_path.read_text())
    assert ext["m_dim"] == 1
    assert json.loads(out)["extension"] == ext


def test_build_rejects_bad_data(fixture_file):
    assert run(["build", fixture_file("compat-bad")])[0] == 1


def test_reports_are_deterministic(fixture_file):
    path = fixture_file("oscillator")
    reps = []
    for _ in range(2):
        code, out, _ = run(["verify", path, "--json", "--seed", "3", "--trials", "10"])
        assert code == 0
        rep = json.loads(out)
        rep.pop("timing_s")
        reps.append(rep)
    assert reps[0] == reps[1]


def test_usage_errors(tmp_path, fixture_file):
    assert run(["catalog", "nope"])[0] == 2
    assert run(["verify", str(tmp_path / "missing.json")])[0] == 2
    assert run(["verify", fixture_file("heisenberg"), "--degree", "0"])[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text("{\"field\": {\"type\": \"prime\", \"p\": 2}}")
    code, _, err = run(["validate", str(bad)])
    assert code == 2 and err
    bad.write_text("not json")
    assert run(["validate", str(bad)])[0] == 2


def test_catalog_over_prime(fixture_file):
    d = io.parse_presentation(fixture_file("heisenberg", prime=5))
    assert str(d.field) == "F_5"
    assert run(["verify", fixture_file("nonabelian2", prime=5)])[0] == 0


def test_human_output(fixture_file):
    code, out, _ = run(["validate", fixture_file("cocycle-bad")])
    assert code == 1
    assert "condition (b) at (e1, e2, e3)" in out
