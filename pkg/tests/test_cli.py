import json

import pytest

import oracle
from helpers import DUAL, EXPECTED_EXIT, fixture_path
from omega_pseudoalg.cli import main
from omega_pseudoalg.definition import SCHEMA_ID, DanglingReference, ParseError, load, loads


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("name", sorted(EXPECTED_EXIT))
def test_verify_exit_codes_and_determinism(capsys, name):
    a = run(capsys, "verify", fixture_path(name))
    b = run(capsys, "verify", fixture_path(name))
    assert a[0] == EXPECTED_EXIT[name]
    assert a == b


def test_verify_k_a2_report(capsys):
    code, out, _ = run(capsys, "verify", fixture_path("fix_k_a2.json"))
    assert code == 0
    assert "Ω-associative: PASS (16 identities × 1 index triple)" in out
    assert out.rstrip().endswith("RESULT: PASS")


def test_broken_assoc_reports_failure(capsys):
    code, out, _ = run(capsys, "verify", fixture_path("broken_assoc.json"))
    assert code == 1 and "FAIL" in out


def test_input_errors_go_to_stderr(capsys):
    code, out, err = run(capsys, "verify", fixture_path("broken_dangling.json"))
    assert code == 2 and out == "" and "DanglingReference" in err and "M9" in err
    code, _, err = run(capsys, "verify", "/nonexistent.json")
    assert code == 2 and "InputError" in err
    code, _, err = run(capsys, "cohomology", fixture_path("fix_k_a2.json"), "--degree", "4")
    assert code == 2 and "DegreeTooHigh" in err


def test_cohomology_degree_two(capsys):
    code, out, _ = run(capsys, "--format", "json", "cohomology", fixture_path("fix_k_a2.json"),
                       "--structure", "A2", "--degree", "2")
    assert code == 0
    sec = json.loads(out)["sections"][0]
    assert sec["cocycles"] - sec["coboundaries"] == sec["cohomology"] == oracle.hochschild_dims(DUAL, 2)[2]


def test_deform_poisson(capsys):
    code, out, _ = run(capsys, "deform", fixture_path("defquad.json"), "--jet", "J", "--poisson")
    assert code == 0 and "bracket table" in out and "{e1 *_{1,1} e2}" in out


def test_deform_extend_and_rigidity(capsys):
    code, out, _ = run(capsys, "deform", fixture_path("deform_a2.json"), "--jet", "Q", "--extend")
    assert code == 0 and "COBOUNDARY" in out
    code, out, _ = run(capsys, "deform", fixture_path("kxk.json"), "--rigidity")
    assert code == 0 and "RIGID" in out


def test_construct_round_trip(capsys, tmp_path):
    dest = tmp_path / "current.json"
    code, built, _ = run(capsys, "--format", "json", "construct", "current",
                         fixture_path("c2_omega2_a2.json"), "--algebra", "A2", "--out", str(dest))
    assert code == 0
    d = load(str(dest))
    assert len(d.structures) == 1
    code, again, _ = run(capsys, "--format", "json", "verify", str(dest))
    assert code == 0
    # the re-parsed structure passes the same identities with the same counts
    first = json.loads(built)["sections"][0]
    variety = first["title"].rsplit(": ", 1)[1]
    second = [x for x in json.loads(again)["sections"] if x["title"].endswith(": " + variety)]
    assert len(second) == 1 and second[0]["lines"] == first["lines"]


def test_json_output_shape(capsys):
    code, out, _ = run(capsys, "--format", "json", "verify", fixture_path("fix_k_a2.json"))
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == SCHEMA_ID == "omega-pseudoalg/v1"
    assert doc["ok"] is True and doc["exit"] == 0 and doc["sections"]
    code, out, _ = run(capsys, "--format", "json", "verify", fixture_path("broken_schema.json"))
    assert code == 2 and json.loads(out)["error"]["type"]


def test_loader():
    d = load(fixture_path("fix_k_a2.json"))
    assert (len(d.hopf), len(d.semigroups), len(d.structures)) == (1, 1, 1)
    with pytest.raises(ParseError):
        load(fixture_path("broken_rational.json"))
    with pytest.raises(DanglingReference) as e:
        load(fixture_path("broken_dangling.json"))
    assert "M9" in str(e.value)
    with pytest.raises(ParseError):
        loads("{not json")
