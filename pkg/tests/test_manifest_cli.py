from __future__ import annotations

import json
import subprocess
import sys

import pytest

from toric_seshadri.cli import main
from toric_seshadri.manifest import SchemaError, from_dict, load, validate

from conftest import MANIFESTS


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, (json.loads(out) if out.strip() else None), err


def path(name: str) -> str:
    return str(MANIFESTS / f"{name}.json")


# -- manifests ----------------------------------------------------------------


def test_all_valid_fixtures_load():
    for p in MANIFESTS.glob("*.json"):
        if p.stem.startswith("invalid"):
            with pytest.raises(SchemaError):
                load(p)
        else:
            load(p)


def test_unknown_key_is_reported_with_path():
    doc = {"variety": {"projective_space": 2}, "bundle": {"builtin": {"name": "tangent", "colour": 1}}}
    with pytest.raises(SchemaError) as err:
        validate(doc)
    assert err.value.path.startswith("$.bundle.builtin")


def test_floats_are_rejected():
    doc = {"variety": {"projective_space": 2}, "bundle": {"builtin": {"name": "tangent"}}, "points": [[0.5, 1, 1]]}
    with pytest.raises(SchemaError):
        from_dict(doc)


def test_rational_strings_accepted():
    doc = {"variety": {"projective_space": 2}, "bundle": {"builtin": {"name": "tangent"}}, "points": [["1/2", 1, "-3"]]}
    m = from_dict(doc)
    assert str(m.points[0]) == "[1/2:1:-3]"


def test_twist_length_checked():
    doc = {"variety": {"bott_tower": {"n": 2, "bott_numbers": {"1,2": 1}}},
           "bundle": {"builtin": {"name": "tangent"}}, "twist": [1, 2, 3]}
    with pytest.raises(SchemaError) as err:
        from_dict(doc)
    assert err.value.path == "$.twist"


def test_filtration_ray_count_checked():
    doc = json.loads((MANIFESTS / "p2_filtrations_uncertified.json").read_text())
    doc["bundle"]["filtrations"]["rays"].pop()
    with pytest.raises(SchemaError):
        from_dict(doc)


# -- exit codes ---------------------------------------------------------------


@pytest.mark.parametrize("name", ["invalid_bott_zero", "invalid_unknown_key"])
def test_schema_errors_exit_2(capsys, name):
    code, out, err = run(capsys, "restrict", "--manifest", path(name))
    assert code == 2 and "error" in err and out == ""


def test_missing_file_exit_2(capsys):
    code, _, err = run(capsys, "fan", "--manifest", "/nonexistent/x.json")
    assert code == 2 and "error" in err


def test_ambiguous_characters_exit_3(capsys):
    code, _, err = run(capsys, "restrict", "--manifest", path("x2_indecomposable_characters"))
    assert code == 3 and "D_2" in err


def test_non_nef_seshadri_exit_4(capsys):
    code, _, err = run(capsys, "seshadri", "--manifest", path("x2_tangent"), "--point", "1:1:1:1")
    assert code == 4


def test_seshadri_on_tower_needs_points(capsys):
    code, _, _ = run(capsys, "seshadri", "--manifest", path("x2_tangent"))
    assert code == 2


def test_failing_hypotheses_strict_vs_bounds(capsys, tmp_path):
    # O(0,3,0) on a tower with c_{2,3} = 2 is nef but mu(l_4) = 3 < 2 * mu(l_8) = 6
    doc = {
        "variety": {"bott_tower": {"n": 3, "bott_numbers": {"1,2": 1, "1,3": 1, "2,3": 2}}},
        "bundle": {"builtin": {"name": "line_bundle_sum", "divisors": [[0, 3, 0]]}},
        "points": ["1:1:1:1:1:1"],
    }
    f = tmp_path / "m.json"
    f.write_text(json.dumps(doc))
    code, report, _ = run_json(capsys, "check", "--manifest", str(f))
    assert code == 4
    assert [c["name"] for c in report["hypotheses"]["conditions"] if not c["passed"]] == ["l4_over_l8", "l11_over_l8"]
    code, out, _ = run(capsys, "seshadri", "--manifest", str(f), "--json")
    assert code == 4 and json.loads(out)["hypotheses"]["theorem"] == "X3"
    code, res, _ = run_json(capsys, "seshadri", "--manifest", str(f), "--bounds-ok")
    assert code == 0
    assert res["results"][0]["value"] == {"kind": "interval", "lower": "0", "upper": None}


# -- outputs ------------------------------------------------------------------


def test_restrict_json_reports_discrepancy(capsys):
    code, doc, _ = run_json(capsys, "restrict", "--manifest", path("x2_indecomposable"))
    assert code == 0
    rows = {r["curve"]: r for r in doc["curves"]}
    assert rows["D_2"]["degrees"] == [1, 1]
    assert rows["D_2"]["reference_degrees"] == [0, 2]
    assert rows["D_2"]["matches_reference"] is False
    assert doc["discrepancies"] == ["D_2"]


def test_json_round_trip_and_table_agree(capsys):
    for cmd in ("fan", "restrict", "nef", "mori", "check", "seshadri"):
        code, doc, _ = run_json(capsys, cmd, "--manifest", path("x3_indecomposable"))
        assert code == 0, cmd
        assert json.loads(json.dumps(doc)) == doc
        code, text, _ = run(capsys, cmd, "--manifest", path("x3_indecomposable"), "--table")
        assert code == 0 and text.strip()
    _, doc, _ = run_json(capsys, "restrict", "--manifest", path("x3_indecomposable"))
    _, text, _ = run(capsys, "restrict", "--manifest", path("x3_indecomposable"))
    for row in doc["curves"]:
        line = next(l for l in text.splitlines() if l.split() and l.split()[0] == row["curve"])
        assert str(row["mu_min"]) in line.split()


def test_seshadri_values_from_cli(capsys):
    code, doc, _ = run_json(capsys, "seshadri", "--manifest", path("x2_tangent_twisted"))
    assert code == 0
    assert [r["value"] for r in doc["results"]] == [{"kind": "exact", "value": "1"}] * 2
    code, doc, _ = run_json(capsys, "seshadri", "--manifest", path("p2_filtrations_uncertified"))
    assert code == 0
    assert doc["results"][0]["value"] == {"kind": "interval", "lower": "4", "upper": None}
    assert doc["results"][0]["notes"]


def test_point_and_twist_overrides(capsys):
    code, doc, _ = run_json(capsys, "seshadri", "--manifest", path("x2_tangent"),
                            "--twist", "5,2", "--point", "1:1:0:1", "--point", "1:1:1:1")
    assert code == 0
    assert [r["value"]["value"] for r in doc["results"]] == ["2", "2"]
    code, _, _ = run(capsys, "nef", "--manifest", path("x2_tangent"), "--twist", "a,b")
    assert code == 2


def test_oracle_flag(capsys):
    code, doc, _ = run_json(capsys, "restrict", "--manifest", path("x3_fan"), "--oracle")
    assert code == 0
    rows = {r["curve"]: r for r in doc["curves"]}
    for o in doc["oracle"]["curves"]:
        assert o["counting"] == rows[o["curve"]]["degrees"]
        assert o["deg"] == rows[o["curve"]]["deg"]
    assert len(doc["oracle"]["intersections"]) == 6


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "toric_seshadri", "fan", "--manifest", path("p3_tangent"), "--json"],
        capture_output=True, text=True, check=True,
    )
    assert json.loads(proc.stdout)["command"] == "fan"
