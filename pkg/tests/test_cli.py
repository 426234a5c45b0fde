from __future__ import annotations

import json
import os

import pytest

from finsite import sheaves
from finsite.cli import run
from finsite.sheaves import PerpendicularStatus, SaturationStatus, SheafVerdict

DATA = os.path.join(os.path.dirname(__file__), "data")
QUIVER = os.path.join(DATA, "quiver2.json")
SHEAF = os.path.join(DATA, "dense_sheaf.json")
P_Y = os.path.join(DATA, "p_y.json")

SPEC_110 = '{"kind": "generic", "indicator": [1, 1, 0], "tail": 0}'


def test_exit_code_contract():
    cases = [
        (["category", "validate", "--category", QUIVER], 0),
        (["category", "validate", "--category", "no_such_builtin"], 2),
        (["category", "validate", "--category", "missing/file.json"], 2),
        (["topology", "check", "--category", "quiver2",
          "--topology", "dense"], 0),
        (["topology", "named", "--category", "quiver2",
          "--name", "atomic"], 1),  # quiver2 fails the square completion
        (["torsion", "roundtrip", "--category", "quiver2",
          "--topology", "maximal", "--field", "Q"], 2),
        (["typen", "validate", "--spec", SPEC_110], 0),
        (["typen", "validate", "--spec",
          '{"kind": "nongeneric", "indicator": [1, 1], "cutoff": 2}'], 1),
        (["typen", "crosscheck", "--spec", SPEC_110, "--horizon", "5"], 2),
        (["typen", "pullback", "--object", "3", "--rank", "bogus",
          "--deg", "1"], 2),
    ]
    for argv, want in cases:
        code, text = run(argv)
        assert code == want, (argv, code, text)


def test_usage_error_is_exit_2():
    code, _ = run(["topology"])
    assert code == 2
    code, _ = run(["no-such-group", "nothing"])
    assert code == 2


def test_output_is_deterministic():
    for argv in (
        ["--format", "json", "topology", "enumerate", "--category", "quiver2"],
        ["--format", "json", "torsion", "pair", "--category", "quiver2",
         "--topology", "dense", "--samples", "5", "--seed", "3"],
        ["topology", "enumerate", "--category", "quiver2"],
    ):
        first = run(argv)
        second = run(argv)
        assert first == second


def test_format_flag_accepted_in_both_positions():
    leading = run(["--format", "json", "typen", "pullback",
                   "--object", "3", "--rank", "5", "--deg", "2"])
    trailing = run(["typen", "pullback", "--object", "3", "--rank", "5",
                    "--deg", "2", "--format", "json"])
    assert leading == trailing and leading[0] == 0


def test_golden_pullback_json():
    code, text = run(["--format", "json", "typen", "pullback",
                      "--object", "3", "--rank", "5", "--deg", "2"])
    assert code == 0
    assert text == (
        '{\n  "display": "S(5, 3)",\n  "n": 5,\n  "rank": 3\n}\n')


def test_golden_topology_check_json():
    code, text = run(["--format", "json", "topology", "check",
                      "--category", "quiver2", "--topology", "dense"])
    assert code == 0
    assert json.loads(text) == {
        "inclusion_closed": True,
        "intersection_closed": True,
        "is_topology": True,
        "maximal_ok": True,
        "stability_ok": True,
        "transitivity_ok": True,
        "witnesses": {},
    }


def test_census_table_matches_quiver():
    code, text = run(["topology", "enumerate", "--category", "quiver2"])
    assert code == 0
    assert text.startswith("4 topologies on quiver2")
    # the torsion-pair census, row for row
    assert "1  trivial  0        all" in text
    assert "2  -        V_x = 0  V_y = 0" in text
    assert "3  dense    V_y = 0  ker V_f ∩ ker V_g = 0" in text
    assert "4  maximal  all      0" in text


def test_enumerate_json_counts():
    code, text = run(["--format", "json", "topology", "enumerate",
                      "--category", "quiver2"])
    doc = json.loads(text)
    assert doc["count"] == 4
    assert len(doc["topologies"]) == 4
    names = [t["name"] for t in doc["topologies"]]
    assert set(names) == {"trivial", None, "dense", "maximal"}


def test_sheaf_check_verdict(tmp_path):
    code, text = run(["--format", "json", "sheaf", "check",
                      "--category", "quiver2", "--topology", "dense",
                      "--module", SHEAF])
    assert code == 0
    doc = json.loads(text)
    assert doc["sheaf"] is True and doc["consistent"] is True
    # a failed sheaf test is an answer, not an error
    code, text = run(["--format", "json", "sheaf", "check",
                      "--category", "quiver2", "--topology", "maximal",
                      "--module", SHEAF])
    assert code == 0
    doc = json.loads(text)
    assert doc["sheaf"] is False and doc["consistent"] is True


def test_sheaf_check_inconsistent_row(monkeypatch):
    broken = SheafVerdict(
        separated=True, sheaf=True,
        saturated=SaturationStatus(torsion_free=True, r1_zero=False,
                                   witnesses={}),
        perpendicular=PerpendicularStatus(hom_zero=True, ext1_zero=True,
                                          witnesses={}),
        witnesses={})
    assert not broken.consistent
    monkeypatch.setattr(sheaves, "sheaf_verdict",
                        lambda cat, j, v: broken)
    code, text = run(["sheaf", "check", "--category", "quiver2",
                      "--topology", "dense", "--module", SHEAF])
    assert code == 1
    assert "INCONSISTENT" in text


def test_torsion_classify_table():
    code, text = run(["torsion", "classify", "--category", "quiver2",
                      "--topology", "dense", "--module", P_Y])
    assert code == 0
    assert "torsion_free" in text


def test_torsion_submodule_json():
    code, text = run(["--format", "json", "torsion", "submodule",
                      "--category", "quiver2", "--topology", "maximal",
                      "--module", SHEAF])
    assert code == 0
    doc = json.loads(text)
    assert doc["dims"] == {"x": 2, "y": 1}
    assert doc["module_dims"] == {"x": 2, "y": 1}


def test_torsion_pair_and_roundtrip():
    code, text = run(["--format", "json", "torsion", "pair", "--category",
                      "quiver2", "--topology", "dense", "--samples", "5"])
    assert code == 0
    assert json.loads(text)["passed"] is True
    code, text = run(["--format", "json", "torsion", "roundtrip",
                      "--category", "quiver2", "--topology", "dense",
                      "--field", "Fp:2"])
    assert code == 0
    assert json.loads(text)["agrees"] is True


def test_sheafify_collapses_representable():
    # the rule covering y with the empty sieve wipes out everything above x
    topo = {"covers": {"x": [["1_x", "f", "g"]],
                       "y": [[], ["1_y"]]}}
    import tempfile
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as h:
        json.dump(topo, h)
        path = h.name
    try:
        code, text = run(["--format", "json", "sheaf", "sheafify",
                          "--category", "quiver2", "--topology", path,
                          "--module", P_Y])
        assert code == 0
        doc = json.loads(text)
        assert doc["module"]["dims"] == {"x": 0, "y": 0}
    finally:
        os.unlink(path)


def test_rigidity_exit_codes():
    code, text = run(["--format", "json", "topology", "rigidity",
                      "--category", "quiver2", "--topology", "dense"])
    assert code == 0
    assert json.loads(text)["irreducibles"] == ["y"]
    code, text = run(["--format", "json", "topology", "rigidity",
                      "--category", "idem_monoid", "--topology", "dense"])
    assert code == 1
    assert json.loads(text)["rigid"] is False


def test_equivalence_command():
    code, text = run(["--format", "json", "sheaf", "equivalence",
                      "--category", "quiver2", "--topology", "dense",
                      "--samples", "4"])
    assert code == 0
    doc = json.loads(text)
    assert doc["passed"] is True and doc["irreducibles"] == ["y"]
    # a non-rigid rule is a precondition failure, not a verdict
    code, _ = run(["sheaf", "equivalence", "--category", "idem_monoid",
                   "--topology", "dense"])
    assert code == 1


def test_typen_census_output():
    code, text = run(["typen", "census", "--horizon", "3"])
    assert code == 0
    assert text == "generic: 8, nongeneric: 8\n"
    code, text = run(["--format", "json", "typen", "census",
                      "--horizon", "1"])
    doc = json.loads(text)
    assert doc["generic_count"] == 2 and doc["nongeneric_count"] == 2
    assert doc["generic"][0] == {"indicator": [0], "kind": "generic",
                                 "tail": 0}


def test_typen_validate_reports_rigidity():
    code, text = run(["--format", "json", "typen", "validate",
                      "--spec", SPEC_110])
    assert code == 0
    doc = json.loads(text)
    assert doc["valid"] is True and doc["rigid"] is True
    code, text = run(["--format", "json", "typen", "validate", "--spec",
                      '{"kind": "generic", "indicator": [], "tail": 1}'])
    assert code == 0
    assert json.loads(text)["rigid"] is False


def test_typen_crosscheck_command():
    code, text = run(["--format", "json", "typen", "crosscheck",
                      "--spec", SPEC_110, "--horizon", "3"])
    assert code == 0
    doc = json.loads(text)
    assert doc["passed"] is True
    assert doc["transitivity"] == "skipped"


def test_category_build_roundtrips(tmp_path):
    code, text = run(["--format", "json", "category", "build",
                      "--kind", "trunc_fi", "--params", '{"n": 2}'])
    assert code == 0
    doc = json.loads(text)
    path = tmp_path / "trunc.json"
    path.write_text(json.dumps(doc))
    code, text = run(["--format", "json", "category", "validate",
                      "--category", str(path)])
    assert code == 0
    assert json.loads(text)["ok"] is True


def test_category_validate_reports_violations(tmp_path):
    doc = json.load(open(QUIVER))
    doc["compose"] = [row for row in doc["compose"]
                      if row != ["1_y", "f", "f"]]
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc))
    code, text = run(["--format", "json", "category", "validate",
                      "--category", str(path)])
    assert code == 1
    parsed = json.loads(text)
    assert parsed["ok"] is False
    assert parsed["violations"]
