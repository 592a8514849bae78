import json
import math
import os
import subprocess
from fractions import Fraction

import pytest

import hypgeo


def test_coefficients_are_fractions():
    assert hypgeo.coefficients((1, 1, 1, 2, 2), 4) == [1, Fraction(1, 4), Fraction(1, 9), Fraction(1, 16)]
    alex = hypgeo.coefficients([2, 5, 1, 2, 5], 3, kind="alexander")
    assert alex == [1, Fraction(1, 2), Fraction(1, 3)]
    assert all(isinstance(q, Fraction) for q in alex)


def test_mixed_inputs_parse_exactly():
    assert hypgeo.parse_rational("1.45") == Fraction(29, 20)
    assert hypgeo.coefficients(("1.45", 1, 1, Fraction(29, 20), 1.0), 3) == [1, 1, 1]
    with pytest.raises(ValueError):
        hypgeo.parse_rational("abc")
    with pytest.raises(ValueError):
        hypgeo.coefficients((0, 1, 1, 2, 2), 3)


def test_check_verdicts():
    t1, t3 = hypgeo.check((1, 1, 1, 2, 2), [1, 3])
    assert t1["overall"] is True
    assert t3["overall"] is False
    failing = next(p for p in t3["parts"] if not p["satisfied"])
    assert failing["name"] == "d+e >= T2"
    assert (failing["lhs"], failing["rhs"]) == (4, 18)
    assert t3["variant_flags"]["with_thm1"] is False


def test_audit_and_lemmas():
    reports = hypgeo.audit((1, 1, 1, 2, 2), n=30)
    assert [r["theorem"] for r in reports] == ["T1", "T2", "T3", "T4"]
    assert all(r["identity_ok"] for r in reports)
    lem = hypgeo.lemmas((1, 1, 1, 2, 2), 50)
    assert lem["ozaki_normalized"]["branch"] == "non-increasing"
    assert lem["fejer_normalized"]["holds"]


def test_evaluate_closed_forms():
    li2 = math.pi**2 / 12 - math.log(2) ** 2 / 2
    r = hypgeo.evaluate((1, 1, 1, 2, 2), 0.5)
    assert abs(r["value"] - li2) < 1e-12
    assert r["truncation_bound"] < 1e-12
    g = hypgeo.evaluate((2, 3, 1, 2, 3), (Fraction(3, 10), 0))
    assert abs(g["value"] - 3 / 7) < 1e-12
    d = hypgeo.evaluate((2, 3, 1, 2, 3), 0.5j, derivative=True)
    assert abs(d["value"] - 1 / (1 - 0.5j) ** 2) < 1e-12
    with pytest.raises(ValueError):
        hypgeo.evaluate((1, 1, 1, 2, 2), 1.0)


def test_evidence():
    ctc, star = hypgeo.evidence((2, 3, 1, 2, 3), grid=(64, 256, Fraction(19, 20)), workers=1)
    assert ctc["positive"] and star["positive"]
    assert abs(ctc["min_value"] - 1 / 1.95) < 1e-9
    (only,) = hypgeo.evidence((1, 1, 1, 2, 2), kind="odd", functional="ctc_atanh", grid=(4, 16, "0.9"))
    assert only["functional"] == "ctc_atanh"


def test_scan_counts_and_determinism():
    fixed = {"a": 1, "b": 1, "c": 1}
    axes = [("d", 1, 3, 2), ("e", 1, 3, 2)]
    doc = hypgeo.scan(fixed, axes)
    assert len(doc["cells"]) == 9
    assert sum(c["verdicts"][0]["overall"] for c in doc["cells"]) == 8
    assert sum(doc["summary"].values()) == 9
    csv1 = hypgeo.scan(fixed, axes, format="csv", workers=1)
    csv4 = hypgeo.scan(fixed, axes, format="csv", workers=4)
    assert csv1 == csv4
    assert csv1.splitlines()[0].startswith("a,b,c,d,e,thm1.")


def test_run_cli_exit_codes():
    code, out, _ = hypgeo.run_cli(["coeffs", "--params", "1", "1", "1", "2", "2", "--n", "4"])
    assert (code, out) == (0, "1, 1/4, 1/9, 1/16\n")
    assert hypgeo.run_cli(["check", "--theorem", "3", "--params", "1", "1", "1", "2", "2"])[0] == 1
    assert hypgeo.run_cli(["check", "--params", "abc", "1", "1", "2", "2"])[0] == 2


REPORTS = [
    ["coeffs", "--params", "1", "1", "1", "2", "2", "--n", "5"],
    ["check", "--theorem", "all", "--params", "2/7", "3.125", "11/13", "17/3", "9"],
    ["audit", "--theorem", "all", "--params", "1", "1", "1", "2", "2", "--n", "5"],
    ["eval", "--params", "1", "1", "1", "2", "2", "--z", "0.5", "0.1"],
    ["evidence", "--params", "1", "1", "1", "2", "2", "--grid", "4", "8", "0.9"],
    ["scan", "--fix", "a=1", "--fix", "b=1", "--fix", "c=1", "--axis", "d:1:3:2", "--axis", "e:1:3:2", "--find", "thm1"],
    ["scan", "--fix", "a=1", "--fix", "b=1", "--fix", "c=1", "--axis", "d:-1:3:2", "--axis", "e:1:3:2",
     "--lemmas", "--lemma-n", "20", "--disk", "--grid", "2", "4", "0.5"],
]


@pytest.mark.parametrize("args", REPORTS, ids=[a[0] + str(i) for i, a in enumerate(REPORTS)])
def test_cli_json_matches_schema(args):
    jsonschema = pytest.importorskip("jsonschema")
    schema_path = os.environ.get("HYPGEO_SCHEMA", os.path.join(os.path.dirname(__file__), "../../docs/report.schema.json"))
    with open(schema_path) as fh:
        schema = json.load(fh)
    cli = os.environ.get("HYPGEO_CLI")
    if cli:
        proc = subprocess.run([cli, *args, "--json"], capture_output=True, text=True)
        assert proc.returncode in (0, 1), proc.stderr
        text = proc.stdout
    else:
        code, text, err = hypgeo.run_cli([*args, "--json"])
        assert code in (0, 1), err
    jsonschema.validate(json.loads(text), schema)
