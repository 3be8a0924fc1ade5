import csv
import io
import json
import math
import subprocess
import sys

import jsonschema
import pytest

from adjtorsion.cli import main, parse_complex
from adjtorsion.report import REPORT_SCHEMA


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def as_complex(pair):
    return complex(*pair)


@pytest.mark.parametrize(
    "text,value",
    [
        ("2", 2),
        ("2+0i", 2),
        ("-1+0i", -1),
        ("0.5-0.25i", 0.5 - 0.25j),
        ("1e-3+2.5E2i", 0.001 + 250j),
        ("i", 1j),
        ("-i", -1j),
        ("3.5i", 3.5j),
        ("1+i", 1 + 1j),
    ],
)
def test_parse_complex(text, value):
    assert parse_complex(text) == value


@pytest.mark.parametrize("text", ["", "abc", "1,5", "2j", "1+", "1+2i+3"])
def test_parse_complex_rejects(text):
    with pytest.raises(ValueError):
        parse_complex(text)


def test_torus_json(capsys):
    code, out, _ = run(capsys, "torus", "--p", "2", "--q", "3", "--k", "1", "--l", "1", "--out", "json")
    assert code == 0
    report = json.loads(out)
    jsonschema.validate(report, REPORT_SCHEMA)
    assert abs(as_complex(report["torsion"]) + 3) < 1e-9
    assert report["unit"]["sign"] in (1, -1)
    assert report["knot"]["label"] == "T(2,3)"
    # byte-identical after re-serialization
    assert json.dumps(json.loads(out), indent=2) + "\n" == out


def test_torus_bad_parameters(capsys):
    code, _, err = run(capsys, "torus", "--p", "2", "--q", "4", "--k", "1", "--l", "1")
    assert code == 2 and "torus knot" in err
    code, _, _ = run(capsys, "torus", "--p", "2", "--q", "3", "--k", "1", "--l", "2")
    assert code == 2
    code, _, _ = run(capsys, "torus", "--p", "2", "--q", "3", "--k", "1", "--l", "1", "--conj-param", "1")
    assert code == 2


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["torus", "--p", "2"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["twist", "--n", "1", "--s", "two"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["twist", "--n", "1", "--s", "2", "--root", "first"])
    assert exc.value.code == 2


def test_torus_column_choice(capsys):
    base = ["torus", "--p", "3", "--q", "5", "--k", "2", "--l", "2", "--out", "json"]
    _, out1, _ = run(capsys, *base, "--column", "1")
    _, out2, _ = run(capsys, *base, "--column", "2")
    r1, r2 = json.loads(out1), json.loads(out2)
    assert r1["representation"]["column"] == 1 and r2["representation"]["column"] == 2
    t1, t2 = as_complex(r1["torsion"]), as_complex(r2["torsion"])
    assert abs(t1 - t2) <= 1e-9 * abs(t1)
    code, _, _ = run(capsys, *base, "--column", "3")
    assert code == 2


def test_twist_n1(capsys):
    code, out, _ = run(capsys, "twist", "--n", "1", "--s", "2+0i", "--out", "json")
    assert code == 0
    (report,) = json.loads(out)
    jsonschema.validate(report, REPORT_SCHEMA)
    assert abs(as_complex(report["representation"]["u"]) - 1.5) < 1e-12
    assert abs(as_complex(report["torsion"]) + 3) < 1e-9
    assert json.dumps(json.loads(out), indent=2) + "\n" == out


def test_twist_figure_eight_roots(capsys):
    code, out, _ = run(capsys, "twist", "--n", "-1", "--s=1+0i", "--out", "json")
    assert code == 0
    reports = json.loads(out)
    us = sorted((as_complex(r["representation"]["u"]) for r in reports), key=lambda z: z.imag)
    assert len(us) == 2
    assert abs(us[0] - complex(-0.5, -math.sqrt(3) / 2)) < 1e-12
    assert abs(us[1] - complex(-0.5, math.sqrt(3) / 2)) < 1e-12
    for r in reports:
        jsonschema.validate(r, REPORT_SCHEMA)


def test_twist_three_rows_csv(capsys):
    code, out, _ = run(capsys, "twist", "--n", "2", "--s", "1+0i", "--out", "csv")
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 3
    assert [r["root_index"] for r in rows] == ["0", "1", "2"]
    assert all(r["passed"] == "True" for r in rows)
    assert float(max(r["residual_riley"] for r in rows)) < 1e-8


def test_twist_root_selection(capsys):
    code, out, _ = run(capsys, "twist", "--n", "2", "--s", "1", "--root", "1", "--out", "json")
    assert code == 0 and len(json.loads(out)) == 1
    code, _, err = run(capsys, "twist", "--n", "2", "--s", "1", "--root", "7")
    assert code == 2 and "out of range" in err
    code, _, _ = run(capsys, "twist", "--n", "0", "--s", "1")
    assert code == 2
    code, _, _ = run(capsys, "twist", "--n", "1", "--s", "0")
    assert code == 2


def test_singular_closed_form_reported(capsys):
    # at s = -3/2 the root u = -8/3 lies on y^2 - y x^2 + 2 x^2 = 0
    code, out, _ = run(capsys, "twist", "--n", "2", "--s=-1.5", "--out", "json")
    assert code == 0
    reports = json.loads(out)
    singular = [r for r in reports if r["flags"]["closed_form_singular"]]
    assert len(singular) == 1
    (r,) = singular
    assert r["delta_closed"] is None and r["unit"] is None and r["torsion"] is not None
    assert abs(complex(*r["representation"]["u"]) + 8 / 3) < 1e-9
    for r in reports:
        jsonschema.validate(r, REPORT_SCHEMA)


def test_pretty_output(capsys):
    code, out, _ = run(capsys, "torus", "--p", "2", "--q", "5", "--k", "1", "--l", "1")
    assert code == 0
    assert "T(2,5)" in out and "PASS" in out


def test_check_lemmas(capsys):
    code, out, _ = run(capsys, "check", "--suite", "lemmas", "--out", "json")
    assert code == 0
    summary = json.loads(out)["summary"]["lemmas"]
    assert summary["failed"] == 0 and summary["max_residual"] < 1e-9


def test_check_all(capsys):
    code, out, _ = run(capsys, "check", "--suite", "all", "--tol", "1e-8")
    assert code == 0
    for suite in ("torus", "twist", "omega", "lemmas"):
        assert f"PASS {suite}:" in out


@pytest.mark.parametrize("suite", ["torus", "twist"])
def test_check_negative_control(capsys, suite):
    code, out, _ = run(capsys, "check", "--suite", suite, "--perturb", "1e-3")
    assert code == 3
    assert f"FAIL {suite}:" in out


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "adjtorsion", "twist", "--n", "1", "--s", "2", "--out", "json"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert abs(complex(*json.loads(proc.stdout)[0]["torsion"]) + 3) < 1e-9
