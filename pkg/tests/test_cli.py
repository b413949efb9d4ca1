import io
import json
import subprocess
import sys
from importlib.resources import files

import jsonschema
import pytest

from semiorbit import catalog
from semiorbit.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, run

SCHEMA = json.loads((files("semiorbit") / "schemas" / "report.v1.json").read_text())


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def report(*argv):
    code, out, err = call(*argv, "--json")
    assert code in (EXIT_OK, EXIT_FAIL), err
    data = json.loads(out)
    jsonschema.validate(data, SCHEMA)
    return code, data


def checks(data):
    return {c["name"]: c for c in data["checks"]}


def test_examples_se3_all():
    code, data = report("examples", "se3", "--all", "--samples", "20")
    assert code == EXIT_OK and data["verdict"] == "holds"
    c = checks(data)
    assert c["orbit.spin"]["values"]["orbit_dim"] == 4
    assert c["pukanszky.trivial"]["verdict"] == "holds"
    assert c["pukanszky.trivial.sampled"]["verdict"] == "holds"
    assert c["connection.trivial"]["verdict"] == "holds"
    assert all(c[n]["verdict"] == "holds" for n in c if n.startswith("expected."))


@pytest.mark.parametrize("name", catalog.FIXTURE_NAMES)
def test_examples_reproduce_expected_rows(name):
    code, data = report("examples", name)
    assert code == EXIT_OK
    rows = [c for c in data["checks"] if c["name"].startswith("expected.")]
    assert len(rows) == len(catalog.expected_table(name))
    assert {c["verdict"] for c in rows} == {"holds"}


def test_analyze_a_lie_file():
    path = str(catalog.data_file("galilei"))
    code, data = report("analyze", path, "--point", "massless_spin", "--samples", "10")
    assert code == EXIT_OK
    assert checks(data)["orbit.massless_spin"]["values"]["orbit_dim"] == 6
    assert data["input"]["name"] == "galilei.lie"
    assert data["input"]["digest"].startswith("sha256:")


def test_check_polarization_and_induce():
    code, data = report("check-polarization", "galilei", "--pol", "boosts", "--samples", "10")
    assert code == EXIT_OK
    assert checks(data)["polarization.boosts"]["verdict"] == "holds"
    code, data = report("induce", "galilei", "--point", "at_infinity", "--samples", "10")
    assert code == EXIT_OK
    c = checks(data)
    assert c["symmetric_space.boosts"]["verdict"] == "not-applicable"
    assert c["connection.boosts"]["verdict"] == "not-applicable"
    assert c["induction.at_infinity.zero_level"]["verdict"] == "holds"


def test_json_is_byte_identical_for_identical_inputs():
    argv = ["check-pukanszky", "bargmann", "--pol", "plus", "--json", "--seed", "17", "--samples", "15"]
    first = call(*argv)[1]
    assert first == call(*argv)[1]
    assert first != call(*argv[:-4], "--seed", "18", "--samples", "15")[1]


def test_json_is_identical_across_processes():
    argv = [sys.executable, "-m", "semiorbit", "induce", "se3", "--point", "spin", "--json", "--samples", "5"]
    runs = [subprocess.run(argv, capture_output=True, check=True).stdout for _ in range(2)]
    assert runs[0] == runs[1]
    assert runs[0].decode() == call(*argv[3:])[1]


def test_zero_samples_leave_sampled_verdicts_not_evaluated():
    code, data = report("examples", "bargmann", "--all", "--samples", "0")
    assert code == EXIT_OK and data["verdict"] == "holds"
    sampled = [c for c in data["checks"] if "sampled-only" in c["caveats"]]
    assert sampled
    for c in sampled:
        assert c["verdict"] in ("not-evaluated", "not-applicable"), c["name"]
    assert any(c["verdict"] == "not-evaluated" for c in sampled)


def test_text_output():
    code, out, _ = call("analyze", "se3", "--point", "spin", "--samples", "5")
    assert code == EXIT_OK
    assert out.startswith("analyze se3: holds\n")
    assert "orbit_dim=4" in out


def test_validate():
    code, data = report("validate", str(catalog.data_file("bargmann")))
    assert code == EXIT_OK
    assert checks(data)["validate"]["values"]["polarizations"] == ["minus", "plus"]


def test_validate_reports_located_errors():
    code, out, err = call("validate", str(catalog.data_file("bad_jacobi")))
    assert code == EXIT_INPUT and out == ""
    assert "bad_jacobi.lie:4:3-4:24: error: Jacobi identity fails for basis triple (e1, e2, e3)" in err


@pytest.mark.parametrize("argv", [
    ["analyze", "se3", "--point", "nowhere"],
    ["check-pukanszky", "galilei", "--pol", "nothing"],
    ["analyze", "/nonexistent/file.lie", "--point", "p"],
    ["validate", "/nonexistent/file.lie"],
    ["examples", "poincare"],
    ["analyze", "se3", "--point", "spin", "--tol", "0"],
    ["analyze", "se3", "--point", "spin", "--samples", "-1"],
    ["analyze", "se3", "--point", "spin", "--seed", "-3"],
    ["analyze", "se3"],
    [],
])
def test_input_errors_exit_2(argv):
    code, out, _ = call(*argv)
    assert code == EXIT_INPUT and out == ""


def test_failing_verdict_exits_1(tmp_path):
    text = catalog.data_file("se3").read_text() + "\npolarization wide at spin { a = span{ e1, e3 } }\n"
    path = tmp_path / "wide.lie"
    path.write_text(text)
    code, data = report("check-polarization", str(path), "--pol", "wide", "--samples", "5")
    assert code == EXIT_FAIL and data["verdict"] == "fails"
    assert checks(data)["polarization.wide"]["verdict"] == "fails"
