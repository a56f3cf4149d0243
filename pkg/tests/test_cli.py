import csv
import io
import json

import pytest

from whichway.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_csv(text):
    body = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(io.StringIO("\n".join(body))))


def column(rows, quantity, kind, method="analytic"):
    return {
        float(r["V"]): float(r["value"])
        for r in rows
        if r["quantity"] == quantity and r["kind"] == kind and r["method"] == method
    }


@pytest.fixture(scope="module")
def full_sweep():
    import contextlib

    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = main(["sweep", "--steps", "21"])
    return code, buf.getvalue()


def test_sweep_csv_schema(full_sweep):
    code, out = full_sweep
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "V,quantity,kind,method,value"
    assert lines[-1].startswith("# max_abs_diff=")
    assert "\r" not in out
    rows = parse_csv(out)
    assert {r["method"] for r in rows} == {"analytic", "numeric"}
    assert {r["quantity"] for r in rows} == {"cc", "qd", "mi", "d"}


def test_sweep_dephased_cc_endpoints(full_sweep):
    cc = column(parse_csv(full_sweep[1]), "cc", "dephased")
    assert cc[0.0] == 1.0
    assert cc[1.0] == 0.0
    assert len(cc) == 21


def test_sweep_entangled_cc_equals_qd(full_sweep):
    rows = parse_csv(full_sweep[1])
    for method in ("analytic", "numeric"):
        cc = column(rows, "cc", "entangled", method)
        qd = column(rows, "qd", "entangled", method)
        assert cc.keys() == qd.keys()
        assert all(abs(cc[v] - qd[v]) <= 1e-6 for v in cc)


def test_sweep_dephased_qd_shape(full_sweep):
    qd = column(parse_csv(full_sweep[1]), "qd", "dephased")
    assert qd[0.0] == 0.0 and qd[1.0] == 0.0
    assert qd[0.5] > 0


def test_sweep_skips_numeric_at_singular_point(full_sweep):
    rows = parse_csv(full_sweep[1])
    assert 1.0 not in column(rows, "cc", "dephased", "numeric")
    assert 1.0 in column(rows, "mi", "dephased", "numeric")


def test_sweep_footer_within_tolerance(full_sweep):
    footer = full_sweep[1].splitlines()[-1]
    assert float(footer.split("=", 1)[1]) <= 1e-6


def test_sweep_values_have_12_significant_digits(full_sweep):
    cc = [r["value"] for r in parse_csv(full_sweep[1]) if r["quantity"] == "cc" and r["V"] == "0.6"]
    assert "0.721928094887" in cc


def test_sweep_deterministic(capsys):
    args = ("sweep", "--steps", "5", "--kind", "dephased")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_sweep_json(capsys):
    code, out, err = run(capsys, "sweep", "--steps", "3", "--quantity", "cc", "--format", "json")
    assert code == 0
    rows = json.loads(out)
    assert set(rows[0]) == {"V", "quantity", "kind", "method", "value"}
    assert err.startswith("# max_abs_diff=")


def test_sweep_to_file(tmp_path, capsys):
    target = tmp_path / "out.csv"
    code, out, _ = run(capsys, "sweep", "--steps", "2", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_text().startswith("V,quantity,kind,method,value\n")


def test_sweep_unwritable_path(tmp_path, capsys):
    code, _, err = run(capsys, "sweep", "--steps", "2", "--out", str(tmp_path / "missing" / "x.csv"))
    assert code == 2
    assert "cannot write" in err


@pytest.mark.parametrize(
    "argv",
    [
        ("sweep", "--steps", "1"),
        ("sweep", "--v-start", "0.8", "--v-end", "0.2"),
        ("sweep", "--v-end", "1.5"),
        ("sweep", "--kind", "bogus"),
        ("verify", "--tolerance", "0"),
        ("verify", "--trials", "0"),
        ("verify", "--seed", "-1"),
    ],
)
def test_invalid_arguments_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(list(argv))
    assert exc.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_sweep_verify_failure_exit_1(capsys):
    code, _, err = run(capsys, "sweep", "--steps", "3", "--kind", "dephased", "--verify", "--tolerance", "1e-30")
    assert code == 1
    assert "verification failed" in err


def test_verify_default_run(capsys):
    code, out, _ = run(capsys, "verify")
    assert code == 0
    assert "FAIL" not in out
    assert out.rstrip().endswith("properties passed")


def test_verify_deterministic(capsys):
    args = ("verify", "--trials", "50", "--seed", "7")
    assert run(capsys, *args)[1] == run(capsys, *args)[1]


def test_verify_impossible_tolerance(capsys):
    code, out, _ = run(capsys, "verify", "--trials", "50", "--tolerance", "1e-20")
    assert code == 1
    assert "FAIL" in out


def inspect_values(out):
    return dict(line.split("=", 1) for line in out.splitlines())


def test_inspect_pure_detector(capsys):
    code, out, _ = run(capsys, "inspect", "--bloch", "0", "0", "1", "--overlap-re", "0.6")
    assert code == 0
    vals = inspect_values(out)
    assert float(vals["V"]) == pytest.approx(0.6)
    assert float(vals["D"]) == pytest.approx(0.8)
    assert float(vals["duality_lhs"]) == pytest.approx(1.0)
    assert vals["duality_holds"] == "true"
    assert float(vals["P_a"]) == pytest.approx(0.2)


def test_inspect_which_way_known(capsys):
    vals = inspect_values(run(capsys, "inspect", "--bloch", "1", "0", "0", "--overlap-re", "0.6")[1])
    assert float(vals["V"]) == 0.0
    assert float(vals["P"]) == 1.0
    assert vals["duality_lhs"] == "undefined"


def test_inspect_partial_coherence(capsys):
    vals = inspect_values(run(capsys, "inspect", "--bloch", "0", "0", "0.5", "--overlap-re", "1")[1])
    assert float(vals["V"]) == pytest.approx(0.5)
    assert float(vals["D"]) == pytest.approx(0.0, abs=1e-12)


@pytest.mark.parametrize(
    "argv",
    [
        ("--bloch", "1", "1", "0", "--overlap-re", "0.5"),
        ("--bloch", "0", "0", "1", "--overlap-re", "0.9", "--overlap-im", "0.9"),
    ],
)
def test_inspect_invalid_physics(argv, capsys):
    code, _, err = run(capsys, "inspect", *argv)
    assert code == 2
    assert err.startswith("error:")
