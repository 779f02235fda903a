import json
import subprocess
import sys

import numpy as np
import pytest

from transpacing import __version__, cli
from transpacing.surmise import surmise_pdf


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_csv(text):
    meta = {}
    rows = []
    lines = text.strip().splitlines()
    for line in lines:
        if line.startswith("#"):
            k, v = line[1:].split("=", 1)
            meta[k] = v
    data = [l for l in lines if not l.startswith("#")]
    header = data[0].split(",")
    rows = np.array([[float(v) for v in l.split(",")] for l in data[1:]])
    return meta, header, rows


def test_pdf_endpoint_matches_surmise(capsys):
    code, out, _ = run(capsys, "pdf", "--transition", "gue-ginibre", "--alpha", "1.0", "--grid", "0:5:0.01", "--scale", "unit-mean")
    assert code == 0
    meta, header, rows = parse_csv(out)
    assert header == ["x", "density"]
    for key in ("kind", "alpha", "scale", "mean_s", "z_mode", "command", "config", "seed", "version"):
        assert key in meta
    assert meta["version"] == __version__
    assert np.max(np.abs(rows[:, 1] - surmise_pdf(3, rows[:, 0]))) <= 1e-9


def test_pdf_surmise_peak(capsys):
    code, out, _ = run(capsys, "pdf", "--surmise", "4")
    _, _, rows = parse_csv(out)
    assert code == 0
    assert rows[np.argmax(rows[:, 1]), 0] == pytest.approx(0.94, abs=0.005)


@pytest.mark.parametrize(
    "argv",
    [
        ("pdf", "--transition", "gue-ginibre", "--alpha", "0.5", "--grid", "0:5:0"),
        ("pdf", "--transition", "gue-ginibre", "--alpha", "0.5", "--grid", "0:5:-0.1"),
        ("pdf", "--transition", "gue-ginibre"),
        ("pdf", "--transition", "gue-ginibre", "--alpha", "1.5"),
        ("sample", "--alpha-vec", "1,1,1", "--n", "0"),
        ("sample", "--alpha-vec", "1,1"),
        ("compare", "--transition", "gue-ginibre"),
        ("fit", "--points", "10", "--order", "6"),
        ("nonsense",),
        (),
    ],
)
def test_usage_errors_exit_1(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 1
    assert "error" in err


def test_pdf_multiple_alphas_to_files(tmp_path, capsys):
    out = tmp_path / "fig1.csv"
    code, _, _ = run(capsys, "pdf", "--transition", "gue-ginibre", "--alphas", "0,0.5,1", "--grid", "0:4:0.1", "-o", str(out))
    assert code == 0
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == ["fig1_a0.5.csv", "fig1_a0.csv", "fig1_a1.csv"]


def test_pdf_json_and_cheb_metadata(capsys):
    code, out, _ = run(capsys, "pdf", "--transition", "goe-ginibre", "--alpha", "0.5", "--z-mode", "cheb", "--renormalize", "--grid", "0:3:0.5", "--format", "json")
    doc = json.loads(out)
    assert code == 0
    assert doc["metadata"]["z_mode"] == "cheb"
    assert doc["metadata"]["renormalized"] == "true"
    assert len(doc["x"]) == 7


@pytest.mark.parametrize(
    "argv, expected",
    [
        (("--transition", "goe-ginibre", "--alpha", "0"), 2.5066283),
        (("--transition", "gue-ginibre", "--alpha", "1"), 3.7599424),
        (("--transition", "ginibre-gse", "--alpha", "1"), 32 / (3 * np.sqrt(2 * np.pi))),
        (("--transition", "gue-ginibre", "--alpha", "0.5"), 3.3622199),
    ],
)
def test_mean(capsys, argv, expected):
    code, out, _ = run(capsys, "mean", *argv)
    doc = json.loads(out)
    assert code == 0
    assert set(doc) >= {"kind", "alpha", "mean_closed_form", "mean_quadrature", "abs_diff"}
    assert doc["mean_closed_form"] == pytest.approx(expected, abs=1e-7)
    assert doc["abs_diff"] <= 1e-8


def test_mean_general_alpha_vec(capsys):
    code, out, _ = run(capsys, "mean", "--alpha-vec", "0.3,0.7,0.2")
    doc = json.loads(out)
    assert code == 0 and doc["kind"] == "general" and doc["mean_closed_form"] is None
    assert 2.5 < doc["mean_quadrature"] < 4.3


def test_sample_reproducible_and_env_seed(tmp_path, capsys, monkeypatch):
    a, b, c = (tmp_path / n for n in ("a.csv", "b.csv", "c.csv"))
    base = ("sample", "--alpha-vec", "1,0.3,0", "--n", "5000")
    assert run(capsys, *base, "--seed", "42", "-o", str(a), "--summary", str(tmp_path / "s.json"))[0] == 0
    assert run(capsys, *base, "--seed", "42", "-o", str(b), "--summary", str(tmp_path / "s2.json"))[0] == 0
    assert a.read_bytes() == b.read_bytes()
    monkeypatch.setenv(cli.SEED_ENV, "42")
    assert run(capsys, *base, "-o", str(c))[0] == 0
    strip = lambda p: [l for l in p.read_text().splitlines() if not l.startswith("#")]
    assert strip(a) == strip(c)
    summary = json.loads((tmp_path / "s.json").read_text())
    assert summary["ks"]["family"] == "gue-ginibre"
    assert summary["analytic_mean"] == pytest.approx(summary["empirical_mean"], rel=0.02)


def test_sample_matrix_matches_formula(tmp_path, capsys):
    f, m = tmp_path / "f.csv", tmp_path / "m.csv"
    base = ("sample", "--alpha-vec", "1,1,1", "--n", "20000", "--seed", "42", "--summary", str(tmp_path / "x.json"))
    run(capsys, *base, "--method", "formula", "-o", str(f))
    run(capsys, *base, "--method", "matrix", "-o", str(m))
    sf = parse_csv(f.read_text())[2][:, 0]
    sm = parse_csv(m.read_text())[2][:, 0]
    assert np.max(np.abs(sf - sm)) <= 1e-10


def test_sample_bad_env_seed(capsys, monkeypatch):
    monkeypatch.setenv(cli.SEED_ENV, "abc")
    code, _, err = run(capsys, "sample", "--alpha-vec", "1,1,1", "--n", "10")
    assert code == 1 and cli.SEED_ENV in err


def test_compare_pass_and_mismatch(capsys):
    code, out, _ = run(capsys, "compare", "--transition", "gue-ginibre", "--alpha", "0.5", "--n", "1000000")
    doc = json.loads(out)
    assert code == 0 and doc["pass"] and doc["statistic"] <= 0.005
    assert doc["scaling"] == "analytic-mean"
    code, out, _ = run(capsys, "compare", "--transition", "gue-ginibre", "--alpha", "0.5", "--n", "1000000", "--against", "goe-ginibre")
    doc = json.loads(out)
    assert code == 3 and not doc["pass"]


def test_compare_empirical_mean_recorded(capsys):
    code, out, _ = run(capsys, "compare", "--transition", "goe-ginibre", "--alpha", "0.25", "--n", "100000", "--empirical-mean")
    assert code == 0 and json.loads(out)["scaling"] == "empirical-mean"


def test_fit(capsys):
    code, out, _ = run(capsys, "fit", "--order", "6", "--points", "512")
    doc = json.loads(out)
    assert code == 0
    assert len(doc["coefficients"]["a"]) == 6
    assert doc["report"]["max_abs_err_scaled"] <= 0.01
    assert doc["published_set"]["winning_convention"] == "direct"
    code, out10, _ = run(capsys, "fit", "--order", "10")
    assert json.loads(out10)["report"]["max_rel_err"] < doc["report"]["max_rel_err"]


def test_check_endpoints_passes(capsys):
    code, out, err = run(capsys, "check", "--suite", "endpoints")
    doc = json.loads(out)
    assert code == 0 and doc["passed"] and not doc["failures"]
    assert "[PASS]" in err


def test_check_reports_named_failures(capsys):
    code, out, _ = run(capsys, "check", "--suite", "chebyshev")
    doc = json.loads(out)
    assert code == 3
    assert doc["failures"] == ["chebyshev/published-coefficients"]


def test_numeric_failure_exit_2(capsys, monkeypatch):
    from transpacing import chebfit
    from transpacing.params import NumericFailure

    def boom(*a, **k):
        raise NumericFailure("rank deficient")

    monkeypatch.setattr(chebfit, "refit", boom)
    code, _, err = run(capsys, "fit")
    assert code == 2 and "numeric failure" in err


def test_module_entry_point():
    res = subprocess.run(
        [sys.executable, "-m", "transpacing", "mean", "--transition", "goe-ginibre", "--alpha", "0.5"],
        capture_output=True,
        text=True,
    )
    assert res.returncode == 0
    assert json.loads(res.stdout)["mean_closed_form"] == pytest.approx(2.9243997, abs=1e-7)
