import csv
import io
import math
import subprocess
import sys

import pytest

from demoivre.cli import HISTORICAL_TABLE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_csv(text):
    rows = [r for r in csv.reader(io.StringIO(text)) if r and not r[0].startswith("#")]
    return rows[0], rows[1:]


# -- table ---------------------------------------------------------------------


def test_table_default_text(capsys):
    code, out, _ = run(capsys, "table")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split() == ["s", "modern", "de_moivre"]
    assert lines[1].split() == ["1", "0.682689", "0.682688"]
    assert lines[2].split() == ["2", "0.9545", "0.95428"]
    assert lines[3].split() == ["3", "0.9973", "0.99874"]


def test_table_csv_values(capsys):
    code, out, _ = run(capsys, "table", "--format", "csv")
    header, rows = parse_csv(out)
    assert code == 0 and header == ["s", "modern", "de_moivre"]
    for row, s in zip(rows, (1, 2, 3)):
        assert float(row[1]) == pytest.approx(math.erf(s / math.sqrt(2)), abs=1e-12)
        assert float(row[2]) == HISTORICAL_TABLE[s]


def test_table_with_binomial_and_bracket(capsys):
    code, out, _ = run(capsys, "table", "--n", "3600", "--historical", "--continuity-correction",
                       "--format", "csv")
    header, rows = parse_csv(out)
    assert code == 0
    assert header == ["s", "modern", "de_moivre", "binomial", "corrected_limit", "coarse_low", "coarse_high"]
    one = dict(zip(header, rows[0]))
    assert float(one["binomial"]) == pytest.approx(0.6906883443916287, abs=1e-12)
    assert abs(float(one["binomial"]) - float(one["corrected_limit"])) < 1e-4
    for row in rows:
        d = dict(zip(header, row))
        assert float(d["coarse_low"]) <= float(d["de_moivre"]) <= float(d["coarse_high"])
    assert "# coarse settings: simpson x1" in out


def test_table_extra_sigma_has_blank_historical(capsys):
    code, out, _ = run(capsys, "table", "--sigmas", "0.5", "--format", "csv")
    _, rows = parse_csv(out)
    assert code == 0 and rows[0][2] == ""


# -- converge ------------------------------------------------------------------


def test_converge(capsys):
    code, out, _ = run(capsys, "converge", "--p", "0.3", "--probe", "hermite:3",
                       "--n-start", "64", "--n-stop", "4096", "--factor", "4", "--format", "csv")
    header, rows = parse_csv(out)
    assert code == 0
    assert header == ["n", "pairing", "gaussian_limit", "abs_error"]
    assert [int(r[0]) for r in rows] == [64, 256, 1024, 4096]
    errors = [float(r[3]) for r in rows]
    assert all(a > b for a, b in zip(errors, errors[1:]))
    slope = float(out.split("fitted slope: ")[1].split()[0])
    assert slope <= -0.4


def test_converge_complex_probe(capsys):
    code, out, _ = run(capsys, "converge", "--probe", "expi:1", "--n-stop", "256", "--format", "csv")
    header, _ = parse_csv(out)
    assert code == 0 and "pairing_im" in header


def test_converge_symmetric_note(capsys):
    code, out, _ = run(capsys, "converge", "--probe", "hermite:1", "--n-stop", "256")
    assert code == 0
    assert "fitted slope: nan" in out and "symmetry" in out


# -- plot-data -----------------------------------------------------------------


def test_plot_data(capsys):
    code, out, _ = run(capsys, "plot-data", "--n", "100")
    assert code == 0
    atoms_text, curve_text = out.split("\n\n")
    header, atoms = parse_csv(atoms_text)
    assert header == ["x", "height"]
    xs = [float(r[0]) for r in atoms]
    assert all(abs(x) <= 4 for x in xs)
    # atoms k = 30..70 lie within 4 standard deviations at n=100
    assert len(atoms) == 41
    heights = [float(r[1]) for r in atoms]
    assert max(heights) == pytest.approx(0.397946, abs=1e-6)
    assert abs(max(heights) - 1 / math.sqrt(2 * math.pi)) <= 0.02 * 0.3989
    cheader, curve = parse_csv(curve_text)
    assert cheader == ["x", "density"] and len(curve) == 401
    assert float(curve[0][0]) == -4 and float(curve[-1][0]) == 4


def test_plot_data_zero_range(capsys):
    code, out, _ = run(capsys, "plot-data", "--n", "100", "--range", "0")
    atoms_text, curve_text = out.split("\n\n")
    assert code == 0
    assert atoms_text.strip() == "x,height"
    assert len(parse_csv(curve_text)[1]) == 401


def test_plot_data_wide_range(capsys):
    code, out, _ = run(capsys, "plot-data", "--n", "10", "--range", "6")
    atoms, curve = (parse_csv(b)[1] for b in out.split("\n\n"))
    assert code == 0 and len(atoms) == 11
    assert float(curve[0][0]) == -6


# -- pair, local, moments, cf --------------------------------------------------


def test_pair(capsys):
    code, out, _ = run(capsys, "pair", "--n", "2", "--probe", "indicator:-1:1", "--format", "csv")
    header, rows = parse_csv(out)
    assert code == 0
    d = dict(zip(header, rows[0]))
    assert float(d["value_re"]) == pytest.approx(0.5, abs=1e-15)
    assert d["tail_certificate"] == "nan"


def test_pair_certificate_and_correction(capsys):
    code, out, _ = run(capsys, "pair", "--n", "400", "--probe", "hermite:2", "--cutoff", "3",
                       "--format", "csv")
    header, rows = parse_csv(out)
    d = dict(zip(header, rows[0]))
    assert code == 0 and abs(float(d["tail_re"])) <= float(d["tail_certificate"])
    code, out, _ = run(capsys, "pair", "--n", "3600", "--probe", "indicator:-1:1",
                       "--continuity-correction", "--format", "csv")
    header, rows = parse_csv(out)
    assert code == 0 and float(dict(zip(header, rows[0]))["corrected_limit"]) == pytest.approx(
        0.690688, abs=1e-6)


def test_local(capsys):
    code, out, _ = run(capsys, "local", "--n", "100", "--l", "5", "--format", "csv")
    header, rows = parse_csv(out)
    d = dict(zip(header, rows[0]))
    assert code == 0
    assert float(d["exact_log_ratio"]) == pytest.approx(-0.495845184008803, abs=1e-13)
    assert float(d["demoivre_log_ratio"]) == -0.5


def test_moments(capsys):
    code, out, _ = run(capsys, "moments", "--n", "100", "--r", "4", "--all", "--standardized",
                       "--format", "csv")
    _, rows = parse_csv(out)
    assert code == 0 and len(rows) == 5
    assert float(rows[4][1]) == pytest.approx(2.98, abs=1e-10)


def test_moments_weak_cauchy(capsys):
    code, out, _ = run(capsys, "moments", "--weak", "cauchy", "--r", "2", "--format", "csv")
    header, rows = parse_csv(out)
    assert code == 0 and header == ["r", "weak_moment", "normalized"]
    assert float(rows[0][1]) == pytest.approx(0.2747279770726186, abs=1e-12)


def test_cf(capsys):
    code, out, _ = run(capsys, "cf", "--n", "4", "--t", "0", "3.141592653589793", "--format", "csv")
    _, rows = parse_csv(out)
    assert code == 0
    assert float(rows[0][1]) == 1.0
    assert abs(float(rows[1][1])) < 1e-15


def test_cf_weak(capsys):
    code, out, _ = run(capsys, "cf", "--weak", "gaussian", "--t", "1", "--format", "csv")
    header, rows = parse_csv(out)
    assert code == 0
    assert float(dict(zip(header, rows[0]))["raw_re"]) == pytest.approx(math.exp(-0.25) / math.sqrt(2), abs=1e-12)


# -- exit codes, determinism, output -------------------------------------------

USAGE_ERRORS = [
    ["table", "--sigmas", "-1"],
    ["table", "--n", "3"],
    ["converge", "--probe", "bogus:1"],
    ["converge", "--n-start", "100", "--n-stop", "150"],
    ["converge", "--factor", "1"],
    ["plot-data"],
    ["plot-data", "--n", "10", "--range", "inf"],
    ["pair", "--n", "10", "--probe", "indicator:1"],
    ["pair", "--n", "10", "--probe", "hermite:1", "--continuity-correction"],
    ["pair", "--n", "10", "--probe", "hermite:1", "--p", "1.5"],
    ["local", "--n", "10"],
    ["moments", "--r", "2"],
    ["moments", "--r", "2", "--weak", "laplace"],
    ["cf", "--t", "1"],
    ["cf", "--n", "5", "--t", "nan"],
    ["nonsense"],
]

COMPUTE_ERRORS = [
    ["converge", "--probe", "gwp:1e308,1e308"],
    ["pair", "--n", "10", "--probe", "hermite:1", "--cutoff", "0"],
    ["pair", "--n", "10", "--probe", "gwp:1e308"],
    ["local", "--n", "101", "--l", "1"],
    ["local", "--n", "100", "--l", "51"],
    ["moments", "--n", "10", "--r", "21"],
    ["moments", "--weak", "cauchy", "--r", "-1"],
]


@pytest.mark.parametrize("argv", USAGE_ERRORS, ids=" ".join)
def test_usage_errors_exit_2(argv, capsys):
    with pytest.raises(SystemExit) as info:
        code = main(argv)
        raise SystemExit(code)
    assert info.value.code == 2
    assert "usage" in capsys.readouterr().err


@pytest.mark.filterwarnings("ignore::RuntimeWarning")
@pytest.mark.parametrize("argv", COMPUTE_ERRORS, ids=" ".join)
def test_compute_errors_exit_1(argv, capsys):
    code, out, err = run(capsys, *argv)
    assert code == 1
    assert out == ""
    assert err.startswith("demoivre: ") and "Traceback" not in err


SUCCESS = [
    ["table", "--historical"],
    ["converge", "--n-stop", "256"],
    ["plot-data", "--n", "50"],
    ["pair", "--n", "50", "--probe", "gwp:1,0,-1"],
    ["local", "--n", "50", "--l", "3"],
    ["moments", "--n", "50", "--r", "3"],
    ["cf", "--n", "50", "--t", "0.5"],
]


@pytest.mark.parametrize("argv", SUCCESS, ids=" ".join)
@pytest.mark.parametrize("fmt", ["text", "csv"])
def test_deterministic(argv, fmt, capsys):
    first = run(capsys, *argv, "--format", fmt)
    second = run(capsys, *argv, "--format", fmt)
    assert first[0] == 0 and first == second
    assert "\r" not in first[1]


@pytest.mark.parametrize("argv", SUCCESS, ids=" ".join)
def test_csv_round_trip(argv, capsys):
    _, out, _ = run(capsys, *argv, "--format", "csv")
    for block in out.split("\n\n"):
        header, rows = parse_csv(block)
        assert all(len(r) == len(header) for r in rows)
        for row in rows:
            for cell in row:
                if cell:
                    float(cell)


def test_out_file(tmp_path, capsys):
    target = tmp_path / "table.csv"
    code, out, _ = run(capsys, "table", "--format", "csv", "--out", str(target))
    assert code == 0 and out == ""
    assert target.read_bytes() == run(capsys, "table", "--format", "csv")[1].encode()


def test_help_lists_subcommands():
    proc = subprocess.run([sys.executable, "-m", "demoivre", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    for name in ("table", "converge", "plot-data", "pair", "local", "moments", "cf"):
        assert name in proc.stdout


def test_module_entry_exit_codes():
    ok = subprocess.run([sys.executable, "-m", "demoivre", "local", "--n", "10", "--l", "1"],
                        capture_output=True, text=True)
    bad = subprocess.run([sys.executable, "-m", "demoivre", "local", "--n", "11", "--l", "1"],
                         capture_output=True, text=True)
    usage = subprocess.run([sys.executable, "-m", "demoivre", "local"], capture_output=True, text=True)
    assert (ok.returncode, bad.returncode, usage.returncode) == (0, 1, 2)
