import json

import numpy as np
import pytest

from jacobi_heat import __version__
from jacobi_heat.cli import RunManifest, main, run
from jacobi_heat.heat_kernel import auto_truncation, density_1d_values


def read_csv(path):
    comments, rows = [], []
    header = None
    for line in path.read_text().splitlines():
        if line.startswith("#"):
            comments.append(line)
        elif header is None:
            header = line.split(",")
        else:
            rows.append([float(v) for v in line.split(",")])
    return comments, header, np.array(rows)


def test_density1d_csv(tmp_path):
    out = tmp_path / "d1.csv"
    code = main(["density1d", "--N", "3", "--t", "0.5", "--c", "0.3", "--grid", "11",
                 "--tol", "1e-10", "--out", str(out)])
    assert code == 0
    comments, header, rows = read_csv(out)
    assert any(__version__ in c for c in comments)
    assert any("n_max=" in c and "achieved_bound=" in c for c in comments)
    assert header == ["u", "f"]
    assert len(rows) == 11
    tr = auto_truncation(0.5, 3, 1e-10)
    want = density_1d_values(0.5, 0.3, rows[:, 0], 3, tr)
    np.testing.assert_allclose(rows[:, 1], want, rtol=1e-15)


def test_density2d_csv(tmp_path):
    out = tmp_path / "d2.csv"
    code = main(["density2d", "--N", "4", "--t", "0.4", "--c", "0.3,0.2", "--grid", "6",
                 "--out", str(out)])
    assert code == 0
    _, header, rows = read_csv(out)
    assert header == ["u1", "u2", "f"]
    assert np.all(rows[:, 0] + rows[:, 1] <= 1.0 + 1e-12)


def test_coeffs_csv_small_differences(tmp_path):
    out = tmp_path / "co.csv"
    code = main(["coeffs", "--N", "4", "--c", "0.25", "--n-max", "20", "--out", str(out)])
    assert code == 0
    _, header, rows = read_csv(out)
    assert header == ["n", "solve", "closed_form", "abs_diff"]
    assert len(rows) == 21
    assert np.all(rows[:, 3] <= 1e-9 * np.maximum(np.abs(rows[:, 2]), 1e-30))


def test_laplace_csv(tmp_path):
    out = tmp_path / "la.csv"
    code = main(["laplace", "--N", "3", "--t", "0.3", "--c", "0.4",
                 "--lambda=-2,0,2", "--out", str(out)])
    assert code == 0
    _, header, rows = read_csv(out)
    assert header == ["lambda", "series", "quadrature", "abs_diff"]
    assert np.all(rows[:, 3] <= 1e-8)


def test_simulate_csv(tmp_path):
    out = tmp_path / "ens.csv"
    code = main(["simulate", "--N", "3", "--k", "2", "--t", "0.2", "--c", "0.4,0.3",
                 "--paths", "30", "--dt", "1e-2", "--seed", "11", "--out", str(out)])
    assert code == 0
    _, header, rows = read_csv(out)
    assert header == ["u1", "u2"]
    assert rows.shape == (30, 2)


def test_validate_quick_report_and_determinism(tmp_path):
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    assert main(["validate", "--tier", "quick", "--seed", "7", "--out", str(out1)]) == 0
    assert main(["validate", "--tier", "quick", "--seed", "7", "--out", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()
    report = json.loads(out1.read_text())
    assert report["tier"] == "quick" and report["seed"] == 7
    assert report["all_pass"] is True
    for check in report["checks"]:
        assert set(check) == {"check_name", "params", "measured", "tolerance", "pass"}


def test_usage_errors_exit_two(tmp_path):
    assert main(["density1d", "--N", "1", "--t", "0.5", "--c", "0.3"]) == 2
    assert main(["density1d", "--N", "3", "--t", "0.5", "--c", "0.3,0.4"]) == 2
    assert main(["density2d", "--N", "4", "--t", "0.4", "--c", "0.8,0.9"]) == 2
    assert main(["laplace", "--N", "3", "--t", "0.3", "--c", "0.4", "--lambda", "50"]) == 2
    assert main(["simulate", "--N", "3", "--k", "1", "--t", "0.5", "--c", "2.0",
                 "--out", str(tmp_path / "x.csv")]) == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-command"])
    assert exc.value.code == 2


def test_run_rejects_unknown_manifest():
    from jacobi_heat.cli import ManifestError

    with pytest.raises(ManifestError):
        run(RunManifest(command="bogus"))


def test_version_flag(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert __version__ in capsys.readouterr().out
