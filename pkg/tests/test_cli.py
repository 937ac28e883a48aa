import csv
import io
import json

import numpy as np
import pytest

from vortexquad import cli
from vortexquad.config import ConfigError, RunConfig, load_config, parse_config_text
from vortexquad.coupling import Convention
from vortexquad.oracle import peak_scan


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def parse_csv(text):
    header = [line[2:] for line in text.splitlines() if line.startswith("# ")]
    body = [line for line in text.splitlines() if not line.startswith("#")]
    rows = list(csv.reader(io.StringIO("\n".join(body))))
    return dict(h.split("=", 1) for h in header), rows[0], rows[1:]


def column(rows, columns, name, cast=float):
    i = columns.index(name)
    return np.array([cast(r[i]) for r in rows])


def test_rabi_is_deterministic(capsys):
    args = ("rabi", "--q-xx-ea02", "10", "--q-xz-ea02", "10", "--samples", "200")
    _, a, _ = run(capsys, *args)
    _, b, _ = run(capsys, *args)
    assert a == b and a.endswith("\n") and "\r" not in a


def test_header_echoes_every_key(capsys):
    code, out, _ = run(capsys, "rabi", "--waist-over-lambda", "8", "--samples", "50")
    header, columns, rows = parse_csv(out)
    assert code == 0
    for name, _ in RunConfig().items():
        assert name in header
    assert header["waist_over_lambda"] == "8.0"
    assert header["derived.kind"] == "OamTransfer"
    assert columns[:2] == ["rho_over_wavelength", "omega_over_omega0"]
    assert len(rows) == 50
    # 9 significant digits
    assert all(len(cell.replace("-", "").replace(".", "").split("e")[0].lstrip("0")) <= 9 for cell in rows[10])


def test_rabi_waist_law(capsys):
    peaks = []
    for xi in ("5", "8"):
        _, out, _ = run(capsys, "rabi", "--waist-over-lambda", xi, "--q-xx-ea02", "10", "--q-xz-ea02", "10")
        _, columns, rows = parse_csv(out)
        x = column(rows, columns, "rho_over_wavelength")
        y = column(rows, columns, "omega_over_omega0")
        peaks.append((x[np.argmax(y)], y.max()))
    assert peaks[1][0] > peaks[0][0]
    assert peaks[1][1] == pytest.approx(peaks[0][1], rel=1e-9)


def test_rabi_dm0_p1_has_two_sign_changes(capsys):
    _, out, _ = run(capsys, "rabi", "--delta-m", "0", "--ell", "1", "--p", "1")
    _, columns, rows = parse_csv(out)
    re = column(rows, columns, "re_omega_over_omega0")
    assert np.count_nonzero(np.diff(np.sign(re))) == 2


@pytest.mark.parametrize("args, fragment", [
    (("--delta-m", "1", "--ell", "0", "--sigma-z", "1"), "polarization gating"),
    (("--delta-m", "1", "--ell", "1"), "TAM conservation"),
    (("--sigma-z", "0",), "circular polarization"),
    (("--q-xx-ea02", "-1",), "q_xx_ea02"),
    (("--samples", "1",), "samples"),
    (("--convention", "bogus",), "convention"),
])
def test_rejections_exit_2(capsys, args, fragment):
    code, out, err = run(capsys, "rabi", *args)
    assert code == 2
    assert out == ""
    assert fragment in err


def test_rate_detuning_halves(capsys):
    base = ("rate", "--samples", "300")
    _, on, _ = run(capsys, *base)
    _, off, _ = run(capsys, *base, "--detuning-over-gamma", "0.5")
    _, columns, on_rows = parse_csv(on)
    _, _, off_rows = parse_csv(off)
    a = column(on_rows, columns, "rate_over_gammaS")
    b = column(off_rows, columns, "rate_over_gammaS")
    assert np.allclose(b, a / 2, rtol=1e-8, atol=0)


def test_rate_peak_matches_rabi_peak(capsys):
    _, rabi_out, _ = run(capsys, "rabi", "--q-xx-ea02", "10", "--q-xz-ea02", "10")
    _, rate_out, _ = run(capsys, "rate", "--q-xx-ea02", "10", "--q-xz-ea02", "10")
    header, rc, rabi_rows = parse_csv(rabi_out)
    _, tc, rate_rows = parse_csv(rate_out)
    omega0_over_gamma = float(header["derived.omega_0_over_gamma"])
    peak_rabi = column(rabi_rows, rc, "omega_over_omega0").max() * omega0_over_gamma
    assert column(rate_rows, tc, "rate_over_gammaS").max() == pytest.approx(4 * peak_rabi**2, rel=1e-7)
    assert set(column(rate_rows, tc, "validity_flag", str)) == {"GoldenRuleOk"}


def test_rate_grid_refinement(capsys):
    peaks = []
    for n in ("1000", "2000"):
        _, out, _ = run(capsys, "rate", "--samples", n)
        _, columns, rows = parse_csv(out)
        peaks.append(column(rows, columns, "rate_over_gammaS").max())
    assert peaks[1] == pytest.approx(peaks[0], rel=1e-3)


def test_channels_table(capsys):
    code, out, _ = run(capsys, "channels")
    _, columns, rows = parse_csv(out)
    assert code == 0
    assert [(r[0], r[1], r[2]) for r in rows] == [("0", "1", "-1"), ("1", "2", "-1"), ("2", "3", "-1")]
    assert [r[columns.index("dominant")] for r in rows] == ["no", "yes", "no"]
    code, out, _ = run(capsys, "channels", "--sigma-z", "1")
    assert [(r[0], r[1]) for r in parse_csv(out)[2]] == [("0", "-1"), ("-1", "-2"), ("-2", "-3")]


def test_matrix_elements_table(capsys):
    code, out, _ = run(capsys, "matrix-elements")
    header, columns, rows = parse_csv(out)
    assert code == 0
    by_dm = {int(r[0]): r for r in rows}
    q1, q2 = columns.index("mQ1"), columns.index("mQ2")
    assert float(by_dm[1][q1]) == 0 and float(by_dm[1][q2]) == 0
    assert float(by_dm[0][columns.index("Q_xy")]) == 0
    assert float(header["derived.radial_integral_a02"]) == pytest.approx(-6.4272726, rel=1e-7)


def test_matrix_elements_gating_column(capsys):
    _, out, _ = run(capsys, "matrix-elements", "--sigma-z", "1")
    _, columns, rows = parse_csv(out)
    gate = {int(r[0]): float(r[columns.index("gating")]) for r in rows}
    assert gate[1] == 0 and gate[2] == 0
    assert gate[-1] == pytest.approx(2**0.5)


def test_json_format(capsys):
    _, out, _ = run(capsys, "channels", "--format", "json")
    payload = json.loads(out)
    assert payload["columns"][0] == "delta_m"
    assert len(payload["rows"]) == 3


@pytest.mark.parametrize("convention", [c.value for c in Convention], ids=[c.name.lower() for c in Convention])
def test_validate_passes(capsys, convention):
    code, out, _ = run(capsys, "validate", "--convention", convention)
    reports = [json.loads(line) for line in out.splitlines()]
    assert code == 0
    assert all(r["passed"] for r in reports)


def test_validate_rejects_bad_config_first(capsys):
    code, out, err = run(capsys, "validate", "--q-xx-ea02", "-1")
    assert code == 2 and out == ""


def test_config_precedence(tmp_path, capsys):
    path = tmp_path / "run.cfg"
    path.write_text("# beam\nwaist_over_lambda = 8  # wider\nsamples=20\nell = 2\n")
    cfg = load_config(path, {"samples": "30"})
    assert cfg.waist_over_lambda == 8.0 and cfg.samples == 30 and cfg.ell == 2
    _, out, _ = run(capsys, "rabi", "--config", str(path), "--samples", "25")
    header, _, rows = parse_csv(out)
    assert header["waist_over_lambda"] == "8.0" and header["samples"] == "25" and len(rows) == 25


def test_out_file(tmp_path, capsys):
    target = tmp_path / "profile.csv"
    code, out, _ = run(capsys, "rate", "--samples", "10", "--out", str(target))
    assert code == 0 and out == ""
    header, columns, rows = parse_csv(target.read_text())
    assert header["derived.all_golden_rule_ok"] == "True"
    assert columns == ["rho_over_wavelength", "rate_over_gammaS", "validity_flag"]
    assert len(rows) == 10


def test_config_parse_errors():
    with pytest.raises(ConfigError):
        parse_config_text("no equals sign here")
    with pytest.raises(ConfigError):
        parse_config_text("colour = blue")
    with pytest.raises(ConfigError):
        parse_config_text("samples = many")
    assert parse_config_text("Q_XX_EA02 = compute")["q_xx_ea02"] == "compute"


def test_peak_position_from_cli_output(capsys):
    _, out, _ = run(capsys, "rabi", "--samples", "2000")
    _, columns, rows = parse_csv(out)
    x = column(rows, columns, "rho_over_wavelength")
    y = column(rows, columns, "omega_over_omega0")
    refined = peak_scan(lambda t: np.interp(t, x, y), x[0], x[-1])
    assert refined.rho == pytest.approx(5.0, abs=5e-3)
