import math

import numpy as np
import pytest

from rmtpurity import ExperimentConfig, i_infinity, i_min_coe
from rmtpurity.cli import (
    ConfigError,
    format_config,
    main,
    parse_config,
    preset_runs,
)

GOOD_CONFIG = """\
# strong-coupling smoke config
model = strong
kind = goe
n = 2
m = 2
tmax = 2.0
points = 5
ensemble = 40
seed = 7
"""


def _read_csv(path):
    lines = path.read_text().strip().splitlines()
    header = lines[0].split(",")
    data = np.array([[float(x) for x in line.split(",")]
                     for line in lines[1:]])
    return header, data


# ------------------------------------------------------------ config file


def test_parse_config_minimal():
    cfg = parse_config(GOOD_CONFIG)
    assert isinstance(cfg, ExperimentConfig)
    assert cfg.ensemble_size == 40
    assert cfg.time_grid.size == 5
    assert cfg.time_grid[-1] == 2.0


def test_parse_config_round_trip():
    cfg = parse_config(GOOD_CONFIG)
    again = parse_config(format_config(cfg))
    assert again.model == cfg.model
    assert np.array_equal(again.time_grid, cfg.time_grid)
    assert again.ensemble_size == cfg.ensemble_size
    assert again.master_seed == cfg.master_seed
    assert again.policy == cfg.policy
    assert again.record_realizations == cfg.record_realizations


def test_parse_config_weak_model():
    text = ("model = weak\nkind1 = goe\nkind2 = poisson\nlambda = 0.03\n"
            "n = 4\nm = 4\ntmax = 10\npoints = 11\nensemble = 5\nseed = 1\n")
    cfg = parse_config(text)
    assert cfg.model.lam == 0.03
    again = parse_config(format_config(cfg))
    assert again.model == cfg.model


@pytest.mark.parametrize("old,new,fragment", [
    ("kind = goe", "kind = gue", "unknown spectrum kind"),
    ("seed = 7", "seed = 7\nunknown = 3", "unknown key"),
    ("points = 5", "points = abc", "cannot parse"),
    ("model = strong", "model = medium", "strong"),
    ("seed = 7", "seed = 7\nkind1 = goe", "not valid for model=strong"),
    ("seed = 7", "seed = 7\nseed = 8", "duplicate"),
])
def test_parse_config_errors(old, new, fragment):
    text = GOOD_CONFIG.replace(old, new)
    with pytest.raises(ConfigError) as err:
        parse_config(text)
    assert fragment in str(err.value)


def test_parse_config_missing_key():
    text = GOOD_CONFIG.replace("seed = 7\n", "")
    with pytest.raises(ConfigError) as err:
        parse_config(text)
    assert "seed" in str(err.value)


def test_parse_config_reports_line_numbers():
    with pytest.raises(ConfigError) as err:
        parse_config("model = strong\nbogus line without equals\n")
    assert "line 2" in str(err.value)


# -------------------------------------------------------------- run command


def test_run_writes_outputs(tmp_path):
    cfg_file = tmp_path / "exp.cfg"
    cfg_file.write_text(GOOD_CONFIG)
    out = tmp_path / "out"
    assert main(["run", str(cfg_file), "--out", str(out),
                 "--workers", "1"]) == 0

    header, data = _read_csv(out / "purity.csv")
    assert header == ["t", "mean", "std", "count", "traj_0"]
    assert data.shape == (5, 5)
    assert data[0, 1] == pytest.approx(1.0, abs=1e-12)
    assert np.all(data[:, 3] == 40)

    header, data = _read_csv(out / "analytics.csv")
    assert header == ["t", "f", "s1", "s2", "s3", "s4", "s5",
                      "short_time", "i_min_coe", "i_infinity"]
    assert data.shape == (5, 10)
    assert data[0, 1] == 1.0
    assert np.all(data[:, 8] == pytest.approx(i_min_coe(2, 2), abs=1e-15))

    manifest = (out / "manifest.txt").read_text()
    assert "purity.csv" in manifest and "analytics.csv" in manifest
    # config echo in the manifest round-trips
    echo = manifest.split("[config run]\n", 1)[1].split("\n\n", 1)[0]
    assert parse_config(echo).ensemble_size == 40


def test_run_n1_mean_all_one(tmp_path):
    cfg_file = tmp_path / "exp.cfg"
    cfg_file.write_text(GOOD_CONFIG.replace("n = 2", "n = 1"))
    out = tmp_path / "o"
    assert main(["run", str(cfg_file), "--out", str(out),
                 "--workers", "1"]) == 0
    _, data = _read_csv(out / "purity.csv")
    assert np.abs(data[:, 1] - 1.0).max() < 1e-10


def test_run_malformed_config_exit2_no_csv(tmp_path):
    cfg_file = tmp_path / "bad.cfg"
    cfg_file.write_text(GOOD_CONFIG + "unknown = 1\n")
    out = tmp_path / "out"
    assert main(["run", str(cfg_file), "--out", str(out)]) == 2
    assert not (out / "purity.csv").exists()


def test_run_dimension_error_exit3(tmp_path):
    cfg_file = tmp_path / "bad.cfg"
    cfg_file.write_text(GOOD_CONFIG.replace("n = 2", "n = 0"))
    assert main(["run", str(cfg_file), "--out", str(tmp_path / "x")]) == 3


def test_run_missing_file_exit2(tmp_path):
    assert main(["run", str(tmp_path / "nope.cfg")]) == 2


def test_run_byte_identical_reruns(tmp_path):
    cfg_file = tmp_path / "exp.cfg"
    cfg_file.write_text(GOOD_CONFIG)
    outs = []
    for sub, workers in (("a", "1"), ("b", "2")):
        out = tmp_path / sub
        assert main(["run", str(cfg_file), "--out", str(out),
                     "--workers", workers]) == 0
        outs.append((out / "purity.csv").read_bytes())
    assert outs[0] == outs[1]


# ------------------------------------------------------------------ preset


def test_unknown_preset_exit2(tmp_path):
    assert main(["preset", "fig9", "--out", str(tmp_path)]) == 2


def test_preset_definitions():
    runs = preset_runs("fig1", None, None, None, None)
    assert [label for label, _ in runs] == ["goe", "poisson", "picketfence"]
    grid = runs[0][1].time_grid
    tH = 16 * math.pi / math.sqrt(3)
    assert grid[-1] == pytest.approx(1.2 * tH, rel=1e-12)
    # first minimum, partial revival and recurrence sit exactly on the grid
    for special in (tH / 16, tH / 2, tH):
        assert np.min(np.abs(grid - special)) < 1e-9

    runs = preset_runs("fig3", None, None, None, None)
    assert [label for label, _ in runs] == [
        "goe-goe", "goe-poisson", "poisson-poisson"]
    assert all(cfg.model.lam == 0.03 for _, cfg in runs)
    assert all(cfg.model.dims.total == 16 for _, cfg in runs)

    runs = preset_runs("fig5", None, None, None, None)
    assert all(cfg.model.lam == 0.01 for _, cfg in runs)
    assert all(cfg.model.dims.total == 100 for _, cfg in runs)

    (label, cfg), = preset_runs("fig2", None, None, None, None)
    assert label == "goe"
    assert np.any(np.isclose(cfg.time_grid, 0.005))  # dense prefix present


def test_preset_runs_small(tmp_path):
    out = tmp_path / "fig1"
    assert main(["preset", "fig1", "--ensemble", "30", "--points", "7",
                 "--tmax", "3.0", "--seed", "5", "--out", str(out),
                 "--workers", "1"]) == 0
    for label in ("goe", "poisson", "picketfence"):
        assert (out / f"purity_{label}.csv").exists()
    assert (out / "analytics.csv").exists()
    manifest = (out / "manifest.txt").read_text()
    assert "purity_goe.csv" in manifest
    assert "[config goe]" in manifest


# ------------------------------------------------------------------ tables


def test_tables_output(tmp_path):
    assert main(["tables", "--n", "1", "4", "10", "--m", "1", "4", "10",
                 "--out", str(tmp_path)]) == 0
    header, data = _read_csv(tmp_path / "closed_forms.csv")
    assert header == ["n", "m", "N", "short_coeff", "i_min_coe",
                      "i_infinity"]
    rows = {(int(r[0]), int(r[1])): r for r in data}
    assert rows[(4, 4)][4] == pytest.approx(0.474071, abs=5e-7)
    assert rows[(4, 4)][5] == pytest.approx(0.483422, abs=5e-7)
    assert rows[(10, 10)][4] == pytest.approx(0.198176, abs=5e-7)
    assert rows[(10, 10)][5] == pytest.approx(0.198696, abs=5e-7)
    for m in (1, 4, 10):
        assert rows[(1, m)][4] == 1.0 and rows[(1, m)][5] == 1.0
