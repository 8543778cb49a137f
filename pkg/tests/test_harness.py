import json
import warnings

import numpy as np
import pytest

from polarharq import harness
from polarharq.arum import TransmissionConfig
from polarharq.cli import main as cli_main
from polarharq.harness import ConfigError, ExperimentConfig, ResultRow, crossing_snr

warnings.filterwarnings("ignore", message="transmission .* carries no active bits")


def tiny_cfg(**kw):
    base = dict(
        payload_k=24,
        transmissions=[TransmissionConfig(32, 32, "NONE", None)],
        snr_start_db=2.0,
        snr_stop_db=2.0,
        snr_step_db=0.5,
        frame_budget=400,
        error_limit=10**9,
        seed=5,
        list_size=2,
    )
    base.update(kw)
    return ExperimentConfig(**base)


def test_config_json_roundtrip(tmp_path):
    cfg = tiny_cfg(baseline=TransmissionConfig(64, 48, "PUNCTURE", None))
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(cfg.to_dict()))
    back = ExperimentConfig.from_json(path)
    assert back == cfg


def test_config_validation_errors():
    with pytest.raises(ConfigError):
        tiny_cfg(payload_k=10)  # smaller than the CRC
    with pytest.raises(ConfigError):
        tiny_cfg(transmissions=[])
    with pytest.raises(ConfigError):
        tiny_cfg(frame_budget=0)
    with pytest.raises(ConfigError):
        tiny_cfg(kernel="XZ")
    with pytest.raises(ConfigError):
        ExperimentConfig.from_dict({"payload_k": 24})


def test_snr_points_inclusive():
    cfg = tiny_cfg(snr_start_db=0.0, snr_stop_db=1.0, snr_step_db=0.5)
    assert cfg.snr_points() == [0.0, 0.5, 1.0]


def test_run_single_statistical_self_consistency():
    # same code, two seeds: BLER estimates agree within binomial 3 sigma
    cfg_a = tiny_cfg(
        payload_k=64,
        transmissions=[TransmissionConfig(256, 128, "PUNCTURE", None)],
        snr_start_db=-1.0,
        snr_stop_db=-1.0,
        frame_budget=1500,
        seed=101,
        list_size=4,
    )
    cfg_b = harness.replace(cfg_a, seed=202)
    pa = harness.run_single(cfg_a)[0]
    pb = harness.run_single(cfg_b)[0]
    p_bar = (pa.block_errors + pb.block_errors) / (pa.frames + pb.frames)
    sigma = np.sqrt(p_bar * (1 - p_bar) * (1 / pa.frames + 1 / pb.frames))
    assert abs(pa.bler - pb.bler) <= 3 * sigma + 1e-12
    assert min(pa.block_errors, pb.block_errors) > 10  # sanity: not degenerate


def test_run_single_high_snr_zero_bler():
    cfg = tiny_cfg(snr_start_db=12.0, snr_stop_db=12.0, frame_budget=300)
    row = harness.run_single(cfg)[0]
    assert row.bler == 0.0 and row.frames == 300


def test_run_single_rate_one_saturates():
    cfg = tiny_cfg(
        payload_k=32,
        crc_enabled=False,
        transmissions=[TransmissionConfig(32, 32, "NONE", None)],
        snr_start_db=-12.0,
        snr_stop_db=-12.0,
        frame_budget=200,
    )
    row = harness.run_single(cfg)[0]
    assert row.bler > 0.95


def test_run_single_rejects_multi_tx():
    cfg = tiny_cfg(transmissions=[TransmissionConfig(32, 32, "NONE", None)] * 2)
    with pytest.raises(ConfigError):
        harness.run_single(cfg)


def test_harq_t1_matches_run_single():
    cfg = tiny_cfg(frame_budget=600)
    a = harness.run_single(cfg)[0]
    b = harness.run_harq(cfg)[0]
    assert (a.frames, a.block_errors, a.crc_false_pass) == (
        b.frames,
        b.block_errors,
        b.crc_false_pass,
    )


def test_harq_monotone_and_rows():
    cfg = tiny_cfg(
        transmissions=[TransmissionConfig(32, 32, "NONE", None)] * 2,
        snr_start_db=-2.0,
        snr_stop_db=-1.0,
        snr_step_db=1.0,
        frame_budget=500,
    )
    rows = harness.run_harq(cfg)
    assert len(rows) == 4
    for snr in (-2.0, -1.0):
        curve = {r.transmissions_used: r for r in rows if r.snr_db == snr}
        n = curve[1].frames
        p1, p2 = curve[1].bler, curve[2].bler
        sigma = np.sqrt(max(p1, 1 / n) * (1 - min(p1, 1 - 1 / n)) / n)
        assert p2 <= p1 + 3 * sigma
        # at fixed Es/N0, accumulated redundancy raises the per-info-bit energy
        assert curve[2].eb_n0 > curve[1].eb_n0


def test_early_stop_rule():
    cfg = tiny_cfg(
        snr_start_db=-3.0,
        snr_stop_db=-3.0,
        frame_budget=5000,
        error_limit=20,
    )
    row = harness.run_single(cfg)[0]
    assert row.block_errors >= 20
    assert row.frames < 5000
    # rerun with a bigger budget: identical stop point (frame-order rule)
    row2 = harness.run_single(harness.replace(cfg, frame_budget=9000))[0]
    assert (row.frames, row.block_errors) == (row2.frames, row2.block_errors)


def test_worker_count_does_not_change_results():
    cfg = tiny_cfg(
        snr_start_db=0.0,
        snr_stop_db=0.0,
        frame_budget=300,
        error_limit=25,
    )
    rows1 = harness.run_single(cfg)
    rows2 = harness.run_single(harness.replace(cfg, workers=2))
    for a, b in zip(rows1, rows2):
        assert (a.frames, a.block_errors, a.bler, a.crc_false_pass) == (
            b.frames,
            b.block_errors,
            b.bler,
            b.crc_false_pass,
        )


def test_csv_deterministic_except_wall_time(tmp_path):
    cfg = tiny_cfg(frame_budget=200)
    paths = []
    for i in range(2):
        rows = harness.run_single(cfg)
        p = tmp_path / f"run{i}.csv"
        harness.write_rows_csv(p, rows)
        paths.append(p)
    def strip_wall(path):
        lines = path.read_text().splitlines()
        return [",".join(line.split(",")[:-1]) for line in lines]
    assert strip_wall(paths[0]) == strip_wall(paths[1])


def test_manifest_contents(tmp_path):
    cfg = tiny_cfg()
    harness.write_manifest(tmp_path / "m.json", cfg, 1.23)
    doc = json.loads((tmp_path / "m.json").read_text())
    assert doc["seed"] == cfg.seed
    assert doc["config"]["payload_k"] == 24
    assert "version" in doc and doc["wall_time"] == 1.23


def test_crossing_snr_interpolation():
    rows = [
        ResultRow(-3.0, -3.0, 0.0, 1, 100, 10, 1e-1, 0, 0.0),
        ResultRow(-2.0, -2.0, 0.0, 1, 100, 1, 1e-3, 0, 0.0),
    ]
    x = crossing_snr(rows, 1e-2)
    assert x == pytest.approx(-2.5)
    assert np.isnan(crossing_snr(rows, 1e-5))


def test_verify_suites_pass():
    report = harness.verify()
    assert report["passed"], json.dumps(report, indent=2)
    assert set(report["suites"]) == {"kernels", "oracle", "ratematch", "arum-equivalence"}


def test_verify_unknown_suite():
    with pytest.raises(ConfigError):
        harness.verify(["nope"])


def test_preset_lookup():
    cfg = harness.preset("fig4_two_tx")
    assert cfg.payload_k == 108 and len(cfg.transmissions) == 2
    with pytest.raises(ConfigError):
        harness.preset("missing")


# ------------------------------------------------------------------ CLI


def test_cli_simulate_and_outputs(tmp_path):
    cfg = tiny_cfg(frame_budget=150)
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg.to_dict()))
    out = tmp_path / "out"
    rc = cli_main(["simulate", "--config", str(cfg_path), "--out", str(out)])
    assert rc == 0
    text = (out / "single.csv").read_text().splitlines()
    assert text[0] == ",".join(ResultRow.CSV_COLUMNS)
    assert (out / "manifest.json").exists()


def test_cli_harq_with_baseline(tmp_path):
    cfg = tiny_cfg(
        transmissions=[TransmissionConfig(32, 32, "NONE", None)] * 2,
        payload_k=26,
        snr_start_db=0.0,
        snr_stop_db=0.0,
        frame_budget=80,
        baseline=TransmissionConfig(64, 64, "NONE", None),
    )
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg.to_dict()))
    out = tmp_path / "out"
    rc = cli_main(["harq", "--config", str(cfg_path), "--out", str(out)])
    assert rc == 0
    assert (out / "harq_tx1.csv").exists()
    assert (out / "harq_tx2.csv").exists()
    assert (out / "baseline.csv").exists()


def test_cli_construct(tmp_path):
    cfg = tiny_cfg(
        transmissions=[
            TransmissionConfig(8, 6, "PUNCTURE", None),
            TransmissionConfig(4, 3, "SHORTEN", None),
        ],
        payload_k=4,
        crc_enabled=False,
        snr_start_db=0.0,
        snr_stop_db=0.0,
    )
    cfg_path = tmp_path / "cfg.json"
    cfg_path.write_text(json.dumps(cfg.to_dict()))
    out = tmp_path / "out"
    rc = cli_main(["construct", "--config", str(cfg_path), "--out", str(out)])
    assert rc == 0
    doc = json.loads((out / "active_sets.json").read_text())
    assert len(doc["active_sets"]) == 2
    assert (out / "reliability.csv").read_text().startswith("position,block,mean")


def test_cli_verify(tmp_path):
    rc = cli_main(["verify", "--suites", "kernels,ratematch", "--out", str(tmp_path)])
    assert rc == 0
    doc = json.loads((tmp_path / "verify_report.json").read_text())
    assert doc["passed"] and set(doc["suites"]) == {"kernels", "ratematch"}


def test_cli_config_error_exit_code(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{}")
    rc = cli_main(["simulate", "--config", str(bad), "--out", str(tmp_path / "o")])
    assert rc == 2


def test_cli_preset_loading(tmp_path):
    # construct with a preset reference resolves without touching disk
    rc = cli_main(["construct", "--config", "preset:fig4_two_tx", "--out", str(tmp_path / "o")])
    assert rc == 0
