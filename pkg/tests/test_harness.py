import os
import subprocess
import sys
from dataclasses import replace

import numpy as np
import pytest

from frftsync.channel import ChannelConfig
from frftsync.harness import (SweepSpec, TsGeometry, aggregate, report_range,
                              rows_to_csv, run_sweep, run_trial)
from frftsync.signal import InvalidInputError
from frftsync.sync import cfo_range

BASE = ChannelConfig()
GEOM = TsGeometry()


class TestRunTrial:
    def test_noiseless_defaults(self):
        cfg = replace(BASE, osnr_db=None)
        rep = run_trial(cfg, GEOM, "proposed")
        assert rep.timing_success
        assert rep.est_offset == 100
        assert 4e6 < rep.cfo_error_hz < 6e6
        assert rep.blocks_consistent

    def test_error_fields_consistent(self):
        rep = run_trial(BASE, GEOM, "proposed", trial_id=5)
        assert rep.timing_error == abs(rep.est_offset - rep.true_offset)
        assert rep.cfo_error_hz == pytest.approx(
            abs(rep.est_cfo_hz - rep.true_cfo_hz))
        assert rep.timing_success == (rep.timing_error == 0)

    def test_trials_differ_but_rerun_identically(self):
        a = run_trial(BASE, GEOM, "proposed", trial_id=0)
        b = run_trial(BASE, GEOM, "proposed", trial_id=1)
        assert a.peak_1 != b.peak_1  # independent noise draws
        assert run_trial(BASE, GEOM, "proposed", trial_id=1) == b

    def test_baseline_algorithms_run(self):
        for alg in ("schmidl_cox", "correlation"):
            rep = run_trial(BASE, GEOM, alg)
            assert rep.algorithm == alg
            assert np.isfinite(rep.est_cfo_hz)

    def test_unknown_algorithm(self):
        with pytest.raises(InvalidInputError):
            run_trial(BASE, GEOM, "genie")


class TestSweep:
    def test_degenerate_sweep_matches_trial(self):
        spec = SweepSpec(param="cfo", grid=(3e9,), trials=1, base_cfg=BASE,
                        geometry=GEOM)
        row = run_sweep(spec)[0]
        rep = run_trial(BASE, GEOM, "proposed", trial_id=0)
        assert row["timing_err_prob"] == float(not rep.timing_success)
        assert row["mean_abs_cfo_err_hz"] == pytest.approx(rep.cfo_error_hz)

    def test_aggregate_matches_recomputation(self):
        reports = [run_trial(BASE, GEOM, "proposed", trial_id=i)
                   for i in range(5)]
        agg = aggregate(reports)
        assert agg["trials"] == 5
        assert agg["mean_timing_err"] == pytest.approx(
            np.mean([r.timing_error for r in reports]))
        assert agg["mean_abs_cfo_err_hz"] == pytest.approx(
            np.mean([r.cfo_error_hz for r in reports]))
        signed = [r.est_cfo_hz - r.true_cfo_hz for r in reports]
        assert agg["std_cfo_err_hz"] == pytest.approx(np.std(signed))

    def test_parallel_equals_serial(self):
        spec = SweepSpec(param="osnr", grid=(8.0, 10.0), trials=6,
                        base_cfg=BASE, geometry=GEOM)
        assert rows_to_csv(run_sweep(spec, workers=1)) == rows_to_csv(
            run_sweep(spec, workers=3))

    def test_invalid_specs(self):
        with pytest.raises(InvalidInputError):
            SweepSpec(param="volume", grid=(1,), trials=1)
        with pytest.raises(InvalidInputError):
            SweepSpec(param="cfo", grid=(), trials=1)
        with pytest.raises(InvalidInputError):
            SweepSpec(param="cfo", grid=(1e9,), trials=0)
        with pytest.raises(InvalidInputError):
            SweepSpec(param="cfo", grid=(1e9,), trials=1,
                      algorithms=("genie",))


class TestCsv:
    def test_header_and_shape(self):
        spec = SweepSpec(param="cfo", grid=(1e9, 3e9), trials=2,
                        base_cfg=BASE, geometry=GEOM)
        text = rows_to_csv(run_sweep(spec))
        lines = text.strip().split("\n")
        assert lines[0] == ("param_value,algorithm,trials,timing_err_prob,"
                            "mean_timing_err,mean_abs_cfo_err_hz,"
                            "std_cfo_err_hz")
        assert len(lines) == 3
        assert lines[1].split(",")[1] == "proposed"

    def test_byte_identical_repeat(self):
        spec = SweepSpec(param="osnr", grid=(10.0,), trials=4,
                        base_cfg=BASE, geometry=GEOM)
        assert rows_to_csv(run_sweep(spec)) == rows_to_csv(run_sweep(spec))


class TestReportRange:
    def test_wraps_cfo_range(self):
        assert report_range(BASE, GEOM) == pytest.approx(
            cfo_range(-np.pi / 4, np.pi / 4, 100, 512, 32e9))

    def test_offset_reduced_modulo_block(self):
        cfg = replace(BASE, frame_offset=612)  # 612 mod 512 = 100
        assert report_range(cfg, GEOM) == pytest.approx(report_range(BASE, GEOM))


def test_numba_env_flag_disables_jit():
    code = ("import frftsync; import sys; "
            "sys.exit(0 if not frftsync.numba_enabled() else 1)")
    env = dict(os.environ, FRFTSYNC_NO_NUMBA="1")
    proc = subprocess.run([sys.executable, "-c", code], env=env)
    assert proc.returncode == 0
