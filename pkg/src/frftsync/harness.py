"""Monte-Carlo experiment harness: trials, parameter sweeps, CSV emission.

Trials are pure functions of (config, geometry, algorithm, trial id); the
per-trial random stream is derived from the master seed and the trial id
with ``numpy.random.SeedSequence``, so any trial can be re-run in isolation
and parallel execution is bit-identical to serial.
"""

from __future__ import annotations

import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .baselines import build_repeated_ts, correlation_cfo, schmidl_cox_timing
from .channel import (ChannelConfig, apply_impairments, build_frame,
                      matched_filter_downsample, random_symbols, rrc_shape)
from .chirp import TrainingSequence, build_training_sequence
from .signal import ComplexSignal, InvalidInputError
from .sync import cfo_range, estimate

ALGORITHMS = ("proposed", "schmidl_cox", "correlation")
SWEEP_PARAMS = ("phi2opt", "ts_length", "cfo", "osnr")
CSV_HEADER = ("param_value,algorithm,trials,timing_err_prob,"
              "mean_timing_err,mean_abs_cfo_err_hz,std_cfo_err_hz")

DEFAULT_PAYLOAD_LEN = 4096
DEFAULT_CORR_LAG = 4


@dataclass(frozen=True)
class TsGeometry:
    """Training-sequence geometry; the first chirp angle is -phi2opt."""

    ts_length: int = 1024        # total TS symbols, two chirps
    phi2opt: float = np.pi / 4

    def __post_init__(self) -> None:
        if self.ts_length < 16 or self.ts_length % 2:
            raise InvalidInputError("ts_length must be an even integer >= 16")

    @property
    def n_s(self) -> int:
        return self.ts_length // 2


@dataclass(frozen=True)
class TrialReport:
    """Ground truth, estimates and error statistics for one trial."""

    trial_id: int
    algorithm: str
    true_offset: int
    true_cfo_hz: float
    est_offset: int
    est_cfo_hz: float
    timing_error: int            # |est - true|, symbols
    cfo_error_hz: float          # |est - true|
    timing_success: bool
    blocks_consistent: bool | None = None
    peak_1: float | None = None
    peak_2: float | None = None


@dataclass(frozen=True)
class SweepSpec:
    """One swept parameter over a value grid, everything else held fixed."""

    param: str
    grid: tuple
    trials: int
    base_cfg: ChannelConfig = ChannelConfig()
    geometry: TsGeometry = TsGeometry()
    algorithms: tuple = ("proposed",)
    payload_len: int = DEFAULT_PAYLOAD_LEN
    corr_lag: int = DEFAULT_CORR_LAG

    def __post_init__(self) -> None:
        if self.param not in SWEEP_PARAMS:
            raise InvalidInputError(f"unknown sweep parameter {self.param!r}")
        if not self.grid:
            raise InvalidInputError("sweep grid must be non-empty")
        if self.trials < 1:
            raise InvalidInputError("trials must be >= 1")
        for alg in self.algorithms:
            if alg not in ALGORITHMS:
                raise InvalidInputError(f"unknown algorithm {alg!r}")


@lru_cache(maxsize=16)
def _cached_ts(phi2opt: float, n_s: int, t: float) -> TrainingSequence:
    return build_training_sequence(-phi2opt, phi2opt, n_s, t)


@lru_cache(maxsize=16)
def _cached_repeated(total_len: int, period: int, seed: int):
    return build_repeated_ts(total_len, period, seed)


def _through_channel(symbols: ComplexSignal, cfg: ChannelConfig):
    """Impair a 1-sps symbol stream, via the RRC path when enabled."""
    if not cfg.rrc_enabled:
        return apply_impairments(symbols, cfg, sps=1)
    shaped = rrc_shape(symbols, cfg.rrc_taps, cfg.rrc_rolloff)
    rx2 = apply_impairments(shaped, cfg, sps=2)
    return matched_filter_downsample(rx2, cfg.rrc_taps, cfg.rrc_rolloff)


def run_trial(cfg: ChannelConfig, geometry: TsGeometry, algorithm: str,
              trial_id: int = 0, payload_len: int = DEFAULT_PAYLOAD_LEN,
              corr_lag: int = DEFAULT_CORR_LAG) -> TrialReport:
    """One full transmit -> impair -> estimate round trip."""
    if algorithm not in ALGORITHMS:
        raise InvalidInputError(f"unknown algorithm {algorithm!r}")
    seeds = np.random.SeedSequence((cfg.seed, trial_id)).generate_state(2)
    trial_cfg = replace(cfg, seed=int(seeds[0]))
    payload_seed = int(seeds[1])
    n_s = geometry.n_s
    t = 1.0 / cfg.r_s

    if algorithm == "proposed":
        ts = _cached_ts(geometry.phi2opt, n_s, t)
        frame = build_frame(ts, payload_len, seed=payload_seed)
        rx = _through_channel(frame, trial_cfg)
        est = estimate(rx.samples, ts, cfg.r_s)
        mu_hat, gamma_hat = est.mu_hat, est.gamma_hat
        extra = dict(blocks_consistent=est.blocks_consistent,
                     peak_1=est.det_1.peak_value, peak_2=est.det_2.peak_value)
    else:
        period = n_s if algorithm == "schmidl_cox" else corr_lag
        rts = _cached_repeated(geometry.ts_length, period, 0)
        rng = np.random.default_rng(payload_seed)
        payload = random_symbols(payload_len, "qam16", rng)
        frame = ComplexSignal(np.concatenate([rts.symbols, payload]), cfg.r_s)
        rx = _through_channel(frame, trial_cfg)
        if algorithm == "schmidl_cox":
            res = schmidl_cox_timing(rx.samples, geometry.ts_length)
            mu_hat = res.mu_hat
            # delay-correlation over the found window; period n_s keeps the
            # data phase cancelled but limits the range to r_s/(2*n_s)
            start = min(max(mu_hat, 0), len(rx.samples) - geometry.ts_length)
            gamma_hat = correlation_cfo(rx.samples, start,
                                        geometry.ts_length, period, cfg.r_s)
        else:
            # timing from the half-repetition metric (the period divides
            # ts_length/2, so the two halves are still identical)
            res = schmidl_cox_timing(rx.samples, geometry.ts_length)
            mu_hat = res.mu_hat
            # CFO measured over the true TS window: generous to the baseline,
            # isolating its frequency accuracy from its timing accuracy
            gamma_hat = correlation_cfo(rx.samples, cfg.frame_offset,
                                        geometry.ts_length, corr_lag, cfg.r_s)
        extra = {}

    return TrialReport(
        trial_id=trial_id, algorithm=algorithm,
        true_offset=cfg.frame_offset, true_cfo_hz=cfg.cfo_hz,
        est_offset=int(mu_hat), est_cfo_hz=float(gamma_hat),
        timing_error=abs(int(mu_hat) - cfg.frame_offset),
        cfo_error_hz=abs(float(gamma_hat) - cfg.cfo_hz),
        timing_success=int(mu_hat) == cfg.frame_offset, **extra)


def aggregate(reports) -> dict:
    """Deterministic reduction of trial reports to the sweep-row statistics."""
    reports = list(reports)
    n = len(reports)
    signed = np.array([r.est_cfo_hz - r.true_cfo_hz for r in reports])
    return {
        "trials": n,
        "timing_err_prob": sum(not r.timing_success for r in reports) / n,
        "mean_timing_err": sum(r.timing_error for r in reports) / n,
        "mean_abs_cfo_err_hz": float(np.mean(np.abs(signed))),
        "std_cfo_err_hz": float(np.std(signed)),
    }


def _apply_param(spec: SweepSpec, value):
    """Configuration for one grid point of the sweep."""
    cfg, geom = spec.base_cfg, spec.geometry
    if spec.param == "phi2opt":
        geom = replace(geom, phi2opt=float(value))
    elif spec.param == "ts_length":
        geom = replace(geom, ts_length=int(value))
    elif spec.param == "cfo":
        cfg = replace(cfg, cfo_hz=float(value))
    else:
        cfg = replace(cfg, osnr_db=None if value is None else float(value))
    return cfg, geom


def _trial_star(args):
    return run_trial(*args)


def run_sweep(spec: SweepSpec, workers: int = 1):
    """Aggregated rows, one per (grid value, algorithm), in grid order."""
    tasks = []
    for value in spec.grid:
        cfg, geom = _apply_param(spec, value)
        for alg in spec.algorithms:
            tasks.append((value, alg,
                          [(cfg, geom, alg, i, spec.payload_len,
                            spec.corr_lag) for i in range(spec.trials)]))
    rows = []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            flat = [a for _, _, args in tasks for a in args]
            reports = list(pool.map(_trial_star, flat, chunksize=8))
        pos = 0
        for value, alg, args in tasks:
            chunk = reports[pos:pos + len(args)]
            pos += len(args)
            rows.append({"param_value": value, "algorithm": alg,
                         **aggregate(chunk)})
    else:
        for value, alg, args in tasks:
            rows.append({"param_value": value, "algorithm": alg,
                         **aggregate([_trial_star(a) for a in args])})
    return rows


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(bool(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, float) and math.isfinite(x) and x == int(x):
        return str(int(x))
    return repr(float(x))


def rows_to_csv(rows) -> str:
    """Fixed-header CSV with deterministic float formatting."""
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for r in rows:
        buf.write(",".join([
            _fmt(r["param_value"]), str(r["algorithm"]), _fmt(r["trials"]),
            _fmt(r["timing_err_prob"]), _fmt(r["mean_timing_err"]),
            _fmt(r["mean_abs_cfo_err_hz"]), _fmt(r["std_cfo_err_hz"])]) + "\n")
    return buf.getvalue()


def report_range(cfg: ChannelConfig, geometry: TsGeometry) -> float:
    """Largest unaliased |CFO| for the configured geometry, in Hz."""
    n_s = geometry.n_s
    return cfo_range(-geometry.phi2opt, geometry.phi2opt,
                     cfg.frame_offset % n_s, n_s, cfg.r_s)
