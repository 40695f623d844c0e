"""Conventional synchronizers used as comparison points.

Both baselines work on a periodic training sequence (identical segments
repeated back to back) rather than the chirp pair:

* Schmidl-Cox timing: sliding half-length autocorrelation metric with the
  plateau-midpoint decision rule.
* Delay-correlation CFO: phase of the lag-L autocorrelation over the known
  training-sequence span; unambiguous range is r_s / (2*L).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .chirp import slice_to_qam4
from .signal import InvalidInputError, as_samples


@dataclass(frozen=True)
class RepeatedTs:
    """Training sequence made of ``total_len // period`` identical segments."""

    symbols: np.ndarray
    period: int

    def __post_init__(self) -> None:
        if self.period < 1 or len(self.symbols) % self.period:
            raise InvalidInputError("length must be a multiple of the period")


def build_repeated_ts(total_len: int, period: int, seed: int = 0) -> RepeatedTs:
    """Random 4-QAM segment of ``period`` symbols tiled to ``total_len``."""
    if total_len < 2 * period:
        raise InvalidInputError("need at least two segments")
    if total_len % period:
        raise InvalidInputError("total_len must be a multiple of period")
    rng = np.random.default_rng(seed)
    seg = slice_to_qam4(rng.normal(size=period) + 1j * rng.normal(size=period))
    return RepeatedTs(np.tile(seg, total_len // period), period)


@dataclass(frozen=True)
class ScTimingResult:
    mu_hat: int
    metric: np.ndarray
    plateau_lo: int
    plateau_hi: int


def schmidl_cox_timing(received, ts_len: int,
                       plateau_frac: float = 0.99) -> ScTimingResult:
    """Timing estimate from the half-length autocorrelation metric.

    The metric plateaus rather than peaks, so the estimate is the midpoint
    of the contiguous region around the argmax whose metric stays above
    ``plateau_frac`` times the maximum.
    """
    rx = as_samples(received)
    half = ts_len // 2
    if ts_len % 2 or half < 1:
        raise InvalidInputError("ts_len must be a positive even integer")
    if len(rx) < ts_len:
        raise InvalidInputError("received signal shorter than ts_len")
    metric = _kernels.schmidl_cox_metric(rx, half)
    peak = int(np.argmax(metric))
    floor = plateau_frac * metric[peak]
    lo = peak
    while lo > 0 and metric[lo - 1] >= floor:
        lo -= 1
    hi = peak
    while hi + 1 < len(metric) and metric[hi + 1] >= floor:
        hi += 1
    return ScTimingResult((lo + hi) // 2, metric, lo, hi)


def correlation_cfo(received, ts_start: int, ts_len: int, lag: int,
                    r_s: float) -> float:
    """CFO estimate from the lag-``lag`` autocorrelation phase, in Hz.

    Assumes the training sequence occupying ``received[ts_start : ts_start +
    ts_len]`` is periodic with period ``lag``, so the data phase cancels and
    only the CFO rotation survives.  Unambiguous for |CFO| < r_s / (2*lag).
    """
    rx = as_samples(received)
    if lag < 1 or ts_len <= lag:
        raise InvalidInputError("need ts_len > lag >= 1")
    if ts_start < 0 or ts_start + ts_len > len(rx):
        raise InvalidInputError("training sequence window out of bounds")
    w = rx[ts_start:ts_start + ts_len]
    acc = np.sum(np.conj(w[:-lag]) * w[lag:])
    return float(np.angle(acc) * r_s / (2.0 * np.pi * lag))
