"""Joint frame-offset / CFO estimator built on fractional correlation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .chirp import TrainingSequence
from .dfrft import fractional_correlation_arrays, frft_array
from .signal import HALF_PI, InvalidInputError, as_samples


class SingularSystemError(ValueError):
    """The two chirp angles do not span the time/frequency shift plane."""


@dataclass(frozen=True)
class ChirpDetection:
    """Result of the block search for one chirp."""

    b_hat: int          # winning block index
    u_hat: int          # metric peak bin within the block, 0..n_s-1
    peak_value: float
    delta_n: int        # u_hat - n_s/2


@dataclass(frozen=True)
class SyncEstimate:
    """Joint estimate plus the intermediate quantities that produced it."""

    mu_hat: int         # frame offset, symbols
    gamma_hat: float    # CFO, Hz
    delta_t: float      # fractional time shift, samples
    delta_f: float      # fractional frequency shift, bins
    det_1: ChirpDetection
    det_2: ChirpDetection
    blocks_consistent: bool


def round_half_away(x: float) -> int:
    """Round to nearest integer, halves away from zero."""
    return int(math.floor(x + 0.5)) if x >= 0 else int(math.ceil(x - 0.5))


def detect_chirp(received, reference, phi_opt: float, n_s: int,
                 block_count: int, block_offset: int = 0) -> ChirpDetection:
    """Search contiguous n_s-sample blocks for the chirp's metric peak.

    Block b covers samples (b + block_offset)*n_s .. +n_s.  Ties in both the
    per-block argmax and the block selection break to the smallest index.
    """
    rx = as_samples(received)
    ref = as_samples(reference)
    if len(ref) != n_s:
        raise InvalidInputError("reference length must equal n_s")
    if len(rx) < (block_count + block_offset) * n_s:
        raise InvalidInputError("received signal too short for block search")
    a_prime = phi_opt / HALF_PI + 1.0
    ref_spec = frft_array(ref, a_prime)
    best_b, best_u, best_peak = 0, 0, -1.0
    for b in range(block_count):
        lo = (b + block_offset) * n_s
        metric = fractional_correlation_arrays(rx[lo:lo + n_s], ref_spec,
                                               a_prime)
        u = int(np.argmax(metric))
        if metric[u] > best_peak:
            best_b, best_u, best_peak = b, u, float(metric[u])
    return ChirpDetection(best_b, best_u, best_peak, best_u - n_s // 2)


def solve_offsets(delta_n1: int, delta_n2: int, phi_1: float,
                  phi_2: float) -> tuple[float, float]:
    """Invert the 2x2 peak-shift system for (delta_t, delta_f)."""
    denom = np.sin(phi_2 - phi_1)
    if abs(denom) < 1e-12:
        raise SingularSystemError("chirp angles coincide modulo pi")
    delta_t = (delta_n1 * np.sin(phi_2) - delta_n2 * np.sin(phi_1)) / denom
    delta_f = (delta_n2 * np.cos(phi_1) - delta_n1 * np.cos(phi_2)) / denom
    return float(delta_t), float(delta_f)


def estimate(received, ts: TrainingSequence, r_s: float,
             block_count: int | None = None,
             sliced_reference: bool = False) -> SyncEstimate:
    """End-to-end joint estimate from a received symbol stream at 1 sps.

    Chirp 2's block grid is offset by one block relative to chirp 1's, so
    both detections share the same intra-block time shift.  Disagreeing
    winning blocks are reported via ``blocks_consistent`` rather than raised.
    The detector correlates against the raw (pre-slicing) chirps by default;
    ``sliced_reference=True`` uses the transmitted 4-QAM symbols instead.
    """
    rx = as_samples(received)
    n_s = ts.n_s
    if block_count is None:
        block_count = (len(rx) - 2 * n_s) // n_s
    if block_count < 1 or len(rx) < block_count * n_s + 2 * n_s:
        raise InvalidInputError("received signal too short")
    phi_1 = ts.spec_1.phi_opt
    phi_2 = ts.spec_2.phi_opt
    if sliced_reference:
        ref_1, ref_2 = ts.symbols[:n_s], ts.symbols[n_s:]
    else:
        ref_1, ref_2 = ts.raw_chirp_1, ts.raw_chirp_2
    det_1 = detect_chirp(rx, ref_1, phi_1, n_s, block_count)
    det_2 = detect_chirp(rx, ref_2, phi_2, n_s, block_count,
                         block_offset=1)
    delta_t, delta_f = solve_offsets(det_1.delta_n, det_2.delta_n, phi_1,
                                     phi_2)
    mu_hat = round_half_away(delta_t) + det_1.b_hat * n_s
    gamma_hat = delta_f / n_s * r_s
    return SyncEstimate(mu_hat, gamma_hat, delta_t, delta_f, det_1, det_2,
                        det_1.b_hat == det_2.b_hat)


def cfo_range(phi_1: float, phi_2: float, delta_t: float, n_s: int,
              r_s: float) -> float:
    """Largest unaliased CFO magnitude for the given geometry, in Hz."""
    denom = np.sin(phi_2 - phi_1)
    if abs(denom) < 1e-12:
        raise SingularSystemError("chirp angles coincide modulo pi")
    num = (np.cos(phi_1) * (n_s / 2 - 1 - delta_t * np.cos(phi_2))
           - np.cos(phi_2) * (delta_t * np.cos(phi_1) - n_s / 2))
    return float(abs(num / denom) * r_s / n_s)
