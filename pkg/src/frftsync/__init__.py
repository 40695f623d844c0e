"""FRFT-based joint frame and carrier-frequency synchronization.

A training sequence of two sliced linear chirps is located in the received
stream by fractional-domain correlation; the two peak shifts are inverted
into a joint (frame offset, CFO) estimate.  The package also ships an
impairment channel, two conventional baselines, and a Monte-Carlo harness
with a CLI (``frftsync trial|sweep|range``).
"""

from ._kernels import numba_enabled
from .baselines import (RepeatedTs, ScTimingResult, build_repeated_ts,
                        correlation_cfo, schmidl_cox_timing)
from .channel import (ChannelConfig, apply_impairments, build_frame,
                      matched_filter_downsample, osnr_to_snr,
                      read_waveform_csv, read_waveform_raw,
                      rrc_impulse_response, rrc_shape, write_waveform_csv,
                      write_waveform_raw)
from .chirp import (ChirpSpec, TrainingSequence, build_training_sequence,
                    generate_chirp, optimal_angle, rate_for_angle,
                    slice_to_qam4, training_sequence_to_csv)
from .dfrft import (centered_dft, centered_idft, fractional_correlation,
                    frft, frft_array, frft_direct, frft_direct_array)
from .harness import (SweepSpec, TrialReport, TsGeometry, aggregate,
                      report_range, rows_to_csv, run_sweep, run_trial)
from .signal import ComplexSignal, FrftAngle, InvalidInputError
from .sync import (ChirpDetection, SingularSystemError, SyncEstimate,
                   cfo_range, detect_chirp, estimate, solve_offsets)

__version__ = "0.1.0"

__all__ = [
    "ChannelConfig", "ChirpDetection", "ChirpSpec", "ComplexSignal",
    "FrftAngle", "InvalidInputError", "RepeatedTs", "ScTimingResult",
    "SingularSystemError", "SweepSpec", "SyncEstimate", "TrainingSequence",
    "TrialReport", "TsGeometry", "aggregate", "apply_impairments",
    "build_frame", "build_repeated_ts", "build_training_sequence",
    "centered_dft", "centered_idft", "cfo_range", "correlation_cfo",
    "detect_chirp", "estimate", "fractional_correlation", "frft",
    "frft_array", "frft_direct", "frft_direct_array", "generate_chirp",
    "matched_filter_downsample", "numba_enabled", "optimal_angle",
    "osnr_to_snr", "rate_for_angle", "read_waveform_csv",
    "read_waveform_raw", "report_range", "rows_to_csv",
    "rrc_impulse_response", "rrc_shape", "run_sweep", "run_trial",
    "schmidl_cox_timing", "slice_to_qam4", "solve_offsets",
    "training_sequence_to_csv", "write_waveform_csv", "write_waveform_raw",
]
