"""Discrete-time baseband impairment channel.

Replaces an optical testbed at desk scale: frame placement, carrier
frequency offset, OSNR-calibrated additive noise, Wiener laser phase noise,
and an optional 2-samples/symbol RRC shaping / matched-filter path.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, replace

import numpy as np

from .chirp import TrainingSequence, slice_to_qam4
from .signal import ComplexSignal, InvalidInputError, as_samples

_QAM16_LEVELS = np.array([-3.0, -1.0, 1.0, 3.0]) / np.sqrt(10.0)


@dataclass(frozen=True)
class ChannelConfig:
    """All knobs of one simulated transmission."""

    frame_offset: int = 100          # symbols of guard before the frame
    cfo_hz: float = 3e9
    osnr_db: float | None = 10.0     # None = noiseless
    linewidth_hz: float = 0.0        # combined Tx + LO linewidth
    r_s: float = 32e9                # symbol rate
    b_ref_hz: float = 12.5e9         # OSNR reference bandwidth
    n_pol: int = 2                   # noise-calibration convention
    rrc_enabled: bool = False
    rrc_taps: int = 73
    rrc_rolloff: float = 0.13
    guard_style: str = "random"      # "random" payload-like symbols or "zeros"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.frame_offset < 0:
            raise InvalidInputError("frame_offset must be >= 0")
        if not (self.r_s > 0 and self.b_ref_hz > 0):
            raise InvalidInputError("rates must be positive")
        if self.n_pol not in (1, 2):
            raise InvalidInputError("n_pol must be 1 or 2")
        if self.linewidth_hz < 0:
            raise InvalidInputError("linewidth must be >= 0")
        if not 0 < self.rrc_rolloff < 1:
            raise InvalidInputError("rrc_rolloff must be in (0, 1)")
        if self.rrc_taps % 2 == 0:
            raise InvalidInputError("rrc_taps must be odd")
        if self.guard_style not in ("random", "zeros"):
            raise InvalidInputError("guard_style must be 'random' or 'zeros'")


def osnr_to_snr(osnr_db: float, r_s: float, b_ref: float,
                n_pol: int) -> float:
    """Linear per-symbol, per-polarization Es/N0 for a given OSNR.

    Convention: OSNR_linear * 2 * b_ref / (n_pol * r_s).
    """
    return 10.0 ** (osnr_db / 10.0) * 2.0 * b_ref / (n_pol * r_s)


def random_symbols(n: int, payload_format: str, rng) -> np.ndarray:
    """Unit-average-energy random payload symbols."""
    if payload_format == "qam4":
        return slice_to_qam4(rng.normal(size=n) + 1j * rng.normal(size=n))
    if payload_format == "qam16":
        re = rng.choice(_QAM16_LEVELS, size=n)
        im = rng.choice(_QAM16_LEVELS, size=n)
        return re + 1j * im
    raise InvalidInputError(f"unknown payload format {payload_format!r}")


def build_frame(ts: TrainingSequence, payload_len: int,
                payload_format: str = "qam16", seed: int = 0) -> ComplexSignal:
    """Training sequence followed by random payload symbols."""
    if payload_len < 0:
        raise InvalidInputError("payload_len must be >= 0")
    rng = np.random.default_rng(seed)
    payload = random_symbols(payload_len, payload_format, rng)
    rate = 1.0 / ts.spec_1.t
    return ComplexSignal(np.concatenate([ts.symbols, payload]), rate)


def _guard(cfg: ChannelConfig, n: int, rng) -> np.ndarray:
    if cfg.guard_style == "zeros":
        return np.zeros(n, np.complex128)
    return random_symbols(n, "qam4", rng)


def apply_impairments(x: ComplexSignal, cfg: ChannelConfig, sps: int = 1,
                      prepend_guard: bool = True) -> ComplexSignal:
    """Guard prepend + CFO rotation + phase noise + calibrated AWGN.

    ``sps`` is the samples-per-symbol of ``x``; the per-sample period is
    1/(r_s*sps).  Noise variance is Es_symbol/SNR, i.e. measured sample
    power times sps over the linear SNR, so the post-matched-filter symbol
    SNR matches :func:`osnr_to_snr` on both the 1-sps and 2-sps paths.
    Deterministic for a fixed config.
    """
    rng = np.random.default_rng(cfg.seed)
    samples = x.samples
    if prepend_guard and cfg.frame_offset:
        samples = np.concatenate([_guard(cfg, cfg.frame_offset * sps, rng),
                                  samples])
    t_samp = 1.0 / (cfg.r_s * sps)
    n = np.arange(len(samples))
    out = samples * np.exp(2j * np.pi * cfg.cfo_hz * n * t_samp)
    if cfg.linewidth_hz > 0:
        var = 2.0 * np.pi * cfg.linewidth_hz * t_samp
        phase = np.cumsum(rng.normal(0.0, np.sqrt(var), len(out)))
        out = out * np.exp(1j * phase)
    if cfg.osnr_db is not None:
        snr = osnr_to_snr(cfg.osnr_db, cfg.r_s, cfg.b_ref_hz, cfg.n_pol)
        es = np.mean(np.abs(out) ** 2) * sps
        sigma = np.sqrt(es / snr / 2.0)
        out = out + sigma * (rng.normal(size=len(out))
                             + 1j * rng.normal(size=len(out)))
    return ComplexSignal(out, x.sample_rate_hz * (1 if prepend_guard else 1))


def rrc_impulse_response(num_taps: int, rolloff: float,
                         sps: int = 2) -> np.ndarray:
    """Energy-normalized root raised-cosine filter taps."""
    if num_taps % 2 == 0:
        raise InvalidInputError("tap count must be odd")
    t = (np.arange(num_taps) - (num_taps - 1) / 2) / sps
    h = np.empty(num_taps)
    for i, ti in enumerate(t):
        if abs(ti) < 1e-12:
            h[i] = 1.0 + rolloff * (4.0 / np.pi - 1.0)
        elif abs(abs(ti) - 1.0 / (4.0 * rolloff)) < 1e-12:
            h[i] = (rolloff / np.sqrt(2.0)
                    * ((1 + 2 / np.pi) * np.sin(np.pi / (4 * rolloff))
                       + (1 - 2 / np.pi) * np.cos(np.pi / (4 * rolloff))))
        else:
            num = (np.sin(np.pi * ti * (1 - rolloff))
                   + 4 * rolloff * ti * np.cos(np.pi * ti * (1 + rolloff)))
            den = np.pi * ti * (1.0 - (4.0 * rolloff * ti) ** 2)
            h[i] = num / den
    return h / np.sqrt(np.sum(h * h))


def rrc_shape(x: ComplexSignal, num_taps: int = 73,
              rolloff: float = 0.13) -> ComplexSignal:
    """Upsample symbols to 2 sps and pulse-shape; filter delay removed."""
    h = rrc_impulse_response(num_taps, rolloff)
    up = np.zeros(2 * len(x.samples), np.complex128)
    up[::2] = x.samples
    full = np.convolve(up, h)
    half = (num_taps - 1) // 2
    return ComplexSignal(full[half:half + len(up)], 2 * x.sample_rate_hz)


def matched_filter_downsample(y: ComplexSignal, num_taps: int = 73,
                              rolloff: float = 0.13) -> ComplexSignal:
    """Matched RRC filter followed by decimation back to 1 sps."""
    h = rrc_impulse_response(num_taps, rolloff)
    full = np.convolve(y.samples, h)
    half = (num_taps - 1) // 2
    aligned = full[half:half + len(y.samples)]
    return ComplexSignal(aligned[::2], y.sample_rate_hz / 2)


# --- waveform import/export -------------------------------------------------

def write_waveform_csv(x: ComplexSignal, path) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "real", "imag"])
        for i, s in enumerate(x.samples):
            writer.writerow([i, repr(float(s.real)), repr(float(s.imag))])


def read_waveform_csv(path, sample_rate_hz: float = 1.0) -> ComplexSignal:
    re, im = [], []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        next(reader)
        for row in reader:
            re.append(float(row[1]))
            im.append(float(row[2]))
    return ComplexSignal(np.array(re) + 1j * np.array(im), sample_rate_hz)


def write_waveform_raw(x: ComplexSignal, path) -> None:
    """Interleaved little-endian float64 (re, im) pairs."""
    inter = np.empty(2 * len(x.samples))
    inter[::2] = x.samples.real
    inter[1::2] = x.samples.imag
    inter.astype("<f8").tofile(path)


def read_waveform_raw(path, sample_rate_hz: float = 1.0) -> ComplexSignal:
    inter = np.fromfile(path, dtype="<f8")
    if len(inter) % 2:
        raise InvalidInputError("raw waveform file has odd float count")
    return ComplexSignal(inter[::2] + 1j * inter[1::2], sample_rate_hz)
