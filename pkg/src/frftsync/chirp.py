"""Training-sequence design: chirps, the optimal-angle relation, 4-QAM slicing."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .signal import ComplexSignal, InvalidInputError, as_samples

_SQRT2 = np.sqrt(2.0)
_DEGENERATE_TOL = 1e-9


def optimal_angle(beta: float, n_s: int, t: float) -> float:
    """Transform angle at which a chirp of rate 2*beta collapses to an impulse.

    Returns -atan(1 / (2*beta*n_s*t**2)), in (-pi/2, 0) or (0, pi/2).
    """
    if beta == 0:
        raise InvalidInputError("chirp-rate parameter must be nonzero")
    if n_s < 8:
        raise InvalidInputError("n_s must be >= 8")
    if not t > 0:
        raise InvalidInputError("sampling period must be positive")
    return float(-np.arctan(1.0 / (2.0 * beta * n_s * t * t)))


def rate_for_angle(phi_opt: float, n_s: int, t: float) -> float:
    """Inverse of :func:`optimal_angle`: the beta that makes phi_opt optimal."""
    if (abs(phi_opt) < _DEGENERATE_TOL
            or abs(abs(phi_opt) - np.pi / 2) < _DEGENERATE_TOL):
        raise InvalidInputError("degenerate angle (0 or +-pi/2)")
    return float(-1.0 / (2.0 * n_s * t * t * np.tan(phi_opt)))


@dataclass(frozen=True)
class ChirpSpec:
    """Design parameters of one linear chirp.

    ``phi_opt`` and ``beta`` are tied together by the optimal-angle relation;
    use the constructors to keep them consistent.
    """

    n_s: int
    phi_opt: float
    beta: float
    t: float

    def __post_init__(self) -> None:
        if self.n_s < 8 or self.n_s % 2:
            raise InvalidInputError("n_s must be an even integer >= 8")
        if not self.t > 0:
            raise InvalidInputError("sampling period must be positive")
        expect = optimal_angle(self.beta, self.n_s, self.t)
        if abs(expect - self.phi_opt) > 1e-9:
            raise InvalidInputError("phi_opt and beta are inconsistent")

    @classmethod
    def from_angle(cls, phi_opt: float, n_s: int, t: float) -> "ChirpSpec":
        return cls(n_s, float(phi_opt), rate_for_angle(phi_opt, n_s, t), t)

    @classmethod
    def from_rate(cls, beta: float, n_s: int, t: float) -> "ChirpSpec":
        return cls(n_s, optimal_angle(beta, n_s, t), float(beta), t)


def generate_chirp(spec: ChirpSpec) -> ComplexSignal:
    """Unit-magnitude linear chirp with quadratic phase about the center sample.

    Sample n is exp(j*pi*2*beta*(n - n_s/2)**2 * t**2), so the zero-offset
    transform-domain peak lands on the center bin by construction.
    """
    n = np.arange(spec.n_s) - spec.n_s // 2
    phase = np.pi * 2.0 * spec.beta * spec.t * spec.t * n.astype(np.float64) ** 2
    return ComplexSignal(np.exp(1j * phase), 1.0 / spec.t)


def slice_to_qam4(x) -> np.ndarray:
    """Quantize samples to the unit-energy 4-QAM alphabet {(+-1 +-j)/sqrt(2)}.

    A zero real or imaginary part is tie-broken to +1.
    """
    arr = as_samples(x)
    re = np.where(arr.real >= 0, 1.0, -1.0)
    im = np.where(arr.imag >= 0, 1.0, -1.0)
    return (re + 1j * im) / _SQRT2


@dataclass(frozen=True)
class TrainingSequence:
    """Two sliced chirps back to back, plus their raw references and specs."""

    symbols: np.ndarray
    raw_chirp_1: ComplexSignal
    raw_chirp_2: ComplexSignal
    spec_1: ChirpSpec
    spec_2: ChirpSpec

    @property
    def n_s(self) -> int:
        return self.spec_1.n_s

    def __len__(self) -> int:
        return len(self.symbols)


def build_training_sequence(phi_1: float, phi_2: float, n_s: int,
                            t: float) -> TrainingSequence:
    """Assemble the two-chirp training sequence for the given angle pair."""
    if phi_1 == phi_2:
        raise InvalidInputError("the two chirp angles must differ")
    spec_1 = ChirpSpec.from_angle(phi_1, n_s, t)
    spec_2 = ChirpSpec.from_angle(phi_2, n_s, t)
    raw_1 = generate_chirp(spec_1)
    raw_2 = generate_chirp(spec_2)
    symbols = np.concatenate([slice_to_qam4(raw_1), slice_to_qam4(raw_2)])
    return TrainingSequence(symbols, raw_1, raw_2, spec_1, spec_2)


def training_sequence_to_csv(ts: TrainingSequence, path) -> None:
    """Write the sliced symbols as (index, real, imag) rows."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["index", "real", "imag"])
        for i, s in enumerate(ts.symbols):
            writer.writerow([i, repr(float(s.real)), repr(float(s.imag))])
