"""Core value types carried through the processing pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

HALF_PI = np.pi / 2

# Angles closer than this (in radians) to a multiple of pi/2 are treated as
# exact integer-order transforms; the fractional kernel is singular at
# multiples of pi and ill-conditioned very close to them.
ANGLE_SNAP_TOL = 1e-6


class InvalidInputError(ValueError):
    """Raised when an operation receives input outside its contract."""


@dataclass(frozen=True)
class FrftAngle:
    """Rotation angle of the fractional Fourier transform.

    The angle ``phi`` (radians) and the dimensionless order ``alpha`` are two
    views of one value, related by ``phi = alpha * pi/2``.
    """

    phi: float

    @classmethod
    def from_phi(cls, phi: float) -> "FrftAngle":
        return cls(float(phi))

    @classmethod
    def from_alpha(cls, alpha: float) -> "FrftAngle":
        return cls(float(alpha) * HALF_PI)

    @property
    def alpha(self) -> float:
        return self.phi / HALF_PI

    @property
    def is_integer_order(self) -> bool:
        """True when the angle is (numerically) a multiple of pi/2."""
        return abs(self.phi - round(self.alpha) * HALF_PI) < ANGLE_SNAP_TOL


@dataclass(frozen=True)
class ComplexSignal:
    """A finite sequence of complex baseband samples with a sample rate."""

    samples: np.ndarray
    sample_rate_hz: float = 1.0
    _validated: bool = field(default=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        arr = np.ascontiguousarray(self.samples, dtype=np.complex128)
        object.__setattr__(self, "samples", arr)
        if arr.ndim != 1 or arr.size == 0:
            raise InvalidInputError("signal must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(arr)):
            raise InvalidInputError("signal contains non-finite samples")
        if not self.sample_rate_hz > 0:
            raise InvalidInputError("sample rate must be positive")

    def __len__(self) -> int:
        return len(self.samples)

    @property
    def energy(self) -> float:
        """Sum of squared sample magnitudes."""
        return float(np.sum(np.abs(self.samples) ** 2))

    def with_samples(self, samples: np.ndarray) -> "ComplexSignal":
        """New signal with the same sample rate."""
        return ComplexSignal(samples, self.sample_rate_hz)


def as_samples(x) -> np.ndarray:
    """Accept a ComplexSignal or array-like; return complex128 samples."""
    if isinstance(x, ComplexSignal):
        return x.samples
    return np.ascontiguousarray(x, dtype=np.complex128)
