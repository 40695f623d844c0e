"""Discrete fractional Fourier transform of arbitrary real order.

Convention: length-N signals live on the centered dimensionless grid, where
sample k represents the coordinate (k - N/2) / sqrt(N).  Under this grid the
order-1 transform is the centered unitary DFT, and a time shift of dt samples
(or a modulation of df cycles across the record) moves the magnitude peak of
an order-phi transform by dt*cos(phi) (resp. df*sin(phi)) output bins.

Two independent routes are provided:

* ``frft``        -- O(N log N) chirp-multiply / chirp-convolve / chirp-multiply
                     decomposition, with 2x band-limited interpolation and
                     order reduction into [0.5, 1.5].
* ``frft_direct`` -- O(N^2) quadrature of the sampled kernel on the same grid,
                     used as the accuracy oracle for ``frft``.

Both special-case integer orders exactly (identity, centered DFT, coordinate
reversal, centered inverse DFT).
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np
from scipy.fft import next_fast_len

from . import _kernels
from .signal import (ANGLE_SNAP_TOL, HALF_PI, ComplexSignal, FrftAngle,
                     InvalidInputError, as_samples)

MIN_LENGTH = 8


def _validate(x: np.ndarray) -> None:
    if len(x) < MIN_LENGTH:
        raise InvalidInputError(f"signal length {len(x)} < {MIN_LENGTH}")
    if not np.all(np.isfinite(x)):
        raise InvalidInputError("signal contains non-finite samples")


def centered_dft(x: np.ndarray) -> np.ndarray:
    """Unitary DFT with the zero coordinate at index N//2 in both domains."""
    n = len(x)
    return np.fft.fftshift(np.fft.fft(np.fft.ifftshift(x))) / np.sqrt(n)


def centered_idft(x: np.ndarray) -> np.ndarray:
    """Inverse of :func:`centered_dft`."""
    n = len(x)
    return np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(x))) * np.sqrt(n)


def _reverse(x: np.ndarray) -> np.ndarray:
    """Coordinate reversal on the centered grid (the order-2 transform)."""
    return np.roll(x[::-1], 1)


def _integer_branch(x: np.ndarray, k: int) -> np.ndarray:
    k %= 4
    if k == 0:
        return x.copy()
    if k == 1:
        return centered_dft(x)
    if k == 2:
        return _reverse(x)
    return centered_idft(x)


def _reduce_order(x: np.ndarray, a: float) -> tuple[np.ndarray, float]:
    """Map order a (mod 4) into [0.5, 1.5] using exact integer transforms."""
    a = float(np.remainder(a, 4.0))
    if a > 2.0:
        a -= 2.0
        x = _reverse(x)
    if a > 1.5:
        a -= 1.0
        x = centered_dft(x)
    elif a < 0.5:
        a += 1.0
        x = centered_idft(x)
    return x, a


def _upsample2_fft(x: np.ndarray) -> np.ndarray:
    """2x band-limited interpolation via centered spectral zero padding."""
    n = len(x)
    spec = np.fft.fftshift(np.fft.fft(np.fft.ifftshift(x)))
    padded = np.zeros(2 * n, np.complex128)
    padded[n // 2: n // 2 + n] = spec
    return np.fft.fftshift(np.fft.ifft(np.fft.ifftshift(padded))) * 2.0


@lru_cache(maxsize=64)
def _core_tables(n: int, a: float):
    """Precomputed chirp factors and convolution-kernel FFT for the fast core."""
    phi = a * HALF_PI
    cot = np.cos(phi) / np.sin(phi)
    csc = 1.0 / np.sin(phi)
    k = np.arange(-n, n)
    t2 = k.astype(np.float64) ** 2 / (4.0 * n)
    pre = np.exp(1j * np.pi * (cot - csc) * t2)
    kk = np.arange(-2 * n, 2 * n + 1)
    ker = np.exp(1j * np.pi * csc * kk.astype(np.float64) ** 2 / (4.0 * n))
    nfft = next_fast_len(len(ker) + 2 * n - 1)
    ker_fft = np.fft.fft(ker, nfft)
    amp = np.sqrt(1.0 - 1j * cot) / (2.0 * np.sqrt(n))
    pre.setflags(write=False)
    return pre, ker_fft, nfft, amp


def _frft_core(x: np.ndarray, a: float) -> np.ndarray:
    """Fast decomposition for 0.5 <= a <= 1.5, even-length input."""
    n = len(x)
    pre, ker_fft, nfft, amp = _core_tables(n, round(a, 15))
    g = pre * _upsample2_fft(x)
    conv = np.fft.ifft(np.fft.fft(g, nfft) * ker_fft)
    # kernel index kk and signal index k are both offset; coordinate m-N of
    # output sample m corresponds to full-convolution index m + 2N
    out = pre * conv[2 * n: 4 * n]
    return amp * out[::2]


def frft_array(x: np.ndarray, alpha: float) -> np.ndarray:
    """Fast FRFT on raw samples; ``alpha`` is the dimensionless order."""
    x = np.asarray(x, np.complex128)
    _validate(x)
    if abs(alpha * HALF_PI - round(alpha) * HALF_PI) < ANGLE_SNAP_TOL:
        return _integer_branch(x, int(round(alpha)))
    if len(x) % 2:
        raise InvalidInputError("non-integer orders require even length")
    y, a = _reduce_order(x, alpha)
    return _frft_core(y, a)


def frft(x: ComplexSignal, angle: FrftAngle) -> ComplexSignal:
    """Fractional Fourier transform of ``x`` at the given angle.

    Energy is preserved to ~1e-3 relative for signals concentrated inside
    the time-frequency extent of the grid.
    """
    return x.with_samples(frft_array(x.samples, angle.alpha))


def _dirichlet_upsample2(x: np.ndarray) -> np.ndarray:
    """2x periodic-sinc interpolation by explicit convolution weights."""
    n = len(x)
    out = np.empty(2 * n, np.complex128)
    out[::2] = x
    tau = np.arange(n)[:, None] + 0.5 - np.arange(n)[None, :]
    w = np.sin(np.pi * tau) / (n * np.tan(np.pi * tau / n))
    out[1::2] = w @ x
    return out


def frft_direct_array(x: np.ndarray, alpha: float) -> np.ndarray:
    """Direct kernel-quadrature FRFT (O(N^2) oracle) on raw samples."""
    x = np.asarray(x, np.complex128)
    _validate(x)
    if abs(alpha * HALF_PI - round(alpha) * HALF_PI) < ANGLE_SNAP_TOL:
        return _integer_branch(x, int(round(alpha)))
    if len(x) % 2:
        raise InvalidInputError("non-integer orders require even length")
    y, a = _reduce_order(x, alpha)
    n = len(y)
    phi = a * HALF_PI
    cot = np.cos(phi) / np.sin(phi)
    csc = 1.0 / np.sin(phi)
    g = _dirichlet_upsample2(y)
    amp = np.sqrt(1.0 - 1j * cot) / (2.0 * np.sqrt(n))
    return _kernels.fractional_quadrature(g, n, cot, csc, amp)


def frft_direct(x: ComplexSignal, angle: FrftAngle) -> ComplexSignal:
    """Oracle FRFT by direct summation of the sampled transform kernel.

    Intended for N <= 2048; agrees with :func:`frft` to ~1e-2 relative L2
    or better on concentrated signals.
    """
    return x.with_samples(frft_direct_array(x.samples, angle.alpha))


def fractional_correlation_arrays(block: np.ndarray,
                                  reference_spectrum: np.ndarray,
                                  alpha_prime: float) -> np.ndarray:
    """Detection metric against a precomputed reference FRFT spectrum."""
    spec = frft_array(block, alpha_prime) * np.conj(reference_spectrum)
    return np.abs(centered_idft(spec)) ** 2


def fractional_correlation(block: ComplexSignal, reference: ComplexSignal,
                           phi_opt: FrftAngle) -> np.ndarray:
    """Fractional cross-correlation magnitude-squared of block vs reference.

    Both inputs are transformed at phi_opt + pi/2, multiplied (reference
    conjugated) and passed through an exact centered inverse DFT.  For a
    reference chirp matched to phi_opt the result is an impulse whose
    position encodes the block's time/frequency offset.
    """
    if len(block) != len(reference):
        raise InvalidInputError("block and reference lengths differ")
    a_prime = phi_opt.alpha + 1.0
    ref_spec = frft_array(reference.samples, a_prime)
    return fractional_correlation_arrays(block.samples, ref_spec, a_prime)
