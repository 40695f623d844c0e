"""Hot numeric kernels with numba acceleration and pure-numpy fallbacks.

The numba path is used when numba imports successfully and the environment
variable ``FRFTSYNC_NO_NUMBA`` is unset/empty; setting it to any non-empty
value forces the numpy implementations.  ``benchmarks/bench_kernels.py``
compares the two paths.
"""

from __future__ import annotations

import os

import numpy as np

_DISABLE = bool(os.environ.get("FRFTSYNC_NO_NUMBA"))

try:  # pragma: no cover - exercised indirectly
    if _DISABLE:
        raise ImportError
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False


def numba_enabled() -> bool:
    """True when the JIT-compiled kernels are active."""
    return HAVE_NUMBA


# ---------------------------------------------------------------------------
# Direct fractional-kernel quadrature (the O(N^2) oracle inner loop).
#
# Computes F[m] = amp * sum_n exp(j*pi*(cot*(u_m^2 + t_n^2) - 2*csc*u_m*t_n)) * g[n]
# with t_n = (n - N) / (2*sqrt(N)) on the 2x oversampled input grid and
# u_m = (m - N/2) / sqrt(N) on the output grid.


def _quadrature_numpy(g: np.ndarray, n_out: int, cot: float, csc: float,
                      amp: complex) -> np.ndarray:
    n = len(g)
    root = np.sqrt(n_out)
    t = (np.arange(n) - n_out) / (2.0 * root)
    u = (np.arange(n_out) - n_out // 2) / root
    out = np.empty(n_out, np.complex128)
    gt = g * np.exp(1j * np.pi * cot * t * t)
    # blockwise to bound the size of the phase matrix
    step = max(1, (1 << 22) // n)
    for lo in range(0, n_out, step):
        uu = u[lo:lo + step]
        phase = np.exp(1j * np.pi * (cot * uu[:, None] ** 2
                                     - 2.0 * csc * np.outer(uu, t)))
        out[lo:lo + step] = phase @ gt
    return amp * out


if HAVE_NUMBA:

    @njit(cache=True)
    def _quadrature_jit(g, n_out, cot, csc, amp):  # pragma: no cover - jit
        n = len(g)
        root = np.sqrt(n_out)
        out = np.empty(n_out, np.complex128)
        for m in range(n_out):
            u = (m - n_out // 2) / root
            acc = 0.0 + 0.0j
            for k in range(n):
                t = (k - n_out) / (2.0 * root)
                ph = np.pi * (cot * (u * u + t * t) - 2.0 * csc * u * t)
                acc += g[k] * (np.cos(ph) + 1j * np.sin(ph))
            out[m] = acc
        return amp * out

    def fractional_quadrature(g, n_out, cot, csc, amp):
        return _quadrature_jit(np.ascontiguousarray(g), n_out, cot, csc,
                               complex(amp))
else:
    def fractional_quadrature(g, n_out, cot, csc, amp):
        return _quadrature_numpy(g, n_out, cot, csc, complex(amp))


# ---------------------------------------------------------------------------
# Schmidl-Cox sliding half-symbol correlation metric.
#
# M(d) = |P(d)|^2 / R(d)^2 with
#   P(d) = sum_{m<L} conj(r[d+m]) * r[d+m+L]
#   R(d) = sum_{m<L} |r[d+m+L]|^2


def _sc_metric_numpy(r: np.ndarray, half_len: int) -> np.ndarray:
    L = half_len
    prod = np.conj(r[:-L]) * r[L:]
    en = np.abs(r[L:]) ** 2
    cp = np.concatenate(([0.0 + 0.0j], np.cumsum(prod)))
    ce = np.concatenate(([0.0], np.cumsum(en)))
    d = np.arange(len(r) - 2 * L + 1)
    p = cp[d + L] - cp[d]
    q = ce[d + L] - ce[d]
    return np.abs(p) ** 2 / np.maximum(q, 1e-300) ** 2


if HAVE_NUMBA:

    @njit(cache=True)
    def _sc_metric_jit(r, half_len):  # pragma: no cover - jit
        L = half_len
        n_d = len(r) - 2 * L + 1
        out = np.empty(n_d)
        p = 0.0 + 0.0j
        q = 0.0
        for m in range(L):
            p += np.conj(r[m]) * r[m + L]
            q += abs(r[m + L]) ** 2
        for d in range(n_d):
            denom = q * q
            out[d] = (p.real * p.real + p.imag * p.imag) / max(denom, 1e-300)
            if d + 1 < n_d:
                p += np.conj(r[d + L]) * r[d + 2 * L] - np.conj(r[d]) * r[d + L]
                q += abs(r[d + 2 * L]) ** 2 - abs(r[d + L]) ** 2
        return out

    def schmidl_cox_metric(r, half_len):
        return _sc_metric_jit(np.ascontiguousarray(r), half_len)
else:
    def schmidl_cox_metric(r, half_len):
        return _sc_metric_numpy(r, half_len)
