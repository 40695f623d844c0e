"""Shared fixtures and the acceptance-summary reporting hook."""

import numpy as np
import pytest

# ---------------------------------------------------------------------------
# Acceptance summary: each acceptance test records one line here, and the
# terminal summary prints them all so a full run always shows the scoreboard.

_ACCEPTANCE: list[tuple[int, str, bool, str]] = []


def record_criterion(num: int, name: str, ok: bool, detail: str = "") -> None:
    _ACCEPTANCE.append((num, name, bool(ok), detail))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num, name, ok, detail in sorted(_ACCEPTANCE):
        status = "PASS" if ok else "FAIL"
        line = f"[{num:2d}] {status}  {name}"
        if detail:
            line += f"  ({detail})"
        terminalreporter.write_line(line)


# ---------------------------------------------------------------------------
# Signal helpers.  Transform-accuracy tests use time-frequency concentrated
# signals: the chirp-decomposition algorithm is only near-unitary on inputs
# whose energy stays inside the centered grid's time-frequency extent, so
# white-noise inputs are out of scope for those properties.


def gaussian_signal(n: int, width: float = 1.0) -> np.ndarray:
    """exp(-pi*u^2/width^2) on the centered grid; FRFT-invariant at width 1."""
    u = (np.arange(n) - n // 2) / np.sqrt(n)
    return np.exp(-np.pi * (u / width) ** 2).astype(np.complex128)


def concentrated_signal(n: int, seed: int = 0) -> np.ndarray:
    """Random smooth signal under a Gaussian envelope (concentrated class)."""
    rng = np.random.default_rng(seed)
    x = np.zeros(n, np.complex128)
    # a handful of low-frequency components so the spectrum is concentrated too
    k = np.arange(n) - n // 2
    for _ in range(6):
        f = rng.uniform(-0.05, 0.05)
        x += (rng.normal() + 1j * rng.normal()) * np.exp(2j * np.pi * f * k)
    return x * gaussian_signal(n, 0.8).real


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
