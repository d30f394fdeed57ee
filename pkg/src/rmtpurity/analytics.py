"""Closed-form purity predictions for the strong-coupling regime.

Everything here assumes the package normalization: uniform level density on
``[-sqrt(3), sqrt(3)]``, mean spacing ``d = 2*sqrt(3)/N``, level variance one.
"""

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "TimeScales",
    "SpectralAverages",
    "f_uniform",
    "spectral_averages",
    "short_time_coefficient",
    "short_time_purity",
    "i_min_coe",
    "i_infinity",
    "weak_variance",
    "time_scales",
]

_SQRT3 = math.sqrt(3.0)


@dataclass(frozen=True)
class TimeScales:
    """Characteristic times of the purity evolution at dimension N."""

    inverse_spectrum_length: float
    first_minimum_time: float
    heisenberg_time: float
    partial_revival_time: float
    mean_spacing: float


@dataclass(frozen=True)
class SpectralAverages:
    """The five phase averages entering the purity sum, for a random spectrum."""

    s1: float
    s2: float
    s3: float
    s4: float
    s5: float


def f_uniform(t):
    """Fourier transform of the uniform level density: sin(sqrt(3) t)/(sqrt(3) t).

    Accepts scalars or arrays; the t = 0 limit is 1, handled by a short
    series branch below |sqrt(3) t| = 1e-4.
    """
    x = _SQRT3 * np.asarray(t, dtype=float)
    small = np.abs(x) < 1e-4
    safe = np.where(small, 1.0, x)
    out = np.where(small, 1.0 - x * x / 6.0, np.sin(safe) / safe)
    if np.isscalar(t) or np.ndim(t) == 0:
        return float(out)
    return out


def spectral_averages(t) -> SpectralAverages:
    """Phase averages S1..S5 for an uncorrelated (random) spectrum.

    S1 = f(t)^4, S2 = f(t)^2, S3 = f(2t) f(t)^2, S4 = 1, S5 = f(2t)^2.
    """
    f1 = f_uniform(t)
    f2 = f_uniform(np.multiply(t, 2.0))
    one = np.ones_like(f1) if isinstance(f1, np.ndarray) else 1.0
    return SpectralAverages(
        s1=f1**4,
        s2=f1**2,
        s3=f2 * f1**2,
        s4=one,
        s5=f2**2,
    )


def short_time_coefficient(n: int, m: int) -> float:
    """Quadratic decay coefficient at unit level variance.

    purity(t) ~ 1 - c * t^2 with c = 2 * (1 - (n+m+1)/(N+2)), N = n*m.
    """
    N = n * m
    return 2.0 * (1.0 - (n + m + 1) / (N + 2))


def short_time_purity(t, n: int, m: int):
    """Leading short-time expansion 1 - c t^2 (level variance one)."""
    out = 1.0 - short_time_coefficient(n, m) * np.asarray(t, dtype=float) ** 2
    if np.isscalar(t) or np.ndim(t) == 0:
        return float(out)
    return out


def i_min_coe(n: int, m: int) -> float:
    """Purity at the first minimum, from the circular-ensemble average.

    Exact rational in N = n*m; equals 1/n + 1/m to leading order and is
    exactly 1 whenever min(n, m) = 1.
    """
    N = n * m
    s = n + m
    num = s * N**2 + (3 * s + 2) * N - 2 * (s - 1)
    den = N * (N + 1) * (N + 3)
    return num / den


def i_infinity(n: int, m: int) -> float:
    """Long-time purity plateau for a randomized spectrum.

    Exact rational in N = n*m; exactly 1 whenever min(n, m) = 1, and
    slightly above `i_min_coe` otherwise.
    """
    N = n * m
    s = n + m
    num = s * N**3 + 3 * (4 * s + 3) * N**2 + (35 * s + 57) * N + 48
    den = (N + 1) * (N + 2) * (N + 4) * (N + 6)
    return num / den


def weak_variance(lam: float, N: int) -> float:
    """Ensemble-mean level variance of the unrescaled weak-coupling model.

    1/2 from each subsystem spectrum plus lambda^2 (N-1) from the coupling.
    """
    if lam < 0:
        raise ValueError("coupling strength must be >= 0")
    if N < 1:
        raise ValueError("dimension must be >= 1")
    return 1.0 + lam * lam * (N - 1)


def time_scales(N: int) -> TimeScales:
    """The four regime boundaries of the purity evolution at dimension N."""
    if N < 1:
        raise ValueError("dimension must be >= 1")
    d = 2.0 * _SQRT3 / N
    return TimeScales(
        inverse_spectrum_length=1.0 / (2.0 * _SQRT3),
        first_minimum_time=math.pi / _SQRT3,
        heisenberg_time=N * math.pi / _SQRT3,
        partial_revival_time=N * math.pi / (2.0 * _SQRT3),
        mean_spacing=d,
    )
