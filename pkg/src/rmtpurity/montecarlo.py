"""Seeded, reproducible, parallel ensemble averaging of purity curves.

Determinism contract: the ensemble is processed in fixed chunks of
realizations (size `CHUNK_SIZE`, independent of the worker count).  Within a
chunk the per-time sums are accumulated in realization order with Kahan
compensation; chunk partials are then combined in chunk order, again
compensated.  Workers only decide *where* a chunk is computed, never in what
order its contributions are merged, so the result is bit-identical for any
number of workers.
"""

import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .backend import purity_curve, purity_of_amplitudes
from .dynamics import basis_product_state, random_product_state, tensor
from .ensembles import sample_coe, sample_haar_orthogonal
from .model import (
    Dimensions,
    SpectralDecomposition,
    StrongCouplingSpec,
    WeakCouplingSpec,
    build_strong,
    build_weak,
)
from .streams import RngStream

__all__ = [
    "BasisProduct",
    "RandomProduct",
    "ExperimentConfig",
    "CurveStats",
    "run_experiment",
    "coe_min_purity_mc",
    "stationary_purity_mc",
    "CHUNK_SIZE",
]

#: Realizations per reduction chunk.  Fixed: changing it changes the
#: floating-point reduction order and therefore the last bits of the output.
CHUNK_SIZE = 256


@dataclass(frozen=True)
class BasisProduct:
    """Start every realization from the product basis state |i, mu>."""

    i: int = 0
    mu: int = 0


@dataclass(frozen=True)
class RandomProduct:
    """Draw a fresh random product state per realization."""


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of one ensemble-averaged purity experiment."""

    model: StrongCouplingSpec | WeakCouplingSpec
    time_grid: np.ndarray
    ensemble_size: int
    master_seed: int
    policy: BasisProduct | RandomProduct = field(default_factory=RandomProduct)
    record_realizations: int = 1

    def __post_init__(self):
        grid = np.asarray(self.time_grid, dtype=float)
        object.__setattr__(self, "time_grid", grid)
        if grid.ndim != 1 or grid.size == 0:
            raise ValueError("time grid must be a non-empty 1-d array")
        if np.any(np.diff(grid) <= 0):
            raise ValueError("time grid must be strictly increasing")
        if grid[0] < 0:
            raise ValueError("times must be >= 0")
        if self.ensemble_size < 1:
            raise ValueError("ensemble size must be >= 1")
        if self.master_seed < 0:
            raise ValueError("master seed must be >= 0")
        if self.record_realizations < 0:
            raise ValueError("record_realizations must be >= 0")
        if isinstance(self.policy, BasisProduct):
            self.model.dims.flat_index(self.policy.i, self.policy.mu)


@dataclass(frozen=True)
class CurveStats:
    """Ensemble mean, standard deviation, and retained trajectories."""

    times: np.ndarray
    mean: np.ndarray
    std: np.ndarray
    count: int
    trajectories: np.ndarray  # (record_realizations, len(times))


def _build_model(config: ExperimentConfig,
                 rng: np.random.Generator) -> SpectralDecomposition:
    if isinstance(config.model, StrongCouplingSpec):
        return build_strong(config.model, rng)
    return build_weak(config.model, rng)


def _initial_state(config: ExperimentConfig,
                   rng: np.random.Generator) -> np.ndarray:
    dims = config.model.dims
    if isinstance(config.policy, BasisProduct):
        p = basis_product_state(dims, config.policy.i, config.policy.mu)
    else:
        p = random_product_state(dims, rng)
    return tensor(p).amplitudes


def _realization_curve(config: ExperimentConfig, r: int) -> np.ndarray:
    rng = RngStream(config.master_seed, r).generator
    decomp = _build_model(config, rng)
    psi0 = _initial_state(config, rng)
    dims = config.model.dims
    return purity_curve(decomp.energies, decomp.eigenvectors, psi0,
                        config.time_grid, dims.n, dims.m)


def _kahan_add(total, comp, x):
    """One compensated-summation step; works elementwise on arrays."""
    y = x - comp
    t = total + y
    comp = (t - total) - y
    return t, comp


def _chunk_stats(config: ExperimentConfig, shift: np.ndarray, start: int,
                 stop: int):
    """Accumulate one chunk of realizations in index order.

    Sums are taken of ``curve - shift`` (the curve of realization 0), which
    keeps the variance free of cancellation even where all realizations
    coincide to machine precision (exact revivals).
    """
    T = config.time_grid.size
    s = np.zeros(T)
    sc = np.zeros(T)
    q = np.zeros(T)
    qc = np.zeros(T)
    record = min(config.record_realizations, config.ensemble_size)
    trajectories = []
    for r in range(start, stop):
        curve = _realization_curve(config, r)
        if r < record:
            trajectories.append((r, curve))
        dev = curve - shift
        s, sc = _kahan_add(s, sc, dev)
        q, qc = _kahan_add(q, qc, dev * dev)
    return s, sc, q, qc, trajectories


def run_experiment(config: ExperimentConfig,
                   workers: int | None = None) -> CurveStats:
    """Average the purity over `config.ensemble_size` realizations.

    Realization r draws its model and (for the random policy) its initial
    state from ``RngStream(master_seed, r)``, so the ensemble is fully
    reproducible.  `workers` controls parallel execution only; the returned
    statistics are bit-identical for every worker count.

    Standard deviations use the M-1 denominator (0 when M = 1).
    """
    M = config.ensemble_size
    chunks = [(start, min(start + CHUNK_SIZE, M))
              for start in range(0, M, CHUNK_SIZE)]
    shift = _realization_curve(config, 0)

    if workers is None:
        workers = os.cpu_count() or 1
    workers = max(1, min(workers, len(chunks)))

    if workers == 1:
        partials = [_chunk_stats(config, shift, a, b) for a, b in chunks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(_chunk_call,
                                     [(config, shift, a, b)
                                      for a, b in chunks]))

    T = config.time_grid.size
    s = np.zeros(T)
    sc = np.zeros(T)
    q = np.zeros(T)
    qc = np.zeros(T)
    trajectories = [None] * min(config.record_realizations, M)
    for cs, csc, cq, cqc, ctraj in partials:
        s, sc = _kahan_add(s, sc, cs)
        s, sc = _kahan_add(s, sc, csc)
        q, qc = _kahan_add(q, qc, cq)
        q, qc = _kahan_add(q, qc, cqc)
        for r, curve in ctraj:
            trajectories[r] = curve

    dev_mean = s / M
    mean = shift + dev_mean
    if M > 1:
        var = np.maximum(q - M * dev_mean * dev_mean, 0.0) / (M - 1)
        std = np.sqrt(var)
    else:
        std = np.zeros(T)
    traj = (np.vstack(trajectories) if trajectories
            else np.empty((0, T)))
    return CurveStats(config.time_grid, mean, std, M, traj)


def _chunk_call(args):
    return _chunk_stats(*args)


def coe_min_purity_mc(n: int, m: int, samples: int,
                      master_seed: int = 0) -> float:
    """Monte-Carlo first-minimum purity from circular-ensemble propagators.

    Each sample applies a random unitary symmetric matrix to the basis
    product state |0, 0> and measures the purity; the average is the
    independent oracle for :func:`rmtpurity.analytics.i_min_coe`.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    dims = Dimensions(n, m)
    rng = RngStream(master_seed, 0).generator
    values = []
    for _ in range(samples):
        s = sample_coe(dims.total, rng)
        psi = np.ascontiguousarray(s[:, 0])
        values.append(purity_of_amplitudes(psi, n, m))
    return math.fsum(values) / samples


def stationary_purity_mc(n: int, m: int, samples: int,
                         master_seed: int = 0) -> float:
    """Monte-Carlo long-time purity from fully randomized phases.

    Each sample applies ``O diag(exp(i theta)) O^T`` with Haar orthogonal O
    and i.i.d. uniform phases theta to the basis product state |0, 0>; the
    average is the independent oracle for
    :func:`rmtpurity.analytics.i_infinity`.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    dims = Dimensions(n, m)
    rng = RngStream(master_seed, 0).generator
    values = []
    for _ in range(samples):
        o = sample_haar_orthogonal(dims.total, rng)
        phases = np.exp(1j * rng.uniform(0.0, 2.0 * np.pi, size=dims.total))
        psi = o @ (phases * o[0, :])
        values.append(purity_of_amplitudes(psi, n, m))
    return math.fsum(values) / samples
