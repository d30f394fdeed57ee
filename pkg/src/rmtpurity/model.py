"""Bipartite random-matrix Hamiltonians and their spectral decompositions.

The total system is a product of a central system (dimension n) and an
environment (dimension m).  Product-basis states |i, mu> are flattened with
the fixed convention ``flat = i*m + mu``.  Two model families are provided:

* strong coupling: the full Hamiltonian is a single random matrix
  ``O diag(E) O^T`` with an unfolded spectrum E and Haar eigenvectors O;
* weak coupling: ``H = diag(e_i + e_mu) + lambda * V`` built in the product
  eigenbasis of the uncoupled part, rescaled so the ensemble-mean level
  variance stays one.
"""

import math
from dataclasses import dataclass

import numpy as np

from .ensembles import (
    Spectrum,
    SpectrumKind,
    sample_coupling,
    sample_haar_orthogonal,
    sample_spectrum,
)

__all__ = [
    "Dimensions",
    "StrongCouplingSpec",
    "WeakCouplingSpec",
    "SpectralDecomposition",
    "build_strong",
    "build_weak",
    "heff_matrix",
]


@dataclass(frozen=True)
class Dimensions:
    """Factor-space dimensions; the product space has dimension N = n*m."""

    n: int
    m: int

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise ValueError(f"factor dimensions must be >= 1, got "
                             f"n={self.n}, m={self.m}")

    @property
    def total(self) -> int:
        return self.n * self.m

    def flat_index(self, i: int, mu: int) -> int:
        """Flatten the product-basis pair (i, mu) to ``i*m + mu``."""
        if not (0 <= i < self.n and 0 <= mu < self.m):
            raise IndexError(f"product index ({i}, {mu}) out of range for "
                             f"n={self.n}, m={self.m}")
        return i * self.m + mu


@dataclass(frozen=True)
class StrongCouplingSpec:
    """Strong coupling: the interaction dominates, one N-dim ensemble."""

    dims: Dimensions
    kind: SpectrumKind


@dataclass(frozen=True)
class WeakCouplingSpec:
    """Weak coupling: diagonal subsystem spectra plus a Gaussian coupling."""

    dims: Dimensions
    kind1: SpectrumKind
    kind2: SpectrumKind
    lam: float

    def __post_init__(self):
        if self.lam < 0:
            raise ValueError(f"coupling strength must be >= 0, got {self.lam}")


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues and orthogonal eigenvectors of a total Hamiltonian.

    ``eigenvectors[:, alpha]`` is the eigenvector of ``energies[alpha]``,
    with rows indexed by the flat product index ``i*m + mu``.
    """

    energies: np.ndarray
    eigenvectors: np.ndarray
    dims: Dimensions


def build_strong(spec: StrongCouplingSpec,
                 rng: np.random.Generator) -> SpectralDecomposition:
    """Sample a strong-coupling Hamiltonian directly in diagonal form.

    The spectrum (dimension N = n*m) is drawn per ``spec.kind``; the
    eigenvector matrix is an independent Haar orthogonal.  The stream is
    consumed in that order.
    """
    N = spec.dims.total
    levels = sample_spectrum(spec.kind, N, rng).levels
    o = sample_haar_orthogonal(N, rng)
    return SpectralDecomposition(levels, o, spec.dims)


def _subsystem_levels(kind: SpectrumKind, dim: int,
                      rng: np.random.Generator) -> np.ndarray:
    # subsystem spectra carry variance 1/2 each so the uncoupled total has
    # variance one; the unfolded unit-variance spectrum is just rescaled
    return sample_spectrum(kind, dim, rng).levels / math.sqrt(2.0)


def build_weak(spec: WeakCouplingSpec,
               rng: np.random.Generator) -> SpectralDecomposition:
    """Assemble and diagonalize ``(H0 + lambda V) / sqrt(1 + lambda^2 (N-1))``.

    H0 is diagonal in the product basis with entries ``e_i + e_mu`` from the
    two subsystem spectra (variance 1/2 each); V is symmetric Gaussian with
    zero diagonal.  The global rescale keeps the ensemble-mean level variance
    at one for every coupling strength.  Stream order: spectrum 1, spectrum 2,
    coupling.
    """
    dims = spec.dims
    N = dims.total
    e1 = _subsystem_levels(spec.kind1, dims.n, rng)
    e2 = _subsystem_levels(spec.kind2, dims.m, rng)
    h = np.diag((e1[:, None] + e2[None, :]).ravel())
    if spec.lam > 0:
        h = h + spec.lam * sample_coupling(N, rng)
    h /= math.sqrt(1.0 + spec.lam**2 * (N - 1))
    energies, o = np.linalg.eigh(h)
    return SpectralDecomposition(energies, o, dims)


def heff_matrix(decomp: SpectralDecomposition) -> np.ndarray:
    """Reconstruct the Hamiltonian matrix ``O diag(E) O^T``."""
    o = decomp.eigenvectors
    return (o * decomp.energies) @ o.T
