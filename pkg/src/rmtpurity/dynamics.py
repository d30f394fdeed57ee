"""Product states, unitary evolution, partial-trace purity.

Phases follow the Schroedinger convention ``exp(-i E t)`` (hbar = 1); purity
is invariant under the global sign of the phase, so this choice is purely a
bookkeeping convention.
"""

import math
from dataclasses import dataclass

import numpy as np

from .backend import purity_of_amplitudes
from .model import Dimensions, SpectralDecomposition

__all__ = [
    "ProductState",
    "PureState",
    "random_product_state",
    "basis_product_state",
    "tensor",
    "evolve",
    "purity",
    "linear_entropy",
]

_NORM_TOL = 1e-8


@dataclass(frozen=True)
class ProductState:
    """Factorized initial state: real unit vectors on the two subsystems."""

    left: np.ndarray
    right: np.ndarray

    def __post_init__(self):
        for name, vec in (("left", self.left), ("right", self.right)):
            if abs(np.linalg.norm(vec) - 1.0) > 1e-12:
                raise ValueError(f"{name} factor is not normalized")

    @property
    def dims(self) -> Dimensions:
        return Dimensions(self.left.size, self.right.size)


@dataclass(frozen=True)
class PureState:
    """State vector on the product space, flat index ``i*m + mu``."""

    amplitudes: np.ndarray
    dims: Dimensions


def random_product_state(dims: Dimensions,
                         rng: np.random.Generator) -> ProductState:
    """Two independent factors from the orthogonally invariant measure.

    Each factor is a standard Gaussian vector normalized to unit length,
    which is the unique rotation-invariant distribution on the real sphere.
    """
    left = rng.standard_normal(dims.n)
    right = rng.standard_normal(dims.m)
    return ProductState(left / np.linalg.norm(left),
                        right / np.linalg.norm(right))


def basis_product_state(dims: Dimensions, i: int, mu: int) -> ProductState:
    """The product basis state |i, mu>."""
    dims.flat_index(i, mu)  # range check
    left = np.zeros(dims.n)
    right = np.zeros(dims.m)
    left[i] = 1.0
    right[mu] = 1.0
    return ProductState(left, right)


def tensor(p: ProductState) -> PureState:
    """Flatten a product state: ``amplitudes[i*m + mu] = left[i]*right[mu]``."""
    amps = np.outer(p.left, p.right).ravel()
    return PureState(amps, p.dims)


def evolve(decomp: SpectralDecomposition, psi0: PureState,
           t: float) -> PureState:
    """Apply ``O diag(exp(-i E t)) O^T`` to the state."""
    if psi0.amplitudes.size != decomp.energies.size:
        raise ValueError(
            f"state dimension {psi0.amplitudes.size} does not match "
            f"decomposition dimension {decomp.energies.size}")
    o = decomp.eigenvectors
    a = o.T @ psi0.amplitudes
    amps = o @ (np.exp(-1j * decomp.energies * t) * a)
    return PureState(amps, psi0.dims)


def purity(psi: PureState) -> float:
    """Tr[rho_1^2] of the reduced state; 1 for product states.

    Computed from the Gram matrix of the reshaped coefficient matrix, which
    equals the sum of fourth powers of its singular values.  Bounded by
    ``1/min(n, m) <= purity <= 1``.
    """
    norm = np.linalg.norm(psi.amplitudes)
    if abs(norm - 1.0) > _NORM_TOL:
        raise ValueError(f"state norm {norm} deviates from 1 beyond {_NORM_TOL}")
    return purity_of_amplitudes(psi.amplitudes, psi.dims.n, psi.dims.m)


def linear_entropy(psi: PureState) -> float:
    """Idempotency defect 1 - purity."""
    return 1.0 - purity(psi)
