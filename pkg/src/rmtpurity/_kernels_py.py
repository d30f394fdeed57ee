"""Numpy implementation of the hot kernels (fallback backend).

Same contracts as the compiled `_kernels` extension; selected at import
time by `rmtpurity.backend` when the extension is unavailable or when
``RMTPURITY_PURE_PYTHON`` is set.
"""

import numpy as np

__all__ = ["purity_of_amplitudes", "purity_curve"]


def _gram_purity(c: np.ndarray) -> float:
    # contract over the larger axis so the Gram matrix is as small as possible
    n, m = c.shape
    if n <= m:
        g = c @ c.conj().T
    else:
        g = c.conj().T @ c
    return float(np.sum(g.real**2 + g.imag**2))


def purity_of_amplitudes(amps: np.ndarray, n: int, m: int) -> float:
    """Tr[rho_1^2] of the pure state with flat amplitudes ``amps``.

    The state is reshaped to the n x m coefficient matrix C (row = first
    factor, column = second factor) and the squared Frobenius norm of the
    Gram matrix C C^dagger is returned.
    """
    c = np.asarray(amps, dtype=complex).reshape(n, m)
    return _gram_purity(c)


def purity_curve(energies: np.ndarray, eigvecs: np.ndarray, psi0: np.ndarray,
                 times: np.ndarray, n: int, m: int) -> np.ndarray:
    """Purity of ``exp(-iHt)|psi0>`` at each grid time.

    ``energies`` and ``eigvecs`` are the spectral decomposition of H
    (columns of ``eigvecs`` are eigenvectors); ``psi0`` is the real initial
    state in the product basis with flat index ``i*m + mu``.
    """
    energies = np.asarray(energies, dtype=float)
    eigvecs = np.asarray(eigvecs, dtype=float)
    psi0 = np.asarray(psi0, dtype=float)
    times = np.asarray(times, dtype=float)

    a = eigvecs.T @ psi0
    phases = np.exp(-1j * np.outer(times, energies))  # (T, N)
    amps = (phases * a) @ eigvecs.T                   # (T, N)

    c = amps.reshape(times.size, n, m)
    if n <= m:
        g = c @ c.conj().transpose(0, 2, 1)
    else:
        g = c.conj().transpose(0, 2, 1) @ c
    return np.sum(g.real**2 + g.imag**2, axis=(1, 2))
