# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: time-grid purity curves for one realization.

Mirrors `_kernels_py`; the loops are fused so no (T, N) temporaries are
allocated per realization.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport cos, sin

cnp.import_array()

__all__ = ["purity_of_amplitudes", "purity_curve"]


cdef double _gram_purity(const double complex[:, ::1] c, Py_ssize_t n,
                         Py_ssize_t m) nogil:
    # purity = sum_{i,i'} |sum_mu C[i,mu] conj(C[i',mu])|^2, contracted over
    # whichever factor is larger so the double loop runs over the small one
    cdef Py_ssize_t i, j, k
    cdef double complex g
    cdef double total = 0.0
    if n <= m:
        for i in range(n):
            for j in range(n):
                g = 0.0
                for k in range(m):
                    g += c[i, k] * c[j, k].conjugate()
                total += g.real * g.real + g.imag * g.imag
    else:
        for i in range(m):
            for j in range(m):
                g = 0.0
                for k in range(n):
                    g += c[k, i] * c[k, j].conjugate()
                total += g.real * g.real + g.imag * g.imag
    return total


def purity_of_amplitudes(amps, int n, int m):
    """Tr[rho_1^2] of the pure state with flat amplitudes ``amps``."""
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] c = \
        np.ascontiguousarray(amps, dtype=np.complex128).reshape(n, m)
    return _gram_purity(c, n, m)


def purity_curve(energies, eigvecs, psi0, times, int n, int m):
    """Purity of ``exp(-iHt)|psi0>`` at each grid time (real psi0)."""
    cdef cnp.ndarray[cnp.float64_t, ndim=1] e = \
        np.ascontiguousarray(energies, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=2] o = \
        np.ascontiguousarray(eigvecs, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] p0 = \
        np.ascontiguousarray(psi0, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] t = \
        np.ascontiguousarray(times, dtype=np.float64)

    cdef Py_ssize_t N = e.shape[0]
    cdef Py_ssize_t T = t.shape[0]
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty(T, dtype=np.float64)

    # a = O^T psi0, the eigenbasis overlaps of the initial state
    cdef cnp.ndarray[cnp.float64_t, ndim=1] a = o.T @ p0
    cdef cnp.ndarray[cnp.complex128_t, ndim=1] w = np.empty(N, dtype=np.complex128)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] c = \
        np.empty((n, m), dtype=np.complex128)

    cdef double[::1] ev = e
    cdef double[:, ::1] ov = o
    cdef double[::1] av = a
    cdef double[::1] tv = t
    cdef double complex[::1] wv = w
    cdef double complex[:, ::1] cv = c
    cdef double[::1] outv = out

    cdef Py_ssize_t j, k, i
    cdef double phase, wr, wi, sr, si
    with nogil:
        for j in range(T):
            for k in range(N):
                phase = -ev[k] * tv[j]
                wv[k] = (cos(phase) + 1j * sin(phase)) * av[k]
            # psi = O w, written straight into the n x m coefficient matrix
            for i in range(N):
                sr = 0.0
                si = 0.0
                for k in range(N):
                    wr = wv[k].real
                    wi = wv[k].imag
                    sr += ov[i, k] * wr
                    si += ov[i, k] * wi
                cv[i // m, i % m] = sr + 1j * si
            outv[j] = _gram_purity(cv, n, m)
    return out
