"""Scalar and vector observables of the mode matrix."""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .evolve import ModeMatrix
from .lattice import HoppingMatrix

IMAG_TOL = 1e-8


def energy(state: ModeMatrix, h: HoppingMatrix) -> float:
    """Expectation of H = -sum h_ij c^dag_i c_j, i.e. -tr(h M).

    Raises if the imaginary residue exceeds IMAG_TOL; the residue is
    discarded otherwise.
    """
    if h.n != state.n_sites:
        raise ValueError(f"h dimension {h.n} does not match state {state.n_sites}")
    val = -np.sum(h.entries * state.kernel())
    if abs(val.imag) > IMAG_TOL:
        raise ArithmeticError(f"energy has imaginary residue {val.imag:.3e}")
    return float(val.real)


def site_densities(state: ModeMatrix) -> np.ndarray:
    """<n_i> = M_ii for every site."""
    return np.einsum("ik,ik->i", state.phi, state.phi.conj()).real


@lru_cache(maxsize=8)
def sine_mode_matrix(N: int) -> np.ndarray:
    """Open-chain eigenmodes phi_k(i) = sqrt(2/(N+1)) sin(pi i k/(N+1)),
    one column per k = 1..N."""
    i = np.arange(1, N + 1)[:, None]
    k = np.arange(1, N + 1)[None, :]
    mat = np.sqrt(2.0 / (N + 1)) * np.sin(np.pi * i * k / (N + 1))
    mat.setflags(write=False)
    return mat


def mode_occupations(state: ModeMatrix) -> np.ndarray:
    """Occupations of the clean-chain sine modes, n_k = phi_k^T M phi_k.

    Computed as column norms of phi^dag sines, which keeps the result in
    [0, 1] by construction and sums exactly to the particle number.
    """
    sines = sine_mode_matrix(state.n_sites)
    w = state.phi.conj().T @ sines
    return np.sum(np.abs(w) ** 2, axis=0)
