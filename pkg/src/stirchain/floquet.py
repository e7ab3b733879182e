"""One-period propagator, quasi-energy statistics, and Floquet occupations.

The quasi-energies are never obtained from a matrix logarithm: the one-period
unitary is Schur-diagonalized (exact for normal matrices, orthonormal
eigenvectors even inside degenerate clusters) and the eigenphases are mapped
to the principal window (-pi/T, pi/T].
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import schur

from .evolve import ModeMatrix, PropagatorCache
from .lattice import ChainParams

UNITARITY_TOL = 1e-10

# reference double-ratio constants for the classic ensembles
R_TILDE_POISSON = 0.38
R_TILDE_GOE = 0.54
R_TILDE_GUE = 0.59


@dataclass(frozen=True)
class FloquetData:
    """One-period propagator with its quasi-energy decomposition."""

    u_period: np.ndarray
    quasi: np.ndarray
    modes: np.ndarray
    T: float

    @property
    def omega(self) -> float:
        return 2 * np.pi / self.T


@dataclass(frozen=True)
class SpacingStats:
    """Level-spacing statistics of a quasi-energy (or any) spectrum."""

    s: np.ndarray
    s_normalized: np.ndarray
    r_tilde_mean: float

    def cdf(self, s_grid: np.ndarray) -> np.ndarray:
        """Empirical CDF of the unit-mean spacings on a grid."""
        return np.searchsorted(np.sort(self.s_normalized), s_grid, side="right") / len(
            self.s_normalized
        )


def period_propagator(cache: PropagatorCache) -> np.ndarray:
    """Ordered product of the cycle's step propagators, earliest first."""
    return cache.cycle_propagator


def quasi_energies(u_period: np.ndarray, T: float) -> tuple[np.ndarray, np.ndarray]:
    """Sorted quasi-energies in (-pi/T, pi/T] and matching orthonormal modes."""
    n = u_period.shape[0]
    defect = np.max(np.abs(u_period.conj().T @ u_period - np.eye(n)))
    if defect > 1e-8:
        raise ArithmeticError(f"input is not unitary, defect {defect:.3e}")
    t_mat, z = schur(u_period, output="complex")
    lam = np.diagonal(t_mat)
    eps = -np.angle(lam) / T
    # angle returns pi for negative-real eigenvalues, landing eps on the
    # excluded edge -pi/T; fold it to +pi/T
    eps = np.where(eps <= -np.pi / T * (1 - 1e-15), eps + 2 * np.pi / T, eps)
    order = np.argsort(eps, kind="stable")
    return eps[order], z[:, order]


def floquet_data(params: ChainParams, cache: PropagatorCache | None = None) -> FloquetData:
    if cache is None:
        cache = PropagatorCache(params)
    u = period_propagator(cache)
    eps, modes = quasi_energies(u, params.period)
    return FloquetData(u_period=u, quasi=eps, modes=modes, T=params.period)


def spacing_statistics(levels: np.ndarray, trim: int | None = None) -> SpacingStats:
    """Spacing statistics with unit-mean normalization after edge trimming.

    ``trim`` levels are discarded at each end of the sorted spectrum before
    normalizing (default N/32, an edge-effect guard).  The double ratio
    r~_n = min(s_n, s_{n-1}) / max(s_n, s_{n-1}) is scale-free.
    """
    levels = np.sort(np.asarray(levels, dtype=float))
    n = len(levels)
    if n < 10:
        raise ValueError(f"need at least 10 levels, got {n}")
    if trim is None:
        trim = n // 32
    kept = levels[trim : n - trim] if trim > 0 else levels
    s_all = np.diff(levels)
    s = np.diff(kept)
    s_norm = s / np.mean(s)
    r = np.minimum(s[1:], s[:-1]) / np.maximum(s[1:], s[:-1])
    return SpacingStats(s=s_all, s_normalized=s_norm, r_tilde_mean=float(np.mean(r)))


def poisson_spacing_pdf(s):
    return np.exp(-np.asarray(s, dtype=float))


def poisson_spacing_cdf(s):
    return 1.0 - np.exp(-np.asarray(s, dtype=float))


def goe_spacing_pdf(s):
    """Wigner surmise for the orthogonal ensemble (decaying exponent)."""
    s = np.asarray(s, dtype=float)
    return np.pi / 2 * s * np.exp(-np.pi / 4 * s**2)


def goe_spacing_cdf(s):
    s = np.asarray(s, dtype=float)
    return 1.0 - np.exp(-np.pi / 4 * s**2)


def reference_spacing_cdf(kind: str):
    """CDF callable for ``kind`` in {'poisson', 'goe'}."""
    table = {"poisson": poisson_spacing_cdf, "goe": goe_spacing_cdf}
    try:
        return table[kind.lower()]
    except KeyError:
        raise ValueError(f"unknown reference kind {kind!r}") from None


def floquet_occupations(data: FloquetData, state: ModeMatrix) -> np.ndarray:
    """Occupations n^F_k = f_k^dag M f_k of the Floquet modes.

    Inside a degenerate quasi-energy multiplet the per-mode values are
    basis-dependent, so the block of M projected onto the multiplet is
    re-diagonalized and its eigenvalues reported (ascending within the
    multiplet), which is eigensolver-independent.
    """
    if data.modes.shape[0] != state.n_sites:
        raise ValueError("state and Floquet data dimensions differ")
    w = data.modes.conj().T @ state.phi  # k-th row = <f_k| applied to modes
    occ = np.sum(np.abs(w) ** 2, axis=1)
    gap_tol = 1e-8 * data.omega
    eps = data.quasi
    start = 0
    for k in range(1, len(eps) + 1):
        if k == len(eps) or eps[k] - eps[k - 1] > gap_tol:
            if k - start > 1:
                block = w[start:k] @ w[start:k].conj().T
                occ[start:k] = np.sort(np.linalg.eigvalsh(block))
            start = k
    return occ


def symmetry_defect(levels: np.ndarray, omega: float | None = None) -> float:
    """Largest distance from any level to the negated multiset.

    With ``omega`` given, distances are taken modulo omega, which matches
    spectra defined on a circle (quasi-energies): a pair straddling the
    branch cut still counts as symmetric.
    """
    lv = np.sort(np.asarray(levels, dtype=float))
    neg = np.sort(-lv)
    d = np.abs(lv[:, None] - neg[None, :])
    if omega is not None:
        d = np.minimum(d, np.abs(d - omega))
    # greedy nearest-match: both multisets sorted, so matching index by index
    # after optimal circular alignment is enough; use min over per-level best
    return float(np.max(np.min(d, axis=1)))
