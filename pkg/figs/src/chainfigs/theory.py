"""Closed-form overlay curves, re-implemented here so the plotting side
stays decoupled from the simulation package (file formats are the only
shared contract).  Consistency against the simulation's exported reference
table is enforced in the tests."""

from __future__ import annotations

import numpy as np
from scipy.special import digamma


def jacobi_density(mu: float, lam) -> np.ndarray:
    """sqrt(4 mu (1-mu) - lam^2) / (2 pi mu (1 - lam^2)) on its support."""
    lam = np.asarray(lam, dtype=float)
    a2 = 4 * mu * (1 - mu)
    out = np.zeros_like(lam)
    inside = lam**2 < a2
    out[inside] = np.sqrt(a2 - lam[inside] ** 2) / (2 * np.pi * mu * (1 - lam[inside] ** 2))
    return out


def mean_h2_closed(mu) -> np.ndarray:
    mu = np.asarray(mu, dtype=float)
    return np.log(2) - 1 - (1 - mu) / mu * np.log1p(-mu)


def entropy_approx(ell, N: int) -> np.ndarray:
    ell = np.asarray(ell, dtype=float)
    out = ell * np.log(2) - ell
    nz = ell > 0
    out = np.where(nz, out - (N - ell) * np.log1p(-ell / N), 0.0)
    return out


def entropy_exact(ell, N: int, m: int) -> np.ndarray:
    ell = np.asarray(ell, dtype=float)
    mu = ell / N
    val = (
        1
        - mu * (1 + N)
        - m * mu * digamma(m)
        + N * digamma(N)
        + (ell - N) * digamma(N - ell + 1)
    )
    if m != N:
        val = val + mu * (m - N) * digamma(N - m)
    return val


def poisson_cdf(s) -> np.ndarray:
    return 1.0 - np.exp(-np.asarray(s, dtype=float))


def goe_cdf(s) -> np.ndarray:
    s = np.asarray(s, dtype=float)
    return 1.0 - np.exp(-np.pi / 4 * s**2)


def page_law(ell, n_qubits: int) -> np.ndarray:
    ell = np.asarray(ell, dtype=float)
    return ell * np.log(2) - 0.5 ** (n_qubits - 2 * ell + 1)


#: reference-table curve names -> (callable, kwargs builder from the name)
def evaluate_reference_curve(curve: str, x: np.ndarray) -> np.ndarray:
    """Evaluate a named curve from the simulation's reference export."""
    if curve.startswith("jacobi_density_mu"):
        return jacobi_density(float(curve.removeprefix("jacobi_density_mu")), x)
    if curve == "mean_h2_closed":
        return mean_h2_closed(x)
    if curve.startswith("entropy_approx_N"):
        return entropy_approx(x, int(curve.removeprefix("entropy_approx_N")))
    if curve.startswith("entropy_exact_N"):
        n_part, m_part = curve.removeprefix("entropy_exact_N").split("_m")
        return entropy_exact(x, int(n_part), int(m_part))
    if curve == "poisson_cdf":
        return poisson_cdf(x)
    if curve == "goe_cdf":
        return goe_cdf(x)
    if curve.startswith("page_law_N"):
        return page_law(x, int(curve.removeprefix("page_law_N")))
    raise ValueError(f"unknown reference curve {curve!r}")
