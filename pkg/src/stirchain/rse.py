"""Random Slater ensemble: sampling, spectral density, and entropy laws.

A random Slater determinant on N sites with m particles is an N x m isometry
drawn from the Haar measure on the complex Stiefel manifold.  The eigenvalues
of an l x l principal submatrix of the corresponding projector follow the
Jacobi ensemble; in the rescaled variable lambda = 2 nu - 1 and with
mu = l/N <= 1/2, the limiting density is

    rho_mu(lambda) = sqrt(4 mu (1-mu) - lambda^2) / (2 pi mu (1 - lambda^2))

supported on |lambda| <= 2 sqrt(mu(1-mu)).  Averaging the binary entropy over
this density has the closed form log 2 - 1 - ((1-mu)/mu) log(1-mu), which is
verified here independently by quadrature.  Exact finite-size formulas for
the mean and variance of the block entropy are evaluated via the digamma
function, implemented locally (recurrence plus asymptotic series).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate

from .evolve import ModeMatrix


@dataclass(frozen=True)
class RseParams:
    """Ensemble geometry: chain size, particle number, block size."""

    N: int
    m: int
    ell: int

    def __post_init__(self):
        if not 0 < self.ell <= self.N // 2:
            raise ValueError(f"ell must lie in 1..N/2, got {self.ell}")
        if self.m > self.N:
            raise ValueError(f"m={self.m} exceeds N={self.N}")

    @property
    def mu(self) -> float:
        return self.ell / self.N

    @property
    def support_edge(self) -> float:
        return 2.0 * math.sqrt(self.mu * (1 - self.mu))


def sample_random_slater(N: int, m: int, rng: np.random.Generator) -> ModeMatrix:
    """Haar-distributed N x m isometry.

    Complex Gaussian entries orthonormalized by QR; the phases of the
    triangular factor's diagonal are absorbed into the columns, without
    which the distribution would not be Haar.
    """
    if m > N:
        raise ValueError(f"m={m} exceeds N={N}")
    z = rng.standard_normal((N, m)) + 1j * rng.standard_normal((N, m))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return ModeMatrix(q * (d / np.abs(d)))


def support_edge(mu: float) -> float:
    return 2.0 * math.sqrt(mu * (1 - mu))


def jacobi_density(mu: float, lam) -> np.ndarray | float:
    """Limiting eigenvalue density of the rescaled block spectrum; zero
    outside the support."""
    if not 0 < mu <= 0.5:
        raise ValueError(f"mu must lie in (0, 1/2], got {mu}")
    arr = np.asarray(lam, dtype=float)
    a2 = 4 * mu * (1 - mu)
    out = np.zeros_like(arr)
    inside = arr**2 < a2
    out[inside] = np.sqrt(a2 - arr[inside] ** 2) / (2 * np.pi * mu * (1 - arr[inside] ** 2))
    return float(out) if np.isscalar(lam) else out


def mean_h2_closed(mu: float) -> float:
    """Closed form for the density-averaged binary entropy."""
    if not 0 < mu <= 0.5:
        raise ValueError(f"mu must lie in (0, 1/2], got {mu}")
    return math.log(2) - 1 - (1 - mu) / mu * math.log(1 - mu)


def mean_h2_quadrature(mu: float) -> float:
    """Density-averaged binary entropy by adaptive quadrature.

    The substitution lambda = a sin(theta) removes the inverse-square-root
    edge behavior exactly, leaving a smooth integrand on [-pi/2, pi/2].
    """
    if not 0 < mu <= 0.5:
        raise ValueError(f"mu must lie in (0, 1/2], got {mu}")
    a = support_edge(mu)

    def integrand(theta: float) -> float:
        lam = a * math.sin(theta)
        x = (lam + 1) / 2
        x = min(max(x, 1e-300), 1 - 1e-16)
        h2 = -x * math.log(x) - (1 - x) * math.log(1 - x)
        return h2 * a * a * math.cos(theta) ** 2 / (2 * math.pi * mu * (1 - lam * lam))

    val, err = integrate.quad(integrand, -math.pi / 2, math.pi / 2, epsabs=1e-12, epsrel=1e-12, limit=200)
    if err > 1e-9:
        raise ArithmeticError(f"quadrature did not converge, error estimate {err:.2e}")
    return val


def entropy_approx(ell: float, N: int) -> float:
    """Uncorrelated-eigenvalue approximation mu N <H2>:
    S(l) ~ l log 2 - l - (N - l) log(1 - l/N)."""
    if not 0 <= ell <= N / 2:
        raise ValueError(f"ell must lie in 0..N/2, got {ell}")
    if ell == 0:
        return 0.0
    return ell * math.log(2) - ell - (N - ell) * math.log(1 - ell / N)


_BERNOULLI_TERMS = (
    1.0 / 12,
    -1.0 / 120,
    1.0 / 252,
    -1.0 / 240,
    1.0 / 132,
    -691.0 / 32760,
    1.0 / 12,
)


def digamma(x: float) -> float:
    """Psi(x) for x > 0: upward recurrence to x >= 8, then the asymptotic
    series through the x^-14 Bernoulli term (relative error below 1e-12)."""
    if x <= 0:
        raise ValueError(f"digamma requires x > 0, got {x}")
    acc = 0.0
    while x < 8:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    power = inv2
    for coeff in _BERNOULLI_TERMS:
        series += coeff * power
        power *= inv2
    return acc + math.log(x) - 0.5 / x - series


def entropy_exact(ell: int, N: int, m: int) -> float:
    """Exact ensemble-mean block entropy for l <= N/2.

    At m = N the term with coefficient (m - N) vanishes and is skipped
    (its digamma argument would be zero).
    """
    if not 0 < ell <= N / 2:
        raise ValueError(f"ell must lie in 1..N/2, got {ell}")
    mu = ell / N
    val = (
        1
        - mu * (1 + N)
        - m * mu * digamma(m)
        + N * digamma(N)
        + (ell - N) * digamma(N - ell + 1)
    )
    if m != N:
        val += mu * (m - N) * digamma(N - m)
    return val


def entropy_variance(ell: int, N: int, m: int) -> float:
    """Leading-order variance of the block entropy; reduces to
    log(1-mu) + mu + mu^2 at half filling."""
    if not 0 < ell <= N / 2:
        raise ValueError(f"ell must lie in 1..N/2, got {ell}")
    mu = ell / N
    fill = m / N
    val = math.log(1 - mu) + mu + mu * mu
    if 0 < m < N:  # away from half filling; the extra terms vanish at m = N/2
        lr = math.log(N / m - 1)
        val += mu * mu * (2 * fill - 1) * lr
        val += mu * (mu - 1) * (fill - 1) * fill * lr * lr
    return val


def page_law(ell: int, n_qubits: int) -> float:
    """Mean entropy of a Haar-random qubit state (reference curve only)."""
    if ell > n_qubits / 2:
        raise ValueError(f"ell must lie in 0..N/2, got {ell}")
    return ell * math.log(2) - 0.5 ** (n_qubits - 2 * ell + 1)
