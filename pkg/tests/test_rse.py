import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate, special, stats

from stirchain.entanglement import binary_entropy
from stirchain.rse import (
    digamma,
    entropy_approx,
    entropy_exact,
    entropy_variance,
    jacobi_density,
    mean_h2_closed,
    mean_h2_quadrature,
    page_law,
    sample_random_slater,
    support_edge,
)

LOG2 = np.log(2)


# -- sampler ------------------------------------------------------------------

def test_sampler_isometry():
    rng = np.random.default_rng(0)
    phi = sample_random_slater(24, 10, rng).phi
    assert np.max(np.abs(phi.conj().T @ phi - np.eye(10))) < 1e-12


def test_sampler_mean_kernel_is_uniform():
    # unitary invariance forces <M> = (m/N) I
    rng = np.random.default_rng(11)
    N, m, n_samples = 16, 8, 10000
    acc = np.zeros((N, N), dtype=complex)
    for _ in range(n_samples):
        acc += sample_random_slater(N, m, rng).kernel()
    mean = acc / n_samples
    # entry-wise fluctuation scale is ~ sqrt(m/N^2 / n_samples)
    se = np.sqrt(m / N**2 / n_samples)
    assert np.max(np.abs(mean - (m / N) * np.eye(N))) < 5 * se


def test_sampler_unitary_invariance_chi2():
    # block spectra of rotated samples are statistically indistinguishable
    rng = np.random.default_rng(21)
    N, m, ell, n_samples = 32, 16, 8, 500
    z = rng.standard_normal((N, N)) + 1j * rng.standard_normal((N, N))
    q, r = np.linalg.qr(z)
    fixed_u = q * (np.diagonal(r) / np.abs(np.diagonal(r)))
    raw, rot = [], []
    for _ in range(n_samples):
        phi = sample_random_slater(N, m, rng).phi
        raw.append(np.linalg.eigvalsh((phi @ phi.conj().T)[:ell, :ell]))
        phi2 = fixed_u @ phi
        rot.append(np.linalg.eigvalsh((phi2 @ phi2.conj().T)[:ell, :ell]))
    edges = np.linspace(0, 1, 11)
    c1, _ = np.histogram(np.concatenate(raw), bins=edges)
    c2, _ = np.histogram(np.concatenate(rot), bins=edges)
    keep = (c1 + c2) > 10
    stat = np.sum((c1[keep] - c2[keep]) ** 2 / (c1[keep] + c2[keep]))
    p = stats.chi2.sf(stat, keep.sum() - 1)
    assert p > 0.01


def test_sampler_rejects_m_above_n():
    with pytest.raises(ValueError):
        sample_random_slater(4, 5, np.random.default_rng(0))


def test_sampler_block_spectrum_matches_jacobi_density():
    # 500 samples at N=256, l=64: chi-square against the limiting density
    rng = np.random.default_rng(20240611)
    N, m, ell = 256, 128, 64
    lam = []
    for _ in range(500):
        kernel = sample_random_slater(N, m, rng).kernel()
        lam.append(2 * np.linalg.eigvalsh(kernel[:ell, :ell]) - 1)
    lam = np.concatenate(lam)
    mu = ell / N
    a = support_edge(mu)
    nbins = 24
    edges = np.linspace(-a, a, nbins + 1)
    counts, _ = np.histogram(np.clip(lam, -a + 1e-12, a - 1e-12), bins=edges)
    probs = np.array(
        [
            integrate.quad(lambda x: jacobi_density(mu, x), edges[i], edges[i + 1], limit=100)[0]
            for i in range(nbins)
        ]
    )
    expected = probs / probs.sum() * len(lam)
    chi2 = np.sum((counts - expected) ** 2 / expected)
    assert stats.chi2.sf(chi2, nbins - 1) > 0.01


def test_rse_params_type():
    from stirchain.rse import RseParams

    p = RseParams(N=64, m=32, ell=16)
    assert p.mu == 0.25
    assert p.support_edge == pytest.approx(2 * np.sqrt(0.25 * 0.75), abs=1e-15)
    with pytest.raises(ValueError):
        RseParams(N=64, m=32, ell=33)
    with pytest.raises(ValueError):
        RseParams(N=64, m=65, ell=16)


# -- spectral density ----------------------------------------------------------

def test_density_arcsine_at_half():
    lam = np.linspace(-0.95, 0.95, 21)
    arcsine = 1 / (np.pi * np.sqrt(1 - lam**2))
    assert np.max(np.abs(jacobi_density(0.5, lam) - arcsine)) < 1e-12


@pytest.mark.parametrize("mu", [0.1, 0.25, 0.5])
def test_density_normalized(mu):
    a = support_edge(mu)
    val, _ = integrate.quad(
        lambda th: jacobi_density(mu, a * np.sin(th)) * a * np.cos(th), -np.pi / 2, np.pi / 2
    )
    assert abs(val - 1) < 1e-8


def test_density_support():
    mu = 0.25
    a = support_edge(mu)
    assert jacobi_density(mu, a + 1e-9) == 0.0
    assert jacobi_density(mu, -a - 1e-9) == 0.0
    assert jacobi_density(mu, a * (1 - 1e-8)) < 1e-3  # vanishes at the edge


def test_density_mu_out_of_range():
    with pytest.raises(ValueError):
        jacobi_density(0.7, 0.0)
    with pytest.raises(ValueError):
        jacobi_density(0.0, 0.0)


def test_density_second_moment_matches_monte_carlo():
    mu = 0.25
    a = support_edge(mu)
    moment, _ = integrate.quad(
        lambda th: (a * np.sin(th)) ** 2 * jacobi_density(mu, a * np.sin(th)) * a * np.cos(th),
        -np.pi / 2,
        np.pi / 2,
    )
    rng = np.random.default_rng(17)
    N, m, ell = 256, 128, 64
    samples = []
    for _ in range(60):
        phi = sample_random_slater(N, m, rng).phi
        nus = np.linalg.eigvalsh((phi @ phi.conj().T)[:ell, :ell])
        samples.append(np.mean((2 * nus - 1) ** 2))
    se = np.std(samples) / np.sqrt(len(samples))
    assert abs(np.mean(samples) - moment) < 3 * se


# -- averaged binary entropy ----------------------------------------------------

def test_mean_h2_closed_values():
    assert mean_h2_closed(0.5) == pytest.approx(2 * LOG2 - 1, abs=1e-14)
    # direct arithmetic at mu = 1/4
    assert mean_h2_closed(0.25) == pytest.approx(LOG2 - 1 - 3 * np.log(0.75), abs=1e-14)
    # eigenvalues pinch to nu = 1/2 as mu -> 0, so the average tends to log 2
    assert mean_h2_closed(1e-7) == pytest.approx(LOG2, abs=1e-6)


def test_mean_h2_quadrature_matches_closed_form():
    for mu in np.arange(0.05, 0.501, 0.05):
        assert abs(mean_h2_quadrature(mu) - mean_h2_closed(mu)) < 1e-8


def test_mean_h2_quadrature_half_value():
    assert mean_h2_quadrature(0.5) == pytest.approx(0.3862943611, abs=1e-9)


def test_mean_h2_integrand_symmetric():
    # H2((lam+1)/2) rho(lam) is even in lam: half-range doubling agrees
    mu = 0.3
    a = support_edge(mu)

    def f(th):
        lam = a * np.sin(th)
        return binary_entropy((lam + 1) / 2) * jacobi_density(mu, lam) * a * np.cos(th)

    full, _ = integrate.quad(f, -np.pi / 2, np.pi / 2, epsabs=1e-13)
    half, _ = integrate.quad(f, 0, np.pi / 2, epsabs=1e-13)
    assert abs(full - 2 * half) < 1e-10


def test_mean_h2_range_errors():
    for bad in (0.0, 0.51, -1.0):
        with pytest.raises(ValueError):
            mean_h2_closed(bad)
        with pytest.raises(ValueError):
            mean_h2_quadrature(bad)


# -- entropy laws -----------------------------------------------------------

def test_entropy_approx_values():
    N = 64
    assert entropy_approx(N // 2, N) == pytest.approx(N * (LOG2 - 0.5), abs=1e-12)
    assert entropy_approx(0, N) == 0.0
    assert entropy_approx(64, 256) == pytest.approx(64 * mean_h2_closed(0.25), abs=1e-10)
    with pytest.raises(ValueError):
        entropy_approx(33, 64)


def test_digamma_known_values():
    assert digamma(1.0) == pytest.approx(-np.euler_gamma, abs=1e-13)
    assert digamma(2.0) == pytest.approx(1 - np.euler_gamma, abs=1e-13)
    with pytest.raises(ValueError):
        digamma(0.0)


@pytest.mark.parametrize("x", [0.5, 3.7, 100.0])
def test_digamma_recurrence(x):
    assert abs(digamma(x + 1) - digamma(x) - 1 / x) < 1e-12


@settings(max_examples=60, deadline=None)
@given(x=st.floats(min_value=1e-2, max_value=1e4))
def test_digamma_matches_scipy(x):
    ref = float(special.digamma(x))
    assert digamma(x) == pytest.approx(ref, rel=1e-12, abs=1e-12)


def test_entropy_exact_single_site_simplification():
    for N in (16, 64, 256):
        full = entropy_exact(1, N, N // 2)
        simplified = -1 / N + digamma(N) - digamma(N // 2)
        assert full == pytest.approx(simplified, abs=1e-12)


def test_entropy_exact_close_to_approx():
    e_exact = entropy_exact(128, 256, 128)
    e_approx = entropy_approx(128, 256)
    assert abs(e_exact - e_approx) / e_exact < 0.01


def test_entropy_exact_monotone_concave():
    N, m = 64, 32
    vals = np.array([entropy_exact(l, N, m) for l in range(1, N // 2 + 1)])
    assert np.all(np.diff(vals) > 0)
    assert np.all(np.diff(vals, 2) < 1e-12)


def test_entropy_exact_full_filling_convention():
    # at m = N the term with coefficient (m - N) is skipped rather than
    # evaluating digamma at zero; the formula must stay finite
    assert np.isfinite(entropy_exact(8, 16, 16))


def test_entropy_exact_monte_carlo():
    rng = np.random.default_rng(20240609)
    N, m, ell = 64, 32, 16
    vals = []
    for _ in range(400):
        phi = sample_random_slater(N, m, rng).phi
        nus = np.linalg.eigvalsh((phi @ phi.conj().T)[:ell, :ell])
        vals.append(np.sum(binary_entropy(nus)))
    se = np.std(vals) / np.sqrt(len(vals))
    assert abs(np.mean(vals) - entropy_exact(ell, N, m)) < 3 * se


def test_entropy_variance_values():
    # half filling, mu = 1/2: log(1/2) + 1/2 + 1/4
    assert entropy_variance(32, 64, 32) == pytest.approx(np.log(0.5) + 0.75, abs=1e-12)
    assert entropy_variance(1, 10**6, 5 * 10**5) == pytest.approx(0.0, abs=1e-9)


def test_entropy_variance_monte_carlo():
    rng = np.random.default_rng(20240610)
    N, m, ell = 64, 32, 32
    vals = []
    for _ in range(500):
        phi = sample_random_slater(N, m, rng).phi
        nus = np.linalg.eigvalsh((phi @ phi.conj().T)[:ell, :ell])
        vals.append(np.sum(binary_entropy(nus)))
    formula = entropy_variance(ell, N, m)
    assert abs(np.var(vals) - formula) / formula < 0.25


def test_page_law():
    assert page_law(8, 16) == pytest.approx(8 * LOG2 - 0.5, abs=1e-12)
    assert page_law(0, 16) == pytest.approx(-(2.0 ** -17), abs=1e-12)
    # per-site contrast with the Slater ensemble (away from the half cut the
    # Page correction is exponentially small)
    page_per_site = page_law(4, 16) / 4
    slater_per_site = entropy_approx(32, 64) / 32
    assert page_per_site == pytest.approx(LOG2, abs=0.01)
    assert slater_per_site == pytest.approx(2 * LOG2 - 1, abs=1e-12)
    with pytest.raises(ValueError):
        page_law(9, 16)
