"""Shared fixtures: the long driven runs are expensive, so the two
acceptance-scale trajectories (slow and fast) and the N=256 Floquet data
are built once per session and shared."""

from __future__ import annotations

import numpy as np
import pytest

from stirchain.evolve import PropagatorCache
from stirchain.harness import ExperimentConfig, run_experiment
from stirchain.lattice import ChainParams


@pytest.fixture(scope="session")
def cache_n64_tau10() -> PropagatorCache:
    return PropagatorCache(ChainParams(N=64, tau=10.0))


@pytest.fixture(scope="session")
def cache_n64_tau025() -> PropagatorCache:
    return PropagatorCache(ChainParams(N=64, tau=0.25))


@pytest.fixture(scope="session")
def cache_n64_tau25() -> PropagatorCache:
    return PropagatorCache(ChainParams(N=64, tau=2.5))


def _run(tmp_path_factory, cache, tau: float, label: str) -> dict:
    cfg = ExperimentConfig(
        N=64,
        tau=tau,
        n_cycles=2000,
        seed=1,
        occupations=True,
        outdir=str(tmp_path_factory.mktemp(label)),
    )
    return run_experiment(cfg, cache=cache)


@pytest.fixture(scope="session")
def slow_run(tmp_path_factory, cache_n64_tau10) -> dict:
    """N=64, tau=10, 2000 cycles, cycle-start sampling."""
    return _run(tmp_path_factory, cache_n64_tau10, 10.0, "slow")


@pytest.fixture(scope="session")
def fast_run(tmp_path_factory, cache_n64_tau025) -> dict:
    """N=64, tau=0.25, 2000 cycles, cycle-start sampling."""
    return _run(tmp_path_factory, cache_n64_tau025, 0.25, "fast")


@pytest.fixture(scope="session")
def quasi_n256():
    """Quasi-energies of the N=256 one-period propagator for tau=2.5, 0.5."""
    from stirchain.floquet import floquet_data

    out = {}
    for tau in (2.5, 0.5):
        params = ChainParams(N=256, tau=tau)
        out[tau] = floquet_data(params)
    return out


def read_series(run: dict) -> dict[str, np.ndarray]:
    from stirchain.harness import read_csv

    meta, header, data = read_csv(str(run["config"]["outdir"]) + "/series.csv")
    return {name: data[:, i] for i, name in enumerate(header)}
