import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from stirchain.lattice import ChainParams, obstacle_at, single_body_matrix


def test_clean_chain_entries():
    # N=4 is below the driven-chain minimum, so build the matrix directly
    h = single_body_matrix(ChainParams(N=6, tau=1.0)).entries
    assert h[0, 1] == h[1, 2] == h[2, 3] == h[3, 4] == h[4, 5] == 0.5
    assert np.allclose(h, h.T)
    off = np.eye(6, k=1) + np.eye(6, k=-1)
    assert np.all(h[off == 0] == 0)


def test_obstacle_breaks_one_bond():
    h = single_body_matrix(ChainParams(N=6, tau=1.0), obstacle=1).entries
    assert h[1, 2] == 0 and h[2, 1] == 0  # sites 2,3 in 1-based labels
    assert h[0, 1] == h[2, 3] == h[3, 4] == h[4, 5] == 0.5


@pytest.mark.parametrize("obstacle", [0, 4, -1, 100])
def test_obstacle_out_of_range(obstacle):
    with pytest.raises(ValueError):
        single_body_matrix(ChainParams(N=6, tau=1.0), obstacle=obstacle)


@settings(max_examples=30, deadline=None)
@given(
    N=st.integers(min_value=3, max_value=24).map(lambda k: 2 * k),
    obstacle=st.integers(min_value=0, max_value=10**6),
)
def test_spectrum_particle_hole_symmetric(N, obstacle):
    params = ChainParams(N=N, tau=1.0)
    obs = 1 + obstacle % (N - 3)
    w = np.sort(np.linalg.eigvalsh(single_body_matrix(params, obs).entries))
    assert np.max(np.abs(w + w[::-1])) < 1e-12  # eps_k = -eps_{N+1-k}


def test_obstacle_splits_two_components():
    N = 12
    params = ChainParams(N=N, tau=1.0)
    for obs in range(1, N - 2):
        h = single_body_matrix(params, obs).entries
        adj = h != 0
        # breadth-first reachability from site 0
        seen = np.zeros(N, dtype=bool)
        frontier = [0]
        seen[0] = True
        while frontier:
            nxt = []
            for i in frontier:
                for j in np.nonzero(adj[i])[0]:
                    if not seen[j]:
                        seen[j] = True
                        nxt.append(j)
            frontier = nxt
        left = int(seen.sum())
        assert 2 <= left <= N - 2  # two fragments, neither a single site


def test_obstacle_schedule_examples():
    params = ChainParams(N=64, tau=2.5)
    assert obstacle_at(0.0, params) == 1
    assert obstacle_at(2.4999, params) == 1
    assert obstacle_at(params.period, params) == 1
    assert obstacle_at((64 - 4) * 2.5, params) == 61


def test_obstacle_negative_time():
    with pytest.raises(ValueError):
        obstacle_at(-0.1, ChainParams(N=8, tau=1.0))


@settings(max_examples=50, deadline=None)
@given(t=st.floats(min_value=0, max_value=1e4), k=st.integers(min_value=1, max_value=5))
def test_obstacle_schedule_periodic(t, k):
    params = ChainParams(N=10, tau=0.7)
    assert obstacle_at(t, params) == obstacle_at(t + k * params.period, params)


def test_params_validation():
    with pytest.raises(ValueError):
        ChainParams(N=5, tau=1.0)
    with pytest.raises(ValueError):
        ChainParams(N=4, tau=1.0)
    with pytest.raises(ValueError):
        ChainParams(N=8, tau=-1.0)
    p = ChainParams(N=8, tau=2.0)
    assert p.m == 4
    assert p.period == 10.0
    assert p.n_positions == 5
