"""Chain geometry and drive schedule.

The chain has N sites with open boundaries and nearest-neighbour hopping
amplitude 1/2, written as H = -sum_ij h_ij c^dag_i c_j with h real symmetric.
An obstacle at position i (1-based, i in 1..N-3) suppresses the hopping on
the bond between sites i+1 and i+2, splitting the chain into two fragments
of size >= 2 each.  The obstacle steps rightward through all N-3 positions,
dwelling a time tau on each, and the sequence repeats with period
T = (N-3)*tau.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class ChainParams:
    """Size, dwell time and particle number of the driven chain."""

    N: int
    tau: float
    m: int = field(default=-1)

    def __post_init__(self):
        if self.N < 6 or self.N % 2 != 0:
            raise ValueError(f"N must be even and >= 6, got {self.N}")
        if self.tau < 0:
            raise ValueError(f"tau must be >= 0, got {self.tau}")
        if self.m == -1:
            object.__setattr__(self, "m", self.N // 2)
        if not 0 <= self.m <= self.N:
            raise ValueError(f"m must lie in 0..N, got {self.m}")

    @property
    def n_positions(self) -> int:
        """Number of obstacle positions per cycle."""
        return self.N - 3

    @property
    def period(self) -> float:
        return self.n_positions * self.tau

    @property
    def velocity(self) -> float:
        return 1.0 / self.tau


@dataclass(frozen=True)
class HoppingMatrix:
    """Real symmetric single-body coefficient matrix h_ij.

    Nonzero entries (value 1/2) sit only on the first off-diagonal, so the
    matrix is bipartite with respect to even/odd sites and its spectrum is
    symmetric about zero.
    """

    entries: np.ndarray
    obstacle: int | None = None

    @property
    def n(self) -> int:
        return self.entries.shape[0]


def single_body_matrix(params: ChainParams, obstacle: int | None = None) -> HoppingMatrix:
    """Hopping matrix of the clean chain, or with one bond cut.

    With ``obstacle = i`` the bond between sites i+1 and i+2 (1-based) is
    removed; i must lie in 1..N-3 so that neither fragment is a single site.
    """
    N = params.N
    if obstacle is not None and not 1 <= obstacle <= N - 3:
        raise ValueError(f"obstacle must lie in 1..{N - 3}, got {obstacle}")
    h = np.zeros((N, N))
    off = np.full(N - 1, 0.5)
    if obstacle is not None:
        off[obstacle] = 0.0  # 0-based bond index i connects sites i+1, i+2 (1-based)
    idx = np.arange(N - 1)
    h[idx, idx + 1] = off
    h[idx + 1, idx] = off
    h.setflags(write=False)
    return HoppingMatrix(entries=h, obstacle=obstacle)


def obstacle_at(t: float, params: ChainParams) -> int:
    """Obstacle position active at time t (half-open dwell intervals).

    Returns 1 + (floor(t/tau) mod (N-3)); the switch happens exactly at
    multiples of tau, with the post-switch position reported there.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    q = t / params.tau
    k = math.floor(q)
    # snap against roundoff when t is meant to be an exact multiple of tau
    if q - k > 1 - 1e-9 * max(1.0, abs(q)):
        k += 1
    return 1 + (k % params.n_positions)


def all_hopping_matrices(params: ChainParams) -> list[HoppingMatrix]:
    """The N-3 obstacle matrices in drive order (positions 1..N-3)."""
    return [single_body_matrix(params, i) for i in range(1, params.N - 2)]
