"""Exact piecewise-constant time evolution of the occupied-mode matrix.

The many-body state is a Slater determinant held as an N x m matrix phi of
orthonormal occupied modes; the correlation kernel is M = phi phi^dag.  The
single-particle Hamiltonian is h_sp = -h (so the ground-state energy is
negative), and one dwell interval is advanced by the exact exponential
g = exp(-i h_sp tau), built from the eigendecomposition of h.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .lattice import ChainParams, HoppingMatrix, all_hopping_matrices

ORTHO_TOL = 1e-10
UNITARY_TOL = 1e-12


@dataclass
class ModeMatrix:
    """Occupied single-particle modes; columns orthonormal."""

    phi: np.ndarray

    @property
    def n_sites(self) -> int:
        return self.phi.shape[0]

    @property
    def n_particles(self) -> int:
        return self.phi.shape[1]

    def kernel(self) -> np.ndarray:
        """Correlation kernel M = phi phi^dag (Hermitian projector, trace m)."""
        return self.phi @ self.phi.conj().T

    def orthonormality_defect(self) -> float:
        g = self.phi.conj().T @ self.phi
        return float(np.max(np.abs(g - np.eye(self.n_particles))))

    def copy(self) -> "ModeMatrix":
        return ModeMatrix(self.phi.copy())


@dataclass(frozen=True)
class StepPropagator:
    """Unitary advancing the state over one dwell interval."""

    g: np.ndarray
    obstacle: int | None
    tau: float


def _phase_fixed_qr(a: np.ndarray) -> np.ndarray:
    """QR orthonormalization with the triangular factor's diagonal made
    positive real; near-orthonormal input comes back almost unchanged."""
    q, r = np.linalg.qr(a)
    d = np.diagonal(r).copy()
    d[d == 0] = 1.0
    return q * (d / np.abs(d))


def ground_state(h: HoppingMatrix, m: int) -> ModeMatrix:
    """Fill the m lowest modes of the single-particle Hamiltonian -h.

    Ordering is deterministic: eigh ascending plus a sign convention making
    the largest-magnitude entry of each mode positive.
    """
    if m > h.n:
        raise ValueError(f"m={m} exceeds chain size {h.n}")
    _, vecs = np.linalg.eigh(-h.entries)
    phi = vecs[:, :m].astype(complex)
    for k in range(m):
        j = int(np.argmax(np.abs(phi[:, k])))
        if phi[j, k].real < 0:
            phi[:, k] = -phi[:, k]
    return ModeMatrix(phi)


def step_propagator(h: HoppingMatrix, tau: float) -> StepPropagator:
    """Exact dwell-interval propagator g = exp(-i h_sp tau), h_sp = -h."""
    if tau < 0:
        raise ValueError(f"tau must be >= 0, got {tau}")
    w, v = np.linalg.eigh(h.entries)
    g = (v * np.exp(1j * w * tau)) @ v.T  # v real orthogonal for real h
    return StepPropagator(g=g, obstacle=h.obstacle, tau=tau)


def advance(state: ModeMatrix, prop: StepPropagator) -> ModeMatrix:
    """Apply one dwell interval: phi <- g phi."""
    if prop.g.shape[1] != state.n_sites:
        raise ValueError(
            f"propagator dimension {prop.g.shape[1]} does not match state {state.n_sites}"
        )
    return ModeMatrix(prop.g @ state.phi)


class PropagatorCache:
    """Step propagators for all N-3 obstacle positions at fixed (N, tau).

    Built once per parameter set; immutable afterwards and safe to share.
    The ordered product over one cycle (earliest step applied first) is
    exposed as ``cycle_propagator`` for drivers that only observe the state
    at cycle boundaries.
    """

    def __init__(self, params: ChainParams):
        self.params = params
        self.steps: list[StepPropagator] = [
            step_propagator(h, params.tau) for h in all_hopping_matrices(params)
        ]
        u = np.eye(params.N, dtype=complex)
        for p in self.steps:
            u = p.g @ u
        self.cycle_propagator = u


def evolve_cycles(
    state: ModeMatrix,
    cache: PropagatorCache,
    n_cycles: int,
    on_cycle_start: Callable[[int, float, ModeMatrix], None] | None = None,
    on_step: Callable[[int, int, float, ModeMatrix], None] | None = None,
    reorthonormalize_every: int = 1,
) -> ModeMatrix:
    """Drive the state through n_cycles full obstacle sweeps.

    ``on_cycle_start(cycle, t, state)`` fires at t = c*T for c in
    0..n_cycles-1, before the cycle's steps are applied.
    ``on_step(cycle, obstacle, t, state)`` fires at each step start.  Hooks
    receive the live state and must not mutate it.  The mode matrix is
    re-orthonormalized (phase-fixed QR) every ``reorthonormalize_every``
    cycles.  When no per-step hook is given, each cycle is applied as the
    precomputed one-period product, which is the same matrix product in a
    different association order.
    """
    if n_cycles < 1:
        raise ValueError(f"n_cycles must be >= 1, got {n_cycles}")
    params = cache.params
    tau, n_pos = params.tau, params.n_positions
    phi = state.phi.copy()
    live = ModeMatrix(phi)
    for c in range(n_cycles):
        t0 = c * params.period
        if on_cycle_start is not None:
            on_cycle_start(c, t0, live)
        if on_step is None:
            phi = cache.cycle_propagator @ phi
        else:
            for s in range(n_pos):
                on_step(c, s + 1, t0 + s * tau, live)
                phi = cache.steps[s].g @ phi
                live.phi = phi
        live.phi = phi
        if reorthonormalize_every > 0 and (c + 1) % reorthonormalize_every == 0:
            phi = _phase_fixed_qr(phi)
            live.phi = phi
    return live


# -- checkpoint container ---------------------------------------------------

CHECKPOINT_VERSION = 1


def save_checkpoint(path, state: ModeMatrix, params: ChainParams, cycle: int) -> None:
    """Write a versioned JSON checkpoint; doubles round-trip bit-exactly."""
    flat = state.phi.ravel(order="C")
    payload = {
        "version": CHECKPOINT_VERSION,
        "params": {"N": params.N, "tau": params.tau, "m": params.m},
        "cycle": cycle,
        "shape": list(state.phi.shape),
        "phi": [x for z in flat for x in (z.real, z.imag)],
    }
    with open(path, "w") as fh:
        json.dump(payload, fh)


def load_checkpoint(path) -> tuple[ModeMatrix, ChainParams, int]:
    with open(path) as fh:
        payload = json.load(fh)
    if payload.get("version") != CHECKPOINT_VERSION:
        raise ValueError(f"unsupported checkpoint version {payload.get('version')!r}")
    raw = np.asarray(payload["phi"], dtype=float)
    phi = (raw[0::2] + 1j * raw[1::2]).reshape(payload["shape"])
    p = payload["params"]
    return (
        ModeMatrix(phi),
        ChainParams(N=p["N"], tau=p["tau"], m=p["m"]),
        int(payload["cycle"]),
    )
