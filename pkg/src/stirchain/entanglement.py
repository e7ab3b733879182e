"""Block entanglement spectra, entropies, and entanglement-link matrices.

For a Slater determinant the reduced state of a site block A is Gaussian and
fully determined by the block of the correlation kernel: the entanglement
entropy is S_A = sum_k H2(nu_k) over the eigenvalues of the principal
submatrix of M on A.

The link matrix J assigns a weight to every pair of sites such that, for
every contiguous block, the sum of weights crossing the block boundary
reproduces S_A exactly.  It is built from the table S[i][j] of entropies of
blocks {i, ..., j-1} with periodic index convention (a wrapped block gets
the entropy of its contiguous complement, exact for pure states), as half
the discrete second difference of that table.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .evolve import ModeMatrix

CLAMP = 1e-12
EIG_TOL = 1e-9


def binary_entropy(x):
    """H2(x) = -x log x - (1-x) log(1-x), natural logs, H2(0) = H2(1) = 0.

    Accepts scalars or arrays; values may stray outside [0, 1] by at most
    1e-10 (eigensolver roundoff) and are clamped.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr < -1e-10) or np.any(arr > 1 + 1e-10):
        bad = arr[(arr < -1e-10) | (arr > 1 + 1e-10)]
        raise ValueError(f"argument outside [0,1] tolerance window: {bad[:3]}")
    arr = np.clip(arr, CLAMP, 1 - CLAMP)
    out = -arr * np.log(arr) - (1 - arr) * np.log(1 - arr)
    return float(out) if np.isscalar(x) else out


@dataclass(frozen=True)
class BlockSpectrum:
    """Eigenvalues of the correlation kernel restricted to a site block."""

    block: np.ndarray
    nus: np.ndarray


def _subset_spectrum(kernel: np.ndarray, idx: np.ndarray) -> np.ndarray:
    if len(idx) == 0:
        return np.zeros(0)
    return np.linalg.eigvalsh(kernel[np.ix_(idx, idx)])


def block_spectrum(state: ModeMatrix, block) -> BlockSpectrum:
    """Spectrum of the kernel on a contiguous 1-based site range.

    ``block`` is any iterable of 1-based site indices; it must be contiguous.
    """
    idx = np.asarray(sorted(block), dtype=int)
    if len(idx) > 0:
        if idx[0] < 1 or idx[-1] > state.n_sites:
            raise ValueError("block indices outside 1..N")
        if not np.all(np.diff(idx) == 1):
            raise ValueError("block must be contiguous")
    nus = _subset_spectrum(state.kernel(), idx - 1)
    return BlockSpectrum(block=idx, nus=np.sort(nus))


def block_entropy(state: ModeMatrix, block) -> float:
    """Entanglement entropy of a contiguous block."""
    spec = block_spectrum(state, block)
    if len(spec.nus) == 0:
        return 0.0
    return float(np.sum(binary_entropy(spec.nus)))


def entropy_profile(state: ModeMatrix) -> np.ndarray:
    """Entropies of the left blocks {1..l} for l = 0..N."""
    kernel = state.kernel()
    N = state.n_sites
    prof = np.zeros(N + 1)
    for l in range(1, N):
        # use whichever side is smaller; S(A) = S(complement) for pure states
        idx = np.arange(l) if l <= N - l else np.arange(l, N)
        nus = _subset_spectrum(kernel, idx)
        prof[l] = np.sum(binary_entropy(nus))
    return prof


@dataclass(frozen=True)
class EntropyTable:
    """All-blocks entropy table with its link matrix and subdiagonal fractions.

    S[i][j] is the entropy of the block {i, ..., j-1} (0-based here,
    periodic convention, diagonal = empty block = 0).  J is half the
    periodic second difference of S, so that for any contiguous block the
    total link weight crossing the boundary equals the block entropy.
    f[r-1] is the fraction of total off-diagonal link weight on subdiagonal
    r, normalized so the fractions sum to one.
    """

    S: np.ndarray
    J: np.ndarray
    f: np.ndarray


def entanglement_links(state: ModeMatrix) -> EntropyTable:
    N = state.n_sites
    kernel = state.kernel()
    S = np.zeros((N, N))
    for i in range(N):
        for j in range(i + 1, N):
            ell = j - i
            idx = np.arange(i, j) if ell <= N - ell else np.concatenate(
                [np.arange(j, N), np.arange(0, i)]
            )
            nus = _subset_spectrum(kernel, idx)
            s = float(np.sum(binary_entropy(nus)))
            S[i, j] = S[j, i] = s  # wrapped block = complement, pure state
    ip = (np.arange(N) + 1) % N
    J = 0.5 * (S - S[ip, :] - S[:, ip] + S[np.ix_(ip, ip)])
    sums = np.array([np.sum(np.diagonal(J, offset=r)) for r in range(1, N)])
    f = sums / np.sum(sums)
    return EntropyTable(S=S, J=J, f=f)


def boundary_link_sum(table: EntropyTable, block) -> float:
    """Total link weight crossing the boundary of a site block (any subset
    of 1-based sites); equals the block entropy for contiguous blocks."""
    N = table.J.shape[0]
    mask = np.zeros(N, dtype=bool)
    mask[np.asarray(list(block), dtype=int) - 1] = True
    return float(np.sum(table.J[np.ix_(mask, ~mask)]))
