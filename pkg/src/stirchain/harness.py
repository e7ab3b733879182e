"""Experiment driver, stationary statistics, fits, and persistence.

A run builds the ground state of the clean chain, drives it for a configured
number of obstacle cycles, and records observables at cycle starts (or at
every step).  Series go to CSV with '#'-prefixed metadata lines and full
double precision; every run directory gets a JSON manifest sufficient to
reproduce it.
"""

from __future__ import annotations

import dataclasses
import json
import time
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import stats as sp_stats

from . import entanglement, floquet, observables, rse
from .evolve import ModeMatrix, PropagatorCache, evolve_cycles, ground_state, save_checkpoint
from .lattice import ChainParams, single_body_matrix

CODE_VERSION = "0.1.0"


@dataclass
class ExperimentConfig:
    N: int = 64
    tau: float = 1.0
    n_cycles: int = 1000
    seed: int | None = None
    burn_in_fraction: float = 0.1
    sample_cadence: str = "cycle-start"  # or "per-step"
    reorthonormalize_every: int = 1
    outdir: str = "runs/out"
    # analysis toggles
    energy: bool = True
    entropy: bool = True
    occupations: bool = False
    floquet: bool = False
    links: bool = False
    profile_every: int = 0  # cycles between profile samples, 0 = off
    histogram_bins: int = 40
    checkpoint: bool = False

    def __post_init__(self):
        if self.n_cycles < 1:
            raise ValueError("n_cycles must be >= 1")
        if not 0 <= self.burn_in_fraction < 1:
            raise ValueError("burn_in_fraction must lie in [0, 1)")
        if self.sample_cadence not in ("cycle-start", "per-step"):
            raise ValueError(f"unknown sample cadence {self.sample_cadence!r}")

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        with open(path) as fh:
            return cls(**json.load(fh))

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


@dataclass(frozen=True)
class StationarySummary:
    mean: float
    std: float
    bin_edges: np.ndarray
    counts: np.ndarray
    gauss_mu: float
    gauss_sigma: float
    gauss_p: float
    n_samples: int


def stationary_summary(series, burn_in_fraction: float = 0.1, bins: int = 40) -> StationarySummary:
    """Mean, population std, fixed-count histogram and a moment-matched
    Gaussian fit with chi-square goodness (bins merged to expected >= 5)."""
    series = np.asarray(series, dtype=float)
    kept = series[int(len(series) * burn_in_fraction):]
    if len(kept) < 30:
        raise ValueError(f"need >= 30 samples after burn-in, got {len(kept)}")
    mu, sigma = float(kept.mean()), float(kept.std())
    counts, edges = np.histogram(kept, bins=bins)
    if sigma == 0:
        return StationarySummary(mu, sigma, edges, counts, mu, sigma, 1.0, len(kept))
    expected = np.diff(sp_stats.norm.cdf(edges, mu, sigma)) * len(kept)
    oc, ec = [], []
    o_acc = e_acc = 0.0
    for o, e in zip(counts, expected):
        o_acc += o
        e_acc += e
        if e_acc >= 5:
            oc.append(o_acc)
            ec.append(e_acc)
            o_acc = e_acc = 0.0
    if ec:
        oc[-1] += o_acc
        ec[-1] += e_acc
    oc_arr, ec_arr = np.array(oc), np.array(ec)
    chi2 = float(np.sum((oc_arr - ec_arr) ** 2 / ec_arr))
    dof = max(1, len(ec_arr) - 3)
    p = float(sp_stats.chi2.sf(chi2, dof))
    return StationarySummary(mu, sigma, edges, counts, mu, sigma, p, len(kept))


def pearson_correlation(series_a, series_b) -> float:
    """Centered Pearson coefficient of two equal-length series."""
    a = np.asarray(series_a, dtype=float)
    b = np.asarray(series_b, dtype=float)
    if len(a) != len(b) or len(a) < 30:
        raise ValueError("series must have equal length >= 30")
    sa, sb = a.std(), b.std()
    if sa == 0 or sb == 0:
        raise ZeroDivisionError("correlation undefined for a constant series")
    return float(np.mean((a - a.mean()) * (b - b.mean())) / (sa * sb))


def fit_profile_3sine(profile, N: int) -> tuple[float, float, float, float]:
    """Least-squares fit of S(l) to A + B sin(pi l/N) + C sin(3 pi l/N)
    over l = 1..N-1; returns (A, B, C, rms residual)."""
    profile = np.asarray(profile, dtype=float)
    if len(profile) != N + 1:
        raise ValueError(f"profile must have length N+1 = {N + 1}, got {len(profile)}")
    ls = np.arange(1, N)
    basis = np.stack(
        [np.ones(N - 1), np.sin(np.pi * ls / N), np.sin(3 * np.pi * ls / N)], axis=1
    )
    coef, *_ = np.linalg.lstsq(basis, profile[1:N], rcond=None)
    resid = profile[1:N] - basis @ coef
    return float(coef[0]), float(coef[1]), float(coef[2]), float(np.sqrt(np.mean(resid**2)))


def rebound_time(N: int, tau: float) -> float:
    """Kinematic return time of the initial quench front: 2 N tau/(tau+1)."""
    if tau <= 0:
        raise ValueError("tau must be > 0")
    return 2 * N * tau / (tau + 1)


# -- CSV / manifest plumbing -------------------------------------------------

def _fmt(x) -> str:
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return format(float(x), ".17g")


def write_csv(path, header: list[str], rows, metadata: dict | None = None) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        for key, val in (metadata or {}).items():
            fh.write(f"# {key}={val}\n")
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(_fmt(x) for x in row) + "\n")


def read_csv(path) -> tuple[dict, list[str], np.ndarray]:
    """Read back a harness CSV: (metadata, header, float matrix)."""
    meta: dict[str, str] = {}
    header: list[str] = []
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, val = line[1:].strip().partition("=")
                meta[key.strip()] = val.strip()
            elif not header:
                header = line.split(",")
            else:
                rows.append([float(x) for x in line.split(",")])
    return meta, header, np.array(rows)


def _summary_dict(s: StationarySummary) -> dict:
    return {
        "mean": s.mean,
        "std": s.std,
        "gauss_p": s.gauss_p,
        "n_samples": s.n_samples,
        "bin_edges": list(map(float, s.bin_edges)),
        "counts": list(map(int, s.counts)),
    }


def run_experiment(config: ExperimentConfig, cache: PropagatorCache | None = None) -> dict:
    """Execute one run; returns a result dict and writes CSV/JSON outputs."""
    t_wall = time.time()
    params = ChainParams(N=config.N, tau=config.tau)
    if cache is None:
        cache = PropagatorCache(params)
    outdir = Path(config.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    h0 = single_body_matrix(params)
    h_active = single_body_matrix(params, 1)  # post-switch Hamiltonian at t = cT
    state0 = ground_state(h0, params.m)

    sines_needed = config.occupations
    burn_cycle = int(config.n_cycles * config.burn_in_fraction)

    rows: list[tuple] = []
    occ_acc = np.zeros(params.N)
    occ_cnt = 0
    prof_acc = np.zeros(params.N + 1)
    prof_cnt = 0

    fdata = floquet.floquet_data(params, cache) if config.floquet else None
    half_block = range(1, params.N // 2 + 1)

    def sample(cycle: int, t: float, state: ModeMatrix, obstacle: int = 1):
        nonlocal occ_cnt, prof_cnt
        row = [cycle, t]
        if config.energy:
            h_inst = h_active if obstacle == 1 else single_body_matrix(params, obstacle)
            row.append(observables.energy(state, h_inst))
        if config.entropy:
            row.append(entanglement.block_entropy(state, half_block))
        rows.append(tuple(row))
        if sines_needed and cycle >= burn_cycle:
            occ_acc[:] += observables.mode_occupations(state)
            occ_cnt += 1
        if config.profile_every and cycle >= burn_cycle and cycle % config.profile_every == 0:
            prof_acc[:] += entanglement.entropy_profile(state)
            prof_cnt += 1

    if config.sample_cadence == "cycle-start":
        hooks = {"on_cycle_start": lambda c, t, st: sample(c, t, st)}
    else:
        hooks = {"on_step": lambda c, obs, t, st: sample(c, t, st, obstacle=obs)}
    final = evolve_cycles(
        ModeMatrix(state0.phi.copy()),
        cache,
        config.n_cycles,
        reorthonormalize_every=config.reorthonormalize_every,
        **hooks,
    )

    header = ["cycle", "t"]
    if config.energy:
        header.append("energy")
    if config.entropy:
        header.append("entropy_half")
    meta = {
        "N": config.N,
        "tau": config.tau,
        "n_cycles": config.n_cycles,
        "seed": config.seed,
        "cadence": config.sample_cadence,
        "burn_in_fraction": config.burn_in_fraction,
    }
    write_csv(outdir / "series.csv", header, rows, meta)

    result: dict = {"config": config.to_dict(), "files": ["series.csv"]}
    data = np.array([list(r) for r in rows])
    col = dict(zip(header, range(len(header))))
    if config.energy:
        es = stationary_summary(data[:, col["energy"]], config.burn_in_fraction, config.histogram_bins)
        result["energy"] = _summary_dict(es)
    if config.entropy:
        ss = stationary_summary(data[:, col["entropy_half"]], config.burn_in_fraction, config.histogram_bins)
        result["entropy"] = _summary_dict(ss)
    if config.energy and config.entropy:
        burn = int(len(data) * config.burn_in_fraction)
        result["corr_E_S"] = pearson_correlation(
            data[burn:, col["energy"]], data[burn:, col["entropy_half"]]
        )

    if sines_needed and occ_cnt:
        occ = occ_acc / occ_cnt
        write_csv(
            outdir / "occupations.csv",
            ["k", "occupation_mean"],
            [(k + 1, occ[k]) for k in range(params.N)],
            meta,
        )
        result["files"].append("occupations.csv")
    if config.profile_every and prof_cnt:
        prof = prof_acc / prof_cnt
        write_csv(
            outdir / "profile.csv",
            ["ell", "entropy_mean"],
            [(l, prof[l]) for l in range(params.N + 1)],
            meta,
        )
        result["files"].append("profile.csv")
        a, b, c3, rms = fit_profile_3sine(prof, params.N)
        result["profile_3sine"] = {"A": a, "B": b, "C": c3, "rms": rms}
    if fdata is not None:
        occ_f = floquet.floquet_occupations(fdata, state0)
        write_csv(
            outdir / "floquet.csv",
            ["k", "quasi_energy", "occupation_initial"],
            [(k + 1, fdata.quasi[k], occ_f[k]) for k in range(params.N)],
            meta,
        )
        st = floquet.spacing_statistics(fdata.quasi)
        write_csv(
            outdir / "spacings.csv",
            ["s_normalized"],
            [(s,) for s in np.sort(st.s_normalized)],
            meta,
        )
        result["files"] += ["floquet.csv", "spacings.csv"]
        result["r_tilde"] = st.r_tilde_mean
    if config.links:
        table = entanglement.entanglement_links(final)
        write_csv(
            outdir / "links_J.csv",
            ["i", "j", "J"],
            [
                (i + 1, j + 1, table.J[i, j])
                for i in range(params.N)
                for j in range(params.N)
            ],
            meta,
        )
        write_csv(
            outdir / "links_f.csv",
            ["r", "f"],
            [(r + 1, table.f[r]) for r in range(params.N - 1)],
            meta,
        )
        result["files"] += ["links_J.csv", "links_f.csv"]
    if config.checkpoint:
        save_checkpoint(outdir / "state.json", final, params, config.n_cycles)
        result["files"].append("state.json")

    result["wall_time_s"] = time.time() - t_wall
    with open(outdir / "summary.json", "w") as fh:
        json.dump(result, fh, indent=1)
    manifest = {
        "config": config.to_dict(),
        "code_version": CODE_VERSION,
        "wall_time_s": result["wall_time_s"],
        "files": result["files"],
    }
    with open(outdir / "manifest.json", "w") as fh:
        json.dump(manifest, fh, indent=1)
    return result


def sweep(base: ExperimentConfig, tau_list=None, n_list=None) -> list[dict]:
    """Run one experiment per sweep point and aggregate the headline numbers.

    Each point gets its own subdirectory and derived seed (seed + index).
    Failures are recorded per point and the sweep continues.
    """
    if not tau_list and not n_list:
        raise ValueError("sweep needs a nonempty tau or N axis")
    axis = [("tau", v) for v in (tau_list or [])] + [("N", v) for v in (n_list or [])]
    outdir = Path(base.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    agg_rows = []
    results = []
    for idx, (name, val) in enumerate(axis):
        cfg = dataclasses.replace(
            base,
            outdir=str(outdir / f"{name}_{val}"),
            seed=(base.seed + idx) if base.seed is not None else None,
            floquet=True,
        )
        setattr(cfg, name, val)
        try:
            res = run_experiment(cfg)
            row = (
                val,
                res["energy"]["mean"],
                res["energy"]["std"],
                res["entropy"]["mean"],
                res["entropy"]["std"],
                res["r_tilde"],
                res["corr_E_S"],
            )
            agg_rows.append(row)
            results.append({name: val, "ok": True, **res})
        except Exception as exc:  # keep sweeping on per-point failure
            results.append({name: val, "ok": False, "error": repr(exc)})
    write_csv(
        outdir / "sweep.csv",
        ["point", "E_mean", "E_std", "S_mean", "S_std", "r_tilde", "corr_E_S"],
        agg_rows,
        {"axis": axis[0][0] if axis else "", "base_N": base.N, "base_tau": base.tau},
    )
    with open(outdir / "sweep.json", "w") as fh:
        json.dump(
            [{k: v for k, v in r.items() if k != "config"} for r in results], fh, indent=1
        )
    return results


def verify_reference_table() -> tuple[list[str], list[tuple]]:
    """Analytic reference curves exported for cross-checking plots.

    Rows are (curve, x, y) with curves: jacobi_density_mu<mu>,
    mean_h2_closed, entropy_approx_N64, entropy_exact_N64_m32,
    poisson_cdf, goe_cdf, page_law_N16.
    """
    rows: list[tuple] = []
    for mu in (0.125, 0.25, 0.5):
        a = rse.support_edge(mu)
        for lam in np.linspace(-a * 0.999, a * 0.999, 41):
            rows.append((f"jacobi_density_mu{mu}", lam, rse.jacobi_density(mu, lam)))
    for mu in np.arange(0.05, 0.501, 0.05):
        rows.append(("mean_h2_closed", mu, rse.mean_h2_closed(mu)))
    for ell in range(0, 33):
        rows.append(("entropy_approx_N64", ell, rse.entropy_approx(ell, 64)))
    for ell in range(1, 33):
        rows.append(("entropy_exact_N64_m32", ell, rse.entropy_exact(ell, 64, 32)))
    for s in np.linspace(0.0, 4.0, 41):
        rows.append(("poisson_cdf", s, floquet.poisson_spacing_cdf(s)))
        rows.append(("goe_cdf", s, floquet.goe_spacing_cdf(s)))
    for ell in range(0, 9):
        rows.append(("page_law_N16", ell, rse.page_law(ell, 16)))
    return ["curve", "x", "y"], rows


def write_verify_reference(path) -> None:
    header, rows = verify_reference_table()
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as fh:
        fh.write(",".join(header) + "\n")
        for curve, x, y in rows:
            fh.write(f"{curve},{_fmt(x)},{_fmt(y)}\n")
