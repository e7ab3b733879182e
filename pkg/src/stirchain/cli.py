"""Command-line interface.

Subcommands: run (single experiment), sweep (tau or N axis), floquet
(spectral analysis only), rse (ensemble sampling and law checks), links
(entanglement-link matrix of a checkpoint), verify (analytic cross-check
suite and reference-curve export).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np

from . import entanglement, floquet, harness, rse
from .evolve import load_checkpoint
from .harness import ExperimentConfig
from .lattice import ChainParams


def _add_config_flags(p: argparse.ArgumentParser, seed_required: bool) -> None:
    p.add_argument("--config", type=str, help="JSON file with ExperimentConfig fields")
    p.add_argument("--N", type=int)
    p.add_argument("--tau", type=float)
    p.add_argument("--cycles", type=int, dest="n_cycles")
    p.add_argument("--seed", type=int, required=seed_required)
    p.add_argument("--burn-in", type=float, dest="burn_in_fraction")
    p.add_argument("--cadence", choices=["cycle-start", "per-step"], dest="sample_cadence")
    p.add_argument("--reorth-every", type=int, dest="reorthonormalize_every")
    p.add_argument("--out", type=str, dest="outdir")
    p.add_argument("--no-energy", action="store_false", default=None, dest="energy")
    p.add_argument("--no-entropy", action="store_false", default=None, dest="entropy")
    p.add_argument("--occupations", action="store_true", default=None)
    p.add_argument("--floquet", action="store_true", default=None)
    p.add_argument("--links", action="store_true", default=None)
    p.add_argument("--profile-every", type=int, dest="profile_every")
    p.add_argument("--bins", type=int, dest="histogram_bins")
    p.add_argument("--checkpoint", action="store_true", default=None)


def _build_config(args) -> ExperimentConfig:
    cfg = ExperimentConfig.from_json(args.config) if args.config else ExperimentConfig()
    for f in dataclasses.fields(ExperimentConfig):
        val = getattr(args, f.name, None)
        if val is not None:
            setattr(cfg, f.name, val)
    cfg.__post_init__()
    return cfg


def cmd_run(args) -> int:
    cfg = _build_config(args)
    res = harness.run_experiment(cfg)
    print(json.dumps({k: res[k] for k in res if k not in ("files",)}, indent=1, default=str))
    return 0


def cmd_sweep(args) -> int:
    cfg = _build_config(args)
    taus = [float(x) for x in args.tau_list.split(",")] if args.tau_list else None
    ns = [int(x) for x in args.N_list.split(",")] if args.N_list else None
    results = harness.sweep(cfg, tau_list=taus, n_list=ns)
    bad = [r for r in results if not r.get("ok")]
    for r in bad:
        print(f"point failed: {r}", file=sys.stderr)
    print(f"sweep complete, {len(results) - len(bad)}/{len(results)} points ok")
    return 1 if len(bad) == len(results) else 0


def cmd_floquet(args) -> int:
    params = ChainParams(N=args.N, tau=args.tau)
    data = floquet.floquet_data(params)
    st = floquet.spacing_statistics(data.quasi)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    meta = {"N": args.N, "tau": args.tau}
    harness.write_csv(
        outdir / "quasi_energies.csv",
        ["k", "quasi_energy"],
        [(k + 1, e) for k, e in enumerate(data.quasi)],
        meta,
    )
    harness.write_csv(
        outdir / "spacings.csv",
        ["s_normalized"],
        [(s,) for s in np.sort(st.s_normalized)],
        meta,
    )
    print(json.dumps({"N": args.N, "tau": args.tau, "r_tilde": st.r_tilde_mean}))
    return 0


def cmd_rse(args) -> int:
    rng = np.random.default_rng(args.seed)
    geom = rse.RseParams(N=args.N, m=args.m if args.m else args.N // 2, ell=args.ell)
    N, m, ell = geom.N, geom.m, geom.ell
    samples = []
    for _ in range(args.samples):
        state = rse.sample_random_slater(N, m, rng)
        nus = np.linalg.eigvalsh(state.kernel()[:ell, :ell])
        samples.append(np.sum(entanglement.binary_entropy(nus)))
    mc_mean = float(np.mean(samples))
    mc_se = float(np.std(samples) / np.sqrt(len(samples)))
    report = {
        "N": N,
        "m": m,
        "ell": ell,
        "samples": args.samples,
        "entropy_mc": mc_mean,
        "entropy_mc_se": mc_se,
        "entropy_exact": rse.entropy_exact(ell, N, m),
        "entropy_approx": rse.entropy_approx(ell, N),
        "entropy_variance": rse.entropy_variance(ell, N, m),
    }
    print(json.dumps(report, indent=1))
    return 0


def cmd_links(args) -> int:
    state, params, cycle = load_checkpoint(args.checkpoint_file)
    table = entanglement.entanglement_links(state)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    meta = {"N": params.N, "tau": params.tau, "cycle": cycle}
    harness.write_csv(
        outdir / "links_J.csv",
        ["i", "j", "J"],
        [(i + 1, j + 1, table.J[i, j]) for i in range(params.N) for j in range(params.N)],
        meta,
    )
    harness.write_csv(
        outdir / "links_f.csv",
        ["r", "f"],
        [(r + 1, table.f[r]) for r in range(params.N - 1)],
        meta,
    )
    print(f"links written to {outdir}")
    return 0


def cmd_verify(args) -> int:
    """Analytic cross-checks: closed forms vs quadrature and known limits."""
    checks = []
    worst = 0.0
    for mu in np.arange(0.05, 0.501, 0.05):
        diff = abs(rse.mean_h2_quadrature(mu) - rse.mean_h2_closed(mu))
        worst = max(worst, diff)
    checks.append(("mean_h2 quadrature vs closed (worst over mu grid)", worst, 1e-8))
    from scipy import integrate

    for mu in (0.1, 0.25, 0.5):
        a = rse.support_edge(mu)
        val, _ = integrate.quad(
            lambda th: rse.jacobi_density(mu, a * np.sin(th)) * a * np.cos(th),
            -np.pi / 2,
            np.pi / 2,
        )
        checks.append((f"jacobi density normalization mu={mu}", abs(val - 1), 1e-8))
    val, _ = integrate.quad(floquet.poisson_spacing_pdf, 0, np.inf)
    checks.append(("poisson pdf normalization", abs(val - 1), 1e-10))
    val, _ = integrate.quad(floquet.goe_spacing_pdf, 0, np.inf)
    checks.append(("goe pdf normalization", abs(val - 1), 1e-10))
    checks.append(
        ("digamma recurrence at x=3.7", abs(rse.digamma(4.7) - rse.digamma(3.7) - 1 / 3.7), 1e-12)
    )
    checks.append(
        (
            "entropy_exact vs approx rel diff, N=256 l=128",
            abs(rse.entropy_exact(128, 256, 128) - rse.entropy_approx(128, 256))
            / rse.entropy_exact(128, 256, 128),
            0.01,
        )
    )
    ok = True
    for name, val, tol in checks:
        status = "ok" if val <= tol else "FAIL"
        ok &= val <= tol
        print(f"{status:4s} {name}: {val:.3e} (tol {tol:.0e})")
    if args.reference_csv:
        harness.write_verify_reference(args.reference_csv)
        print(f"reference curves written to {args.reference_csv}")
    return 0 if ok else 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="stirchain")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="single experiment")
    _add_config_flags(p, seed_required=True)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="sweep over tau or N")
    _add_config_flags(p, seed_required=True)
    p.add_argument("--tau-list", type=str, help="comma-separated tau values")
    p.add_argument("--N-list", type=str, help="comma-separated N values")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("floquet", help="spectral analysis of the one-period propagator")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--tau", type=float, required=True)
    p.add_argument("--out", type=str, dest="outdir", default="runs/floquet")
    p.set_defaults(func=cmd_floquet)

    p = sub.add_parser("rse", help="random-ensemble sampling and law verification")
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--samples", type=int, default=500)
    p.add_argument("--seed", type=int, required=True)
    p.set_defaults(func=cmd_rse)

    p = sub.add_parser("links", help="entanglement links of a checkpoint")
    p.add_argument("checkpoint_file", type=str)
    p.add_argument("--out", type=str, dest="outdir", default="runs/links")
    p.set_defaults(func=cmd_links)

    p = sub.add_parser("verify", help="analytic cross-check suite")
    p.add_argument("--reference-csv", type=str, default="")
    p.set_defaults(func=cmd_verify)

    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
