"""Stateless figure rendering: one input CSV -> one image file.

Each kind maps a fixed column contract to a matplotlib figure; theory
overlays come from the closed-form set in ``theory`` and are selected by
name.  Output is deterministic for identical inputs (fixed geometry, no
embedded timestamps).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from . import theory
from .io import SchemaError, read_csv, require_columns

KINDS = ("series", "histogram", "profile", "heatmap", "loglog", "cdf")


@dataclass
class FigureSpec:
    input: str
    kind: str
    output: str
    overlays: list[str] = field(default_factory=list)
    column: str = "energy"
    bins: int = 40
    saturate: float = 0.05  # heatmap color-scale cap

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}; expected one of {KINDS}")


def _meta_int(meta: dict, key: str, path) -> int:
    try:
        return int(meta[key])
    except KeyError:
        raise SchemaError(f"{path}: metadata line '# {key}=...' required for this overlay")


def _fig():
    return plt.subplots(figsize=(6.4, 4.2), dpi=120)


def render(spec: FigureSpec) -> str:
    meta, header, data = read_csv(spec.input)
    fig, ax = _fig()
    try:
        if spec.kind == "series":
            cols = require_columns(spec.input, header, ["t"])
            t = data[:, cols["t"]]
            for name in header:
                if name in ("t", "cycle"):
                    continue
                ax.plot(t, data[:, header.index(name)], lw=0.8, label=name)
            ax.set_xlabel("t")
            ax.legend(frameon=False)

        elif spec.kind == "histogram":
            cols = require_columns(spec.input, header, [spec.column])
            vals = data[:, cols[spec.column]]
            counts, edges, _ = ax.hist(vals, bins=spec.bins, color="C0", alpha=0.7)
            if "gaussian_fit" in spec.overlays:
                mu, sigma = vals.mean(), vals.std()
                xs = np.linspace(edges[0], edges[-1], 200)
                width = edges[1] - edges[0]
                pdf = np.exp(-((xs - mu) ** 2) / (2 * sigma**2)) / (sigma * np.sqrt(2 * np.pi))
                ax.plot(xs, pdf * len(vals) * width, "k--", lw=1.2, label="gaussian fit")
                ax.legend(frameon=False)
            ax.set_xlabel(spec.column)
            ax.set_ylabel("count")

        elif spec.kind == "profile":
            cols = require_columns(spec.input, header, ["ell", "entropy_mean"])
            ls = data[:, cols["ell"]]
            ax.plot(ls, data[:, cols["entropy_mean"]], "o", ms=3, label="measured")
            if "entropy_approx" in spec.overlays or "entropy_exact" in spec.overlays:
                N = _meta_int(meta, "N", spec.input)
                half = ls[ls <= N / 2]
                if "entropy_approx" in spec.overlays:
                    ys = theory.entropy_approx(half, N)
                    ax.plot(half, ys, "k-", lw=1, label="volume law")
                    ax.plot(N - half[::-1], ys[::-1], "k-", lw=1)
                if "entropy_exact" in spec.overlays:
                    half_pos = half[half >= 1]
                    ys = theory.entropy_exact(half_pos, N, N // 2)
                    ax.plot(half_pos, ys, "r--", lw=1, label="exact mean")
                    ax.plot(N - half_pos[::-1], ys[::-1], "r--", lw=1)
            if "three_sine" in spec.overlays:
                N = _meta_int(meta, "N", spec.input)
                inner = (ls >= 1) & (ls <= N - 1)
                basis = np.stack(
                    [np.ones(inner.sum()), np.sin(np.pi * ls[inner] / N),
                     np.sin(3 * np.pi * ls[inner] / N)], axis=1
                )
                coef, *_ = np.linalg.lstsq(basis, data[inner, cols["entropy_mean"]], rcond=None)
                ax.plot(ls[inner], basis @ coef, "g-.", lw=1, label="3-sine fit")
            ax.set_xlabel("block size")
            ax.set_ylabel("entropy")
            ax.legend(frameon=False)

        elif spec.kind == "heatmap":
            cols = require_columns(spec.input, header, ["i", "j", "J"])
            i = data[:, cols["i"]].astype(int)
            j = data[:, cols["j"]].astype(int)
            n = int(max(i.max(), j.max()))
            mat = np.zeros((n, n))
            mat[i - 1, j - 1] = data[:, cols["J"]]
            im = ax.imshow(mat, vmin=0.0, vmax=spec.saturate, origin="lower", cmap="viridis")
            fig.colorbar(im, ax=ax, shrink=0.8)
            ax.set_xlabel("site j")
            ax.set_ylabel("site i")

        elif spec.kind == "loglog":
            cols = require_columns(spec.input, header, ["r", "f"])
            r = data[:, cols["r"]]
            f = data[:, cols["f"]]
            keep = f > 0
            ax.loglog(r[keep], f[keep], "o-", ms=3, lw=0.7, label="measured")
            if "power_r2" in spec.overlays:
                anchor = f[keep][min(1, keep.sum() - 1)] * r[keep][min(1, keep.sum() - 1)] ** 2
                rs = np.geomspace(r[keep][0], r[keep][-1], 50)
                ax.loglog(rs, anchor / rs**2, "k--", lw=1, label="r^-2")
            if "uniform" in spec.overlays:
                N = _meta_int(meta, "N", spec.input)
                ax.axhline(1 / N, color="r", ls=":", lw=1, label="1/N")
            ax.set_xlabel("subdiagonal r")
            ax.set_ylabel("link fraction")
            ax.legend(frameon=False)

        elif spec.kind == "cdf":
            cols = require_columns(spec.input, header, ["s_normalized"])
            s = np.sort(data[:, cols["s_normalized"]])
            ax.step(s, np.arange(1, len(s) + 1) / len(s), where="post", label="empirical")
            xs = np.linspace(0, max(3.0, float(s[-1])), 300)
            if "poisson_cdf" in spec.overlays:
                ax.plot(xs, theory.poisson_cdf(xs), "k--", lw=1, label="poisson")
            if "goe_cdf" in spec.overlays:
                ax.plot(xs, theory.goe_cdf(xs), "r-.", lw=1, label="goe")
            ax.set_xlabel("spacing")
            ax.set_ylabel("CDF")
            ax.legend(frameon=False)

        out = Path(spec.output)
        out.parent.mkdir(parents=True, exist_ok=True)
        metadata = {"Date": None} if out.suffix == ".svg" else {}
        fig.savefig(out, metadata=metadata)
        return str(out)
    finally:
        plt.close(fig)
