"""Reader for the simulation CSV contract: '#'-prefixed key=value metadata
lines, one header row, full-precision numeric rows."""

from __future__ import annotations

import numpy as np


class SchemaError(ValueError):
    """Input columns do not match what the figure kind needs."""


def read_csv(path) -> tuple[dict, list[str], np.ndarray]:
    meta: dict[str, str] = {}
    header: list[str] = []
    rows: list[list[float]] = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                key, _, val = line[1:].strip().partition("=")
                meta[key.strip()] = val.strip()
            elif not header:
                header = [c.strip() for c in line.split(",")]
            else:
                rows.append([float(x) for x in line.split(",")])
    if not header:
        raise SchemaError(f"{path}: no header row found")
    return meta, header, np.asarray(rows, dtype=float)


def require_columns(path, header: list[str], needed: list[str]) -> dict[str, int]:
    missing = [c for c in needed if c not in header]
    if missing:
        raise SchemaError(
            f"{path}: missing column(s) {missing}; found columns {header}"
        )
    return {name: header.index(name) for name in needed}
