"""The simulation package is exercised only through its command-line
interface here; these fixtures generate the CSV inputs the figure tests
consume, at the same configurations the simulation's acceptance criteria
use (slow-regime run, N=256 spectral analysis, long-term link matrices)."""

import shutil
import subprocess
import sys

import pytest


def run_cli(*args: str) -> subprocess.CompletedProcess:
    exe = shutil.which("stirchain")
    cmd = [exe] if exe else [sys.executable, "-m", "stirchain.cli"]
    return subprocess.run(
        [*cmd, *args], capture_output=True, text=True, check=True
    )


@pytest.fixture(scope="session")
def run_dir(tmp_path_factory):
    """Slow-regime driven run (N=64, tau=10, 2000 cycles) with every output
    enabled: series, profile, occupations, Floquet spectrum, links."""
    out = tmp_path_factory.mktemp("rundata")
    run_cli(
        "run",
        "--N", "64",
        "--tau", "10.0",
        "--cycles", "2000",
        "--seed", "1",
        "--occupations",
        "--floquet",
        "--links",
        "--profile-every", "10",
        "--out", str(out),
    )
    return out


@pytest.fixture(scope="session")
def links_dir(tmp_path_factory):
    """Long-term tau=5 state, link matrix and subdiagonal fractions."""
    out = tmp_path_factory.mktemp("linksdata")
    run_cli(
        "run",
        "--N", "64",
        "--tau", "5.0",
        "--cycles", "2000",
        "--seed", "1",
        "--links",
        "--out", str(out),
    )
    return out


@pytest.fixture(scope="session")
def floquet_dir(tmp_path_factory):
    """Spectral-only analysis of the N=256, tau=2.5 period propagator."""
    out = tmp_path_factory.mktemp("floquetdata")
    run_cli("floquet", "--N", "256", "--tau", "2.5", "--out", str(out))
    return out


@pytest.fixture(scope="session")
def reference_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("ref") / "reference.csv"
    run_cli("verify", "--reference-csv", str(path))
    return path
