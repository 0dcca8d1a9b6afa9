import time

import pytest

import mbph


@pytest.fixture(scope="session")
def tl():
    return mbph.tl_system(1.0, 1.0)


@pytest.fixture(scope="session")
def benchmark_traj():
    return mbph.BenchmarkTrajectory()


@pytest.fixture(scope="session")
def warm_kernel(tl, benchmark_traj):
    """Compile the fast integrator once so timed tests measure compute."""
    cfg = mbph.SimConfig(
        system=tl, trajectory=benchmark_traj, n_elements=4, t_end=0.2, output_every=10**6
    )
    mbph.simulate(cfg)
    return True


@pytest.fixture(scope="session")
def demo_artifacts(tmp_path_factory, warm_kernel):
    """Run the full built-in demo through the CLI once; returns the
    output directory and the wall time it took."""
    from mbph import cli

    out = tmp_path_factory.mktemp("demo")
    t0 = time.perf_counter()
    status = cli.run(["demo-paper", "--out", str(out), "--quiet"])
    elapsed = time.perf_counter() - t0
    assert status == 0
    return out, elapsed
