"""Smoke tests for the Python bindings and the CLI binary."""

import math
import os
import subprocess
import sys

import numpy as np
import pytest

ghzpump = pytest.importorskip("ghzpump")


def test_version():
    assert ghzpump.__version__


def test_ghz_state_and_fidelity():
    ghz = ghzpump.ghz_state(3, 1)
    rho = ghzpump.DensityMatrix.pure(ghz)
    assert ghzpump.fidelity(rho, ghz) == pytest.approx(1.0, abs=1e-12)
    mixed = ghzpump.DensityMatrix.maximally_mixed(3)
    assert ghzpump.fidelity(mixed, ghz) == pytest.approx(1.0 / 8.0, abs=1e-12)


def test_basis_change_involution():
    ghz = ghzpump.ghz_state(3, 1)
    x = ghzpump.basis_change(ghz, ghzpump.Basis.X)
    back = ghzpump.basis_change(x, ghzpump.Basis.Z)
    assert np.max(np.abs(back.amps - ghz.amps)) < 1e-12


def test_lambert_w_anchor():
    w = ghzpump.lambert_w(-1, -0.2 / math.e**2)
    assert w == pytest.approx(-5.2718, abs=1e-3)


def test_bn_kappa_table():
    b, kappa = ghzpump.bn_kappa(2)
    assert b == pytest.approx(55.0, abs=1.0)
    assert kappa == pytest.approx(0.28, abs=0.01)


def test_weak_params():
    p = ghzpump.weak_drive_params(4, 0.05)
    assert p.gamma == pytest.approx(0.0491, abs=2e-4)
    assert p.a_f[0] == 1.0


def test_effective_evolution_reaches_ghz():
    p = ghzpump.weak_drive_params(2, 0.1, 0.3)
    sys_params = p.system(1.0)
    sched = p.schedule(1.0)
    mz = ghzpump.build_effective_model(ghzpump.Basis.Z, sched, sys_params)
    mx = ghzpump.build_effective_model(ghzpump.Basis.X, sched, sys_params)
    combined = ghzpump.combine_effective_models(mz, mx, ghzpump.Basis.Z)
    gz = ghzpump.sector_transfer_rate(1, sched, sys_params)
    cfg = ghzpump.IntegratorConfig()
    cfg.max_time = 60.0 / gz
    cfg.samples = 50
    trace = ghzpump.evolve(combined.to_lindblad(), ghzpump.DensityMatrix.maximally_mixed(2), cfg)
    assert not trace["failed"]
    assert trace["ghz_fidelity"][-1] > 0.9
    assert max(trace["trace_dev"]) < 1e-9


def test_steady_state():
    p = ghzpump.weak_drive_params(3, 0.05, 0.2)
    mz = ghzpump.build_effective_model(ghzpump.Basis.Z, p.schedule(1.0), p.system(1.0))
    mx = ghzpump.build_effective_model(ghzpump.Basis.X, p.schedule(1.0), p.system(1.0))
    combined = ghzpump.combine_effective_models(mz, mx, ghzpump.Basis.Z)
    result = ghzpump.steady_state(combined.to_lindblad())
    assert not result["degenerate"]
    rho = result["states"][0]
    assert ghzpump.fidelity(rho, ghzpump.ghz_state(3, 1)) > 0.95


def test_cli_ratemodel(tmp_path):
    cli = os.environ.get("GHZPUMP_CLI")
    if not cli or not os.path.exists(cli):
        pytest.skip("CLI binary not available")
    cfg = tmp_path / "run.cfg"
    cfg.write_text("ratemodel.n_list = 2,10\n")
    out = tmp_path / "out"
    subprocess.run(
        [cli, "ratemodel", "--config", str(cfg), "--out", str(out)],
        check=True,
        stdout=subprocess.PIPE,
    )
    lines = (out / "ratemodel.csv").read_text().splitlines()
    data = [l for l in lines if l and not l.startswith("#") and not l.startswith("n_qubits")]
    assert len(data) == 2
    b2 = float(data[0].split(",")[1])
    assert b2 == pytest.approx(55.0, abs=1.0)

    bad = tmp_path / "bad.cfg"
    bad.write_text("no.such.key = 1\n")
    proc = subprocess.run([cli, "simulate", "--config", str(bad), "--out", str(out)],
                          stderr=subprocess.PIPE)
    assert proc.returncode == 2
    assert b"no.such.key" in proc.stderr


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
