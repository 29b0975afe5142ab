"""Acceptance suite: every headline claim, one test per criterion.

A full `run --scenario all` executes once per session (twice, for the
determinism criterion) and each criterion is asserted from the artifacts
it produced: report.json for values, timings.csv for runtime budgets, and
the data-series CSVs for per-event coverage.  The assertions restate the
stated tolerances explicitly rather than trusting the pass flags.
"""

import csv
import json
import time
from types import SimpleNamespace

import pytest

from pulsedem.cli import main

SEED = "20260819"


def _run_all(out_dir) -> SimpleNamespace:
    t0 = time.perf_counter()
    code = main(["run", "--scenario", "all", "--out", str(out_dir),
                 "--seed", SEED, "--no-figures"])
    wall = time.perf_counter() - t0
    checks = {r["name"]: r for r in
              json.loads((out_dir / "report.json").read_text())}
    with open(out_dir / "timings.csv", newline="") as fh:
        timings = {row["name"]: float(row["runtime_s"])
                   for row in csv.DictReader(fh)}
    prov = json.loads((out_dir / "provenance.json").read_text())
    return SimpleNamespace(code=code, out=out_dir, checks=checks,
                           timings=timings, prov=prov, wall=wall)


@pytest.fixture(scope="module")
def run(tmp_path_factory):
    return _run_all(tmp_path_factory.mktemp("acceptance_run"))


@pytest.fixture(scope="module")
def rerun(tmp_path_factory, run):
    return _run_all(tmp_path_factory.mktemp("acceptance_rerun"))


def _runtime(run, prefixes) -> float:
    return sum(t for name, t in run.timings.items()
               if name.startswith(prefixes))


def _csv_rows(run, stem):
    with open(run.out / f"{stem}.csv", newline="") as fh:
        return list(csv.DictReader(fh))


def test_criterion_01_pulse_calibration(run):
    """Both normalization residuals below 1e-10, found in under a second."""
    assert run.checks["calibrate_mean_residual"]["value"] < 1e-10
    assert run.checks["calibrate_slope_energy_residual"]["value"] < 1e-10
    assert _runtime(run, ("calibrate_",)) < 1.0


def test_criterion_02_coulomb_correspondence(run):
    """Averaged potential within 1e-6 of Q0/r at 50 radii, under 10 s."""
    rows = _csv_rows(run, "correspondence")
    assert len(rows) == 50
    assert all(float(r["rel_err"]) < 1e-6 for r in rows)
    assert run.checks["correspondence_phi_quadrature_max_rel"]["value"] < 1e-6
    assert run.checks["correspondence_phi_tiling_max_rel"]["value"] < 1e-10
    assert _runtime(run, ("correspondence_",)) < 10.0


def test_criterion_03_averaged_residuals_vanish(run):
    """Averaged q below 1e-8 of its peak, averaged B exactly zero, and the
    averaged four-potential divergence-free in a boosted frame."""
    assert run.checks["correspondence_q_residual_ratio"]["value"] < 1e-8
    assert run.checks["correspondence_b_average_max"]["value"] == 0.0
    assert run.checks["lorenz_condition_lab_max"]["value"] < 1e-6


def test_criterion_04_field_equation_convergence(run):
    """Modified-equation residuals shrink at second order (2 +- 0.2) at 20
    random events including boosted frames, under 30 s."""
    rows = _csv_rows(run, "maxwell_residuals")
    assert len(rows) == 20
    assert sum(1 for r in rows if r["frame"] == "boosted") >= 8
    assert all(abs(float(r["order"]) - 2.0) < 0.2 for r in rows)
    assert _runtime(run, ("maxwell_",)) < 30.0


def test_criterion_05_frame_invariance(run):
    """Both tensor invariants and the scalar q agree across boosts to 1e-8,
    with q recomputed by independent finite differences in the lab."""
    assert run.checks["invariant_first_worst_rel"]["value"] < 1e-8
    assert run.checks["invariant_second_worst_scaled"]["value"] < 1e-8
    assert run.checks["q_invariance_worst_rel"]["value"] < 1e-8


def test_criterion_06_energy_conservation(run):
    """Local energy-balance residual converges at second order at 20 events,
    8 of them in a boosted frame."""
    rows = _csv_rows(run, "conservation_orders")
    assert len(rows) == 20
    assert sum(1 for r in rows if r["frame"] == "boosted") == 8
    assert all(abs(float(r["order"]) - 2.0) < 0.2 for r in rows)
    assert run.checks["conservation_order_worst_deviation"]["value"] < 0.2


def test_criterion_07_quantization(run):
    """One pulse carries omega' hbar within 0.1%; the averaged flux matches
    the quantum prediction to 1e-4 at three radii; a 3-pulse train carries
    exactly three quanta; all under 30 s."""
    q = run.checks["energy_quantum"]
    assert abs(q["value"] - q["expected"]) < 1e-3 * q["expected"]
    for name in ("poynting_flux_r0p5", "poynting_flux_r1", "poynting_flux_r2"):
        c = run.checks[name]
        assert abs(c["value"] - c["expected"]) < 1e-4 * c["expected"]
    t = run.checks["energy_train_total_exact"]
    assert t["value"] == t["expected"]
    assert _runtime(run, ("energy_", "poynting_", "classical_")) < 30.0


def test_criterion_08_causality(run):
    """No field anywhere before the switch-on front arrives (to 1e-12), and
    a real wave right after it."""
    assert run.checks["solenoid_causality_max_field"]["value"] <= 1e-12
    assert run.checks["solenoid_wave_after_front"]["value"] == 1.0


def test_criterion_09_solenoid_correspondence(run):
    """Averaged pulsed solenoid reproduces the steady solenoid: exterior
    average below 1e-3 of the interior field, point values within 1e-3,
    axis anchored to the Biot-Savart closed form; scenario under 5 min."""
    ext = run.checks["solenoid_exterior_average_ratio"]
    assert ext["value"] < ext["tol"]  # tol = 1e-3 * measured interior field
    assert run.checks["solenoid_correspondence_worst_rel"]["value"] < 1e-3
    axis = run.checks["solenoid_axis_oracle"]
    assert abs(axis["value"] - axis["expected"]) < 1e-3 * axis["expected"]
    assert run.checks["solenoid_quadrature_doubling"]["value"] < 1e-4
    assert _runtime(run, ("solenoid_",)) < 300.0


def test_criterion_10_loop_circulation(run):
    """Averaged circulation is loop-radius independent to 1%, equals the
    enclosed steady flux, and the instantaneous values genuinely fluctuate."""
    assert run.checks["ab_circulation_match_rel"]["value"] < 1e-2
    for name in ("ab_circulation_inner_vs_flux", "ab_circulation_outer_vs_flux",
                 "ab_flux_oracle_rel"):
        c = run.checks[name]
        assert abs(c["value"] - c["expected"]) < 1e-2 * abs(c["expected"])
    assert run.checks["ab_instantaneous_contrast"]["value"] == 1.0


def test_criterion_11_inverse_recovery(run):
    """Period and pulse shape recovered from q samples alone: period to
    1e-8, shape to 1e-6 of the amplitude."""
    assert run.checks["recover_tau_error"]["value"] < 1e-8
    amp = run.prov["profile"]["amplitude"]
    assert run.checks["recover_pulse_sup_error"]["value"] < 1e-6 * amp


def test_criterion_12_determinism(run, rerun):
    """Same seed, same report: byte-identical report.json on a fresh run."""
    a = (run.out / "report.json").read_bytes()
    b = (rerun.out / "report.json").read_bytes()
    assert a == b


def test_all_checks_pass(run):
    failed = [n for n, c in run.checks.items() if not c["pass"]]
    assert failed == [], f"failed checks: {failed}"
    assert run.code == 0
