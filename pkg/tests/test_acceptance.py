"""Acceptance gate: twelve numbered criteria, one verdict line each.

Each test prints "ACCEPTANCE nn PASS" or "ACCEPTANCE nn FAIL" on the real
terminal (bypassing capture) so a full run always shows the scoreboard.
"""

import json
import time
from contextlib import contextmanager

import numpy as np
import pytest

from lindtherm import (
    BathAssignment,
    DensityMatrix,
    GklsGenerator,
    LindbladTerm,
    average_power_fast,
    average_power_resolvent,
    dag,
    detailed_balance_report,
    entropy_production,
    ergotropy,
    evolve,
    evolve_driven,
    gibbs_state,
    heat_currents,
    law_residuals,
    stationary_state,
    thermal_family,
)
from lindtherm.cli import main
from lindtherm.models.chem import (
    BirthDeathState,
    ChemSpec,
    analytic_amplitude,
    analytic_energy,
    birth_death_evolve,
    coherent_state,
    evolve_oscillator,
    gillespie_ensemble,
)
from lindtherm.models.pv import (
    PvSpec,
    open_circuit_voltage,
    pv_power_current,
    pv_power_fast_ansatz,
)

from conftest import random_state, random_thermal_model, triangle_generator, unit

LN2 = np.log(2.0)
KB = 8.617333262e-5  # eV/K


@pytest.fixture
def verdict(capsys):
    @contextmanager
    def _line(n):
        ok = False
        try:
            yield
            ok = True
        finally:
            with capsys.disabled():
                print(f"\nACCEPTANCE {n:02d} {'PASS' if ok else 'FAIL'}")

    return _line


def test_criterion_01_entropy_production_never_negative(verdict):
    with verdict(1):
        start = time.perf_counter()
        rng = np.random.default_rng(2026)
        times = np.linspace(0.0, 5.0, 26)
        for _ in range(20):
            dim = int(rng.integers(2, 7))
            gen, beta = random_thermal_model(rng, dim)
            rho_bar = gibbs_state(gen.hamiltonian, beta)
            traj = evolve(gen, DensityMatrix(random_state(rng, dim)), times)
            for st in traj.states:
                assert entropy_production(gen, st, rho_bar) >= -1e-10
        assert time.perf_counter() - start < 10.0


def test_criterion_02_hand_computed_sigma_and_current(verdict):
    with verdict(2):
        h = np.diag([0.0, LN2]).astype(complex)
        a = unit(0, 1, 2)
        gen = GklsGenerator(h, (LindbladTerm(a, 1.0, "b"),
                                LindbladTerm(dag(a), 0.5, "b")))
        rho = DensityMatrix(np.eye(2, dtype=complex) / 2.0)
        sigma = entropy_production(gen, rho, gibbs_state(h, 1.0))
        j = heat_currents(gen, [BathAssignment("b", 1.0)], rho).total
        assert abs(sigma - 0.173287) < 1e-5
        assert abs(j - (-0.173287)) < 1e-5


def _two_bath_qubit_family():
    h0 = np.diag([0.0, 1.0]).astype(complex)
    sx = unit(0, 1, 2) + unit(1, 0, 2)
    return thermal_family(
        h0, np.diag([0.0, 0.3]),
        [(sx, 2.0, 0.8, "cold"), (sx, 0.5, 0.6, "hot")],
        amplitude=0.4, frequency=2.0,
    )


def test_criterion_03_first_and_second_law(verdict):
    with verdict(3):
        start = time.perf_counter()
        family = _two_bath_qubit_family()
        baths = [BathAssignment("cold", 2.0), BathAssignment("hot", 0.5)]
        rho0 = gibbs_state(np.diag([0.0, 1.0]), 2.0)

        def worst_first(dt):
            times = np.linspace(0.0, 2.0, int(round(2.0 / dt)) + 1)
            traj = evolve_driven(family, rho0, times)
            samples = law_residuals(traj, family, baths)
            first = max(abs(s.first_law_residual) for s in samples)
            second = min(s.second_law_residual for s in samples)
            return first, second

        first_coarse, second_coarse = worst_first(1e-3)
        assert first_coarse < 1e-4
        assert second_coarse >= -1e-6
        first_fine, _ = worst_first(5e-4)
        assert first_coarse / first_fine >= 3.5
        assert time.perf_counter() - start < 30.0


def test_criterion_04_no_work_from_a_single_bath(verdict):
    with verdict(4):
        start = time.perf_counter()
        rng = np.random.default_rng(11)
        for _ in range(50):
            dim = int(rng.integers(2, 6))
            evals = np.concatenate(
                [[0.0], np.cumsum(rng.uniform(0.4, 1.2, dim - 1))])
            h0 = np.diag(evals).astype(complex)
            x = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
            coupling = (x + x.conj().T) / 2.0
            beta = float(rng.uniform(0.3, 2.0))
            m = np.diag(rng.uniform(-1.0, 1.0, dim))
            family = thermal_family(h0, m, [(coupling, beta, 0.7, "b")],
                                    amplitude=0.3, frequency=500.0)
            assert average_power_fast(family) <= 1e-12
            assert average_power_resolvent(family) <= 1e-12
        assert time.perf_counter() - start < 60.0


def _triangle_engine(amplitude=0.3, frequency=600.0):
    h0 = np.diag([0.0, 1.0, 2.5]).astype(complex)
    m = np.diag([0.0, 0.5, -0.3])
    c_cold = unit(0, 1, 3) + unit(1, 0, 3) + unit(1, 2, 3) + unit(2, 1, 3)
    c_hot = unit(0, 2, 3) + unit(2, 0, 3)
    return thermal_family(
        h0, m, [(c_cold, 1.0, 0.6, "cold"), (c_hot, 0.2, 0.5, "hot")],
        amplitude=amplitude, frequency=frequency,
    )


def test_criterion_05_resolvent_fast_agreement_and_scaling(verdict):
    with verdict(5):
        # frequency = 10^3 x the largest base rate (0.6)
        family = _triangle_engine(frequency=600.0)
        fast = average_power_fast(family)
        res = average_power_resolvent(family)
        assert abs(res - fast) / abs(fast) < 0.01
        doubled = _triangle_engine(amplitude=0.6, frequency=600.0)
        assert abs(average_power_fast(doubled) / fast - 4.0) < 1e-10
        assert abs(average_power_resolvent(doubled) / res - 4.0) < 1e-10


def _degenerate_cell(n_levels, gamma=0.01, big_gamma=0.01):
    """Flat-band cell with every interband gap equal to 1 eV."""
    beta = 1.0 / (KB * 300.0)
    beta1 = 1e-3 / KB
    if n_levels == 1:
        return PvSpec(
            conduction_energies=(1.0,), valence_energies=(0.0,),
            beta=beta, beta1=beta1, inter_rates=np.array([[4.0 * gamma]]),
            amplitude=0.2, frequency=50.0,
        )
    return PvSpec(
        conduction_energies=(1.0, 1.0), valence_energies=(0.0, 0.0),
        beta=beta, beta1=beta1,
        inter_rates=gamma * np.array([[1.0, 1.7], [1.3, 0.9]]),
        intra_rates_c=big_gamma * np.array([[0.0, 1.0], [0.8, 0.0]]),
        intra_rates_v=big_gamma * np.array([[0.0, 0.6], [1.1, 0.0]]),
        amplitude=0.2, frequency=50.0,
    )


def _crossing_voltage(spec, voltages):
    values = [pv_power_current(spec, v) for v in voltages]
    for i in range(len(values) - 1):
        if values[i] > 0.0 and values[i + 1] <= 0.0:
            return voltages[i], voltages[i + 1]
    raise AssertionError("output power never changed sign over the sweep")


def test_criterion_06_open_circuit_voltage(verdict):
    with verdict(6):
        spec_1 = _degenerate_cell(1)
        spec_2 = _degenerate_cell(2)
        v_oc = open_circuit_voltage(spec_1)
        assert v_oc == 0.7
        assert open_circuit_voltage(spec_2) == 0.7
        voltages = np.linspace(0.6, 0.8, 41)
        lo, hi = _crossing_voltage(spec_1, voltages)
        assert abs(lo - v_oc) <= 0.02 * v_oc and abs(hi - v_oc) <= 0.02 * v_oc
        start = time.perf_counter()
        lo, hi = _crossing_voltage(spec_2, voltages)
        assert abs(lo - v_oc) <= 0.02 * v_oc and abs(hi - v_oc) <= 0.02 * v_oc
        assert time.perf_counter() - start < 120.0


@pytest.mark.xfail(
    strict=True,
    reason="the closed-form fast-route power is a negated covariance of the "
    "drive observable, strictly negative at every voltage, so it cannot "
    "change sign at the open-circuit point; the numerically evaluated "
    "current route does cross there (criterion 6)",
)
def test_fast_ansatz_power_changes_sign_at_open_circuit():
    spec = _degenerate_cell(1)
    voltages = np.linspace(0.6, 0.8, 41)
    values = [pv_power_fast_ansatz(spec, v) for v in voltages]
    assert any(a > 0.0 >= b for a, b in zip(values, values[1:]))


def test_criterion_07_growth_laws(verdict):
    with verdict(7):
        spec = ChemSpec(1.0, 0.5, 0.25, dim=60)
        times = np.linspace(0.0, 2.5, 26)
        traj = evolve_oscillator(spec, coherent_state(1.0, 60), times)
        e0 = float(traj.energies[0])
        e_ref = analytic_energy(spec, e0, times)
        a_ref = analytic_amplitude(spec, 1.0, times)
        for i in range(times.size):
            assert abs(traj.energies[i] - e_ref[i]) < 1e-6 * (1.0 + e_ref[i])
            assert abs(traj.amplitudes[i] - a_ref[i]) < 1e-6
        # vacuum start: the energy closed form at t = 1
        vac = evolve_oscillator(spec, DensityMatrix(np.diag(
            [1.0] + [0.0] * 59).astype(complex)), np.linspace(0.0, 1.0, 11))
        assert abs(vac.energies[-1] - 0.568051) < 1e-6
        assert abs(analytic_energy(spec, 0.0, 1.0) - 0.568051) < 1e-6


def test_criterion_08_storage_efficiency(verdict):
    with verdict(8):
        dim = 1400
        spec = ChemSpec(1.0, 1.0, 0.5, dim=dim)
        times = np.linspace(0.0, 6.0, 61)
        traj = evolve_oscillator(spec, coherent_state(3.0, dim), times,
                                 on_overflow="truncate")
        assert traj.truncated  # the grid outruns the truncation-valid window
        assert traj.times.size >= 2
        h = np.diag(np.arange(float(dim)))
        w_e = ergotropy(traj.states[-1], h)
        energy = float(traj.energies[-1])
        target = 9.0 / 11.0
        assert abs(w_e / energy - target) / target < 0.01


def test_criterion_09_ergotropy_unit_checks(verdict):
    with verdict(9):
        h2 = np.diag([0.0, 1.0]).astype(complex)
        assert ergotropy(gibbs_state(h2, 1.3), h2) == 0.0
        w = ergotropy(DensityMatrix(np.diag([0.2, 0.8]).astype(complex)), h2)
        assert w == pytest.approx(0.6, abs=1e-14)
        h30 = np.diag(np.arange(30.0))
        assert abs(ergotropy(coherent_state(2.0, 30), h30) - 4.0) < 1e-6


def test_criterion_10_quantum_classical_equivalence(verdict):
    with verdict(10):
        start = time.perf_counter()
        n = 36
        times = np.linspace(0.0, 1.5, 7)
        p0 = np.zeros(n)
        p0[2] = 1.0
        classical = birth_death_evolve(BirthDeathState(p0), 0.5, 0.25, times)
        for gamma in (0.0, 0.1, 1.0):
            spec = ChemSpec(1.0, 0.5, 0.25, decoherence=gamma, dim=n)
            rho0 = DensityMatrix(np.diag(p0).astype(complex))
            traj = evolve_oscillator(spec, rho0, times)
            for i, st in enumerate(traj.states):
                pops = np.diag(st.matrix).real
                assert np.max(np.abs(pops - classical[i].probs)) < 1e-8
        stats = gillespie_ensemble(2, 0.5, 0.25, times, trajectories=10_000,
                                   seed=2026)
        for i in range(times.size):
            ode_mean = float(np.dot(np.arange(n), classical[i].probs))
            if stats.stderr[i] > 0:
                assert abs(stats.mean[i] - ode_mean) <= 3.0 * stats.stderr[i]
        assert time.perf_counter() - start < 120.0


def test_criterion_11_detailed_balance_diagnostics(verdict):
    with verdict(11):
        rng = np.random.default_rng(14)
        for dim in (2, 3, 4):
            gen, beta = random_thermal_model(rng, dim)
            report = detailed_balance_report(gen, gibbs_state(gen.hamiltonian, beta))
            assert report.passed
            assert report.dissipative_hermiticity_defect < 1e-10
            assert report.hamiltonian_antihermiticity_defect < 1e-10
            assert report.commutator_norm < 1e-10
        gen, _ = triangle_generator()
        report = detailed_balance_report(gen, stationary_state(gen))
        assert not report.passed
        assert report.dissipative_hermiticity_defect > 1e-3


def test_criterion_12_cli_determinism_and_replay(verdict, tmp_path):
    with verdict(12):
        config = {
            "scenario": "replicator",
            "gamma_up": 0.4,
            "gamma_down": 0.3,
            "n0": 2,
            "n_max": 40,
            "grid": {"t_max": 1.0, "steps": 4},
            "trajectories": 500,
            "seed": 5,
        }
        cfg = tmp_path / "cfg.json"
        cfg.write_text(json.dumps(config))
        out1, out2, out3 = tmp_path / "a", tmp_path / "b", tmp_path / "c"
        assert main(["run", str(cfg), "--out", str(out1)]) == 0
        assert main(["run", str(cfg), "--out", str(out2)]) == 0
        for name in ("repl_stats.csv", "manifest.json"):
            assert (out1 / name).read_bytes() == (out2 / name).read_bytes()
        assert main(["run", str(out1 / "manifest.json"), "--out", str(out3)]) == 0
        assert (out3 / "repl_stats.csv").read_bytes() == (out1 / "repl_stats.csv").read_bytes()
