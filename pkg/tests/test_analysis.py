import numpy as np
import pytest
import scipy.linalg

from qcapulse.analysis import (
    HBAR_EV_SECONDS,
    SweepResult,
    TimingEstimate,
    error_bound,
    gamma_sweep,
    pulse_duration,
    pulse_error_norm,
    timing_estimates,
)
from qcapulse.chain import (
    ChainSpec,
    ControlParams,
    ImperfectionModel,
    build_imperfect_pulse_hamiltonian,
    ideal_pulse_generator,
    site_energy_scale,
)
from qcapulse.linalg import phase_distance, spectral_norm
from qcapulse.schedule import cnot_schedule, compile_schedule, memory_schedule


def error_norm_scipy(chain, model):
    """Independent recomputation of the pulse error with scipy's expm."""
    strength = model.gamma_rel * site_energy_scale(chain, model.target)
    dt = pulse_duration(chain, model)
    h_full = build_imperfect_pulse_hamiltonian(chain, model)
    h_drive = ideal_pulse_generator(chain, model.target, strength)
    u_full = scipy.linalg.expm(-1j * h_full * dt / chain.hbar)
    u_drive = scipy.linalg.expm(-1j * h_drive * dt / chain.hbar)
    return np.linalg.norm(u_full - u_drive, 2)


# ---------------------------------------------------------------------------
# pulse_error_norm
# ---------------------------------------------------------------------------


def test_error_zero_when_hamiltonians_coincide():
    chain = ChainSpec(2, (0.0,))
    model = ImperfectionModel(gamma_rel=10.0, epsilon=0.0, target=1)
    assert pulse_error_norm(chain, model) == 0.0


def test_error_positive_and_below_raw_bound():
    chain = ChainSpec.uniform(2)
    model = ImperfectionModel(gamma_rel=10.0, epsilon=0.1, target=1)
    err = pulse_error_norm(chain, model)
    assert err > 0.0
    assert err <= error_bound(chain, model, simplified=False)


def test_error_matches_scipy_recomputation():
    chain = ChainSpec(4, (1.0, 0.6, 1.3))
    model = ImperfectionModel(gamma_rel=8.0, epsilon=0.15, target=3)
    assert pulse_error_norm(chain, model) == pytest.approx(
        error_norm_scipy(chain, model), abs=1e-11
    )


def test_error_decreases_with_amplitude():
    chain = ChainSpec.uniform(6)
    model_lo = ImperfectionModel(10.0, 0.1, 1)
    model_hi = ImperfectionModel(50.0, 0.1, 1)
    assert pulse_error_norm(chain, model_hi) < pulse_error_norm(chain, model_lo)


# ---------------------------------------------------------------------------
# error_bound
# ---------------------------------------------------------------------------


def test_simplified_bound_closed_form_spot_value():
    chain = ChainSpec.uniform(10)
    model = ImperfectionModel(gamma_rel=50.0, epsilon=0.1, target=1)
    x = 9 * np.pi / 100
    assert error_bound(chain, model, simplified=True) == pytest.approx(
        x * np.exp(x), abs=1e-12
    )


def test_simplified_bound_degenerate_single_cell():
    chain = ChainSpec(1)
    model = ImperfectionModel(gamma_rel=10.0, epsilon=0.0, target=1)
    assert error_bound(chain, model, simplified=True) == 0.0
    assert pulse_error_norm(chain, model) < 1e-14


def test_simplified_bound_monotone_vanishing_in_gamma():
    chain = ChainSpec.uniform(5)
    values = [
        error_bound(chain, ImperfectionModel(g, 0.1, 1), simplified=True)
        for g in (10.0, 20.0, 40.0, 80.0, 1000.0)
    ]
    assert all(a > b for a, b in zip(values, values[1:]))
    assert values[-1] < 0.02


def test_simplified_bound_requires_uniform_chain():
    chain = ChainSpec(3, (1.0, 2.0))
    with pytest.raises(ValueError):
        error_bound(chain, ImperfectionModel(10.0, 0.1, 1), simplified=True)


def test_raw_bound_dominates_error_random_configs():
    rng = np.random.default_rng(2024)
    for _ in range(50):
        n = int(rng.integers(2, 7))
        chain = ChainSpec(n, tuple(rng.uniform(0.2, 2.0, n - 1)))
        model = ImperfectionModel(
            gamma_rel=float(rng.uniform(5.0, 60.0)),
            epsilon=float(rng.uniform(0.0, 0.2)),
            target=int(rng.integers(1, n + 1)),
        )
        assert pulse_error_norm(chain, model) <= error_bound(chain, model, simplified=False)


# ---------------------------------------------------------------------------
# gamma_sweep
# ---------------------------------------------------------------------------


def test_sweep_columns_and_ordering():
    chain = ChainSpec.uniform(4)
    result = gamma_sweep(chain, 0.1, [30.0, 10.0, 20.0])
    assert result.gamma_values == (10.0, 20.0, 30.0)
    assert len(result) == 3
    assert all(e <= r for e, r in zip(result.error_norms, result.raw_bound_values))
    assert all(a >= b for a, b in zip(result.error_norms, result.error_norms[1:]))


def test_sweep_zero_couplings_zero_errors():
    chain = ChainSpec(2, (0.0,))
    result = gamma_sweep(chain, 0.0, [10.0, 20.0])
    assert result.error_norms == (0.0, 0.0)


def test_sweep_result_validation():
    with pytest.raises(ValueError):
        SweepResult((1.0,), (0.1, 0.2), (0.3,), (0.4,))
    with pytest.raises(ValueError):
        SweepResult((1.0,), (-0.1,), (0.3,), (0.4,))


# ---------------------------------------------------------------------------
# scale invariance
# ---------------------------------------------------------------------------


def test_builder_unitaries_invariant_under_energy_rescaling():
    # multiplying all energies by k divides all durations by k and leaves
    # every compiled unitary unchanged
    k = 3.7
    base = ChainSpec(2, (1.0,), e0=1.0)
    scaled = ChainSpec(2, (k,), e0=k)
    u_base = compile_schedule(cnot_schedule(base)).matrix
    u_scaled = compile_schedule(cnot_schedule(scaled)).matrix
    assert spectral_norm(u_base - u_scaled) < 1e-12
    m_base = compile_schedule(memory_schedule(base, 5.0 / 1.0)).matrix
    m_scaled = compile_schedule(memory_schedule(scaled, 5.0 / k)).matrix
    assert phase_distance(m_base, np.eye(4)) < 1e-10
    assert phase_distance(m_scaled, np.eye(4)) < 1e-10


def test_physical_memory_invariant_under_energy_rescaling():
    k = 2.0
    base = ChainSpec(3, (1.0, 1.0), e0=1.0)
    scaled = ChainSpec(3, (k, k), e0=k)
    u1 = compile_schedule(
        memory_schedule(base, 4.0, pulses="physical", gamma_max=20.0)
    ).matrix
    u2 = compile_schedule(
        memory_schedule(scaled, 4.0 / k, pulses="physical", gamma_max=20.0 * k)
    ).matrix
    assert spectral_norm(u1 - u2) < 1e-12


# ---------------------------------------------------------------------------
# timing estimates
# ---------------------------------------------------------------------------


def test_timing_estimate_values():
    chain = ChainSpec.uniform(3)
    ctrl = ControlParams((50.0, 50.0, 50.0), (1.0, 0.0, 0.0))
    est = timing_estimates(chain, ctrl)
    assert est.memory_overhead == pytest.approx(2 * np.pi / 100, abs=1e-15)
    assert est.single_qubit_time == pytest.approx(np.pi / 4, abs=1e-15)
    assert est.two_qubit_time == pytest.approx(15 * np.pi / 4, abs=1e-15)


def test_timing_double_rotation_femtoseconds_at_ev_scale():
    chain = ChainSpec.uniform(2)
    ctrl = ControlParams((50.0, 50.0), (1.0, 1.0))
    est = timing_estimates(chain, ctrl).in_seconds(energy_scale_ev=1.0)
    assert 1e-15 < est.two_qubit_time < 1e-14
    assert est.two_qubit_time == pytest.approx(15 * np.pi / 4 * HBAR_EV_SECONDS, rel=1e-12)


def test_timing_errors_on_zero_knobs():
    chain = ChainSpec.uniform(2)
    with pytest.raises(ValueError):
        timing_estimates(chain, ControlParams((1.0, 1.0), (0.0, 0.0)))
    with pytest.raises(ValueError):
        timing_estimates(chain, ControlParams((0.0, 0.0), (1.0, 1.0)))
    with pytest.raises(ValueError):
        timing_estimates(ChainSpec(2, (0.0,)), ControlParams((1.0, 1.0), (1.0, 1.0)))
    with pytest.raises(ValueError):
        TimingEstimate(1.0, 1.0, 0.0)
    with pytest.raises(ValueError):
        timing_estimates(chain, ControlParams((1.0,), (1.0,)))


def test_timing_in_seconds_validation():
    est = TimingEstimate(1.0, 2.0, 3.0)
    with pytest.raises(ValueError):
        est.in_seconds(0.0)
