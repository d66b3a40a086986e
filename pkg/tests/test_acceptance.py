"""Propriétés de bout en bout : limites, oracles croisés, mort subite, monotonie, symétrie des statistiques."""
import itertools

import numpy as np
import pytest
from click.testing import CliRunner

from sloccsim.deform import SignPattern, Statistics
from sloccsim.dynamics import basis_for
from sloccsim.metrics import concurrence_general
from sloccsim.noise import (BathParams, ChannelKind, disturbance_probability, evolve_distinguishable,
                            markovian_disturbance_probability, q_oracle)
from sloccsim.oracles import (check_concurrence_oracles, check_rk4_vs_closed_form,
                              check_slocc_amplitude_oracle)
from sloccsim.pipeline import (IndistinguishabilityTarget, Scenario, asymptotic_concurrence, run,
                               sudden_death_time)
from sloccsim.qstate import Basis, PopulationVector, bell_diagonal_to_density, density_to_populations, singlet_density
from start import build_cli

CHANNELS = list(ChannelKind)
TIME_AXIS = np.linspace(0.0, 3.0, 5)


def scenario(bath, channel, indist, td, t, statistics=Statistics.FERMION, sign_pattern=SignPattern.AUTO):
    return Scenario(channel, bath, IndistinguishabilityTarget(indist, statistics, sign_pattern), td, t)


@pytest.mark.parametrize("channel", CHANNELS)
def test_full_recovery_at_maximal_indistinguishability(bath, channel):
    for td, t in itertools.product(TIME_AXIS, TIME_AXIS):
        if t < td:
            continue
        result = run(scenario(bath, channel, 1.0, td, t))
        assert result.concurrence == pytest.approx(1.0, abs=1e-9)
        assert result.fidelity == pytest.approx(1.0, abs=1e-9)
        assert result.p_lr == pytest.approx(0.5, abs=1e-9)


@pytest.mark.parametrize("channel", [ChannelKind.PHASE_DAMPING, ChannelKind.AMPLITUDE_DAMPING])
def test_zero_overlap_matches_distinguishable_kraus(bath, channel):
    for td, t in itertools.product(TIME_AXIS, TIME_AXIS):
        if t < td:
            continue
        result = run(scenario(bath, channel, 0.0, td, t))
        rho = evolve_distinguishable(channel, singlet_density(), disturbance_probability(bath, td))
        rho = evolve_distinguishable(channel, rho, markovian_disturbance_probability(bath.gamma0, t - td))
        reference = density_to_populations(rho, basis_for(channel))
        np.testing.assert_allclose(result.pops_final.p, reference.p, atol=1e-8)
        assert result.p_lr == pytest.approx(1.0, abs=1e-9)


def test_dynamics_match_integrated_generators(rng):
    assert check_rk4_vs_closed_form(rng, samples=300).passed


@pytest.mark.parametrize("ratio", [2.0, 3.0, 10.0])
def test_decoherence_function_matches_ode(ratio):
    bath = BathParams(1.0, ratio)
    for t in np.linspace(0.0, 5.0, 51):
        assert abs(disturbance_probability(bath, t) - (1.0 - q_oracle(bath, t))) <= 1e-8


def test_concurrence_oracles(rng):
    assert check_concurrence_oracles(rng, samples=500).passed
    werner = PopulationVector(Basis.BELL_B1, (0.125, 0.625, 0.125, 0.125))
    assert concurrence_general(bell_diagonal_to_density(werner)) == pytest.approx(0.25, abs=1e-10)


def test_slocc_oracle(rng):
    assert check_slocc_amplitude_oracle(rng, samples=200).passed


@pytest.mark.parametrize("channel", [ChannelKind.PHASE_DAMPING, ChannelKind.DEPOLARIZING])
def test_horizontal_asymptote(bath, channel):
    levels = []
    for indist in (0.2, 0.5, 0.8):
        limit = asymptotic_concurrence(channel, scenario(bath, channel, indist, 0.0, 0.0).coeffs)
        for td in (0.5, 1.0, 2.0):
            early = run(scenario(bath, channel, indist, td, 500.0)).concurrence
            late = run(scenario(bath, channel, indist, td, 5000.0)).concurrence
            assert early == pytest.approx(late, abs=1e-6)
            assert late == pytest.approx(limit, abs=1e-9)
        levels.append(limit)
    assert levels[1] < levels[2]
    if channel is ChannelKind.PHASE_DAMPING:
        assert 0.0 < levels[0] < levels[1]
    else:
        assert levels[0] == 0.0 < levels[1]


def test_amplitude_damping_sudden_death(bath):
    s = scenario(bath, ChannelKind.AMPLITUDE_DAMPING, 0.5, 0.5, 0.5)
    t_star = sudden_death_time(s, t_max=100.0, floor=1e-3)
    assert t_star is not None
    before = run(Scenario(s.channel, bath, s.deformation, 0.5, t_star - 1e-6)).concurrence
    after = run(Scenario(s.channel, bath, s.deformation, 0.5, t_star + 1e-6)).concurrence
    assert before > 1e-3 > after

    full = scenario(bath, ChannelKind.AMPLITUDE_DAMPING, 1.0, 0.5, 0.5)
    assert sudden_death_time(full, t_max=100.0, floor=1e-3) is None


def test_monotone_in_indistinguishability(bath, rng):
    axis = (0.0, 0.25, 0.5, 0.75, 1.0)
    for _ in range(20):
        channel = CHANNELS[rng.integers(len(CHANNELS))]
        td = float(rng.uniform(0.0, 3.0))
        t = td + float(rng.uniform(0.0, 5.0))
        results = [run(scenario(bath, channel, i, td, t)) for i in axis]
        assert np.all(np.diff([r.concurrence for r in results]) >= -1e-10)
        assert np.all(np.diff([r.fidelity for r in results]) >= -1e-10)
        assert np.all(np.diff([r.p_lr for r in results]) <= 1e-10)


def test_fermion_boson_symmetry(bath, rng):
    negatives = [SignPattern.NEG_L, SignPattern.NEG_R, SignPattern.NEG_LP, SignPattern.NEG_RP]
    for _ in range(50):
        channel = CHANNELS[rng.integers(len(CHANNELS))]
        indist = float(rng.uniform(0.0, 0.99))
        td = float(rng.uniform(0.0, 3.0))
        t = td + float(rng.uniform(0.0, 5.0))
        pattern = negatives[rng.integers(len(negatives))]
        fermion = run(scenario(bath, channel, indist, td, t, Statistics.FERMION, SignPattern.POSITIVE))
        boson = run(scenario(bath, channel, indist, td, t, Statistics.BOSON, pattern))
        assert boson.concurrence == pytest.approx(fermion.concurrence, abs=1e-12)
        assert boson.fidelity == pytest.approx(fermion.fidelity, abs=1e-12)
        assert boson.indistinguishability == pytest.approx(fermion.indistinguishability, abs=1e-12)
        np.testing.assert_allclose(boson.pops_final.p, fermion.pops_final.p, atol=1e-12)
        np.testing.assert_allclose(boson.pops_lr.p, fermion.pops_lr.p, atol=1e-12)


@pytest.mark.parametrize("indist", [0.25, 0.5, 0.75])
def test_amplitude_damping_probability_tends_to_one(bath, indist):
    assert run(scenario(bath, ChannelKind.AMPLITUDE_DAMPING, indist, 0.5, 500.0)).p_lr >= 1 - 1e-3


def test_default_figure_is_byte_identical(tmp_path):
    runner = CliRunner()
    outputs = []
    for name in ("first.csv", "second.csv"):
        path = tmp_path / name
        result = runner.invoke(build_cli(), ["figure", "conc-pd", "--out", str(path)])
        assert result.exit_code == 0, result.output
        outputs.append(path.read_bytes())
    assert outputs[0] == outputs[1]
    assert outputs[0].count(b"\n") == 1 + 4 * 4 * 400
