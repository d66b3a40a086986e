import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sloccsim.errors import InvalidState, NonXState
from sloccsim.qstate import (Basis, DensityMatrix, PopulationVector, bell_diagonal_to_density,
                             density_to_populations, density_to_xstate, singlet_density, validate,
                             xstate_to_density)

weights = st.lists(st.floats(min_value=0.0, max_value=1.0), min_size=4, max_size=4).filter(lambda w: sum(w) > 1e-3)


def _normalized(w):
    w = np.asarray(w, dtype=float)
    return tuple(w / w.sum())


def test_singlet_projector():
    rho = bell_diagonal_to_density(PopulationVector(Basis.BELL_B1, (0, 1, 0, 0))).entries
    expected = np.zeros((4, 4))
    expected[1, 1] = expected[2, 2] = 0.5
    expected[1, 2] = expected[2, 1] = -0.5
    np.testing.assert_allclose(rho, expected, atol=1e-15)


def test_maximally_mixed():
    rho = bell_diagonal_to_density(PopulationVector(Basis.BELL_B1, (0.25,) * 4)).entries
    np.testing.assert_allclose(rho, np.eye(4) / 4, atol=1e-15)


def test_mixed_basis_expansion():
    rho = bell_diagonal_to_density(PopulationVector(Basis.MIXED_B2, (0, 0.5, 0, 0.5))).entries
    assert rho[1, 1] == pytest.approx(0.25)
    assert rho[2, 2] == pytest.approx(0.25)
    assert rho[1, 2] == pytest.approx(-0.25)
    assert rho[3, 3] == pytest.approx(0.5)
    assert rho[0, 0] == 0


def test_unnormalized_input_rejected():
    pops = PopulationVector(Basis.BELL_B1, (0.2, 0.2, 0.2, 0.2), normalized=False)
    with pytest.raises(InvalidState):
        bell_diagonal_to_density(pops)


def test_population_clamping():
    pops = PopulationVector(Basis.BELL_B1, (-1e-13, 1.0 + 1e-13, 0.0, 0.0))
    assert pops.p == (0.0, 1.0, 0.0, 0.0)
    with pytest.raises(InvalidState):
        PopulationVector(Basis.BELL_B1, (-1e-6, 1.0 + 1e-6, 0.0, 0.0))
    with pytest.raises(InvalidState):
        PopulationVector(Basis.BELL_B1, (0.5, 0.6, 0.0, 0.0))


def test_xstate_of_maximally_mixed():
    x = density_to_xstate(DensityMatrix(np.eye(4) / 4))
    assert x.diagonal == (0.25,) * 4
    assert x.inner_coherence == 0
    assert x.outer_coherence == 0


def test_xstate_of_singlet():
    assert density_to_xstate(singlet_density()).inner_coherence.real == pytest.approx(-0.5)


def test_xstate_of_amplitude_damped_state():
    x = density_to_xstate(bell_diagonal_to_density(PopulationVector(Basis.MIXED_B2, (0, 0.7, 0, 0.3))))
    np.testing.assert_allclose(x.diagonal, (0, 0.35, 0.35, 0.3), atol=1e-15)
    assert x.inner_coherence.real == pytest.approx(-0.35)


def test_non_x_pattern_rejected():
    m = np.eye(4) / 4
    m[0, 1] = m[1, 0] = 0.1
    with pytest.raises(NonXState):
        density_to_xstate(DensityMatrix(m))


def test_validate_reports():
    assert validate(DensityMatrix(np.eye(4) / 4)) == []
    trace_report = validate(DensityMatrix(np.eye(4) * 0.375))
    assert [v.invariant for v in trace_report] == ["trace"]
    assert trace_report[0].magnitude == pytest.approx(0.5)
    positivity = validate(DensityMatrix(np.diag([1.0, -0.01, 0.01, 0.0])))
    assert [v.invariant for v in positivity] == ["positivity"]
    assert positivity[0].magnitude == pytest.approx(0.01)


def test_validate_flags_non_hermitian():
    m = np.eye(4, dtype=complex) / 4
    m[1, 2] = 0.1j
    assert "hermitian" in [v.invariant for v in validate(DensityMatrix(m))]


@settings(deadline=None)
@given(w=weights)
def test_bell_b1_round_trip(w):
    p1p, p1m, p2p, p2m = p = _normalized(w)
    rho = bell_diagonal_to_density(PopulationVector(Basis.BELL_B1, p))
    assert validate(rho) == []
    x = density_to_xstate(rho)
    np.testing.assert_allclose(x.diagonal, ((p2p + p2m) / 2, (p1p + p1m) / 2, (p1p + p1m) / 2, (p2p + p2m) / 2),
                               atol=1e-12)
    assert abs(x.inner_coherence - (p1p - p1m) / 2) < 1e-12
    assert abs(x.outer_coherence - (p2p - p2m) / 2) < 1e-12


@settings(deadline=None)
@given(w=weights)
def test_mixed_b2_round_trip(w):
    p1p, p1m, pu, pd = p = _normalized(w)
    rho = bell_diagonal_to_density(PopulationVector(Basis.MIXED_B2, p))
    assert validate(rho) == []
    x = density_to_xstate(rho)
    np.testing.assert_allclose(x.diagonal, (pu, (p1p + p1m) / 2, (p1p + p1m) / 2, pd), atol=1e-12)
    assert abs(x.inner_coherence - (p1p - p1m) / 2) < 1e-12
    assert x.outer_coherence == 0


@settings(deadline=None)
@given(w=weights, basis=st.sampled_from(list(Basis)))
def test_populations_recovered_from_density(w, basis):
    pops = PopulationVector(basis, _normalized(w))
    back = density_to_populations(bell_diagonal_to_density(pops), basis)
    np.testing.assert_allclose(back.as_array(), pops.as_array(), atol=1e-12)


def test_xstate_density_round_trip():
    x = density_to_xstate(bell_diagonal_to_density(PopulationVector(Basis.BELL_B1, (0.1, 0.6, 0.2, 0.1))))
    assert density_to_xstate(xstate_to_density(x)) == x


def test_xstate_positivity_enforced():
    m = np.diag([0.25, 0.25, 0.25, 0.25]).astype(complex)
    m[1, 2] = m[2, 1] = 0.4
    with pytest.raises(InvalidState):
        density_to_xstate(DensityMatrix(m))
