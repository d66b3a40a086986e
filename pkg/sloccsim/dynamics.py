"""Dynamique des populations après déformation (particules indiscernables).

Les solutions fermées font foi ; les matrices de taux de generator_matrix() portent
les préfacteurs compatibles et servent d'oracle RK4.
"""
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameter, NumericalFailure
from .integrate import rk4_linear
from .noise import ChannelKind
from .qstate import Basis, PopulationVector

GAMMA_MINUS_EPS = 1e-9
RK4_SLACK = 1e-9

# Préfacteur de chaque système relativement aux taux γ±.
GENERATOR_PREFACTORS = {
    ChannelKind.PHASE_DAMPING: 0.25,
    ChannelKind.DEPOLARIZING: 0.25,
    ChannelKind.AMPLITUDE_DAMPING: 0.5,
}


@dataclass(frozen=True, eq=False)
class EffectiveRates:
    gamma0: float
    gamma_plus: float
    gamma_minus: float
    gamma_xij: np.ndarray


def effective_rates(c, gamma0):
    amps = np.abs(np.array(c.amplitudes, dtype=float))
    gamma_xij = gamma0 * np.einsum("xi,xj->xij", amps, amps)
    signs = np.array([[1.0, -1.0], [-1.0, 1.0]])
    gamma_minus = float(np.einsum("xij,ij->", gamma_xij, signs))
    gamma_plus = float(gamma_xij.sum())
    gamma_xij.setflags(write=False)
    return EffectiveRates(gamma0, gamma_plus, max(0.0, gamma_minus), gamma_xij)


def basis_for(channel):
    return Basis.MIXED_B2 if channel is ChannelKind.AMPLITUDE_DAMPING else Basis.BELL_B1


def generator_matrix(channel, rates):
    gp, gm = rates.gamma_plus, rates.gamma_minus
    if channel is ChannelKind.PHASE_DAMPING:
        m = np.array([
            [-gm, gm, 0.0, 0.0],
            [gm, -gm, 0.0, 0.0],
            [0.0, 0.0, -gp, gp],
            [0.0, 0.0, gp, -gp],
        ])
    elif channel is ChannelKind.DEPOLARIZING:
        d = 2.0 * gp + gm
        m = np.array([
            [-d, gm, gp, gp],
            [gm, -3.0 * gm, gm, gm],
            [gp, gm, -d, gp],
            [gp, gm, gp, -d],
        ])
    else:
        m = np.array([
            [-gp, 0.0, gp, 0.0],
            [0.0, -gm, gm, 0.0],
            [0.0, 0.0, -(gp + gm), 0.0],
            [gp, gm, 0.0, 0.0],
        ])
    return GENERATOR_PREFACTORS[channel] * m


def _check(pops, basis, dt):
    if pops.basis is not basis:
        raise InvalidParameter(f"Base {pops.basis.value} reçue, {basis.value} attendue")
    if dt < 0:
        raise InvalidParameter(f"Durée négative : {dt}")


def evolve_phase_damping(pops, rates, dt):
    _check(pops, Basis.BELL_B1, dt)
    p1p, p1m, p2p, p2m = pops.p

    def mix(a, b, gamma):
        keep = math.exp(-gamma * dt / 2.0)
        return (0.5 * ((1 + keep) * a + (1 - keep) * b),
                0.5 * ((1 + keep) * b + (1 - keep) * a))

    p1p, p1m = mix(p1p, p1m, rates.gamma_minus)
    p2p, p2m = mix(p2p, p2m, rates.gamma_plus)
    return PopulationVector(Basis.BELL_B1, (p1p, p1m, p2p, p2m))


def evolve_depolarizing(pops, rates, dt):
    _check(pops, Basis.BELL_B1, dt)
    gm = rates.gamma_minus
    k = (3.0 * rates.gamma_plus + gm) / 4.0
    e_m = math.exp(-gm * dt)
    e_k = math.exp(-k * dt)
    p1m0 = pops.p[1]
    cross = (1.0 - 4.0 * p1m0) / 12.0 * (e_m - e_k)
    p1m = p1m0 * e_m + 0.25 * (1.0 - e_m)
    p1p, p2p, p2m = (pops.p[i] * e_k + 0.25 * (1.0 - e_k) + cross for i in (0, 2, 3))
    return PopulationVector(Basis.BELL_B1, (p1p, p1m, p2p, p2m))


def evolve_amplitude_damping(pops, rates, dt):
    _check(pops, Basis.MIXED_B2, dt)
    g0, gp, gm = rates.gamma0, rates.gamma_plus, rates.gamma_minus
    p1p0, p1m0, pu0, _ = pops.p
    e_plus = math.exp(-gp * dt / 2.0)
    e_minus = math.exp(-gm * dt / 2.0)
    e_ground = math.exp(-2.0 * g0 * dt)
    if gm < GAMMA_MINUS_EPS * g0:
        feed_plus = pu0 * gp * e_plus * dt / 2.0
    else:
        feed_plus = pu0 * gp * e_plus * (-math.expm1(-gm * dt / 2.0)) / gm
    p1p = p1p0 * e_plus + feed_plus
    p1m = p1m0 * e_minus + pu0 * (gm / gp) * (e_minus - e_ground)
    pu = pu0 * e_ground
    pd = 1.0 - p1p - p1m - pu
    return PopulationVector(Basis.MIXED_B2, (p1p, p1m, pu, pd))


_CLOSED_FORMS = {
    ChannelKind.PHASE_DAMPING: evolve_phase_damping,
    ChannelKind.DEPOLARIZING: evolve_depolarizing,
    ChannelKind.AMPLITUDE_DAMPING: evolve_amplitude_damping,
}


def evolve(channel, pops, rates, dt):
    return _CLOSED_FORMS[channel](pops, rates, dt)


def min_rk4_steps(rates, dt):
    return max(1, math.ceil(4.0 * rates.gamma0 * dt * 100))


def integrate_ode(channel, pops, rates, dt, steps=None):
    basis = basis_for(channel)
    _check(pops, basis, dt)
    required = min_rk4_steps(rates, dt)
    if steps is None:
        steps = required
    elif steps < required:
        raise InvalidParameter(f"{steps} pas RK4 demandés, au moins {required} requis")
    y = rk4_linear(generator_matrix(channel, rates), pops.as_array(), dt, steps)
    if np.any(y < -RK4_SLACK) or np.any(y > 1.0 + RK4_SLACK):
        raise NumericalFailure(f"Populations RK4 hors bornes : {y.tolist()}")
    return PopulationVector(basis, tuple(np.clip(y, 0.0, 1.0)))
