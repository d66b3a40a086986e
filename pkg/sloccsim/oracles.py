"""Oracles indépendants et suite de validation (commande `validate`).

L'oracle sLOCC travaille au niveau des amplitudes : espace à une particule
(L↑, L↓, R↑, R↓), vecteurs à deux particules η-symétrisés, projecteur Π_LR explicite.
"""
import logging
import math
from dataclasses import dataclass

import numpy as np

from .deform import SignPattern, coeffs_from_theta
from .dynamics import basis_for, effective_rates, evolve, integrate_ode
from .metrics import concurrence_general, concurrence_xstate
from .noise import (BathParams, ChannelKind, disturbance_probability, evolve_distinguishable,
                    predeformation_state, q_oracle)
from .qstate import (Basis, PopulationVector, XStateParams, density_to_populations,
                     singlet_density, xstate_to_density)
from .slocc import project

_UP, _DOWN = 0, 1
_L, _R = (1.0, 0.0), (0.0, 1.0)


@dataclass(frozen=True)
class CheckResult:
    name: str
    max_deviation: float
    tolerance: float

    @property
    def passed(self):
        return bool(self.max_deviation <= self.tolerance)


# --- ORACLE sLOCC AU NIVEAU DES AMPLITUDES ---

def single_particle_state(spatial, spin):
    v = np.zeros(4)
    v[spin] = spatial[0]
    v[2 + spin] = spatial[1]
    return v


def two_particle_state(a, b, eta):
    return (np.kron(a, b) + eta * np.kron(b, a)) / math.sqrt(2.0)


def deformed_basis_vectors(c, basis):
    """Vecteurs barrés non normalisés (normes C±²) de la base diagonale."""
    psi1, psi2 = (c.l, c.r), (c.lp, c.rp)

    def pair(t1, t2):
        return two_particle_state(single_particle_state(psi1, t1), single_particle_state(psi2, t2), c.eta)

    s = math.sqrt(0.5)
    one_plus = s * (pair(_UP, _DOWN) + pair(_DOWN, _UP))
    one_minus = s * (pair(_UP, _DOWN) - pair(_DOWN, _UP))
    if basis is Basis.BELL_B1:
        return [one_plus, one_minus, s * (pair(_UP, _UP) + pair(_DOWN, _DOWN)),
                s * (pair(_UP, _UP) - pair(_DOWN, _DOWN))]
    return [one_plus, one_minus, pair(_UP, _UP), pair(_DOWN, _DOWN)]


def lr_basis(eta):
    """Colonnes e_στ = (|Lσ⟩|Rτ⟩ + η|Rτ⟩|Lσ⟩)/√2, ordre (↑↑, ↑↓, ↓↑, ↓↓)."""
    cols = [two_particle_state(single_particle_state(_L, sigma), single_particle_state(_R, tau), eta)
            for sigma in (_UP, _DOWN) for tau in (_UP, _DOWN)]
    return np.stack(cols, axis=1)


def amplitude_slocc_oracle(pops, c):
    """Renvoie (ρ_LR, P_LR) calculés directement à partir des amplitudes."""
    vectors = deformed_basis_vectors(c, pops.basis)
    rho = sum(p * np.outer(v, v) for p, v in zip(pops.p, vectors))
    e = lr_basis(c.eta)
    block = e.T @ rho @ e
    weight = float(np.trace(block))
    return block / weight, weight / float(np.trace(rho))


# --- GÉNÉRATEURS ALÉATOIRES ---

def random_populations(rng, basis):
    return PopulationVector(basis, tuple(rng.dirichlet(np.ones(4))))


def random_xstate(rng):
    d = rng.dirichlet(np.ones(4))
    inner = math.sqrt(d[1] * d[2]) * rng.uniform() * np.exp(1j * rng.uniform(0, 2 * math.pi))
    outer = math.sqrt(d[0] * d[3]) * rng.uniform() * np.exp(1j * rng.uniform(0, 2 * math.pi))
    return XStateParams(tuple(float(v) for v in d), complex(inner), complex(outer))


def random_bath(rng):
    gamma0 = rng.uniform(0.2, 2.0)
    return BathParams(gamma0, gamma0 * rng.uniform(2.0, 10.0))


# --- VÉRIFICATIONS ---

def check_kraus_vs_closed_form(rng, samples=100):
    worst = 0.0
    for _ in range(samples):
        channel = list(ChannelKind)[rng.integers(3)]
        bath = random_bath(rng)
        t_d = rng.uniform(0.0, 5.0) / bath.gamma0
        closed = predeformation_state(channel, bath, t_d)
        rho = evolve_distinguishable(channel, singlet_density(), disturbance_probability(bath, t_d))
        explicit = density_to_populations(rho, closed.basis)
        worst = max(worst, float(np.abs(closed.as_array() - explicit.as_array()).max()))
    return CheckResult("kraus-vs-closed-form", worst, 1e-12)


def check_rk4_vs_closed_form(rng, samples=300):
    worst = 0.0
    for _ in range(samples):
        channel = list(ChannelKind)[rng.integers(3)]
        gamma0 = rng.uniform(0.2, 2.0)
        rates = effective_rates(coeffs_from_theta(rng.uniform(0.0, math.pi / 4)), gamma0)
        pops = random_populations(rng, basis_for(channel))
        dt = rng.uniform(0.0, 5.0) / gamma0
        closed = evolve(channel, pops, rates, dt)
        numeric = integrate_ode(channel, pops, rates, dt)
        worst = max(worst, float(np.abs(closed.as_array() - numeric.as_array()).max()))
    return CheckResult("rk4-vs-closed-form", worst, 1e-8)


def check_concurrence_oracles(rng, samples=500):
    worst = 0.0
    for _ in range(samples):
        x = random_xstate(rng)
        worst = max(worst, abs(concurrence_general(xstate_to_density(x)) - concurrence_xstate(x)))
    return CheckResult("xstate-vs-general-concurrence", worst, 1e-8)


EXPLICIT_SIGN_PATTERNS = [p for p in SignPattern if p is not SignPattern.AUTO]


def check_slocc_amplitude_oracle(rng, samples=200):
    worst = 0.0
    for _ in range(samples):
        eta = int(rng.choice([-1, 1]))
        pattern = EXPLICIT_SIGN_PATTERNS[rng.integers(len(EXPLICIT_SIGN_PATTERNS))]
        c = coeffs_from_theta(rng.uniform(0.0, math.pi / 4), eta, pattern)
        pops = random_populations(rng, list(Basis)[rng.integers(2)])
        outcome = project(pops, c)
        rho_oracle, p_oracle = amplitude_slocc_oracle(pops, c)
        worst = max(worst,
                    abs(outcome.p_lr - p_oracle) / p_oracle,
                    float(np.abs(outcome.rho_lr.entries - rho_oracle).max()))
    return CheckResult("slocc-amplitude-oracle", worst, 1e-9)


def check_decoherence_function(rng=None, points=26):
    worst = 0.0
    for ratio in (2.0, 3.0, 10.0):
        bath = BathParams(1.0, ratio)
        for t in np.linspace(0.0, 5.0, points):
            worst = max(worst, abs(disturbance_probability(bath, t) - (1.0 - q_oracle(bath, t))))
    return CheckResult("decoherence-vs-q-oracle", worst, 1e-8)


VALIDATION_CHECKS = (
    check_kraus_vs_closed_form,
    check_rk4_vs_closed_form,
    check_concurrence_oracles,
    check_slocc_amplitude_oracle,
    check_decoherence_function,
)


def run_validation_suite(seed=0):
    rng = np.random.default_rng(seed)
    results = []
    for check in VALIDATION_CHECKS:
        result = check(rng)
        if result.passed:
            logging.info(f"Vérification '{result.name}' réussie (écart max {result.max_deviation:.3e})")
        else:
            logging.error(f"Vérification '{result.name}' en échec : écart {result.max_deviation:.3e} > {result.tolerance:.1e}")
        results.append(result)
    return results
