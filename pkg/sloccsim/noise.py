"""Bain lorentzien, fonction de décohérence p(t) et canaux de la phase discernable (avant déformation)."""
import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidParameter, UnsupportedKrausForm
from .integrate import rk4_linear
from .qstate import (Basis, DensityMatrix, PopulationVector, require_valid)

COMPLETENESS_TOL = 1e-12


class ChannelKind(Enum):
    PHASE_DAMPING = "phase"
    DEPOLARIZING = "dep"
    AMPLITUDE_DAMPING = "ad"

    @classmethod
    def parse(cls, token):
        if isinstance(token, cls):
            return token
        try:
            return cls(str(token).strip().lower())
        except ValueError:
            choices = ", ".join(c.value for c in cls)
            raise InvalidParameter(f"Canal inconnu '{token}' (attendu : {choices})") from None


@dataclass(frozen=True)
class BathParams:
    gamma0: float
    lambda_: float

    def __post_init__(self):
        if not (self.gamma0 > 0 and math.isfinite(self.gamma0)):
            raise InvalidParameter(f"gamma0 doit être > 0 (reçu {self.gamma0})")
        if not (self.lambda_ > 0 and math.isfinite(self.lambda_)):
            raise InvalidParameter(f"lambda doit être > 0 (reçu {self.lambda_})")
        if not self.markovian:
            logging.warning(f"Bain non markovien : lambda = {self.lambda_} < 2*gamma0 = {2 * self.gamma0}")

    @property
    def markovian(self):
        return self.lambda_ >= 2.0 * self.gamma0


@dataclass(frozen=True, eq=False)
class KrausPair:
    E0: np.ndarray
    E1: np.ndarray

    def __post_init__(self):
        e0 = np.array(self.E0, dtype=complex)
        e1 = np.array(self.E1, dtype=complex)
        deviation = np.abs(e0.conj().T @ e0 + e1.conj().T @ e1 - np.eye(2)).max()
        if deviation > COMPLETENESS_TOL:
            raise InvalidParameter(f"Opérateurs de Kraus incomplets (écart {deviation:.3e})")
        object.__setattr__(self, "E0", e0)
        object.__setattr__(self, "E1", e1)

    @property
    def operators(self):
        return (self.E0, self.E1)


def _check_time(t):
    if t < 0:
        raise InvalidParameter(f"Le temps doit être positif ou nul (reçu {t})")


def _check_probability(p):
    if not 0.0 <= p <= 1.0:
        raise InvalidParameter(f"Probabilité hors de [0, 1] : {p}")


def survival_amplitude(bath, t):
    """Solution G(t) de G'' + λG' + (γ₀λ/2)G = 0, G(0) = 1, G'(0) = 0 ; p(t) = 1 - G²."""
    _check_time(t)
    lam, g0 = bath.lambda_, bath.gamma0
    disc = 2.0 * g0 * lam - lam * lam
    half = 0.5 * lam * t
    if abs(disc) <= 1e-12 * lam * lam:
        return math.exp(-half) * (1.0 + half)
    if disc > 0:
        x = 0.5 * math.sqrt(disc) * t
        return math.exp(-half) * (math.cos(x) + half * np.sinc(x / math.pi))
    dp = math.sqrt(-disc)
    x = 0.5 * dp * t
    if x < 1.0:
        sinhc = math.sinh(x) / x if x > 0 else 1.0
        return math.exp(-half) * (math.cosh(x) + half * sinhc)
    # forme exponentielle : pas de débordement de cosh aux grands temps
    slow = 0.5 * (1.0 + lam / dp) * math.exp(-half + x)
    fast = 0.5 * (1.0 - lam / dp) * math.exp(-half - x)
    return slow + fast


def disturbance_probability(bath, t):
    g = survival_amplitude(bath, t)
    return min(1.0, max(0.0, 1.0 - g * g))


def markovian_disturbance_probability(gamma0, t):
    """Limite sans mémoire (λ → ∞) : 1 - exp(-γ₀t)."""
    _check_time(t)
    return float(-math.expm1(-gamma0 * t))


def q_oracle(bath, t):
    """q(t) = G(t)² par intégration RK4 de l'équation du second ordre."""
    _check_time(t)
    lam, g0 = bath.lambda_, bath.gamma0
    generator = np.array([[0.0, 1.0], [-0.5 * g0 * lam, -lam]])
    h_max = min(1.0 / lam, 1.0 / g0) / 100.0
    steps = max(1, math.ceil(t / h_max))
    g, _ = rk4_linear(generator, (1.0, 0.0), t, steps)
    return min(1.0, max(0.0, float(g * g)))


def kraus_for(channel, p):
    _check_probability(p)
    up = np.array([[1.0, 0.0], [0.0, 0.0]])
    down = np.array([[0.0, 0.0], [0.0, 1.0]])
    e0 = math.sqrt(1.0 - p) * up + down
    if channel is ChannelKind.PHASE_DAMPING:
        return KrausPair(e0, math.sqrt(p) * up)
    if channel is ChannelKind.AMPLITUDE_DAMPING:
        lowering = np.array([[0.0, 0.0], [1.0, 0.0]])  # |↓⟩⟨↑|
        return KrausPair(e0, math.sqrt(p) * lowering)
    raise UnsupportedKrausForm(f"Pas de paire de Kraus locale pour le canal {channel.value}")


def evolve_two_qubit_kraus(rho, kraus):
    require_valid(rho, "evolve_two_qubit_kraus")
    out = np.zeros((4, 4), dtype=complex)
    for ei in kraus.operators:
        for ej in kraus.operators:
            e = np.kron(ei, ej)
            out += e @ rho.entries @ e.conj().T
    return DensityMatrix(out)


def depolarize_global(rho, p):
    _check_probability(p)
    require_valid(rho, "depolarize_global")
    return DensityMatrix((1.0 - p) * rho.entries + (p / 4.0) * np.eye(4))


def evolve_distinguishable(channel, rho, p):
    if channel is ChannelKind.DEPOLARIZING:
        return depolarize_global(rho, p)
    return evolve_two_qubit_kraus(rho, kraus_for(channel, p))


def predeformation_state(channel, bath, t_d):
    """Populations fermées du singulet bruité au temps physique t_d."""
    p = disturbance_probability(bath, t_d)
    if channel is ChannelKind.PHASE_DAMPING:
        return PopulationVector(Basis.BELL_B1, (p / 2.0, 1.0 - p / 2.0, 0.0, 0.0))
    if channel is ChannelKind.DEPOLARIZING:
        return PopulationVector(Basis.BELL_B1, (p / 4.0, 1.0 - 3.0 * p / 4.0, p / 4.0, p / 4.0))
    return PopulationVector(Basis.MIXED_B2, (0.0, 1.0 - p, 0.0, p))
