"""Concurrence de Wootters et fidélité au singulet."""
from dataclasses import dataclass

import numpy as np

from .errors import NumericalFailure
from .qstate import density_to_xstate, require_valid

METRIC_SLACK = 1e-10
CHAR_POLY_TOL = 1e-8

SIGMA_YY = np.kron(np.array([[0, -1j], [1j, 0]]), np.array([[0, -1j], [1j, 0]]))


@dataclass(frozen=True)
class MetricReport:
    concurrence: float
    fidelity_singlet: float

    def __post_init__(self):
        for name in ("concurrence", "fidelity_singlet"):
            value = getattr(self, name)
            if not -METRIC_SLACK <= value <= 1.0 + METRIC_SLACK:
                raise NumericalFailure(f"{name} = {value!r} hors de [0, 1]")
            object.__setattr__(self, name, min(1.0, max(0.0, float(value))))


def xstate_concurrence_witness(x):
    """Terme dominant de la concurrence d'un état X, avant troncature à 0 (négatif si séparable)."""
    r11, r22, r33, r44 = x.diagonal
    return max(2.0 * (abs(x.inner_coherence) - np.sqrt(max(r11 * r44, 0.0))),
               2.0 * (abs(x.outer_coherence) - np.sqrt(max(r22 * r33, 0.0))))


def concurrence_xstate(x):
    return max(0.0, float(xstate_concurrence_witness(x)))


def spin_flip(rho):
    return SIGMA_YY @ rho.entries.conj() @ SIGMA_YY


def _psd_sqrt(m):
    w, v = np.linalg.eigh(0.5 * (m + m.conj().T))
    return (v * np.sqrt(np.clip(w, 0.0, None))) @ v.conj().T


def characteristic_coefficients(xi):
    """Coefficients (1, -e1, e2, -e3, e4) du polynôme caractéristique, par les traces des puissances."""
    powers = [xi]
    for _ in range(3):
        powers.append(powers[-1] @ xi)
    s = [np.trace(p) for p in powers]
    e1 = s[0]
    e2 = (e1 * s[0] - s[1]) / 2.0
    e3 = (e2 * s[0] - e1 * s[1] + s[2]) / 3.0
    e4 = (e3 * s[0] - e2 * s[1] + e1 * s[2] - s[3]) / 4.0
    return np.array([1.0, -e1, e2, -e3, e4])


def concurrence_general(rho):
    require_valid(rho, "concurrence_general")
    rho_tilde = spin_flip(rho)
    # √λ_i = valeurs singulières de √ρ·√ρ̃
    roots = np.linalg.svd(_psd_sqrt(rho.entries) @ _psd_sqrt(rho_tilde), compute_uv=False)
    roots = np.sort(roots)[::-1]
    coeffs = characteristic_coefficients(rho.entries @ rho_tilde)
    residual = float(np.abs(np.polyval(coeffs, roots ** 2)).max())
    if residual > CHAR_POLY_TOL:
        raise NumericalFailure(f"Résidu du polynôme caractéristique trop grand : {residual:.3e}")
    return float(min(1.0, max(0.0, roots[0] - roots[1:].sum())))


def fidelity_singlet(rho):
    e = rho.entries
    return float(0.5 * (e[1, 1] + e[2, 2] - e[1, 2] - e[2, 1]).real)


def bell_diagonal_concurrence(pops):
    """Forme fermée max(0, 2·max p - 1) des états diagonaux de Bell. Référence pour les tests."""
    return max(0.0, 2.0 * max(pops.p) - 1.0)


def metric_report(rho):
    return MetricReport(concurrence_xstate(density_to_xstate(rho)), fidelity_singlet(rho))
