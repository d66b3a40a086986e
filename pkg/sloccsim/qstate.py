"""Représentations d'états à deux qubits : matrices densité, vecteurs de populations
et paramètres d'état X.

Base computationnelle fixée à (↑↑, ↑↓, ↓↑, ↓↓).
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import InvalidState, NonXState

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
POSITIVITY_TOL = 1e-10
POP_SLACK = 1e-12
POP_SUM_TOL = 1e-10
X_PATTERN_TOL = 1e-10

_S = np.sqrt(0.5)

# Colonnes : vecteurs de base exprimés dans la base computationnelle.
BELL_B1_VECTORS = np.array([
    [0.0, 0.0, _S, _S],   # ↑↑
    [_S, _S, 0.0, 0.0],   # ↑↓
    [_S, -_S, 0.0, 0.0],  # ↓↑
    [0.0, 0.0, _S, -_S],  # ↓↓
])  # 1+, 1-, 2+, 2-

MIXED_B2_VECTORS = np.array([
    [0.0, 0.0, 1.0, 0.0],
    [_S, _S, 0.0, 0.0],
    [_S, -_S, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
])  # 1+, 1-, U, D

# Indices de l'état singulet 1- et du secteur symétrique, identiques dans les deux bases.
ANTI_INDEX = 1
SYM_INDICES = (0, 2, 3)


class Basis(Enum):
    BELL_B1 = "B1"
    MIXED_B2 = "B2"

    @property
    def labels(self):
        return ("1+", "1-", "2+", "2-") if self is Basis.BELL_B1 else ("1+", "1-", "U", "D")

    @property
    def vectors(self):
        return BELL_B1_VECTORS if self is Basis.BELL_B1 else MIXED_B2_VECTORS


@dataclass(frozen=True)
class PopulationVector:
    """Quatre probabilités étiquetées par une base diagonale.

    `normalized=False` n'est utilisé que pour les poids intermédiaires de la projection sLOCC.
    """
    basis: Basis
    p: tuple
    normalized: bool = True

    def __post_init__(self):
        values = np.asarray(self.p, dtype=float).reshape(-1)
        if values.shape != (4,) or not np.all(np.isfinite(values)):
            raise InvalidState(f"Vecteur de populations invalide : {self.p!r}")
        if self.normalized:
            if np.any(values < -POP_SLACK) or np.any(values > 1.0 + POP_SLACK):
                raise InvalidState(f"Population hors de [0, 1] : {values.tolist()}")
            values = np.clip(values, 0.0, 1.0)
            if abs(values.sum() - 1.0) > POP_SUM_TOL:
                raise InvalidState(f"Populations non normalisées (somme = {values.sum():.15g})")
        elif np.any(values < -POP_SLACK):
            raise InvalidState(f"Poids négatif : {values.tolist()}")
        object.__setattr__(self, "p", tuple(float(v) for v in values))

    def as_array(self):
        return np.array(self.p)

    @property
    def total(self):
        return float(sum(self.p))

    @property
    def anti(self):
        return self.p[ANTI_INDEX]

    @property
    def symmetric(self):
        return float(sum(self.p[i] for i in SYM_INDICES))

    def as_dict(self):
        return dict(zip(self.basis.labels, self.p))


@dataclass(frozen=True, eq=False)
class DensityMatrix:
    """Opérateur 4×4 dans la base computationnelle. Aucune validation à la construction : voir validate()."""
    entries: np.ndarray
    basis_tag: str = "computational"

    def __post_init__(self):
        entries = np.array(self.entries, dtype=complex)
        if entries.shape != (4, 4):
            raise InvalidState(f"Matrice densité de forme {entries.shape}, (4, 4) attendue")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def trace(self):
        return complex(np.trace(self.entries))


@dataclass(frozen=True)
class XStateParams:
    diagonal: tuple
    inner_coherence: complex
    outer_coherence: complex

    def __post_init__(self):
        r11, r22, r33, r44 = self.diagonal
        if abs(self.inner_coherence) > np.sqrt(max(r22 * r33, 0.0)) + POSITIVITY_TOL:
            raise InvalidState(f"|ρ23| = {abs(self.inner_coherence):.3e} dépasse sqrt(ρ22ρ33)")
        if abs(self.outer_coherence) > np.sqrt(max(r11 * r44, 0.0)) + POSITIVITY_TOL:
            raise InvalidState(f"|ρ14| = {abs(self.outer_coherence):.3e} dépasse sqrt(ρ11ρ44)")


@dataclass(frozen=True)
class Violation:
    invariant: str
    magnitude: float


def bell_diagonal_to_density(pops):
    total = pops.total
    if abs(total - 1.0) > 1e-8:
        raise InvalidState(f"bell_diagonal_to_density exige des populations normalisées (somme = {total:.12g})")
    vectors = pops.basis.vectors
    return DensityMatrix(vectors @ np.diag(pops.as_array()) @ vectors.T)


def density_to_populations(rho, basis):
    """Projection diagonale de ρ sur une base (1±, 2± ou 1±, U, D)."""
    vectors = basis.vectors
    diag = np.einsum("ki,kl,li->i", vectors, rho.entries, vectors).real
    return PopulationVector(basis, tuple(diag))


def density_to_xstate(rho):
    mask = np.ones((4, 4), dtype=bool)
    for i in range(4):
        mask[i, i] = False
        mask[i, 3 - i] = False
    off_pattern = np.abs(rho.entries[mask]).max()
    if off_pattern > X_PATTERN_TOL:
        raise NonXState(f"Élément hors motif X de module {off_pattern:.3e}")
    e = rho.entries
    return XStateParams(
        diagonal=tuple(float(v) for v in np.diag(e).real),
        inner_coherence=complex(e[1, 2]),
        outer_coherence=complex(e[0, 3]),
    )


def xstate_to_density(x):
    m = np.diag(np.asarray(x.diagonal, dtype=complex))
    m[1, 2] = x.inner_coherence
    m[2, 1] = np.conj(x.inner_coherence)
    m[0, 3] = x.outer_coherence
    m[3, 0] = np.conj(x.outer_coherence)
    return DensityMatrix(m)


def validate(rho):
    """Liste des invariants violés par ρ (liste vide pour un état valide)."""
    e = rho.entries
    report = []
    herm = float(np.abs(e - e.conj().T).max())
    if herm > HERMITIAN_TOL:
        report.append(Violation("hermitian", herm))
    trace_dev = abs(np.trace(e) - 1.0)
    if trace_dev > TRACE_TOL:
        report.append(Violation("trace", float(trace_dev)))
    min_eig = float(np.linalg.eigvalsh(0.5 * (e + e.conj().T)).min())
    if min_eig < -POSITIVITY_TOL:
        report.append(Violation("positivity", -min_eig))
    return report


def require_valid(rho, where=""):
    report = validate(rho)
    if report:
        details = ", ".join(f"{v.invariant} ({v.magnitude:.3e})" for v in report)
        raise InvalidState(f"État invalide{' pour ' + where if where else ''} : {details}")
    return rho


def singlet_populations(basis=Basis.BELL_B1):
    return PopulationVector(basis, (0.0, 1.0, 0.0, 0.0))


def singlet_density():
    return bell_diagonal_to_density(singlet_populations())
