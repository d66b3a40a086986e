"""Processus complet : bruit discernable jusqu'à t_D, déformation, bruit indiscernable, sLOCC au temps t.

Tous les temps des scénarios sont adimensionnés (γ₀·t).
"""
import itertools
import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace
from typing import Optional, Union

import numpy as np
from scipy.optimize import bisect

from .deform import (DeformationCoeffs, SignPattern, Statistics, coeffs_from_indistinguishability,
                     indistinguishability, slocc_weights)
from .dynamics import effective_rates, evolve
from .errors import InvalidParameter, SloccSimError
from .metrics import metric_report, xstate_concurrence_witness
from .noise import BathParams, ChannelKind, predeformation_state
from .qstate import PopulationVector, bell_diagonal_to_density, density_to_xstate
from .slocc import project

# Borne basse de P_LR lorsque le recouvrement est non nul.
P_LR_FLOOR = 0.5 - 1e-12


@dataclass(frozen=True)
class IndistinguishabilityTarget:
    value: float
    statistics: Statistics = Statistics.FERMION
    sign_pattern: SignPattern = SignPattern.AUTO

    def coeffs(self):
        return coeffs_from_indistinguishability(self.value, self.statistics.eta, self.sign_pattern)


@dataclass(frozen=True)
class Scenario:
    channel: ChannelKind
    bath: BathParams
    deformation: Union[DeformationCoeffs, IndistinguishabilityTarget]
    t_deform: float
    t_total: float

    def __post_init__(self):
        if self.t_deform < 0:
            raise InvalidParameter(f"γ₀t_D doit être positif ou nul (reçu {self.t_deform})")
        if self.t_total < self.t_deform:
            raise InvalidParameter(f"γ₀t = {self.t_total} est antérieur à γ₀t_D = {self.t_deform}")

    @property
    def coeffs(self):
        if isinstance(self.deformation, DeformationCoeffs):
            return self.deformation
        return self.deformation.coeffs()


@dataclass(frozen=True)
class ScenarioResult:
    concurrence: float
    fidelity: float
    p_lr: float
    pops_predeform: PopulationVector
    pops_final: PopulationVector
    indistinguishability: float
    pops_lr: Optional[PopulationVector] = None
    deformed: bool = True


def deform_populations(pops):
    """La déformation envoie chaque état de base sur son homologue barré : populations inchangées."""
    return pops


def _final_state(s):
    coeffs = s.coeffs
    g0 = s.bath.gamma0
    pre = predeformation_state(s.channel, s.bath, s.t_deform / g0)
    rates = effective_rates(coeffs, g0)
    final = evolve(s.channel, deform_populations(pre), rates, (s.t_total - s.t_deform) / g0)
    return coeffs, pre, final, project(final, coeffs)


def run(s):
    coeffs, pre, final, outcome = _final_state(s)
    report = metric_report(outcome.rho_lr)
    return ScenarioResult(
        concurrence=report.concurrence,
        fidelity=report.fidelity_singlet,
        p_lr=outcome.p_lr,
        pops_predeform=pre,
        pops_final=final,
        indistinguishability=indistinguishability(coeffs),
        pops_lr=outcome.pops_lr,
    )


def distinguishable_baseline(channel, bath, t):
    """(concurrence, fidélité) de l'état discernable bruité au temps adimensionné γ₀t."""
    if t < 0:
        raise InvalidParameter(f"Le temps doit être positif ou nul (reçu {t})")
    rho = bell_diagonal_to_density(predeformation_state(channel, bath, t / bath.gamma0))
    report = metric_report(rho)
    return report.concurrence, report.fidelity_singlet


def _baseline_result(channel, bath, t, indist):
    pops = predeformation_state(channel, bath, t / bath.gamma0)
    concurrence, fidelity = distinguishable_baseline(channel, bath, t)
    return ScenarioResult(concurrence, fidelity, 1.0, pops, pops, indist, pops, deformed=False)


# --- BALAYAGES ---

@dataclass(frozen=True)
class SweepGrid:
    bath: BathParams
    channels: tuple
    statistics: tuple
    indist: tuple
    t_deform: tuple
    t_total: tuple
    sign_pattern: SignPattern = SignPattern.AUTO
    coeffs: Optional[DeformationCoeffs] = None
    # t_total contient alors des durées Δ comptées depuis t_D
    relative_time: bool = False

    def __post_init__(self):
        axes = (self.channels, self.statistics, self.indist, self.t_deform, self.t_total)
        if any(len(axis) == 0 for axis in axes):
            raise InvalidParameter("Grille de balayage vide")

    def points(self):
        if self.coeffs is not None:
            statistics = (self.coeffs.statistics,)
            indist = (indistinguishability(self.coeffs),)
        else:
            statistics, indist = self.statistics, self.indist
        for channel, stats, i_value, t_d, t in itertools.product(
                self.channels, statistics, indist, self.t_deform, self.t_total):
            yield SweepPoint(channel, stats, i_value, t_d, t_d + t if self.relative_time else t, self)


@dataclass(frozen=True)
class SweepPoint:
    channel: ChannelKind
    statistics: Statistics
    indist: float
    t_deform: float
    t_total: float
    grid: SweepGrid

    def scenario(self):
        deformation = self.grid.coeffs or IndistinguishabilityTarget(
            self.indist, self.statistics, self.grid.sign_pattern)
        return Scenario(self.channel, self.grid.bath, deformation, self.t_deform, self.t_total)


@dataclass(frozen=True)
class SweepRow:
    channel: ChannelKind
    eta: int
    indist: float
    t_deform: float
    t_total: float
    result: Optional[ScenarioResult] = None
    error: Optional[str] = None

    def _field(self, name):
        return getattr(self.result, name) if self.result is not None else math.nan

    @property
    def concurrence(self):
        return self._field("concurrence")

    @property
    def fidelity(self):
        return self._field("fidelity")

    @property
    def p_lr(self):
        return self._field("p_lr")


def run_point(point):
    row = dict(channel=point.channel, eta=point.statistics.eta, indist=point.indist,
               t_deform=point.t_deform, t_total=point.t_total)
    try:
        if point.t_total < point.t_deform:
            result = _baseline_result(point.channel, point.grid.bath, point.t_total, point.indist)
        else:
            result = run(point.scenario())
        return SweepRow(result=result, **row)
    except SloccSimError as e:
        logging.warning(f"Point ({point.channel.value}, eta={point.statistics.eta}, I={point.indist}, "
                        f"tD={point.t_deform}, t={point.t_total}) en erreur : {e}")
        return SweepRow(error=f"{type(e).__name__}: {e}", **row)


def sweep(grid, workers=1):
    points = list(grid.points())
    logging.info(f"Balayage de {len(points)} points ({workers} processus)")
    if workers > 1 and len(points) > 1:
        chunksize = max(1, len(points) // (workers * 4))
        with ProcessPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(run_point, points, chunksize=chunksize))
    else:
        rows = [run_point(point) for point in points]
    failed = sum(row.error is not None for row in rows)
    if failed:
        logging.warning(f"{failed} point(s) du balayage en erreur")
    below = sum(row.p_lr < P_LR_FLOOR for row in rows if row.result is not None)
    if below:
        logging.warning(f"{below} point(s) du balayage avec P_LR < 0.5")
    return rows


# --- MORT SUBITE ET ASYMPTOTES ---

def _concurrence_margin(s, t, floor):
    _, _, _, outcome = _final_state(replace(s, t_total=float(t)))
    return xstate_concurrence_witness(density_to_xstate(outcome.rho_lr)) - floor


def sudden_death_time(s, t_max=100.0, floor=0.0, scan_points=400):
    """Premier γ₀t ≥ γ₀t_D où la concurrence passe sous `floor`, ou None s'il n'existe pas avant t_max."""
    if t_max < s.t_deform:
        raise InvalidParameter(f"t_max = {t_max} antérieur à γ₀t_D = {s.t_deform}")
    grid = np.linspace(s.t_deform, t_max, scan_points)
    margins = [_concurrence_margin(s, t, floor) for t in grid]
    below = [i for i, m in enumerate(margins) if m <= 0.0]
    if not below:
        return None
    first = below[0]
    if first == 0:
        return float(grid[0])
    return float(bisect(lambda t: _concurrence_margin(s, t, floor), grid[first - 1], grid[first], xtol=1e-12))


def asymptotic_concurrence(channel, coeffs):
    """Limite t → ∞ de la concurrence pour les canaux non dissipatifs."""
    if channel is ChannelKind.AMPLITUDE_DAMPING:
        raise InvalidParameter("Asymptote fermée disponible uniquement pour phase et dep")
    w_sym, w_anti = slocc_weights(coeffs)
    if channel is ChannelKind.PHASE_DAMPING:
        pops = np.array([w_sym, w_anti]) / (w_sym + w_anti)
    else:
        pops = np.array([w_sym, w_sym, w_sym, w_anti]) / (3.0 * w_sym + w_anti)
    return max(0.0, 2.0 * float(pops.max()) - 1.0)
