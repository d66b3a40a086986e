"""Projection sLOCC sur les issues « une particule par région » et probabilité de postsélection."""
from dataclasses import dataclass

import numpy as np

from .deform import c_norms, slocc_weights
from .errors import DegenerateState, ZeroPostselectionWeight
from .qstate import ANTI_INDEX, DensityMatrix, PopulationVector, bell_diagonal_to_density


@dataclass(frozen=True, eq=False)
class SloccOutcome:
    rho_lr: DensityMatrix
    n_weight: float
    p_lr: float
    pops_lr: PopulationVector


def weighted_populations(pops, c):
    """Populations pondérées par (w_sym, w_anti), non normalisées."""
    w_sym, w_anti = slocc_weights(c)
    weights = np.full(4, w_sym)
    weights[ANTI_INDEX] = w_anti
    return PopulationVector(pops.basis, tuple(weights * pops.as_array()), normalized=False)


def postselection_probability(pops, c):
    c_plus, c_minus = c_norms(c)
    denominator = c_plus ** 2 * pops.symmetric + c_minus ** 2 * pops.anti
    if denominator <= 0.0:
        raise DegenerateState(f"Dénominateur de P_LR nul pour {pops.as_dict()} et {c}")
    n_weight = weighted_populations(pops, c).total
    return min(1.0, max(0.0, n_weight / denominator))


def project(pops, c):
    weighted = weighted_populations(pops, c)
    n_weight = weighted.total
    if n_weight <= np.finfo(float).tiny:
        raise ZeroPostselectionWeight(
            f"Poids de postsélection nul (N = {n_weight:.3e}) pour {pops.as_dict()} et {c}")
    pops_lr = PopulationVector(pops.basis, tuple(weighted.as_array() / n_weight))
    return SloccOutcome(
        rho_lr=bell_diagonal_to_density(pops_lr),
        n_weight=n_weight,
        p_lr=postselection_probability(pops, c),
        pops_lr=pops_lr,
    )
