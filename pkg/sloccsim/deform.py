"""Coefficients de déformation, mesure entropique d'indiscernabilité, normes C± et poids sLOCC."""
import math
from dataclasses import dataclass, replace
from enum import Enum
from functools import lru_cache

from scipy.optimize import bisect

from .errors import DegenerateOverlap, InvalidParameter

NORM_TOL = 1e-12
THETA_MAX = math.pi / 4.0


class Statistics(Enum):
    FERMION = -1
    BOSON = 1

    @property
    def eta(self):
        return self.value

    @classmethod
    def parse(cls, token):
        if isinstance(token, cls):
            return token
        key = str(token).strip().lower()
        aliases = {"fermion": cls.FERMION, "-1": cls.FERMION, "boson": cls.BOSON, "+1": cls.BOSON, "1": cls.BOSON}
        if key not in aliases:
            raise InvalidParameter(f"Statistique inconnue '{token}' (attendu : fermion ou boson)")
        return aliases[key]


class SignPattern(Enum):
    AUTO = "auto"
    POSITIVE = "positive"
    NEG_L = "neg-l"
    NEG_R = "neg-r"
    NEG_LP = "neg-lp"
    NEG_RP = "neg-rp"

    @classmethod
    def parse(cls, token):
        if isinstance(token, cls):
            return token
        try:
            return cls(str(token).strip().lower())
        except ValueError:
            choices = ", ".join(s.value for s in cls)
            raise InvalidParameter(f"Motif de signes inconnu '{token}' (attendu : {choices})") from None

    def resolve(self, statistics):
        if self is not SignPattern.AUTO:
            return self
        return SignPattern.POSITIVE if statistics is Statistics.FERMION else SignPattern.NEG_RP


@dataclass(frozen=True)
class DeformationCoeffs:
    l: float
    r: float
    lp: float
    rp: float
    eta: int = -1
    constrained: bool = True

    def __post_init__(self):
        if self.eta not in (-1, 1):
            raise InvalidParameter(f"eta doit valoir +1 ou -1 (reçu {self.eta})")
        for name, (a, b) in {"(l, r)": (self.l, self.r), "(l', r')": (self.lp, self.rp)}.items():
            if abs(a * a + b * b - 1.0) > NORM_TOL:
                raise InvalidParameter(f"Coefficients {name} non normalisés : {a}² + {b}² = {a * a + b * b:.15g}")
        if self.constrained and abs(abs(self.r) - abs(self.lp)) > NORM_TOL:
            raise InvalidParameter(f"Contrainte |r| = |l'| violée : |{self.r}| != |{self.lp}|")

    @property
    def statistics(self):
        return Statistics(self.eta)

    @property
    def amplitudes(self):
        """⟨X|ψ_i⟩ indexés [X][i] avec X ∈ (L, R)."""
        return ((self.l, self.lp), (self.r, self.rp))


def binary_entropy(x):
    total = 0.0
    for q in (x, 1.0 - x):
        if q > 0.0:
            total -= q * math.log2(q)
    return total


def indistinguishability(c):
    a = (c.l * c.rp) ** 2
    b = (c.lp * c.r) ** 2
    z = a + b
    if z == 0.0:
        raise DegenerateOverlap(f"Probabilités croisées nulles pour {c}")
    return binary_entropy(a / z)


def coeffs_from_theta(theta, eta=-1, sign_pattern=SignPattern.AUTO):
    """Famille canonique l = r' = cos θ, r = l' = sin θ, puis motif de signes."""
    if abs(theta - THETA_MAX) < 1e-15:
        cos_t = sin_t = math.sqrt(0.5)
    else:
        cos_t, sin_t = math.cos(theta), math.sin(theta)
    coeffs = DeformationCoeffs(cos_t, sin_t, sin_t, cos_t, eta=eta)
    pattern = SignPattern.parse(sign_pattern).resolve(Statistics(eta))
    field = {SignPattern.NEG_L: "l", SignPattern.NEG_R: "r",
             SignPattern.NEG_LP: "lp", SignPattern.NEG_RP: "rp"}.get(pattern)
    if field is None:
        return coeffs
    return replace(coeffs, **{field: -getattr(coeffs, field)})


@lru_cache(maxsize=4096)
def theta_for_indistinguishability(i_target):
    if not 0.0 <= i_target <= 1.0:
        raise InvalidParameter(f"Indiscernabilité hors de [0, 1] : {i_target}")
    if i_target == 0.0:
        return 0.0
    if i_target == 1.0:
        return THETA_MAX

    def gap(theta):
        return binary_entropy(math.cos(theta) ** 4 / (math.cos(theta) ** 4 + math.sin(theta) ** 4)) - i_target

    if gap(THETA_MAX) <= 0.0:
        return THETA_MAX
    return bisect(gap, 0.0, THETA_MAX, xtol=1e-15, maxiter=200)


def coeffs_from_indistinguishability(i_target, eta=-1, sign_pattern=SignPattern.AUTO):
    return coeffs_from_theta(theta_for_indistinguishability(i_target), eta, sign_pattern)


def overlap(c):
    return c.l * c.lp + c.r * c.rp


def c_norms(c):
    s2 = overlap(c) ** 2
    return (math.sqrt(max(0.0, 1.0 + c.eta * s2)), math.sqrt(max(0.0, 1.0 - c.eta * s2)))


def slocc_weights(c):
    w_sym = (c.l * c.rp + c.eta * c.lp * c.r) ** 2
    w_anti = (c.l * c.rp - c.eta * c.lp * c.r) ** 2
    return w_sym, w_anti
