"""Configuration : options de ligne de commande > fichier de configuration > variables SLOCC_* > défauts.

Le fichier de configuration est un fichier clé=valeur au format dotenv, lu avec dotenv_values().
"""
import logging
import math
import os
from dataclasses import dataclass
from typing import Optional

import numpy as np
from dotenv import dotenv_values

from .deform import DeformationCoeffs, SignPattern, Statistics
from .errors import ConfigError, SloccSimError
from .noise import BathParams, ChannelKind
from .pipeline import SweepGrid

ENV_PREFIX = "SLOCC_"

DEFAULTS = {
    "GAMMA0": "1",
    "LAMBDA": None,  # 3 * GAMMA0
    "CHANNEL": "phase",
    "ETA": "fermion",
    "SIGN_PATTERN": "auto",
    "INDIST": "0.2,0.5,0.8,1",
    "COEFFS": None,
    "TD": "0.1,0.5,1,2",
    "T": None,
    "T_GRID": "0:5:400",
    "OUT": None,
    "FORMAT": "csv",
    "SEED": "0",
    "WORKERS": "1",
}

OUTPUT_FORMATS = ("csv", "json")


@dataclass(frozen=True)
class TimeGrid:
    start: float
    stop: float
    points: int

    def values(self):
        return tuple(float(v) for v in np.linspace(self.start, self.stop, self.points))


@dataclass(frozen=True)
class Config:
    gamma0: float
    lambda_: float
    channels: tuple
    statistics: tuple
    sign_pattern: SignPattern
    indist: tuple
    coeffs: Optional[DeformationCoeffs]
    t_deform: tuple
    t_total: Optional[tuple]
    t_grid: TimeGrid
    out: Optional[str]
    format: str
    seed: int
    workers: int

    @property
    def bath(self):
        return BathParams(self.gamma0, self.lambda_)

    def times(self):
        """Temps totaux : liste explicite (--t) sinon la grille."""
        return self.t_total if self.t_total is not None else self.t_grid.values()

    def sweep_grid(self, t_values=None, indist=None, channels=None, relative_time=False):
        return SweepGrid(
            bath=self.bath,
            channels=tuple(channels) if channels is not None else self.channels,
            statistics=self.statistics,
            indist=tuple(indist) if indist is not None else self.indist,
            t_deform=self.t_deform,
            t_total=tuple(t_values) if t_values is not None else self.times(),
            sign_pattern=self.sign_pattern,
            coeffs=self.coeffs,
            relative_time=relative_time,
        )


# --- ANALYSEURS ---

def parse_float(key, text):
    try:
        value = float(text)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} : nombre attendu, reçu '{text}'") from None
    if not math.isfinite(value):
        raise ConfigError(f"{key} : valeur non finie '{text}'")
    return value


def parse_list(key, text, item=parse_float):
    parts = [part.strip() for part in str(text).split(",")]
    if not parts or any(part == "" for part in parts):
        raise ConfigError(f"{key} : liste séparée par des virgules attendue, reçu '{text}'")
    return tuple(item(key, part) for part in parts)


def parse_time_grid(key, text):
    fields = str(text).split(":")
    if len(fields) != 3:
        raise ConfigError(f"{key} : format début:fin:points attendu, reçu '{text}'")
    start, stop = parse_float(key, fields[0]), parse_float(key, fields[1])
    try:
        points = int(fields[2])
    except ValueError:
        raise ConfigError(f"{key} : nombre de points entier attendu, reçu '{fields[2]}'") from None
    if points < 2:
        raise ConfigError(f"{key} : au moins 2 points requis (reçu {points})")
    if not stop > start:
        raise ConfigError(f"{key} : grille non strictement croissante ({start} -> {stop})")
    if start < 0:
        raise ConfigError(f"{key} : temps négatif ({start})")
    return TimeGrid(start, stop, points)


def _parse_enum(key, parser):
    def parse(_, token):
        try:
            return parser(token)
        except SloccSimError as e:
            raise ConfigError(f"{key} : {e}") from None
    return parse


def _parse_int(key, text, minimum):
    try:
        value = int(text)
    except (TypeError, ValueError):
        raise ConfigError(f"{key} : entier attendu, reçu '{text}'") from None
    if value < minimum:
        raise ConfigError(f"{key} : valeur >= {minimum} attendue (reçu {value})")
    return value


def _non_negative(key, values):
    if any(v < 0 for v in values):
        raise ConfigError(f"{key} : valeurs positives ou nulles attendues ({values})")
    return values


# --- CHARGEMENT ---

def read_config_file(path):
    if not os.path.isfile(path):
        raise ConfigError(f"Fichier de configuration introuvable : {path}")
    values = {key.upper(): value for key, value in dotenv_values(path).items()}
    unknown = sorted(set(values) - set(DEFAULTS))
    if unknown:
        raise ConfigError(f"Clés inconnues dans {path} : {', '.join(unknown)}")
    return values


def resolve_raw(path=None, overrides=None):
    """Valeurs brutes (texte) après application des priorités."""
    file_values = read_config_file(path) if path else {}
    overrides = {key.upper(): value for key, value in (overrides or {}).items()}
    raw = {}
    for key, default in DEFAULTS.items():
        if overrides.get(key) is not None:
            raw[key] = str(overrides[key])
        elif file_values.get(key) not in (None, ""):
            raw[key] = file_values[key]
        elif os.getenv(ENV_PREFIX + key):
            raw[key] = os.getenv(ENV_PREFIX + key)
        else:
            raw[key] = default
    return raw


def load_config(path=None, overrides=None):
    raw = resolve_raw(path, overrides)
    gamma0 = parse_float("GAMMA0", raw["GAMMA0"])
    lambda_ = parse_float("LAMBDA", raw["LAMBDA"]) if raw["LAMBDA"] is not None else 3.0 * gamma0
    if gamma0 <= 0 or lambda_ <= 0:
        raise ConfigError(f"GAMMA0 et LAMBDA doivent être > 0 (reçu {gamma0}, {lambda_})")

    indist = parse_list("INDIST", raw["INDIST"])
    if any(not 0.0 <= i <= 1.0 for i in indist):
        raise ConfigError(f"INDIST : valeurs dans [0, 1] attendues ({indist})")

    coeffs = None
    statistics = parse_list("ETA", raw["ETA"], _parse_enum("ETA", Statistics.parse))
    if raw["COEFFS"] is not None:
        values = parse_list("COEFFS", raw["COEFFS"])
        if len(values) != 4:
            raise ConfigError(f"COEFFS : quatre valeurs l,r,l',r' attendues ({raw['COEFFS']})")
        try:
            coeffs = DeformationCoeffs(*values, eta=statistics[0].eta)
        except SloccSimError as e:
            raise ConfigError(f"COEFFS : {e}") from None

    output_format = str(raw["FORMAT"]).strip().lower()
    if output_format not in OUTPUT_FORMATS:
        raise ConfigError(f"FORMAT : csv ou json attendu (reçu '{raw['FORMAT']}')")

    config = Config(
        gamma0=gamma0,
        lambda_=lambda_,
        channels=parse_list("CHANNEL", raw["CHANNEL"], _parse_enum("CHANNEL", ChannelKind.parse)),
        statistics=statistics,
        sign_pattern=_parse_enum("SIGN_PATTERN", SignPattern.parse)(None, raw["SIGN_PATTERN"]),
        indist=indist,
        coeffs=coeffs,
        t_deform=_non_negative("TD", parse_list("TD", raw["TD"])),
        t_total=_non_negative("T", parse_list("T", raw["T"])) if raw["T"] is not None else None,
        t_grid=parse_time_grid("T_GRID", raw["T_GRID"]),
        out=raw["OUT"],
        format=output_format,
        seed=_parse_int("SEED", raw["SEED"], 0),
        workers=_parse_int("WORKERS", raw["WORKERS"], 1),
    )
    logging.info(f"Configuration chargée (fichier : {path or 'aucun'}, canaux : "
                 f"{','.join(c.value for c in config.channels)}, gamma0 = {gamma0}, lambda = {lambda_})")
    return config
