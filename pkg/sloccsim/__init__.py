"""Simulateur du protocole sLOCC de récupération d'intrication pour deux qubits identiques."""
from .deform import DeformationCoeffs, SignPattern, Statistics
from .errors import ConfigError, SloccSimError, ValidationFailure
from .noise import BathParams, ChannelKind
from .pipeline import IndistinguishabilityTarget, Scenario, ScenarioResult, run, sweep

__version__ = "1.0.0"
