"""Exceptions du simulateur.

Toutes les erreurs de calcul héritent de SloccSimError ; la CLI les convertit
en code de sortie 3. ConfigError (2) et ValidationFailure (5) sont à part.
"""


class SloccSimError(Exception):
    """Erreur de scénario ou de calcul."""


class InvalidState(SloccSimError):
    pass


class NonXState(SloccSimError):
    pass


class InvalidParameter(SloccSimError):
    pass


class UnsupportedKrausForm(SloccSimError):
    pass


class DegenerateOverlap(SloccSimError):
    pass


class ZeroPostselectionWeight(SloccSimError):
    pass


class DegenerateState(SloccSimError):
    pass


class NumericalFailure(SloccSimError):
    pass


class ConfigError(Exception):
    """Configuration ou options de ligne de commande invalides."""


class ValidationFailure(Exception):
    """Au moins une vérification de la suite d'oracles a échoué."""

    def __init__(self, failed):
        self.failed = list(failed)
        names = ", ".join(check.name for check in self.failed)
        super().__init__(f"Vérifications en échec : {names}")
