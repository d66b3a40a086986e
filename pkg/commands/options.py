"""Options partagées par les sous-commandes et ouverture des sorties."""
import contextlib
import logging

import click

from sloccsim.config import load_config

# nom du paramètre click -> clé de configuration
OPTION_KEYS = {
    "gamma0": "GAMMA0",
    "lambda_": "LAMBDA",
    "channel": "CHANNEL",
    "eta": "ETA",
    "sign_pattern": "SIGN_PATTERN",
    "indist": "INDIST",
    "coeffs": "COEFFS",
    "td": "TD",
    "t_total": "T",
    "t_grid": "T_GRID",
    "out": "OUT",
    "output_format": "FORMAT",
    "seed": "SEED",
    "workers": "WORKERS",
}

_OPTIONS = [
    click.option("--config", "config_path", default=None, help="Fichier de configuration clé=valeur."),
    click.option("--gamma0", default=None, help="Taux de décroissance γ₀."),
    click.option("--lambda", "lambda_", default=None, help="Largeur spectrale λ du bain (défaut : 3·γ₀)."),
    click.option("--channel", default=None, help="Canal(aux) : phase, dep, ad (liste séparée par des virgules)."),
    click.option("--eta", default=None, help="Statistique(s) : fermion, boson."),
    click.option("--sign-pattern", default=None, help="auto, positive, neg-l, neg-r, neg-lp, neg-rp."),
    click.option("--indist", default=None, help="Valeur(s) d'indiscernabilité dans [0, 1]."),
    click.option("--coeffs", default=None, help="Coefficients explicites l,r,l',r'."),
    click.option("--td", default=None, help="Temps(s) de déformation γ₀t_D."),
    click.option("--t", "t_total", default=None, help="Temps total(aux) γ₀t."),
    click.option("--t-grid", default=None, help="Grille de temps début:fin:points."),
    click.option("--out", default=None, help="Fichier de sortie."),
    click.option("--format", "output_format", default=None, help="csv ou json."),
    click.option("--seed", default=None, help="Graine de la suite de validation."),
    click.option("--workers", default=None, help="Nombre de processus pour les balayages."),
]


def scenario_options(func):
    """Décorateur ajoutant les options de configuration communes à une sous-commande."""
    for option in reversed(_OPTIONS):
        func = option(func)
    return func


def config_from_options(config_path, options):
    overrides = {OPTION_KEYS[name]: value for name, value in options.items() if name in OPTION_KEYS}
    return load_config(config_path, overrides)


@contextlib.contextmanager
def open_output(path):
    """Fichier UTF-8 à fins de ligne LF, ou la sortie standard si aucun chemin n'est donné."""
    if path is None:
        yield click.get_text_stream("stdout")
        return
    with open(path, "w", encoding="utf-8", newline="") as stream:
        yield stream
    logging.info(f"Résultats écrits dans {path}")
