import logging

import click
import numpy as np

from commands.options import config_from_options, open_output, scenario_options
from sloccsim.noise import ChannelKind
from sloccsim.output import write_rows
from sloccsim.pipeline import sweep

CHANNEL_SUFFIXES = {
    "pd": ChannelKind.PHASE_DAMPING,
    "dep": ChannelKind.DEPOLARIZING,
    "ad": ChannelKind.AMPLITUDE_DAMPING,
}

# Axe d'indiscernabilité par défaut et grille en temps total (False) ou en durée après t_D (True).
FIGURE_KINDS = {
    "conc": ((0.2, 0.5, 0.8, 1.0), False),
    "prob": ((0.0, 0.25, 0.5, 0.75, 1.0), True),
    "fid": (tuple(float(v) for v in np.linspace(0.0, 1.0, 21)), True),
}

FIGURE_IDS = [f"{kind}-{suffix}" for suffix in CHANNEL_SUFFIXES for kind in FIGURE_KINDS]


@click.command(name="figure", help="Génère les données d'une figure (CSV/JSON).")
@click.argument("figure_id", type=click.Choice(FIGURE_IDS))
@scenario_options
def figure_command(figure_id, config_path, **options):
    kind, suffix = figure_id.split("-")
    channel = CHANNEL_SUFFIXES[suffix]
    default_indist, relative_time = FIGURE_KINDS[kind]

    config = config_from_options(config_path, options)
    # --indist explicite remplace l'axe de la figure
    indist = None if options.get("indist") is not None else default_indist
    grid = config.sweep_grid(t_values=config.t_grid.values(), indist=indist, channels=(channel,),
                             relative_time=relative_time)
    rows = sweep(grid, workers=config.workers)

    out = config.out or f"{figure_id}.{config.format}"
    with open_output(out) as stream:
        write_rows(rows, stream, config.format)
    logging.info(f"Figure {figure_id} : {len(rows)} lignes")


def setup(cli):
    cli.add_command(figure_command)
