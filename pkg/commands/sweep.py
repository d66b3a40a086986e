import click

from commands.options import config_from_options, open_output, scenario_options
from sloccsim.output import write_rows
from sloccsim.pipeline import sweep


@click.command(name="sweep", help="Balaye la grille canal × statistique × I × tD × t.")
@scenario_options
def sweep_command(config_path, **options):
    config = config_from_options(config_path, options)
    rows = sweep(config.sweep_grid(), workers=config.workers)
    with open_output(config.out) as stream:
        write_rows(rows, stream, config.format)


def setup(cli):
    cli.add_command(sweep_command)
