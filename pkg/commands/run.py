import logging

import click

from commands.options import config_from_options, open_output, scenario_options
from sloccsim.errors import ConfigError
from sloccsim.output import render_result, write_rows
from sloccsim.pipeline import IndistinguishabilityTarget, Scenario, SweepRow, run


def _single(name, values):
    if values is None or len(values) != 1:
        raise ConfigError(f"`run` exige exactement une valeur pour {name} (reçu {values})")
    return values[0]


@click.command(name="run", help="Exécute un scénario unique et affiche ses observables.")
@scenario_options
def run_command(config_path, **options):
    config = config_from_options(config_path, options)
    channel = _single("--channel", config.channels)
    t_deform = _single("--td", config.t_deform)
    t_total = _single("--t", config.t_total)
    if config.coeffs is not None:
        deformation = config.coeffs
    else:
        deformation = IndistinguishabilityTarget(_single("--indist", config.indist),
                                                 _single("--eta", config.statistics), config.sign_pattern)

    scenario = Scenario(channel, config.bath, deformation, t_deform, t_total)
    result = run(scenario)
    logging.info(f"Scénario {channel.value} (tD = {t_deform}, t = {t_total}) : C = {result.concurrence:.6g}")
    click.echo(render_result(scenario, result))

    if config.out:
        row = SweepRow(channel, scenario.coeffs.eta, result.indistinguishability, t_deform, t_total, result)
        with open_output(config.out) as stream:
            write_rows([row], stream, config.format)


def setup(cli):
    cli.add_command(run_command)
