import click

from commands.options import config_from_options, scenario_options
from sloccsim.errors import ValidationFailure
from sloccsim.oracles import run_validation_suite


@click.command(name="validate", help="Exécute la suite d'oracles de validation.")
@scenario_options
def validate_command(config_path, **options):
    config = config_from_options(config_path, options)
    results = run_validation_suite(config.seed)
    for result in results:
        status = "OK" if result.passed else "ÉCHEC"
        click.echo(f"{result.name:<32} {status:<6} écart max = {result.max_deviation:.3e} "
                   f"(tolérance {result.tolerance:.1e})")
    failed = [result for result in results if not result.passed]
    if failed:
        raise ValidationFailure(failed)


def setup(cli):
    cli.add_command(validate_command)
