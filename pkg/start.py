import importlib
import logging
from logging.handlers import RotatingFileHandler

import click
from dotenv import load_dotenv

from sloccsim.errors import ConfigError, SloccSimError, ValidationFailure

EXTENSIONS = ['run', 'sweep', 'figure', 'validate']

# Ordre significatif : première correspondance retenue.
EXIT_CODES = (
    (ConfigError, 2),
    (ValidationFailure, 5),
    (SloccSimError, 3),
    (OSError, 4),
)


def setup_logging(log_file='sloccsim.log'):
    # --- Configuration avancée du logging ---
    logger = logging.getLogger()
    logger.setLevel(logging.INFO)

    log_format = logging.Formatter('%(asctime)s - %(levelname)s - [%(filename)s:%(lineno)d] - %(message)s', datefmt='%d-%m-%Y %H:%M:%S')

    console_handler = logging.StreamHandler()
    console_handler.setFormatter(log_format)
    logger.addHandler(console_handler)

    # Jusqu'à 5 fichiers de 5MB chacun.
    file_handler = RotatingFileHandler(log_file, maxBytes=5*1024*1024, backupCount=5, encoding='utf-8')
    file_handler.setFormatter(log_format)
    logger.addHandler(file_handler)


def exit_code_for(error):
    for error_type, code in EXIT_CODES:
        if isinstance(error, error_type):
            return code
    return None


class SimulatorCLI(click.Group):
    """Groupe de commandes avec gestion d'erreurs globale et journalisation des commandes."""

    def invoke(self, ctx):
        try:
            result = super().invoke(ctx)
        except (ConfigError, ValidationFailure, SloccSimError, OSError) as error:
            code = exit_code_for(error)
            logging.error(f"Commande '{ctx.invoked_subcommand}' interrompue (code {code}) : {error}")
            click.echo(f"Erreur : {error}", err=True)
            ctx.exit(code)
        except (click.exceptions.Exit, click.exceptions.Abort, click.ClickException):
            raise
        except Exception as error:
            logging.error(f"Une erreur non gérée est survenue pour la commande '{ctx.invoked_subcommand}':", exc_info=error)
            raise
        logging.info(f"Commande '{ctx.invoked_subcommand}' terminée")
        return result


def build_cli():
    @click.group(cls=SimulatorCLI, help="Simulateur de récupération d'intrication par sLOCC.")
    def cli():
        pass

    for extension in EXTENSIONS:
        importlib.import_module(f'commands.{extension}').setup(cli)
        logging.info(f'Loaded: commands.{extension}')
    return cli


if __name__ == '__main__':
    setup_logging()
    load_dotenv()
    build_cli()()
