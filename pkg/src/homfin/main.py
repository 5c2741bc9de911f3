# src/homfin/main.py

import click
from dotenv import load_dotenv

# --- Load Environment Variables ---
# Must run before the ConfigManager reads HOMFIN_* overrides.
# Existing environment variables are not overwritten.
load_dotenv()

# --- Core Application Imports ---
from homfin.core.app_factory import create_app_context

# --- CLI Command Imports ---
from homfin.cli.job_commands import group_bires_command, resolve_command, retract_command
from homfin.cli.settings_commands import settings_group
from homfin.cli.verify_commands import verify_command
from homfin import __version__

# -----------------------------------------------------------------------------
# Main CLI Group
# -----------------------------------------------------------------------------

@click.group(context_settings=dict(help_option_names=['-h', '--help']))
@click.version_option(__version__, '-v', '--version', message='%(prog)s, version %(version)s')
@click.pass_context
def cli(ctx):
    """
    homfin: exact FP_n certification for graded algebras and finite
    monoid algebras.

    Every computation is carried out over Q or GF(p) with exact arithmetic,
    truncated at a degree bound D. Results below D are exact; verdicts that
    depend on what happens at or above D are reported as inconclusive.
    """
    ctx.obj = create_app_context()


# --- Register all command groups and standalone commands ---
cli.add_command(resolve_command)
cli.add_command(group_bires_command)
cli.add_command(retract_command)
cli.add_command(verify_command)
cli.add_command(settings_group)

# -----------------------------------------------------------------------------
# Application Entry Point
# -----------------------------------------------------------------------------

if __name__ == "__main__":
    cli(obj={})
