# src/homfin/cli/job_commands.py

import click
from pydantic import ValidationError

from homfin.core.exceptions import HomfinError
from homfin.formats.report_format import render_report

FIELD_HELP = "Coefficient field: Q or GF(p). Files may set their own."
FORMATS = click.Choice(["table", "json", "csv"], case_sensitive=False)
INPUT = click.Path(exists=True, dir_okay=False, readable=True)


def _run_job(ctx, command: str, method: str, **overrides):
    """
    Builds the JobConfig, runs it and prints the report. Domain errors are
    logged with their witness and end the process with exit code 1.
    """
    logger = ctx.obj['logger']
    runner = ctx.obj['runner']

    try:
        job = runner.job_config(command, **overrides)
        report = getattr(runner, method)(job)
        click.echo(render_report(report, job.output_format))
    except HomfinError as e:
        logger.error(f"{command} failed: {e}")
        if e.witness is not None:
            logger.error(f"Witness: {e.witness}")
        click.secho(f"✖ FAIL: {e}", fg="red", err=True)
        ctx.exit(1)
    except ValidationError as e:
        logger.error(f"Invalid settings for {command}: {e}")
        click.secho(f"✖ FAIL: invalid settings: {e}", fg="red", err=True)
        ctx.exit(1)
    except Exception as e:
        logger.error(f"An unexpected error occurred in '{command}': {e}", exc_info=True)
        click.secho(f"✖ FAIL: unexpected {type(e).__name__}: {e}", fg="red", err=True)
        ctx.exit(1)

    logger.debug(f"{command} finished with status {report.status}")
    ctx.exit(report.exit_code)

# -----------------------------------------------------------------------------
# Resolve Command
# -----------------------------------------------------------------------------

@click.command(name="resolve", help="Resolve K over an algebra (.alg) or a finite monoid (.mon).")
@click.argument("input_path", type=INPUT)
@click.option("--side", type=click.Choice(["left", "right", "weak-bi", "bi"]), default="left", show_default=True,
              help="Which finiteness property to resolve for.")
@click.option("--field", default=None, help=FIELD_HELP)
@click.option("-D", "--degree-bound", type=int, default=None, help="Truncation degree D (default from config).")
@click.option("-n", "--hom-bound", type=int, default=None, help="Homological bound n (default from config).")
@click.option("--format", "output_format", type=FORMATS, default=None, help="Output format (default from config).")
@click.pass_context
def resolve_command(ctx, input_path, side, field, degree_bound, hom_bound, output_format):
    """
    Builds a resolution of the trivial module on the chosen side: minimal for
    graded algebras, constructive for monoid algebras. Prints ranks or Betti
    numbers, exactness and minimality checks and the FP_n verdict.
    """
    _run_job(ctx, "resolve", "resolve", input_path=input_path, side=side, field=field,
             degree_bound=degree_bound, hom_bound=hom_bound, output_format=output_format and output_format.lower())

# -----------------------------------------------------------------------------
# Group Bi-resolution Command
# -----------------------------------------------------------------------------

@click.command(name="group-bires", help="Turn a left resolution of K over KG into a bimodule resolution of KG.")
@click.argument("input_path", type=INPUT)
@click.option("--field", default=None, help=FIELD_HELP)
@click.option("-n", "--hom-bound", type=int, default=None, help="Homological bound n (default from config).")
@click.option("--format", "output_format", type=FORMATS, default=None, help="Output format (default from config).")
@click.pass_context
def group_bires_command(ctx, input_path, field, hom_bound, output_format):
    """
    Reads a group table, resolves K over KG, applies the ⊗̂ construction and
    reports the bi-resolution ranks together with its exactness, the free
    bimodule identification and the round trip back to a left resolution.
    Monoids without inverses are rejected.
    """
    _run_job(ctx, "group-bires", "group_bires", input_path=input_path, field=field,
             hom_bound=hom_bound, output_format=output_format and output_format.lower())

# -----------------------------------------------------------------------------
# Retract Command
# -----------------------------------------------------------------------------

@click.command(name="retract", help="Transport an FP_n verdict from an algebra to a retract (.ret).")
@click.argument("input_path", type=INPUT)
@click.option("--side", type=click.Choice(["left", "right", "weak-bi", "bi"]), default="left", show_default=True,
              help="Which finiteness property to transport.")
@click.option("--field", default=None, help=FIELD_HELP)
@click.option("-D", "--degree-bound", type=int, default=None, help="Truncation degree D (default from config).")
@click.option("-n", "--hom-bound", type=int, default=None, help="Homological bound n (default from config).")
@click.option("--format", "output_format", type=FORMATS, default=None, help="Output format (default from config).")
@click.pass_context
def retract_command(ctx, input_path, side, field, degree_bound, hom_bound, output_format):
    """
    Validates the retraction in the file, resolves over the big algebra and
    builds the twin resolution over the retract. Prints top and bottom ranks,
    both exactness checks and the transported verdict.
    """
    _run_job(ctx, "retract", "retract", input_path=input_path, side=side, field=field,
             degree_bound=degree_bound, hom_bound=hom_bound, output_format=output_format and output_format.lower())
