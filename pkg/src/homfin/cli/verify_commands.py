# src/homfin/cli/verify_commands.py

import click

# -----------------------------------------------------------------------------
# Verify Command
# -----------------------------------------------------------------------------

FIXTURE_NAMES = ["koszul", "theorem4", "theorem1", "theorem2", "lemma3", "kuenneth", "proposition1", "invariants", "negative"]


@click.command(name="verify", help="Run the built-in verification fixtures.")
@click.option("--level", type=click.Choice(["fast", "exhaustive"]), default=None,
              help="Cutoffs to run the fixtures at (default from config).")
@click.option("--fixture", "fixtures", type=click.Choice(FIXTURE_NAMES), multiple=True,
              help="Run only this fixture. Repeatable.")
@click.option("--seed", type=int, default=None, help="Seed for the randomized property checks.")
@click.pass_context
def verify_command(ctx, level, fixtures, seed):
    """
    Runs each selected fixture and prints one line per fixture with its
    timing. Exits non-zero if any fixture fails.
    """
    logger = ctx.obj['logger']
    config_manager = ctx.obj['config']
    verifier = ctx.obj['verifier']

    level = level or config_manager.get_verify_setting("level")
    seed = seed if seed is not None else config_manager.get_verify_setting("seed")

    click.secho(f"--- Running verification (level={level}, seed={seed}) ---", fg="cyan", bold=True)
    try:
        results = verifier.run_all_checks(level=level, names=list(fixtures) or None, seed=seed)
    except Exception as e:
        logger.error(f"An unexpected error occurred during verification: {e}", exc_info=True)
        ctx.exit(1)

    all_successful = True
    for result in results:
        if result.success:
            icon = click.style("✔ OK", fg="green")
        else:
            icon = click.style("✖ FAIL", fg="red")
            all_successful = False
        click.echo(f"  {icon}: [{result.name}] ({result.seconds:.2f}s) - {result.message}")

    if all_successful:
        click.secho(f"\n--- All {len(results)} fixtures passed ---", fg="green", bold=True)
    else:
        failed = sum(1 for r in results if not r.success)
        click.secho(f"\n--- {failed} of {len(results)} fixtures failed (seed={seed}) ---", fg="red", bold=True)
        ctx.exit(1)
