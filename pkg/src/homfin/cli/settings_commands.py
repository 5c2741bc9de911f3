# src/homfin/cli/settings_commands.py

import click

from homfin.core.logger import set_console_level

# -----------------------------------------------------------------------------
# Settings Command Group
# -----------------------------------------------------------------------------

@click.group(name="settings", help="View and manage engine configuration.")
@click.pass_context
def settings_group(ctx):
    """
    Commands for viewing and managing the settings stored in config.toml.
    """
    pass

# --- Settings Sub-commands ---

@settings_group.command(name="view", help="Display the effective configuration.")
@click.pass_context
def view_command(ctx):
    """
    Prints every section of the configuration with HOMFIN_* environment
    overrides applied, which is what the engine actually uses.
    """
    logger = ctx.obj['logger']
    config_manager = ctx.obj['config']

    logger.debug("Displaying effective configuration.")
    click.secho("--- Current Configuration ---", fg="cyan", bold=True)

    for section, settings in config_manager.effective().items():
        click.secho(f"[{section}]", bold=True)
        for key, value in settings.items():
            click.echo(f"  {key} = {value}")
        click.echo("")  # blank line between sections

@settings_group.command(name="path", help="Print the location of config.toml.")
@click.pass_context
def path_command(ctx):
    click.echo(str(ctx.obj['config'].config_path))

@settings_group.command(name="set", help="Change a setting and save it to config.toml.")
@click.argument("section", type=click.Choice(["engine", "output", "verify", "logging"]))
@click.argument("key")
@click.argument("value")
@click.pass_context
def set_command(ctx, section, key, value):
    """
    Stores VALUE under [SECTION].KEY. Integers are stored as integers so the
    file stays readable by the engine.
    """
    logger = ctx.obj['logger']
    config_manager = ctx.obj['config']

    # Only keys that exist in the defaults can be set.
    known = config_manager.defaults()[section]
    if key not in known:
        click.secho(f"Unknown key '{key}' in [{section}]. Known keys: {', '.join(known)}", fg="red")
        ctx.exit(1)
    # Numeric defaults (degree_bound, seed, workers) keep an integer type in the TOML file.
    typed = int(value) if isinstance(known[key], int) and value.lstrip("-").isdigit() else value
    config_manager.update_setting(section, key, typed)

    # --- Persist ---
    try:
        config_manager.save_config()
    except Exception as e:
        logger.error(f"Could not save configuration: {e}", exc_info=True)
        ctx.exit(1)
    click.secho(f"[{section}].{key} = {typed}", fg="green")

@settings_group.command(name="set-log-level", help="Temporarily change the console log level.")
@click.argument("level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"], case_sensitive=False))
@click.pass_context
def set_log_level_command(ctx, level):
    """
    Changes console verbosity for the current session only. The config file
    is left untouched.
    """
    logger = ctx.obj['logger']
    # Only the ClickColorHandler changes; the file handler keeps its level.
    set_console_level(level)
    click.secho(f"Console log level temporarily set to {level.upper()}.", fg="yellow")
    logger.debug("This is a DEBUG message (will only show if level is DEBUG).")
