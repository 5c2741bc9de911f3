# src/homfin/core/__init__.py

"""
homfin Core Package
-------------------

Configuration, logging, exceptions and the typed job/report models shared by
the CLI and the services.

Modules:
- config_manager: Loads and saves `config.toml`, applies HOMFIN_* overrides.
- logger: Configures the `homfin` logger.
- exceptions: The HomfinError hierarchy.
- models: pydantic job configuration and report models.
"""

__all__ = [
    "ConfigManager",
    "setup_logging",
    "HomfinError",
    "JobConfig",
]
