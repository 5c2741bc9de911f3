# src/homfin/cli/__init__.py

"""
homfin CLI Package
------------------

The click command modules behind the `homfin` entry point. Each module
defines one command or command group; all of them are registered on the root
group in `homfin.main`.

Every job command renders a `Report` to stdout in the requested format and
exits with 0 (certified), 2 (inconclusive: the cutoff was too small to
certify) or 1 (a check failed or the input was rejected).
"""

__all__ = [
    "resolve_command",
    "group_bires_command",
    "retract_command",
    "verify_command",
    "settings_group",
]
