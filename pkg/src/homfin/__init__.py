# src/homfin/__init__.py

# -----------------------------------------------------------------------------
# homfin Package Initializer
# -----------------------------------------------------------------------------
# Marks 'homfin' as a package and holds the canonical version number, which
# the semantic-release tool reads and bumps during the release process.
#
# DO NOT MANUALLY EDIT THE VERSION NUMBER.
# -----------------------------------------------------------------------------

__version__ = "0.3.0"
