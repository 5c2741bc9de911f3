# src/homfin/services/__init__.py

"""
Services that sit between the CLI and the algebra engine: `JobRunner` turns a
`JobConfig` into a `Report`, `VerificationService` runs the fixture suite.
"""

__all__ = [
    "JobRunner",
    "VerificationService",
]
