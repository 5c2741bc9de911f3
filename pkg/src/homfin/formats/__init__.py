# src/homfin/formats/__init__.py

"""
Input readers for the monoid (`.mon`) and retraction (`.ret`) files, and the
table/JSON/CSV report writers. Presentation files (`.alg`) are read by
`homfin.algebra.presentation.parse_presentation`.
"""

__all__ = [
    "parse_monoid",
    "parse_retraction",
    "render_report",
]
