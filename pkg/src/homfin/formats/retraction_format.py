# src/homfin/formats/retraction_format.py

"""
Retraction files: two presentations and the maps between them.

    [big]
    field Q
    generators x:1 y:1
    relations x*y - y*x

    [small]
    generators x:1

    retraction x -> x ; y -> 0
    section x -> x

`retraction` gives ρ on the big generators (expressions in the small ones),
`section` gives ι on the small generators (expressions in the big ones). The
small presentation inherits the big one's field unless it names its own.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from homfin.algebra.groebner import GradedAlgebra
from homfin.algebra.ncpoly import Alphabet, NCPoly
from homfin.algebra.presentation import AlgebraPresentation, parse_polynomial, parse_presentation
from homfin.algebra.retractions import RingRetraction, graded_retraction
from homfin.algebra.scalars import field_name
from homfin.core.exceptions import PresentationSyntaxError

logger = logging.getLogger(__name__)

_SECTIONS = ("[big]", "[small]")
_MAP_KEYWORDS = ("retraction", "section")


@dataclass(frozen=True)
class RetractionFile:
    big: AlgebraPresentation
    small: AlgebraPresentation
    rho: Dict[str, NCPoly]
    iota: Dict[str, NCPoly]

    def build(self, D: int) -> RingRetraction:
        R = GradedAlgebra(self.big, D, name="R")
        S = GradedAlgebra(self.small, D, name="S")
        return graded_retraction(R, S, self.rho, self.iota)


def _parse_assignments(body: str, number: int, offset: int, source: Alphabet, target: Alphabet) -> Dict[str, NCPoly]:
    images: Dict[str, NCPoly] = {}
    position = offset
    for piece in body.split(";"):
        column = position
        position += len(piece) + 1
        if not piece.strip():
            continue
        if "->" not in piece:
            raise PresentationSyntaxError("Expected 'generator -> expression'", number, column)
        name, expr = piece.split("->", 1)
        name = name.strip()
        if source.index_of(name) is None:
            raise PresentationSyntaxError(f"'{name}' is not a generator of the source algebra", number, column)
        if name in images:
            raise PresentationSyntaxError(f"Image of '{name}' given twice", number, column)
        images[name] = parse_polynomial(expr, target, line=number, column=column + piece.index("->") + 2)
    return images


def parse_retraction(text: str, default_field: str = "Q") -> RetractionFile:
    """
    Raises:
        PresentationSyntaxError: malformed file, with line and column.
        PresentationError: invalid presentations or expressions.
    """
    lines = text.splitlines()
    blocks: Dict[str, List[str]] = {}
    maps: List[Tuple[str, str, int, int]] = []
    current = None
    for number, raw in enumerate(lines, start=1):
        stripped = raw.split("#", 1)[0].strip()
        if stripped in _SECTIONS:
            if stripped in blocks:
                raise PresentationSyntaxError(f"Duplicate section {stripped}", number, 1)
            current = stripped
            blocks[current] = [""] * number
            continue
        keyword = stripped.split(None, 1)[0] if stripped else ""
        if keyword in _MAP_KEYWORDS:
            offset = raw.index(keyword) + len(keyword) + 1
            maps.append((keyword, raw.split("#", 1)[0][offset:], number, offset + 1))
            current = None
            continue
        if current is not None:
            blocks[current].append(raw)
        elif stripped:
            raise PresentationSyntaxError(f"Text outside a section: '{stripped}'", number, 1)

    for section in _SECTIONS:
        if section not in blocks:
            raise PresentationSyntaxError(f"Missing {section} section", len(lines) or 1, 1)
    big = parse_presentation("\n".join(blocks["[big]"]), default_field=default_field)
    small = parse_presentation("\n".join(blocks["[small]"]), default_field=field_name(big.field))

    rho: Dict[str, NCPoly] = {}
    iota: Dict[str, NCPoly] = {}
    for keyword, body, number, column in maps:
        if keyword == "retraction":
            rho.update(_parse_assignments(body, number, column, big.alphabet, small.alphabet))
        else:
            iota.update(_parse_assignments(body, number, column, small.alphabet, big.alphabet))
    logger.debug(f"Read retraction with {len(rho)} ρ-images and {len(iota)} ι-images")
    return RetractionFile(big, small, rho, iota)
