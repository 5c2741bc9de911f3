# src/homfin/formats/monoid_format.py

"""
Monoid table files.

    # the cyclic group of order 2
    field GF(2)
    elements 1 g
    1 g
    g 1
    involution 1 g

`field` is optional. The table rows follow the `elements` line, one row per
element in declaration order, row a listing the products a·b. An optional
`involution` line lists the image of each element.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

from homfin.algebra.group_rings import FiniteMonoid, validate_and_build
from homfin.core.exceptions import MonoidTableError, PresentationSyntaxError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MonoidFile:
    monoid: FiniteMonoid
    field: Optional[str]
    involution: Optional[Tuple[int, ...]]


def _tokens(text: str) -> List[Tuple[int, List[Tuple[str, int]]]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        words, col, current, start = [], 0, "", 0
        for col, ch in enumerate(body + " ", start=1):
            if ch.isspace():
                if current:
                    words.append((current, start))
                current = ""
            else:
                if not current:
                    start = col
                current += ch
        if words:
            lines.append((number, words))
    return lines


def parse_monoid(text: str, name: str = "B") -> MonoidFile:
    """
    Raises:
        PresentationSyntaxError: malformed file, with line and column.
        MonoidTableError: the table is not a monoid (witness attached).
    """
    field, names, rows, involution_names = None, None, [], None
    for number, words in _tokens(text):
        keyword, col = words[0]
        if keyword == "field":
            if len(words) != 2:
                raise PresentationSyntaxError("Expected 'field SPEC'", number, col)
            field = words[1][0]
        elif keyword == "elements":
            if names is not None:
                raise PresentationSyntaxError("Duplicate 'elements' line", number, col)
            names = [w for w, _ in words[1:]]
            if not names:
                raise PresentationSyntaxError("No elements declared", number, col)
        elif keyword == "involution":
            involution_names = (number, words[1:])
        elif names is None:
            raise PresentationSyntaxError(f"Unexpected '{keyword}' before the 'elements' line", number, col)
        else:
            if len(words) != len(names):
                raise PresentationSyntaxError(f"Row has {len(words)} entries, expected {len(names)}", number, col)
            for word, c in words:
                if word not in names:
                    raise PresentationSyntaxError(f"'{word}' is not a declared element", number, c)
            rows.append([w for w, _ in words])

    if names is None:
        raise PresentationSyntaxError("Missing 'elements' line", 1, 1)
    if len(rows) != len(names):
        raise MonoidTableError(f"Expected {len(names)} table rows, found {len(rows)}.")
    monoid = validate_and_build(names, rows, name=name)

    involution = None
    if involution_names is not None:
        number, words = involution_names
        if len(words) != len(names):
            raise PresentationSyntaxError(f"Involution lists {len(words)} images, expected {len(names)}", number, 1)
        image = {}
        for element, (word, c) in zip(names, words):
            if word not in names:
                raise PresentationSyntaxError(f"'{word}' is not a declared element", number, c)
            image[element] = word
        involution = tuple(monoid.index_of(image[x]) for x in monoid.names)
    logger.debug(f"Read monoid {name} of order {monoid.order}")
    return MonoidFile(monoid, field, involution)
