# src/homfin/algebra/presentation.py

"""
Presentation files for connected graded algebras.

    # polynomial ring in two variables
    field Q
    generators x:1 y:1
    relations x*y - y*x

A line that does not start with a directive keyword continues the previous
directive. Relations are separated by ';'. The polynomial grammar has integer
coefficients, explicit '*', '+', '-', parentheses and '^k' powers.
"""

import logging
import re
from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Sequence, Tuple

from sympy.polys.domains.domain import Domain

from homfin.algebra.ncpoly import Alphabet, Generator, NCPoly
from homfin.algebra.scalars import field_name, parse_field
from homfin.core.exceptions import FieldSpecError, PresentationError, PresentationSyntaxError

logger = logging.getLogger(__name__)

DIRECTIVES = ("field", "generators", "relations")
_GENERATOR_PATTERN = re.compile(r"^([A-Za-z_][A-Za-z0-9_']*):(\d+)$")


@dataclass(frozen=True)
class AlgebraPresentation:
    """A finite presentation K<generators> / (relations) of a connected graded algebra."""

    alphabet: Alphabet
    relations: Tuple[NCPoly, ...] = dc_field(default_factory=tuple)

    @property
    def field(self) -> Domain:
        return self.alphabet.field

    @property
    def generators(self) -> Tuple[Generator, ...]:
        return self.alphabet.generators

    def max_relation_degree(self) -> int:
        return max((r.degree() for r in self.relations), default=0)

    def to_text(self) -> str:
        lines = [
            f"field {field_name(self.field)}",
            "generators " + " ".join(f"{g.name}:{g.degree}" for g in self.generators),
        ]
        if self.relations:
            lines.append("relations " + " ; ".join(str(r) for r in self.relations))
        return "\n".join(lines) + "\n"


def build_presentation(
    field: Domain,
    generators: Sequence[Tuple[str, int]],
    relations: Sequence[str] = (),
) -> AlgebraPresentation:
    """Builds and validates a presentation from generator pairs and relation strings."""
    alphabet = Alphabet(field, [Generator(n, d) for n, d in generators])
    polys = [parse_polynomial(text, alphabet) for text in relations]
    return _validated(alphabet, [(p, None, None) for p in polys])


# -----------------------------------------------------------------------------
# Polynomial Parser
# -----------------------------------------------------------------------------

@dataclass(frozen=True)
class _Token:
    kind: str  # "int", "name", or the operator character
    text: str
    line: int
    column: int


def _tokenize(chars: Sequence[Tuple[str, int, int]]) -> List[_Token]:
    tokens: List[_Token] = []
    i = 0
    while i < len(chars):
        ch, line, col = chars[i]
        if ch.isspace():
            i += 1
        elif ch.isdigit():
            j = i
            while j < len(chars) and chars[j][0].isdigit():
                j += 1
            tokens.append(_Token("int", "".join(c for c, _, _ in chars[i:j]), line, col))
            i = j
        elif ch.isalpha() or ch == "_":
            j = i
            while j < len(chars) and (chars[j][0].isalnum() or chars[j][0] in "_'"):
                j += 1
            tokens.append(_Token("name", "".join(c for c, _, _ in chars[i:j]), line, col))
            i = j
        elif ch in "+-*()^":
            tokens.append(_Token(ch, ch, line, col))
            i += 1
        else:
            raise PresentationSyntaxError(f"Unexpected character '{ch}'", line, col)
    return tokens


class _PolyParser:
    """Recursive descent: expr := term (('+'|'-') term)*, term := unary ('*' unary)*."""

    def __init__(self, tokens: List[_Token], alphabet: Alphabet, end: Tuple[int, int]):
        self.tokens = tokens
        self.pos = 0
        self.alphabet = alphabet
        self.end = end

    def _peek(self) -> Optional[_Token]:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def _fail(self, message: str):
        tok = self._peek()
        line, col = (tok.line, tok.column) if tok else self.end
        raise PresentationSyntaxError(message, line, col)

    def _take(self, kind: str) -> _Token:
        tok = self._peek()
        if tok is None or tok.kind != kind:
            self._fail(f"Expected '{kind}'")
        self.pos += 1
        return tok

    def parse(self) -> NCPoly:
        if not self.tokens:
            self._fail("Empty polynomial")
        poly = self._expr()
        if self._peek() is not None:
            self._fail(f"Unexpected token '{self._peek().text}'")
        return poly

    def _expr(self) -> NCPoly:
        poly = self._term()
        while self._peek() is not None and self._peek().kind in "+-":
            op = self._take(self._peek().kind)
            rhs = self._term()
            poly = poly + rhs if op.kind == "+" else poly - rhs
        return poly

    def _term(self) -> NCPoly:
        poly = self._unary()
        while self._peek() is not None and self._peek().kind == "*":
            self._take("*")
            poly = poly * self._unary()
        return poly

    def _unary(self) -> NCPoly:
        tok = self._peek()
        if tok is not None and tok.kind in "+-":
            self._take(tok.kind)
            inner = self._unary()
            return -inner if tok.kind == "-" else inner
        return self._power()

    def _power(self) -> NCPoly:
        base = self._atom()
        if self._peek() is not None and self._peek().kind == "^":
            self._take("^")
            exponent = int(self._take("int").text)
            result = NCPoly.one(self.alphabet)
            for _ in range(exponent):
                result = result * base
            return result
        return base

    def _atom(self) -> NCPoly:
        tok = self._peek()
        if tok is None:
            self._fail("Unexpected end of polynomial")
        if tok.kind == "int":
            self._take("int")
            return NCPoly.one(self.alphabet).scale(int(tok.text))
        if tok.kind == "name":
            self._take("name")
            index = self.alphabet.index_of(tok.text)
            if index is None:
                raise PresentationError(f"Unknown generator '{tok.text}'", tok.line, tok.column)
            return NCPoly.monomial(self.alphabet, (index,))
        if tok.kind == "(":
            self._take("(")
            inner = self._expr()
            self._take(")")
            return inner
        self._fail(f"Unexpected token '{tok.text}'")


def _parse_chars(chars: Sequence[Tuple[str, int, int]], alphabet: Alphabet) -> NCPoly:
    end = (chars[-1][1], chars[-1][2] + 1) if chars else (1, 1)
    return _PolyParser(_tokenize(chars), alphabet, end).parse()


def parse_polynomial(text: str, alphabet: Alphabet, line: int = 1, column: int = 1) -> NCPoly:
    """Parses one polynomial over `alphabet`; positions in errors start at (line, column)."""
    chars = [(ch, line, column + i) for i, ch in enumerate(text)]
    return _parse_chars(chars, alphabet)


# -----------------------------------------------------------------------------
# Presentation File Parser
# -----------------------------------------------------------------------------

def _strip_comment(line: str) -> str:
    return line.split("#", 1)[0]


def _directives(text: str) -> List[Tuple[str, List[Tuple[str, int, int]], int, int]]:
    """Groups the file into (keyword, body characters, line, column) with continuations folded in."""
    groups = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        stripped = line.strip()
        if not stripped:
            continue
        first = stripped.split(None, 1)[0]
        start_col = len(line) - len(line.lstrip()) + 1
        if first in DIRECTIVES:
            body_start = line.index(first) + len(first)
            body = [(ch, lineno, body_start + i + 1) for i, ch in enumerate(line[body_start:])]
            groups.append((first, body, lineno, start_col))
        elif groups:
            groups[-1][1].append((" ", lineno, 0))
            groups[-1][1].extend((ch, lineno, i + 1) for i, ch in enumerate(line))
        else:
            raise PresentationSyntaxError(f"Expected one of {', '.join(DIRECTIVES)}", lineno, start_col)
    return groups


def _split_on(chars, sep: str):
    pieces, current = [], []
    for item in chars:
        if item[0] == sep:
            pieces.append(current)
            current = []
        else:
            current.append(item)
    pieces.append(current)
    return pieces


def _chars_text(chars) -> str:
    return "".join(c for c, _, _ in chars)


def parse_presentation(text: str, default_field: str = "Q") -> AlgebraPresentation:
    """
    Parses a presentation file.

    Args:
        text: The file contents.
        default_field: Field used when the file has no `field` line.

    Returns:
        The validated presentation, generators in declaration order.

    Raises:
        PresentationSyntaxError: malformed input, with line and column.
        PresentationError: duplicate or unknown generators, constant terms,
            inhomogeneous or degree-1 relations.
    """
    field_spec, field_pos = default_field, None
    generators: Optional[List[Generator]] = None
    relation_chars = []

    for keyword, body, line, col in _directives(text):
        if keyword == "field":
            field_spec, field_pos = _chars_text(body).strip(), (line, col)
        elif keyword == "generators":
            if generators is not None:
                raise PresentationSyntaxError("Duplicate 'generators' line", line, col)
            generators = _parse_generators(body, line, col)
        else:
            relation_chars.extend(body)
            relation_chars.append((";", line, 0))

    if generators is None:
        raise PresentationSyntaxError("Missing 'generators' line", 1, 1)
    try:
        field = parse_field(field_spec)
    except FieldSpecError as e:
        line, col = field_pos or (1, 1)
        raise PresentationSyntaxError(e.message, line, col) from e

    alphabet = Alphabet(field, generators)
    parsed = []
    for piece in _split_on(relation_chars, ";"):
        if not _chars_text(piece).strip():
            continue
        first = next(item for item in piece if not item[0].isspace())
        parsed.append((_parse_chars(piece, alphabet), first[1], first[2]))
    return _validated(alphabet, parsed)


def _parse_generators(body, line: int, col: int) -> List[Generator]:
    generators: List[Generator] = []
    seen = set()
    words, current = [], []
    for item in body + [(" ", line, 0)]:
        if item[0].isspace():
            if current:
                words.append(current)
                current = []
        else:
            current.append(item)
    if not words:
        raise PresentationSyntaxError("No generators declared", line, col)
    for chars in words:
        token = _chars_text(chars)
        match = _GENERATOR_PATTERN.match(token)
        if not match:
            raise PresentationSyntaxError(f"Expected name:degree, got '{token}'", chars[0][1], chars[0][2])
        name, degree = match.group(1), int(match.group(2))
        if name in seen:
            raise PresentationError(f"Duplicate generator name '{name}'", chars[0][1], chars[0][2])
        if degree < 1:
            raise PresentationError(f"Generator '{name}' must have positive degree", chars[0][1], chars[0][2])
        seen.add(name)
        generators.append(Generator(name, degree))
    return generators


def _validated(alphabet: Alphabet, parsed) -> AlgebraPresentation:
    relations: List[NCPoly] = []
    for poly, line, col in parsed:
        if poly.is_zero():
            logger.warning(f"Relation at line {line} is identically zero and was dropped.")
            continue
        if () in poly.words():
            raise PresentationError("Relation has a constant term; the algebra would not be connected", line, col)
        if not poly.is_homogeneous():
            raise PresentationError(
                f"Relation '{poly}' is not homogeneous (degrees {sorted(poly.degrees())})", line, col
            )
        if poly.degree() < 2:
            raise PresentationError(
                f"Relation '{poly}' has degree 1; eliminate the generator instead", line, col
            )
        relations.append(poly)
    return AlgebraPresentation(alphabet, tuple(relations))
