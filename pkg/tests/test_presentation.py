# tests/test_presentation.py

import pytest

from homfin.algebra.ncpoly import NCPoly
from homfin.algebra.presentation import build_presentation, parse_polynomial, parse_presentation
from homfin.algebra.scalars import field_name, parse_field
from homfin.core.exceptions import PresentationError, PresentationSyntaxError

POLY2 = """
# polynomial ring
field Q
generators x:1 y:1
relations x*y - y*x
"""


def test_parse_polynomial_ring():
    pres = parse_presentation(POLY2)
    assert [g.name for g in pres.generators] == ["x", "y"]
    assert field_name(pres.field) == "Q"
    assert len(pres.relations) == 1
    x, y = NCPoly.letter(pres.alphabet, "x"), NCPoly.letter(pres.alphabet, "y")
    assert pres.relations[0] == x * y - y * x


def test_default_field_applies_without_field_line():
    pres = parse_presentation("generators x:1 y:2\n", default_field="GF(5)")
    assert field_name(pres.field) == "GF(5)"
    assert [g.degree for g in pres.generators] == [1, 2]
    assert pres.relations == ()


def test_continuation_lines_and_separators():
    pres = parse_presentation("generators x:1 y:1\nrelations x^2 ;\n   y^2 ; x*y + y*x\n")
    assert len(pres.relations) == 3


def test_powers_expand():
    pres = parse_presentation("generators x:1 y:1\nrelations x^2*y - y*x^2\n")
    x, y = NCPoly.letter(pres.alphabet, "x"), NCPoly.letter(pres.alphabet, "y")
    assert pres.relations[0] == x * x * y - y * x * x


def test_zero_relation_is_dropped():
    pres = parse_presentation("generators x:1 y:1\nrelations x*y - x*y ; y*y\n")
    assert len(pres.relations) == 1


def test_text_round_trip():
    pres = parse_presentation(POLY2)
    assert parse_presentation(pres.to_text()) == pres


def test_build_presentation_matches_parser():
    built = build_presentation(parse_field("Q"), [("x", 1), ("y", 1)], ["x*y - y*x"])
    assert built == parse_presentation(POLY2)

# -----------------------------------------------------------------------------
# Rejected Input
# -----------------------------------------------------------------------------

@pytest.mark.parametrize("text", [
    "generators x:1 x:1\n",
    "generators x:0\n",
    "generators x:1 y:1\nrelations x*y - 1\n",
    "generators x:1 y:1\nrelations x*y - x\n",
    "generators x:1 y:1\nrelations x - y\n",
    "generators x:1 y:1\nrelations x*z\n",
])
def test_invalid_presentations(text):
    with pytest.raises(PresentationError):
        parse_presentation(text)


def test_missing_generators_line():
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("field Q\nrelations x*y\n")


def test_syntax_error_position():
    with pytest.raises(PresentationSyntaxError) as info:
        parse_presentation("generators x:1 y:1\nrelations x*y $\n")
    assert info.value.line == 2
    assert info.value.column == 15


def test_unknown_generator_position():
    with pytest.raises(PresentationError) as info:
        parse_presentation("generators x:1 y:1\nrelations x*z - z*x\n")
    assert info.value.line == 2


def test_bad_generator_token():
    with pytest.raises(PresentationSyntaxError):
        parse_presentation("generators x\n")


def test_non_prime_field_is_a_syntax_error():
    with pytest.raises(PresentationSyntaxError) as info:
        parse_presentation("field GF(4)\ngenerators x:1\n")
    assert info.value.line == 1


def test_parse_polynomial_unbalanced_parenthesis():
    pres = parse_presentation(POLY2)
    with pytest.raises(PresentationSyntaxError):
        parse_polynomial("(x + y", pres.alphabet)


def test_constant_term_is_rejected_with_position():
    with pytest.raises(PresentationError, match="constant term") as excinfo:
        parse_presentation("generators x:1 y:1\nrelations x*y + 1\n")
    assert excinfo.value.line == 2


def test_built_relations_survive_validation():
    pres = build_presentation(parse_field("GF(3)"), [("x", 1), ("y", 1)], ["x*y - y*x", "y^2"])
    assert len(pres.relations) == 2
    assert all(rel.is_homogeneous() and rel.degree() == 2 for rel in pres.relations)
    with pytest.raises(PresentationError, match="constant term"):
        build_presentation(parse_field("Q"), [("x", 1)], ["x^2 - 1"])
