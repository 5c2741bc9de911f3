# tests/test_groebner.py

import random

import pytest

from homfin import fixtures
from homfin.algebra import linalg
from homfin.algebra.groebner import (
    TruncatedGroebnerBasis,
    free_words,
    groebner_truncated,
    hilbert_series,
    ideal_slice,
    ideal_slice_dimension,
    normal_form,
    overlap_certificate,
)
from homfin.algebra.ncpoly import NCPoly
from homfin.algebra.presentation import build_presentation, parse_polynomial
from homfin.algebra.scalars import parse_field
from homfin.core.exceptions import TruncationError

# -----------------------------------------------------------------------------
# Hilbert Series
# -----------------------------------------------------------------------------

@pytest.mark.parametrize("name, expected", [
    ("poly1", (1, 1, 1, 1, 1)),
    ("poly2", (1, 2, 3, 4, 5)),
    ("free2", (1, 2, 4, 8, 16)),
    ("exterior2", (1, 2, 1, 0, 0)),
    ("cubic", (1, 2, 4, 7, 12)),
])
def test_hilbert_series_of_builtin_algebras(name, expected):
    A = fixtures.ALGEBRAS[name](4)
    assert A.dims() == expected
    assert hilbert_series(A.gb) == expected


@pytest.mark.parametrize("name", ["poly2", "exterior2", "cubic"])
def test_normal_words_complement_the_ideal(name):
    """Normal words and the brute-force ideal slice split every degree of the free algebra."""
    A = fixtures.ALGEBRAS[name](4)
    for d in range(5):
        words = free_words(A.alphabet, d)
        assert A.dim(d) + ideal_slice_dimension(A.presentation, d) == len(words)


def test_generator_degrees_are_respected():
    pres = build_presentation(parse_field("Q"), [("x", 1), ("z", 2)])
    gb = groebner_truncated(pres, 4)
    # degree 4 words: x^4, x^2 z, x z x, z x^2, z^2
    assert hilbert_series(gb) == (1, 1, 2, 3, 5)


# -----------------------------------------------------------------------------
# Gröbner Bases
# -----------------------------------------------------------------------------

def test_commutator_basis_is_the_relation(poly2_small):
    gb = poly2_small.gb
    assert gb.leading_words() == ((1, 0),)
    assert gb.is_complete()
    assert gb.certificate == (True,) * 5


def test_exterior_basis_is_reduced():
    A = fixtures.exterior2(4)
    assert set(A.gb.leading_words()) == {(0, 0), (1, 0), (1, 1)}
    assert A.basis(2) == ((0, 1),)


def test_completion_adds_overlap_elements():
    # the self-overlap y*y*y of y*y = x*y leaves y*x*y - x*x*y
    pres = build_presentation(parse_field("Q"), [("x", 1), ("y", 1)], ["y*y - x*y"])
    gb = groebner_truncated(pres, 4)
    assert len(gb.elements) > len(pres.relations)
    for d in range(5):
        assert hilbert_series(gb)[d] + ideal_slice_dimension(pres, d) == len(free_words(pres.alphabet, d))


def test_uncompleted_relations_are_reported_incomplete():
    # y*y*y rewrites two ways; without completion y*x*y - x*x*y survives
    pres = build_presentation(parse_field("Q"), [("x", 1), ("y", 1)], ["y*y - x*y"])
    certificate = overlap_certificate(pres.alphabet, pres.relations, 4)
    assert certificate == (True, True, True, False, True)
    assert not TruncatedGroebnerBasis(pres, 4, pres.relations, certificate).is_complete()
    completed = groebner_truncated(pres, 4)
    assert completed.is_complete()
    assert overlap_certificate(pres.alphabet, completed.elements, 4) == completed.certificate


@pytest.mark.parametrize("name", ["poly2", "exterior2", "cubic"])
def test_builtin_bases_are_certified(name):
    gb = fixtures.ALGEBRAS[name](4).gb
    assert gb.is_complete()
    assert len(gb.certificate) == 5


def test_relations_above_cutoff_are_ignored():
    pres = build_presentation(parse_field("Q"), [("x", 1), ("y", 1)], ["x^2*y - y*x^2"])
    gb = groebner_truncated(pres, 2)
    assert gb.elements == ()
    assert hilbert_series(gb) == (1, 2, 4)


# -----------------------------------------------------------------------------
# Normal Forms and Products
# -----------------------------------------------------------------------------

def test_normal_form_sorts_commuting_letters(poly2_small):
    p = parse_polynomial("y*x + y*y*x", poly2_small.alphabet)
    expected = parse_polynomial("x*y + x*y*y", poly2_small.alphabet)
    assert normal_form(p, poly2_small.gb) == expected
    assert poly2_small.normal_form(p) == expected


def test_exterior_products():
    A = fixtures.exterior2(4)
    assert A.multiply((1,), (0,)) == {(0, 1): -1}
    assert A.multiply((0,), (0,)) == {}
    assert A.normal_form_word((0, 1, 0)) == {}


def test_cubic_relation_rewrites_leading_word(cubic):
    assert cubic.multiply((1,), (0, 0)) == {(0, 0, 1): 1}
    assert cubic.is_normal((0, 1, 0))
    assert not cubic.is_normal((1, 0, 0))


def test_normal_form_is_identity_on_normal_words(poly2_small):
    for d in range(5):
        for w in poly2_small.basis(d):
            assert poly2_small.normal_form_word(w) == {w: 1}


def test_finite_field_coefficients():
    A = fixtures.exterior2(3, field="GF(2)")
    # over GF(2) the anticommutator is a commutator
    assert A.multiply((1,), (0,)) == {(0, 1): 1}


# -----------------------------------------------------------------------------
# Truncation
# -----------------------------------------------------------------------------

def test_basis_above_cutoff_raises(poly2_small):
    with pytest.raises(TruncationError) as excinfo:
        poly2_small.basis(5)
    assert excinfo.value.degree == 5
    assert excinfo.value.cutoff == 4


def test_normal_form_above_cutoff_raises(poly2_small):
    p = parse_polynomial("x^5", poly2_small.alphabet)
    with pytest.raises(TruncationError):
        normal_form(p, poly2_small.gb)
    with pytest.raises(TruncationError):
        poly2_small.multiply((0, 0, 0), (1, 1))


def test_format_key_and_degree(poly2_small):
    assert poly2_small.format_key(()) == "1"
    assert poly2_small.format_key((0, 1)) == "x*y"
    assert poly2_small.key_degree((0, 1, 1)) == 3
    assert poly2_small.augmentation(()) == 1
    assert poly2_small.augmentation((0,)) == 0


# -----------------------------------------------------------------------------
# Normal Form Contract
# -----------------------------------------------------------------------------

def _random_poly(alphabet, rng, max_degree=4, terms=6):
    words = [w for d in range(max_degree + 1) for w in free_words(alphabet, d)]
    return NCPoly(alphabet, {rng.choice(words): rng.randint(-3, 3) for _ in range(terms)})


@pytest.mark.parametrize("name", ["poly2", "exterior2", "cubic"])
def test_normal_form_is_idempotent(name):
    A = fixtures.ALGEBRAS[name](4)
    rng = random.Random(17)
    for _ in range(30):
        reduced = normal_form(_random_poly(A.alphabet, rng), A.gb)
        assert normal_form(reduced, A.gb) == reduced
        assert all(A.is_normal(w) for w in reduced.words())


@pytest.mark.parametrize("name", ["poly2", "exterior2", "cubic"])
def test_normal_form_kernel_is_the_ideal(name):
    """In each degree, span{w - NF(w)} equals the brute-force ideal slice."""
    A = fixtures.ALGEBRAS[name](4)
    K = A.field
    for d in range(5):
        words, ideal_vectors = ideal_slice(A.presentation, d)
        index = {w: i for i, w in enumerate(words)}
        rewrites = []
        for w in words:
            vector = {index[w]: K.one}
            for nw, c in normal_form(NCPoly.monomial(A.alphabet, w), A.gb).items():
                vector[index[nw]] = vector.get(index[nw], K.zero) - c
            rewrites.append({i: c for i, c in vector.items() if c})
        size = len(words)
        ideal_rank = linalg.rank(ideal_vectors, size, K)
        assert linalg.rank(rewrites, size, K) == ideal_rank
        assert linalg.rank(ideal_vectors + rewrites, size, K) == ideal_rank
