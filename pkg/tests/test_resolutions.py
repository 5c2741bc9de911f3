# tests/test_resolutions.py

import pytest

from homfin import fixtures
from homfin.algebra.resolutions import (
    Verdict,
    betti_table,
    check_exactness,
    check_minimality,
    effective_length,
    euler_hilbert_defects,
    fpn_verdict,
    minimal_resolution,
)
from homfin.core.exceptions import NonMinimalResolutionError, ResolutionError
from homfin.services.verification_service import identity_padded, koszul_complex_poly2, perturbed

# -----------------------------------------------------------------------------
# Minimal Resolutions
# -----------------------------------------------------------------------------

def test_polynomial_ring_in_two_variables(poly2_resolution):
    res = poly2_resolution
    assert res.ranks() == (1, 2, 1, 0)
    assert res.generator_degrees() == ((0,), (1, 1), (2,), ())
    assert betti_table(res).triples() == [(0, 0, 1), (1, 1, 2), (2, 2, 1)]
    assert res.complete
    assert res.pending == ()


def test_resolution_checks_pass(poly2_resolution):
    assert check_exactness(poly2_resolution).ok
    assert check_minimality(poly2_resolution).minimal
    assert euler_hilbert_defects(poly2_resolution) == []


def test_exterior_algebra_has_growing_ranks(exterior2):
    res = minimal_resolution(exterior2, n=3)
    assert res.ranks() == (1, 2, 3, 4)
    assert betti_table(res).triples() == [(0, 0, 1), (1, 1, 2), (2, 2, 3), (3, 3, 4)]
    assert not res.complete
    assert [g.degree for g in res.pending] == [4] * 5
    assert check_exactness(res).ok
    assert euler_hilbert_defects(res) == []


def test_free_algebra_has_global_dimension_one(free2):
    res = minimal_resolution(free2, n=2)
    assert res.ranks() == (1, 2, 0)
    assert res.complete
    assert effective_length(res) == 1
    assert check_exactness(res).ok


def test_cubic_relation_without_self_overlap(cubic):
    res = minimal_resolution(cubic, n=3)
    assert res.ranks() == (1, 2, 1, 0)
    assert betti_table(res)[(2, 3)] == 1
    assert res.complete


def test_polynomial_ring_over_finite_field():
    res = minimal_resolution(fixtures.poly2(5, field="GF(3)"), n=2)
    assert res.ranks() == (1, 2, 1)
    assert check_exactness(res).ok


def test_zero_length_resolution(poly2_small):
    res = minimal_resolution(poly2_small, n=0)
    assert res.length == 0
    assert res.ranks() == (1,)
    assert [g.degree for g in res.pending] == [1, 1]


def test_negative_length_raises(poly2_small):
    with pytest.raises(ResolutionError):
        minimal_resolution(poly2_small, n=-1)


# -----------------------------------------------------------------------------
# Verdicts
# -----------------------------------------------------------------------------

def test_verdict_certified_below_cutoff(poly2_resolution):
    verdict = fpn_verdict(poly2_resolution)
    assert verdict.verdict is Verdict.CERTIFIED
    assert verdict.certified
    assert verdict.ranks == (1, 2, 1, 0)
    assert verdict.betti is not None


def test_verdict_for_smaller_n(poly2_resolution):
    verdict = fpn_verdict(poly2_resolution, n=1)
    assert verdict.certified
    assert verdict.ranks == (1, 2)


def test_verdict_inconclusive_at_cutoff():
    res = minimal_resolution(fixtures.exterior2(4), n=4)
    verdict = fpn_verdict(res)
    assert verdict.verdict is Verdict.INCONCLUSIVE
    assert "F4" in verdict.reason


def test_verdict_inconclusive_from_pending_generators():
    res = minimal_resolution(fixtures.exterior2(4), n=3)
    verdict = fpn_verdict(res)
    assert verdict.verdict is Verdict.INCONCLUSIVE
    assert "Ker" in verdict.reason


@pytest.mark.parametrize("name, D, n, expected, ranks", [
    ("exterior2", 3, 4, Verdict.INCONCLUSIVE, (1, 2, 3, 4, 0)),
    ("poly2", 6, 3, Verdict.CERTIFIED, (1, 2, 1, 0)),
    ("free2", 4, 10, Verdict.CERTIFIED, (1, 2) + (0,) * 9),
    # one degree of headroom: Ker ∂4 of the exterior algebra starts in degree 5
    ("exterior2", 5, 4, Verdict.INCONCLUSIVE, (1, 2, 3, 4, 5)),
    ("exterior2", 6, 4, Verdict.CERTIFIED, (1, 2, 3, 4, 5)),
])
def test_verdicts_of_reference_algebras(name, D, n, expected, ranks):
    res = minimal_resolution(fixtures.ALGEBRAS[name](D), n=n)
    verdict = fpn_verdict(res, n)
    assert verdict.verdict is expected
    assert verdict.ranks == ranks
    assert verdict.cutoff == D


def test_verdict_beyond_length_raises(poly2_resolution):
    with pytest.raises(ResolutionError):
        fpn_verdict(poly2_resolution, n=4)


# -----------------------------------------------------------------------------
# Hand-built Complexes
# -----------------------------------------------------------------------------

def test_koszul_complex_matches_minimal_resolution(poly2):
    koszul = koszul_complex_poly2(poly2)
    assert check_exactness(koszul).ok
    assert check_minimality(koszul).minimal
    assert betti_table(koszul).triples() == betti_table(minimal_resolution(poly2, n=2)).triples()


def test_perturbed_differential_is_caught(poly2):
    broken = perturbed(koszul_complex_poly2(poly2), 2)
    report = check_exactness(broken)
    assert not report.ok
    assert any(f.kind == "composition" for f in report.failures)


def test_padded_resolution_is_exact_but_not_minimal(poly2_resolution):
    padded = identity_padded(poly2_resolution, 1, 2)
    assert check_exactness(padded).ok
    result = check_minimality(padded)
    assert not result.minimal
    assert result.witness == (2, 1)
    with pytest.raises(NonMinimalResolutionError):
        betti_table(padded)
