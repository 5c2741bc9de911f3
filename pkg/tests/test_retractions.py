# tests/test_retractions.py

import pytest

from homfin import fixtures
from homfin.algebra.group_rings import left_resolution_K
from homfin.algebra.modules import TRIVIAL_KEY, GradedLinearMap, Submodule, TrivialModule
from homfin.algebra.presentation import parse_polynomial
from homfin.algebra.resolutions import Verdict, check_exactness, minimal_resolution
from homfin.algebra.retractions import (
    RetractivePair,
    graded_retraction,
    identity_pair,
    monoid_retraction,
    projection_retraction,
    proposition1_resolve,
    proposition1_step,
    retraction_for_side,
    sign_retraction,
    transport_fpn,
    trivial_pair,
)
from homfin.algebra.scalars import parse_field
from homfin.core.exceptions import GeneratingSetError, ResolutionError, RetractionError, RetractivePairError

QQ = parse_field("Q")
GF2 = parse_field("GF(2)")


def images(target, **exprs):
    return {name: parse_polynomial(text, target.alphabet) for name, text in exprs.items()}


def kill_y(D: int = 4):
    """K[x, y] -> K[x] with y ↦ 0."""
    R, S = fixtures.poly2(D), fixtures.poly1(D)
    return graded_retraction(R, S, images(S, x="x", y="0"), images(R, x="x"))

# -----------------------------------------------------------------------------
# Graded Retractions
# -----------------------------------------------------------------------------

def test_killing_a_variable_is_a_retraction():
    retraction = kill_y()
    assert retraction.rho_key((1,)) == {}
    assert retraction.rho_key((0, 0)) == {(0, 0): 1}
    assert retraction.rho_key((0, 1)) == {}
    assert retraction.iota_key((0, 0, 0)) == {(0, 0, 0): 1}
    assert retraction.augmented


def test_section_that_does_not_split_raises():
    R, S = fixtures.poly2(4), fixtures.poly1(4)
    with pytest.raises(RetractionError) as excinfo:
        graded_retraction(R, S, images(S, x="x", y="0"), images(R, x="2*x"))
    assert excinfo.value.witness == "x"


def test_retraction_must_kill_relations():
    R, S = fixtures.poly2(4), fixtures.free2(4)
    with pytest.raises(RetractionError, match="relation"):
        graded_retraction(R, S, images(S, x="x", y="y"), images(R, x="x", y="y"))


def test_inhomogeneous_image_raises():
    R, S = fixtures.poly2(4), fixtures.poly1(4)
    with pytest.raises(RetractionError, match="homogeneous"):
        graded_retraction(R, S, images(S, x="x*x", y="0"), images(R, x="x"))


def test_missing_image_raises():
    R, S = fixtures.poly2(4), fixtures.poly1(4)
    with pytest.raises(RetractionError) as excinfo:
        graded_retraction(R, S, images(S, x="x"), images(R, x="x"))
    assert excinfo.value.witness == "y"


def test_mismatched_cutoffs_raise():
    R, S = fixtures.poly2(4), fixtures.poly1(3)
    with pytest.raises(RetractionError, match="Cutoffs"):
        graded_retraction(R, S, images(S, x="x", y="0"), images(R, x="x"))


def test_opposite_retraction():
    opp = kill_y().opposite()
    assert opp.big.name.endswith("^opp")
    assert opp.rho_key((1,)) == {}


# -----------------------------------------------------------------------------
# Finite Retractions
# -----------------------------------------------------------------------------

def test_projection_retraction_is_augmented(c2, c3):
    retraction = projection_retraction(c3, c2, QQ)
    assert retraction.big.dims() == (6,)
    assert retraction.augmented


def test_non_multiplicative_map_is_rejected(c2):
    trivial = fixtures.trivial_group()
    with pytest.raises(RetractionError):
        # the section must send 1 to 1
        monoid_retraction(c2, trivial, [0, 0], [1], QQ)


def test_sign_retraction_is_not_augmented_over_q(c2):
    retraction = sign_retraction(c2, fixtures.trivial_group(), QQ)
    assert not retraction.augmented
    with pytest.raises(RetractionError, match="augmented"):
        trivial_pair(retraction)


def test_sign_retraction_is_augmented_in_characteristic_two(c2):
    assert sign_retraction(c2, fixtures.trivial_group(), GF2).augmented


# -----------------------------------------------------------------------------
# Retractive Pairs and the Twin Construction
# -----------------------------------------------------------------------------

def test_zero_maps_do_not_form_a_retractive_pair():
    retraction = kill_y()
    K_R, K_S = TrivialModule(retraction.big), TrivialModule(retraction.small)
    zero_plus = GradedLinearMap(K_R, K_S, lambda key: {}, name="α⁺")
    zero_minus = GradedLinearMap(K_S, K_R, lambda key: {}, name="α⁻")
    with pytest.raises(RetractivePairError):
        RetractivePair(retraction, Submodule.full(K_R), Submodule.full(K_S), zero_plus, zero_minus)


def test_empty_generating_set_raises():
    pair = trivial_pair(kill_y())
    with pytest.raises(GeneratingSetError) as excinfo:
        proposition1_step(pair, [])
    assert excinfo.value.missing_dimension == 1


def test_twin_resolution_has_doubled_top_row():
    retraction = kill_y()
    twin = proposition1_resolve(retraction, trivial_pair(retraction), 2)
    # step 1 needs e' in degree 0 and two generators of R⁺·e in degree 1
    assert twin.generator_counts[:2] == (1, 3)
    assert twin.top.ranks() == tuple(2 * c for c in twin.generator_counts)
    assert twin.bottom.ranks() == twin.generator_counts
    assert twin.structural_law_holds()
    assert check_exactness(twin.top).ok
    assert check_exactness(twin.bottom).ok


def test_identity_retraction_reproduces_the_resolution():
    S = fixtures.poly1(4)
    retraction = graded_retraction(S, S, images(S, x="x"), images(S, x="x"))
    pair = identity_pair(retraction, TrivialModule(S), TrivialModule(S))
    twin = proposition1_resolve(retraction, pair, 2)
    assert twin.structural_law_holds()
    assert check_exactness(twin.bottom).ok
    assert twin.bottom.ranks()[0] == 1


def test_negative_length_raises():
    retraction = kill_y()
    with pytest.raises(ResolutionError):
        proposition1_resolve(retraction, trivial_pair(retraction), -1)


# -----------------------------------------------------------------------------
# Transport
# -----------------------------------------------------------------------------

def test_transport_from_polynomial_ring_to_retract():
    retraction = kill_y()
    result = transport_fpn(retraction, minimal_resolution(retraction.big, n=2))
    assert result.passed
    assert result.input_verdict.certified
    assert result.verdict.verdict is Verdict.CERTIFIED
    assert result.twin.bottom.target.dims() == (1, 0, 0, 0, 0)


def test_transport_right_side():
    retraction, pair = retraction_for_side(kill_y(), "right")
    res = minimal_resolution(retraction.big, n=2, side="right")
    result = transport_fpn(retraction, res, pair=pair)
    assert result.passed
    assert result.twin.bottom.side == "right"


def test_transport_rejects_resolution_over_another_ring():
    retraction = kill_y()
    with pytest.raises(ResolutionError):
        transport_fpn(retraction, minimal_resolution(fixtures.free2(4), n=1))


def test_transport_along_group_projection(c2, c3):
    retraction = projection_retraction(c3, c2, QQ)
    res = left_resolution_K(retraction.big, 2)
    result = transport_fpn(retraction, res)
    assert result.passed
    assert result.verdict.certified


def test_transport_from_semilattice_square(semilattice):
    retraction = projection_retraction(semilattice, semilattice, QQ)
    result = transport_fpn(retraction, left_resolution_K(retraction.big, 2))
    assert result.passed
    assert check_exactness(result.twin.bottom).ok


def test_inconclusive_input_stays_inconclusive():
    R, S = fixtures.poly2(2), fixtures.poly1(2)
    retraction = graded_retraction(R, S, images(S, x="x", y="0"), images(R, x="x"))
    result = transport_fpn(retraction, minimal_resolution(R, n=2))
    assert not result.input_verdict.certified
    assert result.verdict.verdict is Verdict.INCONCLUSIVE


@pytest.mark.slow
def test_weak_bi_transport():
    retraction, pair = retraction_for_side(kill_y(3), "weak-bi")
    res = minimal_resolution(retraction.big, n=1, side="bi")
    result = transport_fpn(retraction, res, pair=pair)
    assert result.passed


@pytest.mark.slow
def test_bi_transport():
    from homfin.algebra.resolutions import bimodule_resolution_of_A

    retraction, pair = retraction_for_side(kill_y(3), "bi")
    bires, _ = bimodule_resolution_of_A(retraction.base.big, n=1, env=retraction.big)
    result = transport_fpn(retraction, bires, pair=pair)
    assert result.passed
    assert result.twin.bottom.target_kind == "algebra"


def test_unknown_side_raises():
    with pytest.raises(ResolutionError):
        retraction_for_side(kill_y(), "sideways")


def test_trivial_key_survives_retraction():
    pair = trivial_pair(kill_y())
    assert pair.alpha_plus.apply({TRIVIAL_KEY: QQ.one}) == {TRIVIAL_KEY: 1}
    assert pair.alpha_minus.apply({TRIVIAL_KEY: QQ.one}) == {TRIVIAL_KEY: 1}
