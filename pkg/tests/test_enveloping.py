# tests/test_enveloping.py

import pytest

from homfin import fixtures
from homfin.algebra.enveloping import (
    ActionBimodule,
    EnvelopedModule,
    EnvelopingAlgebra,
    FreeBimodule,
    RegularBimodule,
    TrivialBimodule,
    bimodule_axiom_witness,
    bimodules_agree,
    env_retraction,
    free_bimodule_basis_defects,
    from_left_E_module,
    opposite_algebra,
    reverse_poly,
    to_left_E_module,
)
from homfin.algebra.presentation import parse_polynomial
from homfin.algebra.resolutions import (
    betti_table,
    bimodule_resolution_of_A,
    check_exactness,
    contract_to_left,
    kuenneth_biresolution,
    kuenneth_length,
    minimal_resolution,
)
from homfin.core.exceptions import BimoduleAxiomError, HomfinError, ResolutionError, UnsupportedInputError

X, Y, X_OP, Y_OP = (0,), (1,), (2,), (3,)


@pytest.fixture(scope="module")
def env(poly2_small):
    return EnvelopingAlgebra(poly2_small)


@pytest.fixture(scope="module")
def free_env():
    return EnvelopingAlgebra(fixtures.free2(3))


class SwappedBimodule(RegularBimodule):
    """Right action by left multiplication: not a bimodule over a noncommutative algebra."""

    def right_act(self, key, b_key):
        return dict(self.algebra.multiply(b_key, key))

# -----------------------------------------------------------------------------
# Opposite and Enveloping Algebras
# -----------------------------------------------------------------------------

def test_reverse_poly(cubic):
    p = parse_polynomial("x*x*y + 2*y*x", cubic.alphabet)
    assert reverse_poly(p) == parse_polynomial("y*x*x + 2*x*y", cubic.alphabet)


def test_opposite_has_the_same_dimensions(cubic):
    assert opposite_algebra(cubic).dims() == cubic.dims()


def test_enveloping_dims_are_the_convolution(env, free_env):
    assert env.dims() == (1, 4, 10, 20, 35)
    assert env.convolution_defects() == []
    assert free_env.dims() == (1, 4, 12, 32)


def test_enveloping_generator_names(env):
    assert [g.name for g in env.alphabet.generators] == ["x", "y", "x_op", "y_op"]


def test_normal_words_split_into_left_and_right_blocks(env):
    for d in range(env.cutoff + 1):
        for word in env.basis(d):
            left, right = env.split(word)
            assert env.base.is_normal(left)
            assert env.opposite.is_normal(right)


def test_embeddings(env):
    assert env.embed_left(X) == {X: 1}
    assert env.embed_right(X) == {X_OP: 1}
    assert env.right_from_base((0, 1)) == {(2, 3): 1}
    assert env.multiply(X_OP, Y) == {(1, 2): 1}


def test_split_rejects_mixed_words(env):
    assert env.split((0, 2, 3)) == ((0,), (0, 1))
    with pytest.raises(HomfinError):
        env.split((2, 0))


def test_contract_kills_right_letters(env):
    assert env.contract((0, 1)) == {(0, 1): 1}
    assert env.contract((0, 2)) == {}


# -----------------------------------------------------------------------------
# Bimodules and Left E-modules
# -----------------------------------------------------------------------------

def test_action_on_regular_bimodule(env, poly2_small):
    regular = RegularBimodule(poly2_small)
    # (x ⊗ y°)·1 = x·1·y
    assert env.act_on_bimodule((0, 3), (), regular) == {(0, 1): 1}


def test_regular_and_trivial_bimodules_satisfy_the_axiom(poly2_small):
    assert bimodule_axiom_witness(RegularBimodule(poly2_small)) is None
    assert bimodule_axiom_witness(TrivialBimodule(poly2_small)) is None


def test_broken_bimodule_is_rejected(free_env):
    broken = SwappedBimodule(free_env.base)
    with pytest.raises(BimoduleAxiomError) as excinfo:
        to_left_E_module(broken, free_env)
    assert excinfo.value.witness == (X, (), Y)


def test_functors_round_trip(env, poly2_small):
    regular = RegularBimodule(poly2_small)
    enveloped = to_left_E_module(regular, env)
    assert isinstance(enveloped, EnvelopedModule)
    assert enveloped.dims() == poly2_small.dims()
    assert from_left_E_module(enveloped, env) is regular


def test_action_bimodule_agrees_with_the_original(env, poly2_small):
    regular = RegularBimodule(poly2_small)
    rebuilt = ActionBimodule(EnvelopedModule(regular, env), env)
    assert bimodules_agree(rebuilt, regular)


def test_free_bimodule_is_free_over_enveloping_algebra(env, poly2_small):
    assert free_bimodule_basis_defects(FreeBimodule(poly2_small, [0, 1]), env) == []


def test_env_retraction(env):
    retraction = env_retraction(env)
    assert retraction.rho_key(X_OP) == {}
    assert retraction.rho_key((0, 1)) == {(0, 1): 1}
    assert retraction.iota_key(Y) == {Y: 1}
    assert retraction.augmented


# -----------------------------------------------------------------------------
# Bi-resolutions
# -----------------------------------------------------------------------------

def test_kuenneth_ranks_for_polynomial_ring(env, poly2_small):
    left = minimal_resolution(poly2_small, n=2)
    right = minimal_resolution(env.opposite, n=2, side="right")
    assert kuenneth_length(left, right) == 4
    bires = kuenneth_biresolution(left, right, env)
    assert bires.ranks() == (1, 4, 6, 4, 1)
    assert bires.side == "bi"
    assert check_exactness(bires).ok


def test_kuenneth_ranks_for_free_algebra(free_env):
    left = minimal_resolution(free_env.base, n=1)
    right = minimal_resolution(free_env.opposite, n=1, side="right")
    bires = kuenneth_biresolution(left, right, free_env)
    assert bires.ranks() == (1, 4, 4)
    assert check_exactness(bires).ok


def test_kuenneth_rejects_two_left_resolutions(env, poly2_small):
    left = minimal_resolution(poly2_small, n=1)
    with pytest.raises(ResolutionError):
        kuenneth_biresolution(left, left, env)


def test_contraction_needs_a_resolution_of_the_algebra(env, poly2_small):
    left = minimal_resolution(poly2_small, n=1)
    right = minimal_resolution(env.opposite, n=1, side="right")
    bires = kuenneth_biresolution(left, right, env)
    with pytest.raises(UnsupportedInputError):
        contract_to_left(bires, env)


def test_bimodule_resolution_matches_left_betti_numbers(env, poly2_small):
    bires, comparison = bimodule_resolution_of_A(poly2_small, n=3, env=env)
    assert bires.target_kind == "algebra"
    assert betti_table(bires).triples() == [(0, 0, 1), (1, 1, 2), (2, 2, 1)]
    assert comparison.passed
    assert comparison.mismatches == ()


@pytest.mark.slow
def test_bimodule_resolution_of_exterior_algebra():
    A = fixtures.exterior2(4)
    bires, comparison = bimodule_resolution_of_A(A, n=3)
    assert comparison.passed
    assert bires.ranks() == (1, 2, 3, 4)
