# tests/test_modules.py

import pytest

from homfin.algebra.modules import (
    TRIVIAL_KEY,
    FreeGradedModule,
    ModuleMap,
    RegularModule,
    Submodule,
    TrivialModule,
    assemble_map,
    augmentation_multiples_dimension,
    greedy_generators,
    image_degreewise,
    kernel_degreewise,
    minimal_generators,
    select_generators,
)
from homfin.algebra.scalars import parse_field
from homfin.core.exceptions import DegreeMismatchError

X, Y = (0,), (1,)
ONE = parse_field("Q").one


@pytest.fixture
def augmentation(poly2_small):
    F0 = FreeGradedModule(poly2_small, [0], name="F0")
    return assemble_map(F0, TrivialModule(poly2_small), [{TRIVIAL_KEY: ONE}], name="ε")

# -----------------------------------------------------------------------------
# Modules
# -----------------------------------------------------------------------------

def test_free_module_basis(poly2_small):
    F = FreeGradedModule(poly2_small, [0, 1])
    assert F.rank == 2
    assert F.basis(0) == ((0, ()),)
    assert F.basis(1) == ((0, X), (0, Y), (1, ()))
    assert F.dims() == (1, 3, 5, 7, 9)
    assert F.format_key((1, X)) == "x.e1"
    assert F.key_degree((1, (0, 1))) == 3


def test_free_module_action_normalizes(poly2_small):
    F = FreeGradedModule(poly2_small, [0])
    assert F.act(Y, (0, X)) == {(0, (0, 1)): 1}


def test_trivial_module_acts_through_augmentation(poly2_small):
    K = TrivialModule(poly2_small)
    assert K.dims() == (1, 0, 0, 0, 0)
    assert K.act((), TRIVIAL_KEY) == {TRIVIAL_KEY: ONE}
    assert K.act(X, TRIVIAL_KEY) == {}


def test_regular_module(poly2_small):
    A = RegularModule(poly2_small)
    assert A.dims() == poly2_small.dims()
    assert A.act(Y, X) == {(0, 1): 1}


# -----------------------------------------------------------------------------
# Maps
# -----------------------------------------------------------------------------

def test_image_with_wrong_degree_raises(poly2_small):
    F = FreeGradedModule(poly2_small, [1])
    with pytest.raises(DegreeMismatchError):
        assemble_map(F, TrivialModule(poly2_small), [{TRIVIAL_KEY: ONE}])


def test_image_count_must_match_rank(poly2_small):
    F = FreeGradedModule(poly2_small, [0, 0])
    with pytest.raises(DegreeMismatchError):
        ModuleMap(F, TrivialModule(poly2_small), [{TRIVIAL_KEY: ONE}])


def test_non_normal_images_are_normalized(poly2_small):
    F1 = FreeGradedModule(poly2_small, [2])
    F0 = FreeGradedModule(poly2_small, [0])
    phi = assemble_map(F1, F0, [{(0, (1, 0)): ONE}])
    assert phi.images[0] == {(0, (0, 1)): 1}


def test_module_map_is_linear_over_the_algebra(poly2_small):
    F1 = FreeGradedModule(poly2_small, [1, 1])
    F0 = FreeGradedModule(poly2_small, [0])
    phi = assemble_map(F1, F0, [{(0, X): ONE}, {(0, Y): ONE}])
    assert phi.apply({(1, X): ONE}) == {(0, (0, 1)): 1}
    assert phi.apply({(0, Y): ONE, (1, X): -ONE}) == {}
    assert phi.matrix(1).shape == (2, 2)


def test_compose(augmentation, poly2_small):
    F1 = FreeGradedModule(poly2_small, [1, 1])
    d1 = assemble_map(F1, augmentation.source, [{(0, X): ONE}, {(0, Y): ONE}])
    composite = augmentation.compose(d1)
    assert all(composite.rank(d) == 0 for d in composite.degrees())


# -----------------------------------------------------------------------------
# Kernels, Images, Generators
# -----------------------------------------------------------------------------

def test_kernel_of_augmentation_is_the_augmentation_ideal(augmentation):
    kernel = kernel_degreewise(augmentation)
    assert kernel.dims() == (0, 2, 3, 4, 5)
    assert kernel.closure_failures() == []
    assert kernel.contains({(0, X): ONE})
    assert not kernel.contains({(0, ()): ONE})


def test_image_of_augmentation(augmentation):
    assert image_degreewise(augmentation).dims() == (1, 0, 0, 0, 0)


def test_minimal_generators_of_augmentation_ideal(augmentation):
    kernel = kernel_degreewise(augmentation)
    gens = minimal_generators(kernel)
    assert [g.degree for g in gens] == [1, 1]
    assert augmentation_multiples_dimension(kernel, 1) == 0
    assert augmentation_multiples_dimension(kernel, 2) == 3


def test_generator_selection_is_deterministic(augmentation):
    kernel = kernel_degreewise(augmentation)
    assert minimal_generators(kernel) == minimal_generators(kernel)


def test_submodule_full_and_zero(poly2_small):
    F = FreeGradedModule(poly2_small, [0])
    assert Submodule.full(F).dims() == F.dims()
    assert Submodule.zero(F).is_zero()
    assert not Submodule.full(F).is_zero()


def test_greedy_generators_over_group_algebra(kc2_gf2):
    regular = RegularModule(kc2_gf2)
    gens = greedy_generators(Submodule.full(regular))
    assert len(gens) == 1
    assert gens[0].element == {0: 1}
    assert select_generators(Submodule.full(regular)) == gens
