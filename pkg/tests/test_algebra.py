import numpy as np
import pytest

from sg_workbench.algebra import linalg
from sg_workbench.algebra.algebras import AlgebraSpec, load_algebra
from sg_workbench.algebra.fields import PrimeField, RationalField
from sg_workbench.algebra.isomorphism import decompose, is_isomorphic
from sg_workbench.algebra.modules import (direct_sum, hom_space, module_from_generators, projective_module,
                                          radical_series, regular_module, simple_modules)
from sg_workbench.errors import InputError, NonAdmissible, NotFiniteDimensional
from sg_workbench.homology.syzygy import syzygy


def test_prime_field_rejects_composite_characteristic():
    with pytest.raises(InputError):
        PrimeField(4)


def test_prime_field_arithmetic(gf3):
    assert gf3.add(2, 2) == 1
    assert gf3.mul(2, 2) == 1
    assert gf3.neg(1) == 2
    assert gf3.inverse(2) == 2


def test_rational_field_keeps_fractions():
    field = RationalField()
    assert field.inverse(field.scalar(3)) * 3 == 1


@pytest.mark.parametrize("name,dim", [
    ("dual_numbers", 2),
    ("cubic", 3),
    ("a2", 3),
    ("two_loop", 3),
    ("square", 9),
    ("nc_local", 4),
])
def test_corpus_dimensions(request, name, dim):
    assert request.getfixturevalue(name).dim == dim


def test_paths_compose_left_to_right(nc_local):
    x, y = nc_local.index("x"), nc_local.index("y")
    xy = nc_local.index("x*y")
    # b_y · b_x is the path x then y
    assert nc_local.structure[y, x, xy] == 1
    assert not np.any(nc_local.structure[x, y])


def test_arrow_vertices(a2):
    a = a2.index("a")
    assert a2.right_vertex[a] == a2.vertex_index("1")
    assert a2.left_vertex[a] == a2.vertex_index("2")


def test_relation_of_length_one_is_rejected(gf3):
    spec = AlgebraSpec(field=gf3, name="bad", vertices=("1",), arrows=(("x", "1", "1"),),
                       relations=(((1, "x"),),), nilpotency_bound=2)
    with pytest.raises(NonAdmissible):
        load_algebra(spec)


def test_surviving_long_path_is_rejected(gf3):
    spec = AlgebraSpec(field=gf3, name="too-short-bound", vertices=("1",), arrows=(("x", "1", "1"),),
                       relations=(((1, "x*x*x"),),), nilpotency_bound=2)
    with pytest.raises(NotFiniteDimensional):
        load_algebra(spec)


def test_simples_and_projectives_of_a2(a2):
    simples, top = simple_modules(a2)
    assert [simple.dim for simple in simples] == [1, 1]
    assert top.dim == 2
    first = projective_module(a2, a2.vertex_index("1"))
    assert first.dimension_vector() == (1, 1)
    assert projective_module(a2, a2.vertex_index("2")).dim == 1
    assert regular_module(a2).dim == a2.dim


def test_hom_between_simples(a2):
    (first, second), _ = simple_modules(a2)
    assert hom_space(first, second).dim == 0
    assert hom_space(first, first).dim == 1


def test_radical_series_of_projective(cubic):
    series = radical_series(projective_module(cubic, 0))
    assert series.length == 3
    assert series.multiplicities == ((1,), (1,), (1,))


def test_representation_violating_relation_is_rejected(dual_numbers):
    with pytest.raises(InputError):
        module_from_generators(dual_numbers, [0, 0, 0], {"x": [[0, 0, 0], [1, 0, 0], [0, 1, 0]]})


def test_first_syzygy_of_residue_field_is_residue_field(dual_numbers):
    _, k = simple_modules(dual_numbers)
    assert is_isomorphic(syzygy(k, 1), k)


def test_non_isomorphic_simples(a2):
    (first, second), _ = simple_modules(a2)
    assert not is_isomorphic(first, second)


def test_isomorphism_up_to_change_of_basis(cubic):
    standard = module_from_generators(cubic, [0, 0], {"x": [[0, 0], [1, 0]]})
    scaled = module_from_generators(cubic, [0, 0], {"x": [[0, 0], [2, 0]]})
    decision = is_isomorphic(standard, scaled)
    assert decision
    assert decision.witness.is_isomorphism()


def test_decompose_groups_isomorphic_summands(dual_numbers):
    _, k = simple_modules(dual_numbers)
    total = direct_sum([k, regular_module(dual_numbers), k]).module
    decomposition = decompose(total)
    assert len(decomposition.pieces) == 3
    assert sorted(len(group) for group in decomposition.groups) == [1, 2]


def test_stacking_keeps_empty_axes(gf3):
    assert linalg.hstack(gf3, [gf3.zeros(0, 2), gf3.zeros(0, 1)], 0).shape == (0, 3)
    assert linalg.hstack(gf3, [gf3.zeros(0, 0).reshape(-1)], 0).shape == (0, 1)
    assert linalg.vstack(gf3, [gf3.zeros(2, 0)], 0).shape == (2, 0)
    assert linalg.vstack(gf3, [gf3.zeros(1, 0)] * 3, 0).shape == (3, 0)
    assert linalg.complement_columns(gf3, gf3.zeros(0, 0), [], 0).shape == (0, 0)
    assert linalg.complement_columns(gf3, gf3.zeros(2, 0), [0, 1], 2).shape == (2, 2)
    assert linalg.solve(gf3, gf3.zeros(0, 3), gf3.zeros(0, 1).reshape(-1)).shape == (3,)


def test_isomorphism_is_an_equivalence(cubic):
    modules = [
        module_from_generators(cubic, [0, 0], {"x": [[0, 0], [1, 0]]}),
        module_from_generators(cubic, [0, 0], {"x": [[0, 0], [2, 0]]}),
        module_from_generators(cubic, [0, 0], {"x": [[0, 1], [0, 0]]}),
    ]
    for first in modules:
        for second in modules:
            assert is_isomorphic(first, second)
    semisimple = module_from_generators(cubic, [0, 0], {"x": [[0, 0], [0, 0]]})
    assert all(not is_isomorphic(module, semisimple) for module in modules)
    assert all(not is_isomorphic(semisimple, module) for module in modules)


def test_hom_is_additive_in_the_target(a2):
    simples, _ = simple_modules(a2)
    modules = list(simples) + [projective_module(a2, v) for v in range(a2.vertex_count)]
    for source in modules:
        for first in modules:
            for second in modules:
                total = direct_sum([first, second]).module
                assert hom_space(source, total).dim == hom_space(source, first).dim + hom_space(source, second).dim
