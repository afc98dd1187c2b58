import pytest

from sg_workbench import corpus
from sg_workbench.algebra.isomorphism import is_isomorphic
from sg_workbench.algebra.modules import direct_sum, module_from_generators, projective_module, simple_modules
from sg_workbench.errors import CutoffTooSmall
from sg_workbench.homology.covers import projective_cover
from sg_workbench.homology.ext import ext1, ext_group
from sg_workbench.homology.pd import PdKind, pd_status
from sg_workbench.homology.stable import SgHomStatus, sg_hom, stable_hom
from sg_workbench.homology.syzygy import SyzygyChain, syzygy

from tests.oracle import stable_hom_dim


def test_cover_of_residue_field(dual_numbers):
    _, k = simple_modules(dual_numbers)
    cover = projective_cover(k)
    assert cover.projective.dim == 2
    assert cover.kernel.module.dim == 1
    assert cover.multiplicities() == (1,)


def test_syzygy_dimensions_double_over_two_loop(two_loop):
    _, top = simple_modules(two_loop)
    assert SyzygyChain(top).dimensions(4) == [1, 2, 4, 8, 16]


def test_syzygy_recurrence_of_residue_field(cubic):
    _, k = simple_modules(cubic)
    recurrence = SyzygyChain(k).recurrence(4)
    assert recurrence is not None
    assert recurrence.period == 2


def test_ext1_between_simples_of_a2(a2):
    (first, second), _ = simple_modules(a2)
    assert ext1(first, second).dim == 1
    assert ext1(second, first).dim == 0


def test_ext_of_residue_field_is_one_dimensional_in_every_degree(dual_numbers):
    _, k = simple_modules(dual_numbers)
    assert [ext_group(k, n, k).dim for n in range(4)] == [1, 1, 1, 1]


def test_pd_of_simple_of_a2(a2):
    (first, second), _ = simple_modules(a2)
    status = pd_status(first, 6)
    assert status.kind is PdKind.FINITE
    assert status.degree == 1
    assert pd_status(second, 6).degree == 0


def test_pd_of_residue_field_is_infinite(dual_numbers):
    _, k = simple_modules(dual_numbers)
    assert pd_status(k, 6).is_infinite
    status = pd_status(k, 6, use_simple_graph=False)
    assert status.is_infinite
    assert status.recurrence is not None


def test_pd_growth_is_reported_unknown(two_loop):
    _, top = simple_modules(two_loop)
    status = pd_status(top, 3, use_simple_graph=False, max_dim=4)
    assert status.kind is PdKind.UNKNOWN
    assert "growth" in status.annotations


def test_stable_hom_of_residue_field(dual_numbers):
    _, k = simple_modules(dual_numbers)
    assert stable_hom(k, k).dim == 1
    assert stable_hom(projective_module(dual_numbers, 0), k).dim == 0


def test_sg_hom_residue_field_is_one_in_every_shift(dual_numbers):
    _, k = simple_modules(dual_numbers)
    chain = SyzygyChain(k)
    for n in range(-5, 6):
        report = sg_hom(k, n, k, 8, source_chain=chain, target_chain=chain)
        assert report.status is SgHomStatus.STABILIZED_CERTIFIED
        assert report.value == 1


def test_sg_hom_vanishes_for_finite_pd(a2):
    (first, _), _ = simple_modules(a2)
    report = sg_hom(first, 0, first, 8)
    assert report.status is SgHomStatus.ZERO_CERTIFIED
    assert report.value == 0
    assert report.vanishing == ("target", 1)


def test_sg_hom_grows_over_two_loop(two_loop):
    _, top = simple_modules(two_loop)
    report = sg_hom(top, 0, top, 6, max_cells=2048)
    assert report.status is SgHomStatus.GROWING_AT_CUTOFF
    assert report.dims[:3] == [1, 4, 16]
    assert report.target_dims[:4] == [1, 2, 4, 8]
    assert not report.is_certified


def test_sg_hom_rejects_short_cutoff(dual_numbers):
    _, k = simple_modules(dual_numbers)
    with pytest.raises(CutoffTooSmall):
        sg_hom(k, -3, k, 4)


def _small_modules(algebra):
    simples, _ = simple_modules(algebra)
    modules = list(simples)
    modules += [projective_module(algebra, v) for v in range(algebra.vertex_count)]
    modules += [projective_cover(simple).kernel.module for simple in simples]
    return [module for module in modules if 0 < module.dim <= 3]


@pytest.mark.parametrize("builder", [
    lambda field: corpus.truncated_polynomial(2, field),
    lambda field: corpus.truncated_polynomial(3, field),
    corpus.a2,
    corpus.two_loop,
    corpus.noncommutative_local,
])
def test_stable_hom_agrees_with_direct_solve_over_gf2(gf2, builder):
    algebra = builder(gf2)
    modules = _small_modules(algebra)
    for source in modules:
        for target in modules:
            assert stable_hom(source, target).dim == stable_hom_dim(source, target), (source.name, target.name)


def test_uniserial_quotient_over_cubic(gf2):
    algebra = corpus.truncated_polynomial(3, gf2)
    middle = module_from_generators(algebra, [0, 0], {"x": [[0, 0], [1, 0]]})
    _, k = simple_modules(algebra)
    assert stable_hom(middle, middle).dim == stable_hom_dim(middle, middle)
    assert stable_hom(k, middle).dim == stable_hom_dim(k, middle)


def test_two_dimensional_module_over_cubic(cubic):
    middle = module_from_generators(cubic, [0, 0], {"x": [[0, 0], [1, 0]]}, "M2")
    _, k = simple_modules(cubic)
    space = stable_hom(middle, middle)
    assert space.hom_dim == 2
    assert space.factoring_dim == 1
    assert space.dim == 1
    cover = projective_cover(middle)
    assert cover.projective.dim == 3
    assert cover.kernel.module.dim == 1


def test_syzygy_is_additive(cubic, two_loop):
    _, k = simple_modules(cubic)
    middle = module_from_generators(cubic, [0, 0], {"x": [[0, 0], [1, 0]]}, "M2")
    total = direct_sum([k, middle]).module
    assert is_isomorphic(syzygy(total, 1), direct_sum([syzygy(k, 1), syzygy(middle, 1)]).module)
    _, top = simple_modules(two_loop)
    doubled = direct_sum([top, top]).module
    assert is_isomorphic(syzygy(doubled, 1), direct_sum([syzygy(top, 1), syzygy(top, 1)]).module)


def test_ext_vanishes_past_projective_dimension(a2):
    (first, second), _ = simple_modules(a2)
    chain = SyzygyChain(first)
    assert [ext_group(first, n, second, chain).dim for n in range(4)] == [0, 1, 0, 0]
    assert chain.module(2).dim == 0


def test_zero_hom_over_finite_global_dimension(a2, square):
    (first, second), top = simple_modules(a2)
    for source in (first, second, top):
        for target in (first, second, top):
            for n in range(-4, 5):
                report = sg_hom(source, n, target, 8)
                assert report.status is SgHomStatus.ZERO_CERTIFIED, (source.name, n, target.name)
                assert report.value == 0
    _, square_top = simple_modules(square)
    chain = SyzygyChain(square_top)
    for n in range(-3, 4):
        assert sg_hom(square_top, n, square_top, 8, source_chain=chain, target_chain=chain).status \
            is SgHomStatus.ZERO_CERTIFIED
    assert chain.module(2).dim == 0


def test_sg_hom_vanishes_on_projectives(dual_numbers):
    _, k = simple_modules(dual_numbers)
    projective = projective_module(dual_numbers, 0)
    from_projective = sg_hom(projective, 2, k, 8)
    assert from_projective.status is SgHomStatus.ZERO_CERTIFIED
    assert from_projective.vanishing == ("source", 0)
    into_projective = sg_hom(k, -2, projective, 8)
    assert into_projective.status is SgHomStatus.ZERO_CERTIFIED
    assert into_projective.vanishing == ("target", 0)
    assert into_projective.target_dims == [0]


def test_syzygy_shifts_the_degree(cubic):
    _, k = simple_modules(cubic)
    middle = module_from_generators(cubic, [0, 0], {"x": [[0, 0], [1, 0]]}, "M2")
    for source in (k, middle):
        for target in (k, middle):
            for n in range(-2, 3):
                shifted = sg_hom(syzygy(source, 1), n, target, 8)
                direct = sg_hom(source, n + 1, target, 8)
                assert shifted.is_certified and direct.is_certified
                assert shifted.value == direct.value == 1


def test_sg_hom_stops_before_oversized_syzygies(two_loop):
    _, top = simple_modules(two_loop)
    chain = SyzygyChain(top)
    report = sg_hom(top, 5, top, 12, source_chain=chain, target_chain=chain, max_dim=32)
    assert report.truncated_at == 2
    assert not report.is_certified
    assert max(report.source_dims + report.target_dims) <= 64
    assert len(chain) == 7
