from dataclasses import replace
from types import SimpleNamespace

import pytest

from sg_workbench.algebra.modules import simple_modules
from sg_workbench.errors import AxiomFailure, CrosscheckMismatch, InputError
from sg_workbench.homology.stable import SgHomStatus
from sg_workbench.leavitt.cohomology import (Comparison, Semantics, cohomology_report, crosscheck_lemma,
                                             verify_dg_axioms)
from sg_workbench.leavitt.components import apply_differential, differential_matrix, truncated_component
from sg_workbench.leavitt.presentation import dual_basis_failures
from sg_workbench.leavitt.rewriting import check_confluence, is_normal, leavitt_presentation, normal_form
from sg_workbench.periodicity.certificates import certify_virtually_periodic
from sg_workbench.periodicity.gamma import gamma_table

X = ("a", 0)
X_DUAL = ("g", 0)
E = (("e", 0),)


@pytest.fixture(scope="module")
def dual_presentation(dual_numbers):
    return leavitt_presentation(dual_numbers)


def test_dual_numbers_presentation(dual_presentation):
    assert dual_presentation.size == 1
    assert not dual_presentation.collapsed
    assert dual_presentation.differential_vanishes
    assert [rule["kind"] for rule in dual_presentation.rules()] == ["pair", "pivot"]


def test_pair_and_pivot_rules_reduce_to_idempotent(dual_presentation):
    assert normal_form(dual_presentation, {(X, X_DUAL): 1}) == {E: 1}
    assert normal_form(dual_presentation, {(X_DUAL, X): 1}) == {E: 1}
    assert is_normal(dual_presentation, (X_DUAL, X_DUAL, X_DUAL))
    assert not is_normal(dual_presentation, (X_DUAL, X, X))


def test_differential_of_square_dual_over_cubic(cubic):
    presentation = leavitt_presentation(cubic)
    x, x2 = presentation.labels.index("x"), presentation.labels.index("x*x")
    assert [(b, a) for _, b, a in presentation.plus[x2]] == [(x, x)]
    assert not presentation.plus[x]
    image = apply_differential(presentation, {(("g", x2),): 1})
    assert image == {(("g", x), ("g", x)): 1}


def test_differential_squares_to_zero_on_matrices(cubic):
    presentation = leavitt_presentation(cubic)
    first = differential_matrix(presentation, -1, 4)
    second = differential_matrix(presentation, 0, 5)
    assert presentation.field.is_zero(presentation.field.matmul(second, first))


@pytest.mark.parametrize("name,length_bound", [
    ("dual_numbers", 6),
    ("cubic", 6),
    ("two_loop", 6),
    ("nc_local", 6),
    ("a2", 6),
])
def test_dg_axioms_hold_on_corpus(request, name, length_bound):
    presentation = leavitt_presentation(request.getfixturevalue(name))
    report = verify_dg_axioms(presentation, length_bound)
    assert report.length_bound == length_bound
    assert check_confluence(presentation) >= 0


def test_transposed_differential_is_rejected(nc_local):
    with pytest.raises(AxiomFailure):
        leavitt_presentation(nc_local, transposed=True)


def test_collapse_for_finite_global_dimension(a2, square):
    assert leavitt_presentation(a2).collapsed
    assert leavitt_presentation(square).collapsed
    assert truncated_component(leavitt_presentation(a2), 0, 4).dim == 0


def test_two_loop_degree_zero_growth(two_loop):
    component = truncated_component(leavitt_presentation(two_loop), 0, 4)
    assert [component.dim_at(length) for length in (0, 2, 4)] == [1, 4, 16]


def test_cohomology_of_dual_numbers(dual_presentation):
    report = cohomology_report(dual_presentation, (-5, 5), 8, 7)
    assert [report.exact(n) for n in range(-5, 6)] == [1] * 11
    assert all(entry.differential_zero for entry in report.degrees.values())
    assert all(not entry.monotonicity_failures() for entry in report.degrees.values())


def test_cohomology_collapses_to_zero(a2):
    report = cohomology_report(leavitt_presentation(a2), (-2, 2), 4, 3)
    assert [report.exact(n) for n in range(-2, 3)] == [0] * 5


def test_two_loop_cohomology_is_only_approximated(two_loop):
    report = cohomology_report(leavitt_presentation(two_loop), (0, 0), 6, 5)
    entry = report.degrees[0]
    assert entry.semantics is Semantics.APPROXIMANT_ONLY
    assert entry.growing
    assert report.exact(0) is None


def test_cohomology_rejects_bad_ranges(dual_presentation):
    with pytest.raises(InputError):
        cohomology_report(dual_presentation, (2, 1), 8, 7)
    with pytest.raises(InputError):
        cohomology_report(dual_presentation, (-5, 5), 4, 3)


def test_crosscheck_matches_gamma(dual_numbers, dual_presentation):
    _, top = simple_modules(dual_numbers)
    table = gamma_table(top, 1, 3, certificate=certify_virtually_periodic(top, 1))
    report = cohomology_report(dual_presentation, (-3, 3), 8, 7)
    comparison = crosscheck_lemma(report, table)
    assert comparison.matched
    assert set(comparison.comparisons().values()) == {Comparison.MATCH.value}
    assert report.crosscheck is comparison


def test_crosscheck_raises_on_disagreement(dual_presentation):
    report = cohomology_report(dual_presentation, (0, 0), 8, 7)
    fake = SimpleNamespace(reports={0: SimpleNamespace(value=2, is_certified=True,
                                                       status=SgHomStatus.STABILIZED_CERTIFIED)})
    with pytest.raises(CrosscheckMismatch):
        crosscheck_lemma(report, fake)


def test_two_loop_pivot_rewrites_against_other_pairs(two_loop):
    presentation = leavitt_presentation(two_loop)
    pivot = presentation.pivots[0]
    other = 1 - pivot
    reduced = normal_form(presentation, {(("g", pivot), ("a", pivot)): 1})
    assert reduced == {E: 1, (("g", other), ("a", other)): 2}
    assert truncated_component(presentation, 0, 2).dim == 4


def test_dual_basis_is_read_from_the_stored_functionals(cubic):
    presentation = leavitt_presentation(cubic)
    assert dual_basis_failures(presentation) == []
    swapped = replace(presentation, duals=tuple(reversed(presentation.duals)))
    assert dual_basis_failures(swapped)
    scaled = replace(presentation, duals=(tuple(2 * value for value in presentation.duals[0]),)
                     + presentation.duals[1:])
    label = presentation.labels[0]
    assert (f"{label}*", label) in dual_basis_failures(scaled)
    assert dual_basis_failures(replace(presentation, duals=()))


def test_pair_rule_follows_the_stored_functionals(cubic):
    presentation = leavitt_presentation(cubic)
    swapped = replace(presentation, duals=tuple(reversed(presentation.duals)))
    word = (("a", 0), ("g", 0))
    assert normal_form(presentation, {word: 1}) == {E: 1}
    assert normal_form(swapped, {word: 1}) == {}


def test_crosscheck_matches_collapsed_gamma(a2):
    _, top = simple_modules(a2)
    table = gamma_table(top, 1, 5)
    report = cohomology_report(leavitt_presentation(a2), (-5, 5), 8, 7)
    comparison = crosscheck_lemma(report, table)
    assert comparison.matched
    assert set(comparison.comparisons().values()) == {Comparison.MATCH.value}
    assert all(entry.gamma_dim == 0 for entry in comparison.entries)
