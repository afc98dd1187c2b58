from dataclasses import replace

import numpy as np
import pytest

from sg_workbench import corpus
from sg_workbench.algebra.modules import module_from_generators, power, simple_modules
from sg_workbench.data_objects import Limits
from sg_workbench.errors import RejectFinitePd
from sg_workbench.homology.stable import SgHomStatus, sg_hom
from sg_workbench.homology.syzygy import SyzygyChain
from sg_workbench.periodicity.certificates import (NoneFound, Periodic, VPCertificate, certify_virtually_periodic,
                                                   derive_nd_certificate, detect_periodicity)
from sg_workbench.periodicity.closure import ClosureCertificate, NodeKind, extension_closure_member
from sg_workbench.periodicity.gamma import VerdictKind, gamma_table, hom_finiteness_probe
from sg_workbench.periodicity.probes import (NonvanishingWitness, UCWitness, VirtuallyUCWitness, ZeroObject,
                                             presilting_probe, syzygy_finite_probe, ultimately_closed_probe,
                                             virtually_uc_probe)


def test_power_of_simple_is_in_its_closure(two_loop):
    _, top = simple_modules(two_loop)
    square = power(top, 2).module
    certificate = extension_closure_member(square, top)
    assert isinstance(certificate, ClosureCertificate)
    assert certificate.verify() == []
    assert "add" in certificate.kinds()


def test_corrupted_closure_map_fails_replay(two_loop):
    _, top = simple_modules(two_loop)
    certificate = extension_closure_member(power(top, 2).module, top)
    node = next(node for node in certificate.nodes if node.kind is NodeKind.ADD)
    iota, r = node.maps[0], node.maps[1]
    row = next(i for i in range(r.shape[1]) if np.any(r[:, i] != 0))
    broken = iota.copy()
    broken[row, 0] = (broken[row, 0] + 1) % 3
    nodes = list(certificate.nodes)
    nodes[node.node_id] = replace(node, maps=(broken, r))
    assert replace(certificate, nodes=tuple(nodes)).verify()


def test_residue_field_is_virtually_periodic(dual_numbers):
    _, k = simple_modules(dual_numbers)
    certificate = certify_virtually_periodic(k, 1)
    assert isinstance(certificate, VPCertificate)
    assert certificate.pd.is_infinite
    assert certificate.verify() == []


def test_two_loop_top_is_virtually_periodic(two_loop):
    _, top = simple_modules(two_loop)
    certificate = certify_virtually_periodic(top, 1)
    assert isinstance(certificate, VPCertificate)
    assert certificate.verify() == []


def test_finite_pd_is_rejected(a2):
    (first, _), _ = simple_modules(a2)
    with pytest.raises(RejectFinitePd) as error:
        certify_virtually_periodic(first, 1)
    assert error.value.status.degree == 1


def test_certificate_transported_to_multiple_period(dual_numbers):
    _, k = simple_modules(dual_numbers)
    chain = SyzygyChain(k)
    certificate = certify_virtually_periodic(k, 1, chain=chain)
    derived = derive_nd_certificate(certificate, 3, chain)
    assert derived.period == 3
    assert derived.verify() == []


def test_detect_periodicity(dual_numbers, cubic, two_loop):
    _, k = simple_modules(dual_numbers)
    result = detect_periodicity(k, 4)
    assert isinstance(result, Periodic)
    assert result.period == 1
    assert result.witness.is_isomorphism()
    _, k3 = simple_modules(cubic)
    assert detect_periodicity(k3, 4).period == 2
    _, top = simple_modules(two_loop)
    assert isinstance(detect_periodicity(top, 3), NoneFound)


def test_gamma_table_of_residue_field(dual_numbers):
    _, k = simple_modules(dual_numbers)
    certificate = certify_virtually_periodic(k, 1)
    table = gamma_table(k, 1, 5, certificate=certificate)
    assert table.shifts == tuple(range(-5, 6))
    assert [table.value(n) for n in table.shifts] == [1] * 11
    assert table.all_certified
    assert table.all_nonzero
    assert not table.any_growing


def test_gamma_table_vanishes_for_finite_pd(a2):
    (first, _), _ = simple_modules(a2)
    table = gamma_table(first, 1, 3)
    assert all(report.status is SgHomStatus.ZERO_CERTIFIED for report in table.reports.values())
    assert not table.all_nonzero


def test_trichotomy_finite_global_dimension(a2, square):
    verdict = hom_finiteness_probe(a2)
    assert verdict.kind is VerdictKind.FINITE_GLOBAL_DIMENSION
    assert verdict.degree == 1
    assert hom_finiteness_probe(square).degree == 2


def test_trichotomy_hom_finite(cubic):
    verdict = hom_finiteness_probe(cubic)
    assert verdict.kind is VerdictKind.INFINITE_GL_DIM_HOM_FINITE
    assert verdict.table.all_certified


def test_trichotomy_not_hom_finite(two_loop):
    verdict = hom_finiteness_probe(two_loop, Limits(syzygy_cutoff=6, shift_range=1))
    assert verdict.kind is VerdictKind.NOT_HOM_FINITE
    assert verdict.cutoff_relative
    assert verdict.syzygy_dims[:4] == (1, 2, 4, 8)
    assert verdict.growth.dims[:3] == [1, 4, 16]


def test_ultimately_closed_probe(two_loop):
    _, top = simple_modules(two_loop)
    witness = ultimately_closed_probe(top, 3)
    assert isinstance(witness, UCWitness)
    assert witness.d == 1
    assert [i for i, _ in witness.matches] == [0, 0]
    assert all(iso.is_isomorphism() for _, iso in witness.matches)


def test_syzygy_finite_probe(two_loop, a2):
    inventory = syzygy_finite_probe(two_loop, 4)
    assert len(inventory.classes) == 1
    assert inventory.first_seen == (1,)
    assert inventory.e_is_syzygy
    assert syzygy_finite_probe(a2, 3).classes == ()


def test_presilting_probe(dual_numbers, a2):
    _, k = simple_modules(dual_numbers)
    witness = presilting_probe(k, 5, Limits(syzygy_cutoff=8))
    assert isinstance(witness, NonvanishingWitness)
    assert witness.n == 1
    assert witness.dim == 1
    (first, _), _ = simple_modules(a2)
    assert presilting_probe(first, 3) == ZeroObject(1)


def test_virtually_ultimately_closed_probe(two_loop):
    _, top = simple_modules(two_loop)
    witness = virtually_uc_probe(top, 2)
    assert isinstance(witness, VirtuallyUCWitness)
    assert witness.d == 1
    assert witness.certificate.verify() == []


def test_limits_validation():
    with pytest.raises(ValueError):
        Limits(syzygy_cutoff=0).validate()
    assert Limits().replace(shift_range=None, window=4).window == 4


def _middle(cubic):
    return module_from_generators(cubic, [0, 0], {"x": [[0, 0], [1, 0]]}, "M2")


def test_cubic_residue_field_closes_at_second_syzygy(cubic):
    _, k = simple_modules(cubic)
    witness = ultimately_closed_probe(k, 3)
    assert isinstance(witness, UCWitness)
    assert witness.d == 2
    inventory = syzygy_finite_probe(cubic, 4)
    assert sorted(module.dim for module in inventory.classes) == [1, 2]
    assert inventory.first_seen == (1, 2)


def test_two_dimensional_module_is_built_by_extension(cubic):
    _, k = simple_modules(cubic)
    certificate = extension_closure_member(_middle(cubic), k)
    assert isinstance(certificate, ClosureCertificate)
    assert "extension" in certificate.kinds()
    assert certificate.verify() == []


def test_cubic_presilting_witness(cubic):
    witness = presilting_probe(_middle(cubic), 3, Limits(syzygy_cutoff=8))
    assert isinstance(witness, NonvanishingWitness)
    assert witness.n == 1


def test_cubic_certificate_doubled(cubic):
    _, top = simple_modules(cubic)
    chain = SyzygyChain(top)
    certificate = certify_virtually_periodic(top, 1, chain=chain)
    derived = derive_nd_certificate(certificate, 2, chain)
    assert derived.period == 2
    assert derived.verify() == []
    assert isinstance(certify_virtually_periodic(top, 2), VPCertificate)


SELF_INJECTIVE = [
    lambda: corpus.truncated_polynomial(2),
    lambda: corpus.truncated_polynomial(3),
    lambda: corpus.truncated_polynomial(4),
    lambda: corpus.cyclic_nakayama(3, 2),
    lambda: corpus.cyclic_nakayama(2, 3),
]


def _uniserial(algebra, length):
    shift = [[1 if row == col + 1 else 0 for col in range(length)] for row in range(length)]
    return module_from_generators(algebra, [0] * length, {"x": shift}, f"U{length}")


@pytest.mark.parametrize("builder", SELF_INJECTIVE)
def test_gamma_table_of_top_never_vanishes(builder):
    _, top = simple_modules(builder())
    chain = SyzygyChain(top)
    certificate = certify_virtually_periodic(top, 1, chain=chain)
    assert isinstance(certificate, VPCertificate)
    table = gamma_table(top, 1, 5, certificate=certificate, chain=chain)
    assert table.all_certified
    assert table.all_nonzero


@pytest.mark.parametrize("builder", SELF_INJECTIVE[:4])
@pytest.mark.parametrize("n", [5, 10, 20])
def test_far_shifts_are_certified_nonzero(builder, n):
    _, top = simple_modules(builder())
    limits = Limits()
    chain = SyzygyChain(top)
    for shift in (n, -n):
        report = sg_hom(top, shift, top, limits.syzygy_cutoff + max(0, -shift), source_chain=chain,
                        target_chain=chain, max_dim=limits.max_chain_dim)
        assert report.is_certified
        assert report.value >= 1


@pytest.mark.parametrize("builder", SELF_INJECTIVE[:4])
def test_transport_agrees_with_direct_certification(builder):
    _, top = simple_modules(builder())
    chain = SyzygyChain(top)
    certificate = certify_virtually_periodic(top, 1, chain=chain)
    for n in range(1, 5):
        derived = derive_nd_certificate(certificate, n, chain)
        assert derived.period == n
        assert derived.verify() == []
        assert isinstance(certify_virtually_periodic(top, n), VPCertificate)


@pytest.mark.parametrize("nilpotency", [3, 4])
def test_every_nonprojective_uniserial_has_a_nonvanishing_shift(nilpotency):
    algebra = corpus.truncated_polynomial(nilpotency)
    uniserials = [_uniserial(algebra, length) for length in range(1, nilpotency)]
    for module in uniserials:
        witness = presilting_probe(module, 2 * len(uniserials), Limits(syzygy_cutoff=8))
        assert isinstance(witness, NonvanishingWitness), module.name
        assert witness.n == 1


def test_gamma_table_stops_at_the_dimension_guard(two_loop):
    _, top = simple_modules(two_loop)
    table = gamma_table(top, 1, 5)
    assert table.reports[5].truncated_at == 2
    assert table.reports[-5].truncated_at == 6
    assert table.reports[0].status is SgHomStatus.GROWING_AT_CUTOFF
    assert not any(report.is_certified for report in table.reports.values())
    assert all(max(report.source_dims + report.target_dims) <= 64 for report in table.reports.values())
