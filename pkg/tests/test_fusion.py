import dataclasses

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdouble.double import ModularData
from qdouble.errors import FusionError, TheoremViolation
from qdouble.fusion import (
    bantay_indicators,
    check_tensor_invariants,
    fusion_data,
    fusion_matrix,
    quantum_dimensions,
    sum_rules,
    type_classification,
    units,
    verlinde_tensor,
)
from qdouble.groups import structure_invariants

from . import s3_oracle
from .conftest import CATALOG_GROUPS, SMALL_GROUPS, cached_analysis, cached_double


def test_d_s3_fusion_matches_exact_verlinde():
    dd = cached_double("S3")
    s_exact = s3_oracle.exact_s_matrix()
    expected = np.array(s3_oracle.exact_fusion(s_exact))
    p = s3_oracle.align(dd.S, dd.T, s_exact, s3_oracle.exact_t_matrix())
    tensor = verlinde_tensor(dd.modular_data())
    assert np.array_equal(tensor[np.ix_(p, p, p)], expected)
    assert expected[0].tolist() == np.eye(8, dtype=int).tolist()


@pytest.mark.parametrize("name", SMALL_GROUPS)
def test_tensor_identities(name):
    a = cached_analysis(name)
    check_tensor_invariants(a.modular, a.fusion.tensor, samples=32)
    n = a.fusion.tensor.astype(np.int64)
    assert np.array_equal(n.sum(axis=2), a.fusion.row_sums)
    assert np.array_equal(n.sum(axis=0), a.fusion.X)
    assert a.fusion.d_B == int((n.sum(axis=(1, 2)) ** 2).sum())
    # dimensions multiply: d_i d_j = sum_k N_ij^k d_k
    d = a.fusion.qdims
    assert np.array_equal(np.einsum("ijk,k->ij", n, d), np.outer(d, d))


@given(st.data())
@settings(max_examples=40, deadline=None)
def test_associativity_on_random_triples(data):
    a = cached_analysis(data.draw(st.sampled_from(["Dhat3", "F21", "binary_tetrahedral"])))
    n = a.fusion.tensor.astype(np.int64)
    r = len(n)
    i, j, k = (data.draw(st.integers(0, r - 1)) for _ in range(3))
    lhs = np.einsum("m,mp->p", n[i, j], n[:, k, :])
    rhs = np.einsum("m,mp->p", n[j, k], n[i, :, :])
    assert np.array_equal(lhs, rhs)


def test_single_fusion_matrix_matches_tensor():
    a = cached_analysis("Dhat4")
    for i in (0, 3, 17, 45):
        assert np.array_equal(fusion_matrix(a.modular, i), a.fusion.tensor[i])


@pytest.mark.parametrize("name", CATALOG_GROUPS)
def test_unit_count_is_center_times_abelianization(name):
    a = cached_analysis(name, full_tensor=False)
    center, _derived, _exp, abelian = structure_invariants(a.group)
    assert len(a.units.unit_indices) == len(center) * abelian


@pytest.mark.parametrize("name", ["Dhat2", "binary_tetrahedral", "Sigma60", "F21", "Sigma36x3"])
def test_indicators_on_classical_block_equal_group_indicators(name):
    a = cached_analysis(name, full_tensor=False)
    nu = np.rint(bantay_indicators(a.modular).real).astype(int)
    block = a.double.block_slice(0)
    assert np.array_equal(nu[block], a.double.tables[0].fs_indicators)


@pytest.mark.parametrize("name", CATALOG_GROUPS)
def test_sum_rule_structure(name):
    a = cached_analysis(name, full_tensor=False)
    rules = a.sum_rules
    conj = a.modular.conjugate_map
    complex_idx = [i for i in range(a.double.rank) if conj[i] != i]
    # rule holds iff every complex column sum vanishes
    assert rules.row_rule_holds == all(rules.vanishing[i] for i in complex_idx)
    # a column sum moved by some unit must vanish
    assert not np.any(rules.unit_explained & ~rules.vanishing)
    x, c = a.fusion.X, np.eye(len(conj), dtype=int)[conj]
    assert np.array_equal(c @ x @ c, x)
    assert sum(v.count for v in rules.type_rows.values()) == a.double.rank


def test_known_values():
    assert cached_analysis("Z6", full_tensor=False).fusion.d_B == 46656
    assert cached_analysis("Sigma168", full_tensor=False).fusion.d_B == 4 * 4126561
    assert cached_analysis("F21", full_tensor=False).sum_rules.row_rule_holds is False


def test_quantum_dimensions_cross_check():
    md = cached_double("Dhat3").modular_data()
    structural = cached_double("Dhat3").quantum_dimensions
    assert np.array_equal(quantum_dimensions(md, structural), structural)
    with pytest.raises(FusionError):
        quantum_dimensions(md, structural + 1)


def test_type_counts_for_quaternion_group():
    _types, counts = type_classification(cached_double("Dhat2").modular_data())
    assert counts == {"complex": 0, "quaternionic": 8, "real": 14}


def test_integrality_failure_is_reported():
    md = cached_double("S3").modular_data()
    s = md.S.copy()
    s[1:, 1:] *= 0.97
    with pytest.raises(FusionError, match="integrality"):
        fusion_data(ModularData(s, md.T, md.C, md.conjugate_map, md.blocks), full_tensor=False)


def test_theorem_violations_raise():
    a = cached_analysis("F21", full_tensor=False)
    wrong_rows = dataclasses.replace(a.fusion, row_sums=np.zeros_like(a.fusion.row_sums))
    with pytest.raises(TheoremViolation):
        sum_rules(a.modular, wrong_rows, a.units)
    with pytest.raises(TheoremViolation, match="unit-group anomaly"):
        units(a.modular, a.fusion, expected_count=5)
    tensor = a.fusion.tensor if a.fusion.tensor is not None else verlinde_tensor(a.modular)
    bad = tensor.copy()
    bad[1, 2, 3] += 1
    with pytest.raises(TheoremViolation):
        check_tensor_invariants(a.modular, bad)
