import json

import numpy as np
import pytest

from qdouble.double import (
    DrinfeldDouble,
    ModularData,
    enumerate_double_irreps,
    s_matrix,
    t_matrix,
    verify_modular,
)
from qdouble.errors import ModularDataError
from qdouble.groups import catalog, structure_invariants

from . import s3_oracle
from .conftest import CATALOG_GROUPS, cached_double

SMALL_ORDER_GROUPS = [n for n in CATALOG_GROUPS if catalog(n).order <= 48] + ["binary_octahedral"]


@pytest.mark.parametrize("name", sorted(set(SMALL_ORDER_GROUPS)))
def test_coset_formula_matches_full_group_sum(name):
    dd = cached_double(name)
    assert np.abs(dd.S - dd.s_matrix_direct()).max() < 1e-10


@pytest.mark.parametrize("name", CATALOG_GROUPS)
def test_modular_relations(name):
    dd = cached_double(name)
    md = dd.modular_data(verify=True)
    res = md.residuals
    for key in ("symmetry", "unitarity", "s4", "st3"):
        assert res[key] < 1e-9, key
    assert res["t_order"] == structure_invariants(dd.group)[2]


@pytest.mark.parametrize("name", ["Z6", "Dhat3", "F21", "Sigma60"])
def test_labels_and_first_row(name):
    dd = cached_double(name)
    g = dd.group
    assert dd.rank == sum(dd.blocks) == len(enumerate_double_irreps(g))
    for x in dd.irreps:
        cls = g.classes[x.class_index]
        assert x.quantum_dimension == cls.size * dd.tables[x.class_index].degrees[x.centralizer_irrep]
    assert np.abs(dd.S[0] - dd.quantum_dimensions / g.order).max() < 1e-12
    assert int((dd.quantum_dimensions**2).sum()) == g.order**2
    assert [x.global_index for x in dd.irreps] == list(range(1, dd.rank + 1))


def test_exponent_of_sigma36_is_twelve():
    md = cached_double("Sigma36x3").modular_data()
    assert md.residuals["t_order"] == 12


def test_d_s3_matches_exact_oracle():
    dd = cached_double("S3")
    s_exact = s3_oracle.exact_s_matrix()
    t_exact = s3_oracle.exact_t_matrix()
    assert s3_oracle.align(dd.S, dd.T, s_exact, t_exact) is not None
    assert sorted(s3_oracle.quantum_dimensions(s_exact)) == sorted(dd.quantum_dimensions.tolist())


def test_conjugation_map_matches_s_squared():
    dd = cached_double("F21")
    md = dd.modular_data()
    c = np.rint((dd.S @ dd.S).real).astype(int)
    assert np.array_equal(np.argmax(c, axis=1), md.conjugate_map)
    assert not np.array_equal(md.conjugate_map, np.arange(dd.rank))


def test_json_round_trip():
    md = cached_double("Dhat2").modular_data()
    s, t, blocks = ModularData.arrays_from_json(md.to_json())
    assert np.array_equal(s, md.S) and np.array_equal(t, md.T) and blocks == md.blocks
    assert json.loads(md.to_json())["rank"] == 22


def test_functional_wrappers_agree():
    g = catalog("Dhat2")
    dd = DrinfeldDouble(g)
    assert np.array_equal(s_matrix(g), dd.S)
    assert np.array_equal(t_matrix(g), dd.T)


def test_verification_rejects_broken_data():
    md = cached_double("S3").modular_data()
    broken = ModularData(md.S * 1.01, md.T, md.C, md.conjugate_map, md.blocks)
    with pytest.raises(ModularDataError, match="unitarity"):
        verify_modular(broken)
    wrong_t = ModularData(md.S, md.T * np.exp(0.1j), md.C, md.conjugate_map, md.blocks)
    with pytest.raises(ModularDataError):
        verify_modular(wrong_t)
    with pytest.raises(ModularDataError, match="order of T"):
        verify_modular(md, exponent=12)
