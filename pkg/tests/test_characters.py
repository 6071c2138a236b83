import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdouble.characters import (
    CharacterTable,
    character_table,
    class_structure_constants,
    fs_indicator,
    group_sumrule,
    group_tensor_multiplicities,
    kernel,
)
from qdouble.errors import CharacterError
from qdouble.groups import catalog

from .conftest import CATALOG_GROUPS

TOL = 1e-9


@pytest.mark.parametrize("name", CATALOG_GROUPS)
def test_orthogonality_and_degrees(name):
    t = character_table(catalog(name))
    g = t.group
    gram = (t.values * t.class_sizes) @ t.values.conj().T / g.order
    assert np.abs(gram - np.eye(t.size)).max() < TOL
    cols = t.values.conj().T @ t.values
    assert np.abs(cols - np.diag(g.order / t.class_sizes)).max() < 1e-8
    assert int((t.degrees**2).sum()) == g.order
    assert np.all(np.diff(t.degrees) >= 0)
    assert np.allclose(t.values[0], 1)


def test_symmetric_group_on_three_points():
    t = character_table(catalog("S3"))
    # classes sorted as identity, transpositions, 3-cycles
    expected = np.array([[1, 1, 1], [1, -1, 1], [2, 0, -1]])
    assert np.abs(t.values - expected).max() < TOL
    assert t.fs_indicators.tolist() == [1, 1, 1]


@pytest.mark.parametrize("name", ["Dhat2", "Dhat3", "binary_tetrahedral", "Sigma60", "Sigma36x3", "F21"])
def test_indicator_matches_element_sum(name):
    # independent route: sum chi(g^2) over all elements, squaring through the table
    t = character_table(catalog(name))
    g = t.group
    squares = g.class_of[g.mult[np.arange(g.order), np.arange(g.order)]]
    direct = t.values[:, squares].sum(axis=1) / g.order
    assert np.abs(direct - t.fs_indicators).max() < TOL


def test_quaternion_group_has_quaternionic_faithful_irrep():
    t = character_table(catalog("Dhat2"))
    two = [r for r in range(t.size) if t.degrees[r] == 2]
    assert len(two) == 1 and fs_indicator(t, two[0]) == -1 and t.is_faithful(two[0])


def test_kernels():
    t = character_table(catalog("S3"))
    assert len(kernel(t, 0)) == 6
    assert len(kernel(t, 1)) == 3
    assert kernel(t, 2) == (0,)


def test_class_structure_constants_count_products():
    g = catalog("Dhat3")
    a = class_structure_constants(g)
    # sum over i, j of a[i, j, k] counts all pairs multiplying to z_k: |G|
    assert np.all(a.sum(axis=(0, 1)) == g.order)
    assert np.array_equal(a[0], np.eye(g.class_number, dtype=int))


def test_tensor_product_of_s3_standard_rep():
    n = group_tensor_multiplicities(character_table(catalog("S3")))
    assert n[2, 2].tolist() == [1, 1, 1]
    assert n[1, 1].tolist() == [1, 0, 0]


@pytest.mark.parametrize(
    "name,holds",
    [("F21", False), ("Sigma72x3", False), ("Sigma360x3", False), ("Sigma60", True), ("Sigma168", True),
     ("Sigma36x3", True), ("Delta3_2", True), ("binary_icosahedral", True), ("Z5", True)],
)
def test_group_row_sum_rule(name, holds):
    ok, bad = group_sumrule(character_table(catalog(name)))
    assert ok is holds
    assert (not bad) is holds


@given(st.integers(0, 2**32 - 1), st.sampled_from(["Dhat4", "F21", "binary_tetrahedral", "Delta3_2"]))
@settings(max_examples=20, deadline=None)
def test_table_independent_of_seed(seed, name):
    g = catalog(name)
    a = character_table(g)
    b = character_table(g, seed=seed)
    assert np.abs(a.values - b.values).max() < 1e-8
    assert np.array_equal(a.fs_indicators, b.fs_indicators)


def test_conjugate_irrep_is_involution():
    t = character_table(catalog("F21"))
    bar = t.conjugate_irrep()
    assert np.array_equal(bar[bar], np.arange(t.size))
    assert np.abs(t.values[bar] - t.values.conj()).max() < TOL


def test_csv_export_has_one_row_per_irrep():
    text = character_table(catalog("S3")).to_csv()
    lines = text.strip().splitlines()
    assert lines[0].startswith("irrep,class1") and len(lines) == 4


def test_errors():
    t = character_table(catalog("S3"))
    with pytest.raises(CharacterError):
        fs_indicator(t, 7)
    broken = CharacterTable(t.group, t.degrees, t.values * 1.5, t.inverse_class_map, t.power_maps,
                            t.fs_indicators, t.seed)
    with pytest.raises(CharacterError, match="non-integral"):
        group_tensor_multiplicities(broken)
