import copy

import numpy as np
import pytest

from qdouble.cyclotomic import embed
from qdouble.errors import FixtureMismatch
from qdouble.fixtures import (
    compare_exact_s,
    compare_report,
    exact_entry_values,
    exact_s_matrix,
    load_fixtures,
)

from .conftest import cached_analysis, cached_double


def test_exact_matrix_is_symmetric_and_unitary(fixtures):
    layout = fixtures["exact_s_matrix"]
    exact, sizes = exact_s_matrix(layout)
    assert len(exact) == sum(sizes) == 32
    assert all(exact[i][j] == exact[j][i] for i in range(32) for j in range(32))
    s = np.array([[embed(v) for v in row] for row in exact]) / layout["multiplier"]
    assert np.abs(s @ s.conj().T - np.eye(32)).max() < 1e-12


def test_symbols_are_real_cyclotomic_numbers(fixtures):
    values = exact_entry_values(fixtures["exact_s_matrix"])
    assert len(values) == 11
    for v in values.values():
        assert abs(embed(v).imag) < 1e-12 or abs(embed(v).imag) > 1e-3


def test_order_three_block_of_sigma168_double(fixtures):
    layout = fixtures["exact_s_matrix"]
    exact, _ = exact_s_matrix(layout)
    # rows/cols 12..14 hold the block for the order-3 class
    block = [[exact[i][j] for j in range(11, 14)] for i in range(11, 14)]
    assert block == [[112, -56, -56], [-56, -56, 112], [-56, 112, -56]]
    deviation, perm = compare_exact_s(cached_double("Sigma168"), layout)
    assert deviation < 1e-9
    assert sorted(perm) == list(range(32))


def test_corrupted_exact_matrix_is_rejected(fixtures):
    layout = copy.deepcopy(fixtures["exact_s_matrix"])
    layout["alphas"]["a5"] = [0, 1, 1, 0, 0, 1]
    with pytest.raises(FixtureMismatch, match="no relabeling"):
        compare_exact_s(cached_double("Sigma168"), layout)


def test_report_comparison_names_each_difference(fixtures):
    report = cached_analysis("Z6", full_tensor=False).report
    assert all(not v for v in compare_report(report, fixtures).values())
    broken = copy.deepcopy(fixtures)
    broken["dossiers"]["Z6"]["d_B"] = {"2": 5, "3": 6}
    broken["sum_rule_table_su2"]["Z6"]["units"] = 35
    problems = compare_report(report, broken)
    assert problems["dossier"] == ["d_B: expected 23328, got 46656"]
    assert problems["table"] == ["units: expected 35, got 36"]


def test_unreadable_fixture_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(FixtureMismatch):
        load_fixtures(path)
