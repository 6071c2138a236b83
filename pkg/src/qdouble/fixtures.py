"""Reference values shipped with the package and comparison against computed reports."""

from __future__ import annotations

import json
import math
from functools import lru_cache
from importlib import resources
from pathlib import Path

import numpy as np

from .cyclotomic import Cyclotomic, embed
from .double import DrinfeldDouble
from .errors import FixtureMismatch
from .report import ReportBundle, decode_rle

EXACT_TOL = 1e-9


def load_fixtures(path: str | Path | None = None) -> dict:
    if path is None:
        return _builtin()
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise FixtureMismatch(f"cannot read fixtures {path}: {exc}") from exc


@lru_cache(maxsize=1)
def _builtin() -> dict:
    return json.loads(resources.files("qdouble").joinpath("data/fixtures.json").read_text())


def _diff(label: str, expected, actual) -> str:
    return f"{label}: expected {expected!r}, got {actual!r}"


# --- dossiers and table rows ---------------------------------------------------


def compare_dossier(report: ReportBundle, expected: dict) -> list[str]:
    """Mismatches between a report and one dossier entry (only fields present are compared)."""
    out = []
    for key, actual in (
        ("order", report.order),
        ("class_number", report.class_number),
        ("rank", report.rank),
        ("blocks", report.blocks),
    ):
        if key in expected and expected[key] != actual:
            out.append(_diff(key, expected[key], actual))
    if "quantum_dimensions" in expected:
        want = [sorted(b) for b in decode_rle(expected["quantum_dimensions"])]
        got = [sorted(b) for b in decode_rle(report.quantum_dimensions)]
        if want != got:
            bad = [k + 1 for k, (w, g) in enumerate(zip(want, got)) if w != g]
            out.append(
                _diff(f"quantum_dimensions (blocks {bad or 'count'})",
                      expected["quantum_dimensions"], report.quantum_dimensions)
            )
    if "d_B" in expected:
        want = math.prod(int(p) ** e for p, e in expected["d_B"].items())
        if want != report.d_B:
            out.append(_diff("d_B", want, report.d_B))
    if "classical_dimensions" in expected:
        if sorted(expected["classical_dimensions"]) != report.classical_dimensions:
            out.append(_diff("classical_dimensions", expected["classical_dimensions"],
                             report.classical_dimensions))
    return out


def compare_table_row(report: ReportBundle, expected: dict) -> list[str]:
    row = report.table_row
    out = []
    if expected["rank"] != report.rank:
        out.append(_diff("rank", expected["rank"], report.rank))
    if expected["row_rule_before"] != row.row_rule_before:
        out.append(_diff("row-sum rule before doubling", expected["row_rule_before"], row.row_rule_before))
    n_complex = row.types["complex"]["count"]
    want_sat = n_complex if expected["row_rule_complex_satisfying"] == "all" else expected["row_rule_complex_satisfying"]
    if want_sat != row.row_rule_complex_satisfying:
        out.append(_diff("complex irreps satisfying the row-sum rule", want_sat, row.row_rule_complex_satisfying))
    for kind in ("complex", "quaternionic", "real"):
        for field_name, value in expected[kind].items():
            if row.types[kind][field_name] != value:
                out.append(_diff(f"{kind} {field_name}", value, row.types[kind][field_name]))
    if expected["units"] != row.units:
        out.append(_diff("units", expected["units"], row.units))
    return out


def compare_report(report: ReportBundle, fixtures: dict) -> dict[str, list[str]]:
    """Named checks for every fixture section that mentions this group."""
    name = report.name
    checks: dict[str, list[str]] = {}
    if name in fixtures.get("dossiers", {}):
        checks["dossier"] = compare_dossier(report, fixtures["dossiers"][name])
    for section in ("sum_rule_table_su2", "sum_rule_table_su3"):
        if name in fixtures.get(section, {}):
            checks["table"] = compare_table_row(report, fixtures[section][name])
    if name in fixtures.get("center_and_abelianization", {}):
        want = fixtures["center_and_abelianization"][name]
        got = [report.center, report.abelianization]
        checks["center_abelianization"] = [] if want == got else [_diff("|Z(G)|, |G/G'|", want, got)]
    if name in fixtures.get("mckay", {}):
        want = fixtures["mckay"][name]
        checks["mckay"] = [] if want == report.mckay else [_diff("affine type", want, report.mckay)]
    return checks


# --- exact S matrix ---------------------------------------------------------------


def _base(layout: dict) -> Cyclotomic:
    n, k = layout["base_as_root_of_unity"]
    return Cyclotomic.zeta(n, k)


def exact_entry_values(layout: dict) -> dict[str, Cyclotomic]:
    """Exact value of every symbol a1, a2, ... as a polynomial in the base root of unity."""
    xi = _base(layout)
    powers = [xi**k for k in range(6)]
    out = {}
    for label, coeffs in layout["alphas"].items():
        acc = Cyclotomic.rational(0)
        for c, p in zip(coeffs, powers):
            acc = acc + p * c
        out[label] = acc
    return out


def _entry(token: str, values: dict[str, Cyclotomic]) -> Cyclotomic:
    token = token.strip()
    sign = 1
    if token.startswith("-"):
        sign, token = -1, token[1:]
    if token in values:
        return values[token] * sign
    return Cyclotomic.rational(sign * int(token))


def exact_s_matrix(layout: dict) -> tuple[list[list[Cyclotomic]], list[int]]:
    """Assemble multiplier * S from its symmetric block description, exactly."""
    sizes = layout["block_sizes"]
    start = np.concatenate([[0], np.cumsum(sizes)]).astype(int)
    r = int(start[-1])
    values = exact_entry_values(layout)
    mat: list[list[Cyclotomic | None]] = [[None] * r for _ in range(r)]
    for blk in layout["blocks"]:
        i0, j0 = start[blk["I"] - 1], start[blk["J"] - 1]
        scale = blk["scale"]
        for a, row in enumerate(blk["rows"]):
            for b, tok in enumerate(row):
                v = _entry(tok, values) * scale
                mat[i0 + a][j0 + b] = v
                mat[j0 + b][i0 + a] = v
    if any(v is None for row in mat for v in row):
        raise FixtureMismatch("exact S fixture does not cover every block")
    return mat, list(sizes)


def _row_profile(row: np.ndarray) -> tuple:
    return tuple(np.sort(np.round(np.abs(row), 6)))


def _align(computed: np.ndarray, comp_blocks: list[int], expected: np.ndarray, exp_blocks: list[int],
           tol: float) -> list[int] | None:
    """Index map p with computed[p[i], p[j]] == expected[i, j], moving whole class blocks.

    Irreps may be permuted inside a block and blocks of equal size may be exchanged; this
    absorbs the arbitrary ordering of classes and of centralizer irreps.
    """
    r = len(expected)
    exp_block_of = np.repeat(np.arange(len(exp_blocks)), exp_blocks)
    comp_start = np.concatenate([[0], np.cumsum(comp_blocks)]).astype(int)
    exp_sig = [_row_profile(expected[i]) for i in range(r)]
    comp_sig = [_row_profile(computed[i]) for i in range(r)]
    p = [-1] * r
    used = [False] * r
    block_map: dict[int, int] = {}

    def extend(i: int) -> bool:
        if i == r:
            return True
        eb = int(exp_block_of[i])
        if eb in block_map:
            options = [block_map[eb]]
        else:
            taken = set(block_map.values())
            options = [cb for cb, n in enumerate(comp_blocks) if n == exp_blocks[eb] and cb not in taken]
        for cb in options:
            fresh = eb not in block_map
            block_map[eb] = cb
            for k in range(comp_start[cb], comp_start[cb + 1]):
                if used[k] or comp_sig[k] != exp_sig[i]:
                    continue
                if abs(computed[k, k] - expected[i, i]) > tol:
                    continue
                if any(abs(computed[k, p[j]] - expected[i, j]) > tol for j in range(i)):
                    continue
                p[i], used[k] = k, True
                if extend(i + 1):
                    return True
                p[i], used[k] = -1, False
            if fresh:
                del block_map[eb]
        return False

    return p if extend(0) else None


def compare_exact_s(dd: DrinfeldDouble, layout: dict, tol: float = EXACT_TOL) -> tuple[float, list[int]]:
    """Match multiplier * S of ``dd`` to the exact fixture; returns (max deviation, index map)."""
    exact, sizes = exact_s_matrix(layout)
    expected = np.array([[embed(v) for v in row] for row in exact])
    computed = dd.S * layout["multiplier"]
    if computed.shape != expected.shape:
        raise FixtureMismatch(_diff("exact S shape", expected.shape, computed.shape))
    if sorted(dd.blocks) != sorted(sizes):
        raise FixtureMismatch(_diff("exact S block sizes", sizes, dd.blocks))
    p = _align(computed, dd.blocks, expected, sizes, tol)
    if p is None:
        ident = np.abs(computed - expected)
        worst = np.unravel_index(int(ident.argmax()), ident.shape)
        raise FixtureMismatch(
            "exact S: no relabeling of irreps matches the fixture; in the given order the worst "
            f"entry is ({worst[0] + 1}, {worst[1] + 1}): expected {expected[worst]:.6f}, "
            f"got {computed[worst]:.6f}"
        )
    deviation = float(np.abs(computed[np.ix_(p, p)] - expected).max())
    return deviation, p

