"""End-to-end analysis of one group and the summary record written by the CLI."""

from __future__ import annotations

from collections import Counter
from dataclasses import asdict, dataclass, field
from typing import Iterable

from .characters import DEFAULT_SEED, group_sumrule
from .double import DrinfeldDouble, ModularData
from .errors import TheoremViolation
from .fusion import (
    FusionData,
    SumRuleReport,
    UnitsData,
    check_tensor_invariants,
    fusion_data,
    sum_rules,
    units,
)
from .graphs import (
    ConnectivityResult,
    EmbeddingSelection,
    connectivity_conjecture,
    embedding_irreps,
    mckay_check,
)
from .groups import GroupData, catalog, catalog_entry, structure_invariants


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division (fine up to ~1e12)."""
    if n < 1:
        raise ValueError("factorize needs a positive integer")
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def format_factorization(factors: dict[int, int]) -> str:
    if not factors:
        return "1"
    return " * ".join(f"{p}^{e}" if e > 1 else str(p) for p, e in sorted(factors.items()))


# --- run-length notation: "1_4,2;9_12" = four 1s and a 2 in block one, twelve 9s in block two


def encode_rle(blocks: Iterable[Iterable[int]]) -> str:
    parts = []
    for block in blocks:
        counts = sorted(Counter(int(v) for v in block).items())
        parts.append(",".join(f"{v}_{s}" if s > 1 else str(v) for v, s in counts))
    return ";".join(parts)


def decode_rle(text: str) -> list[list[int]]:
    blocks = []
    for part in text.split(";"):
        values: list[int] = []
        for item in part.split(","):
            item = item.strip()
            if not item:
                continue
            value, _, repeat = item.partition("_")
            values.extend([int(value)] * (int(repeat) if repeat else 1))
        blocks.append(values)
    return blocks


@dataclass
class TableRow:
    row_rule_before: bool
    row_rule_after: bool
    row_rule_complex_satisfying: int
    types: dict[str, dict[str, int]]
    units: int


@dataclass
class ReportBundle:
    name: str
    order: int
    class_number: int
    rank: int
    blocks: list[int]
    quantum_dimensions: str
    d_B: int
    d_B_factored: str
    exponent: int
    t_order: int
    center: int
    abelianization: int
    classical_dimensions: list[int]
    embedding_target: str
    embedding_labels: list[str]
    embedding_note: str
    connectivity_components: dict[str, int]
    connectivity_holds: bool
    mckay: str | None
    table_row: TableRow
    residuals: dict[str, float] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return asdict(self)

    def csv_rows(self) -> list[tuple[str, str]]:
        flat: list[tuple[str, str]] = []
        for key, value in self.as_dict().items():
            if key == "table_row":
                row = value
                for k in ("row_rule_before", "row_rule_after", "row_rule_complex_satisfying", "units"):
                    flat.append((k, str(row[k])))
                for kind, counts in row["types"].items():
                    for k, v in counts.items():
                        flat.append((f"{kind}_{k}", str(v)))
            elif isinstance(value, (list, dict)):
                flat.append((key, repr(value)))
            else:
                flat.append((key, str(value)))
        return flat


@dataclass
class Analysis:
    """All intermediate objects of one run, kept for file output and tests."""

    group: GroupData
    double: DrinfeldDouble
    modular: ModularData
    fusion: FusionData
    units: UnitsData
    sum_rules: SumRuleReport
    embedding: EmbeddingSelection
    connectivity: ConnectivityResult | None
    report: ReportBundle


def analyze(
    name: str,
    seed: int = DEFAULT_SEED,
    full_tensor: bool = True,
    group: GroupData | None = None,
    target: str | None = None,
) -> Analysis:
    """Run every computation on one group; any broken invariant raises."""
    g = group if group is not None else catalog(name)
    if target is None:
        target = catalog_entry(name).target if group is None else "SU3"
    dd = DrinfeldDouble(g, seed=seed)
    md = dd.modular_data(verify=True)
    center, _derived, exponent, abelian = structure_invariants(g)
    fd = fusion_data(md, full_tensor=full_tensor, structural_qdims=dd.quantum_dimensions)
    if fd.tensor is not None:
        check_tensor_invariants(md, fd.tensor)
    unit_data = units(md, fd, expected_count=len(center) * abelian)
    rules = sum_rules(md, fd, unit_data)

    classical = dd.tables[0]
    row_rule_before, _ = group_sumrule(classical)
    selection = embedding_irreps(classical, target)
    connectivity = connectivity_conjecture(dd, md, fd, selection) if selection.candidates else None
    if connectivity is not None and not connectivity.holds:
        raise TheoremViolation(
            f"connectivity failure for {name}: components {connectivity.component_counts}"
        )
    mckay = None
    if target == "SU2" and selection.candidates and g.order > 1:
        mckay = mckay_check(dd, md, fd, selection)

    n_complex = rules.type_rows["complex"].count
    row = TableRow(
        row_rule_before=bool(row_rule_before),
        row_rule_after=rules.row_rule_complex_satisfying == n_complex,
        row_rule_complex_satisfying=rules.row_rule_complex_satisfying,
        types={k: asdict(v) for k, v in rules.type_rows.items()},
        units=len(unit_data.unit_indices),
    )
    qd_blocks = [dd.quantum_dimensions[dd.block_slice(k)] for k in range(g.class_number)]
    bundle = ReportBundle(
        name=name,
        order=g.order,
        class_number=g.class_number,
        rank=dd.rank,
        blocks=list(dd.blocks),
        quantum_dimensions=encode_rle(qd_blocks),
        d_B=fd.d_B,
        d_B_factored=format_factorization(factorize(fd.d_B)),
        exponent=exponent,
        t_order=int(md.residuals["t_order"]),
        center=len(center),
        abelianization=abelian,
        classical_dimensions=sorted(int(d) for d in classical.degrees),
        embedding_target=target,
        embedding_labels=selection.labels(),
        embedding_note=selection.note,
        connectivity_components=dict(connectivity.component_counts) if connectivity else {},
        connectivity_holds=bool(connectivity.holds) if connectivity else False,
        mckay=mckay,
        table_row=row,
        residuals={k: float(v) for k, v in md.residuals.items()},
    )
    return Analysis(g, dd, md, fd, unit_data, rules, selection, connectivity, bundle)
