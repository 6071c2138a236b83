"""Fusion rules of a modular category from its S matrix, plus units and sum rules."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .double import ModularData
from .errors import FusionError, TheoremViolation

INTEGRALITY_TOL = 1e-6
VANISH_TOL = 1e-8
_CHUNK_ELEMENTS = 4_000_000  # complex entries per Verlinde work chunk

REAL, COMPLEX, QUATERNIONIC = "real", "complex", "quaternionic"
TYPES = (COMPLEX, QUATERNIONIC, REAL)


def _round_checked(values: np.ndarray, what: str) -> np.ndarray:
    rounded = np.rint(values.real)
    residual = np.abs(values - rounded).max() if values.size else 0.0
    if residual > INTEGRALITY_TOL:
        raise FusionError(f"Verlinde integrality failure in {what}: residual {residual:.3g}")
    if values.size and rounded.min() < 0:
        raise FusionError(f"Verlinde integrality failure in {what}: negative entry")
    return rounded.astype(np.int64)


def eigenvalue_table(md: ModularData) -> np.ndarray:
    """``phi[i, l] = S[i, l] / S[0, l]``."""
    return md.S / md.S[0][None, :]


def quantum_dimensions(md: ModularData, structural: np.ndarray | None = None) -> np.ndarray:
    ratio = md.S[:, 0] / md.S[0, 0]
    mu = np.rint(ratio.real).astype(np.int64)
    if np.abs(ratio - mu).max() > 1e-8:
        raise FusionError("qdim inconsistency: non-integral quantum dimension")
    if structural is not None and not np.array_equal(mu, np.asarray(structural)):
        raise FusionError("qdim inconsistency: Verlinde and structural values differ")
    return mu


def fusion_matrix(md: ModularData, i: int) -> np.ndarray:
    """``N_i[j, k]`` = multiplicity of k in i (x) j."""
    s = md.S
    phi_i = s[i] / s[0]
    return _round_checked((s * phi_i[None, :]) @ s.conj().T, f"N_{i + 1}")


def verlinde_tensor(md: ModularData) -> np.ndarray:
    """Full tensor ``N[i, j, k]``, stored as int16 (int32 if values are large)."""
    s = md.S
    r = len(s)
    phi = eigenvalue_table(md)
    phi_re, phi_im = np.ascontiguousarray(phi.real), np.ascontiguousarray(phi.imag)
    s_conj = s.conj()
    out = np.empty((r, r, r), dtype=np.int32)
    step = max(1, _CHUNK_ELEMENTS // (r * r))
    worst = 0.0
    for j0 in range(0, r, step):
        j1 = min(r, j0 + step)
        # w[l, j, k] = S[j, l] * conj(S[k, l])
        w = s[j0:j1].T[:, :, None] * s_conj.T[:, None, :]
        w = w.reshape(r, -1)
        # contiguous copies keep matmul on the BLAS path
        block = phi_re @ np.ascontiguousarray(w.real) - phi_im @ np.ascontiguousarray(w.imag)
        rounded = np.rint(block)
        worst = max(worst, float(np.abs(block - rounded).max()))
        out[:, j0:j1, :] = rounded.reshape(r, j1 - j0, r)
    if worst > INTEGRALITY_TOL:
        raise FusionError(f"Verlinde integrality failure: residual {worst:.3g}")
    if out.min() < 0:
        raise FusionError("Verlinde integrality failure: negative entry")
    if out.max() <= np.iinfo(np.int16).max:
        return out.astype(np.int16)
    return out


@dataclass
class FusionData:
    qdims: np.ndarray
    phi: np.ndarray
    row_sums: np.ndarray  # R[i, j] = sum_k N_ij^k
    X: np.ndarray  # X[j, k] = sum_i N_ij^k
    d_B: int
    global_dimension: int
    tensor: np.ndarray | None = None

    @property
    def rank(self) -> int:
        return len(self.qdims)

    def matrix(self, md: ModularData, i: int) -> np.ndarray:
        if self.tensor is not None:
            return self.tensor[i].astype(np.int64)
        return fusion_matrix(md, i)

    def sparse_triples(self):
        if self.tensor is None:
            raise FusionError("full tensor not computed (aggregates-only mode)")
        idx = np.argwhere(self.tensor > 0)
        for m, n, p in idx:
            yield int(m), int(n), int(p), int(self.tensor[m, n, p])


def fusion_data(md: ModularData, full_tensor: bool = True, structural_qdims=None) -> FusionData:
    s = md.S
    qdims = quantum_dimensions(md, structural_qdims)
    phi = eigenvalue_table(md)
    sigma = s.sum(axis=0)
    row_sums = _round_checked((phi * np.conj(sigma)[None, :]) @ s.T, "row sums")
    x = _round_checked((s * (sigma / s[0])[None, :]) @ s.conj().T, "path matrix")
    d_b = sum(int(v) ** 2 for v in row_sums.sum(axis=1))
    tensor = verlinde_tensor(md) if full_tensor else None
    if tensor is not None:
        if not np.array_equal(tensor.sum(axis=2), row_sums):
            raise FusionError("tensor and aggregate row sums disagree")
        if not np.array_equal(tensor.sum(axis=0), x):
            raise FusionError("tensor and aggregate path matrix disagree")
    return FusionData(
        qdims=qdims,
        phi=phi,
        row_sums=row_sums,
        X=x,
        d_B=d_b,
        global_dimension=int(sum(int(q) ** 2 for q in qdims)),
        tensor=tensor,
    )


def d_B(fd: FusionData) -> int:
    return fd.d_B


# --- units -----------------------------------------------------------------


@dataclass
class UnitsData:
    unit_indices: list[int]
    permutations: dict[int, np.ndarray]
    group_order_check: int | None = None


def units(md: ModularData, fd: FusionData, expected_count: int | None = None) -> UnitsData:
    """Irreps of quantum dimension 1 whose fusion matrix is a permutation."""
    found, perms = [], {}
    for u in np.flatnonzero(fd.qdims == 1):
        n_u = fd.matrix(md, int(u))
        if np.all(n_u.sum(axis=1) == 1) and np.all(n_u.sum(axis=0) == 1) and n_u.max() == 1:
            found.append(int(u))
            perms[int(u)] = n_u.argmax(axis=1)
    if expected_count is not None and len(found) != expected_count:
        raise TheoremViolation(
            f"unit-group anomaly: {len(found)} units, expected |Z(G)|*|G/G'| = {expected_count}"
        )
    for u in found:
        if abs(fd.phi[u, 0] - 1) > 1e-9 or np.abs(np.abs(fd.phi[u]) - 1).max() > 1e-9:
            raise TheoremViolation(f"unit {u + 1} has eigenvalues off the unit circle")
    # closure under fusion: J_u J_v is again a unit permutation
    as_images = {tuple(p.tolist()) for p in perms.values()}
    for p in perms.values():
        for q in perms.values():
            if tuple(p[q].tolist()) not in as_images:
                raise TheoremViolation("unit-group anomaly: units not closed under fusion")
    return UnitsData(found, perms, expected_count)


# --- types -----------------------------------------------------------------


def bantay_indicators(md: ModularData) -> np.ndarray:
    """nu_k = sum_{i,j} N_ij^k S_0i S_0j (T_i / T_j)^2, via the Verlinde formula."""
    s, t = md.S, md.T
    a = s[0] * t**2
    b = s[0] * t ** (-2)
    sa, sb = s @ a, s @ b
    return s.conj() @ (sa * sb / s[0])


def type_classification(md: ModularData) -> tuple[list[str], dict[str, int]]:
    nu = bantay_indicators(md)
    rounded = np.rint(nu.real).astype(np.int64)
    if np.abs(nu - rounded).max() > INTEGRALITY_TOL or not set(rounded.tolist()) <= {-1, 0, 1}:
        raise FusionError("indicator failure: FS indicator not in {-1, 0, 1}")
    conj = np.asarray(md.conjugate_map)
    types = []
    for i, v in enumerate(rounded):
        self_dual = conj[i] == i
        if (v == 0) == self_dual:
            raise FusionError(f"indicator failure: irrep {i + 1} has nu={v} but self-dual={self_dual}")
        types.append(COMPLEX if v == 0 else REAL if v == 1 else QUATERNIONIC)
    counts = {kind: types.count(kind) for kind in TYPES}
    return types, counts


# --- sum rules -------------------------------------------------------------


@dataclass
class TypeRow:
    count: int
    vanishing: int
    accidental: int


@dataclass
class SumRuleReport:
    sigma: np.ndarray
    vanishing: np.ndarray
    unit_explained: np.ndarray
    accidental: np.ndarray
    types: list[str]
    type_rows: dict[str, TypeRow]
    row_rule_holds: bool
    row_rule_violators: list[int]  # 0-based i with sum_k N_ij^k != sum_k N_{i-bar j}^k for some j
    row_rule_complex_satisfying: int
    x_rule_holds: bool
    x_rule_two_sided_holds: bool
    checks: dict[str, bool] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "row_rule_holds": self.row_rule_holds,
            "row_rule_complex_satisfying": self.row_rule_complex_satisfying,
            "row_rule_violators": [i + 1 for i in self.row_rule_violators],
            "x_rule_holds": self.x_rule_holds,
            "x_rule_two_sided_holds": self.x_rule_two_sided_holds,
            "types": {
                k: {"count": v.count, "vanishing": v.vanishing, "accidental": v.accidental}
                for k, v in self.type_rows.items()
            },
            "vanishing_sigma": [int(i) + 1 for i in np.flatnonzero(self.vanishing)],
            "accidental": [int(i) + 1 for i in np.flatnonzero(self.accidental)],
        }


def sum_rules(md: ModularData, fd: FusionData, unit_data: UnitsData) -> SumRuleReport:
    s = md.S
    r = len(s)
    conj = np.asarray(md.conjugate_map)
    sigma = s.sum(axis=0)
    vanishing = np.abs(sigma) < VANISH_TOL

    unit_explained = np.zeros(r, dtype=bool)
    for u in unit_data.unit_indices:
        unit_explained |= np.abs(fd.phi[u] - 1) > VANISH_TOL
    if np.any(unit_explained & ~vanishing):
        bad = np.flatnonzero(unit_explained & ~vanishing) + 1
        raise TheoremViolation(f"unit-forced vanishing fails for irreps {bad.tolist()}")
    accidental = vanishing & ~unit_explained

    rows = fd.row_sums
    violators = [i for i in range(r) if not np.array_equal(rows[i], rows[conj[i]])]
    row_rule = not violators
    complex_idx = [i for i in range(r) if conj[i] != i]
    satisfying = sum(1 for i in complex_idx if i not in set(violators))

    x = fd.X
    c = np.zeros((r, r), dtype=np.int64)
    c[np.arange(r), conj] = 1
    xc, cx = x @ c, c @ x
    x_rule = bool(np.array_equal(x, xc))
    x_two_sided = x_rule and bool(np.array_equal(x, cx))
    if not np.array_equal(c @ x @ c, x):
        raise TheoremViolation("C X C != X")

    complex_vanish = all(vanishing[j] for j in complex_idx)
    if row_rule != complex_vanish:
        raise TheoremViolation("sum-rule equivalence violated: row-sum rule vs vanishing of complex sums")
    if row_rule != x_rule:
        raise TheoremViolation("row-sum and column-sum forms of the rule disagree")

    types, _ = type_classification(md)
    type_rows = {}
    for kind in TYPES:
        idx = [i for i in range(r) if types[i] == kind]
        type_rows[kind] = TypeRow(
            count=len(idx),
            vanishing=int(sum(vanishing[i] for i in idx)),
            accidental=int(sum(accidental[i] for i in idx)),
        )
    return SumRuleReport(
        sigma=sigma,
        vanishing=vanishing,
        unit_explained=unit_explained,
        accidental=accidental,
        types=types,
        type_rows=type_rows,
        row_rule_holds=row_rule,
        row_rule_violators=violators,
        row_rule_complex_satisfying=satisfying,
        x_rule_holds=x_rule,
        x_rule_two_sided_holds=x_two_sided,
        checks={"unit_forced_vanishing": True, "row_rule_iff_complex_vanishing": True},
    )


def check_tensor_invariants(md: ModularData, tensor: np.ndarray, samples: int = 64, seed: int = 0) -> None:
    """Exact identities of a fusion tensor; raises TheoremViolation on failure."""
    r = tensor.shape[0]
    conj = np.asarray(md.conjugate_map)
    n = tensor
    if not np.array_equal(n[0], np.eye(r, dtype=n.dtype)):
        raise TheoremViolation("N_1 is not the identity")
    for i in range(r):
        if not np.array_equal(n[i], n[:, i, :]):
            raise TheoremViolation("fusion is not commutative")
        if not np.array_equal(n[conj[i]], n[i].T):
            raise TheoremViolation("N_{i-bar} != N_i^T")
        if not np.array_equal(n[conj[i]][np.ix_(conj, conj)], n[i]):
            raise TheoremViolation("fusion not invariant under simultaneous conjugation")
    rng = np.random.default_rng(seed)
    pairs = rng.integers(0, r, size=(samples, 2))
    for i, j in pairs:
        ni, nj = n[i].astype(np.int64), n[j].astype(np.int64)
        lhs = ni @ nj
        support = np.flatnonzero(n[i, j])
        rhs = np.einsum("k,kab->ab", n[i, j, support].astype(np.int64), n[support].astype(np.int64))
        if not np.array_equal(lhs, rhs):
            raise TheoremViolation(f"associativity fails for ({i + 1}, {j + 1})")
