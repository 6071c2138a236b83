"""Complex character tables from the class algebra, with FS indicators and kernels."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

import numpy as np

from .errors import CharacterError
from .groups import GroupData, structure_invariants

DEFAULT_SEED = 0xD0B1E
CLUSTER_TOL = 1e-6
ORTHO_TOL = 1e-8
MAX_RESEEDS = 8


@dataclass
class CharacterTable:
    """``values[r, c]`` is the character of irrep r on class c."""

    group: GroupData
    degrees: np.ndarray
    values: np.ndarray
    inverse_class_map: np.ndarray
    power_maps: dict[int, np.ndarray]
    fs_indicators: np.ndarray
    seed: int
    _kernels: list | None = field(default=None, repr=False)

    @property
    def size(self) -> int:
        return len(self.degrees)

    @property
    def class_sizes(self) -> np.ndarray:
        return self.group.class_sizes

    def conjugate_irrep(self) -> np.ndarray:
        """Index map r -> r-bar (complex conjugate character)."""
        return _match_rows(self.values, np.conj(self.values))

    def kernel_classes(self, r: int) -> tuple[int, ...]:
        return tuple(int(c) for c in np.flatnonzero(np.abs(self.values[r] - self.degrees[r]) < ORTHO_TOL))

    def is_faithful(self, r: int) -> bool:
        return self.kernel_classes(r) == (0,)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["irrep"] + [f"class{c + 1}" for c in range(self.size)])
        for r in range(self.size):
            writer.writerow([r + 1] + [_format_complex(v) for v in self.values[r]])
        return buf.getvalue()


def _format_complex(z: complex) -> str:
    re_, im = float(np.real(z)), float(np.imag(z))
    re_ = 0.0 if abs(re_) < 1e-12 else re_
    im = 0.0 if abs(im) < 1e-12 else im
    return f"{re_:.12g}{'+' if im >= 0 else '-'}{abs(im):.12g}i"


def _match_rows(values: np.ndarray, target: np.ndarray) -> np.ndarray:
    dist = np.abs(values[:, None, :] - target[None, :, :]).max(axis=2)
    perm = dist.argmin(axis=0)
    if np.sort(perm).tolist() != list(range(len(perm))) or dist[perm, np.arange(len(perm))].max() > 1e-6:
        raise CharacterError("character recovery failed: rows do not match under conjugation")
    return perm


def class_structure_constants(g: GroupData) -> np.ndarray:
    """``a[i, j, k]`` = #{(x, y) in C_i x C_j : xy = z_k} for a fixed z_k in C_k."""
    n_cls = g.class_number
    a = np.zeros((n_cls, n_cls, n_cls), dtype=np.int64)
    cls = g.class_of
    for k, c in enumerate(g.classes):
        partner = cls[g.mult[g.inverse, c.rep_index]]  # class of x^-1 z for each x
        np.add.at(a[:, :, k], (cls, partner), 1)
    return a


def _power_maps(g: GroupData) -> dict[int, np.ndarray]:
    exponent = structure_invariants(g)[2]
    reps = np.array([c.rep_index for c in g.classes])
    return {k: g.class_of[g.power(reps, k)].astype(np.int64) for k in range(max(exponent, 2) + 1)}


def _central_characters(a: np.ndarray, seed: int) -> np.ndarray:
    """Rows are central characters omega_r(C_k), normalized to 1 at the identity class."""
    n_cls = a.shape[0]
    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal(n_cls)
    combo = np.einsum("i,ijk->jk", coeffs, a.astype(float))
    eigvals, vecs = np.linalg.eig(combo)
    gaps = np.abs(eigvals[:, None] - eigvals[None, :]) + np.eye(n_cls) * 1e9
    if n_cls > 1 and gaps.min() < CLUSTER_TOL:
        raise CharacterError("degenerate spectrum: reseed")
    if np.any(np.abs(vecs[0]) < 1e-10):
        raise CharacterError("degenerate spectrum: reseed")
    omega = (vecs / vecs[0]).T
    # every eigenvector must be common to all class matrices
    for i in range(n_cls):
        img = omega @ a[i].T.astype(float)
        if np.abs(img - omega[:, [i]] * omega).max() > CLUSTER_TOL * max(1.0, np.abs(omega).max()):
            raise CharacterError("degenerate spectrum: reseed")
    return omega


def _sort_key(degree: int, kernel_size: int, fs: int, row: np.ndarray):
    fs_rank = {1: 0, -1: 1, 0: 2}[fs]
    rounded = np.round(row, 8) + 0.0
    lex = tuple(v for z in rounded for v in (-z.real, -z.imag))
    return (degree, -kernel_size, fs_rank, lex)


def character_table(g: GroupData, seed: int = DEFAULT_SEED) -> CharacterTable:
    a = class_structure_constants(g)
    sizes = g.class_sizes.astype(float)
    last_error: Exception | None = None
    for attempt in range(MAX_RESEEDS):
        try:
            omega = _central_characters(a, seed + attempt)
            table = _finish_table(g, omega, sizes, seed + attempt)
            return table
        except CharacterError as exc:
            last_error = exc
    raise CharacterError(f"character recovery failed after {MAX_RESEEDS} seeds: {last_error}")


def _finish_table(g: GroupData, omega: np.ndarray, sizes: np.ndarray, seed: int) -> CharacterTable:
    order = g.order
    norm = (np.abs(omega) ** 2 / sizes).sum(axis=1)
    deg_float = np.sqrt(order / norm)
    degrees = np.rint(deg_float).astype(np.int64)
    if np.abs(deg_float - degrees).max() > 1e-6:
        raise CharacterError("character recovery failed: non-integral degree")
    if int((degrees**2).sum()) != order:
        raise CharacterError("character recovery failed: degrees do not square-sum to |G|")
    values = degrees[:, None] * omega / sizes[None, :]
    gram = (values * sizes) @ values.conj().T
    if np.abs(gram - order * np.eye(len(degrees))).max() > ORTHO_TOL * order:
        raise CharacterError("character recovery failed: orthogonality")

    power_maps = _power_maps(g)
    inverse_class_map = g.class_of[g.inverse[[c.rep_index for c in g.classes]]].astype(np.int64)
    fs_raw = (values[:, power_maps[2]] * sizes).sum(axis=1) / order
    fs = np.rint(fs_raw.real).astype(np.int64)
    if np.abs(fs_raw - fs).max() > ORTHO_TOL or not set(fs.tolist()) <= {-1, 0, 1}:
        raise CharacterError("indicator anomaly")
    kernel_sizes = [
        int(sizes[np.abs(values[r] - degrees[r]) < ORTHO_TOL].sum()) for r in range(len(degrees))
    ]
    perm = sorted(
        range(len(degrees)),
        key=lambda r: _sort_key(int(degrees[r]), kernel_sizes[r], int(fs[r]), values[r]),
    )
    return CharacterTable(
        group=g,
        degrees=degrees[perm],
        values=values[perm],
        inverse_class_map=inverse_class_map,
        power_maps=power_maps,
        fs_indicators=fs[perm],
        seed=seed,
    )


def fs_indicator(t: CharacterTable, r: int) -> int:
    if not 0 <= r < t.size:
        raise CharacterError(f"irrep index {r} out of range")
    return int(t.fs_indicators[r])


def kernel(t: CharacterTable, r: int) -> tuple[int, ...]:
    """Element indices of the kernel of irrep r."""
    members = [m for c in t.kernel_classes(r) for m in t.group.classes[c].members]
    return tuple(sorted(members))


def group_tensor_multiplicities(t: CharacterTable) -> np.ndarray:
    """``N[r, s, u]`` = multiplicity of irrep u in r (x) s."""
    weights = t.class_sizes / t.group.order
    chi = t.values
    raw = np.einsum("c,rc,sc,uc->rsu", weights, chi, chi, chi.conj())
    n = np.rint(raw.real).astype(np.int64)
    if np.abs(raw - n).max() > 1e-6 or n.min() < 0:
        raise CharacterError("non-integral multiplicity")
    return n


def group_sumrule(t: CharacterTable, tensor: np.ndarray | None = None) -> tuple[bool, list[int]]:
    """Check sum_k N_ij^k == sum_k N_{i-bar j}^k; returns (ok, violating i)."""
    n = group_tensor_multiplicities(t) if tensor is None else tensor
    row_sums = n.sum(axis=2)
    bar = t.conjugate_irrep()
    bad = [i for i in range(t.size) if not np.array_equal(row_sums[i], row_sums[bar[i]])]
    return (not bad, bad)
