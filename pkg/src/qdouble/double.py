"""Irreps and modular data (S, T, C) of the Drinfeld double of a finite group."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .characters import DEFAULT_SEED, CharacterTable, character_table
from .errors import ModularDataError
from .groups import GroupData, coset_representative_indices, structure_invariants, subgroup

MODULAR_TOL = 1e-9


@dataclass(frozen=True)
class DoubleIrrep:
    class_index: int
    centralizer_irrep: int
    quantum_dimension: int
    global_index: int  # 1-based


@dataclass
class ModularData:
    S: np.ndarray
    T: np.ndarray
    C: np.ndarray
    conjugate_map: np.ndarray
    blocks: list[int]
    residuals: dict[str, float] = field(default_factory=dict)

    @property
    def rank(self) -> int:
        return len(self.T)

    def to_json(self) -> str:
        return json.dumps(
            {
                "rank": self.rank,
                "blocks": list(self.blocks),
                "S": [[[float(z.real), float(z.imag)] for z in row] for row in self.S],
                "T": [[float(z.real), float(z.imag)] for z in self.T],
            }
        )

    @staticmethod
    def arrays_from_json(text: str) -> tuple[np.ndarray, np.ndarray, list[int]]:
        data = json.loads(text)
        s = np.array(data["S"], dtype=float)
        t = np.array(data["T"], dtype=float)
        return s[..., 0] + 1j * s[..., 1], t[:, 0] + 1j * t[:, 1], data["blocks"]


class DrinfeldDouble:
    """Everything about D(G) that only needs G: centralizer tables, labels, S and T."""

    def __init__(self, group: GroupData, seed: int = DEFAULT_SEED):
        self.group = group
        self.seed = seed
        self.centralizers: list[GroupData] = []
        self.tables: list[CharacterTable] = []
        self.class_lookup: list[np.ndarray] = []  # global element -> centralizer class, -1 outside
        for k, cls in enumerate(group.classes):
            h = subgroup(group, cls.centralizer, name=f"{group.name}:C{k + 1}")
            table = character_table(h, seed=seed)
            lookup = np.full(group.order, -1, dtype=np.int64)
            if h is group:
                lookup[:] = group.class_of
            else:
                lookup[h.parent_index] = h.class_of
            self.centralizers.append(h)
            self.tables.append(table)
            self.class_lookup.append(lookup)
        self.irreps: list[DoubleIrrep] = []
        self.block_start: list[int] = []
        for k, cls in enumerate(group.classes):
            self.block_start.append(len(self.irreps))
            for s, d in enumerate(self.tables[k].degrees):
                self.irreps.append(
                    DoubleIrrep(k, s, int(cls.size * d), len(self.irreps) + 1)
                )

    @property
    def rank(self) -> int:
        return len(self.irreps)

    @property
    def blocks(self) -> list[int]:
        return [t.size for t in self.tables]

    @property
    def quantum_dimensions(self) -> np.ndarray:
        return np.array([x.quantum_dimension for x in self.irreps], dtype=np.int64)

    def block_slice(self, k: int) -> slice:
        return slice(self.block_start[k], self.block_start[k] + self.tables[k].size)

    # --- T ---------------------------------------------------------------

    @cached_property
    def T(self) -> np.ndarray:
        out = np.empty(self.rank, dtype=complex)
        for k, cls in enumerate(self.group.classes):
            t = self.tables[k]
            col = self.class_lookup[k][cls.rep_index]
            out[self.block_slice(k)] = t.values[:, col] / t.degrees
        if np.abs(np.abs(out) - 1).max() > MODULAR_TOL:
            raise ModularDataError("non-unitary T")
        return out

    # --- S ---------------------------------------------------------------

    @cached_property
    def _left_coset_reps(self) -> list[np.ndarray]:
        return [
            np.array(coset_representative_indices(self.group, cls.centralizer))
            for cls in self.group.classes
        ]

    def s_block(self, kc: int, kd: int) -> np.ndarray:
        """Block of S between classes kc and kd via coset representatives."""
        g = self.group
        mult, inv = g.mult, g.inverse
        c = g.classes[kc].rep_index
        d = g.classes[kd].rep_index
        ci = inv[self._left_coset_reps[kc]]  # right coset reps of C(c)
        dj = inv[self._left_coset_reps[kd]]
        gij = mult[ci[:, None], inv[dj][None, :]].ravel()
        ginv = inv[gij]
        x = mult[mult[gij, d], ginv]  # g d g^-1
        y = mult[mult[ginv, c], gij]  # g^-1 c g
        keep = mult[x, c] == mult[c, x]
        lc = self.class_lookup[kc][x[keep]]
        ld = self.class_lookup[kd][y[keep]]
        chi_c = self.tables[kc].values
        chi_d = self.tables[kd].values
        return np.conj(chi_c[:, lc]) @ np.conj(chi_d[:, ld]).T / g.order

    def s_block_direct(self, kc: int, kd: int) -> np.ndarray:
        """Same block summed over all of G; used as an independent check."""
        g = self.group
        mult, inv = g.mult, g.inverse
        c = g.classes[kc].rep_index
        d = g.classes[kd].rep_index
        every = np.arange(g.order)
        u = mult[mult[every, d], inv]  # g d g^-1
        keep = mult[u, c] == mult[c, u]
        v = mult[mult[inv[keep], c], every[keep]]  # g^-1 c g
        lc = self.class_lookup[kc][u[keep]]
        ld = self.class_lookup[kd][v]
        chi_c = self.tables[kc].values
        chi_d = self.tables[kd].values
        norm = len(g.classes[kc].centralizer) * len(g.classes[kd].centralizer)
        return np.conj(chi_c[:, lc]) @ np.conj(chi_d[:, ld]).T / norm

    def _assemble(self, block_fn) -> np.ndarray:
        n_cls = self.group.class_number
        s = np.empty((self.rank, self.rank), dtype=complex)
        for a in range(n_cls):
            for b in range(a, n_cls):
                blk = block_fn(a, b)
                s[self.block_slice(a), self.block_slice(b)] = blk
                s[self.block_slice(b), self.block_slice(a)] = blk.T
        return s

    @cached_property
    def S(self) -> np.ndarray:
        return self._assemble(self.s_block)

    def s_matrix_direct(self) -> np.ndarray:
        return self._assemble(self.s_block_direct)

    # --- conjugation -------------------------------------------------------

    @cached_property
    def conjugate_map(self) -> np.ndarray:
        """0-based map i -> i-bar, computed from ([c^-1], conjugate sigma)."""
        g = self.group
        out = np.empty(self.rank, dtype=np.int64)
        for k, cls in enumerate(g.classes):
            kbar = int(g.class_of[g.inverse[cls.rep_index]])
            target_rep = g.classes[kbar].rep_index
            c_inv = g.inverse[cls.rep_index]
            # k0 with k0 c^-1 k0^-1 = rep of [c^-1]
            conj = g.mult[g.mult[:, c_inv], g.inverse]
            k0 = int(np.flatnonzero(conj == target_rep)[0])
            k0_inv = g.inverse[k0]
            table_bar = self.tables[kbar]
            reps_bar = [
                self.centralizers[kbar].parent_index[c.rep_index]
                if self.centralizers[kbar].parent_index is not None
                else c.rep_index
                for c in self.centralizers[kbar].classes
            ]
            pulled = g.mult[g.mult[k0_inv, reps_bar], k0]  # k0^-1 x k0 lies in C(c)
            cols = self.class_lookup[k][pulled]
            transported = np.conj(self.tables[k].values[:, cols])
            dist = np.abs(transported[:, None, :] - table_bar.values[None, :, :]).max(axis=2)
            match = dist.argmin(axis=1)
            if dist[np.arange(len(match)), match].max() > 1e-6:
                raise ModularDataError("modular data inconsistent: conjugate irrep not found")
            out[self.block_slice(k)] = self.block_start[kbar] + match
        return out

    # --- packaging -----------------------------------------------------------

    def modular_data(self, verify: bool = True) -> ModularData:
        s, t = self.S, self.T
        c = np.rint((s @ s).real).astype(np.int64)
        md = ModularData(S=s, T=t, C=c, conjugate_map=self.conjugate_map, blocks=self.blocks)
        if verify:
            verify_modular(md, exponent=structure_invariants(self.group)[2], qdims=self.quantum_dimensions, order=self.group.order)
        return md


def multiplicative_order(t: np.ndarray, limit: int) -> int:
    acc = np.ones_like(t)
    for k in range(1, limit + 1):
        acc = acc * t
        if np.abs(acc - 1).max() < 1e-8:
            return k
    raise ModularDataError("non-unitary T: no finite order within the exponent")


def verify_modular(
    md: ModularData,
    exponent: int | None = None,
    qdims: np.ndarray | None = None,
    order: int | None = None,
    tol: float = MODULAR_TOL,
) -> dict[str, float]:
    """Compute residuals of the modular relations; raise on the first failure."""
    s, t = md.S, md.T
    n = len(t)
    eye = np.eye(n)
    s2 = s @ s
    st = s * t[None, :]
    st3 = st @ st @ st
    res = {
        "symmetry": float(np.abs(s - s.T).max()),
        "unitarity": float(np.abs(s @ s.conj().T - eye).max()),
        "s4": float(np.abs(s2 @ s2 - eye).max()),
        "st3": float(np.abs(st3 - s2).max()),
        "t_unit": float(np.abs(np.abs(t) - 1).max()),
    }
    c = np.rint(s2.real).astype(np.int64)
    res["c_integral"] = float(np.abs(s2 - c).max())
    perm_ok = (
        np.all((c == 0) | (c == 1)) and np.all(c.sum(axis=0) == 1) and np.all(c.sum(axis=1) == 1)
    )
    conj = np.asarray(md.conjugate_map)
    expected = np.zeros((n, n), dtype=np.int64)
    expected[np.arange(n), conj] = 1
    res["c_matches_conjugation"] = 0.0 if perm_ok and np.array_equal(c, expected) else 1.0
    res["c_involution"] = float(np.abs(c @ c - eye).max())
    res["conjugate_symmetry"] = float(np.abs(np.conj(s) - s[conj]).max())
    if qdims is not None and order is not None:
        res["first_row"] = float(np.abs(s[0] - qdims / order).max())
    for name, value in res.items():
        if value > tol:
            raise ModularDataError(f"modular data inconsistent: {name} residual {value:.3g}")
    if exponent is not None:
        t_order = multiplicative_order(t, exponent)
        res["t_order"] = t_order
        if t_order != exponent:
            raise ModularDataError(f"order of T is {t_order}, exponent is {exponent}")
    md.residuals = res
    return res


# Plain functional interface --------------------------------------------------

def enumerate_double_irreps(g: GroupData, seed: int = DEFAULT_SEED) -> list[DoubleIrrep]:
    return DrinfeldDouble(g, seed).irreps


def s_matrix(g: GroupData, seed: int = DEFAULT_SEED) -> np.ndarray:
    return DrinfeldDouble(g, seed).S


def t_matrix(g: GroupData, seed: int = DEFAULT_SEED) -> np.ndarray:
    return DrinfeldDouble(g, seed).T
