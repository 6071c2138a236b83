"""Finite groups as integer Cayley tables built from exact generators."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import gcd
from pathlib import Path
from typing import Hashable, Sequence

import numpy as np

from ..errors import GroupError
from .elements import Perm, check_invertible, parse_cycles

DEFAULT_LIMIT = 10_000


@dataclass(frozen=True)
class ConjugacyClass:
    representative: Hashable
    rep_index: int
    members: tuple[int, ...]
    centralizer: tuple[int, ...]
    rep_order: int

    @property
    def size(self) -> int:
        return len(self.members)


@dataclass
class GroupData:
    """A finite group with its multiplication table; index 0 is the identity.

    ``mult[a, b]`` is the index of ``elements[a] * elements[b]``.
    """

    elements: list
    mult: np.ndarray
    name: str = ""
    parent_index: np.ndarray | None = None
    inverse: np.ndarray = field(init=False)
    element_orders: np.ndarray = field(init=False)
    classes: list[ConjugacyClass] = field(init=False)
    class_of: np.ndarray = field(init=False)
    _invariants: tuple | None = field(default=None, init=False, repr=False)

    def __post_init__(self):
        n = len(self.elements)
        if self.mult.shape != (n, n):
            raise GroupError("multiplication table has the wrong shape")
        self.inverse = np.argmin(self.mult, axis=1).astype(np.int32)
        if not np.all(self.mult[np.arange(n), self.inverse] == 0):
            raise GroupError("multiplication table has no identity at index 0")
        self.element_orders = _element_orders(self.mult)
        self.classes, self.class_of = _conjugacy_classes(self)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def class_number(self) -> int:
        return len(self.classes)

    @property
    def class_sizes(self) -> np.ndarray:
        return np.array([c.size for c in self.classes])

    @property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mult, self.mult.T))

    def index_of(self, x) -> int:
        try:
            return self._lookup[x]
        except AttributeError:
            self._lookup = {e: i for i, e in enumerate(self.elements)}
            return self.index_of(x)
        except KeyError:
            raise GroupError("foreign element: not in this group") from None

    def power(self, indices, k: int) -> np.ndarray:
        """Indices of g**k for each g in ``indices`` (k may be negative)."""
        idx = np.asarray(indices, dtype=np.int64)
        orders = self.element_orders[idx]
        exps = np.mod(k, orders)
        result = np.zeros_like(idx)
        base = idx.copy()
        while np.any(exps):
            odd = (exps & 1).astype(bool)
            result[odd] = self.mult[result[odd], base[odd]]
            base = self.mult[base, base]
            exps >>= 1
        return result

    def conjugate(self, x: int, g) -> np.ndarray | int:
        """Index of g x g^-1 (vectorized over g)."""
        return self.mult[self.mult[g, x], self.inverse[g]]

    @property
    def exponent(self) -> int:
        return structure_invariants(self)[2]


def _element_orders(mult: np.ndarray) -> np.ndarray:
    n = mult.shape[0]
    idx = np.arange(n)
    orders = np.zeros(n, dtype=np.int64)
    orders[0] = 1
    cur = idx.copy()
    k = 1
    while np.any(orders == 0):
        cur = mult[cur, idx]
        k += 1
        hit = (cur == 0) & (orders == 0)
        orders[hit] = k
        if k > n:
            raise GroupError("element of infinite order in multiplication table")
    return orders


def _conjugacy_classes(g: GroupData) -> tuple[list[ConjugacyClass], np.ndarray]:
    n = g.order
    all_idx = np.arange(n)
    assigned = np.full(n, -1)
    raw = []
    for x in range(n):
        if assigned[x] >= 0:
            continue
        members = np.unique(g.conjugate(x, all_idx))
        assigned[members] = len(raw)
        raw.append(members)
    raw.sort(key=lambda m: (int(g.element_orders[m[0]]), len(m), int(m[0])))
    classes = []
    class_of = np.empty(n, dtype=np.int32)
    for k, members in enumerate(raw):
        rep = int(members[0])
        class_of[members] = k
        classes.append(
            ConjugacyClass(
                representative=g.elements[rep],
                rep_index=rep,
                members=tuple(int(m) for m in members),
                centralizer=tuple(int(c) for c in centralizer_indices(g, rep)),
                rep_order=int(g.element_orders[rep]),
            )
        )
    return classes, class_of


def enumerate_group(
    generators: Sequence,
    limit: int = DEFAULT_LIMIT,
    name: str = "",
    identity=None,
) -> GroupData:
    """Breadth-first closure of ``generators``; raises on more than ``limit`` elements."""
    gens = list(generators)
    for s in gens:
        check_invertible(s)
    if identity is None:
        identity = gens[0].identity() if gens else Perm(())
    elements = [identity]
    index = {identity: 0}
    parent = [-1]
    via = [-1]
    right = [[] for _ in gens]
    queue = deque([0])
    while queue:
        i = queue.popleft()
        x = elements[i]
        for s, gen in enumerate(gens):
            y = x * gen
            j = index.get(y)
            if j is None:
                j = len(elements)
                if j >= limit:
                    raise GroupError(f"order overflow: closure exceeds {limit} elements")
                index[y] = j
                elements.append(y)
                parent.append(i)
                via.append(s)
                queue.append(j)
            right[s].append((i, j))
    n = len(elements)
    right_tables = []
    for pairs in right:
        table = np.empty(n, dtype=np.int32)
        for i, j in pairs:
            table[i] = j
        right_tables.append(table)
    mult = np.empty((n, n), dtype=np.int32)
    mult[:, 0] = np.arange(n)
    # elements[k] = elements[parent[k]] * gens[via[k]], and BFS order puts parents first
    for k in range(1, n):
        mult[:, k] = right_tables[via[k]][mult[:, parent[k]]]
    group = GroupData(elements=elements, mult=mult, name=name)
    group._lookup = index
    return group


# Short alias; a plain ``enumerate`` would shadow the builtin.
enumerate_ = enumerate_group


def conjugacy_classes(g: GroupData) -> list[ConjugacyClass]:
    return g.classes


def centralizer_indices(g: GroupData, x: int) -> np.ndarray:
    return np.flatnonzero(g.mult[:, x] == g.mult[x, :])


def centralizer(g: GroupData, x) -> tuple[int, ...]:
    """Indices of elements commuting with ``x`` (an element or an index)."""
    if isinstance(x, (int, np.integer)):
        if not 0 <= x < g.order:
            raise GroupError("foreign element: index out of range")
        xi = int(x)
    else:
        xi = g.index_of(x)
    return tuple(int(h) for h in centralizer_indices(g, xi))


def is_subgroup(g: GroupData, subset: Sequence[int]) -> bool:
    sub = np.asarray(sorted(set(int(s) for s in subset)))
    if sub.size == 0 or sub[0] != 0:
        return False
    products = g.mult[np.ix_(sub, sub)]
    return bool(np.isin(products, sub).all())


def coset_representative_indices(g: GroupData, subgroup: Sequence[int]) -> list[int]:
    """Least index in each left coset gH, in increasing order."""
    if not is_subgroup(g, subgroup):
        raise GroupError("not a subgroup: subset is not closed under multiplication")
    sub = np.asarray(sorted(set(int(s) for s in subgroup)))
    covered = np.zeros(g.order, dtype=bool)
    reps = []
    for x in range(g.order):
        if not covered[x]:
            reps.append(x)
            covered[g.mult[x, sub]] = True
    return reps


def coset_representatives(g: GroupData, subgroup: Sequence[int]) -> list:
    return [g.elements[i] for i in coset_representative_indices(g, subgroup)]


def subgroup(g: GroupData, subset: Sequence[int], name: str = "") -> GroupData:
    """The subgroup on ``subset`` with elements kept in the parent's index order."""
    if not is_subgroup(g, subset):
        raise GroupError("not a subgroup: subset is not closed under multiplication")
    sub = np.asarray(sorted(set(int(s) for s in subset)), dtype=np.int64)
    if sub.size == g.order:
        return g
    local = np.full(g.order, -1, dtype=np.int32)
    local[sub] = np.arange(sub.size)
    mult = local[g.mult[np.ix_(sub, sub)]]
    h = GroupData(elements=[g.elements[i] for i in sub], mult=mult, name=name)
    h.parent_index = sub
    return h


def _closure(g: GroupData, seed: np.ndarray) -> np.ndarray:
    current = np.unique(np.concatenate([[0], seed]))
    while True:
        grown = np.unique(g.mult[np.ix_(current, current)])
        if grown.size == current.size:
            return current
        current = grown


def structure_invariants(g: GroupData) -> tuple[tuple[int, ...], tuple[int, ...], int, int]:
    """(center, derived subgroup, exponent, |G/G'|)."""
    if g._invariants is None:
        center = tuple(c.rep_index for c in g.classes if c.size == 1)
        inv = g.inverse
        left = g.mult[np.ix_(inv, inv)]
        commutators = np.unique(g.mult[left, g.mult])
        derived = _closure(g, commutators)
        exponent = 1
        for o in np.unique(g.element_orders):
            exponent = exponent * int(o) // gcd(exponent, int(o))
        g._invariants = (
            center,
            tuple(int(d) for d in derived),
            exponent,
            g.order // derived.size,
        )
    return g._invariants


def load_permutation_generators(path: str | Path) -> list[Perm]:
    """Read one generator per line in 1-based cycle notation; '#' starts a comment."""
    lines = []
    for raw in Path(path).read_text().splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(parse_cycles(line))
    degree = max((p for cycles in lines for cyc in cycles for p in cyc), default=-1) + 1
    return [Perm.from_cycles(degree, cycles) for cycles in lines]
