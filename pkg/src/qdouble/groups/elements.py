"""Concrete group element realizations with exact equality and hashing."""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Sequence

from ..cyclotomic import Cyclotomic
from ..errors import GroupError


class Perm:
    """Permutation of {0, ..., n-1}; (a * b)(x) = a(b(x))."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        self.images = tuple(images)

    @classmethod
    def from_cycles(cls, n: int, cycles: Sequence[Sequence[int]]) -> Perm:
        images = list(range(n))
        for cyc in cycles:
            for a, b in zip(cyc, list(cyc[1:]) + [cyc[0]]):
                images[a] = b
        if sorted(images) != list(range(n)):
            raise GroupError("invalid generator: cycles overlap")
        return cls(images)

    def identity(self) -> Perm:
        return Perm(range(len(self.images)))

    def __mul__(self, other: Perm) -> Perm:
        a = self.images
        return Perm(a[i] for i in other.images)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Perm({list(self.images)})"


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str) -> list[list[int]]:
    """Parse '(1,2,3)(4,5)' into 0-based cycles."""
    text = text.strip()
    if not text or text in ("()", "id", "e"):
        return []
    stripped = _CYCLE.sub("", text).strip()
    if stripped:
        raise GroupError(f"invalid generator: cannot parse {text!r}")
    cycles = []
    for body in _CYCLE.findall(text):
        pts = [int(p) - 1 for p in re.split(r"[,\s]+", body.strip()) if p]
        if pts:
            cycles.append(pts)
    return cycles


class FiniteField:
    """GF(p^k) with elements encoded as integers 0..q-1 (base-p digits)."""

    def __init__(self, p: int, modulus: Sequence[int] = ()):
        # modulus: monic polynomial coefficients, lowest degree first, e.g. (1, 0, 1) = x^2 + 1
        self.p = p
        self.k = max(len(modulus) - 1, 1)
        self.q = p**self.k
        self.modulus = tuple(modulus) if modulus else (0, 1)
        q, k = self.q, self.k
        digits = [self._digits(a) for a in range(q)]
        self.add = [[self._encode([(x + y) % p for x, y in zip(digits[a], digits[b])]) for b in range(q)] for a in range(q)]
        self.mul = [[self._encode(self._polymul(digits[a], digits[b])) for b in range(q)] for a in range(q)]
        self.neg = [self._encode([(-x) % p for x in digits[a]]) for a in range(q)]
        self.inv = [None] + [next(b for b in range(1, q) if self.mul[a][b] == 1) for a in range(1, q)]
        self._k = k

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, digits: Sequence[int]) -> int:
        val = 0
        for d in reversed(list(digits)):
            val = val * self.p + d
        return val

    def _polymul(self, a: Sequence[int], b: Sequence[int]) -> list[int]:
        p, k = self.p, self.k
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                prod[i + j] += x * y
        for deg in range(len(prod) - 1, k - 1, -1):
            c = prod[deg] % p
            if c:
                for t, m in enumerate(self.modulus):
                    prod[deg - k + t] -= c * m
        return [c % p for c in prod[:k]]

    def element(self, digits: Sequence[int]) -> int:
        return self._encode([d % self.p for d in digits])


@lru_cache(maxsize=None)
def galois_field(p: int, modulus: tuple[int, ...] = ()) -> FiniteField:
    return FiniteField(p, modulus)


class FFMatrix:
    """Square matrix over a small finite field."""

    __slots__ = ("field", "n", "entries")

    def __init__(self, field: FiniteField, rows: Sequence[Sequence[int]]):
        self.field = field
        self.n = len(rows)
        self.entries = tuple(int(x) % field.q for row in rows for x in row)

    def identity(self) -> FFMatrix:
        return FFMatrix(self.field, [[int(i == j) for j in range(self.n)] for i in range(self.n)])

    def __mul__(self, other: FFMatrix) -> FFMatrix:
        n, add, mul = self.n, self.field.add, self.field.mul
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            for j in range(n):
                acc = 0
                for k in range(n):
                    acc = add[acc][mul[a[i * n + k]][b[k * n + j]]]
                out.append(acc)
        res = FFMatrix.__new__(FFMatrix)
        res.field, res.n, res.entries = self.field, n, tuple(out)
        return res

    def determinant(self) -> int:
        f, n = self.field, self.n
        m = [list(self.entries[i * n:(i + 1) * n]) for i in range(n)]
        det = 1
        for col in range(n):
            piv = next((r for r in range(col, n) if m[r][col]), None)
            if piv is None:
                return 0
            if piv != col:
                m[col], m[piv] = m[piv], m[col]
                det = f.neg[det]
            det = f.mul[det][m[col][col]]
            inv = f.inv[m[col][col]]
            for r in range(col + 1, n):
                if m[r][col]:
                    factor = f.mul[m[r][col]][inv]
                    m[r] = [f.add[x][f.neg[f.mul[factor][y]]] for x, y in zip(m[r], m[col])]
        return det

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FFMatrix) and self.entries == other.entries

    def __hash__(self) -> int:
        return hash(self.entries)

    def __repr__(self) -> str:
        return f"FFMatrix(q={self.field.q}, {self.entries})"


class CycMatrix:
    """Square matrix with exact entries in a common Q(zeta_N)."""

    __slots__ = ("n", "conductor", "entries", "_key")

    def __init__(self, rows: Sequence[Sequence[object]], conductor: int | None = None):
        flat = [x if isinstance(x, Cyclotomic) else Cyclotomic.rational(x) for row in rows for x in row]
        if conductor is None:
            conductor = 1
            for x in flat:
                conductor = conductor * x.n // _gcd(conductor, x.n)
        self.n = len(rows)
        self.conductor = conductor
        self.entries = tuple(x.lift(conductor) for x in flat)
        self._key = tuple(x.key() for x in self.entries)

    @classmethod
    def _from_entries(cls, n: int, conductor: int, entries: tuple) -> CycMatrix:
        obj = cls.__new__(cls)
        obj.n, obj.conductor, obj.entries = n, conductor, entries
        obj._key = tuple(x.key() for x in entries)
        return obj

    def identity(self) -> CycMatrix:
        n = self.n
        return CycMatrix([[int(i == j) for j in range(n)] for i in range(n)], self.conductor)

    def __mul__(self, other: CycMatrix) -> CycMatrix:
        n, a, b = self.n, self.entries, other.entries
        out = []
        for i in range(n):
            for j in range(n):
                acc = a[i * n] * b[j]
                for k in range(1, n):
                    acc = acc + a[i * n + k] * b[k * n + j]
                out.append(acc)
        return CycMatrix._from_entries(n, self.conductor, tuple(out))

    def determinant(self) -> Cyclotomic:
        n, e = self.n, self.entries
        if n == 1:
            return e[0]
        if n == 2:
            return e[0] * e[3] - e[1] * e[2]
        if n == 3:
            return (
                e[0] * (e[4] * e[8] - e[5] * e[7])
                - e[1] * (e[3] * e[8] - e[5] * e[6])
                + e[2] * (e[3] * e[7] - e[4] * e[6])
            )
        raise NotImplementedError("determinant only for n <= 3")

    def to_complex(self):
        import numpy as np

        return np.array([complex(x) for x in self.entries]).reshape(self.n, self.n)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CycMatrix) and self._key == other._key

    def __hash__(self) -> int:
        return hash(self._key)

    def __repr__(self) -> str:
        return f"CycMatrix(n={self.n}, conductor={self.conductor})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def check_invertible(g: object) -> None:
    if isinstance(g, FFMatrix) and g.determinant() == 0:
        raise GroupError("invalid generator: singular matrix")
    if isinstance(g, CycMatrix) and g.determinant().is_zero():
        raise GroupError("invalid generator: singular matrix")
