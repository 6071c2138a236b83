"""Exact arithmetic in cyclotomic fields Q(zeta_n).

An element is stored as an integer coefficient vector over a common positive
denominator, in the power basis 1, z, ..., z^(phi(n)-1) reduced modulo the
n-th cyclotomic polynomial. Values of different conductors are lifted to the
lcm of the conductors before combining.
"""

from __future__ import annotations

import cmath
import math
import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

MAX_CONDUCTOR = 168

Number = Union[int, Fraction, "Cyclotomic"]


def _poly_divmod(num: list[int], den: list[int]) -> tuple[list[int], list[int]]:
    # coefficient lists are low-degree first; den must be monic
    num = list(num)
    q = [0] * max(len(num) - len(den) + 1, 1)
    for shift in range(len(num) - len(den), -1, -1):
        c = num[shift + len(den) - 1]
        if c:
            q[shift] = c
            for k, d in enumerate(den):
                num[shift + k] -= c * d
    rem = num[: len(den) - 1]
    return q, rem


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first."""
    if n < 1:
        raise ValueError("conductor must be positive")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, list(cyclotomic_polynomial(d)))
            assert not any(rem)
    while len(poly) > 1 and poly[-1] == 0:
        poly.pop()
    return tuple(poly)


@lru_cache(maxsize=None)
def _reduction_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Row k holds z^k mod Phi_n for 0 <= k < n."""
    phi = len(cyclotomic_polynomial(n)) - 1
    poly = cyclotomic_polynomial(n)
    rows = []
    cur = [0] * phi
    if phi:
        cur[0] = 1
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by z and reduce the overflow coefficient
        top = cur[-1]
        cur = [0] + cur[:-1]
        if top:
            cur = [c - top * p for c, p in zip(cur, poly[:-1])]
    return tuple(rows)


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def _normalize(nums: Iterable[int], den: int) -> tuple[tuple[int, ...], int]:
    nums = tuple(nums)
    if den < 0:
        nums = tuple(-c for c in nums)
        den = -den
    g = den
    for c in nums:
        g = math.gcd(g, c)
        if g == 1:
            break
    if g > 1:
        nums = tuple(c // g for c in nums)
        den //= g
    if not any(nums):
        den = 1
    return nums, den


class Cyclotomic:
    """Element of Q(zeta_n) in canonical reduced form."""

    __slots__ = ("n", "_num", "_den", "_hash")

    def __init__(self, n: int, coefficients: Iterable[Union[int, Fraction]] = ()):
        if not 1 <= n <= MAX_CONDUCTOR:
            raise ValueError(f"conductor {n} outside 1..{MAX_CONDUCTOR}")
        coefficients = [Fraction(c) for c in coefficients]
        den = 1
        for c in coefficients:
            den = den * c.denominator // math.gcd(den, c.denominator)
        # coefficients may be given on any power of z; fold them with z^n = 1
        table = _reduction_table(n)
        phi = euler_phi(n)
        acc = [0] * phi
        for k, c in enumerate(coefficients):
            if c:
                v = c.numerator * (den // c.denominator)
                for j, t in enumerate(table[k % n]):
                    if t:
                        acc[j] += v * t
        self.n = n
        self._num, self._den = _normalize(acc, den)
        self._hash = None

    @classmethod
    def _raw(cls, n: int, nums: Iterable[int], den: int) -> Cyclotomic:
        obj = cls.__new__(cls)
        obj.n = n
        obj._num, obj._den = _normalize(nums, den)
        obj._hash = None
        return obj

    # -- constructors ---------------------------------------------------
    @classmethod
    def zeta(cls, n: int, k: int = 1) -> Cyclotomic:
        """zeta_n ** k with zeta_n = exp(2 pi i / n)."""
        coeffs = [0] * n
        coeffs[k % n] = 1
        return cls(n, coeffs)

    @classmethod
    def rational(cls, q: Union[int, Fraction], n: int = 1) -> Cyclotomic:
        return cls(n, [q])

    @classmethod
    def gauss_sqrt(cls, p: int) -> Cyclotomic:
        """sqrt(p*) for an odd prime p, where p* = (-1)**((p-1)/2) * p."""
        coeffs = [0] * p
        for a in range(1, p):
            coeffs[a] = 1 if pow(a, (p - 1) // 2, p) == 1 else -1
        return cls(p, coeffs)

    # -- accessors ------------------------------------------------------
    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    def key(self) -> tuple[int, tuple[int, ...], int]:
        """Exact identity within a fixed conductor."""
        return (self.n, self._num, self._den)

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def lift(self, m: int) -> Cyclotomic:
        if m == self.n:
            return self
        if m % self.n:
            raise ValueError(f"cannot lift conductor {self.n} into {m}")
        step = m // self.n
        table = _reduction_table(m)
        acc = [0] * euler_phi(m)
        for k, c in enumerate(self._num):
            if c:
                for j, t in enumerate(table[(k * step) % m]):
                    if t:
                        acc[j] += c * t
        return Cyclotomic._raw(m, acc, self._den)

    def _coerce(self, other: Number) -> tuple[Cyclotomic, Cyclotomic]:
        if not isinstance(other, Cyclotomic):
            other = Cyclotomic.rational(Fraction(other))
        if other.n == self.n:
            return self, other
        m = self.n * other.n // math.gcd(self.n, other.n)
        return self.lift(m), other.lift(m)

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other: Number) -> Cyclotomic:
        if not isinstance(other, (Cyclotomic, int, Fraction)):
            return NotImplemented
        a, b = self._coerce(other)
        den = a._den * b._den
        nums = [x * b._den + y * a._den for x, y in zip(a._num, b._num)]
        return Cyclotomic._raw(a.n, nums, den)

    __radd__ = __add__

    def __neg__(self) -> Cyclotomic:
        return Cyclotomic._raw(self.n, [-c for c in self._num], self._den)

    def __sub__(self, other: Number) -> Cyclotomic:
        if not isinstance(other, (Cyclotomic, int, Fraction)):
            return NotImplemented
        return self + (-other if isinstance(other, Cyclotomic) else -Fraction(other))

    def __rsub__(self, other: Number) -> Cyclotomic:
        return (-self) + other

    def __mul__(self, other: Number) -> Cyclotomic:
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclotomic._raw(
                self.n, [c * q.numerator for c in self._num], self._den * q.denominator
            )
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._coerce(other)
        n = a.n
        phi = len(a._num)
        prod = [0] * (2 * phi - 1) if phi else []
        for i, x in enumerate(a._num):
            if x:
                for j, y in enumerate(b._num):
                    if y:
                        prod[i + j] += x * y
        acc = prod[:phi]
        table = _reduction_table(n)
        for k in range(phi, len(prod)):
            c = prod[k]
            if c:
                for j, t in enumerate(table[k % n]):
                    if t:
                        acc[j] += c * t
        return Cyclotomic._raw(n, acc, a._den * b._den)

    __rmul__ = __mul__

    def conjugate(self) -> Cyclotomic:
        """Image under z -> z^-1 (complex conjugation)."""
        coeffs = [0] * self.n
        for k, c in enumerate(self._num):
            coeffs[(-k) % self.n] = Fraction(c, self._den)
        return Cyclotomic(self.n, coeffs)

    def inverse(self) -> Cyclotomic:
        if self.is_zero():
            raise ZeroDivisionError("division by zero in Q(zeta_n)")
        n, phi = self.n, len(self._num)
        # column k of the multiplication matrix is self * z^k
        cols = []
        for k in range(phi):
            e = Cyclotomic.zeta(n, k) * self
            cols.append([Fraction(c, e._den) for c in e._num])
        # solve M x = e_0 by Gauss-Jordan over Q
        rows = [[cols[k][i] for k in range(phi)] + [Fraction(int(i == 0))] for i in range(phi)]
        for col in range(phi):
            piv = next(r for r in range(col, phi) if rows[r][col] != 0)
            rows[col], rows[piv] = rows[piv], rows[col]
            pv = rows[col][col]
            rows[col] = [v / pv for v in rows[col]]
            for r in range(phi):
                if r != col and rows[r][col] != 0:
                    f = rows[r][col]
                    rows[r] = [v - f * w for v, w in zip(rows[r], rows[col])]
        return Cyclotomic(n, [rows[i][phi] for i in range(phi)])

    def __truediv__(self, other: Number) -> Cyclotomic:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(zeta_n)")
            return self * (1 / Fraction(other))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._coerce(other)
        return a * b.inverse()

    def __rtruediv__(self, other: Number) -> Cyclotomic:
        return Cyclotomic.rational(Fraction(other)) / self

    def __pow__(self, k: int) -> Cyclotomic:
        if k < 0:
            return self.inverse() ** (-k)
        result = Cyclotomic.rational(1, self.n)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- comparison -----------------------------------------------------
    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.rational(Fraction(other))
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        a, b = self._coerce(other)
        return a._num == b._num and a._den == b._den

    def normalized_trace(self) -> Fraction:
        """Tr_{Q(z)/Q}(x) / phi(n); independent of the conductor used."""
        n = self.n
        total = Fraction(0)
        for k, c in enumerate(self._num):
            if c:
                d = n // math.gcd(n, k)
                total += Fraction(c * _mobius(d), euler_phi(d))
        return total / self._den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.normalized_trace())
        return self._hash

    # -- conversion -----------------------------------------------------
    def __complex__(self) -> complex:
        return embed(self)

    def __repr__(self) -> str:
        return f"Cyclotomic({self.n}, {[str(c) for c in self.coefficients]})"

    def __str__(self) -> str:
        return dumps(self)


@lru_cache(maxsize=None)
def _mobius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    if m > 1:
        result = -result
    return result


def embed(x: Cyclotomic) -> complex:
    """Complex value of x under zeta_n -> exp(2 pi i / n)."""
    total = 0j
    for k, c in enumerate(x._num):
        if c:
            total += c * cmath.exp(2j * math.pi * k / x.n)
    return total / x._den


def dumps(x: Cyclotomic) -> str:
    """Serialize as 'c0 + c1*z + c2*z^2 + ...@n'."""
    terms = []
    for k, c in enumerate(x.coefficients):
        if c == 0:
            continue
        if k == 0:
            terms.append(str(c))
        elif k == 1:
            terms.append(f"{c}*z")
        else:
            terms.append(f"{c}*z^{k}")
    return (" + ".join(terms) or "0") + f"@{x.n}"


_TERM = re.compile(r"^\s*(-?\d+(?:/\d+)?)(?:\s*\*\s*z(?:\^(\d+))?)?\s*$")


def loads(text: str) -> Cyclotomic:
    body, _, n = text.rpartition("@")
    if not body:
        raise ValueError(f"missing conductor in {text!r}")
    n = int(n)
    coeffs = [Fraction(0)] * n
    for term in body.split(" + "):
        m = _TERM.match(term)
        if not m:
            raise ValueError(f"cannot parse term {term!r}")
        c, k = m.groups()
        if "*" in term:
            k = 1 if k is None else int(k)
        else:
            k = 0
        coeffs[k % n] += Fraction(c)
    return Cyclotomic(n, coeffs)
