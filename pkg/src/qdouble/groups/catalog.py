"""Named finite subgroups of SU(2) and SU(3) with exact generators."""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

from ..cyclotomic import Cyclotomic
from ..errors import GroupError
from .core import GroupData, enumerate_group
from .elements import CycMatrix, FFMatrix, Perm, galois_field


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    order: int
    class_number: int | None
    target: str  # "SU2" or "SU3": where the defining embedding lives
    build: Callable[[], list]


def _zeta(n: int, k: int = 1) -> Cyclotomic:
    return Cyclotomic.zeta(n, k)


def _cycle(n: int) -> Perm:
    return Perm([(i + 1) % n for i in range(n)])


def _perm(n: int, *cycles) -> Perm:
    return Perm.from_cycles(n, cycles)


# --- three-dimensional building blocks -------------------------------------

def _omega(k: int = 1) -> Cyclotomic:
    return _zeta(3, k)


def _e_matrix() -> CycMatrix:
    return CycMatrix([[0, 1, 0], [0, 0, 1], [1, 0, 0]])


def _c_matrix() -> CycMatrix:
    return CycMatrix([[1, 0, 0], [0, _omega(1), 0], [0, 0, _omega(2)]])


def _i_sqrt3_inverse() -> Cyclotomic:
    return (Cyclotomic.rational(1) + _omega(1) * 2).inverse()


def _v_matrix() -> CycMatrix:
    w, w2, s = _omega(1), _omega(2), _i_sqrt3_inverse()
    return CycMatrix([[s, s, s], [s, s * w, s * w2], [s, s * w2, s * w]])


def _x_matrix() -> CycMatrix:
    w, w2, s = _omega(1), _omega(2), _i_sqrt3_inverse()
    return CycMatrix([[s, s, s * w2], [s, s * w, s * w], [s * w, s, s * w]])


def _z_matrix() -> CycMatrix:
    eps = _zeta(9, 2)
    return CycMatrix([[eps, 0, 0], [0, eps, 0], [0, 0, eps * _omega(1)]])


def _icosahedral_pair() -> tuple[CycMatrix, CycMatrix]:
    root5 = Cyclotomic.gauss_sqrt(5)
    half = Cyclotomic.rational(1) / 2
    mu_plus = (root5 - 1) * half
    mu_minus = (-root5 - 1) * half
    f = CycMatrix([[1, 0, 0], [0, -1, 0], [0, 0, -1]])
    h = CycMatrix(
        [
            [-half, mu_minus * half, mu_plus * half],
            [mu_minus * half, mu_plus * half, -half],
            [mu_plus * half, -half, mu_minus * half],
        ]
    )
    return f, h


def _j_matrix() -> CycMatrix:
    return CycMatrix([[1, 0, 0], [0, 0, -_omega(2)], [0, _omega(1), 0]])


def _common_conductor(mats: list[CycMatrix]) -> list[CycMatrix]:
    n = 1
    for m in mats:
        a, b = n, m.conductor
        while b:
            a, b = b, a % b
        n = n * m.conductor // a
    return [CycMatrix._from_entries(m.n, n, tuple(x.lift(n) for x in m.entries)) for m in mats]


# --- builders ---------------------------------------------------------------

def _cyclic(n: int) -> list:
    return [_cycle(n)] if n > 1 else []


def _binary_dihedral(n: int) -> list:
    z = _zeta(2 * n)
    a = CycMatrix([[z, 0], [0, z.inverse()]])
    b = CycMatrix([[0, -1], [1, 0]])
    return _common_conductor([a, b])


def _special_linear_2(p: int) -> list:
    f = galois_field(p)
    return [FFMatrix(f, [[1, 1], [0, 1]]), FFMatrix(f, [[1, 0], [1, 1]])]


def _binary_octahedral() -> list:
    f9 = galois_field(3, (1, 0, 1))  # F3[u]/(u^2 + 1)
    minus_one = f9.element([-1, 0])
    minus_u = f9.element([0, -1])
    a = FFMatrix(f9, [[minus_one, 1], [0, minus_one]])
    b = FFMatrix(f9, [[minus_u, minus_u], [minus_u, 0]])
    return [a, b]


def _delta3(n: int) -> list:
    z = _zeta(n) if n > 1 else Cyclotomic.rational(1)
    d = CycMatrix([[z, 0, 0], [0, z.inverse(), 0], [0, 0, 1]])
    return _common_conductor([_e_matrix(), d])


def _delta6(n: int) -> list:
    swap = CycMatrix([[-1, 0, 0], [0, 0, -1], [0, -1, 0]])
    return _common_conductor(_delta3(n) + [swap])


def _frobenius21() -> list:
    return [Perm([(x + 1) % 7 for x in range(7)]), Perm([(2 * x) % 7 for x in range(7)])]


def _alternating5(extra: int = 0) -> list:
    total = 5 + extra
    return [_perm(total, (0, 1, 2, 3, 4)), _perm(total, (0, 1, 2))]


def _psl27(extra: int = 0) -> list:
    total = 7 + extra
    return [_perm(total, (0, 1, 2, 3, 4, 5, 6)), _perm(total, (0, 1), (2, 5))]


def _with_z3(base: list, degree: int) -> list:
    return base + [_perm(degree + 3, (degree, degree + 1, degree + 2))]


def _sigma36() -> list:
    return _common_conductor([_e_matrix(), _c_matrix(), _v_matrix()])


def _sigma72() -> list:
    return _common_conductor([_e_matrix(), _c_matrix(), _v_matrix(), _x_matrix()])


def _sigma216() -> list:
    return _common_conductor([_e_matrix(), _c_matrix(), _v_matrix(), _z_matrix()])


def _sigma360() -> list:
    f, h = _icosahedral_pair()
    return _common_conductor([_e_matrix(), f, h, _j_matrix()])


def _symmetric3() -> list:
    return [_perm(3, (0, 1)), _perm(3, (0, 1, 2))]


_FIXED: dict[str, CatalogEntry] = {
    e.name: e
    for e in [
        CatalogEntry("trivial", 1, 1, "SU2", lambda: []),
        CatalogEntry("S3", 6, 3, "SU3", _symmetric3),
        CatalogEntry("binary_tetrahedral", 24, 7, "SU2", lambda: _special_linear_2(3)),
        CatalogEntry("binary_octahedral", 48, 8, "SU2", _binary_octahedral),
        CatalogEntry("binary_icosahedral", 120, 9, "SU2", lambda: _special_linear_2(5)),
        CatalogEntry("F21", 21, 5, "SU3", _frobenius21),
        CatalogEntry("Sigma60", 60, 5, "SU3", _alternating5),
        CatalogEntry("Sigma36x3", 108, 14, "SU3", _sigma36),
        CatalogEntry("Sigma168", 168, 6, "SU3", _psl27),
        CatalogEntry("Sigma60xZ3", 180, 15, "SU3", lambda: _with_z3(_alternating5(3), 5)),
        CatalogEntry("Sigma72x3", 216, 16, "SU3", _sigma72),
        CatalogEntry("Sigma168xZ3", 504, 18, "SU3", lambda: _with_z3(_psl27(3), 7)),
        CatalogEntry("Sigma216x3", 648, 24, "SU3", _sigma216),
        CatalogEntry("Sigma360x3", 1080, 17, "SU3", _sigma360),
    ]
}

_PARAMETRIC = re.compile(r"^(Z|Dhat|Delta3_|Delta6_)(\d+)$")

EXCEPTIONAL_SU3 = (
    "Sigma60",
    "Sigma36x3",
    "Sigma168",
    "Sigma60xZ3",
    "Sigma72x3",
    "Sigma168xZ3",
    "Sigma216x3",
    "Sigma360x3",
)


def catalog_entry(name: str) -> CatalogEntry:
    if name in _FIXED:
        return _FIXED[name]
    m = _PARAMETRIC.match(name)
    if not m or int(m.group(2)) < 1:
        raise GroupError(f"not in catalog: {name!r}")
    kind, n = m.group(1), int(m.group(2))
    if kind == "Z":
        return CatalogEntry(name, n, n, "SU2", lambda: _cyclic(n))
    if kind == "Dhat":
        if n < 2:
            raise GroupError(f"not in catalog: {name!r} (binary dihedral needs n >= 2)")
        return CatalogEntry(name, 4 * n, n + 3, "SU2", lambda: _binary_dihedral(n))
    if kind == "Delta3_":
        return CatalogEntry(name, 3 * n * n, None, "SU3", lambda: _delta3(n))
    return CatalogEntry(name, 6 * n * n, None, "SU3", lambda: _delta6(n))


def catalog_names() -> list[str]:
    return list(_FIXED) + ["Z<n>", "Dhat<n>", "Delta3_<n>", "Delta6_<n>"]


@lru_cache(maxsize=32)
def catalog(name: str, limit: int = 10_000) -> GroupData:
    entry = catalog_entry(name)
    group = enumerate_group(entry.build(), limit=limit, name=name)
    if group.order != entry.order:
        raise GroupError(f"catalog group {name} has order {group.order}, expected {entry.order}")
    if entry.class_number is not None and group.class_number != entry.class_number:
        raise GroupError(
            f"catalog group {name} has {group.class_number} classes, expected {entry.class_number}"
        )
    return group
