"""Exact modular data and fusion rules of D(S3), written from scratch.

Built on plain permutation tuples and hand-written centralizer characters in
Q(zeta_3); nothing from the package except the exact number type is used.
"""

import itertools
from fractions import Fraction

from qdouble.cyclotomic import Cyclotomic

ELEMENTS = list(itertools.permutations(range(3)))
IDENTITY = (0, 1, 2)


def compose(a, b):
    return tuple(a[b[i]] for i in range(3))


def inverse(a):
    out = [0, 0, 0]
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def conj(g, x):
    return compose(compose(g, x), inverse(g))


def power(x, k):
    out = IDENTITY
    for _ in range(k):
        out = compose(out, x)
    return out


OMEGA = Cyclotomic.zeta(3)
TRANSPOSITION = (1, 0, 2)
THREE_CYCLE = (1, 2, 0)
CLASS_REPS = [IDENTITY, TRANSPOSITION, THREE_CYCLE]


def _sign(p):
    return -1 if sum(1 for i in range(3) for j in range(i + 1, 3) if p[i] > p[j]) % 2 else 1


def _fixed(p):
    return sum(1 for i in range(3) if p[i] == i)


def _character(rep_idx, k):
    """k-th irreducible character of the centralizer of CLASS_REPS[rep_idx], as a function."""
    if rep_idx == 0:
        table = [lambda p: 1, _sign, lambda p: _fixed(p) - 1]
        return lambda p: Cyclotomic.rational(table[k](p), 3)
    if rep_idx == 1:  # centralizer {e, t}
        return lambda p: Cyclotomic.rational(1 if p == IDENTITY or k == 0 else -1, 3)
    # centralizer {e, c, c^2}
    return lambda p: OMEGA ** (k * next(m for m in range(3) if power(THREE_CYCLE, m) == p))


LABELS = [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]


def _transporter(a):
    """For each conjugate g of ``a``, an x with x a x^-1 = g."""
    out = {}
    for x in ELEMENTS:
        out.setdefault(conj(x, a), x)
    return out


def exact_s_matrix():
    reps = CLASS_REPS
    trans = [_transporter(a) for a in reps]
    size = len(ELEMENTS)
    s = []
    for ca, ka in LABELS:
        row = []
        for cb, kb in LABELS:
            alpha, beta = _character(ca, ka), _character(cb, kb)
            total = Cyclotomic.rational(0, 3)
            for g, xg in trans[ca].items():
                for h, yh in trans[cb].items():
                    if compose(g, h) != compose(h, g):
                        continue
                    u = compose(compose(inverse(xg), h), xg)  # lies in C(a)
                    v = compose(compose(inverse(yh), g), yh)  # lies in C(b)
                    total = total + (alpha(u) * beta(v)).conjugate()
            row.append(total / size)
        s.append(row)
    return s


def exact_t_matrix():
    return [_character(c, k)(CLASS_REPS[c]) / _character(c, k)(IDENTITY) for c, k in LABELS]


def exact_fusion(s):
    r = len(s)
    out = [[[None] * r for _ in range(r)] for _ in range(r)]
    for i in range(r):
        for j in range(r):
            for k in range(r):
                total = Cyclotomic.rational(0, 3)
                for m in range(r):
                    total = total + s[i][m] * s[j][m] * s[k][m].conjugate() / s[0][m]
                if not total.is_rational():
                    raise AssertionError("fusion coefficient is not rational")
                value = total.coefficients[0]
                if value.denominator != 1 or value < 0:
                    raise AssertionError(f"fusion coefficient {value} is not a natural number")
                out[i][j][k] = int(value)
    return out


def quantum_dimensions(s):
    return [Fraction(x.coefficients[0]) / s[0][0].coefficients[0] for x in s[0]]


def align(s_numeric, t_numeric, s_exact, t_exact, tol=1e-10):
    """Index map p with s_numeric[p[i], p[j]] == s_exact[i][j]; candidates must share T."""
    import numpy as np

    from qdouble.cyclotomic import embed

    se = np.array([[embed(x) for x in row] for row in s_exact])
    te = np.array([embed(x) for x in t_exact])
    r = len(se)
    options = [[k for k in range(r) if abs(t_numeric[k] - te[i]) < tol and
                abs(s_numeric[0, k] - se[0, i]) < tol] for i in range(r)]
    for choice in itertools.product(*options):
        if len(set(choice)) == r and np.abs(s_numeric[np.ix_(choice, choice)] - se).max() < tol:
            return list(choice)
    return None
