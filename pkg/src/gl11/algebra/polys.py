"""Dense univariate polynomials over exact rationals.

Polynomials are plain lists of ``Fraction`` coefficients, constant term
first, with no trailing zeros.  This is the substrate for cyclotomic
reduction, Sturm chains and square-free decomposition; nothing here is
exported to users directly.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

Poly = list  # list[Fraction], trailing zeros stripped

ZERO = Fraction(0)
ONE = Fraction(1)


def trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p):
    return len(p) - 1 if p else -1


def add(p, q):
    n = max(len(p), len(q))
    out = [ZERO] * n
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return trim(out)


def neg(p):
    return [-c for c in p]


def sub(p, q):
    return add(p, neg(q))


def mul(p, q):
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def scale(p, c):
    if c == 0:
        return []
    return [a * c for a in p]


def divmod_exact_field(p, q):
    """Polynomial division over the rationals; q must be nonzero."""
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(p)
    quo = [ZERO] * max(len(p) - len(q) + 1, 0)
    dq = degree(q)
    lead = q[-1]
    while degree(rem) >= dq:
        shift = degree(rem) - dq
        c = rem[-1] / lead
        quo[shift] = c
        for i, b in enumerate(q):
            rem[i + shift] -= c * b
        trim(rem)
    return trim(quo), rem


def divexact(p, q):
    quo, rem = divmod_exact_field(p, q)
    if rem:
        raise ArithmeticError("polynomial division was not exact")
    return quo


def monic(p):
    if not p:
        return []
    return [c / p[-1] for c in p]


def gcd(p, q):
    """Monic gcd via the Euclidean algorithm."""
    a, b = list(p), list(q)
    while b:
        a, b = b, divmod_exact_field(a, b)[1]
    return monic(a)


def derivative(p):
    return trim([i * c for i, c in enumerate(p)][1:])


def evaluate(p, x):
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


@lru_cache(maxsize=None)
def cyclotomic(m: int) -> tuple:
    """Coefficients of the m-th cyclotomic polynomial, exact over the integers."""
    if m < 1:
        raise ValueError("cyclotomic order must be positive")
    # x^m - 1 divided by the cyclotomic polynomials of the proper divisors.
    p = [Fraction(-1)] + [ZERO] * (m - 1) + [ONE]
    for d in range(1, m):
        if m % d == 0:
            p = divexact(p, list(cyclotomic(d)))
    return tuple(p)


def euler_phi(m: int) -> int:
    return degree(list(cyclotomic(m))) if m > 1 else 1


def xgcd(p, q):
    """Extended Euclid: returns (g, s, t) with s*p + t*q = g, g monic."""
    a, b = list(p), list(q)
    sa, sb = [ONE], []
    ta, tb = [], [ONE]
    while b:
        quo, rem = divmod_exact_field(a, b)
        a, b = b, rem
        sa, sb = sb, sub(sa, mul(quo, sb))
        ta, tb = tb, sub(ta, mul(quo, tb))
    if not a:
        return [], sa, ta
    lead = a[-1]
    inv = 1 / lead
    return scale(a, inv), scale(sa, inv), scale(ta, inv)


def squarefree_decomposition(p):
    """Yun's algorithm: returns [(factor, multiplicity)] with factors monic."""
    if degree(p) < 1:
        return []
    p = monic(p)
    dp = derivative(p)
    a = gcd(p, dp)
    b = divexact(p, a)
    c = divexact(dp, a)
    d = sub(c, derivative(b))
    out = []
    i = 1
    while degree(b) >= 1:
        a = gcd(b, d)
        if degree(a) >= 1:
            out.append((a, i))
        b = divexact(b, a)
        c = divexact(d, a)
        d = sub(c, derivative(b))
        i += 1
    return out


def _sign_variations(signs):
    signs = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def sturm_positive_roots(p):
    """Number of distinct roots of a squarefree p in (0, +inf), via Sturm's theorem."""
    if degree(p) < 1:
        return 0
    chain = [list(p), derivative(p)]
    while degree(chain[-1]) >= 1:
        rem = divmod_exact_field(chain[-2], chain[-1])[1]
        if not rem:
            break
        chain.append(neg(rem))
    def sgn(x):
        return (x > 0) - (x < 0)
    at_zero = [sgn(evaluate(q, ZERO)) for q in chain]
    at_inf = [sgn(q[-1]) if q else 0 for q in chain]
    return _sign_variations(at_zero) - _sign_variations(at_inf)


def count_positive_roots(p):
    """Roots of p in (0, +inf) counted with multiplicity, exactly."""
    p = trim(list(p))
    if degree(p) < 1:
        return 0
    # strip the root at zero so every squarefree factor is nonzero at 0
    v = 0
    while p[0] == 0:
        p = p[1:]
        v += 1
    total = 0
    for factor, multiplicity in squarefree_decomposition(p):
        total += multiplicity * sturm_positive_roots(factor)
    return total
