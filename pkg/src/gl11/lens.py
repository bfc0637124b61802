"""Lens spaces: continued fractions, chain presentations, the closed
formula, the classification experiment and the Franz-condition checker.

L(p, q) is presented by the chain link on the Hirzebruch-Jung expansion
of p/q.  The surgery-side value is computed symbolically once per (p, q)
via delta_refined with the c-sequence images t_i = t^(c_i), then
specialized at each root of unity; the literal c-sequence exponents keep
the symbolic answer in the paper's shape."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .algebra import Cyclotomic, MultiLaurent, RatFunc
from .algebra.palette import PaletteGroup
from .errors import (BadIndexSet, C1Mismatch, DenominatorVanishes,
                     InvalidLensSpec, SurgeryClosedMismatch)
from .linkdiag import chain_diagram
from .manifold import OmegaClass, SurgeryPresentation, make_omega


@dataclass(frozen=True)
class LensSpec:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 2:
            raise InvalidLensSpec(f"p must be >= 2, got {self.p}")
        q = self.q % self.p
        if q == 0 or gcd(self.p, q) != 1:
            raise InvalidLensSpec(f"q = {self.q} is not a unit mod {self.p}")
        object.__setattr__(self, "q", q)


@dataclass(frozen=True)
class HJExpansion:
    p: int
    q: int
    coefficients: tuple

    def __post_init__(self):
        if any(a < 2 for a in self.coefficients):
            raise InvalidLensSpec("every HJ coefficient must be >= 2")
        if self.evaluate() != Fraction(self.p, self.q):
            raise InvalidLensSpec("expansion does not evaluate to p/q")

    def evaluate(self) -> Fraction:
        acc = Fraction(self.coefficients[-1])
        for a in reversed(self.coefficients[:-1]):
            acc = a - 1 / acc
        return acc

    def __len__(self):
        return len(self.coefficients)


def hj_continued_fraction(p: int, q: int) -> HJExpansion:
    """The unique all->=2 expansion p/q = a1 - 1/(a2 - 1/(... - 1/an))."""
    spec = LensSpec(p, q)
    p, q = spec.p, spec.q
    coeffs = []
    a, b = p, q
    while True:
        c = -(-a // b)  # ceil(a/b)
        coeffs.append(c)
        a, b = b, c * b - a
        if b == 0:
            break
    return HJExpansion(p, q, tuple(coeffs))


def c_sequence(expansion: HJExpansion):
    """The recursion c_{n+1}=0, c_n=1, c_i = -a_{i+1} c_{i+1} - c_{i+2};
    returns (c_1, ..., c_{n+1}) and checks c_1 = (-1)^(n-1) q."""
    a = expansion.coefficients
    n = len(a)
    c = [0] * (n + 1)
    c[n - 1] = 1  # c_n; c[n] stays 0 for c_{n+1}
    for i in range(n - 2, -1, -1):
        c[i] = -a[i + 1] * c[i + 1] - c[i + 2]
    expected = (-1) ** (n - 1) * expansion.q
    if c[0] != expected:
        raise C1Mismatch(f"c_1 = {c[0]}, expected {expected}")
    return tuple(c)


def chain_presentation(p: int, q: int) -> SurgeryPresentation:
    return SurgeryPresentation(
        chain_diagram(hj_continued_fraction(p, q).coefficients))


def lens_omega_symbolic(p: int, q: int):
    """The presentation of L(p, q) with the c-sequence images t_i = t^(c_i).

    Returns (presentation, omega); the palette group carries torsion of
    order p (formal when p is even) so the surgery relations hold."""
    expansion = hj_continued_fraction(p, q)
    pres = chain_presentation(p, q)
    cs = c_sequence(expansion)[:-1]
    group = PaletteGroup(1, p, formal=(p % 2 == 0))
    omega = make_omega(pres, group,
                       [group.element(torsion=c) for c in cs])
    return pres, omega


def lens_closed_formula(p: int, q: int, t=None):
    """-1 / ((t^2 - t^-2) (t^2q - t^-2q)); symbolic RatFunc when t is None."""
    q = LensSpec(p, q).q
    if t is None:
        t2 = MultiLaurent.var(1, 0, 2)
        t2q = MultiLaurent.var(1, 0, 2 * q)
        den = (t2 - t2.invert_vars()) * (t2q - t2q.invert_vars())
        return RatFunc(MultiLaurent.constant(1, -1), den)
    if not isinstance(t, Cyclotomic):
        raise TypeError("t must be a Cyclotomic or None")
    d1 = t ** 2 - t ** -2
    d2 = t ** (2 * q) - t ** (-2 * q)
    if d1.is_zero() or d2.is_zero():
        raise DenominatorVanishes("t^4 = 1 or t^(4q) = 1")
    return -1 / (d1 * d2)


def _odd_part(m: int) -> int:
    while m % 2 == 0:
        m //= 2
    return m


def lens_omega_images(p: int, m: int):
    """Torsion exponents e (of zeta_m) of the nontrivial homomorphisms
    Z/p -> Z/m subgroup of G; empty when gcd with the odd part is 1."""
    m = _odd_part(m)
    if m <= 1:
        return m, []
    g = gcd(p, m)
    step = m // g
    return m, [k * step for k in range(1, g)]


def lens_invariant_table(p: int, m: int | None = None):
    """Closed-formula vs surgery values over all (q, omega); exact equality
    of the two columns is enforced, a mismatch raises."""
    if p < 2:
        raise InvalidLensSpec(f"p must be >= 2, got {p}")
    if m is None:
        m = p
    m_odd, exps = lens_omega_images(p, m)
    rows = []
    reason = None
    if not exps:
        reason = (f"no nontrivial homomorphism from Z/{p} into odd-torsion "
                  f"order {m_odd}")
    qs = [q for q in range(1, p) if gcd(q, p) == 1]

    def q_rows(q):
        from .manifold import delta_refined
        pres, omega = lens_omega_symbolic(p, q)
        symbolic = delta_refined(pres, omega, mode="symbolic")
        out = []
        for e in exps:
            zeta = Cyclotomic.zeta(m_odd, e)
            closed = lens_closed_formula(p, q, zeta)
            surgery = symbolic.evaluate([zeta])
            if closed != surgery:
                raise SurgeryClosedMismatch(
                    f"L({p},{q}) at zeta_{m_odd}^{e}: closed {closed!r} "
                    f"!= surgery {surgery!r}")
            out.append({"p": p, "q": q, "k": e, "closed": closed,
                        "surgery": surgery, "equal": True})
        return out

    if exps:
        workers = max(1, int(os.environ.get("GL11_THREADS", "1")))
        if workers > 1:
            with ThreadPoolExecutor(max_workers=workers) as pool:
                chunks = list(pool.map(q_rows, qs))
        else:
            chunks = [q_rows(q) for q in qs]
        for chunk in chunks:
            rows.extend(chunk)
    return {"p": p, "torsion": m_odd, "rows": rows, "reason": reason}


def lens_value_multiset(p: int, q: int):
    """Multiset of Delta(L(p,q), omega) over every nontrivial omega into
    odd-torsion coefficients, via the closed formula."""
    m_odd, exps = lens_omega_images(p, p)
    return [lens_closed_formula(p, q, Cyclotomic.zeta(m_odd, e)) for e in exps]


def arithmetic_partition(p: int):
    """q ~ q' iff q = q' or q q' = 1 (mod p)."""
    qs = [q for q in range(1, p) if gcd(q, p) == 1]
    blocks = []
    seen = set()
    for q in qs:
        if q in seen:
            continue
        inv = next(x for x in qs if (q * x) % p == 1)
        block = sorted({q, inv})
        seen.update(block)
        blocks.append(block)
    return blocks


def classify_lens(p: int):
    """Partition coprime residues by equality of invariant value multisets,
    and compare against the diffeomorphism classification."""
    if p < 2:
        raise InvalidLensSpec(f"p must be >= 2, got {p}")
    qs = [q for q in range(1, p) if gcd(q, p) == 1]
    keys = {}
    for q in qs:
        values = lens_value_multiset(p, q)
        keys[q] = tuple(sorted(v.coeffs for v in values))
    blocks = []
    for q in qs:
        for block in blocks:
            if keys[block[0]] == keys[q]:
                block.append(q)
                break
        else:
            blocks.append([q])
    arith = arithmetic_partition(p)
    merged = [b for b in blocks
              if not any(sorted(b) == sorted(a) for a in arith)]
    return {
        "p": p,
        "partition": [sorted(b) for b in blocks],
        "arithmetic_partition": arith,
        "matches_arithmetic": not merged,
        "coarser_blocks": [sorted(b) for b in merged],
        "no_invariants": _odd_part(p) == 1,
    }


def franz_check(a: dict, p: int):
    """Evaluate the three Franz conditions for an integer sequence indexed
    by the invertible residues mod p; condition (3) runs over the
    primitive d-th roots of unity for every divisor d > 1 of p."""
    if p < 3:
        raise BadIndexSet(f"p must be >= 3, got {p}")
    units = {i for i in range(1, p) if gcd(i, p) == 1}
    if set(a) != units:
        raise BadIndexSet("sequence must be indexed by the units mod p")
    cond1 = sum(a.values()) == 0
    cond2 = all(a[i] == a[(-i) % p] for i in units)
    failures = []
    for d in range(2, p + 1):
        if p % d:
            continue
        for j in range(1, d):
            if gcd(j, d) != 1:
                continue
            value = Cyclotomic.one(d)
            for i in units:
                base = Cyclotomic.zeta(d, i * j) - 1
                value = value * base ** a[i]
            if value != 1:
                failures.append({"d": d, "j": j, "value": value})
    cond3 = not failures
    return {
        "condition1": cond1,
        "condition2": cond2,
        "condition3": cond3,
        "all_pass": cond1 and cond2 and cond3,
        "condition3_failures": failures,
    }
