"""Exact arithmetic in cyclotomic fields Q(zeta_m).

Elements are stored in the power basis 1, zeta, ..., zeta^(phi(m)-1)
reduced modulo the m-th cyclotomic polynomial, so equal field elements
have identical coefficient vectors and hash equal.
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import DivisionByZero, OrderMismatch
from . import polys


class Cyclotomic:
    """An element of Q(zeta_m) in the power basis mod Phi_m."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs):
        if order < 1:
            raise ValueError("order must be a positive integer")
        phi = polys.euler_phi(order)
        cs = [Fraction(c) for c in coeffs]
        if len(cs) > phi:
            cs = self._reduce(order, cs)
        cs += [Fraction(0)] * (phi - len(cs))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, *args):
        raise AttributeError("Cyclotomic values are immutable")

    @staticmethod
    def _reduce(order, cs):
        phi_m = list(polys.cyclotomic(order))
        return polys.divmod_exact_field(polys.trim(list(cs)), phi_m)[1]

    # constructors -------------------------------------------------

    @classmethod
    def zero(cls, order: int) -> "Cyclotomic":
        return cls(order, [])

    @classmethod
    def one(cls, order: int) -> "Cyclotomic":
        return cls(order, [Fraction(1)])

    @classmethod
    def from_rational(cls, order: int, value) -> "Cyclotomic":
        return cls(order, [Fraction(value)])

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> "Cyclotomic":
        """zeta_m^power for any integer power (negative powers allowed)."""
        k = power % order
        return cls(order, [Fraction(0)] * k + [Fraction(1)])

    # ring structure -----------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise OrderMismatch(
                    f"cyclotomic orders differ: {self.order} vs {other.order}")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(self.order, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return Cyclotomic(self.order,
                          [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        prod = polys.mul(polys.trim(list(self.coeffs)),
                         polys.trim(list(other.coeffs)))
        return Cyclotomic(self.order, self._reduce(self.order, prod))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise DivisionByZero("inverse of zero in a cyclotomic field")
        phi_m = list(polys.cyclotomic(self.order))
        g, s, _ = polys.xgcd(polys.trim(list(self.coeffs)), phi_m)
        if polys.degree(g) != 0:
            raise ArithmeticError("element not invertible mod Phi_m")
        inv = polys.scale(s, 1 / g[0])
        return Cyclotomic(self.order, self._reduce(self.order, inv))

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        result = Cyclotomic.one(self.order)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # predicates / identity ----------------------------------------

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.order, self.coeffs))

    def __repr__(self):
        terms = [f"{c}*z^{i}" for i, c in enumerate(self.coeffs) if c != 0]
        body = " + ".join(terms) if terms else "0"
        return f"Cyclotomic({self.order}, {body})"

    # serialization -------------------------------------------------

    def to_json(self):
        terms = [[[i], str(c)] for i, c in enumerate(self.coeffs) if c != 0]
        return {"order": self.order, "terms": terms}

    @classmethod
    def from_json(cls, data) -> "Cyclotomic":
        coeffs = {}
        for exps, cstr in data["terms"]:
            coeffs[exps[0]] = Fraction(cstr)
        n = max(coeffs) + 1 if coeffs else 0
        return cls(data["order"], [coeffs.get(i, Fraction(0)) for i in range(n)])


def cyclo_arith(x: Cyclotomic, y: Cyclotomic, op: str) -> Cyclotomic:
    """Field arithmetic dispatcher; op is one of '+', '-', '*', '/'."""
    if x.order != y.order:
        raise OrderMismatch(f"cyclotomic orders differ: {x.order} vs {y.order}")
    if op == "+":
        return x + y
    if op == "-":
        return x - y
    if op == "*":
        return x * y
    if op == "/":
        if y.is_zero():
            raise DivisionByZero("division by zero in Q(zeta_m)")
        return x / y
    raise ValueError(f"unknown operation {op!r}")
