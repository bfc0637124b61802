"""Sparse multivariate Laurent polynomials and their fractions.

A Laurent polynomial in r variables is a map from integer exponent
vectors to nonzero rational coefficients.  RatFunc keeps a gcd-reduced,
unit-normalized pair of Laurent polynomials so that equal rational
functions compare equal syntactically; this canonical form is what the
Kirby-expansion cross-checks rely on.

The polynomial helpers at the top work on plain dicts with non-negative
exponents; the Laurent layer shifts in and out of that world.
"""

from __future__ import annotations

import math
from fractions import Fraction

from ..errors import DenominatorVanishes, DivisionByZero, InternalExactnessFailure
from .cyclotomic import Cyclotomic

# ----------------------------------------------------------------------
# dict-polynomial helpers (exponents are tuples of non-negative ints)
# ----------------------------------------------------------------------


def _d_add(f, g):
    out = dict(f)
    for e, c in g.items():
        s = out.get(e, 0) + c
        if s:
            out[e] = s
        else:
            out.pop(e, None)
    return out


def _d_neg(f):
    return {e: -c for e, c in f.items()}


def _d_sub(f, g):
    return _d_add(f, _d_neg(g))


def _d_mul(f, g):
    if not f or not g:
        return {}
    out = {}
    for e1, c1 in f.items():
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(e1, e2))
            s = out.get(e, 0) + c1 * c2
            if s:
                out[e] = s
            else:
                out.pop(e, None)
    return out


def _d_scale(f, c):
    if c == 0:
        return {}
    return {e: a * c for e, a in f.items()}


def _d_divexact(f, g):
    """Exact division of dict-polynomials; raises if not divisible."""
    if not g:
        raise DivisionByZero("polynomial division by zero")
    if not f:
        return {}
    rem = dict(f)
    quo = {}
    eg = max(g)
    cg = g[eg]
    while rem:
        ef = max(rem)
        diff = tuple(a - b for a, b in zip(ef, eg))
        if any(d < 0 for d in diff):
            raise InternalExactnessFailure("inexact polynomial division")
        c = rem[ef] / cg
        quo[diff] = c
        for e2, c2 in g.items():
            e = tuple(a + b for a, b in zip(diff, e2))
            s = rem.get(e, 0) - c * c2
            if s:
                rem[e] = s
            else:
                rem.pop(e, None)
    return quo


def _rat_gcd(a: Fraction, b: Fraction) -> Fraction:
    return Fraction(math.gcd(a.numerator, b.numerator),
                    math.lcm(a.denominator, b.denominator))


def _deg_in(f, v):
    return max(e[v] for e in f) if f else -1


def _lc_in(f, v):
    """Leading coefficient of f w.r.t. variable v, as a dict-polynomial."""
    d = _deg_in(f, v)
    return {tuple(0 if i == v else x for i, x in enumerate(e)): c
            for e, c in f.items() if e[v] == d}


def _shift_var(f, v, k):
    return {tuple(x + k if i == v else x for i, x in enumerate(e)): c
            for e, c in f.items()}


def _coeffs_in(f, v):
    out = {}
    for e, c in f.items():
        key = e[v]
        red = tuple(0 if i == v else x for i, x in enumerate(e))
        out.setdefault(key, {})[red] = c
    return out


def _prem(f, g, v):
    """Pseudo-remainder of f by g w.r.t. variable v: lc(g)^(df-dg+1) f mod g."""
    df, dg = _deg_in(f, v), _deg_in(g, v)
    lg = _lc_in(g, v)
    n = df - dg + 1
    rem = f
    while rem and _deg_in(rem, v) >= dg:
        lr = _lc_in(rem, v)
        dr = _deg_in(rem, v)
        rem = _d_sub(_d_mul(lg, rem), _d_mul(_shift_var(lr, v, dr - dg), g))
        n -= 1
    for _ in range(n):
        rem = _d_mul(lg, rem)
    return rem


def _poly_content_in(f, v):
    cont = {}
    for part in _coeffs_in(f, v).values():
        cont = _poly_gcd(cont, part)
    return cont


def _poly_primitive_in(f, v):
    if not f:
        return f
    return _d_divexact(f, _poly_content_in(f, v))


def _normalize_primitive(f):
    """Scale to coprime integer coefficients with positive lex-leading coefficient."""
    if not f:
        return f
    num_gcd = 0
    den_lcm = 1
    for c in f.values():
        num_gcd = math.gcd(num_gcd, c.numerator)
        den_lcm = math.lcm(den_lcm, c.denominator)
    scale = Fraction(den_lcm, num_gcd)
    if f[max(f)] < 0:
        scale = -scale
    return _d_scale(f, scale)


def _poly_gcd(f, g):
    """Gcd of dict-polynomials over Q via the primitive PRS, normalized primitive."""
    if not f:
        return _normalize_primitive(g)
    if not g:
        return _normalize_primitive(f)
    main = None
    for e in list(f) + list(g):
        for v, x in enumerate(e):
            if x > 0 and (main is None or v > main):
                main = v
    if main is None:
        gc = _rat_gcd(next(iter(f.values())), next(iter(g.values())))
        return {next(iter(f)): gc}
    cont_f = _poly_content_in(f, main)
    cont_g = _poly_content_in(g, main)
    c = _poly_gcd(cont_f, cont_g)
    a = _d_divexact(f, cont_f)
    b = _d_divexact(g, cont_g)
    if _deg_in(a, main) < _deg_in(b, main):
        a, b = b, a
    while b:
        rem = _prem(a, b, main)
        a, b = b, (_poly_primitive_in(rem, main) if rem else {})
    return _normalize_primitive(_d_mul(c, _poly_primitive_in(a, main)))


# ----------------------------------------------------------------------
# Laurent polynomials
# ----------------------------------------------------------------------


class MultiLaurent:
    """Laurent polynomial in ``nvars`` variables with exact rational coefficients."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms=None):
        clean = {}
        for e, c in (terms or {}).items():
            c = Fraction(c)
            if c != 0:
                e = tuple(int(x) for x in e)
                if len(e) != nvars:
                    raise ValueError("exponent vector length mismatch")
                clean[e] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *args):
        raise AttributeError("MultiLaurent values are immutable")

    # constructors ---------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "MultiLaurent":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c) -> "MultiLaurent":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def one(cls, nvars: int) -> "MultiLaurent":
        return cls.constant(nvars, 1)

    @classmethod
    def var(cls, nvars: int, i: int, power: int = 1) -> "MultiLaurent":
        e = [0] * nvars
        e[i] = power
        return cls(nvars, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, exps, coeff=1) -> "MultiLaurent":
        return cls(nvars, {tuple(exps): Fraction(coeff)})

    # predicates -----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(x == 0 for x in e) for e in self.terms)

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_constant():
            raise ValueError("not a constant")
        return next(iter(self.terms.values()))

    # arithmetic -----------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, MultiLaurent):
            if other.nvars != self.nvars:
                raise ValueError("variable counts differ")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiLaurent.constant(self.nvars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return MultiLaurent(self.nvars, _d_add(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return MultiLaurent(self.nvars, _d_neg(self.terms))

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
        return MultiLaurent(self.nvars, _d_mul(self.terms, other.terms))

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            if not self.is_monomial():
                raise ValueError("negative powers only for monomials")
            (exp, c), = self.terms.items()
            return MultiLaurent(self.nvars, {tuple(x * e for x in exp): c ** e})
        result = MultiLaurent.one(self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, MultiLaurent) else other
        if other is None or not isinstance(other, MultiLaurent):
            return NotImplemented
        return self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self):
        return hash((self.nvars, tuple(sorted(self.terms.items()))))

    # structure ------------------------------------------------------

    def min_exponents(self):
        if self.is_zero():
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def max_exponents(self):
        if self.is_zero():
            return (0,) * self.nvars
        return tuple(max(e[i] for e in self.terms) for i in range(self.nvars))

    def lex_least_term(self):
        e = min(self.terms)
        return e, self.terms[e]

    def shifted(self, delta) -> "MultiLaurent":
        """Multiply by the monomial with exponent vector ``delta``."""
        return MultiLaurent(
            self.nvars,
            {tuple(a + b for a, b in zip(e, delta)): c for e, c in self.terms.items()})

    def scaled(self, c) -> "MultiLaurent":
        return MultiLaurent(self.nvars, _d_scale(self.terms, Fraction(c)))

    def invert_vars(self) -> "MultiLaurent":
        """Substitute every variable by its inverse."""
        return MultiLaurent(self.nvars,
                            {tuple(-x for x in e): c for e, c in self.terms.items()})

    def map_monomials(self, images, out_nvars: int) -> "MultiLaurent":
        """Substitute variable i by the monomial with exponent vector images[i]."""
        out = {}
        for e, c in self.terms.items():
            tgt = [0] * out_nvars
            for i, x in enumerate(e):
                if x:
                    img = images[i]
                    for j, y in enumerate(img):
                        tgt[j] += x * y
            key = tuple(tgt)
            s = out.get(key, 0) + c
            if s:
                out[key] = s
            else:
                out.pop(key, None)
        return MultiLaurent(out_nvars, out)

    def square_vars(self) -> "MultiLaurent":
        return MultiLaurent(self.nvars,
                            {tuple(2 * x for x in e): c for e, c in self.terms.items()})

    def evaluate(self, values):
        """Evaluate with one Cyclotomic (or Fraction) value per variable."""
        order = None
        for v in values:
            if isinstance(v, Cyclotomic):
                order = v.order
                break
        if order is None:
            acc = Fraction(0)
            for e, c in self.terms.items():
                term = Fraction(c)
                for i, x in enumerate(e):
                    term *= Fraction(values[i]) ** x
                acc += term
            return acc
        vals = [v if isinstance(v, Cyclotomic) else Cyclotomic.from_rational(order, v)
                for v in values]
        acc = Cyclotomic.zero(order)
        for e, c in self.terms.items():
            term = Cyclotomic.from_rational(order, c)
            for i, x in enumerate(e):
                if x:
                    term = term * vals[i] ** x
            acc = acc + term
        return acc

    # serialization ---------------------------------------------------

    def to_json(self):
        terms = [[list(e), str(c)] for e, c in sorted(self.terms.items())]
        return {"nvars": self.nvars, "terms": terms}

    @classmethod
    def from_json(cls, data) -> "MultiLaurent":
        terms = {tuple(e): Fraction(c) for e, c in data["terms"]}
        return cls(data["nvars"], terms)

    def __repr__(self):
        if self.is_zero():
            return "0"
        bits = []
        for e, c in sorted(self.terms.items()):
            mon = "*".join(f"t{i}^{x}" for i, x in enumerate(e) if x)
            bits.append(f"{c}" + (f"*{mon}" if mon else ""))
        return " + ".join(bits)


def laurent_gcd(f: MultiLaurent, g: MultiLaurent) -> MultiLaurent:
    """Gcd up to units, returned with non-negative exponents."""
    if f.is_zero():
        return g
    if g.is_zero():
        return f
    if f.is_monomial() or g.is_monomial():
        # monomials are units of the Laurent ring
        return MultiLaurent.one(f.nvars)
    fp = f.shifted(tuple(-x for x in f.min_exponents()))
    gp = g.shifted(tuple(-x for x in g.min_exponents()))
    # complete cancellations dominate in practice; try trial division first
    for small, big in ((gp, fp), (fp, gp)):
        if len(small.terms) <= len(big.terms):
            try:
                _d_divexact(big.terms, small.terms)
            except InternalExactnessFailure:
                continue
            return small
    return MultiLaurent(f.nvars, _poly_gcd(fp.terms, gp.terms))


def laurent_divexact(f: MultiLaurent, g: MultiLaurent) -> MultiLaurent:
    """Exact Laurent division f/g; raises InternalExactnessFailure otherwise."""
    if g.is_zero():
        raise DivisionByZero("division by the zero polynomial")
    if f.is_zero():
        return MultiLaurent.zero(f.nvars)
    sf = f.min_exponents()
    sg = g.min_exponents()
    fp = f.shifted(tuple(-x for x in sf)).terms
    gp = g.shifted(tuple(-x for x in sg)).terms
    quo = _d_divexact(fp, gp)
    delta = tuple(a - b for a, b in zip(sf, sg))
    return MultiLaurent(f.nvars, quo).shifted(delta)


def laurent_det(rows) -> MultiLaurent:
    """Determinant of a square matrix of MultiLaurent polynomials.

    Laplace expansion row by row with memoization on the remaining column
    set.  Every product multiplies an original matrix entry (a handful of
    terms for Wirtinger matrices) by a cached minor, so nothing ever
    multiplies two large polynomials; there are no divisions.  Rows are
    visited sparsest-first to keep the state count low.
    """
    import sys

    n = len(rows)
    if n == 0:
        return MultiLaurent.one(0)
    nv = rows[0][0].nvars
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    shift_total = [0] * nv
    m = []
    for row in rows:
        mins = [0] * nv
        for entry in row:
            if not entry.is_zero():
                for i, x in enumerate(entry.min_exponents()):
                    mins[i] = min(mins[i], x)
        for i in range(nv):
            shift_total[i] += mins[i]
        m.append({j: entry.shifted(tuple(-x for x in mins)).terms
                  for j, entry in enumerate(row) if not entry.is_zero()})

    order = sorted(range(n), key=lambda i: (len(m[i]), i))
    sign = _permutation_sign(order)
    m = [m[i] for i in order]

    memo = {}

    def minor(r, cols):
        if r == n:
            return {(0,) * nv: Fraction(1)}
        key = (r, cols)
        hit = memo.get(key)
        if hit is not None:
            return hit
        acc = {}
        pos = 0
        for j in sorted(cols):
            entry = m[r].get(j)
            if entry:
                sub = minor(r + 1, cols - {j})
                if sub:
                    term = _d_mul(entry, sub)
                    acc = _d_add(acc, term) if pos % 2 == 0 else _d_sub(acc, term)
            pos += 1
        memo[key] = acc
        return acc

    limit = sys.getrecursionlimit()
    if limit < n + 100:
        sys.setrecursionlimit(n + 200)
    try:
        terms = minor(0, frozenset(range(n)))
    finally:
        sys.setrecursionlimit(limit)
    det = MultiLaurent(nv, terms).shifted(tuple(shift_total))
    return -det if sign < 0 else det


def _permutation_sign(perm) -> int:
    seen = [False] * len(perm)
    sign = 1
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        cur = start
        while not seen[cur]:
            seen[cur] = True
            cur = perm[cur]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


# ----------------------------------------------------------------------
# rational functions
# ----------------------------------------------------------------------


class RatFunc:
    """Quotient of Laurent polynomials in canonical gcd-reduced form.

    The denominator's lexicographically least term is normalized to
    coefficient 1 and exponent 0, so equality of values is equality of
    the (num, den) pairs.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: MultiLaurent, den=None, _canonical=False):
        if den is None:
            den = MultiLaurent.one(num.nvars)
        if isinstance(den, (int, Fraction)):
            den = MultiLaurent.constant(num.nvars, den)
        if den.is_zero():
            raise DenominatorVanishes("zero denominator")
        if num.nvars != den.nvars:
            raise ValueError("variable counts differ")
        if not _canonical:
            num, den = self._reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *args):
        raise AttributeError("RatFunc values are immutable")

    @staticmethod
    def _reduce(num, den):
        if num.is_zero():
            return num, MultiLaurent.one(num.nvars)
        if not (num.is_monomial() or den.is_monomial()):
            g = laurent_gcd(num, den)
            if not g.is_monomial():
                num = laurent_divexact(num, g)
                den = laurent_divexact(den, g)
        e0, c0 = den.lex_least_term()
        num = num.shifted(tuple(-x for x in e0)).scaled(1 / c0)
        den = den.shifted(tuple(-x for x in e0)).scaled(1 / c0)
        return num, den

    # constructors ----------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "RatFunc":
        return cls(MultiLaurent.zero(nvars))

    @classmethod
    def one(cls, nvars: int) -> "RatFunc":
        return cls(MultiLaurent.one(nvars))

    @classmethod
    def constant(cls, nvars: int, c) -> "RatFunc":
        return cls(MultiLaurent.constant(nvars, c))

    @classmethod
    def from_laurent(cls, p: MultiLaurent) -> "RatFunc":
        return cls(p)

    @property
    def nvars(self) -> int:
        return self.num.nvars

    # predicates ------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den == MultiLaurent.one(self.nvars)

    def as_laurent(self) -> MultiLaurent:
        if not self.is_laurent():
            raise ValueError("rational function has a nontrivial denominator")
        return self.num

    # arithmetic ------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.nvars != self.nvars:
                raise ValueError("variable counts differ")
            return other
        if isinstance(other, MultiLaurent):
            return RatFunc(other)
        if isinstance(other, (int, Fraction)):
            return RatFunc.constant(self.nvars, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RatFunc(self.num * other.den + other.num * self.den,
                       self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _canonical=True)

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
        return RatFunc(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RatFunc(self.num * other.den, self.den * other.num)

    def __rtruediv__(self, other):
        return RatFunc.constant(self.nvars, other) / self

    def __pow__(self, e: int):
        if e < 0:
            return (RatFunc.one(self.nvars) / self) ** (-e)
        result = RatFunc.one(self.nvars)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __eq__(self, other):
        other = self._coerce(other) if not isinstance(other, RatFunc) else other
        if other is None or not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    # substitution ----------------------------------------------------

    def invert_vars(self) -> "RatFunc":
        return RatFunc(self.num.invert_vars(), self.den.invert_vars())

    def square_vars(self) -> "RatFunc":
        return RatFunc(self.num.square_vars(), self.den.square_vars(),
                       _canonical=True)

    def invert_var(self, i: int) -> "RatFunc":
        def flip(p):
            return MultiLaurent(
                p.nvars,
                {tuple(-x if j == i else x for j, x in enumerate(e)): c
                 for e, c in p.terms.items()})
        return RatFunc(flip(self.num), flip(self.den))

    def map_monomials(self, images, out_nvars: int) -> "RatFunc":
        return RatFunc(self.num.map_monomials(images, out_nvars),
                       self.den.map_monomials(images, out_nvars))

    def evaluate(self, values):
        """Exact value at one Cyclotomic (or Fraction) per variable."""
        den_v = self.den.evaluate(values)
        vanishes = (den_v == 0) if isinstance(den_v, Fraction) else den_v.is_zero()
        if vanishes:
            raise DenominatorVanishes("denominator vanishes under the assignment")
        num_v = self.num.evaluate(values)
        return num_v / den_v

    # serialization ---------------------------------------------------

    def to_json(self):
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, data) -> "RatFunc":
        return cls(MultiLaurent.from_json(data["num"]),
                   MultiLaurent.from_json(data["den"]))

    def __repr__(self):
        if self.is_laurent():
            return repr(self.num)
        return f"({self.num!r}) / ({self.den!r})"


def substitute(f: RatFunc, assignment):
    """Evaluate f under a total assignment of its variables.

    Values may be Cyclotomic (all of them, giving a Cyclotomic result)
    or MultiLaurent/RatFunc over a common target ring (giving a RatFunc).
    """
    n = f.nvars
    values = [assignment[i] for i in range(n)]
    if all(isinstance(v, (Cyclotomic, int, Fraction)) for v in values) and any(
            isinstance(v, Cyclotomic) for v in values):
        return f.evaluate(values)
    coerced = []
    out_nvars = None
    for v in values:
        if isinstance(v, MultiLaurent):
            v = RatFunc(v)
        if not isinstance(v, RatFunc):
            raise TypeError("assignments must be Cyclotomic or Laurent values")
        if out_nvars is None:
            out_nvars = v.nvars
        elif v.nvars != out_nvars:
            raise ValueError("assignment values live in different rings")
        coerced.append(v)

    def eval_laurent(p: MultiLaurent) -> RatFunc:
        acc = RatFunc.zero(out_nvars)
        for e, c in p.terms.items():
            term = RatFunc.constant(out_nvars, c)
            for i, x in enumerate(e):
                if x:
                    term = term * coerced[i] ** x
            acc = acc + term
        return acc

    den_v = eval_laurent(f.den)
    if den_v.is_zero():
        raise DenominatorVanishes("denominator vanishes under the assignment")
    return eval_laurent(f.num) / den_v
