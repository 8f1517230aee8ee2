"""Exact polynomials and rational functions in q (and in q, t).

All values are immutable and kept in a canonical form, so equality of values
is equality of representations.  Arithmetic is delegated to FLINT through
``python-flint``; this module only fixes normalization, rendering and the
JSON wire format.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from numbers import Integral, Rational

from flint import fmpq, fmpq_poly, fmpz, fmpz_mpoly_ctx, fmpz_poly

__all__ = [
    "QPoly",
    "RatFun",
    "QTRatFun",
    "PoleError",
    "parse_qpoly",
    "parse_ratfun",
    "reverse_and_scale",
    "substitute_power",
    "specialize_t",
    "q_int",
    "q_factorial",
]


class PoleError(ArithmeticError):
    """Raised when a specialization hits a pole that does not cancel."""

    def __init__(self, msg, order):
        super().__init__(msg)
        self.order = order


def _frac(c) -> Fraction:
    if isinstance(c, (fmpq, fmpz)):
        c = fmpq(c)
        return Fraction(int(c.p), int(c.q))
    return Fraction(c)


def _fmt_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _render_terms(terms, var_part) -> str:
    """Render ``[(exponent_key, Fraction)]`` (already sorted) as ``a*q^i+...``."""
    if not terms:
        return "0"
    out = []
    for key, c in terms:
        mono = var_part(key)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = _fmt_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{_fmt_coeff(a)}*{mono}"
        out.append(sign + body)
    s = "".join(out)
    return s[1:] if s.startswith("+") else s


def _q_mono(e: int, var: str = "q") -> str:
    if e == 0:
        return ""
    return var if e == 1 else f"{var}^{e}"


# ---------------------------------------------------------------------------
# univariate polynomials


class QPoly:
    """Polynomial in ``q`` with rational coefficients."""

    __slots__ = ("_p",)

    def __init__(self, value=0):
        if isinstance(value, QPoly):
            p = value._p
        elif isinstance(value, fmpq_poly):
            p = value
        elif isinstance(value, fmpz_poly):
            p = fmpq_poly(value)
        elif isinstance(value, dict):
            deg = max(value, default=-1)
            cs = [Fraction(0)] * (deg + 1)
            for e, c in value.items():
                if e < 0:
                    raise ValueError(f"negative exponent {e}")
                cs[e] += Fraction(c)
            p = _fmpq_poly_from_fractions(cs)
        elif isinstance(value, (list, tuple)):
            p = _fmpq_poly_from_fractions([Fraction(c) for c in value])
        elif isinstance(value, (Integral, Rational, fmpz, fmpq)):
            p = _fmpq_poly_from_fractions([_frac(value)])
        else:
            raise TypeError(f"cannot build QPoly from {type(value).__name__}")
        self._p = p

    @classmethod
    def q(cls, e: int = 1, c=1) -> "QPoly":
        return cls({e: c})

    # -- inspection
    @property
    def flint(self) -> fmpq_poly:
        return self._p

    def degree(self) -> int:
        return self._p.degree()

    def coeffs(self) -> list[Fraction]:
        """Coefficient list, constant term first."""
        return [_frac(c) for c in self._p.coeffs()]

    def terms(self) -> dict[int, Fraction]:
        return {e: c for e, c in enumerate(self.coeffs()) if c}

    def coeff(self, e: int) -> Fraction:
        cs = self._p.coeffs()
        return _frac(cs[e]) if 0 <= e < len(cs) else Fraction(0)

    def is_zero(self) -> bool:
        return self._p.is_zero()

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs())

    def is_nonnegative_integral(self) -> bool:
        return all(c.denominator == 1 and c >= 0 for c in self.coeffs())

    def valuation(self) -> int:
        for e, c in enumerate(self.coeffs()):
            if c:
                return e
        raise ValueError("valuation of zero polynomial")

    def __call__(self, x):
        return sum((c * x**e for e, c in self.terms().items()), Fraction(0))

    # -- arithmetic
    def _coerce(self, other):
        if isinstance(other, QPoly):
            return other._p
        if isinstance(other, (Integral, Rational)):
            return QPoly(other)._p
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else QPoly(self._p + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else QPoly(self._p - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else QPoly(o - self._p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else QPoly(self._p * o)

    __rmul__ = __mul__

    def __neg__(self):
        return QPoly(-self._p)

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative power of a polynomial")
        return QPoly(self._p**k)

    def __truediv__(self, other):
        return RatFun(self) / other

    def __eq__(self, other):
        if isinstance(other, RatFun):
            return other == self
        o = self._coerce(other)
        return False if o is NotImplemented else self._p == o

    def __hash__(self):
        return hash(tuple(self.coeffs()))

    # -- transforms
    def substitute_power(self, k: int) -> "QPoly":
        if k < 1:
            raise ValueError("substitute_power needs k >= 1")
        return QPoly({e * k: c for e, c in self.terms().items()})

    def reverse_and_scale(self, d: int) -> "QPoly":
        """Return ``q^d * p(1/q)``."""
        if not self.is_zero() and d < self.degree():
            raise ValueError(f"scale {d} below degree {self.degree()}: negative exponents")
        if d < 0:
            raise ValueError("scale must be nonnegative")
        return QPoly({d - e: c for e, c in self.terms().items()})

    # -- rendering
    def __str__(self):
        return self.render()

    def render(self, ascending: bool = False, times: str = "*") -> str:
        """Descending ``q^8+2*q^7`` by default; ``ascending`` gives ``1+q+2q^2`` style."""
        ts = sorted(self.terms().items(), reverse=not ascending)
        s = _render_terms(ts, _q_mono)
        return s if times == "*" else s.replace("*", times)

    def __repr__(self):
        return f"QPoly({str(self)!r})"

    def to_json(self) -> list:
        return [[e, _fmt_coeff(c)] for e, c in sorted(self.terms().items())]

    @classmethod
    def from_json(cls, data) -> "QPoly":
        return cls({int(e): Fraction(c) for e, c in data})


def _fmpq_poly_from_fractions(cs) -> fmpq_poly:
    den = math.lcm(1, *(c.denominator for c in cs))
    ints = [int(c * den) for c in cs]
    return fmpq_poly(ints, den) if den != 1 else fmpq_poly(ints)


# ---------------------------------------------------------------------------
# univariate rational functions


def _to_fmpz_pair(p: fmpq_poly):
    """Split a rational polynomial into (integer poly, positive integer denominator)."""
    d = p.denom()
    return fmpz_poly(p.numer()), int(d)


class RatFun:
    """Reduced fraction ``num/den`` of integer polynomials in ``q``.

    Canonical form: ``gcd(num, den) = 1`` over Z[q] (content included) and the
    leading coefficient of ``den`` is positive.
    """

    __slots__ = ("_n", "_d")

    def __init__(self, num=0, den=1):
        n = _as_fmpq_poly(num)
        d = _as_fmpq_poly(den)
        if d.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        nz, nd = _to_fmpz_pair(n)
        dz, dd = _to_fmpz_pair(d)
        # num/den = (nz/nd) / (dz/dd) = (nz*dd) / (dz*nd)
        self._n, self._d = _canon(nz * dd, dz * nd)

    @classmethod
    def _raw(cls, n: fmpz_poly, d: fmpz_poly) -> "RatFun":
        obj = object.__new__(cls)
        obj._n, obj._d = n, d
        return obj

    @classmethod
    def _make(cls, n: fmpz_poly, d: fmpz_poly) -> "RatFun":
        if d.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return cls._raw(*_canon(n, d))

    # -- inspection
    @property
    def num(self) -> QPoly:
        return QPoly(self._n)

    @property
    def den(self) -> QPoly:
        return QPoly(self._d)

    def is_zero(self) -> bool:
        return self._n.is_zero()

    def is_polynomial(self) -> bool:
        return self._d.degree() == 0

    def as_qpoly(self) -> QPoly:
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return QPoly(fmpq_poly(self._n) / int(self._d.coeffs()[0]))

    def __call__(self, x):
        d = self.den(x)
        if d == 0:
            raise ZeroDivisionError(f"pole at q={x}")
        return self.num(x) / d

    # -- arithmetic
    @staticmethod
    def _coerce(other):
        if isinstance(other, RatFun):
            return other
        if isinstance(other, (QPoly, Integral, Rational)):
            return RatFun(other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if self._d == o._d:
            return RatFun._make(self._n + o._n, self._d)
        return RatFun._make(self._n * o._d + o._n * self._d, self._d * o._d)

    __radd__ = __add__

    def __neg__(self):
        return RatFun._raw(-self._n, self._d)

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return RatFun._make(self._n * o._n, self._d * o._d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RatFun._make(self._n * o._d, self._d * o._n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else o / self

    def __pow__(self, k: int):
        if k >= 0:
            return RatFun._raw(self._n**k, self._d**k)
        return RatFun(1) / (self ** (-k))

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self._n == o._n and self._d == o._d

    def __hash__(self):
        return hash((tuple(int(c) for c in self._n.coeffs()), tuple(int(c) for c in self._d.coeffs())))

    def __bool__(self):
        return not self.is_zero()

    # -- transforms
    def substitute_power(self, k: int) -> "RatFun":
        if k < 1:
            raise ValueError("substitute_power needs k >= 1")
        return RatFun._make(self._n.inflate(k), self._d.inflate(k))

    # -- rendering
    def __str__(self):
        if self.is_polynomial():
            return str(self.as_qpoly())
        return f"({QPoly(self._n)})/({QPoly(self._d)})"

    def __repr__(self):
        return f"RatFun({str(self)!r})"

    def to_json(self) -> dict:
        return {"num": QPoly(self._n).to_json(), "den": QPoly(self._d).to_json()}

    @classmethod
    def from_json(cls, data) -> "RatFun":
        if isinstance(data, str):
            return parse_ratfun(data)
        return cls(QPoly.from_json(data["num"]), QPoly.from_json(data["den"]))


def _as_fmpq_poly(x) -> fmpq_poly:
    if isinstance(x, QPoly):
        return x.flint
    if isinstance(x, (fmpq_poly, fmpz_poly)):
        return fmpq_poly(x)
    if isinstance(x, RatFun):
        raise TypeError("nested RatFun; divide instead")
    return QPoly(x).flint


def _canon(n: fmpz_poly, d: fmpz_poly):
    if n.is_zero():
        return fmpz_poly([]), fmpz_poly([1])
    g = n.gcd(d)
    if not g.is_one():
        n = _exact_div(n, g)
        d = _exact_div(d, g)
    if d.leading_coefficient() < 0:
        n, d = -n, -d
    return n, d


def _exact_div(a: fmpz_poly, b: fmpz_poly) -> fmpz_poly:
    return a / b


# convenience constructors


def q_int(k: int) -> QPoly:
    """The q-integer ``1 + q + ... + q^(k-1)``."""
    return QPoly([1] * k) if k > 0 else QPoly(0)


def q_factorial(k: int) -> QPoly:
    out = QPoly(1)
    for j in range(1, k + 1):
        out = out * q_int(j)
    return out


def reverse_and_scale(p: QPoly, d: int) -> QPoly:
    return QPoly(p).reverse_and_scale(d)


def substitute_power(f, k: int):
    return f.substitute_power(k)


# ---------------------------------------------------------------------------
# parsing of the rendered forms

_TERM = re.compile(r"([+-]?)(?:(\d+(?:/\d+)?)(?:\*(?=[qt]))?)?(?:([qt])(?:\^(\d+))?(?:\*?([qt])(?:\^(\d+))?)?)?")


def _parse_terms(s: str, variables=("q",)):
    s = s.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial string")
    pos, terms = 0, []
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        sign, coef, v1, e1, v2, e2 = m.groups()
        if coef is None and v1 is None:
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
        c = Fraction(coef) if coef else Fraction(1)
        if sign == "-":
            c = -c
        exps = dict.fromkeys(variables, 0)
        for v, e in ((v1, e1), (v2, e2)):
            if v is None:
                continue
            if v not in exps:
                raise ValueError(f"unknown variable {v!r}")
            exps[v] += int(e) if e else 1
        terms.append((tuple(exps[v] for v in variables), c))
        pos = m.end()
        if pos < len(s) and s[pos] not in "+-":
            raise ValueError(f"cannot parse polynomial near {s[pos:]!r}")
    return terms


def parse_qpoly(s: str) -> QPoly:
    out: dict[int, Fraction] = {}
    for (e,), c in _parse_terms(s):
        out[e] = out.get(e, 0) + c
    return QPoly(out)


def _split_fraction(s: str):
    s = s.strip()
    if not s.startswith("("):
        return s, None
    depth = 0
    for i, ch in enumerate(s):
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0:
            head, rest = s[1:i], s[i + 1 :].strip()
            if not rest:
                return head, None
            if not rest.startswith("/"):
                raise ValueError(f"malformed rational function {s!r}")
            tail = rest[1:].strip()
            if tail.startswith("(") and tail.endswith(")"):
                tail = tail[1:-1]
            return head, tail
    raise ValueError(f"unbalanced parentheses in {s!r}")


def parse_ratfun(s: str) -> RatFun:
    num, den = _split_fraction(s)
    n = parse_qpoly(num)
    return RatFun(n) if den is None else RatFun(n, parse_qpoly(den))


# ---------------------------------------------------------------------------
# bivariate rational functions

QT = fmpz_mpoly_ctx.get(("q", "t"), "lex")
_Q, _T = QT.gens()


def _mono_qt(key) -> str:
    i, j = key
    return "*".join(x for x in (_q_mono(i, "q"), _q_mono(j, "t")) if x)


class QTRatFun:
    """Reduced fraction of integer polynomials in ``q`` and ``t``."""

    __slots__ = ("_n", "_d")

    def __init__(self, num=0, den=1):
        n, d = _as_mpoly(num), _as_mpoly(den)
        if d.is_zero():
            raise ZeroDivisionError("zero denominator")
        self._n, self._d = _canon_qt(n, d)

    @classmethod
    def _make(cls, n, d):
        if d.is_zero():
            raise ZeroDivisionError("zero denominator")
        obj = object.__new__(cls)
        obj._n, obj._d = _canon_qt(n, d)
        return obj

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "QTRatFun":
        """``c * q^i * t^j`` with possibly negative exponents."""
        n = QT.from_dict({(max(i, 0), max(j, 0)): c})
        d = QT.from_dict({(max(-i, 0), max(-j, 0)): 1})
        return cls._make(n, d)

    @classmethod
    def q(cls):
        return cls.monomial(1, 0)

    @classmethod
    def t(cls):
        return cls.monomial(0, 1)

    # -- inspection
    def num_dict(self) -> dict:
        return {tuple(int(x) for x in k): int(v) for k, v in self._n.to_dict().items()}

    def den_dict(self) -> dict:
        return {tuple(int(x) for x in k): int(v) for k, v in self._d.to_dict().items()}

    def is_zero(self) -> bool:
        return self._n.is_zero()

    def t1_order(self) -> int:
        """Order of vanishing at t=1 (negative for a pole)."""
        return _mult_t1(self._n) - _mult_t1(self._d)

    def num_t1_multiplicity(self) -> int:
        return _mult_t1(self._n)

    def den_t1_multiplicity(self) -> int:
        return _mult_t1(self._d)

    # -- arithmetic
    @staticmethod
    def _coerce(o):
        if isinstance(o, QTRatFun):
            return o
        if isinstance(o, (Integral, Rational)):
            return QTRatFun(o)
        if isinstance(o, (QPoly, RatFun)):
            r = RatFun(o) if isinstance(o, QPoly) else o
            return QTRatFun._make(_uni_to_mpoly(r._n), _uni_to_mpoly(r._d))
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QTRatFun._make(self._n * o._d + o._n * self._d, self._d * o._d)

    __radd__ = __add__

    def __neg__(self):
        obj = object.__new__(QTRatFun)
        obj._n, obj._d = -self._n, self._d
        return obj

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        return QTRatFun._make(self._n * o._n, self._d * o._d)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero")
        return QTRatFun._make(self._n * o._d, self._d * o._n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else o / self

    def __pow__(self, k: int):
        if k >= 0:
            return QTRatFun._make(self._n**k, self._d**k)
        return QTRatFun(1) / self ** (-k)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self._n == o._n and self._d == o._d

    def __hash__(self):
        return hash((tuple(sorted(self.num_dict().items())), tuple(sorted(self.den_dict().items()))))

    # -- transforms
    def swap_qt(self) -> "QTRatFun":
        sw = lambda p: QT.from_dict({(k[1], k[0]): v for k, v in p.to_dict().items()})
        return QTRatFun._make(sw(self._n), sw(self._d))

    def specialize_t(self, value: int = 1) -> RatFun:
        if value != 1:
            raise NotImplementedError("only t=1 specialization is supported")
        den = self._d.subs({"t": 1})
        if den.is_zero():
            order = _mult_t1(self._d)
            raise PoleError(f"pole of order {order} at t=1", order)
        return RatFun._make(_mpoly_to_uni(self._n.subs({"t": 1})), _mpoly_to_uni(den))

    # -- rendering
    def _render(self, p) -> str:
        ts = sorted(((tuple(k), Fraction(int(v))) for k, v in p.to_dict().items()), reverse=True)
        return _render_terms(ts, _mono_qt)

    def __str__(self):
        if self._d.is_one():
            return self._render(self._n)
        return f"({self._render(self._n)})/({self._render(self._d)})"

    def __repr__(self):
        return f"QTRatFun({str(self)!r})"

    def to_json(self) -> dict:
        enc = lambda d: [[i, j, c] for (i, j), c in sorted(d.items())]
        return {"num": enc(self.num_dict()), "den": enc(self.den_dict())}

    @classmethod
    def from_json(cls, data) -> "QTRatFun":
        dec = lambda rows: QT.from_dict({(int(i), int(j)): int(c) for i, j, c in rows}) if rows else QT.from_dict({})
        return cls._make(dec(data["num"]), dec(data["den"]))


def _as_mpoly(x):
    if isinstance(x, type(_Q)):
        return x
    if isinstance(x, (Integral,)):
        return QT.from_dict({(0, 0): int(x)}) if x else QT.from_dict({})
    raise TypeError(f"cannot build a q,t polynomial from {type(x).__name__}")


def _canon_qt(n, d):
    if n.is_zero():
        return QT.from_dict({}), QT.from_dict({(0, 0): 1})
    g = n.gcd(d)
    if not g.is_one():
        n, d = n / g, d / g
    if d.leading_coefficient() < 0:
        n, d = -n, -d
    return n, d


_T_MINUS_1 = _T - 1


def _mult_t1(p) -> int:
    k = 0
    while not p.is_zero() and p.subs({"t": 1}).is_zero():
        p = p / _T_MINUS_1
        k += 1
    return k


def _uni_to_mpoly(p: fmpz_poly):
    return QT.from_dict({(e, 0): int(c) for e, c in enumerate(p.coeffs()) if c})


def _mpoly_to_uni(p) -> fmpz_poly:
    d = p.to_dict()
    if not d:
        return fmpz_poly([])
    deg = max(k[0] for k in d)
    cs = [0] * (deg + 1)
    for k, v in d.items():
        cs[k[0]] += int(v)
    return fmpz_poly(cs)


def specialize_t(f: QTRatFun, value: int = 1) -> RatFun:
    return f.specialize_t(value)


def parse_qtpoly(s: str) -> QTRatFun:
    out = {}
    for key, c in _parse_terms(s, ("q", "t")):
        if c.denominator != 1:
            raise ValueError("q,t polynomials carry integer coefficients")
        out[key] = out.get(key, 0) + int(c)
    return QTRatFun._make(QT.from_dict({k: v for k, v in out.items() if v}), QT.from_dict({(0, 0): 1}))
