"""Homogeneous symmetric functions over Q(q) in the bases e, h, p and th.

``th_lambda`` is the transformed homogeneous function
``c_lambda(q) * h_lambda[X/(1-q)]`` with
``c_lambda = prod_i prod_{j<=lambda_i} (1 - q^j)``.

All four bases are multiplicative, so products are part-merges of keys.
Conversions go through the power sums.
"""
from __future__ import annotations

import math
import os
import threading
from collections import Counter
from fractions import Fraction
from functools import lru_cache

from .combinat import (
    contingency_count,
    partitions,
    to_partition,
    twist_exponent,
    z_factor,
)
from .qpoly import QPoly, RatFun, parse_ratfun

BASES = ("e", "h", "p", "th")
DEFAULT_DEGREE_CAP = 12

_ONE = RatFun(1)


def degree_cap() -> int:
    raw = os.environ.get("SHALIKA_DEGREE_CAP")
    if raw is None:
        return DEFAULT_DEGREE_CAP
    cap = int(raw)
    if cap < 1:
        raise ValueError("SHALIKA_DEGREE_CAP must be >= 1")
    return cap


class DegreeCapExceeded(ValueError):
    pass


def _check_cap(n: int):
    cap = degree_cap()
    if n > cap:
        raise DegreeCapExceeded(f"degree {n} exceeds the configured cap {cap} (set SHALIKA_DEGREE_CAP)")


def _merge(a, b):
    return tuple(sorted(a + b, reverse=True))


def _basis(name: str) -> str:
    b = name.lower()
    if b not in BASES:
        raise ValueError(f"unknown basis {name!r}; expected one of {', '.join(BASES)}")
    return b


class SymFun:
    """A homogeneous symmetric function: ``sum coeffs[lam] * b_lam``."""

    __slots__ = ("basis", "degree", "coeffs")

    def __init__(self, basis: str, coeffs=None, degree: int | None = None):
        self.basis = _basis(basis)
        clean = {}
        for lam, c in (coeffs or {}).items():
            key = to_partition(lam)
            c = c if isinstance(c, RatFun) else RatFun(c)
            if c.is_zero():
                continue
            clean[key] = clean[key] + c if key in clean else c
            if clean[key].is_zero():
                del clean[key]
        sizes = {sum(k) for k in clean}
        if len(sizes) > 1:
            raise ValueError(f"mixed degrees {sorted(sizes)} in one symmetric function")
        if degree is None:
            degree = sizes.pop() if sizes else 0
        elif sizes and sizes != {degree}:
            raise ValueError(f"declared degree {degree} but keys have degree {sizes.pop()}")
        self.degree = degree
        self.coeffs = clean

    # -- constructors
    @classmethod
    def basis_element(cls, basis: str, lam, coeff=1) -> "SymFun":
        lam = to_partition(lam)
        return cls(basis, {lam: coeff}, sum(lam))

    @classmethod
    def one(cls, basis="e") -> "SymFun":
        return cls(basis, {(): 1}, 0)

    @classmethod
    def zero(cls, basis="e", degree=0) -> "SymFun":
        return cls(basis, {}, degree)

    # -- inspection
    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, lam) -> RatFun:
        return self.coeffs.get(to_partition(lam), RatFun(0))

    def items(self):
        """Terms in ascending lexicographic order of partitions."""
        return sorted(self.coeffs.items())

    def __eq__(self, other):
        if not isinstance(other, SymFun):
            return NotImplemented
        if self.is_zero() and other.is_zero():
            return True
        if self.degree != other.degree:
            return False
        if self.basis != other.basis:
            other = convert(other, self.basis)
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.basis, self.degree, tuple(self.items())))

    # -- linear structure
    def _aligned(self, other: "SymFun") -> "SymFun":
        if not isinstance(other, SymFun):
            raise TypeError("can only combine symmetric functions")
        if other.is_zero():
            return SymFun(self.basis, {}, self.degree)
        if not self.is_zero() and other.degree != self.degree:
            raise ValueError(f"degree mismatch: {self.degree} vs {other.degree}")
        return other if other.basis == self.basis else convert(other, self.basis)

    def __add__(self, other):
        if isinstance(other, SymFun) and self.is_zero():
            return other
        o = self._aligned(other)
        out = dict(self.coeffs)
        for k, c in o.coeffs.items():
            out[k] = out[k] + c if k in out else c
        return SymFun(self.basis, out, self.degree)

    def __neg__(self):
        return SymFun(self.basis, {k: -c for k, c in self.coeffs.items()}, self.degree)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "SymFun":
        c = c if isinstance(c, RatFun) else RatFun(c)
        return SymFun(self.basis, {k: v * c for k, v in self.coeffs.items()}, self.degree)

    def map_coeffs(self, fn) -> "SymFun":
        return SymFun(self.basis, {k: fn(k, v) for k, v in self.coeffs.items()}, self.degree)

    def __mul__(self, other):
        if isinstance(other, SymFun):
            return multiply(self, other)
        if isinstance(other, (int, Fraction, QPoly, RatFun)):
            return self.scale(other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, QPoly, RatFun)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, k: int):
        out = SymFun.one(self.basis)
        for _ in range(k):
            out = multiply(out, self)
        return out

    # -- rendering
    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for lam, c in self.items():
            idx = ",".join(map(str, lam))
            s = str(c)
            if c == 1 or c == -1:
                parts.append(("-" if c == -1 else "") + f"{self.basis}[{idx}]")
            elif c.is_polynomial() and ("+" not in s[1:] and "-" not in s[1:]):
                parts.append(f"{s}*{self.basis}[{idx}]")
            else:
                parts.append(f"({s})*{self.basis}[{idx}]")
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"SymFun({self.basis!r}, degree={self.degree}, {str(self)!r})"

    def to_latex(self) -> str:
        """Typeset in the style of a computer-algebra pretty printer."""
        if self.is_zero():
            return "0"
        out = []
        for lam, c in self.items():
            if self.basis == "th":
                sym = "\\th_{%s}" % "".join(map(str, lam))
            else:
                sym = "%s_{%s}" % (self.basis, ",".join(map(str, lam)))
            out.append(_latex_coeff(c) + sym)
        return " + ".join(out)

    def to_json(self) -> dict:
        return {
            "basis": self.basis,
            "degree": self.degree,
            "coeffs": [[list(lam), str(c)] for lam, c in self.items()],
        }

    @classmethod
    def from_json(cls, data) -> "SymFun":
        return cls(
            data["basis"],
            {tuple(lam): parse_ratfun(c) for lam, c in data["coeffs"]},
            int(data["degree"]),
        )


def _latex_poly(p: QPoly) -> str:
    terms = sorted(p.terms().items(), reverse=True)
    out = []
    for i, (e, c) in enumerate(terms):
        neg = c < 0
        a = abs(c)
        mono = "" if e == 0 else ("q" if e == 1 else "q^{%d}" % e)
        if not mono:
            body = str(a) if a.denominator == 1 else "\\frac{%d}{%d}" % (a.numerator, a.denominator)
        elif a == 1:
            body = mono
        else:
            body = (str(a) if a.denominator == 1 else "\\frac{%d}{%d}" % (a.numerator, a.denominator)) + " " + mono
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out) if out else "0"


def _latex_coeff(c: RatFun) -> str:
    if c.is_polynomial():
        p = c.as_qpoly()
        if p == 1:
            return ""
        if p == -1:
            return "-"
        if len(p.terms()) == 1:
            return _latex_poly(p)
        return "\\left(%s\\right)" % _latex_poly(p)
    return "\\left(\\frac{%s}{%s}\\right)" % (_latex_poly(c.num), _latex_poly(c.den))


# ---------------------------------------------------------------------------
# scalars


@lru_cache(maxsize=None)
def c_lambda(lam) -> QPoly:
    """prod_i prod_{j=1..lam_i} (1 - q^j)."""
    out = QPoly(1)
    for p in lam:
        for j in range(1, p + 1):
            out = out * (1 - QPoly.q(j))
    return out


@lru_cache(maxsize=None)
def b_mu(mu) -> QPoly:
    """prod_i (1 - q^{mu_i})."""
    out = QPoly(1)
    for p in mu:
        out = out * (1 - QPoly.q(p))
    return out


def _mult_factor(lam) -> int:
    out = 1
    for m in Counter(lam).values():
        out *= math.factorial(m)
    return out


# ---------------------------------------------------------------------------
# single-part expansions into p, and of p_k into each basis


@lru_cache(maxsize=None)
def _part_to_p(basis: str, k: int) -> dict:
    """Expansion of e_k, h_k or th_k in the p basis."""
    out = {}
    for mu in partitions(k):
        if basis == "e":
            c = RatFun(Fraction((-1) ** (k - len(mu)), z_factor(mu)))
        elif basis == "h":
            c = RatFun(Fraction(1, z_factor(mu)))
        elif basis == "th":
            c = RatFun(c_lambda((k,)), b_mu(mu) * z_factor(mu))
        else:
            c = _ONE if mu == (k,) else RatFun(0)
        if not c.is_zero():
            out[mu] = c
    return out


@lru_cache(maxsize=None)
def _pk_to(basis: str, k: int) -> dict:
    """Expansion of p_k in a multiplicative basis."""
    if basis == "p":
        return {(k,): _ONE}
    if basis in ("e", "h"):
        out = {}
        for lam in partitions(k):
            ell = len(lam)
            mag = Fraction(k * math.factorial(ell - 1), _mult_factor(lam))
            sign = (-1) ** (k - ell) if basis == "e" else (-1) ** (ell - 1)
            out[lam] = RatFun(sign * mag)
        return out
    # th: a_lam = (1 - q^k) [h_lam] p_k / c_lam
    hk = _pk_to("h", k)
    scale = 1 - QPoly.q(k)
    return {lam: c * scale / c_lambda(lam) for lam, c in hk.items()}


def _product_expansion(factors) -> dict:
    acc = {(): _ONE}
    for fac in factors:
        nxt: dict = {}
        for a, ca in acc.items():
            for b, cb in fac.items():
                key = _merge(a, b)
                v = ca * cb
                nxt[key] = nxt[key] + v if key in nxt else v
        acc = {k: v for k, v in nxt.items() if not v.is_zero()}
    return acc


_matrix_lock = threading.Lock()
_matrix_cache: dict = {}


def clear_matrix_cache():
    with _matrix_lock:
        _matrix_cache.clear()


def _row(src: str, dst: str, lam) -> dict:
    """Expansion of the ``src`` basis element ``lam`` in ``dst`` (one side must be p)."""
    key = (src, dst, lam)
    with _matrix_lock:
        hit = _matrix_cache.get(key)
    if hit is not None:
        return hit
    if dst == "p":
        row = _product_expansion(_part_to_p(src, k) for k in lam)
    elif src == "p":
        row = _product_expansion(_pk_to(dst, k) for k in lam)
    else:
        raise ValueError("conversion rows must start or end at the p basis")
    with _matrix_lock:
        _matrix_cache[key] = row
    return row


def _apply_rows(f: SymFun, dst: str) -> SymFun:
    out: dict = {}
    for lam, c in f.coeffs.items():
        for mu, v in _row(f.basis, dst, lam).items():
            t = c * v
            out[mu] = out[mu] + t if mu in out else t
    return SymFun(dst, out, f.degree)


def convert(f: SymFun, target: str) -> SymFun:
    """Re-expand ``f`` in another basis."""
    target = _basis(target)
    if f.basis == target:
        return f
    if f.is_zero():
        return SymFun(target, {}, f.degree)
    _check_cap(f.degree)
    p = f if f.basis == "p" else _apply_rows(f, "p")
    return p if target == "p" else _apply_rows(p, target)


def e_to_h_newton(f: SymFun) -> SymFun:
    """E to H without the p hub: e_n = sum over compositions (-1)^{n-l} h_alpha."""
    if f.basis != "e":
        raise ValueError("expected an e-basis function")
    from .combinat import compositions

    @lru_cache(maxsize=None)
    def single(k):
        out: dict = {}
        for a in compositions(k):
            lam = to_partition(a)
            out[lam] = out.get(lam, 0) + (-1) ** (k - len(a))
        return {lam: RatFun(c) for lam, c in out.items() if c}

    out: dict = {}
    for lam, c in f.coeffs.items():
        for mu, v in _product_expansion(single(k) for k in lam).items():
            out[mu] = out[mu] + c * v if mu in out else c * v
    return SymFun("h", out, f.degree)


# ---------------------------------------------------------------------------
# operations


def multiply(f: SymFun, g: SymFun) -> SymFun:
    if f.basis != g.basis:
        f, g = convert(f, "p"), convert(g, "p")
    out: dict = {}
    for a, ca in f.coeffs.items():
        for b, cb in g.coeffs.items():
            key = _merge(a, b)
            v = ca * cb
            out[key] = out[key] + v if key in out else v
    return SymFun(f.basis, out, f.degree + g.degree)


def hall_pair(f: SymFun, g: SymFun) -> RatFun:
    """Hall inner product; e/e and h/h pairs use matrix counting."""
    if f.is_zero() or g.is_zero():
        return RatFun(0)
    if f.degree != g.degree:
        raise ValueError(f"degree mismatch: {f.degree} vs {g.degree}")
    if f.basis == g.basis and f.basis in ("e", "h"):
        total = RatFun(0)
        for a, ca in f.coeffs.items():
            for b, cb in g.coeffs.items():
                n = contingency_count(a, b)
                if n:
                    total = total + ca * cb * n
        return total
    fp, gp = convert(f, "p"), convert(g, "p")
    total = RatFun(0)
    for lam, c in fp.coeffs.items():
        if lam in gp.coeffs:
            total = total + c * gp.coeffs[lam] * z_factor(lam)
    return total


def hall_pair_p(f: SymFun, g: SymFun) -> RatFun:
    """Hall inner product computed in the p basis only."""
    fp, gp = convert(f, "p"), convert(g, "p")
    total = RatFun(0)
    for lam, c in fp.coeffs.items():
        if lam in gp.coeffs:
            total = total + c * gp.coeffs[lam] * z_factor(lam)
    return total


def omega(f: SymFun) -> SymFun:
    if f.basis == "e":
        return SymFun("h", f.coeffs, f.degree)
    if f.basis == "h":
        return SymFun("e", f.coeffs, f.degree)
    p = convert(f, "p")
    out = p.map_coeffs(lambda lam, c: c * (-1) ** (sum(lam) - len(lam)))
    return out if f.basis == "p" else convert(out, f.basis)


def adams(f: SymFun, r: int) -> SymFun:
    """p_k -> p_{kr}; the result is in the p basis."""
    if r < 1:
        raise ValueError("Adams operation needs r >= 1")
    if r == 1:
        return f
    p = convert(f, "p")
    return SymFun("p", {tuple(r * x for x in lam): c for lam, c in p.coeffs.items()}, r * f.degree)


def nabla_t1(f: SymFun, a: int = 1) -> SymFun:
    """Scale th_lam by q^{a * twist_exponent(lam)}; the result is in the th basis."""
    th = convert(f, "th")
    if a == 0:
        return th
    if a < 0:
        raise ValueError("negative twist exponent")
    return th.map_coeffs(lambda lam, c: c * QPoly.q(a * twist_exponent(lam)))


def e(*lam) -> SymFun:
    return SymFun.basis_element("e", lam)


def h(*lam) -> SymFun:
    return SymFun.basis_element("h", lam)


def p(*lam) -> SymFun:
    return SymFun.basis_element("p", lam)


def th(*lam) -> SymFun:
    return SymFun.basis_element("th", lam)


# ---------------------------------------------------------------------------
# germ tables


class GermTable:
    """The th-, h- and e-coefficients of one symmetric function."""

    def __init__(self, f: SymFun):
        self.degree = f.degree
        self.shalika = dict(convert(f, "th").coeffs)
        self.steinberg = dict(convert(f, "h").coeffs)
        self.dyck = dict(convert(f, "e").coeffs)

    def table(self, kind: str) -> dict:
        try:
            return {"shalika": self.shalika, "steinberg": self.steinberg, "dyck": self.dyck}[kind]
        except KeyError:
            raise ValueError(f"unknown germ kind {kind!r}") from None

    def as_symfun(self, kind: str) -> SymFun:
        basis = {"shalika": "th", "steinberg": "h", "dyck": "e"}[kind]
        return SymFun(basis, self.table(kind), self.degree)

    def to_json(self) -> dict:
        enc = lambda t: [[list(lam), str(c)] for lam, c in sorted(t.items())]
        return {
            "degree": self.degree,
            "shalika": enc(self.shalika),
            "steinberg": enc(self.steinberg),
            "dyck": enc(self.dyck),
        }
