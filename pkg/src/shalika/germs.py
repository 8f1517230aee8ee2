"""Branch data, the master symmetric function and Shalika germ transitions.

A branch is a list of steps applied innermost first to ``e_1``.  A ramified
step ``(p, q)`` applies the slope plethysm of slope ``q/p``; an unramified step
``(f, a)`` applies the Adams operation ``tau_f`` followed by the t=1 nabla
twist to the power ``a`` and a sign.
"""
from __future__ import annotations

import itertools
import json
import math
import warnings
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .combinat import partitions, slope_steps, to_partition, twist_exponent, young_cycle_count
from .eha import pkm_compositions, slope_plethysm
from .qpoly import QPoly, RatFun
from .symfunc import (
    GermTable,
    SymFun,
    adams,
    b_mu,
    c_lambda,
    convert,
    multiply,
    nabla_t1,
)


class SpecError(ValueError):
    """Malformed branch or gamma specification."""


class DimensionError(ArithmeticError):
    """The dimension formula does not give an integer for the given data."""


# ---------------------------------------------------------------------------
# data model


@dataclass(frozen=True)
class Ramified:
    p: int
    q: int

    def __post_init__(self):
        if self.p < 1 or self.q < 1:
            raise SpecError(f"ramified step needs p, q >= 1, got ({self.p}, {self.q})")
        if math.gcd(self.p, self.q) != 1:
            raise SpecError(f"ramified step ({self.p}, {self.q}) is not coprime")

    @property
    def degree(self) -> int:
        return self.p

    def to_json(self):
        return {"ramified": [self.p, self.q]}


@dataclass(frozen=True)
class Unramified:
    f: int
    a: int

    def __post_init__(self):
        if self.f < 2:
            raise SpecError(f"unramified step needs residue degree f >= 2, got {self.f}")
        if self.a < 0:
            raise SpecError(f"unramified step needs a >= 0, got {self.a}")

    @property
    def degree(self) -> int:
        return self.f

    def to_json(self):
        return {"unramified": {"f": self.f, "a": self.a}}


Step = Union[Ramified, Unramified]


@dataclass(frozen=True)
class BranchSpec:
    steps: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "steps", tuple(self.steps))

    @classmethod
    def from_pairs(cls, pairs) -> "BranchSpec":
        return cls(tuple(Ramified(p, q) for p, q in pairs))

    @property
    def n(self) -> int:
        return math.prod(s.degree for s in self.steps)

    @property
    def is_ramified(self) -> bool:
        return all(isinstance(s, Ramified) for s in self.steps)

    def newton_pairs(self) -> list:
        if not self.is_ramified:
            raise SpecError("branch has unramified steps; no Newton pairs")
        return [(s.p, s.q) for s in self.steps]

    def leading_exponent(self) -> Fraction | None:
        """Valuation of the leading term of every root (outermost step)."""
        if not self.steps:
            return None
        s = self.steps[-1]
        return Fraction(s.q, s.p) if isinstance(s, Ramified) else Fraction(s.a)

    def to_json(self):
        return {"steps": [s.to_json() for s in self.steps]}


@dataclass(frozen=True)
class GammaSpec:
    branches: tuple
    contact: dict = field(default_factory=dict)
    dim_override: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        if not self.branches:
            raise SpecError("a gamma spec needs at least one branch")
        for key, v in self.contact.items():
            if v <= 0:
                raise SpecError(f"contact valuation for {key} must be positive")
        if self.dim_override is not None and self.dim_override < 0:
            raise SpecError("dim_override must be nonnegative")

    @classmethod
    def single(cls, branch) -> "GammaSpec":
        if not isinstance(branch, BranchSpec):
            branch = BranchSpec.from_pairs(branch)
        return cls((branch,))

    @property
    def n(self) -> int:
        return sum(b.n for b in self.branches)

    def to_json(self):
        out = {"branches": [b.to_json() for b in self.branches]}
        if self.contact:
            out["contact"] = {f"{i},{j}": str(v) for (i, j), v in sorted(self.contact.items())}
        if self.dim_override is not None:
            out["dim_override"] = self.dim_override
        return out


# ---------------------------------------------------------------------------
# Newton pairs, Puiseux exponents and cabling


def puiseux_to_newton(exponents) -> list:
    """Decreasing Puiseux exponents to Newton pairs ``(p, q)``, innermost first."""
    rs = [Fraction(r) for r in exponents]
    if not rs:
        return []
    if any(r <= 0 for r in rs):
        raise SpecError("Puiseux exponents must be positive")
    if any(a <= b for a, b in zip(rs, rs[1:])):
        raise SpecError("Puiseux exponents must be strictly decreasing")
    d = len(rs)
    pairs = [None] * d
    last = rs[-1]
    pairs[-1] = (last.denominator, last.numerator)
    outer = last.denominator
    for i in range(d - 2, -1, -1):
        s = (rs[i] - rs[i + 1]) * outer
        pairs[i] = (s.denominator, s.numerator)
        outer *= s.denominator
    return pairs


def newton_to_puiseux(pairs) -> list:
    pairs = [tuple(x) for x in pairs]
    if not pairs:
        return []
    d = len(pairs)
    rs = [None] * d
    p, q = pairs[-1]
    rs[-1] = Fraction(q, p)
    outer = p
    for i in range(d - 2, -1, -1):
        p, q = pairs[i]
        outer *= p
        rs[i] = rs[i + 1] + Fraction(q, outer)
    return rs


def newton_to_cabling(pairs) -> list:
    """a_d = q_d and a_i = a_{i+1} p_{i+1} p_i + q_i."""
    pairs = [tuple(x) for x in pairs]
    if not pairs:
        return []
    a = [0] * len(pairs)
    a[-1] = pairs[-1][1]
    for i in range(len(pairs) - 2, -1, -1):
        a[i] = a[i + 1] * pairs[i + 1][0] * pairs[i][0] + pairs[i][1]
    return [(p, ai) for (p, _), ai in zip(pairs, a)]


def cabling_to_newton(cabling) -> list:
    cabling = [tuple(x) for x in cabling]
    if not cabling:
        return []
    out = [None] * len(cabling)
    out[-1] = cabling[-1]
    for i in range(len(cabling) - 2, -1, -1):
        p, a = cabling[i]
        q = a - cabling[i + 1][1] * cabling[i + 1][0] * p
        if q < 1:
            raise SpecError(f"cabling data {cabling} does not come from Newton pairs")
        out[i] = (p, q)
    return out


def delta_invariant(pairs) -> int:
    """Genus recursion over the cabling sequence."""
    cab = newton_to_cabling(pairs)
    if not cab:
        return 0
    p, a = cab[-1]
    g = (p - 1) * (a - 1) // 2
    for p, a in reversed(cab[:-1]):
        g = p * g + (p - 1) * (a - 1) // 2
    return g


def _valuation_data(branch: BranchSpec):
    """(n, S, B): degree, sum of val(x_i - x_j) over ordered root pairs, split rank."""
    n, S, B = 1, Fraction(0), 1
    for s in branch.steps:
        if isinstance(s, Ramified):
            new_n = s.p * n
            S = Fraction(new_n * (new_n - n) * s.q, s.p) + n * (n - 1) * s.q + S
            n = new_n
        else:
            new_n = s.f * n
            S = s.a * new_n * (new_n - 1) + s.f * S
            n, B = new_n, B * s.f
    return n, S, B


def branch_delta(branch: BranchSpec) -> int:
    """Dimension contribution of one branch: (S - (n - B)) / 2."""
    n, S, B = _valuation_data(branch)
    d = (S - (n - B)) / 2
    if d.denominator != 1:
        raise DimensionError(f"branch {branch.to_json()} gives a non-integer dimension {d}")
    return int(d)


def validate_branch(branch: BranchSpec):
    if branch.steps and isinstance(branch.steps[-1], Ramified):
        s = branch.steps[-1]
        if s.q < s.p:
            warnings.warn(f"outermost step ({s.p}, {s.q}) has q < p", stacklevel=2)


# ---------------------------------------------------------------------------
# master symmetric function


def unramified_sign(n_before: int, f: int) -> int:
    return (-1) ** (n_before * (f - 1))


def branch_master(branch: BranchSpec) -> SymFun:
    validate_branch(branch)
    f = SymFun.basis_element("e", (1,))
    for s in branch.steps:
        if isinstance(s, Ramified):
            f = slope_plethysm(f, s.q, s.p)
        else:
            n_before = f.degree
            g = nabla_t1(adams(f, s.f), s.a)
            f = convert(g, "e").scale(unramified_sign(n_before, s.f))
    return f


def master_symfun(spec) -> SymFun:
    """Product over branches of the per-branch recursion, in the e basis."""
    spec = _as_gamma(spec)
    out = SymFun.one("e")
    for b in spec.branches:
        out = multiply(out, branch_master(b))
    return out


def germ_tables(f) -> GermTable:
    if isinstance(f, (GammaSpec, BranchSpec, list, tuple)):
        f = master_symfun(f)
    return GermTable(f)


def _as_gamma(spec) -> GammaSpec:
    if isinstance(spec, GammaSpec):
        return spec
    if isinstance(spec, BranchSpec):
        return GammaSpec((spec,))
    if isinstance(spec, (list, tuple)):
        return GammaSpec.single(BranchSpec.from_pairs(spec))
    raise TypeError(f"cannot interpret {spec!r} as a gamma spec")


# ---------------------------------------------------------------------------
# transition matrices


def _factorial_prod(lam) -> int:
    return math.prod(math.factorial(x) for x in lam)


@lru_cache(maxsize=None)
def transition_matrix(p: int, q: int, n_prime: int) -> dict:
    """``M[lam'][lam]`` = coefficient of th_lam in the slope q/p image of th_lam'.

    The outer index is the source partition of ``n_prime``; the inner map is
    the column over partitions of ``p * n_prime``.
    """
    if math.gcd(p, q) != 1:
        raise SpecError(f"({p}, {q}) is not coprime")
    cols = {}
    for lam_p in partitions(n_prime):
        acc = SymFun("th", {}, p * n_prime)
        for mu in partitions(n_prime):
            cnt = young_cycle_count(lam_p, mu)
            if not cnt:
                continue
            term = SymFun.one("th")
            for part in mu:
                term = multiply(term, pkm_compositions(q, p, part))
            scal = RatFun(c_lambda(lam_p) * cnt, b_mu(mu) * _factorial_prod(lam_p))
            acc = acc + term.scale(scal)
        cols[lam_p] = dict(acc.coeffs)
    return cols


@lru_cache(maxsize=None)
def unramified_matrix(f: int, a: int, n_prime: int) -> dict:
    """Columns of sign * nabla^a tau_f on the th basis, via power sums."""
    sign = unramified_sign(n_prime, f)
    cols = {}
    for lam_p in partitions(n_prime):
        acc = SymFun("p", {}, f * n_prime)
        for mu in partitions(n_prime):
            cnt = young_cycle_count(lam_p, mu)
            if not cnt:
                continue
            scal = RatFun(c_lambda(lam_p) * cnt, b_mu(mu) * _factorial_prod(lam_p))
            acc = acc + SymFun("p", {tuple(f * x for x in mu): scal}, f * n_prime)
        th = convert(acc, "th")
        cols[lam_p] = {
            lam: c * QPoly.q(a * twist_exponent(lam)) * sign for lam, c in th.coeffs.items()
        }
    return cols


def _apply(cols: dict, vec: dict) -> dict:
    out: dict = {}
    for lam_p, v in vec.items():
        for lam, c in cols[lam_p].items():
            t = c * v
            out[lam] = out[lam] + t if lam in out else t
    return {k: v for k, v in out.items() if not v.is_zero()}


def branch_waldspurger(branch: BranchSpec) -> dict:
    """th-coefficient vector of one branch via transition matrices."""
    vec = {(1,): RatFun(1)}
    n = 1
    for s in branch.steps:
        if isinstance(s, Ramified):
            vec = _apply(transition_matrix(s.p, s.q, n), vec)
        else:
            vec = _apply(unramified_matrix(s.f, s.a, n), vec)
        n *= s.degree
    return vec


def waldspurger_master(spec) -> SymFun:
    """Same value as :func:`master_symfun`, through th-vector transitions."""
    spec = _as_gamma(spec)
    out = SymFun.one("th")
    for b in spec.branches:
        out = multiply(out, SymFun("th", branch_waldspurger(b), b.n))
    return out


# ---------------------------------------------------------------------------
# parsing


def _parse_fraction(s) -> Fraction:
    try:
        return Fraction(str(s).strip())
    except (ValueError, ZeroDivisionError):
        raise SpecError(f"not a rational number: {s!r}") from None


def parse_step(text: str) -> Step:
    text = text.strip()
    try:
        if text.startswith("u:"):
            f, a = (int(x) for x in text[2:].split(","))
            return Unramified(f, a)
        p, q = (int(x) for x in text.split(","))
        return Ramified(p, q)
    except SpecError:
        raise
    except ValueError:
        raise SpecError(f"cannot parse step {text!r}; expected 'p,q' or 'u:f,a'") from None


def parse_branch(text: str) -> BranchSpec:
    """``"2,1;2,3"`` or ``"u:2,1"``; an empty string is the trivial branch."""
    text = text.strip()
    if not text or text in ("1", "e1", "trivial"):
        return BranchSpec(())
    return BranchSpec(tuple(parse_step(t) for t in text.split(";") if t.strip()))


def parse_gamma(text: str) -> GammaSpec:
    """Branches separated by ``+``."""
    return GammaSpec(tuple(parse_branch(t) for t in text.split("+")))


def parse_puiseux(text: str) -> BranchSpec:
    exps = [_parse_fraction(t) for t in text.split(",") if t.strip()]
    return BranchSpec.from_pairs(puiseux_to_newton(exps))


def branch_from_json(data) -> BranchSpec:
    if not isinstance(data, dict):
        raise SpecError("branch must be a JSON object")
    if "puiseux" in data:
        return BranchSpec.from_pairs(puiseux_to_newton([_parse_fraction(x) for x in data["puiseux"]]))
    steps = []
    for i, st in enumerate(data.get("steps", [])):
        if "ramified" in st:
            p, q = st["ramified"]
            steps.append(Ramified(int(p), int(q)))
        elif "unramified" in st:
            u = st["unramified"]
            steps.append(Unramified(int(u["f"]), int(u["a"])))
        else:
            raise SpecError(f"steps[{i}]: expected 'ramified' or 'unramified'")
    return BranchSpec(tuple(steps))


def gamma_from_json(data) -> GammaSpec:
    if isinstance(data, str):
        data = json.loads(data)
    if "branches" not in data:
        return GammaSpec((branch_from_json(data),))
    branches = tuple(branch_from_json(b) for b in data["branches"])
    contact = {}
    for key, v in (data.get("contact") or {}).items():
        try:
            i, j = (int(x) for x in key.split(","))
        except ValueError:
            raise SpecError(f"contact key {key!r} must look like 'i,j'") from None
        if not (0 <= i < len(branches) and 0 <= j < len(branches)) or i == j:
            raise SpecError(f"contact key {key!r} does not name two distinct branches")
        contact[(min(i, j), max(i, j))] = _parse_fraction(v)
    dim = data.get("dim_override")
    return GammaSpec(branches, contact, None if dim is None else int(dim))


# ---------------------------------------------------------------------------
# experimental: graph formula for the renormalized transition matrix


def _young_permutations(lam):
    blocks, start = [], 0
    for part in lam:
        blocks.append(list(range(start, start + part)))
        start += part
    for pieces in itertools.product(*(itertools.permutations(b) for b in blocks)):
        perm = [0] * start
        for b, piece in zip(blocks, pieces):
            for x, y in zip(b, piece):
                perm[x] = y
        yield perm


def _cycles(perm) -> list:
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(j)
            j = perm[j]
        out.append(cyc)
    return out


@lru_cache(maxsize=None)
def _cut_cycle(labels: tuple) -> tuple:
    """All ways to cut a directed cycle into chains (at least one edge removed)."""
    L = len(labels)
    out = []
    for mask in range(1, 1 << L):
        cuts = [i for i in range(L) if mask >> i & 1]
        chains = []
        for k, c0 in enumerate(cuts):
            c1 = cuts[(k + 1) % len(cuts)]
            length = (c1 - c0) % L or L
            chains.append(tuple(labels[(c0 + 1 + s) % L] for s in range(length)))
        out.append(tuple(chains))
    return tuple(out)


@lru_cache(maxsize=None)
def graph_transition_matrix(p: int, q: int, n_prime: int) -> dict:
    """Conjectural graph formula for ``(c_lam / c_lam') M[lam'][lam]``.

    Experimental.  Each permutation of the Young subgroup of ``lam'`` is a
    graph; every cycle is dilated by ``p`` and its vertices get a block of
    consecutive labels (cycles ordered by their smallest element).  Cutting
    at least one edge per dilated cycle gives chains, weighted by
    ``q^{sum coarm(v) S_{q/p}(label v)}``.
    """
    if math.gcd(p, q) != 1:
        raise SpecError(f"({p}, {q}) is not coprime")
    N = p * n_prime
    steps = [slope_steps(q, p, i) for i in range(1, N + 1)]
    cols = {}
    for lam_p in partitions(n_prime):
        acc: dict = {}
        for perm in _young_permutations(lam_p):
            cyc = _cycles(perm)
            sign = (-1) ** (n_prime - len(cyc))
            dilated, off = [], 0
            for c in cyc:
                dilated.append(tuple(range(off, off + p * len(c))))
                off += p * len(c)
            for choice in itertools.product(*(_cut_cycle(d) for d in dilated)):
                chains = [ch for cs in choice for ch in cs]
                lam = to_partition(len(ch) for ch in chains)
                e = sum(pos * steps[v] for ch in chains for pos, v in enumerate(ch))
                acc.setdefault(lam, Counter())[e] += sign * (-1) ** (N - len(lam))
        scale = _factorial_prod(lam_p)
        col = {}
        for lam, poly in acc.items():
            v = RatFun(QPoly({e: c for e, c in poly.items() if c}), scale)
            if not v.is_zero():
                col[lam] = v
        cols[lam_p] = col
    return cols


def renormalized_transition_matrix(p: int, q: int, n_prime: int) -> dict:
    """(c_lam / c_lam') M[lam'][lam] from :func:`transition_matrix`."""
    out = {}
    for lam_p, col in transition_matrix(p, q, n_prime).items():
        out[lam_p] = {lam: v * c_lambda(lam) / c_lambda(lam_p) for lam, v in col.items()}
    return out


def graph_conjecture_mismatches(p: int, q: int, n_prime: int) -> list:
    """Entries where the graph formula and the transition matrix disagree."""
    a = renormalized_transition_matrix(p, q, n_prime)
    b = graph_transition_matrix(p, q, n_prime)
    bad = []
    for lam_p in partitions(n_prime):
        for lam in partitions(p * n_prime):
            x = a[lam_p].get(lam, RatFun(0))
            y = b[lam_p].get(lam, RatFun(0))
            if x != y:
                bad.append((lam_p, lam, x, y))
    return bad
