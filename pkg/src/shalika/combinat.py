"""Partitions, compositions, Dyck paths, tableaux and a few counting functions.

Orderings are fixed so that every enumeration is reproducible: partitions in
reverse lexicographic order, compositions in lexicographic order, paths in
lexicographic order of their horizontal runs.

Tableaux use French notation: row 0 is the bottom (longest) row.
"""
from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache

Partition = tuple
Composition = tuple

__all__ = [
    "partitions",
    "compositions",
    "is_partition",
    "to_partition",
    "transpose",
    "dominates",
    "z_factor",
    "n_stat",
    "DyckPath",
    "dyck_paths",
    "dyck_generating",
    "Tableau",
    "syt",
    "composition_tableau",
    "content_vector_t1",
    "slope_steps",
    "young_cycle_count",
    "young_cycle_count_brute",
    "contingency_count",
    "twist_exponent",
]


# ---------------------------------------------------------------------------
# partitions and compositions


@lru_cache(maxsize=None)
def _partitions(n: int, cap: int) -> tuple:
    if n == 0:
        return ((),)
    out = []
    for first in range(min(n, cap), 0, -1):
        for rest in _partitions(n - first, first):
            out.append((first,) + rest)
    return tuple(out)


def partitions(n: int) -> list[Partition]:
    """All partitions of ``n`` in reverse lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(_partitions(n, n))


@lru_cache(maxsize=None)
def _compositions(n: int) -> tuple:
    if n == 0:
        return ((),)
    return tuple((first,) + rest for first in range(1, n + 1) for rest in _compositions(n - first))


def compositions(n: int) -> list[Composition]:
    """All compositions of ``n`` in lexicographic order."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return list(_compositions(n))


def is_partition(parts) -> bool:
    return all(isinstance(p, int) and p > 0 for p in parts) and all(
        a >= b for a, b in zip(parts, parts[1:])
    )


def to_partition(parts) -> Partition:
    """Sort a multiset of positive parts into a partition (zeros dropped)."""
    ps = [int(p) for p in parts]
    if any(p < 0 for p in ps):
        raise ValueError(f"negative part in {parts!r}")
    return tuple(sorted((p for p in ps if p), reverse=True))


def transpose(lam) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for p in lam if p > j) for j in range(lam[0]))


def dominates(lam, mu) -> bool:
    """True when ``lam >= mu`` in dominance order (same size assumed)."""
    a = b = 0
    for i in range(max(len(lam), len(mu))):
        a += lam[i] if i < len(lam) else 0
        b += mu[i] if i < len(mu) else 0
        if a < b:
            return False
    return True


def z_factor(mu) -> int:
    """Order of the centralizer of a permutation of cycle type ``mu``."""
    out = 1
    for part, mult in Counter(mu).items():
        out *= part**mult * math.factorial(mult)
    return out


def n_stat(lam) -> int:
    """n(lambda) = sum (i-1) lambda_i."""
    return sum(i * p for i, p in enumerate(lam))


def twist_exponent(lam) -> int:
    """Sum of lambda_i (lambda_i - 1) / 2, the exponent of the t=1 nabla twist."""
    return sum(p * (p - 1) // 2 for p in lam)


# ---------------------------------------------------------------------------
# Dyck paths


@dataclass(frozen=True)
class DyckPath:
    runs: tuple  # horizontal run at each height 0..height-1
    area: int
    width: int
    height: int

    @property
    def steps(self) -> tuple:
        """Runs with trailing zeros dropped."""
        r = list(self.runs)
        while r and r[-1] == 0:
            r.pop()
        return tuple(r)

    @property
    def e_index(self) -> Partition:
        return to_partition(self.runs)


def _check_slope(m: int, n: int, k: int):
    if n < 1 or m < 1 or k < 1:
        raise ValueError(f"need m, n, k >= 1, got ({m}, {n}, {k})")
    if math.gcd(m, n) != 1:
        raise ValueError(f"slope {m}/{n} is not in lowest terms; factor the common divisor into k")


def _min_x(m: int, n: int, y: int, strict: bool, height: int) -> int:
    # smallest x with the point (x, y) weakly (or strictly) right of the diagonal
    lo = -(-n * y // m)
    if strict and 0 < y < height and (n * y) % m == 0:
        lo += 1
    return lo


def dyck_paths(m: int, n: int, k: int = 1, strict: bool = False) -> list[DyckPath]:
    """Lattice paths in the ``kn x km`` rectangle below the line of slope ``m/n``.

    ``runs[y]`` is the horizontal run at height ``y``.  The area counts full
    squares between the path and the diagonal.
    """
    _check_slope(m, n, k)
    width, height = k * n, k * m
    out = []

    def rec(y, x, runs, area):
        if y == height:
            out.append(DyckPath(tuple(runs), area, width, height))
            return
        lo = _min_x(m, n, y + 1, strict, height)
        start = max(x, lo)
        xs = [width] if y + 1 == height else range(start, width + 1)
        for nx in xs:
            if nx < start:
                continue
            runs.append(nx - x)
            rec(y + 1, nx, runs, area + nx - (-(-n * (y + 1) // m)))
            runs.pop()

    rec(0, 0, [], 0)
    out.sort(key=lambda d: d.runs, reverse=True)
    return out


@lru_cache(maxsize=None)
def dyck_generating(m: int, n: int, k: int = 1, strict: bool = False) -> dict:
    """``{e_index: {area: count}}`` summed over all paths, by dynamic programming."""
    _check_slope(m, n, k)
    width, height = k * n, k * m
    states = {(0, ()): Counter({0: 1})}
    for y in range(height):
        lo = _min_x(m, n, y + 1, strict, height)
        diag = -(-n * (y + 1) // m)
        nxt: dict = {}
        for (x, key), polys in states.items():
            xs = [width] if y + 1 == height else range(max(x, lo), width + 1)
            for nx in xs:
                if nx < max(x, lo):
                    continue
                run = nx - x
                nkey = to_partition(key + (run,)) if run else key
                bucket = nxt.setdefault((nx, nkey), Counter())
                shift = nx - diag
                for a, c in polys.items():
                    bucket[a + shift] += c
        states = nxt
    result: dict = {}
    for (x, key), polys in states.items():
        if x != width:
            continue
        acc = result.setdefault(key, Counter())
        acc.update(polys)
    return {key: dict(v) for key, v in result.items()}


# ---------------------------------------------------------------------------
# tableaux


@dataclass(frozen=True)
class Tableau:
    """Standard filling; ``rows[0]`` is the bottom row (French notation)."""

    rows: tuple
    _pos: dict = field(default=None, compare=False, hash=False, repr=False)

    def __post_init__(self):
        rows = tuple(tuple(r) for r in self.rows)
        object.__setattr__(self, "rows", rows)
        pos = {}
        for r, row in enumerate(rows):
            for c, lab in enumerate(row):
                pos[lab] = (r, c)
        object.__setattr__(self, "_pos", pos)

    @property
    def shape(self) -> Partition:
        return tuple(len(r) for r in self.rows)

    @property
    def size(self) -> int:
        return sum(self.shape)

    def position(self, label: int) -> tuple:
        """(row, column) of a label, both zero-based."""
        return self._pos[label]

    def is_standard(self) -> bool:
        n = self.size
        if sorted(self._pos) != list(range(1, n + 1)):
            return False
        if not is_partition(self.shape):
            return False
        for r, row in enumerate(self.rows):
            for c, lab in enumerate(row):
                if c and row[c - 1] > lab:
                    return False
                if r and self.rows[r - 1][c] > lab:
                    return False
        return True

    def to_json(self) -> list:
        return [list(r) for r in self.rows]


def syt(shape) -> list[Tableau]:
    """All standard Young tableaux of a shape."""
    shape = tuple(shape)
    if not is_partition(shape):
        raise ValueError(f"{shape!r} is not a partition")
    n = sum(shape)
    out = []

    def rec(filled, label, rows):
        if label > n:
            out.append(Tableau(tuple(tuple(r) for r in rows)))
            return
        for r in range(len(shape)):
            c = filled[r]
            if c < shape[r] and (r == 0 or filled[r - 1] > c):
                filled[r] += 1
                rows[r].append(label)
                rec(filled, label + 1, rows)
                rows[r].pop()
                filled[r] -= 1

    rec([0] * len(shape), 1, [[] for _ in shape])
    return out


def composition_tableau(alpha) -> Tableau:
    """Drop horizontal strips of lengths ``alpha_1, alpha_2, ...`` in order.

    Each strip occupies columns ``0..alpha_i-1`` and every box falls to the
    lowest free cell of its column.
    """
    heights: list[int] = []
    rows: list[list[int]] = []
    label = 1
    for a in alpha:
        if a < 1:
            raise ValueError("composition parts must be positive")
        while len(heights) < a:
            heights.append(0)
        for c in range(a):
            r = heights[c]
            if r == len(rows):
                rows.append([])
            rows[r].append(label)
            heights[c] += 1
            label += 1
    return Tableau(tuple(tuple(r) for r in rows))


def content_vector_t1(alpha) -> list:
    """q-contents ``q^col`` of the composition tableau, read in label order."""
    from .qpoly import QPoly

    return [QPoly.q(c) for a in alpha for c in range(a)]


def slope_steps(m: int, n: int, i: int, mode: str = "ceil") -> int:
    """Increment ``S(i)`` of the ceiling (or floor) staircase of slope ``m/n``."""
    if i < 1:
        raise ValueError("i must be >= 1")
    if mode == "ceil":
        f = lambda j: -(-j * m // n)
    elif mode == "floor":
        f = lambda j: j * m // n
    else:
        raise ValueError(f"unknown mode {mode!r}")
    return f(i) - f(i - 1)


# ---------------------------------------------------------------------------
# counting


def _check_sizes(lam, mu):
    if sum(lam) != sum(mu):
        raise ValueError(f"size mismatch: |{tuple(lam)}| != |{tuple(mu)}|")


@lru_cache(maxsize=None)
def _young_cycle(lam: tuple, mu: tuple) -> int:
    # sum over ways of splitting mu into cycle types nu^i of S_{lam_i}
    if not lam:
        return 1 if not mu else 0
    first, rest = lam[0], lam[1:]
    total = 0
    avail = Counter(mu)
    for nu in _partitions(first, first):
        need = Counter(nu)
        if any(avail[p] < c for p, c in need.items()):
            continue
        remaining = to_partition((avail - need).elements())
        sub = _young_cycle(rest, remaining)
        if sub:
            total += math.factorial(first) // z_factor(nu) * sub
    return total


def young_cycle_count(lam, mu) -> int:
    """``|S_lam ∩ C_mu|``: elements of the Young subgroup with cycle type ``mu``."""
    _check_sizes(lam, mu)
    return _young_cycle(to_partition(lam), to_partition(mu))


def _cycle_type(perm) -> Partition:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if not seen[i]:
            j, k = i, 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                k += 1
            out.append(k)
    return to_partition(out)


def young_cycle_count_brute(lam, mu) -> int:
    """Same count by enumerating the Young subgroup (small sizes only)."""
    _check_sizes(lam, mu)
    target = to_partition(mu)
    blocks, start = [], 0
    for p in lam:
        blocks.append(range(start, start + p))
        start += p
    total = 0
    for pieces in itertools.product(*(itertools.permutations(b) for b in blocks)):
        perm = [x for piece in pieces for x in piece]
        total += _cycle_type(perm) == target
    return total


@lru_cache(maxsize=None)
def _contingency(rows: tuple, cols: tuple) -> int:
    if not rows:
        return 1 if not any(cols) else 0
    first, rest = rows[0], rows[1:]
    total = 0

    def fill(j, left, cur):
        nonlocal total
        if j == len(cols):
            if left == 0:
                total += _contingency(rest, tuple(sorted((c for c in cur if c), reverse=True)))
            return
        for v in range(min(left, cols[j]), -1, -1):
            cur.append(cols[j] - v)
            fill(j + 1, left - v, cur)
            cur.pop()

    fill(0, first, [])
    return total


def contingency_count(lam, mu) -> int:
    """Nonnegative integer matrices with row sums ``lam`` and column sums ``mu``."""
    _check_sizes(lam, mu)
    return _contingency(to_partition(lam), to_partition(mu))
