"""Slope operators at t=1, realized as explicit symmetric functions.

``E_{m,n,k}`` is the Dyck-path generating function in the e basis, the slope
plethysm sends ``e_k`` to it, and ``P_{km,kn} . 1`` is expanded in the th basis
through composition weights.
"""
from __future__ import annotations

import math
from functools import lru_cache

from .combinat import compositions, dyck_generating, slope_steps, to_partition
from .qpoly import QPoly, RatFun
from .symfunc import SymFun, c_lambda, convert, multiply


def _coprime(m: int, n: int):
    if n < 1 or m < 0:
        raise ValueError(f"invalid slope {m}/{n}")
    if math.gcd(m, n) != 1:
        raise ValueError(f"slope {m}/{n} is not in lowest terms")


@lru_cache(maxsize=None)
def elementary_slope(m: int, n: int, k: int = 1) -> SymFun:
    """E_{m,n,k} = sum over Dyck paths of q^area e_D."""
    _coprime(m, n)
    gen = dyck_generating(m, n, k)
    coeffs = {lam: QPoly(dict(areas)) for lam, areas in gen.items()}
    return SymFun("e", coeffs, k * n)


def slope_plethysm(f: SymFun, m: int, n: int) -> SymFun:
    """phi_{m/n}: e_k -> E_{m,n,k}, extended multiplicatively and linearly."""
    _coprime(m, n)
    fe = convert(f, "e")
    out = SymFun("e", {}, fe.degree * n)
    for lam, c in fe.items():
        term = SymFun.one("e")
        for part in lam:
            term = multiply(term, elementary_slope(m, n, part))
        out = out + term.scale(c)
    return out


def comp_weight(alpha, m: int, n: int, k: int = 1) -> RatFun:
    """Coefficient of th_alpha in P_{km,kn} . 1 at t=1.

    ``m = 0`` is allowed and means all steps S(i) vanish.
    """
    alpha = tuple(alpha)
    if m:
        _coprime(m, n)
    if sum(alpha) != k * n:
        raise ValueError(f"composition {alpha} does not have size {k * n}")
    cols = [c for a in alpha for c in range(a)]
    size = len(cols)
    steps = [slope_steps(m, n, i) if m else 0 for i in range(1, size + 1)]
    # prefactor sum_j q^j prod_{s<=j} z_{(k-s)n} / z_{(k-s)n+1}, z_i = q^{cols[i-1]}
    pref = QPoly(0)
    for j in range(k):
        e = j
        for s in range(1, j + 1):
            i = (k - s) * n
            e += cols[i - 1] - cols[i]
        # each ratio is at least q^-1, so e >= 0
        pref = pref + QPoly.q(e)
    sign = (-1) ** (size - len(alpha))
    expo = sum(c * s for c, s in zip(cols, steps))
    reduced = to_partition(alpha[:-1] + (alpha[-1] - 1,))
    return RatFun(pref) * QPoly.q(expo) * sign / c_lambda(reduced)


@lru_cache(maxsize=None)
def pkm_compositions(m: int, n: int, k: int = 1) -> SymFun:
    """P_{km,kn} . 1 = (-1)^(k-1) sum over compositions of k n of wt(alpha) th_alpha.

    The global sign makes the result agree with the slope plethysm of p_k.
    """
    coeffs: dict = {}
    sign = (-1) ** (k - 1)
    for alpha in compositions(k * n):
        lam = to_partition(alpha)
        w = comp_weight(alpha, m, n, k) * sign
        coeffs[lam] = coeffs[lam] + w if lam in coeffs else w
    return SymFun("th", coeffs, k * n)


def pkm_newton(m: int, n: int, k: int = 1) -> SymFun:
    """Same operator image via p_k in the e basis followed by the slope plethysm."""
    pk = convert(SymFun.basis_element("p", (k,)), "e")
    return slope_plethysm(pk, m, n)
