"""q,t-deformed master functions of torus knots via tableau weights."""
from __future__ import annotations

import math
from collections import Counter

from .combinat import n_stat, partitions, slope_steps, syt, transpose
from .qpoly import QT, QTRatFun

DEFAULT_QT_CAP = 6


def vanishing_order(T) -> int:
    """|lam| - l(lam) - #{i : i, i+1 in consecutive columns}."""
    n = T.size
    pi = sum(1 for i in range(1, n) if T.position(i + 1)[1] == T.position(i)[1] + 1)
    return n - len(T.shape) - pi


class _Factors:
    """Product of monomials and binomials ``1 - q^i t^j`` with exact cancellation."""

    def __init__(self):
        self.mono = [0, 0]
        self.sign = 1
        self.binom = Counter()  # canonical (i, j) -> exponent

    def mul_monomial(self, i, j, power=1):
        self.mono[0] += i * power
        self.mono[1] += j * power

    def mul_binomial(self, i, j, power=1):
        """Multiply by (1 - q^i t^j)^power; return False if the factor is identically zero."""
        if i == 0 and j == 0:
            return False
        # 1 - x = -x (1 - 1/x); keep the orientation whose leading exponent is positive
        if i < 0 or (i == 0 and j < 0):
            self.mul_monomial(i, j, power)
            if power % 2:
                self.sign = -self.sign
            i, j = -i, -j
        self.binom[(i, j)] += power
        return True

    def to_qt(self) -> QTRatFun:
        num = QT.from_dict({(0, 0): self.sign})
        den = QT.from_dict({(0, 0): 1})
        mi, mj = self.mono
        for (i, j), e in self.binom.items():
            if e == 0:
                continue
            # 1 - q^i t^j with i >= 0; a negative j is cleared into the monomial part
            if j >= 0:
                poly = QT.from_dict({(0, 0): 1, (i, j): -1})
            else:
                poly = QT.from_dict({(0, -j): 1, (i, 0): -1})
                mj += j * e
            if e > 0:
                num = num * poly**e
            else:
                den = den * poly ** (-e)
        if mi >= 0:
            num = num * QT.from_dict({(mi, 0): 1})
        else:
            den = den * QT.from_dict({(-mi, 0): 1})
        if mj >= 0:
            num = num * QT.from_dict({(0, mj): 1})
        else:
            den = den * QT.from_dict({(0, -mj): 1})
        return QTRatFun._make(num, den)


def syt_weight(T, m: int, n: int) -> QTRatFun:
    """Weight of a standard tableau for the slope m/n; identically zero factors are skipped."""
    if math.gcd(m, n) != 1:
        raise ValueError(f"slope {m}/{n} is not in lowest terms")
    if T.size != n:
        raise ValueError(f"tableau has {T.size} boxes, expected {n}")
    z = []
    for i in range(1, n + 1):
        r, c = T.position(i)
        z.append((c, r))  # q^col t^row
    acc = _Factors()
    for i, (a, b) in enumerate(z, start=1):
        acc.mul_monomial(a, b, slope_steps(m, n, i) - 1)
    for i in range(1, n):
        a, b = z[i]
        pa, pb = z[i - 1]
        acc.mul_binomial(-a, -b, -1)
        acc.mul_binomial(1 + pa - a, 1 + pb - b, -1)
    for i in range(n):
        for j in range(i + 1, n):
            x = (z[i][0] - z[j][0], z[i][1] - z[j][1])
            acc.mul_binomial(x[0], x[1], 1)
            acc.mul_binomial(x[0] + 1, x[1] + 1, 1)
            acc.mul_binomial(x[0] + 1, x[1], -1)
            acc.mul_binomial(x[0], x[1] + 1, -1)
    return acc.to_qt()


def torus_msf_qt(m: int, n: int, cap: int = DEFAULT_QT_CAP) -> dict:
    """Coefficients of the modified Macdonald functions in the deformed master function."""
    if n > cap:
        raise ValueError(f"n={n} exceeds the q,t cap {cap}")
    if math.gcd(m, n) != 1:
        raise ValueError(f"slope {m}/{n} is not in lowest terms")
    out = {}
    for lam in partitions(n):
        total = QTRatFun(0)
        for T in syt(lam):
            total = total + syt_weight(T, m, n)
        if not total.is_zero():
            out[lam] = total
    return out


def specialize_map(coeffs: dict) -> dict:
    return {lam: c.specialize_t(1) for lam, c in coeffs.items()}


def transpose_symmetric(coeffs: dict) -> bool:
    """coeff_lam(q, t) == coeff_{lam^t}(t, q) for every lam."""
    for lam, c in coeffs.items():
        other = coeffs.get(transpose(lam))
        if other is None or other.swap_qt() != c:
            return False
    return True


def superpolynomial(m: int, n: int, cap: int = DEFAULT_QT_CAP) -> dict:
    """``{k: coefficient of a^k}`` of the a-deformed evaluation.

    Each H_lam coefficient is multiplied by its eigenvalue
    ``q^{n(lam^t)} t^{n(lam)}`` and by ``prod over boxes (1 - a q^{a'} t^{l'})``.
    """
    coeffs = torus_msf_qt(m, n, cap)
    result: dict = {}
    for lam, c in coeffs.items():
        base = c * QTRatFun.monomial(n_stat(transpose(lam)), n_stat(lam))
        poly = {0: QTRatFun(1)}
        for row, length in enumerate(lam):
            for col in range(length):
                nxt: dict = {}
                for k, v in poly.items():
                    nxt[k] = nxt[k] + v if k in nxt else v
                    w = -(v * QTRatFun.monomial(col, row))
                    nxt[k + 1] = nxt[k + 1] + w if k + 1 in nxt else w
                poly = nxt
        for k, v in poly.items():
            t = base * v
            result[k] = result[k] + t if k in result else t
    return {k: v for k, v in sorted(result.items()) if not v.is_zero()}


def render_superpolynomial(sp: dict) -> str:
    parts = []
    for k, v in sp.items():
        s = str(v)
        mono = "" if k == 0 else ("a" if k == 1 else f"a^{k}")
        parts.append(f"({s})" + (f"*{mono}" if mono else ""))
    return " + ".join(parts) if parts else "0"
