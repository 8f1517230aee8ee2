"""Weight polynomials of affine Springer fibers from the master symmetric function."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .combinat import contingency_count, dominates, partitions
from .germs import DimensionError, GammaSpec, _as_gamma, branch_delta, master_symfun
from .qpoly import QPoly
from .symfunc import SymFun, convert, hall_pair


class InvariantError(ArithmeticError):
    """A computed quantity broke an invariant that must hold."""


def dim_sp(spec) -> int:
    """Dimension of the affine Springer fiber.

    Per-branch contributions plus ``n_i n_j c_ij`` for every pair of branches,
    where ``c_ij`` is the supplied contact valuation or, generically, the
    smaller of the two leading exponents.
    """
    spec = _as_gamma(spec)
    if spec.dim_override is not None:
        return spec.dim_override
    total = Fraction(sum(branch_delta(b) for b in spec.branches))
    bs = spec.branches
    for i in range(len(bs)):
        for j in range(i + 1, len(bs)):
            c = spec.contact.get((i, j))
            if c is None:
                li, lj = bs[i].leading_exponent(), bs[j].leading_exponent()
                if li is None or lj is None:
                    raise DimensionError(
                        f"branches {i} and {j}: a trivial branch has no leading exponent; "
                        "supply contact data or dim_override"
                    )
                c = min(li, lj)
            total += bs[i].n * bs[j].n * Fraction(c)
    if total.denominator != 1:
        raise DimensionError(f"dimension {total} is not an integer; supply contact data or dim_override")
    return int(total)


def _pairing(f: SymFun, lam) -> QPoly:
    val = hall_pair(f, SymFun.basis_element("e", lam))
    if not val.is_polynomial():
        raise InvariantError(f"pairing with e_{lam} is not a polynomial: {val}")
    p = val.as_qpoly()
    if not p.is_nonnegative_integral():
        raise InvariantError(f"pairing with e_{lam} has coefficients outside N: {p}")
    return p


def orbital_integral(spec, lam, f: SymFun | None = None, dim: int | None = None) -> QPoly:
    """q^dim * <f, e_lam> with q -> 1/q."""
    spec = _as_gamma(spec)
    lam = tuple(lam)
    if sum(lam) != spec.n:
        raise ValueError(f"partition {lam} does not have size {spec.n}")
    f = master_symfun(spec) if f is None else f
    dim = dim_sp(spec) if dim is None else dim
    pair = _pairing(f, lam)
    if not pair.is_zero() and pair.degree() > dim:
        raise InvariantError(f"pairing degree {pair.degree()} exceeds dimension {dim}")
    return pair.reverse_and_scale(dim)


def weight_polynomials(spec) -> dict:
    spec = _as_gamma(spec)
    f, d = master_symfun(spec), dim_sp(spec)
    return {lam: orbital_integral(spec, lam, f, d) for lam in partitions(spec.n)}


def _min_partition(f: SymFun):
    keys = list(convert(f, "e").coeffs)
    minimal = [k for k in keys if not any(o != k and dominates(k, o) for o in keys)]
    if len(minimal) != 1:
        raise InvariantError(f"no unique dominance-minimal e-term: {minimal}")
    return minimal[0]


def top_frobenius(spec) -> tuple:
    """nu with top-degree Frobenius character h_nu."""
    return _min_partition(master_symfun(spec))


def staircase_partition(m: int, n: int) -> tuple:
    """Parts floor((m-k) n / m), k = 1..m, of the maximal staircase under slope m/n."""
    parts = [((m - k) * n) // m for k in range(1, m + 1)]
    return tuple(p for p in parts if p)


def component_count(spec) -> int:
    nu = top_frobenius(spec)
    n = sum(nu)
    count = contingency_count(nu, (1,) * n)
    if math.factorial(n) % count:
        raise InvariantError(f"component count {count} does not divide {n}!")
    return count


def jacobian_count(spec) -> QPoly:
    spec = _as_gamma(spec)
    return orbital_integral(spec, (spec.n,))


@dataclass
class OrbitalReport:
    dim_sp: int
    by_parahoric: dict
    components: int
    top_frobenius: tuple
    jacobian_count: QPoly

    @classmethod
    def build(cls, spec) -> "OrbitalReport":
        spec = _as_gamma(spec)
        f, d = master_symfun(spec), dim_sp(spec)
        by = {lam: orbital_integral(spec, lam, f, d) for lam in partitions(spec.n)}
        nu = _min_partition(f)
        comp = contingency_count(nu, (1,) * spec.n)
        return cls(d, by, comp, nu, by[(spec.n,)])

    def to_json(self) -> dict:
        return {
            "dim_sp": self.dim_sp,
            "by_parahoric": [[list(lam), p.to_json()] for lam, p in self.by_parahoric.items()],
            "components": self.components,
            "top_frobenius": list(self.top_frobenius),
            "jacobian_count": self.jacobian_count.to_json(),
        }

    @classmethod
    def from_json(cls, data) -> "OrbitalReport":
        return cls(
            int(data["dim_sp"]),
            {tuple(lam): QPoly.from_json(p) for lam, p in data["by_parahoric"]},
            int(data["components"]),
            tuple(data["top_frobenius"]),
            QPoly.from_json(data["jacobian_count"]),
        )
