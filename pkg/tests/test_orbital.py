import json
import math
from fractions import Fraction as F

import pytest

from families import family_id, ramified_family
from shalika.combinat import partitions, to_partition
from shalika.germs import BranchSpec, DimensionError, GammaSpec, Unramified, master_symfun, parse_gamma
from shalika.orbital import (
    OrbitalReport,
    component_count,
    dim_sp,
    jacobian_count,
    orbital_integral,
    staircase_partition,
    top_frobenius,
    weight_polynomials,
)
from shalika.qpoly import QPoly, parse_qpoly
from shalika.symfunc import convert, e, hall_pair

FAMILY = ramified_family()
TWO_TREFOILS = parse_gamma("2,3+2,3")
CABLE = parse_gamma("2,1;2,3")

DEG42 = [
    1, 1, 2, 3, 5, 7, 11, 15, 21, 28, 38, 48, 63, 78, 97, 118, 143, 168, 199, 230, 264, 298,
    335, 370, 406, 437, 466, 488, 504, 510, 507, 492, 465, 424, 370, 306, 236, 166, 104, 56, 24, 7, 1,
]


def poly(coeffs):
    return QPoly({i: c for i, c in enumerate(coeffs)})


# -- dimension


def test_dim_examples():
    assert dim_sp(TWO_TREFOILS) == 8
    assert dim_sp(CABLE) == 8
    assert dim_sp([(2, 3)]) == 1
    assert dim_sp(parse_gamma("u:2,1")) == 1


def test_dim_contact_and_override():
    b = BranchSpec.from_pairs([(2, 3)])
    assert dim_sp(GammaSpec((b, b), {(0, 1): F(2)})) == 10
    assert dim_sp(GammaSpec((b, b), dim_override=3)) == 3


def test_dim_non_integer():
    b = BranchSpec.from_pairs([(2, 3)])
    with pytest.raises(DimensionError):
        dim_sp(GammaSpec((b, b), {(0, 1): F(1, 3)}))
    with pytest.raises(DimensionError):
        dim_sp(parse_gamma("+2,3"))


# -- orbital integrals


def test_cable_weight_polynomials():
    w = weight_polynomials(CABLE)
    assert w[(4,)] == parse_qpoly("1+q+2*q^2+3*q^3+4*q^4+4*q^5+4*q^6+3*q^7+q^8")
    assert w[(1, 1, 1, 1)] == parse_qpoly("1+4*q+10*q^2+20*q^3+34*q^4+48*q^5+54*q^6+48*q^7+24*q^8")


def test_two_trefoils():
    assert orbital_integral(TWO_TREFOILS, (4,)) == parse_qpoly("q^8+2*q^7+q^6")
    assert orbital_integral(TWO_TREFOILS, (1, 1, 1, 1)) == parse_qpoly("24*q^8+24*q^7+6*q^6")


def test_unramified_orbital():
    assert orbital_integral(parse_gamma("u:2,1"), (2,)) == parse_qpoly("q+2")


def test_degree_42():
    got = jacobian_count(parse_gamma("2,1;2,1;2,3"))
    assert got == poly(DEG42)
    assert got.degree() == 42


def test_jacobian_trefoil():
    assert jacobian_count([(2, 3)]) == parse_qpoly("1+q")


def test_orbital_size_mismatch():
    with pytest.raises(ValueError):
        orbital_integral(CABLE, (2, 1))


@pytest.mark.parametrize("branch", FAMILY, ids=family_id)
def test_weight_polynomial_shape(branch):
    n, d = branch.n, dim_sp(branch)
    w = weight_polynomials(branch)
    for lam, p in w.items():
        assert p.is_nonnegative_integral()
        assert p.coeff(0) == 1
        assert p.degree() <= d
    assert w[(n,)].degree() == d
    assert w[(1,) * n].degree() == d


@pytest.mark.parametrize("branch", FAMILY, ids=family_id)
def test_jacobian_is_dyck_sum(branch):
    f = master_symfun(branch)
    total = sum(c.as_qpoly()(1) for c in convert(f, "e").coeffs.values())
    assert jacobian_count(branch)(1) == total


# -- components and top character


def test_components_examples():
    assert component_count(CABLE) == 24
    assert component_count(TWO_TREFOILS) == 24
    assert component_count([(2, 3)]) == 2


def test_top_frobenius_examples():
    assert top_frobenius(CABLE) == (1, 1, 1, 1)
    assert top_frobenius([(2, 3)]) == (1, 1)
    assert top_frobenius([(7, 3)]) == (3, 2, 2)
    assert staircase_partition(3, 7) == (4, 2)


@pytest.mark.parametrize("p", range(2, 9))
def test_top_frobenius_small_slope(p):
    for qq in range(1, p):
        if math.gcd(p, qq) != 1:
            continue
        stair = (p,) + tuple(((qq - k) * p) // qq for k in range(1, qq + 1))
        steps = to_partition(a - b for a, b in zip(stair, stair[1:]))
        assert top_frobenius([(p, qq)]) == steps


@pytest.mark.parametrize("branch", FAMILY, ids=family_id)
def test_component_count_divides(branch):
    n = branch.n
    c = component_count(branch)
    assert math.factorial(n) % c == 0
    if all(s.q >= s.p for s in branch.steps):
        assert c == math.factorial(n)


# -- report


def test_report_round_trip():
    rep = OrbitalReport.build(CABLE)
    assert rep.components == 24 and rep.dim_sp == 8
    assert rep.jacobian_count == rep.by_parahoric[(4,)]
    back = OrbitalReport.from_json(json.loads(json.dumps(rep.to_json())))
    assert back == rep
    assert list(back.by_parahoric) == partitions(4)
