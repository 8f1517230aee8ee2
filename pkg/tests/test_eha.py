import math

import pytest
from hypothesis import given, strategies as st

from shalika.combinat import compositions, dominates, partitions
from shalika.eha import comp_weight, elementary_slope, pkm_compositions, pkm_newton, slope_plethysm
from shalika.qpoly import QPoly, RatFun, parse_qpoly, q_int
from shalika.symfunc import SymFun, c_lambda, convert, e, th

q = QPoly.q()


def test_elementary_small():
    assert elementary_slope(1, 2, 1).coeffs == {(2,): RatFun(1)}
    assert elementary_slope(3, 2, 1).coeffs == {(1, 1): RatFun(1), (2,): RatFun(q)}


def test_e322_path_count():
    f = elementary_slope(3, 2, 2)
    total = sum(c.as_qpoly()(1) for _, c in f.items())
    assert total == 23


def test_non_coprime():
    with pytest.raises(ValueError):
        elementary_slope(2, 4, 1)
    with pytest.raises(ValueError):
        slope_plethysm(e(1), 4, 2)


def test_plethysm_golden():
    got = slope_plethysm(e(2), 3, 2)
    want = {
        (1, 1, 1, 1): "q^2+q+1",
        (2, 1, 1): "q^5+2*q^4+4*q^3+2*q^2+2*q",
        (2, 2): "q^6+q^4+q^2",
        (3, 1): "q^7+q^6+2*q^5+q^4",
        (4,): "q^8",
    }
    assert got.coeffs == {k: RatFun(parse_qpoly(v)) for k, v in want.items()}


def test_plethysm_trivial():
    assert slope_plethysm(e(1), 1, 2) == e(2)
    assert slope_plethysm(SymFun.one("e"), 3, 2) == SymFun.one("e")


def test_composition_weights():
    d = (1 - q) ** 2 * (1 - q**2)
    assert comp_weight((2, 1, 1), 3, 2, 2) == RatFun(-q * (1 + q**2)) / d
    assert comp_weight((1, 2, 1), 3, 2, 2) == RatFun(-2 * q**2) / d
    assert comp_weight((1, 1, 2), 3, 2, 2) == RatFun(-q * (1 + q)) / (1 - q) ** 3


def test_composition_weight_size_check():
    with pytest.raises(ValueError):
        comp_weight((1, 1), 3, 2, 2)


def test_p32():
    got = pkm_compositions(3, 2, 1)
    assert got.basis == "th"
    assert got.coeffs == {(1, 1): RatFun(1) / (1 - q), (2,): RatFun(-q) / (1 - q)}


def test_p64_th211():
    # the three raw weights sum to minus the reference total; the sign of
    # P_{6,4}.1 follows the Newton route
    c = pkm_compositions(3, 2, 2)[(2, 1, 1)]
    reference = RatFun(-2 * q**2 - 2 * q) / (q - 1) ** 3
    assert c == reference
    raw = sum((comp_weight(a, 3, 2, 2) for a in [(2, 1, 1), (1, 2, 1), (1, 1, 2)]), RatFun(0))
    assert raw == -reference


def test_th2_plethysm_vanishes_at_211():
    # th_2 = (q+1)/2 p_11 + (1-q)/2 p_2, then p_11 -> P_{3,2}^2 and p_2 -> P_{6,4}
    p32 = pkm_compositions(3, 2, 1)
    img = (p32 * p32).scale(RatFun(q + 1) / 2) + pkm_compositions(3, 2, 2).scale(RatFun(1 - q) / 2)
    assert img[(2, 1, 1)] == RatFun(0)
    assert convert(slope_plethysm(th(2), 3, 2), "th")[(2, 1, 1)] == RatFun(0)


def test_zero_slope():
    # m = 0: all steps vanish; both prefactor terms equal 1
    w = comp_weight((2,), 0, 1, 2)
    assert w == RatFun(-2) / c_lambda((1,))


COPRIME = [(m, n) for n in range(1, 4) for m in range(0, 7) if math.gcd(m, n) == 1 and (m or n == 1)]


@pytest.mark.parametrize("m,n", [x for x in COPRIME if x[0] > 0])
@pytest.mark.parametrize("k", [1, 2, 3])
def test_two_routes(m, n, k):
    assert convert(pkm_compositions(m, n, k), "e") == pkm_newton(m, n, k)


@pytest.mark.parametrize("m,n,k", [(1, 1, 2), (3, 2, 2), (2, 3, 1), (5, 3, 1), (3, 1, 3), (1, 3, 2)])
def test_elementary_slope_positivity(m, n, k):
    f = elementary_slope(m, n, k)
    keys = list(f.coeffs)
    for c in f.coeffs.values():
        assert c.is_polynomial() and c.as_qpoly().is_nonnegative_integral()
    minimal = [a for a in keys if not any(b != a and dominates(a, b) for b in keys)]
    assert len(minimal) == 1
    assert f.coeffs[minimal[0]].as_qpoly().coeff(0) == 1


@pytest.mark.parametrize("N", range(1, 5))
def test_all_ones_coefficient(N):
    # th_{1^N} collects only the all-ones composition: contents vanish, prefactor is [k]_q
    for m, n, k in [(m, n, k) for n in range(1, N + 1) for k in range(1, N + 1) if n * k == N for m in range(1, 4) if math.gcd(m, n) == 1]:
        got = pkm_compositions(m, n, k)[(1,) * N]
        want = RatFun(q_int(k)) * (-1) ** (k - 1) / c_lambda((1,) * (N - 1))
        assert got == want


@given(st.integers(1, 6), st.integers(1, 4))
def test_phi_slope_m1_fixes_partitions(m, n_prime):
    # phi_{m/1} scales each th by a q-power
    if n_prime > 3:
        return
    for lam in partitions(n_prime):
        got = convert(slope_plethysm(th(*lam), m, 1), "th")
        assert list(got.coeffs) == [lam]
        c = got.coeffs[lam]
        assert c.is_polynomial() and len(c.as_qpoly().terms()) == 1
