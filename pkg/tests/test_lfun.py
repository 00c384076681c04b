import pytest

from charsum.cyclo import CycNum
from charsum.exceptions import BudgetExceeded
from charsum.exceptions import HypothesisRefused
from charsum.exceptions import InconsistencyError
from charsum.exceptions import InputError
from charsum.lfun import consistency_table
from charsum.lfun import declared_degree
from charsum.lfun import from_power_sums
from charsum.lfun import galois_twist_check
from charsum.lfun import l_polynomial
from charsum.lfun import LPolynomial
from charsum.lfun import SIGN_CONVENTION
from charsum.lfun import verify_consistency
from charsum.mpoly import MultiPoly
from charsum.sums import sum_sequence

zeta3 = CycNum.zeta(3)


@pytest.fixture
def cube(f2):
    return MultiPoly.monomial(f2, (3,))


@pytest.fixture
def square(f3):
    return MultiPoly.monomial(f3, (2,))


def test_linear_is_trivial(f2, chi):
    P = l_polynomial(MultiPoly.variable(f2, 1, 1), f2, chi(f2))
    assert P.D == 0
    assert P.coeffs == (1,)


def test_cube_over_f2(f2, chi, cube):
    P = l_polynomial(cube, f2, chi(f2))
    assert P.coeffs == (1, 0, 2)
    assert str(P) == "(1) + (2)*t^2"


def test_gauss_sum_polynomial(f3, chi, square):
    P = l_polynomial(square, f3, chi(f3))
    assert P.coeffs == (1, 1 + 2 * zeta3)


def test_hyperbolic_plane(f2, chi, poly):
    P = l_polynomial(poly(f2, {(1, 1): 1}), f2, chi(f2))
    assert P.coeffs == (1, -2)


def test_uses_given_sums(f2, chi, cube):
    sums = sum_sequence(cube, f2, chi(f2), 2)
    P = l_polynomial(cube, f2, chi(f2), budget=1, sums=sums)
    assert P.coeffs == (1, 0, 2)


def test_refuses_without_regular_sequence(f2, chi, poly):
    with pytest.raises(HypothesisRefused):
        l_polynomial(poly(f2, {(3, 0): 1, (1, 1): 1}), f2, chi(f2))


def test_constant_rejected(f2, chi):
    with pytest.raises(InputError):
        l_polynomial(MultiPoly.constant(f2, 1, 1), f2, chi(f2))

    with pytest.raises(InputError):
        declared_degree(MultiPoly(f2, 1))


def test_declared_degree(f2, f3, poly):
    assert declared_degree(poly(f2, {(3, 0): 1, (0, 3): 1})) == 4
    assert declared_degree(poly(f3, {(1, 0): 1})) == 0
    assert declared_degree(poly(f3, {(2, 2): 1, (1, 0): 1})) == 9


def test_budget(f3, chi, poly):
    f = poly(f3, {(4, 0): 1, (0, 4): 2})

    with pytest.raises(BudgetExceeded):
        l_polynomial(f, f3, chi(f3), budget=1000)


@pytest.mark.parametrize("extra", [1, 2])
def test_consistency_cube(f2, chi, cube, extra):
    P = l_polynomial(cube, f2, chi(f2))
    assert verify_consistency(P, cube, f2, chi(f2), extra)


def test_consistency_linear(f2, chi):
    f = MultiPoly.variable(f2, 1, 1)
    P = l_polynomial(f, f2, chi(f2))
    table = consistency_table(P, f, f2, chi(f2), extra=2)
    assert [(i, a, b) for i, a, b in table] == [(1, 0, 0), (2, 0, 0)]


def test_consistency_hyperbolic_plane(f2, chi, poly):
    f = poly(f2, {(1, 1): 1})
    P = l_polynomial(f, f2, chi(f2))
    ((i, predicted, computed),) = consistency_table(P, f, f2, chi(f2))
    assert i == 2
    assert predicted == computed == 4


def test_consistency_detects_wrong_polynomial(f2, chi, cube):
    one = CycNum.one(2)
    wrong = LPolynomial(1, 2, 1, (one, one, 2 * one))
    assert not verify_consistency(wrong, cube, f2, chi(f2))


def test_consistency_budget(f3, chi, square):
    P = l_polynomial(square, f3, chi(f3))

    with pytest.raises(BudgetExceeded):
        consistency_table(P, square, f3, chi(f3), extra=5, budget=100)


def test_galois_twist(f3, chi, square, poly):
    P = l_polynomial(square, f3, chi(f3))
    assert galois_twist_check(P, square, f3, chi(f3), 2)

    f = poly(f3, {(1, 1): 1, (2, 0): 1, (1, 0): 2})
    P = l_polynomial(f, f3, chi(f3))
    assert galois_twist_check(P, f, f3, chi(f3), 2)

    with pytest.raises(ValueError):
        galois_twist_check(P, f, f3, chi(f3), 3)


def test_power_sums_inverse_to_newton(f3, chi, poly):
    f = poly(f3, {(1, 1): 1, (2, 0): 1, (1, 0): 2})
    P = l_polynomial(f, f3, chi(f3))
    assert from_power_sums(P.power_sums(P.D), P.n, P.p, P.a) == P


def test_predicted_sums_match_enumeration(f3, chi, poly):
    f = poly(f3, {(2, 0): 1, (0, 2): 1})
    P = l_polynomial(f, f3, chi(f3))
    sums = sum_sequence(f, f3, chi(f3), 3)
    assert P.predicted_sums(3) == [s.value for s in sums]


def test_from_power_sums_leading_zero():
    with pytest.raises(InconsistencyError):
        from_power_sums([CycNum.zero(3)], 1, 3, 1)


def test_from_power_sums_not_integral():
    with pytest.raises(InconsistencyError):
        from_power_sums([CycNum.one(3), CycNum.zero(3)], 1, 3, 1)


def test_to_json(f2, chi, cube):
    data = l_polynomial(cube, f2, chi(f2)).to_json()
    assert data["convention"] == SIGN_CONVENTION
    assert data["degree"] == 2
    assert data["coefficients"] == [["1/1"], ["0/1"], ["2/1"]]


def test_embedded(f3, chi, square):
    P = l_polynomial(square, f3, chi(f3))
    a1 = P.embedded(1)[1]
    a2 = P.embedded(2)[1]
    assert abs(a1 - a2.conjugate()) < 1e-20
