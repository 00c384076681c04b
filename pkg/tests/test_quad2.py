import pytest

from charsum.exceptions import QuadraticFormError
from charsum.lfun import l_polynomial
from charsum.mpoly import MultiPoly
from charsum.quad2 import _eliminate
from charsum.quad2 import build_matrix
from charsum.quad2 import check_condition
from charsum.quad2 import eliminate_pair
from charsum.quad2 import evaluate
from charsum.quad2 import evaluate_polynomial
from charsum.quad2 import quadratic_l_polynomial
from charsum.quad2 import QuadForm
from charsum.quad2 import remove_pth_power_terms
from charsum.sums import CharacterSpec
from charsum.sums import exponential_sum


def brute(f, chi):
    return exponential_sum(f, f.field, 1, chi).value


def random_form(field, n, rng, nonsingular=True):
    while True:
        A = [[field.zero] * n for _ in range(n)]

        for i in range(n):
            for j in range(i + 1, n):
                A[i][j] = A[j][i] = field.element(rng.randrange(field.order))

        linear = tuple(field.element(rng.randrange(field.order)) for _ in range(n))
        constant = field.element(rng.randrange(field.order))
        Q = QuadForm(field, tuple(map(tuple, A)), linear, constant)

        if not nonsingular or check_condition(Q):
            return Q


def random_character(field, rng):
    return CharacterSpec(field.element(rng.randrange(1, field.order)))


@pytest.fixture
def hyperbolic(f2, poly):
    return poly(f2, {(1, 1, 0, 0): 1, (0, 0, 1, 1): 1})


def test_remove_square_terms(f2, chi, poly):
    f = poly(f2, {(2, 0): 1, (1, 1): 1})
    g = remove_pth_power_terms(f, chi(f2))
    assert g == poly(f2, {(1, 0): 1, (1, 1): 1})
    assert brute(f, chi(f2)) == brute(g, chi(f2)) == 2


def test_remove_square_terms_unchanged(f2, chi, hyperbolic):
    assert remove_pth_power_terms(hyperbolic, chi(f2)) == hyperbolic


def test_remove_square_term_f4(f4, chi):
    g = remove_pth_power_terms(MultiPoly.monomial(f4, (2,)), chi(f4))
    assert g == MultiPoly.variable(f4, 1, 1)


@pytest.mark.parametrize("field", ["f3", "f4", "f8", "f9"])
def test_remove_pth_powers_keeps_sum(request, rng, poly, field):
    field = request.getfixturevalue(field)
    p = field.characteristic

    for _ in range(3):
        chi = random_character(field, rng)
        a, c = (field.element(rng.randrange(1, field.order)) for _ in range(2))
        f = poly(field, {(p, 0): a, (1, 1): 1, (0, p): c, (0, 1): 1})
        g = remove_pth_power_terms(f, chi)
        assert all(max(u) < p for u in g.terms)
        assert brute(f, chi) == brute(g, chi)


def test_build_matrix(f2, poly, hyperbolic):
    Q = build_matrix(poly(f2, {(1, 1): 1}))
    assert Q.A == ((0, 1), (1, 0))
    assert Q.linear == (0, 0)
    assert Q.constant == 0

    Q = build_matrix(poly(f2, {(1, 1): 1, (1, 0): 1, (0, 0): 1}))
    assert Q.A == ((0, 1), (1, 0))
    assert Q.linear == (1, 0)
    assert Q.constant == 1

    Q = build_matrix(hyperbolic)
    assert Q.A == ((0, 1, 0, 0), (1, 0, 0, 0), (0, 0, 0, 1), (0, 0, 1, 0))
    assert Q.to_poly() == hyperbolic


def test_build_matrix_errors(f2, f3, poly):
    with pytest.raises(QuadraticFormError):
        build_matrix(poly(f2, {(2, 0): 1, (1, 1): 1}))

    with pytest.raises(QuadraticFormError):
        build_matrix(poly(f3, {(1, 1): 1}))

    with pytest.raises(QuadraticFormError):
        build_matrix(poly(f2, {(2, 1): 1}))


def test_form_validation(f2):
    zero, one = f2.zero, f2.one

    with pytest.raises(QuadraticFormError):
        QuadForm(f2, ((zero, one), (zero, zero)), (zero, zero), zero)

    with pytest.raises(QuadraticFormError):
        QuadForm(f2, ((one, zero), (zero, zero)), (zero, zero), zero)

    with pytest.raises(QuadraticFormError):
        QuadForm(f2, ((zero, one), (one, zero)), (zero,), zero)


def test_check_condition(f2, f4, rng, poly):
    assert check_condition(build_matrix(poly(f2, {(1, 1): 1})))
    assert not check_condition(build_matrix(poly(f2, {(1, 0): 1, (0, 1): 1})))

    for field in (f2, f4):
        for _ in range(5):
            assert not check_condition(random_form(field, 3, rng, nonsingular=False))


def test_eliminate_pair_hyperbolic(f2, chi, poly, hyperbolic):
    reduced, factor = eliminate_pair(build_matrix(hyperbolic), chi(f2))
    assert factor == 2
    assert reduced.labels == (1, 2)
    assert reduced.to_poly() == poly(f2, {(1, 1): 1})


def test_eliminate_pair_errors(f2, chi, poly):
    with pytest.raises(QuadraticFormError):
        eliminate_pair(build_matrix(poly(f2, {(1, 1): 1})), chi(f2))

    singular = poly(f2, {(1, 1, 0, 0): 1, (0, 1, 1, 0): 1})

    with pytest.raises(QuadraticFormError):
        eliminate_pair(build_matrix(singular), chi(f2))


@pytest.mark.parametrize("field", ["f2", "f4", "f8"])
def test_elimination_determinant(request, rng, field):
    field = request.getfixturevalue(field)

    for _ in range(5):
        Q = random_form(field, 4, rng)
        reduced, step = _eliminate(Q, random_character(field, rng))
        assert step.det_preserved
        assert reduced.det() * step.alpha**2 == Q.det()


@pytest.mark.parametrize("field", ["f2", "f4"])
def test_elimination_scales_sum(request, rng, field):
    field = request.getfixturevalue(field)

    for _ in range(4):
        Q = random_form(field, 4, rng)
        chi = random_character(field, rng)
        reduced, factor = eliminate_pair(Q, chi)
        assert brute(Q.to_poly(), chi) == factor * brute(reduced.to_poly(), chi)


@pytest.mark.parametrize(
    ("terms", "value"),
    [
        ({(1, 1): 1}, 2),
        ({(1, 1): 1, (0, 0): 1}, -2),
        ({(1, 1, 0, 0): 1, (0, 0, 1, 1): 1}, 4),
    ],
)
def test_evaluate_examples(f2, chi, poly, terms, value):
    result = evaluate(build_matrix(poly(f2, terms)), chi(f2))
    assert result.value == value
    assert result.sign == (1 if value > 0 else -1)
    assert result.half_exponent == len(next(iter(terms))) // 2


@pytest.mark.parametrize(("field", "n"), [("f2", 2), ("f2", 4), ("f2", 6), ("f4", 4)])
def test_evaluate_matches_enumeration(request, rng, field, n):
    field = request.getfixturevalue(field)

    for _ in range(3):
        Q = random_form(field, n, rng)
        chi = random_character(field, rng)
        result = evaluate(Q, chi)
        assert result.value == brute(Q.to_poly(), chi)
        assert len(result.steps) == n // 2 - 1
        assert abs(result.sign) == 1


def test_evaluate_polynomial_with_squares(f4, rng, poly):
    w = f4.generator
    f = poly(f4, {(2, 0, 0, 0): w, (1, 1, 0, 0): 1, (0, 0, 1, 1): w, (0, 0, 0, 2): 1})

    for b in (f4.one, w, w * w):
        chi = CharacterSpec(b)
        assert evaluate_polynomial(f, chi).value == brute(f, chi)


def test_evaluate_rejects_odd_and_singular(f2, chi, poly):
    with pytest.raises(QuadraticFormError):
        evaluate(build_matrix(poly(f2, {(1, 1, 0): 1})), chi(f2))

    with pytest.raises(QuadraticFormError):
        evaluate(build_matrix(poly(f2, {(1, 0): 1})), chi(f2))


def test_quadratic_l_polynomial(f2, chi, poly, hyperbolic):
    f = poly(f2, {(1, 1): 1, (0, 0): 1})
    P = quadratic_l_polynomial(build_matrix(f), chi(f2))
    assert P == l_polynomial(f, f2, chi(f2))
    assert P.coeffs == (1, 2)

    P = quadratic_l_polynomial(build_matrix(hyperbolic), chi(f2))
    assert P.coeffs == (1, -4)


def test_result_json(f2, chi, hyperbolic):
    data = evaluate(build_matrix(hyperbolic), chi(f2)).to_json()
    assert data["value"] == ["4/1"]
    assert data["zeta"] == 1
    assert data["half_exponent"] == 2
    assert data["pivots"] == [[3, 4]]
