import pytest

from charsum.cyclo import CycNum
from charsum.exceptions import BudgetExceeded
from charsum.exceptions import DimensionMismatch
from charsum.exceptions import InputError
from charsum.gf import extend
from charsum.mpoly import MultiPoly
from charsum.sums import character_value
from charsum.sums import CharacterSpec
from charsum.sums import direct_sum
from charsum.sums import exponential_sum
from charsum.sums import SumKernel
from charsum.sums import sum_sequence


def random_poly(field, n, d, rng):
    terms = {}

    for _ in range(6):
        u = tuple(rng.randint(0, d) for _ in range(n))
        terms[u] = field.element(rng.randrange(field.order))

    return MultiPoly(field, n, terms)


def test_linear_sum_vanishes(f2, chi):
    s = exponential_sum(MultiPoly.variable(f2, 1, 1), f2, 1, chi(f2))
    assert s.counts == (1, 1)
    assert s.value.is_zero


def test_cube_over_f4(f2, chi):
    s = exponential_sum(MultiPoly.monomial(f2, (3,)), f2, 2, chi(f2))
    assert s.counts == (4, 0)
    assert s.value == 4


@pytest.mark.parametrize(("c", "expected"), [(0, 2), (1, -2)])
def test_hyperbolic_plane(f2, chi, poly, c, expected):
    f = poly(f2, {(1, 1): 1, (0, 0): c})
    assert exponential_sum(f, f2, 1, chi(f2)).value == expected


def test_sequence(f2, chi):
    sums = sum_sequence(MultiPoly.monomial(f2, (3,)), f2, chi(f2), 2)
    assert [s.value for s in sums] == [0, 4]
    assert [s.i for s in sums] == [1, 2]


@pytest.mark.parametrize("i_max", [1, 2, 3])
def test_linear_sequence_all_zero(f4, chi, i_max):
    f = MultiPoly(f4, 1, {(1,): f4.generator})
    assert all(s.value.is_zero for s in sum_sequence(f, f4, chi(f4), i_max))


def test_gauss_sum(f3, chi):
    s = exponential_sum(MultiPoly.monomial(f3, (2,)), f3, 1, chi(f3))
    assert s.counts == (1, 2, 0)
    assert s.value == 1 + 2 * CycNum.zeta(3)


def test_counts_cover_every_point(f4, chi, poly):
    f = poly(f4, {(2, 1): 1, (0, 3): f4.generator, (1, 0): 1})
    s = exponential_sum(f, f4, 2, chi(f4))
    assert s.total == 16**2


@pytest.mark.parametrize("field", ["f3", "f4", "f9"])
@pytest.mark.parametrize("i", [1, 2])
def test_kernel_matches_direct_evaluation(request, rng, field, i):
    field = request.getfixturevalue(field)

    if field.order**i > 16:
        n = 1
    else:
        n = 2

    for _ in range(3):
        f = random_poly(field, n, 3, rng)
        b = field.element(rng.randrange(1, field.order))
        chi = CharacterSpec(b)
        assert exponential_sum(f, field, i, chi) == direct_sum(f, field, i, chi)


def test_constant_polynomial(f3):
    f = MultiPoly.constant(f3, 2, 1)
    s = exponential_sum(f, f3, 1, CharacterSpec.default(f3))
    assert s.value == 9 * CycNum.zeta(3)


@pytest.mark.filterwarnings("ignore::DeprecationWarning")
def test_workers_do_not_change_result(f3, chi, poly):
    f = poly(f3, {(2, 1): 1, (0, 2): 2, (1, 0): 1})
    one = exponential_sum(f, f3, 2, chi(f3), workers=1)
    many = exponential_sum(f, f3, 2, chi(f3), workers=4)
    assert one == many


def test_blocks(f4, chi):
    kernel = SumKernel(MultiPoly.variable(f4, 2, 1), extend(f4, 1), chi(f4))
    assert kernel.blocks(1) == [(0, 4)]
    assert kernel.blocks(3) == [(0, 2), (2, 3), (3, 4)]
    assert kernel.blocks(10) == [(0, 1), (1, 2), (2, 3), (3, 4)]


def test_twist_conjugates(f3, poly):
    f = poly(f3, {(3, 0): 1, (1, 2): 2, (0, 1): 1})
    chi = CharacterSpec.default(f3)
    s = exponential_sum(f, f3, 1, chi).value
    assert exponential_sum(f, f3, 1, chi.twisted(2)).value == s.conjugate(2)


def test_character_value(f3, f4):
    chi = CharacterSpec.default(f3)
    assert character_value(chi, f3.from_int(2)) == CycNum.zeta(3, 2)
    assert character_value(CharacterSpec.default(f4), f4.generator) == -1
    assert character_value(CharacterSpec.default(f4), f4.one) == 1


def test_trivial_character_rejected(f3):
    with pytest.raises(InputError):
        CharacterSpec(f3.zero)


def test_budget(f3, chi, poly):
    f = poly(f3, {(1, 1): 1})

    with pytest.raises(BudgetExceeded) as exc_info:
        exponential_sum(f, f3, 3, chi(f3), budget=100)

    assert exc_info.value.required == 3**6

    with pytest.raises(BudgetExceeded):
        sum_sequence(f, f3, chi(f3), 3, budget=100)


def test_mismatched_field(f2, f3):
    with pytest.raises(DimensionMismatch):
        exponential_sum(MultiPoly.variable(f2, 1, 1), f2, 1, CharacterSpec.default(f3))


def test_to_json(f3, chi):
    s = exponential_sum(MultiPoly.monomial(f3, (2,)), f3, 1, chi(f3))
    assert s.to_json() == {"i": 1, "counts": [1, 2, 0], "value": ["1/1", "2/1"]}


@pytest.mark.parametrize("field", ["f2", "f3", "f4", "f9"])
def test_twist_moves_into_polynomial(request, rng, field):
    field = request.getfixturevalue(field)
    chi = CharacterSpec.default(field)

    for _ in range(10):
        f = random_poly(field, 1, 3, rng)
        u = field.element(rng.randrange(1, field.order))

        for i in (1, 2):
            twisted = exponential_sum(f, field, i, chi.twisted(u))
            assert twisted.value == exponential_sum(f.scale(u), field, i, chi).value
