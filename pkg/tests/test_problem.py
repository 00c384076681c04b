import pytest

from charsum.exceptions import InputError
from charsum.exceptions import InvalidField
from charsum.exceptions import ParseError
from charsum.mpoly import MultiPoly
from charsum.problem import format_problem
from charsum.problem import load_problem
from charsum.problem import parse_problem


def test_minimal_file():
    spec = parse_problem("p=2 a=1 n=1 poly: 1*x1^3")
    assert spec.field.q == 2
    assert spec.f == MultiPoly.monomial(spec.field, (3,))
    assert spec.chi.b.is_one
    assert spec.n == 1


def test_full_file():
    spec = parse_problem(
        """
        # Fermat cubic over F_4
        p=2 a=2 modulus=1,1 n=2
        b=(0,1)
        budget=5000 precision=96 tol=1e-12
        poly:
        x1^3        # leading term
        (0,1)*x2^3 + x1 x2
        """
    )
    field = spec.field
    assert field.modulus == (1, 1, 1)
    assert spec.chi.b == field.generator
    assert spec.budget == 5000
    assert spec.precision == 96
    assert spec.tol == 1e-12
    assert spec.f.coefficient((0, 3)) == field.generator
    assert spec.f.coefficient((1, 1)).is_one
    assert len(spec.f) == 3


def test_terms_are_summed():
    spec = parse_problem("p=3 n=2\npoly:\nx1^2 + 2*x1^2\nx2 + x2\n1 + 2")
    assert spec.f == MultiPoly(spec.field, 2, {(0, 1): 2})


def test_repeated_factors():
    spec = parse_problem("p=5 n=2 poly: 3*x1*x1*x2^2")
    assert spec.f == MultiPoly(spec.field, 2, {(2, 2): 3})


def test_trivial_character_rejected():
    with pytest.raises(InputError) as exc_info:
        parse_problem("p=2 n=1 b=0 poly: x1^3")

    assert exc_info.value.stage == "parse"


@pytest.mark.parametrize(
    ("text", "lineno"),
    [
        ("p=2 n=1 q=3\npoly: x1", 1),
        ("p=2 n=1\np=3\npoly: x1", 2),
        ("p=2\nn=one\npoly: x1", 2),
        ("p=2 n=1\nstray\npoly: x1", 2),
        ("p=2 n=1\npoly:\nx1\nx2^2", 4),
        ("p=2 n=1\npoly:\ny1", 3),
        ("p=2 n=0\npoly: x1", 1),
        ("p=2 a=2 n=1\npoly: (1,0,1)*x1", 2),
        ("p=2 n=1\nprecision=20\npoly: x1^3", 2),
        ("p=2 n=1 budget=0\npoly: x1^3", 1),
        ("p=2 n=1\n\ntol=0 poly: x1^3", 3),
        ("p=2 n=1\ntol=-1e-9\npoly: x1^3", 2),
        ("p=2 n=1\ntol=nan\npoly: x1^3", 2),
    ],
)
def test_parse_errors(text, lineno):
    with pytest.raises(ParseError) as exc_info:
        parse_problem(text)

    assert exc_info.value.lineno == lineno
    assert exc_info.value.description.startswith(f"line {lineno}: ")


def test_smallest_settings():
    spec = parse_problem("p=2 n=1 precision=53 budget=1 tol=1e-300 poly: x1^3")
    assert (spec.precision, spec.budget, spec.tol) == (53, 1, 1e-300)


@pytest.mark.parametrize(
    "text",
    ["n=1 poly: x1", "p=2 poly: x1", "p=2 n=1", "p=2 n=1 poly:\n# nothing\n"],
)
def test_missing_parts(text):
    with pytest.raises(ParseError):
        parse_problem(text)


@pytest.mark.parametrize(
    "text",
    ["p=4 n=1 poly: x1", "p=2 a=2 modulus=1,0 n=1 poly: x1"],
)
def test_invalid_field(text):
    with pytest.raises(InvalidField):
        parse_problem(text)


def test_with_overrides():
    spec = parse_problem("p=2 n=1 budget=10 poly: x1^3")
    assert spec.with_overrides(budget=None, precision=200).budget == 10
    assert spec.with_overrides(budget=20).budget == 20
    assert spec.with_overrides(precision=200).precision == 200


def test_to_json():
    spec = parse_problem("p=3 n=1 b=2 poly: x1^2")
    assert spec.to_json() == {
        "p": 3,
        "a": 1,
        "modulus": None,
        "n": 1,
        "b": ["2"],
        "poly": "x1^2",
    }


@pytest.mark.parametrize(
    "text",
    [
        "p=2 n=1 poly: x1^3",
        "p=2 a=2 n=2 b=(0,1) poly: x1^3 + (1,1)*x2^3 + 1",
        "p=3 n=2 budget=99 tol=0.001 poly: 2*x1^2 + x1*x2 + 2",
    ],
)
def test_format_problem(text):
    spec = parse_problem(text)
    assert parse_problem(format_problem(spec)) == spec


def test_load_problem(problem_file):
    path = problem_file("p=2 n=1\npoly:\nx1^3\n")
    assert load_problem(path).f.pretty() == "x1^3"
