"""Problem files
=============

A problem file names the field, the polynomial and the character::

    # x^3 over F_2
    p=2 a=1 n=1
    b=1 budget=1000000
    poly:
    1*x1^3

Settings are ``key=value`` tokens, several per line if wanted. After
``poly:`` come the terms, one per line or separated by ``+``. A term is an
optional coefficient followed by factors ``x3`` or ``x3^2`` joined by
``*`` or whitespace. A coefficient is an integer (read mod ``p``) or a
coordinate vector ``(c0,c1,...)`` over ``F_p``, constant first, in the
basis ``1, t, t^2, ...`` of ``F_p[t]/(modulus)``. ``#`` starts a comment.

Repeated monomials are summed and zero terms dropped.
"""
import re
import typing as t
from dataclasses import dataclass
from dataclasses import replace

from .cyclo import DEFAULT_PRECISION
from .cyclo import MIN_PRECISION
from .exceptions import InputError
from .exceptions import ParseError
from .gf import build_field
from .gf import FieldDesc
from .gf import FieldElement
from .mpoly import Exponent
from .mpoly import MultiPoly
from .polygon import DEFAULT_TOLERANCE
from .sums import CharacterSpec
from .sums import DEFAULT_BUDGET

_setting_re = re.compile(r"([A-Za-z_]+)\s*=\s*(\([^)]*\)|[^\s()]+)")
_coeff_re = re.compile(r"\s*(\([^)]*\)|[0-9][0-9,]*)\s*\*?\s*")
_factor_re = re.compile(r"\s*\*?\s*x(\d+)(?:\s*\^\s*(\d+))?\s*")

_int_keys = {"p", "a", "n", "budget", "precision"}
_vector_keys = {"modulus", "b"}
_float_keys = {"tol"}


@dataclass(frozen=True)
class ProblemSpec:
    """A parsed problem: ``f`` over ``field`` with character ``chi`` and
    the resource settings the pipeline runs with.
    """

    field: FieldDesc
    f: MultiPoly
    chi: CharacterSpec
    budget: int = DEFAULT_BUDGET
    precision: int = DEFAULT_PRECISION
    tol: float = DEFAULT_TOLERANCE

    @property
    def n(self) -> int:
        return self.f.n

    def with_overrides(self, **kwargs: t.Any) -> "ProblemSpec":
        """Copy with the given settings replaced, ignoring ``None``."""
        return replace(self, **{k: v for k, v in kwargs.items() if v is not None})

    def to_json(self) -> t.Dict[str, t.Any]:
        return {
            "p": self.field.p,
            "a": self.field.a,
            "modulus": None if self.field.modulus is None else list(self.field.modulus),
            "n": self.n,
            "b": self.chi.to_json(),
            "poly": self.f.pretty(),
        }


def _parse_vector(value: str, lineno: t.Optional[int]) -> t.List[int]:
    value = value.strip()

    if value.startswith("("):
        value = value[1:-1]

    try:
        return [int(x) for x in value.split(",") if x.strip()]
    except ValueError:
        raise ParseError(f"not a list of integers: {value!r}", lineno) from None


def _coefficient(
    field: FieldDesc, digits: t.List[int], lineno: t.Optional[int]
) -> FieldElement:
    if len(digits) == 1:
        return field.from_int(digits[0])

    if len(digits) > field.a:
        raise ParseError(
            f"coefficient has {len(digits)} coordinates, F_{field.q} has {field.a}",
            lineno,
        )

    digits = digits + [0] * (field.a - len(digits))
    return FieldElement(field, [d % field.p for d in digits])


def _parse_term(
    text: str, field: FieldDesc, n: int, lineno: int
) -> t.Tuple[Exponent, FieldElement]:
    pos = 0
    match = _coeff_re.match(text)

    if match is not None and not text.lstrip().startswith("x"):
        coeff = _coefficient(field, _parse_vector(match.group(1), lineno), lineno)
        pos = match.end()
    else:
        coeff = field.one

    exponent = [0] * n

    while pos < len(text):
        match = _factor_re.match(text, pos)

        if match is None or match.end() == pos:
            raise ParseError(f"cannot read term {text.strip()!r}", lineno)

        var = int(match.group(1))

        if not 1 <= var <= n:
            raise ParseError(f"x{var} is not one of x1..x{n}", lineno)

        exponent[var - 1] += int(match.group(2) or 1)
        pos = match.end()

    return tuple(exponent), coeff


def _split_terms(text: str) -> t.List[str]:
    return [part for part in (s.strip() for s in text.split("+")) if part]


def _check_ranges(settings: t.Dict[str, t.Any], where: t.Dict[str, int]) -> None:
    if settings.get("precision", MIN_PRECISION) < MIN_PRECISION:
        raise ParseError(
            f"precision must be at least {MIN_PRECISION} bits", where["precision"]
        )

    if settings.get("budget", 1) < 1:
        raise ParseError("budget must be positive", where["budget"])

    # also rejects nan
    if "tol" in settings and not settings["tol"] > 0:
        raise ParseError("tol must be positive", where["tol"])


def parse_problem(text: str) -> ProblemSpec:
    """Parse and validate a problem file.

    :raises ParseError: for syntax errors, with the line number.
    :raises InvalidField: if ``p`` is not prime or the modulus is reducible.
    :raises InputError: if ``b`` is zero.
    """
    settings: t.Dict[str, t.Any] = {}
    where: t.Dict[str, int] = {}
    term_lines: t.List[t.Tuple[int, str]] = []
    in_poly = False

    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()

        if not line:
            continue

        if not in_poly:
            head, sep, tail = line.partition("poly:")
            rest = _setting_re.sub("", head).strip()

            if rest:
                raise ParseError(f"unexpected {rest!r}", lineno)

            for key, value in _setting_re.findall(head):
                key = key.lower()

                if key in settings:
                    raise ParseError(f"{key} is set twice", lineno)

                if key in _int_keys:
                    try:
                        settings[key] = int(value)
                    except ValueError:
                        raise ParseError(f"{key} must be an integer", lineno) from None
                elif key in _float_keys:
                    try:
                        settings[key] = float(value)
                    except ValueError:
                        raise ParseError(f"{key} must be a number", lineno) from None
                elif key in _vector_keys:
                    settings[key] = _parse_vector(value, lineno)
                else:
                    raise ParseError(f"unknown setting {key!r}", lineno)

                where[key] = lineno

            if sep:
                in_poly = True
                line = tail.strip()

                if not line:
                    continue
            else:
                continue

        term_lines.append((lineno, line))

    for key in ("p", "n"):
        if key not in settings:
            raise ParseError(f"missing setting {key}=")

    if not in_poly:
        raise ParseError("missing 'poly:' section")

    if not term_lines:
        raise ParseError("the polynomial has no terms")

    p = settings["p"]
    a = settings.get("a", 1)
    n = settings["n"]

    if n < 1:
        raise ParseError("n must be positive", where["n"])

    _check_ranges(settings, where)

    modulus = settings.get("modulus")

    if modulus is not None and len(modulus) == a:
        modulus = modulus + [1]

    field = build_field(p, a, modulus)
    terms = []

    for lineno, line in term_lines:
        for part in _split_terms(line):
            terms.append(_parse_term(part, field, n, lineno))

    f = MultiPoly.from_terms(field, n, terms)

    b_digits = settings.get("b", [1])
    b = _coefficient(field, b_digits, where.get("b"))

    if b.is_zero:
        raise InputError("b=0 gives the trivial character", stage="parse")

    spec = ProblemSpec(field, f, CharacterSpec(b))
    return spec.with_overrides(
        budget=settings.get("budget"),
        precision=settings.get("precision"),
        tol=settings.get("tol"),
    )


def load_problem(path: str) -> ProblemSpec:
    with open(path, encoding="utf-8") as f:
        return parse_problem(f.read())


def format_problem(spec: ProblemSpec) -> str:
    """Render ``spec`` in the problem file format."""
    field = spec.field
    lines = [f"p={field.p} a={field.a} n={spec.n}"]

    if field.modulus is not None:
        lines.append("modulus=" + ",".join(map(str, field.modulus)))

    lines.append("b=(" + ",".join(spec.chi.to_json()) + ")")
    lines.append(
        f"budget={spec.budget} precision={spec.precision} tol={spec.tol!r}"
    )
    lines.append("poly:")

    for u, c in spec.f.sorted_terms():
        factors = [f"x{i}^{e}" for i, e in enumerate(u, 1) if e]
        lines.append(" * ".join([f"({','.join(map(str, c.coords))})"] + factors))

    return "\n".join(lines) + "\n"
