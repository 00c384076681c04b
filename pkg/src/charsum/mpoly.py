"""Sparse multivariate polynomials over ``F_q``.

A :class:`MultiPoly` maps exponent vectors to nonzero coefficients in a
:class:`~charsum.gf.FieldDesc`. Variables are numbered from 1, matching
the ``x1 ... xn`` names of the problem file format.
"""
import typing as t

from .exceptions import DimensionMismatch
from .gf import FieldDesc
from .gf import FieldElement

Exponent = t.Tuple[int, ...]


def graded_lex_key(u: Exponent) -> t.Tuple[int, Exponent]:
    """Sort key for graded-lexicographic order with ``x1 > ... > xn``.
    Sorting with ``reverse=True`` puts the largest monomial first.
    """
    return (sum(u), u)


class MultiPoly:
    """A polynomial in ``n`` variables. Terms with zero coefficient are
    dropped on construction; duplicate exponent vectors cannot occur
    since terms are given as a mapping. Instances are immutable.

    :param field: the coefficient field.
    :param n: the number of variables.
    :param terms: mapping of exponent vectors of length ``n`` to
        coefficients. Ints are coerced into the field.
    """

    __slots__ = ("field", "n", "_terms")

    def __init__(
        self,
        field: FieldDesc,
        n: int,
        terms: t.Optional[t.Mapping[Exponent, t.Union[FieldElement, int]]] = None,
    ) -> None:
        if n < 1:
            raise ValueError("a polynomial needs at least one variable")

        self.field = field
        self.n = n
        clean: t.Dict[Exponent, FieldElement] = {}

        for u, c in (terms or {}).items():
            u = tuple(u)

            if len(u) != n or any(e < 0 for e in u):
                raise DimensionMismatch(f"bad exponent vector {u} for {n} variables")

            if isinstance(c, int):
                c = field.from_int(c)
            elif c.field != field:
                raise TypeError(f"coefficient {c!r} is not in {field}")

            if not c.is_zero:
                clean[u] = c

        self._terms = clean

    @classmethod
    def from_terms(
        cls,
        field: FieldDesc,
        n: int,
        terms: t.Iterable[t.Tuple[Exponent, t.Union[FieldElement, int]]],
    ) -> "MultiPoly":
        """Build from a term list, summing coefficients of repeated
        exponent vectors.
        """
        acc: t.Dict[Exponent, FieldElement] = {}

        for u, c in terms:
            u = tuple(u)
            acc[u] = acc.get(u, field.zero) + c

        return cls(field, n, acc)

    @classmethod
    def constant(
        cls, field: FieldDesc, n: int, c: t.Union[FieldElement, int]
    ) -> "MultiPoly":
        return cls(field, n, {(0,) * n: c})

    @classmethod
    def monomial(
        cls, field: FieldDesc, u: Exponent, c: t.Union[FieldElement, int] = 1
    ) -> "MultiPoly":
        return cls(field, len(u), {tuple(u): c})

    @classmethod
    def variable(cls, field: FieldDesc, n: int, i: int) -> "MultiPoly":
        """The polynomial ``x_i``, with ``i`` counted from 1."""
        u = [0] * n
        u[i - 1] = 1
        return cls(field, n, {tuple(u): 1})

    @property
    def terms(self) -> t.Dict[Exponent, FieldElement]:
        return dict(self._terms)

    def sorted_terms(self) -> t.List[t.Tuple[Exponent, FieldElement]]:
        """Terms in graded-lex order, largest monomial first."""
        return sorted(
            self._terms.items(), key=lambda item: graded_lex_key(item[0]), reverse=True
        )

    def coefficient(self, u: Exponent) -> FieldElement:
        return self._terms.get(tuple(u), self.field.zero)

    @property
    def is_zero(self) -> bool:
        return not self._terms

    def is_homogeneous(self) -> bool:
        return len({sum(u) for u in self._terms}) <= 1

    def __len__(self) -> int:
        return len(self._terms)

    def _check_compatible(self, other: "MultiPoly") -> None:
        if other.field != self.field or other.n != self.n:
            raise TypeError("polynomials over different rings")

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        self._check_compatible(other)
        rv = dict(self._terms)

        for u, c in other._terms.items():
            rv[u] = rv.get(u, self.field.zero) + c

        return MultiPoly(self.field, self.n, rv)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.field, self.n, {u: -c for u, c in self._terms.items()})

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        return self + (-other)

    def scale(self, c: t.Union[FieldElement, int]) -> "MultiPoly":
        return MultiPoly(self.field, self.n, {u: c * v for u, v in self._terms.items()})

    def __mul__(
        self, other: t.Union["MultiPoly", FieldElement, int]
    ) -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return self.scale(other)

        self._check_compatible(other)
        rv: t.Dict[Exponent, FieldElement] = {}

        for u, c in self._terms.items():
            for v, e in other._terms.items():
                w = tuple(x + y for x, y in zip(u, v))
                rv[w] = rv.get(w, self.field.zero) + c * e

        return MultiPoly(self.field, self.n, rv)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented

        return (
            self.field == other.field
            and self.n == other.n
            and self._terms == other._terms
        )

    def __hash__(self) -> int:
        return hash((self.field, self.n, frozenset(self._terms.items())))

    def __reduce__(self) -> t.Any:
        return MultiPoly, (self.field, self.n, self._terms)

    def pretty(self) -> str:
        """Render as ``c*x1^e1*x2^e2 + ...`` in graded-lex order."""
        if self.is_zero:
            return "0"

        parts = []

        for u, c in self.sorted_terms():
            factors = [str(c)] if (not c.is_one or not any(u)) else []

            for i, e in enumerate(u, 1):
                if e == 1:
                    factors.append(f"x{i}")
                elif e:
                    factors.append(f"x{i}^{e}")

            parts.append("*".join(factors))

        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"<MultiPoly {self.pretty()} over {self.field}>"


def degree(f: MultiPoly) -> int:
    """Total degree, the largest ``|u|`` over the stored terms."""
    if f.is_zero:
        raise ValueError("the zero polynomial has no degree")

    return max(sum(u) for u in f._terms)


def homogeneous_component(f: MultiPoly, j: int) -> MultiPoly:
    """``f^{(j)}``, the sum of the terms of total degree ``j``."""
    if j < 0:
        raise ValueError("degree must be nonnegative")

    return MultiPoly(f.field, f.n, {u: c for u, c in f._terms.items() if sum(u) == j})


def homogeneous_components(f: MultiPoly) -> t.Dict[int, MultiPoly]:
    """All nonzero homogeneous components, keyed by degree."""
    return {
        j: homogeneous_component(f, j) for j in sorted({sum(u) for u in f._terms})
    }


def partial_derivative(f: MultiPoly, i: int) -> MultiPoly:
    """Formal derivative in ``x_i`` (``i`` counted from 1). Exponents are
    multiplied in ``F_p``, so ``d(x^p)/dx = 0``.
    """
    if not 1 <= i <= f.n:
        raise ValueError(f"variable index {i} out of range 1..{f.n}")

    rv = {}

    for u, c in f._terms.items():
        e = u[i - 1]

        if e == 0:
            continue

        v = list(u)
        v[i - 1] = e - 1
        rv[tuple(v)] = c * e

    return MultiPoly(f.field, f.n, rv)


def evaluate(f: MultiPoly, point: t.Sequence[FieldElement]) -> FieldElement:
    """Evaluate at a point with coordinates in ``F_q`` or an extension
    ``F_{q^i}`` built over it. Coefficients are carried into the point's
    field by the canonical base inclusion.

    :raises DimensionMismatch: if ``point`` does not have ``n`` coordinates.
    """
    if len(point) != f.n:
        raise DimensionMismatch(f"expected a point with {f.n} coordinates")

    target = point[0].field
    total = target.zero

    for u, c in f._terms.items():
        term = target.embed(c)

        for x, e in zip(point, u):
            if e:
                term = term * x**e

        total = total + term

    return total
