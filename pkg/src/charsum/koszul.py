"""Regular sequences of top-degree partials.

The partials ``df^(d)/dx_1, ..., df^(d)/dx_n`` are ``n`` forms of degree
``d - 1`` in ``n`` variables. They form a regular sequence iff the graded
quotient ring is Artinian, iff it vanishes in degree ``n(d - 2) + 1``,
and then its Hilbert series is ``(1 + t + ... + t^(d-2))^n``. Everything
here is graded linear algebra over ``F_q``: the degree ``m`` part of the
ideal is spanned by ``x^v * df^(d)/dx_i`` with ``|v| = m - (d - 1)``.
"""
import itertools
import typing as t
from dataclasses import dataclass

from ._internal import _echelon
from ._internal import _log
from .exceptions import BudgetExceeded
from .exceptions import HypothesisRefused
from .exceptions import InconsistencyError
from .gf import extend
from .gf import FieldElement
from .gf import FieldDesc
from .mpoly import degree
from .mpoly import evaluate
from .mpoly import Exponent
from .mpoly import MultiPoly
from .mpoly import partial_derivative


@dataclass(frozen=True)
class HilbertProfile:
    """Coefficients ``U_0, ..., U_{n(d-2)}`` of ``(1 + t + ... + t^(d-2))^n``."""

    d: int
    n: int
    U: t.Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.U)

    @property
    def weighted_total(self) -> int:
        return sum(m * u for m, u in enumerate(self.U))

    def check(self) -> bool:
        """The sum, first moment and palindromic identities."""
        d, n = self.d, self.n
        D = (d - 1) ** n
        return (
            self.total == D
            and 2 * self.weighted_total == n * D * (d - 2)
            and self.U == self.U[::-1]
        )

    def to_json(self) -> t.Dict[str, t.Any]:
        return {"d": self.d, "n": self.n, "U": list(self.U)}


@dataclass(frozen=True)
class RegSeqReport:
    """Outcome of :func:`is_regular_sequence`. ``basis`` lists the standard
    monomials grouped by degree and is only present for a regular sequence.
    """

    d: int
    n: int
    is_regular: bool
    hilbert_function: t.Tuple[int, ...]
    basis: t.Optional[t.Tuple[t.Tuple[Exponent, ...], ...]] = None

    @property
    def flat_basis(self) -> t.List[Exponent]:
        if self.basis is None:
            return []

        return [u for group in self.basis for u in group]

    def to_json(self) -> t.Dict[str, t.Any]:
        return {
            "d": self.d,
            "n": self.n,
            "is_regular": self.is_regular,
            "hilbert_function": list(self.hilbert_function),
            "basis": None
            if self.basis is None
            else [[list(u) for u in group] for group in self.basis],
        }


def hilbert_coefficients(d: int, n: int) -> HilbertProfile:
    """Expand ``(1 + t + ... + t^(d-2))^n`` exactly."""
    if d < 2:
        raise ValueError(f"degree must be at least 2, got {d}")

    if n < 1:
        raise ValueError(f"need at least one variable, got {n}")

    U = [1]

    for _ in range(n):
        nxt = [0] * (len(U) + d - 2)

        for m, c in enumerate(U):
            for k in range(d - 1):
                nxt[m + k] += c

        U = nxt

    return HilbertProfile(d, n, tuple(U))


def monomials_of_degree(n: int, m: int) -> t.List[Exponent]:
    """All exponent vectors of total degree ``m``, largest first in
    graded-lex order with ``x1 > ... > xn``.
    """
    if m < 0:
        return []

    if n == 1:
        return [(m,)]

    rv = []

    for first in range(m, -1, -1):
        for rest in monomials_of_degree(n - 1, m - first):
            rv.append((first,) + rest)

    return rv


def _top_partials(fd: MultiPoly) -> t.List[MultiPoly]:
    return [partial_derivative(fd, i) for i in range(1, fd.n + 1)]


def _degree_part(
    partials: t.Sequence[MultiPoly], m: int, generator_degree: int
) -> t.Tuple[t.List[Exponent], t.Dict[int, t.List[FieldElement]]]:
    """Rows (monomials of degree ``m``, largest first) and the echelon form
    of the degree ``m`` part of the ideal, as column vectors over the rows.
    """
    field = partials[0].field
    n = partials[0].n
    rows = monomials_of_degree(n, m)
    position = {u: k for k, u in enumerate(rows)}
    shifts = monomials_of_degree(n, m - generator_degree)

    def columns() -> t.Iterator[t.List[FieldElement]]:
        for v in shifts:
            for g in partials:
                if g.is_zero:
                    continue

                vector = [field.zero] * len(rows)

                for u, c in g.terms.items():
                    w = tuple(a + b for a, b in zip(u, v))
                    vector[position[w]] = c

                yield vector

    return rows, _echelon(columns())


def _generator_degree(partials: t.Sequence[MultiPoly]) -> t.Optional[int]:
    for g in partials:
        if not g.is_zero:
            if not g.is_homogeneous():
                raise ValueError("partials must be homogeneous")

            return degree(g)

    return None


def graded_ideal_rank(partials: t.Sequence[MultiPoly], m: int) -> int:
    """Dimension over ``F_q`` of the degree ``m`` part of the ideal
    generated by ``partials``, forms of a common degree ``d - 1``. Zero
    forms are allowed and contribute nothing.
    """
    e = _generator_degree(partials)

    if e is None or m < e:
        return 0

    return len(_degree_part(partials, m, e)[1])


def is_regular_sequence(fd: MultiPoly) -> RegSeqReport:
    """Decide whether the partials of the form ``fd`` are a regular
    sequence, by the single Artinian test in degree ``n(d - 2) + 1``. For a
    regular sequence the measured Hilbert function is then checked against
    :func:`hilbert_coefficients` and the standard monomials are extracted.

    :raises ValueError: if ``fd`` is zero, not homogeneous, or of degree
        below 2.
    :raises InconsistencyError: if a regular sequence has the wrong
        Hilbert function.
    """
    if fd.is_zero or not fd.is_homogeneous():
        raise ValueError("expected a nonzero homogeneous polynomial")

    d = degree(fd)
    n = fd.n

    if d < 2:
        raise ValueError(f"degree must be at least 2, got {d}")

    partials = _top_partials(fd)
    top = n * (d - 2) + 1
    dims = []
    standard: t.List[t.Tuple[Exponent, ...]] = []

    for m in range(top + 1):
        if m < d - 1 or all(g.is_zero for g in partials):
            rows = monomials_of_degree(n, m)
            pivots: t.Dict[int, t.Any] = {}
        else:
            rows, pivots = _degree_part(partials, m, d - 1)

        dims.append(len(rows) - len(pivots))
        standard.append(tuple(u for k, u in enumerate(rows) if k not in pivots))

    is_regular = dims[top] == 0
    _log("debug", f"Hilbert function of the partials of {fd.pretty()}: {dims}")

    if not is_regular:
        return RegSeqReport(d, n, False, tuple(dims))

    profile = hilbert_coefficients(d, n)

    if tuple(dims[:top]) != profile.U:
        raise InconsistencyError(
            f"regular sequence with Hilbert function {dims[:top]},"
            f" expected {list(profile.U)}"
        )

    return RegSeqReport(d, n, True, tuple(dims[:top]), tuple(standard[:top]))


def monomial_basis(fd: MultiPoly) -> t.List[t.List[Exponent]]:
    """The standard monomials of the quotient by the partials, grouped by
    degree: in each degree the monomials that are not leading monomials of
    the ideal under graded-lex order. There are ``U_m`` in degree ``m``.

    :raises HypothesisRefused: if the partials are not a regular sequence.
    """
    report = is_regular_sequence(fd)

    if report.basis is None:
        raise HypothesisRefused("the partials are not a regular sequence")

    return [list(group) for group in report.basis]


def projective_points(field: t.Any, n: int) -> t.Iterator[t.Tuple[FieldElement, ...]]:
    """Representatives of ``P^{n-1}`` over ``field`` whose first nonzero
    coordinate is 1.
    """
    elements = list(field)

    for lead in range(n):
        head = (field.zero,) * lead + (field.one,)

        for tail in itertools.product(elements, repeat=n - lead - 1):
            yield head + tail


def common_projective_zeros(
    fd: MultiPoly,
    k: int = 1,
    budget: int = 10**6,
    limit: t.Optional[int] = None,
) -> t.List[t.Tuple[FieldElement, ...]]:
    """Exhaustively search ``P^{n-1}(F_{q^k})`` for common zeros of the
    partials of ``fd``. A regular sequence has none over any extension.

    :raises BudgetExceeded: if there are more than ``budget`` points.
    """
    field: FieldDesc = fd.field
    target = extend(field, k)
    n = fd.n
    size = target.order
    count = (size**n - 1) // (size - 1)

    if count > budget:
        raise BudgetExceeded(count, budget, what="projective points")

    partials = [g for g in _top_partials(fd) if not g.is_zero]
    zeros = []

    for point in projective_points(target, n):
        if all(evaluate(g, point).is_zero for g in partials):
            zeros.append(point)

            if limit is not None and len(zeros) >= limit:
                break

    return zeros


def expected_dimension(d: int, n: int) -> int:
    """``(d - 1)^n``, the degree of the L-polynomial."""
    return (d - 1) ** n
