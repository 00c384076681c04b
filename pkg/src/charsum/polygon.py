"""Newton polygons, the Hodge-type lower bound and the archimedean
purity check.

Polygons are exact: vertices have integer abscissas and
:class:`~fractions.Fraction` ordinates. Only :func:`purity_check` and
:func:`check_sum_bound` use floating point, at a configurable working
precision through :mod:`mpmath`.
"""
import typing as t
from dataclasses import dataclass
from dataclasses import field as dataclass_field
from fractions import Fraction

import mpmath

from ._internal import _log
from .cyclo import complex_embed
from .cyclo import CycNum
from .cyclo import DEFAULT_PRECISION
from .cyclo import format_rational
from .cyclo import ord_q
from .exceptions import RootFindingError
from .gf import _pdivmod
from .gf import _pmod
from .gf import _ptrim
from .koszul import hilbert_coefficients
from .koszul import HilbertProfile
from .lfun import LPolynomial

#: Relative tolerance of the purity and sum-bound checks.
DEFAULT_TOLERANCE = 1e-9

Point = t.Tuple[int, Fraction]


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def lower_convex_hull(points: t.Iterable[t.Tuple[int, t.Any]]) -> t.List[Point]:
    """The lower convex hull in canonical form: abscissas strictly
    increasing and slopes strictly increasing, so collinear points are
    dropped. For repeated abscissas the lowest point is kept.
    """
    lowest: t.Dict[int, Fraction] = {}

    for x, y in points:
        y = Fraction(y)

        if x not in lowest or y < lowest[x]:
            lowest[x] = y

    hull: t.List[Point] = []

    for pt in sorted(lowest.items()):
        while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
            hull.pop()

        hull.append(pt)

    return hull


@dataclass(frozen=True)
class NewtonPolygon:
    """A lower convex polygon given by its vertices."""

    vertices: t.Tuple[Point, ...]

    @classmethod
    def from_points(cls, points: t.Iterable[t.Tuple[int, t.Any]]) -> "NewtonPolygon":
        return cls(tuple(lower_convex_hull(points)))

    @property
    def width(self) -> int:
        return self.vertices[-1][0] - self.vertices[0][0]

    @property
    def endpoint(self) -> Point:
        return self.vertices[-1]

    def slopes(self) -> t.List[Fraction]:
        """Slopes with multiplicity, one per unit of width, ascending."""
        rv = []

        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            rv.extend([(y1 - y0) / (x1 - x0)] * (x1 - x0))

        return rv

    def ordinate(self, x: int) -> Fraction:
        """The height of the polygon above ``x``.

        :raises ValueError: if ``x`` is outside the polygon.
        """
        if not self.vertices[0][0] <= x <= self.vertices[-1][0]:
            raise ValueError(f"{x} is outside the polygon")

        for (x0, y0), (x1, y1) in zip(self.vertices, self.vertices[1:]):
            if x0 <= x <= x1:
                return y0 + (y1 - y0) * Fraction(x - x0, x1 - x0)

        return self.vertices[0][1]

    def to_json(self) -> t.List[t.List[t.Any]]:
        return [[x, format_rational(y)] for x, y in self.vertices]

    def __str__(self) -> str:
        return ", ".join(f"({x},{y})" for x, y in self.vertices)


def newton_polygon(P: LPolynomial) -> NewtonPolygon:
    """The lower convex hull of ``(k, ord_q(a_k))`` over the nonzero
    coefficients. Zero coefficients contribute no point.
    """
    return NewtonPolygon.from_points(
        (k, ord_q(c, P.a)) for k, c in enumerate(P.coeffs) if not c.is_zero
    )


def hodge_bound(
    d: int, n: int, profile: t.Optional[HilbertProfile] = None
) -> NewtonPolygon:
    """The polygon of ``prod((1 - q^((m+n)/d) t)^U_m)``: slope
    ``(m + n) / d`` with multiplicity ``U_m``, ascending.
    """
    if profile is None:
        profile = hilbert_coefficients(d, n)

    points = [(0, Fraction(0))]
    x, y = 0, Fraction(0)

    for m, u in enumerate(profile.U):
        if u:
            x += u
            y += u * Fraction(m + n, d)
            points.append((x, y))

    return NewtonPolygon.from_points(points)


def dominates(np: NewtonPolygon, bound: NewtonPolygon) -> bool:
    """Whether ``np`` lies on or above ``bound``. Both are piecewise
    linear, so comparing at the union of their vertex abscissas suffices.

    :raises ValueError: if the polygons do not span the same abscissas.
    """
    if np.vertices[0][0] != bound.vertices[0][0] or np.endpoint[0] != bound.endpoint[0]:
        raise ValueError(
            f"polygons end at different abscissas: {np.endpoint[0]}"
            f" and {bound.endpoint[0]}"
        )

    xs = sorted({x for x, _ in np.vertices} | {x for x, _ in bound.vertices})
    return all(np.ordinate(x) >= bound.ordinate(x) for x in xs)


def newton_equals_bound(np: NewtonPolygon, bound: NewtonPolygon) -> bool:
    return np.vertices == bound.vertices


@dataclass(frozen=True)
class LambdaReport:
    """``ord_q`` of the product of the reciprocal roots, the lower bound
    ``n D / 2`` and whether it is attained.
    """

    valuation: Fraction
    bound: Fraction

    @property
    def equality(self) -> bool:
        return self.valuation == self.bound

    def to_json(self) -> t.Dict[str, t.Any]:
        return {
            "valuation": format_rational(self.valuation),
            "bound": format_rational(self.bound),
            "equality": self.equality,
        }


def lambda_valuation(P: LPolynomial) -> Fraction:
    """``ord_q(a_D)``. The product of the reciprocal roots is ``+-a_D``."""
    v = ord_q(P.leading, P.a)
    assert isinstance(v, Fraction), "leading coefficient is zero"
    return v


def lambda_report(P: LPolynomial) -> LambdaReport:
    rv = LambdaReport(lambda_valuation(P), Fraction(P.n * P.D, 2))

    if not rv.equality:
        _log(
            "warning",
            f"ord_q of the leading coefficient is {rv.valuation},"
            f" the bound is {rv.bound}",
        )

    return rv


def _digits(precision: int) -> int:
    return max(15, int(precision * 0.30103))


@dataclass
class PurityReport:
    """Reciprocal root moduli of ``P`` under the embedding
    ``zeta -> exp(2 pi i k / p)`` compared to ``target = q^(n/2)``.
    """

    k: int
    moduli: t.List[mpmath.mpf]
    target: mpmath.mpf
    max_deviation: mpmath.mpf
    leading_modulus: mpmath.mpf
    leading_target: mpmath.mpf
    precision: int = DEFAULT_PRECISION
    tol: float = DEFAULT_TOLERANCE
    residuals: t.List[mpmath.mpf] = dataclass_field(default_factory=list)

    @property
    def leading_deviation(self) -> mpmath.mpf:
        return abs(self.leading_modulus - self.leading_target) / self.leading_target

    @property
    def passed(self) -> bool:
        return self.max_deviation < self.tol and self.leading_deviation < self.tol

    def to_json(self) -> t.Dict[str, t.Any]:
        digits = _digits(self.precision)

        def s(x: mpmath.mpf) -> str:
            return mpmath.nstr(x, digits)

        return {
            "embedding": self.k,
            "precision": self.precision,
            "moduli": [s(m) for m in self.moduli],
            "target": s(self.target),
            "max_deviation": mpmath.nstr(self.max_deviation, 5),
            "leading_modulus": s(self.leading_modulus),
            "leading_target": s(self.leading_target),
            "passed": self.passed,
        }


class _CycCoeffs:
    """Coefficient arithmetic for polynomials over ``Q(zeta_p)``."""

    def __init__(self, p: int) -> None:
        self.zero = CycNum.zero(p)
        self.one = CycNum.one(p)

    def add(self, x: CycNum, y: CycNum) -> CycNum:
        return x + y

    def sub(self, x: CycNum, y: CycNum) -> CycNum:
        return x - y

    def mul(self, x: CycNum, y: CycNum) -> CycNum:
        return x * y

    def inv(self, x: CycNum) -> CycNum:
        return x.inverse()

    def is_zero(self, x: CycNum) -> bool:
        return x.is_zero


def _monic(ops: _CycCoeffs, a: t.List[CycNum]) -> t.List[CycNum]:
    lead_inv = ops.inv(a[-1])
    return [ops.mul(c, lead_inv) for c in a]


def _monic_gcd(
    ops: _CycCoeffs, a: t.List[CycNum], b: t.List[CycNum]
) -> t.List[CycNum]:
    a = _monic(ops, _ptrim(ops, a))
    b = _ptrim(ops, b)

    while b:
        b = _monic(ops, b)
        a, b = b, _pmod(ops, a, b)

    return a


def squarefree_factors(
    P: LPolynomial,
) -> t.List[t.Tuple[t.Tuple[CycNum, ...], int]]:
    """Yun's square-free decomposition of ``P`` over ``Q(zeta_p)``.

    Returns pairs ``(g, m)``, constant term first, with each ``g``
    square-free and normalized to ``g(0) = 1``, the ``g`` pairwise
    coprime, and ``prod(g^m) = P``. Multiplicities ascend.
    """
    if P.D == 0:
        return []

    ops = _CycCoeffs(P.p)
    a = _monic(ops, list(P.coeffs))
    derivative = [c * k for k, c in enumerate(a)][1:]
    c = _monic_gcd(ops, a, derivative)
    w, _ = _pdivmod(ops, a, c)
    rv = []
    m = 1

    while len(w) > 1:
        y = _monic_gcd(ops, w, c)
        z, _ = _pdivmod(ops, w, y)

        if len(z) > 1:
            scale = ops.inv(z[0])
            rv.append((tuple(ops.mul(x, scale) for x in z), m))

        w = y
        c, _ = _pdivmod(ops, c, y)
        m += 1

    return rv


def _roots(
    coeffs: t.List[mpmath.mpc], tol: float
) -> t.Tuple[t.List[t.Any], t.List[t.Any]]:
    """All roots of ``sum(coeffs[k] t^k)`` and their scaled residuals."""
    highest_first = coeffs[::-1]

    try:
        roots = mpmath.polyroots(
            highest_first, maxsteps=200, extraprec=2 * mpmath.mp.prec
        )
    except mpmath.mp.NoConvergence as e:
        raise RootFindingError(
            f"polynomial root finder did not converge: {e}"
        ) from None

    residuals = []

    for r in roots:
        value = mpmath.polyval(highest_first, r)
        scale = sum(abs(c) * abs(r) ** k for k, c in enumerate(coeffs))
        residuals.append(abs(value) / scale)

    worst = max(residuals)

    if worst >= tol:
        raise RootFindingError(
            f"root residual {mpmath.nstr(worst, 5)} exceeds the tolerance {tol}"
        )

    return list(roots), residuals


def purity_check(
    P: LPolynomial,
    precision: int = DEFAULT_PRECISION,
    tol: float = DEFAULT_TOLERANCE,
) -> t.List[PurityReport]:
    """Find the ``D`` complex roots of ``P`` in every embedding
    ``k = 1 .. p - 1`` and compare the reciprocal root moduli with
    ``q^(n/2)``. ``|a_D|`` is compared with ``q^(n D / 2)``. For ``D = 0``
    the reports are vacuous.

    Roots are found on the square-free factors of ``P`` and counted with
    multiplicity.

    :raises RootFindingError: if a root does not satisfy
        ``|g(root)| < tol * sum(|g_k| |root|^k)`` for its factor ``g``.
    """
    rv = []
    factors = squarefree_factors(P)

    with mpmath.workprec(precision):
        target = mpmath.mpf(P.q) ** (mpmath.mpf(P.n) / 2)
        leading_target = mpmath.mpf(P.q) ** (mpmath.mpf(P.n * P.D) / 2)

        for k in range(1, P.p):
            coeffs = P.embedded(k, precision)
            leading = abs(coeffs[-1])

            if P.D == 0:
                rv.append(
                    PurityReport(
                        k, [], target, mpmath.mpf(0), leading, leading_target,
                        precision, tol,
                    )
                )
                continue

            moduli = []
            residuals = []

            for g, m in factors:
                embedded = [complex_embed(c, k, precision) for c in g]
                roots, g_residuals = _roots(embedded, tol)
                residuals.extend(g_residuals)

                for r in roots:
                    moduli.extend([1 / abs(r)] * m)

            moduli.sort()
            deviation = max(abs(m - target) / target for m in moduli)
            report = PurityReport(
                k, moduli, target, deviation, leading, leading_target,
                precision, tol, residuals,
            )

            if not report.passed:
                _log(
                    "warning",
                    f"embedding {k}: reciprocal root moduli deviate from"
                    f" q^(n/2) by {mpmath.nstr(deviation, 5)}",
                )

            rv.append(report)

    return rv


def is_pure(reports: t.Sequence[PurityReport]) -> bool:
    return all(r.passed for r in reports)


def check_sum_bound(
    value: CycNum,
    d: int,
    n: int,
    q: int,
    i: int,
    precision: int = DEFAULT_PRECISION,
    tol: float = DEFAULT_TOLERANCE,
) -> bool:
    """``|S_i| <= (d - 1)^n q^(n i / 2)`` in every complex embedding, up to
    a relative ``tol``.
    """
    with mpmath.workprec(precision):
        bound = (d - 1) ** n * mpmath.mpf(q) ** (mpmath.mpf(n * i) / 2)

        for k in range(1, value.p):
            if abs(complex_embed(value, k, precision)) > bound * (1 + tol):
                return False

    return True
