"""The L-polynomial ``P(t) = L(A^n, f; t)^((-1)^(n+1))``.

Under the regular-sequence hypothesis ``P`` has degree ``D = (d - 1)^n``
and factors as ``prod(1 - rho_j t)``. Taking logarithms of the generating
function gives the power sums ``sum(rho_j^i) = (-1)^n S_i``, so ``D`` sums
determine ``P`` through Newton's identities, and every further sum is a
prediction that can be checked by enumeration.

All arithmetic happens in ``Q(zeta_p)``.
"""
import typing as t
from dataclasses import dataclass

import mpmath

from ._internal import _log
from .cyclo import complex_embed
from .cyclo import CycNum
from .cyclo import DEFAULT_PRECISION
from .cyclo import is_algebraic_integer
from .exceptions import BudgetExceeded
from .exceptions import HypothesisRefused
from .exceptions import InconsistencyError
from .exceptions import InputError
from .gf import FieldDesc
from .koszul import expected_dimension
from .koszul import is_regular_sequence
from .mpoly import degree
from .mpoly import homogeneous_component
from .mpoly import MultiPoly
from .sums import CharacterSpec
from .sums import DEFAULT_BUDGET
from .sums import exponential_sum
from .sums import point_count
from .sums import sum_sequence
from .sums import SumValue

#: Printed with every serialized L-polynomial.
SIGN_CONVENTION = "P(t) = L^((-1)^(n+1))"


@dataclass(frozen=True)
class LPolynomial:
    """Coefficients ``a_0 = 1, a_1, ..., a_D`` of ``P(t)`` over
    ``Q(zeta_p)``, for a polynomial in ``n`` variables over ``F_{p^a}``.
    """

    n: int
    p: int
    a: int
    coeffs: t.Tuple[CycNum, ...]

    @property
    def D(self) -> int:
        return len(self.coeffs) - 1

    @property
    def q(self) -> int:
        return self.p**self.a

    @property
    def reciprocal_root_count(self) -> int:
        return self.D

    @property
    def leading(self) -> CycNum:
        return self.coeffs[-1]

    def power_sums(self, count: int) -> t.List[CycNum]:
        """``sum(rho_j^k)`` for ``k = 1..count`` by the forward Newton
        identities, with ``e_k = 0`` beyond the degree.
        """
        e = [(-1) ** k * c for k, c in enumerate(self.coeffs)]
        zero = CycNum.zero(self.p)
        rv: t.List[CycNum] = []

        for k in range(1, count + 1):
            total = (-1) ** (k - 1) * k * e[k] if k <= self.D else zero

            for j in range(1, min(k, self.D + 1)):
                total = total + (-1) ** (j - 1) * e[j] * rv[k - j - 1]

            rv.append(total)

        return rv

    def predicted_sums(self, count: int) -> t.List[CycNum]:
        """``S_1 .. S_count`` as ``P`` predicts them."""
        sign = (-1) ** self.n
        return [sign * s for s in self.power_sums(count)]

    def conjugate(self, u: int) -> "LPolynomial":
        """Apply ``zeta -> zeta^u`` to every coefficient."""
        return LPolynomial(
            self.n, self.p, self.a, tuple(c.conjugate(u) for c in self.coeffs)
        )

    def embedded(
        self, k: int = 1, precision: int = DEFAULT_PRECISION
    ) -> t.List[mpmath.mpc]:
        """Complex coefficients under ``zeta -> exp(2 pi i k / p)``,
        constant term first.
        """
        return [complex_embed(c, k, precision) for c in self.coeffs]

    def to_json(self) -> t.Dict[str, t.Any]:
        return {
            "convention": SIGN_CONVENTION,
            "n": self.n,
            "p": self.p,
            "a": self.a,
            "degree": self.D,
            "coefficients": [c.to_json() for c in self.coeffs],
        }

    def __str__(self) -> str:
        parts = []

        for k, c in enumerate(self.coeffs):
            if c.is_zero:
                continue

            if k == 0:
                parts.append(f"({c})")
            elif k == 1:
                parts.append(f"({c})*t")
            else:
                parts.append(f"({c})*t^{k}")

        return " + ".join(parts)


def from_power_sums(
    power_sums: t.Sequence[CycNum], n: int, p: int, a: int
) -> LPolynomial:
    """Build ``P`` of degree ``len(power_sums)`` from ``p_1 .. p_D`` with
    ``k e_k = sum((-1)^(j-1) e_{k-j} p_j for j in 1..k)``.

    :raises InconsistencyError: if ``a_D`` vanishes or a coefficient is
        not an algebraic integer.
    """
    D = len(power_sums)
    e = [CycNum.one(p)]

    for k in range(1, D + 1):
        total = CycNum.zero(p)

        for j in range(1, k + 1):
            total = total + (-1) ** (j - 1) * e[k - j] * power_sums[j - 1]

        e.append(total / k)

    coeffs = tuple((-1) ** k * c for k, c in enumerate(e))

    if coeffs[-1].is_zero:
        raise InconsistencyError(
            f"leading coefficient a_{D} of the L-polynomial vanishes"
        )

    for k, c in enumerate(coeffs):
        if not is_algebraic_integer(c):
            raise InconsistencyError(f"a_{k} = {c} is not an algebraic integer")

    return LPolynomial(n, p, a, coeffs)


def _top_form(f: MultiPoly) -> t.Tuple[int, MultiPoly]:
    if f.is_zero:
        raise InputError("the zero polynomial has no L-function")

    d = degree(f)

    if d == 0:
        raise InputError("f is constant; its sums are not nontrivial")

    return d, homogeneous_component(f, d)


def declared_degree(f: MultiPoly) -> int:
    """``(d - 1)^n`` for the degree ``d`` of ``f``."""
    d, _ = _top_form(f)
    return 0 if d == 1 else expected_dimension(d, f.n)


def l_polynomial(
    f: MultiPoly,
    field: FieldDesc,
    chi: CharacterSpec,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
    sums: t.Optional[t.Sequence[SumValue]] = None,
) -> LPolynomial:
    """Reconstruct ``P(t)`` from ``S_1 .. S_D``.

    :param sums: already computed ``S_1, S_2, ...``; only missing terms
        are enumerated.
    :raises HypothesisRefused: if the partials of ``f^(d)`` are not a
        regular sequence.
    :raises InconsistencyError: if the reconstruction is not a polynomial
        of degree ``D`` with integral coefficients, or, for ``d = 1``, if
        ``S_1`` does not vanish.
    """
    d, fd = _top_form(f)
    p = field.characteristic

    if d == 1:
        s1 = _sums(f, field, chi, 1, budget, workers, sums)[0]

        if not s1.value.is_zero:
            raise InconsistencyError(f"linear f with nonzero sum {s1.value}")

        return LPolynomial(f.n, p, field.a, (CycNum.one(p),))

    if not is_regular_sequence(fd).is_regular:
        raise HypothesisRefused(
            f"the partials of {fd.pretty()} are not a regular sequence"
        )

    D = expected_dimension(d, f.n)
    values = _sums(f, field, chi, D, budget, workers, sums)
    sign = (-1) ** f.n
    rv = from_power_sums([sign * s.value for s in values], f.n, p, field.a)
    _log("info", f"P(t) = {rv}")
    return rv


def _sums(
    f: MultiPoly,
    field: FieldDesc,
    chi: CharacterSpec,
    count: int,
    budget: int,
    workers: int,
    known: t.Optional[t.Sequence[SumValue]],
) -> t.List[SumValue]:
    known = list(known or [])[:count]

    if len(known) == count:
        return known

    required = point_count(field, f.n, count)

    if required > budget:
        raise BudgetExceeded(required, budget)

    return known + [
        exponential_sum(f, field, i, chi, budget, workers)
        for i in range(len(known) + 1, count + 1)
    ]


def consistency_table(
    P: LPolynomial,
    f: MultiPoly,
    field: FieldDesc,
    chi: CharacterSpec,
    extra: int = 1,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> t.List[t.Tuple[int, CycNum, CycNum]]:
    """``(i, predicted S_i, enumerated S_i)`` for ``i = D+1 .. D+extra``.

    :raises BudgetExceeded: if the largest sum needs more than ``budget``
        points; nothing is enumerated in that case.
    """
    if extra < 1:
        raise ValueError("extra must be at least 1")

    top = P.D + extra
    required = point_count(field, f.n, top)

    if required > budget:
        raise BudgetExceeded(required, budget)

    predicted = P.predicted_sums(top)
    rv = []

    for i in range(P.D + 1, top + 1):
        computed = exponential_sum(f, field, i, chi, budget, workers).value
        rv.append((i, predicted[i - 1], computed))

    return rv


def verify_consistency(
    P: LPolynomial,
    f: MultiPoly,
    field: FieldDesc,
    chi: CharacterSpec,
    extra: int = 1,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> bool:
    """Predict ``S_{D+1} .. S_{D+extra}`` from ``P`` and compare them
    exactly with enumerated sums.
    """
    ok = True

    for i, predicted, computed in consistency_table(
        P, f, field, chi, extra, budget, workers
    ):
        if predicted != computed:
            _log("warning", f"S_{i}: predicted {predicted}, enumerated {computed}")
            ok = False

    return ok


def galois_twist_check(
    P: LPolynomial,
    f: MultiPoly,
    field: FieldDesc,
    chi: CharacterSpec,
    u: int,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> bool:
    """Recompute ``P`` with the twist ``u * b`` and compare it with the
    conjugate of ``P`` under ``zeta -> zeta^u``.
    """
    if u % field.characteristic == 0:
        raise ValueError(f"{u} is not a unit mod {field.characteristic}")

    twisted = l_polynomial(f, field, chi.twisted(u), budget, workers)
    return twisted == P.conjugate(u)
