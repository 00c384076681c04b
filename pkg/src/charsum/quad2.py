"""Quadratic sums in characteristic 2
===================================

A quadratic ``f`` over ``F_q``, ``q = 2^a``, with no square terms is

.. code-block:: text

    f = sum(A_ij x_i x_j for i < j) + sum(b_i x_i) + c

with ``A`` symmetric and zero on the diagonal. The partials of the
quadratic part only have the origin as common zero iff ``det A != 0``,
which forces ``n`` to be even. Summing over the last variable kills every
point off the hyperplane ``sum(A_in x_i) + b_n = 0``, so the sum is ``q``
times the sum of the form obtained by solving that equation for a pivot
variable and substituting. Repeating down to two variables gives
``S_1 = zeta q^(n/2)`` with ``zeta = +-1`` in closed form.

Square terms ``a x^p`` can always be traded for linear terms without
changing the sum, see :func:`remove_pth_power_terms`; this works in every
characteristic.
"""
import typing as t
from dataclasses import dataclass
from dataclasses import field as dataclass_field

from ._internal import _det
from ._internal import _log
from .cyclo import CycNum
from .exceptions import QuadraticFormError
from .gf import FieldDesc
from .gf import FieldElement
from .lfun import LPolynomial
from .mpoly import degree
from .mpoly import MultiPoly
from .sums import CharacterSpec
from .sums import character_value

Matrix = t.Tuple[t.Tuple[FieldElement, ...], ...]


def _linear_replacement(
    field: FieldDesc, a: FieldElement, chi: CharacterSpec
) -> FieldElement:
    """The coefficient ``a c^(p-1)`` with ``c^p = (a b)^-1`` that makes
    ``Psi(a x^p) = Psi(a c^(p-1) x)`` for every ``x`` in ``F_q``.
    """
    c = field.pth_root((a * chi.b).inverse())
    return a * c ** (field.characteristic - 1)


def remove_pth_power_terms(f: MultiPoly, chi: CharacterSpec) -> MultiPoly:
    """Replace every pure ``p``-th power term ``a x_i^p`` of ``f`` by the
    linear term ``a c^(p-1) x_i``, where ``c^p = (a b)^-1``. The two
    polynomials have the same character value at every point of ``F_q^n``,
    so their sums over ``F_q^n`` agree. New terms are linear, so a single
    pass removes all of them.
    """
    field = f.field
    p = field.characteristic
    terms = []

    for u, a in f.sorted_terms():
        nonzero = [(i, e) for i, e in enumerate(u) if e]

        if len(nonzero) == 1 and nonzero[0][1] == p:
            i = nonzero[0][0]
            v = [0] * f.n
            v[i] = 1
            terms.append((tuple(v), _linear_replacement(field, a, chi)))
        else:
            terms.append((u, a))

    return MultiPoly.from_terms(field, f.n, terms)


@dataclass(frozen=True)
class QuadForm:
    """A quadratic polynomial over a field of characteristic 2 given by its
    matrix ``A``, linear part ``b`` and constant ``c``. ``labels`` are the
    1-based indices of the original variables, kept through elimination.
    """

    field: FieldDesc
    A: Matrix
    linear: t.Tuple[FieldElement, ...]
    constant: FieldElement
    labels: t.Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        n = len(self.A)

        if self.field.characteristic != 2:
            raise QuadraticFormError("quadratic forms need characteristic 2")

        if len(self.linear) != n or any(len(row) != n for row in self.A):
            raise QuadraticFormError("matrix and linear part sizes disagree")

        for i in range(n):
            if not self.A[i][i].is_zero:
                raise QuadraticFormError(f"nonzero diagonal entry at {i + 1}")

            for j in range(i):
                if self.A[i][j] != self.A[j][i]:
                    raise QuadraticFormError("matrix is not symmetric")

        if not self.labels:
            object.__setattr__(self, "labels", tuple(range(1, n + 1)))

    @property
    def n(self) -> int:
        return len(self.A)

    def det(self) -> FieldElement:
        return _det(self.A)

    def to_poly(self) -> MultiPoly:
        n = self.n
        terms: t.List[t.Tuple[t.Tuple[int, ...], FieldElement]] = []

        def unit(*idx: int) -> t.Tuple[int, ...]:
            u = [0] * n

            for i in idx:
                u[i] += 1

            return tuple(u)

        for i in range(n):
            for j in range(i + 1, n):
                terms.append((unit(i, j), self.A[i][j]))

            terms.append((unit(i), self.linear[i]))

        terms.append(((0,) * n, self.constant))
        return MultiPoly.from_terms(self.field, n, terms)

    def to_json(self) -> t.Dict[str, t.Any]:
        return {
            "n": self.n,
            "labels": list(self.labels),
            "A": [[str(x) for x in row] for row in self.A],
            "linear": [str(x) for x in self.linear],
            "constant": str(self.constant),
        }


def build_matrix(f: MultiPoly) -> QuadForm:
    """Read off ``A``, ``b`` and ``c`` from a quadratic with no square
    terms. Run :func:`remove_pth_power_terms` first.

    :raises QuadraticFormError: if the characteristic is not 2, the degree
        exceeds 2 or a square term is present.
    """
    field = f.field

    if field.characteristic != 2:
        raise QuadraticFormError("quadratic forms need characteristic 2")

    if not f.is_zero and degree(f) > 2:
        raise QuadraticFormError(f"degree {degree(f)} is not quadratic")

    n = f.n
    zero = field.zero
    A = [[zero] * n for _ in range(n)]
    linear = [zero] * n
    constant = zero

    for u, c in f.terms.items():
        support = [i for i, e in enumerate(u) if e]

        if not support:
            constant = c
        elif len(support) == 2:
            i, j = support
            A[i][j] = A[j][i] = c
        elif u[support[0]] == 2:
            raise QuadraticFormError(f"square term in x{support[0] + 1}")
        else:
            linear[support[0]] = c

    return QuadForm(field, tuple(map(tuple, A)), tuple(linear), constant)


def check_condition(Q: QuadForm) -> bool:
    """``det A != 0``, equivalent to the partials of the quadratic part
    having only the origin as common zero.
    """
    return not Q.det().is_zero


@dataclass(frozen=True)
class EliminationStep:
    """One elimination: the variables ``pivot`` and ``last`` (original
    labels) are removed after rescaling ``x_pivot`` by ``alpha^-1``.
    ``det_after`` equals ``det_rescaled``, and ``det_rescaled * alpha^2``
    equals ``det_before``.
    """

    n: int
    pivot: int
    last: int
    alpha: FieldElement
    det_before: FieldElement
    det_rescaled: FieldElement
    det_after: FieldElement

    @property
    def det_preserved(self) -> bool:
        return self.det_after == self.det_rescaled

    def to_json(self) -> t.Dict[str, t.Any]:
        return {
            "n": self.n,
            "pivot": self.pivot,
            "last": self.last,
            "alpha": str(self.alpha),
            "det_before": str(self.det_before),
            "det_after": str(self.det_after),
        }


def _rescale(Q: QuadForm, k: int, factor: FieldElement) -> QuadForm:
    A = [list(row) for row in Q.A]
    linear = list(Q.linear)

    for j in range(Q.n):
        A[k][j] = A[k][j] * factor
        A[j][k] = A[j][k] * factor

    linear[k] = linear[k] * factor
    return QuadForm(Q.field, tuple(map(tuple, A)), tuple(linear), Q.constant, Q.labels)


def _eliminate(Q: QuadForm, chi: CharacterSpec) -> t.Tuple[QuadForm, EliminationStep]:
    n = Q.n
    last = n - 1
    k = next((i for i in range(last - 1, -1, -1) if not Q.A[i][last].is_zero), None)

    if k is None:
        raise QuadraticFormError(f"x{Q.labels[last]} does not occur in a cross term")

    alpha = Q.A[k][last]
    R = _rescale(Q, k, alpha.inverse())
    rest = [i for i in range(n) if i not in (k, last)]

    # On the hyperplane, x_k = sum(m_i x_i) + m0; the x_k terms of what
    # remains are x_k * (sum(n_j x_j) + n0).
    m = {i: R.A[i][last] for i in rest}
    m0 = R.linear[last]
    nn = {i: R.A[i][k] for i in rest}
    n0 = R.linear[k]

    A = tuple(
        tuple(
            Q.field.zero if i == j else R.A[i][j] + m[i] * nn[j] + m[j] * nn[i]
            for j in rest
        )
        for i in rest
    )
    linear = []

    for i in rest:
        b = R.linear[i] + m0 * nn[i] + n0 * m[i]
        square = m[i] * nn[i]

        if not square.is_zero:
            b = b + _linear_replacement(Q.field, square, chi)

        linear.append(b)

    reduced = QuadForm(
        Q.field,
        A,
        tuple(linear),
        R.constant + m0 * n0,
        tuple(Q.labels[i] for i in rest),
    )
    step = EliminationStep(
        n,
        Q.labels[k],
        Q.labels[last],
        alpha,
        Q.det(),
        R.det(),
        reduced.det(),
    )
    return reduced, step


def eliminate_pair(Q: QuadForm, chi: CharacterSpec) -> t.Tuple[QuadForm, int]:
    """Remove the last variable and its pivot. The sum of ``Q`` over
    ``F_q^n`` is ``q`` times the sum of the result over ``F_q^(n-2)``.

    The pivot is the largest index ``k < n`` with ``A_kn != 0``; ``x_k``
    is rescaled so that ``A_kn = 1`` before solving for it.

    :raises QuadraticFormError: if ``n < 3`` or ``A`` is singular.
    """
    if Q.n < 3:
        raise QuadraticFormError("elimination needs at least three variables")

    if not check_condition(Q):
        raise QuadraticFormError("the matrix of the form is singular")

    reduced, _ = _eliminate(Q, chi)
    return reduced, Q.field.order


@dataclass
class QuadEvalResult:
    """``value = sign * q^half_exponent`` together with the elimination
    trace.
    """

    value: CycNum
    sign: int
    half_exponent: int
    q: int
    steps: t.List[EliminationStep] = dataclass_field(default_factory=list)

    @property
    def zeta(self) -> CycNum:
        return CycNum.from_int(self.value.p, self.sign)

    def to_json(self) -> t.Dict[str, t.Any]:
        return {
            "value": self.value.to_json(),
            "zeta": self.sign,
            "half_exponent": self.half_exponent,
            "q": self.q,
            "pivots": [[s.pivot, s.last] for s in self.steps],
            "steps": [s.to_json() for s in self.steps],
        }


def evaluate(Q: QuadForm, chi: CharacterSpec) -> QuadEvalResult:
    """``S_1`` of ``Q`` in closed form.

    :raises QuadraticFormError: if ``n`` is odd or ``A`` is singular.
    """
    if Q.n % 2:
        raise QuadraticFormError(f"{Q.n} variables; the matrix is singular for odd n")

    if not check_condition(Q):
        raise QuadraticFormError("the matrix of the form is singular")

    q = Q.field.order
    half = Q.n // 2
    steps = []

    while Q.n > 2:
        Q, step = _eliminate(Q, chi)

        if not step.det_preserved:
            raise AssertionError("elimination changed the determinant")

        steps.append(step)

    a12 = Q.A[0][1]
    psi = character_value(chi, Q.linear[0] * Q.linear[1] / a12 + Q.constant)
    value = psi * q**half
    sign = int(psi.coords[0])
    _log("debug", f"quadratic sum {value} after {len(steps)} eliminations")
    return QuadEvalResult(value, sign, half, q, steps)


def evaluate_polynomial(f: MultiPoly, chi: CharacterSpec) -> QuadEvalResult:
    """Remove square terms, build the matrix and evaluate."""
    return evaluate(build_matrix(remove_pth_power_terms(f, chi)), chi)


def quadratic_l_polynomial(
    Q: QuadForm, chi: CharacterSpec, result: t.Optional[QuadEvalResult] = None
) -> LPolynomial:
    """``P(t) = 1 - rho t`` with the single reciprocal root
    ``rho = (-1)^n S_1``, for a nondegenerate form.
    """
    if result is None:
        result = evaluate(Q, chi)

    rho = (-1) ** Q.n * result.value
    return LPolynomial(Q.n, 2, Q.field.a, (CycNum.one(2), -rho))
