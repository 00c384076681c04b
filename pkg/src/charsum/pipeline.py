"""The verification pipeline and the per-stage commands behind the
command line. Every command returns a report object with a ``to_json``
method; reports carry a ``timings`` block, the only part of the output
that may differ between two runs of the same problem.
"""
import contextlib
import random
import time
import typing as t
from dataclasses import dataclass
from dataclasses import field as dataclass_field

from ._internal import _log
from .cyclo import DEFAULT_PRECISION
from .exceptions import abort
from .exceptions import BudgetExceeded
from .exceptions import CharsumError
from .exceptions import HypothesisRefused
from .exceptions import InconsistencyError
from .exceptions import InputError
from .gf import FieldDesc
from .koszul import common_projective_zeros
from .koszul import hilbert_coefficients
from .koszul import HilbertProfile
from .koszul import is_regular_sequence
from .koszul import monomials_of_degree
from .koszul import RegSeqReport
from .lfun import consistency_table
from .lfun import declared_degree
from .lfun import l_polynomial
from .lfun import LPolynomial
from .mpoly import degree
from .mpoly import homogeneous_component
from .mpoly import homogeneous_components
from .mpoly import MultiPoly
from .polygon import check_sum_bound
from .polygon import DEFAULT_TOLERANCE
from .polygon import dominates
from .polygon import hodge_bound
from .polygon import is_pure
from .polygon import lambda_report
from .polygon import LambdaReport
from .polygon import newton_equals_bound
from .polygon import newton_polygon
from .polygon import NewtonPolygon
from .polygon import purity_check
from .polygon import PurityReport
from .problem import ProblemSpec
from .quad2 import build_matrix
from .quad2 import evaluate
from .quad2 import evaluate_polynomial
from .quad2 import quadratic_l_polynomial
from .quad2 import remove_pth_power_terms
from .quad2 import QuadEvalResult
from .sums import CharacterSpec
from .sums import DEFAULT_BUDGET
from .sums import point_count
from .sums import sum_sequence
from .sums import SumValue

#: Version of the JSON report layout.
SCHEMA = 1

Timings = t.Dict[str, float]


@contextlib.contextmanager
def stage(name: str, timings: Timings) -> t.Iterator[None]:
    """Time a pipeline stage and label any error raised in it."""
    _log("info", f"stage {name}: started")
    start = time.perf_counter()

    try:
        yield
    except CharsumError as e:
        if e.stage is None:
            e.stage = name

        _log("warning", f"stage {name}: {e}")
        raise
    finally:
        elapsed = time.perf_counter() - start
        timings[name] = elapsed
        _log("info", f"stage {name}: {elapsed:.3f}s")


def _round_timings(timings: Timings) -> t.Dict[str, float]:
    return {k: round(v, 6) for k, v in timings.items()}


@dataclass
class CommandReport:
    """Result of a single-stage command."""

    command: str
    body: t.Dict[str, t.Any]
    timings: Timings = dataclass_field(default_factory=dict)
    failures: int = 0

    def to_json(self, timings: bool = True) -> t.Dict[str, t.Any]:
        rv: t.Dict[str, t.Any] = {"schema": SCHEMA, "command": self.command}
        rv.update(self.body)

        if timings:
            rv["timings"] = _round_timings(self.timings)

        return rv


@dataclass
class VerifyReport:
    """Everything :func:`cmd_verify` establishes about one problem."""

    problem: ProblemSpec
    d: int
    D: int
    regseq: t.Optional[RegSeqReport]
    hilbert: t.Optional[HilbertProfile]
    sums: t.List[SumValue]
    lpoly: LPolynomial
    consistency: t.Optional[t.List[t.Tuple[int, t.Any, t.Any]]]
    polygon: NewtonPolygon
    bound: NewtonPolygon
    dominates: bool
    lambda_: LambdaReport
    purity: t.List[PurityReport]
    sum_bounds: t.List[bool]
    quad: t.Optional[QuadEvalResult] = None
    timings: Timings = dataclass_field(default_factory=dict)

    @property
    def newton_equals_bound(self) -> bool:
        return newton_equals_bound(self.polygon, self.bound)

    @property
    def pure(self) -> bool:
        return is_pure(self.purity)

    def to_json(self, timings: bool = True) -> t.Dict[str, t.Any]:
        rv: t.Dict[str, t.Any] = {
            "schema": SCHEMA,
            "command": "verify",
            "problem": self.problem.to_json(),
            "d": self.d,
            "D": self.D,
            "regseq": None if self.regseq is None else self.regseq.to_json(),
            "hilbert": None if self.hilbert is None else self.hilbert.to_json(),
            "sums": [s.to_json() for s in self.sums],
            "lpoly": self.lpoly.to_json(),
            "consistency": None
            if self.consistency is None
            else [
                {"i": i, "predicted": a.to_json(), "enumerated": b.to_json()}
                for i, a, b in self.consistency
            ],
            "polygon": self.polygon.to_json(),
            "bound": self.bound.to_json(),
            "dominates": self.dominates,
            "newton_equals_bound": self.newton_equals_bound,
            "lambda": self.lambda_.to_json(),
            "purity": [r.to_json() for r in self.purity],
            "sum_bounds": self.sum_bounds,
            "quadratic": None if self.quad is None else self.quad.to_json(),
        }

        if timings:
            rv["timings"] = _round_timings(self.timings)

        return rv


def _split(spec: ProblemSpec) -> t.Tuple[int, MultiPoly]:
    f = spec.f

    if f.is_zero or degree(f) == 0:
        raise InputError("f must be nonconstant", stage="split")

    d = degree(f)
    return d, homogeneous_component(f, d)


def _regseq(
    spec: ProblemSpec, d: int, fd: MultiPoly
) -> t.Tuple[t.Optional[RegSeqReport], t.Optional[HilbertProfile]]:
    if d == 1:
        return None, None

    p = spec.field.characteristic
    report = is_regular_sequence(fd)

    if not report.is_regular:
        raise HypothesisRefused(
            f"the partials of {fd.pretty()} are not a regular sequence"
        )

    if d % p == 0 and (d, p) != (2, 2):
        raise InconsistencyError(
            f"regular sequence in degree {d} divisible by p = {p}"
        )

    return report, hilbert_coefficients(d, spec.n)


def _flat_bound(D: int) -> NewtonPolygon:
    return NewtonPolygon.from_points([(0, 0), (D, 0)] if D else [(0, 0)])


def cmd_verify(
    spec: ProblemSpec, workers: int = 1, extra: int = 1
) -> VerifyReport:
    """Run every check for one problem in order: homogeneous split,
    regular sequence, sums, L-polynomial, consistency, Newton polygon
    against the bound, the leading coefficient valuation, purity. For
    ``p | d`` the closed-form quadratic evaluation is run as well and
    compared with the enumerated sum, its L-polynomial with the general one.

    :raises HypothesisRefused: if the regular-sequence hypothesis fails.
    :raises VerificationFailed: if any check fails.
    """
    timings: Timings = {}
    field = spec.field
    f, chi = spec.f, spec.chi
    quad = None
    quad_lpoly: t.Optional[LPolynomial] = None

    with stage("split", timings):
        d, fd = _split(spec)
        parts = homogeneous_components(f).items()
        _log(
            "debug",
            "homogeneous components: "
            + ", ".join(f"{j}: {g.pretty()}" for j, g in parts),
        )

    with stage("regseq", timings):
        regseq, hilbert = _regseq(spec, d, fd)

    D = declared_degree(f)

    with stage("sums", timings):
        sums = sum_sequence(f, field, chi, max(D, 1), spec.budget, workers)

    if d % field.characteristic == 0:
        with stage("quad2", timings):
            Q = build_matrix(remove_pth_power_terms(f, chi))
            quad = evaluate(Q, chi)
            quad_lpoly = quadratic_l_polynomial(Q, chi, quad)

            if quad.value != sums[0].value:
                raise InconsistencyError(
                    f"closed form {quad.value} differs from the enumerated"
                    f" sum {sums[0].value}"
                )

    with stage("lpoly", timings):
        lpoly = l_polynomial(f, field, chi, spec.budget, workers, sums=sums)

        if lpoly.D != D:
            raise InconsistencyError(f"L-polynomial of degree {lpoly.D}, expected {D}")

        if quad_lpoly is not None and quad_lpoly != lpoly:
            raise InconsistencyError(
                f"closed-form L-polynomial {quad_lpoly} differs from {lpoly}"
            )

    consistency = None

    with stage("consistency", timings):
        if extra > 0:
            required = point_count(field, f.n, D + extra)

            if required <= spec.budget:
                consistency = consistency_table(
                    lpoly, f, field, chi, extra, spec.budget, workers
                )

                for i, predicted, computed in consistency:
                    if predicted != computed:
                        abort(3, f"S_{i}: predicted {predicted}, enumerated {computed}")
            else:
                _log(
                    "warning",
                    f"consistency check skipped, it needs {required} points",
                )

    with stage("polygon", timings):
        np = newton_polygon(lpoly)
        bound = hodge_bound(d, f.n, hilbert) if hilbert is not None else _flat_bound(D)
        dom = dominates(np, bound)

        if not dom:
            abort(3, f"Newton polygon {np} lies below the bound {bound}")

    with stage("lambda", timings):
        lam = lambda_report(lpoly)

    with stage("purity", timings):
        purity = purity_check(lpoly, spec.precision, spec.tol)

        if not is_pure(purity):
            abort(3, "reciprocal roots are not of absolute value q^(n/2)")

        sum_bounds = [
            check_sum_bound(s.value, d, f.n, field.q, s.i, spec.precision, spec.tol)
            for s in sums
        ]

        if not all(sum_bounds):
            abort(3, "an exponential sum exceeds the archimedean bound")

    return VerifyReport(
        spec, d, D, regseq, hilbert, sums, lpoly, consistency, np, bound, dom,
        lam, purity, sum_bounds, quad, timings,
    )


def cmd_check(spec: ProblemSpec, k: int = 1, limit: int = 10) -> CommandReport:
    """The regular-sequence test on the top form, with an exhaustive search
    for common projective zeros of its partials over ``F_{q^k}``.
    """
    timings: Timings = {}

    with stage("split", timings):
        d, fd = _split(spec)

    if d < 2:
        raise InputError("the regular-sequence test needs degree at least 2")

    with stage("regseq", timings):
        report = is_regular_sequence(fd)

    body: t.Dict[str, t.Any] = {
        "problem": spec.to_json(),
        "regseq": report.to_json(),
        "expected": hilbert_coefficients(d, spec.n).to_json(),
    }

    with stage("zeros", timings):
        try:
            zeros = common_projective_zeros(fd, k, spec.budget, limit)
        except BudgetExceeded:
            body["common_zeros"] = None
        else:
            body["common_zeros"] = [[str(x) for x in z] for z in zeros]

            if report.is_regular and zeros:
                raise InconsistencyError(
                    "a regular sequence has common projective zeros"
                )

    return CommandReport("check", body, timings)


def cmd_sum(spec: ProblemSpec, i_max: int = 1, workers: int = 1) -> CommandReport:
    timings: Timings = {}

    with stage("sums", timings):
        sums = sum_sequence(spec.f, spec.field, spec.chi, i_max, spec.budget, workers)

    body = {"problem": spec.to_json(), "sums": [s.to_json() for s in sums]}
    return CommandReport("sum", body, timings)


def cmd_lpoly(spec: ProblemSpec, workers: int = 1, extra: int = 0) -> CommandReport:
    timings: Timings = {}

    with stage("lpoly", timings):
        lpoly = l_polynomial(spec.f, spec.field, spec.chi, spec.budget, workers)

    body: t.Dict[str, t.Any] = {"problem": spec.to_json(), "lpoly": lpoly.to_json()}
    failures = 0

    if extra > 0:
        with stage("consistency", timings):
            table = consistency_table(
                lpoly, spec.f, spec.field, spec.chi, extra, spec.budget, workers
            )

        body["consistency"] = [
            {"i": i, "predicted": a.to_json(), "enumerated": b.to_json()}
            for i, a, b in table
        ]
        failures = sum(a != b for _, a, b in table)

    return CommandReport("lpoly", body, timings, failures)


def cmd_polygon(spec: ProblemSpec, workers: int = 1) -> CommandReport:
    timings: Timings = {}

    with stage("split", timings):
        d, fd = _split(spec)

    with stage("lpoly", timings):
        lpoly = l_polynomial(spec.f, spec.field, spec.chi, spec.budget, workers)

    with stage("polygon", timings):
        np = newton_polygon(lpoly)
        bound = hodge_bound(d, spec.n) if d >= 2 else _flat_bound(lpoly.D)
        lam = lambda_report(lpoly)
        dom = dominates(np, bound)

    body = {
        "problem": spec.to_json(),
        "polygon": np.to_json(),
        "slopes": [str(s) for s in np.slopes()],
        "bound": bound.to_json(),
        "dominates": dom,
        "newton_equals_bound": newton_equals_bound(np, bound),
        "lambda": lam.to_json(),
    }
    return CommandReport("polygon", body, timings, int(not dom))


def cmd_purity(spec: ProblemSpec, workers: int = 1) -> CommandReport:
    timings: Timings = {}

    with stage("lpoly", timings):
        lpoly = l_polynomial(spec.f, spec.field, spec.chi, spec.budget, workers)

    with stage("purity", timings):
        reports = purity_check(lpoly, spec.precision, spec.tol)

    body = {
        "problem": spec.to_json(),
        "lpoly": lpoly.to_json(),
        "purity": [r.to_json() for r in reports],
        "pure": is_pure(reports),
    }
    return CommandReport("purity", body, timings, int(not is_pure(reports)))


def cmd_quad(spec: ProblemSpec, compare: bool = True) -> CommandReport:
    """Closed-form evaluation of a characteristic 2 quadratic, compared
    with enumeration when the budget allows.
    """
    timings: Timings = {}

    with stage("quad2", timings):
        result = evaluate_polynomial(spec.f, spec.chi)

    body: t.Dict[str, t.Any] = {
        "problem": spec.to_json(),
        "quadratic": result.to_json(),
    }
    failures = 0

    if compare and point_count(spec.field, spec.n, 1) <= spec.budget:
        with stage("sums", timings):
            s1 = sum_sequence(spec.f, spec.field, spec.chi, 1, spec.budget)[0]

        body["enumerated"] = s1.value.to_json()
        body["agrees"] = s1.value == result.value
        failures = int(not body["agrees"])

    return CommandReport("quad", body, timings, failures)


def cmd_hilbert(d: int, n: int) -> CommandReport:
    timings: Timings = {}

    with stage("hilbert", timings):
        profile = hilbert_coefficients(d, n)

    body = {
        "hilbert": profile.to_json(),
        "total": profile.total,
        "weighted_total": profile.weighted_total,
        "identities": profile.check(),
    }
    return CommandReport("hilbert", body, timings, int(not profile.check()))


def random_dense_polynomial(
    field: FieldDesc, n: int, d: int, rng: random.Random
) -> MultiPoly:
    """Every monomial of degree at most ``d`` with a uniform random
    coefficient, redrawn until the degree ``d`` part is nonzero.
    """
    while True:
        terms = {
            u: field.element(rng.randrange(field.order))
            for m in range(d + 1)
            for u in monomials_of_degree(n, m)
        }
        f = MultiPoly(field, n, terms)

        if not homogeneous_component(f, d).is_zero:
            return f


def cmd_survey(
    field: FieldDesc,
    n: int,
    d: int,
    count: int,
    seed: int = 0,
    chi: t.Optional[CharacterSpec] = None,
    budget: int = DEFAULT_BUDGET,
    precision: int = DEFAULT_PRECISION,
    tol: float = DEFAULT_TOLERANCE,
    workers: int = 1,
    extra: int = 1,
    max_attempts: t.Optional[int] = None,
) -> CommandReport:
    """Run :func:`cmd_verify` on ``count`` random dense polynomials of
    degree ``d`` in ``n`` variables over ``field`` whose top form passes
    the regular-sequence test. Polynomials are drawn from
    ``random.Random(seed)``, so a seed names a fixed list of instances.
    """
    chi = chi or CharacterSpec.default(field)
    timings: Timings = {}
    rng = random.Random(seed)
    rows = []
    attempts = 0
    failures = 0
    max_attempts = max_attempts or 100 * count

    with stage("survey", timings):
        while len(rows) < count and attempts < max_attempts:
            attempts += 1
            f = random_dense_polynomial(field, n, d, rng)

            top = homogeneous_component(f, d)

            if d >= 2 and not is_regular_sequence(top).is_regular:
                continue

            instance = ProblemSpec(field, f, chi, budget, precision, tol)

            try:
                report = cmd_verify(instance, workers, extra)
            except CharsumError as e:
                failures += 1
                rows.append({"poly": f.pretty(), "error": e.to_json()})
                continue

            rows.append(
                {
                    "poly": f.pretty(),
                    "D": report.D,
                    "lpoly": report.lpoly.to_json()["coefficients"],
                    "slopes": [str(s) for s in report.polygon.slopes()],
                    "dominates": report.dominates,
                    "newton_equals_bound": report.newton_equals_bound,
                    "lambda": report.lambda_.to_json(),
                    "consistent": None
                    if report.consistency is None
                    else all(a == b for _, a, b in report.consistency),
                    "pure": report.pure,
                }
            )

    body = {
        "field": {"p": field.p, "a": field.a},
        "n": n,
        "d": d,
        "seed": seed,
        "attempts": attempts,
        "instances": rows,
    }
    return CommandReport("survey", body, timings, failures)
