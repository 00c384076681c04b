import pytest

from charsum import pipeline
from charsum.cyclo import CycNum
from charsum.exceptions import InconsistencyError
from charsum.gf import build_field
from charsum.lfun import LPolynomial
from charsum.pipeline import cmd_survey
from charsum.pipeline import cmd_verify
from charsum.problem import parse_problem
from charsum.quad2 import build_matrix
from charsum.quad2 import quadratic_l_polynomial

HYPERBOLIC = "p=2 n=4 poly: x1*x2 + x3*x4 + 1"


def test_quadratic_closed_form_matches_lpoly():
    spec = parse_problem(HYPERBOLIC)
    report = cmd_verify(spec)
    assert report.quad.value == -4
    assert report.lpoly == quadratic_l_polynomial(build_matrix(spec.f), spec.chi)
    assert report.lpoly.coeffs == (1, 4)


def test_quadratic_lpoly_mismatch(monkeypatch):
    def wrong(Q, chi, result=None):
        return LPolynomial(Q.n, 2, 1, (CycNum.one(2), CycNum.from_int(2, -4)))

    monkeypatch.setattr(pipeline, "quadratic_l_polynomial", wrong)

    with pytest.raises(InconsistencyError) as exc_info:
        cmd_verify(parse_problem(HYPERBOLIC))

    assert exc_info.value.stage == "lpoly"


def test_quadratic_lpoly_skipped_in_odd_characteristic():
    report = cmd_verify(parse_problem("p=3 n=1 poly: x1^2"))
    assert report.quad is None


def test_survey_reports_consistency_outcome():
    field = build_field(2)
    survey = cmd_survey(field, 1, 3, 2, seed=5)
    assert all(row["consistent"] is True for row in survey.body["instances"])

    skipped = cmd_survey(field, 1, 3, 2, seed=5, budget=4)
    assert all(row["consistent"] is None for row in skipped.body["instances"])


def test_survey_counts_failed_consistency(monkeypatch):
    real = pipeline.consistency_table

    def off_by_one(*args, **kwargs):
        return [(i, a, b + 1) for i, a, b in real(*args, **kwargs)]

    monkeypatch.setattr(pipeline, "consistency_table", off_by_one)
    survey = cmd_survey(build_field(2), 1, 3, 2, seed=5)
    assert survey.failures == 2

    for row in survey.body["instances"]:
        assert row["error"]["stage"] == "consistency"
        assert row["error"]["code"] == 3
