import json

import pytest
from hypothesis import given, settings, strategies as st

import yqn


def test_suites_listed():
    assert yqn.suite_names() == ["rmatrix", "yangian", "pairing", "sergeev", "drinfeld"]
    assert "qybe" in yqn.suite_checks("rmatrix")
    with pytest.raises(ValueError):
        yqn.suite_checks("nope")


def test_run_and_report():
    cfg = yqn.RunConfig(N=1, checks=["qybe", "unitarity"], negative_controls=True)
    res = yqn.run("rmatrix", cfg)
    assert [r.ok for r in res] == [True] * len(res)
    controls = [r for r in res if r.expect_fail]
    assert len(controls) == 1 and controls[0].status == yqn.Status.FAIL
    rep = json.loads(yqn.report_json(res, cfg, "rmatrix"))
    assert rep["summary"]["not_ok"] == 0
    assert rep["records"][0]["version"] == yqn.__version__
    assert yqn.report_json(res, cfg, "rmatrix") == yqn.report_json(yqn.run("rmatrix", cfg), cfg, "rmatrix")


def test_bad_point_rejected():
    with pytest.raises(ValueError):
        yqn.RunConfig(points=["1/0"])


def test_direct_checks():
    assert yqn.check_qybe(1).ok
    assert yqn.check_qybe_mutated(1).status == yqn.Status.FAIL
    assert yqn.check_irreducible_principal(1, "5/2").status == yqn.Status.PASS


@settings(max_examples=8, deadline=None)
@given(st.fractions(min_value=-20, max_value=20, max_denominator=9))
def test_rtt_eval_any_point(z):
    assert yqn.check_rtt_eval(1, f"{z.numerator}/{z.denominator}", 2).ok


@pytest.mark.parametrize("N", [1, 2, 3])
def test_functor_dimension(N):
    # one principal-series variable: coinvariants have dimension 2N
    assert yqn.functor_dimension(N, ["3"]) == 2 * N
