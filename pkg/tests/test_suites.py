import json
from fractions import Fraction

import pytest

from girth5 import suites
from girth5.cli import main
from girth5.suites import SuiteError, SuiteReport, merge_budgets, run_suite


def test_known_suites():
    assert set(suites.SUITES) == {
        "s-props", "surfineq", "cyl", "chains", "exceptional", "basic", "critshort",
        "planechar-small", "diskweight-small", "aksen-small", "grotzsch-random", "concentric",
    }


def test_unknown_suite():
    with pytest.raises(SuiteError):
        run_suite("nope")


@pytest.mark.parametrize("over", [{"nope": 1}, {"cyl.xmax": "x"}, {"cyl.xmax": -1}])
def test_budget_override_errors(over):
    with pytest.raises(SuiteError):
        merge_budgets(over)


def test_budget_override_applies():
    assert merge_budgets({"cyl.xmax": "9"})["cyl.xmax"] == 9
    assert merge_budgets()["cyl.xmax"] == 12


@pytest.mark.parametrize("name", ["s-props", "cyl", "chains", "exceptional"])
def test_reports_are_byte_identical(name):
    a, b = run_suite(name), run_suite(name)
    assert a.ok and a.dumps() == b.dumps()
    assert "elapsed" not in a.dumps()


def test_fractions_serialise_as_pairs():
    r = SuiteReport("x")
    r.add("f", {}, Fraction(1, 3), Fraction(1, 3))
    assert r.to_json()["cases"][0]["actual"] == [1, 3]


def test_injected_failure_sets_exit(monkeypatch, capsys):
    def broken(r, b):
        r.add("always-wrong", {}, 1, 2)

    monkeypatch.setitem(suites.SUITES, "injected", broken)
    rep = run_suite("injected")
    assert not rep.ok and rep.exit == 1
    assert "FAIL always-wrong" in rep.summary()
    assert main(["verify", "injected", "--json"]) == 1
    out = json.loads(capsys.readouterr().out)
    assert out[0]["failed"] == 1


def test_explicit_ok_overrides_equality():
    r = SuiteReport("x")
    r.add("bound", {}, "<= 5", 3, 3 <= 5)
    assert r.ok
