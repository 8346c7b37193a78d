import sys
import os
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))
import pytest

from fockcrystal.core.exceptions import BudgetExceededException
from fockcrystal.domain.models.verification import VerificationGrid
from fockcrystal.services.verification import SUITES, Budget, run_verification


def _grid(**overrides):
    values = dict(e_values=[2, 3], n_values=[0, 1, 2, 3], samples=60, workers=2)
    values.update(overrides)
    return VerificationGrid(**values)


@pytest.mark.parametrize("suite", sorted(SUITES))
def test_suite_passes_on_small_grid(suite):
    report = run_verification(suite, _grid())
    assert report.ok, report.suites[0].failures
    assert report.suites[0].checks > 0
    assert report.suites[0].suite == suite


def test_all_runs_every_suite():
    report = run_verification("all", _grid(e_values=[2], n_values=[0, 1, 2]))
    assert [suite.suite for suite in report.suites] == list(SUITES)
    assert report.ok


def test_stabilize_records_both_readings():
    report = run_verification("stabilize", _grid(e_values=[2], n_values=[2]))
    notes = report.suites[0].notes
    assert any(note.startswith("s1-s0 > n-1 matches negative") for note in notes)
    assert any(note.startswith("s1-s0 > n-1 matches positive") for note in notes)


def test_summary_line():
    report = run_verification("hecke", _grid())
    assert report.suites[0].summary().startswith("hecke: PASS ")


def test_budget_is_enforced():
    with pytest.raises(BudgetExceededException):
        run_verification("flotw", _grid(budget=3))


def test_budget_counts_visits():
    budget = Budget(5)
    budget.visit(5)
    assert budget.used == 5
    with pytest.raises(BudgetExceededException):
        budget.visit()


def test_seeded_samples_are_reproducible():
    first = run_verification("inverse", _grid(seed=7))
    second = run_verification("inverse", _grid(seed=7))
    assert first.suites[0].checks == second.suites[0].checks == 3 * 60


@pytest.mark.slow
@pytest.mark.parametrize("suite", ["main", "flotw", "stabilize", "degree-max", "bijection"])
def test_suite_passes_on_full_grid(suite):
    grid = VerificationGrid(e_values=[2, 3, 4], n_values=list(range(9)), workers=4)
    assert run_verification(suite, grid).ok
