"""
Tests for the verification suite runner
"""

import math
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent.parent))

from src.errors import ConvergenceError
from src.verification import CheckResult, SuiteOptions, VerificationSuite, overall_status, run_suite


def _result(name, passed):
    return CheckResult(name=name, passed=passed, value=0.0, threshold=1.0)


class TestOverallStatus:
    """Aggregate verdict"""

    def test_all_pass(self):
        assert overall_status([_result("a", True), _result("b", True)]) == "PASS"

    def test_any_failure(self):
        assert overall_status([_result("a", True), _result("b", False)]) == "FAIL"

    def test_result_dict(self):
        data = _result("a", True).to_dict()
        assert data["name"] == "a"
        assert set(data) == {"name", "passed", "value", "threshold", "detail", "seconds"}


class TestSuite:
    """Check selection and error handling"""

    def test_quick_subset(self):
        """The quick run skips the Monte Carlo and PDE checks"""
        quick = [name for name, _ in VerificationSuite(SuiteOptions(quick=True)).checks()]
        full = [name for name, _ in VerificationSuite(SuiteOptions()).checks()]
        assert set(quick) < set(full)
        assert len(full) - len(quick) == 7

    def test_errors_become_failures(self, monkeypatch):
        """A check raising a toolkit error is reported as FAIL, not propagated"""
        suite = VerificationSuite(SuiteOptions(quick=True))

        def broken():
            raise ConvergenceError("no bracket")

        monkeypatch.setattr(suite, "checks", lambda: [("broken", broken)])
        (result,) = suite.run()
        assert not result.passed
        assert math.isnan(result.value)
        assert "ConvergenceError" in result.detail

    def test_individual_checks(self):
        """Closed-form anchors and lifetime identities pass on their own"""
        suite = VerificationSuite(SuiteOptions(quick=True))
        for check in (suite.check_omega_anchors, suite.check_lifetimes, suite.check_ode_invariants):
            value, threshold, _ = check()
            assert value <= threshold

    @pytest.mark.slow
    def test_boundary_matching(self):
        """s_t and its radial derivative match across the boundary"""
        suite = VerificationSuite(SuiteOptions())
        for check in (suite.check_boundary_matching, suite.check_radial_derivative):
            value, threshold, _ = check()
            assert value <= threshold

    @pytest.mark.slow
    def test_quick_suite_passes(self):
        """Every quick check passes"""
        results = run_suite(quick=True)
        assert overall_status(results) == "PASS", [r.name for r in results if not r.passed]
