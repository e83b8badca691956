"""Acceptance checks across the toolkit"""

from .suite import CheckResult, SuiteOptions, VerificationSuite, overall_status, run_suite

__all__ = ["CheckResult", "SuiteOptions", "VerificationSuite", "overall_status", "run_suite"]
