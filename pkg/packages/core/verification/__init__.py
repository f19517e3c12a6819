"""Acceptance suite and its report."""

from .report import CriterionResult, VerificationReport
from .suite import CRITERIA, run_acceptance_suite

__all__ = ["CriterionResult", "VerificationReport", "CRITERIA", "run_acceptance_suite"]
