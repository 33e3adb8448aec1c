"""Deciding p-competition graphs: filters, exhaustive search and realizer reports."""

from pcomp.solver.decide import (
    REPORT_FORMAT_VERSION,
    RealizerReport,
    Verdict,
    decide,
    format_report,
    format_set,
    format_verdict,
    realizer,
)
from pcomp.solver.filters import OPEN, FilterConflict, FilterVerdict, apply_filters
from pcomp.solver.lemmas import GapReport, LemmaPreconditionError, kary_gap_check, verify_increasing_lemma
from pcomp.solver.search import NO, UNKNOWN, YES, SearchBudget, SearchResult, search_realization

__all__ = [
    "NO",
    "OPEN",
    "REPORT_FORMAT_VERSION",
    "UNKNOWN",
    "YES",
    "FilterConflict",
    "FilterVerdict",
    "GapReport",
    "LemmaPreconditionError",
    "RealizerReport",
    "SearchBudget",
    "SearchResult",
    "Verdict",
    "apply_filters",
    "decide",
    "format_report",
    "format_set",
    "format_verdict",
    "kary_gap_check",
    "realizer",
    "search_realization",
    "verify_increasing_lemma",
]
