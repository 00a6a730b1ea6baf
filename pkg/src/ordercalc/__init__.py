"""Left orderings of groups: braid sigma-positivity, crossings, Conradian souls
and finite-ball views of the space of orderings."""

from .braid import StepBudgetExceeded, handle_reduce, sigma_classify
from .crossings import CrossingCandidate, VerificationReport, search_crossings, verify_crossing
from .orderings import EXOTIC_C, KLEIN_CONES, Sign, compare, is_positive, parse_ordering
from .words import FREE2, KLEIN, Braid, Word, parse_word

__all__ = [
    "Braid",
    "CrossingCandidate",
    "EXOTIC_C",
    "FREE2",
    "KLEIN",
    "KLEIN_CONES",
    "Sign",
    "StepBudgetExceeded",
    "VerificationReport",
    "Word",
    "compare",
    "handle_reduce",
    "is_positive",
    "parse_ordering",
    "parse_word",
    "search_crossings",
    "sigma_classify",
    "verify_crossing",
]
