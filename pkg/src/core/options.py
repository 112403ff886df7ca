from dataclasses import dataclass
from typing import Optional


@dataclass(frozen=True)
class SearchOptions:
    """Effort knobs for the exponential searches.

    prune: skip partitions that violate the forced-empty conditions up front
        (turning it off enumerates everything and filters afterwards).
    max_support: cap on support-set nodes explored per Presburger query.
    ilp_bound: override for the branch-and-bound variable bound.
    max_attempts: give up with SearchBudgetExceeded after this many partition attempts.
    """

    prune: bool = True
    max_support: Optional[int] = None
    ilp_bound: Optional[int] = None
    max_attempts: Optional[int] = None


DEFAULT_OPTIONS = SearchOptions()
