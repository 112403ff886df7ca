"""Emptiness for locally different data words: neighbouring positions never share a value."""

from src.adc.model import Adc
from src.adc.search import PartitionSearch, prefix_verifier
from src.core.options import DEFAULT_OPTIONS

ALGORITHM_LOCAL = "locally-different"


def locally_different_nonempty(automaton, constraints, options=DEFAULT_OPTIONS):
    """Four-way partition search; small finite classes are spelled out as constant letters."""
    adc = Adc(automaton, constraints)
    search = PartitionSearch(
        automaton, constraints, four_way=True, options=options, verify=prefix_verifier(adc), label=ALGORITHM_LOCAL
    )
    return search.run(search.general_guesses())
