"""
Büchi automaton over zonal projections.

Reads a set letter ``S``, then the base letters of that zone, simulating the
profile automaton on the profile letters the zone induces: the first letter of
the word gets left flag ``*``, the first letter of any later zone ``!``, every
other letter ``=``; a letter's right flag is ``!`` when a set letter follows
it and ``=`` otherwise. Since a right flag is only known one step later, the
last base letter read is held back until the next symbol arrives.

A state is (profile state, zone set, letters seen in the zone, held letter,
once-letters used in the zone, first zone). Acceptance is generalized: the
profile run visits final states infinitely often, and infinitely often the
current zone has seen all letters of its set (every finite zone at its end,
or the final infinite zone from some point on).
"""

from src.automata.product import explore
from src.automata.systems import GeneralizedBuchi, TransitionSystem
from src.core.constants import FLAG_DIFF, FLAG_SAME, FLAG_STAR
from src.debug.logger import log
from src.profile.profiles import ProfileAlphabet
from src.profile.zones import ZonalAlphabet

LOGGER = "profile.zonal"

START = "start"


def zonal_automaton(profile_automaton, base, once_flags=frozenset()):
    """Büchi automaton over the zonal alphabet of ``base``."""
    profiles = ProfileAlphabet(base)
    zonal = ZonalAlphabet(base)
    table = {}
    for p, symbol, q in profile_automaton.ts.transitions:
        table.setdefault((p, symbol), []).append(q)

    def emit(state, held, right):
        letter, left = held
        return sorted(table.get((state, profiles.index(letter, left, right)), ()))

    def successors(node):
        if node == START:
            return [(zonal.set_symbol(s), (profile_automaton.initial, s, frozenset(), None, frozenset(), True)) for s in zonal.subsets]
        state, zone, seen, held, used, first = node
        result = []
        if held is not None and seen == zone:
            for s in zonal.subsets:
                for target in emit(state, held, FLAG_DIFF):
                    result.append((zonal.set_symbol(s), (target, s, frozenset(), None, frozenset(), False)))
        for a in sorted(zone):
            if a in once_flags and a in used:
                continue
            now_used = used | {a} if a in once_flags else used
            if held is None:
                left = FLAG_STAR if first else FLAG_DIFF
                result.append((a, (state, zone, seen | {a}, (a, left), now_used, first)))
            else:
                for target in emit(state, held, FLAG_SAME):
                    result.append((a, (target, zone, seen | {a}, (a, FLAG_SAME), now_used, first)))
        return result

    _, order, transitions = explore(START, successors)
    final = frozenset(
        i for i, node in enumerate(order) if node != START and node[0] in profile_automaton.final
    )
    covered = frozenset(i for i, node in enumerate(order) if node != START and node[2] == node[1])
    ts = TransitionSystem(zonal.alphabet, len(order), transitions)
    log("zonal automaton with %d states", len(order), name=LOGGER)
    return GeneralizedBuchi(ts, 0, (final, covered)).degeneralize()
