"""
Constraint translations used by the profile pipeline.

Zonal translation moves every constraint from base letters to set letters:
a value occurs at letter ``a`` iff it is the value of some zone whose label set
contains ``a``. Keys additionally need ``a`` to occur at most once per zone,
which is returned as a flag set for the zonal automaton to enforce.

The state reduction turns constraints over automaton states into constraints
over (state, letter) pairs, labelling every position by the state the run
enters when reading it.
"""

from dataclasses import dataclass
from itertools import combinations

from src.automata.alphabet import Alphabet
from src.automata.systems import BuchiAutomaton, TransitionSystem
from src.core.errors import ConstraintError
from src.data.constraints import ConstraintSet, Denial, Inclusion, Key
from src.profile.profiles import ProfileAdc, ProfileAlphabet
from src.profile.zones import ZonalAlphabet


def translate_constraints_zonal(constraints):
    """(constraints over the zonal alphabet, letters that may occur at most once per zone)."""
    base = constraints.alphabet
    zonal = ZonalAlphabet(base)

    def holders(a):
        return [zonal.set_symbol(s) for s in zonal.subsets if a in s]

    translated = []
    once = set()
    for constraint in constraints:
        if isinstance(constraint, Key):
            sets = holders(constraint.symbol)
            translated.extend(Key(r) for r in sets)
            translated.extend(Denial(r, s) for r, s in combinations(sets, 2))
            once.add(constraint.symbol)
        elif isinstance(constraint, Inclusion):
            targets = frozenset(zonal.set_symbol(s) for s in zonal.subsets if s & constraint.targets)
            translated.extend(Inclusion(r, targets) for r in holders(constraint.symbol))
        else:
            translated.extend(
                Denial(r, s) for r in holders(constraint.first) for s in holders(constraint.second)
            )
    return ConstraintSet(zonal.alphabet, translated), frozenset(once)


@dataclass(frozen=True)
class StateProfileAdc:
    """Profile automaton whose constraints range over its states (named by ``states``)."""

    automaton: BuchiAutomaton
    base: Alphabet
    constraints: ConstraintSet

    def __post_init__(self):
        if len(self.constraints.alphabet) != self.automaton.state_count:
            raise ConstraintError("state constraints need one name per automaton state")

    @property
    def states(self):
        return self.constraints.alphabet


def state_classes(states, base):
    """Alphabet of (state, letter) pairs, named ``q/a``, ordered by state then letter."""
    return Alphabet([f"{q}/{a}" for q in states.names for a in base.names])


def state_constraint_reduction(adc):
    """Equivalent ProfileAdc over (state, letter) pairs."""
    base, states = adc.base, adc.states
    pairs = state_classes(states, base)
    width = len(base)

    def pair(q, a):
        return q * width + a

    old = ProfileAlphabet(base)
    new = ProfileAlphabet(pairs)
    transitions = set()
    for p, symbol, q in adc.automaton.ts.transitions:
        letter = old.letter(symbol)
        transitions.add((p, new.index(pair(q, letter.symbol), letter.left, letter.right), q))
    ts = TransitionSystem(new.alphabet, adc.automaton.state_count, frozenset(transitions))
    automaton = BuchiAutomaton(ts, adc.automaton.initial, adc.automaton.final)

    letters = range(width)
    reduced = []
    for constraint in adc.constraints:
        if isinstance(constraint, Key):
            q = constraint.symbol
            reduced.extend(Key(pair(q, a)) for a in letters)
            reduced.extend(Denial(pair(q, a), pair(q, b)) for a, b in combinations(letters, 2))
        elif isinstance(constraint, Inclusion):
            targets = frozenset(pair(p, b) for p in constraint.targets for b in letters)
            reduced.extend(Inclusion(pair(constraint.symbol, a), targets) for a in letters)
        else:
            reduced.extend(
                Denial(pair(constraint.first, a), pair(constraint.second, b)) for a in letters for b in letters
            )
    return ProfileAdc(automaton, ConstraintSet(pairs, reduced))
