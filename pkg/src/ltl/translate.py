"""
Translations from data LTL to automata with data constraints.

Positions are labelled by signature letters: the letter of the position plus
the part of its closure state the data constraints look at, which is the
truth of every data diamond and of every diamond argument. A signature is
named ``a[bits]``: one digit per diamond (1 holds, 0 not), then one per
argument (0 absent, 1 present, 2 present with the bar). The bar splits the
positions where a strongly-quantified argument holds together with its
strong diamond, so a strong diamond can point into the other half and
thereby at a different position.

Constraints per signature ``s`` and diamond over ``psi``:

* weak, holds: values of ``s`` occur at some psi-signature;
* weak, fails: ``s`` shares no value with any psi-signature;
* strong, holds, psi absent at ``s``: as the weak case;
* strong, holds, psi present: values occur at a psi-signature with the other bar;
* strong, fails, psi present: ``s`` is a key and shares no value with other
  psi-signatures;
* strong, fails, psi absent: as the failing weak case.

Weak formulas thus never produce keys.
"""

from itertools import product
from typing import NamedTuple, Tuple

from src.adc.model import Adc
from src.automata.alphabet import Alphabet
from src.automata.product import explore
from src.automata.systems import GeneralizedBuchi, TransitionSystem
from src.core.constants import DEFAULT_LETTER, FLAG_STAR
from src.core.errors import FragmentError
from src.data.constraints import ConstraintSet, Denial, Inclusion, Key
from src.debug.logger import log
from src.ltl.ast import DiamondS, NextDiff, NextSame, atoms_of, uses
from src.ltl.normal_form import normal_form, weak_as_strong
from src.ltl.tableau import Tableau
from src.profile.profiles import ProfileAdc, ProfileAlphabet

LOGGER = "ltl.translate"

START = "start"

ABSENT, PRESENT, BARRED = 0, 1, 2


class Signature(NamedTuple):
    letter: str
    diamonds: Tuple[bool, ...]
    arguments: Tuple[int, ...]

    @property
    def name(self):
        if not self.diamonds:
            return self.letter
        bits = "".join("1" if d else "0" for d in self.diamonds) + "".join(str(a) for a in self.arguments)
        return f"{self.letter}[{bits}]"


def erase_signature(name):
    """Base letter of a signature letter name."""
    if name.endswith("]") and "[" in name:
        return name[:name.rindex("[")]
    return name


def formula_alphabet(formula, names=None):
    """The given letters, or the formula's atoms plus a letter standing for every other one."""
    if isinstance(names, Alphabet):
        return names
    if names is None:
        names = atoms_of(formula) + [DEFAULT_LETTER]
    return Alphabet(list(dict.fromkeys(names)))


def signatures_of(tableau, state):
    """Every signature a position in ``state`` may carry (one per bar choice)."""
    letter = tableau.alphabet.name(state.letter)
    diamonds = tuple(d in state.formulas for d in tableau.diamonds)
    base = []
    choosable = []
    for i, argument in enumerate(tableau.arguments):
        if argument not in state.formulas:
            base.append(ABSENT)
            continue
        base.append(PRESENT)
        if any(isinstance(d, DiamondS) and d.item == argument and d in state.formulas for d in tableau.diamonds):
            choosable.append(i)
    result = []
    for bars in product((PRESENT, BARRED), repeat=len(choosable)):
        arguments = list(base)
        for i, bar in zip(choosable, bars):
            arguments[i] = bar
        result.append(Signature(letter, diamonds, tuple(arguments)))
    return result


def signature_constraints(tableau, signatures, alphabet):
    """Constraints over ``alphabet`` (named by ``signatures``) discharging every data diamond."""
    constraints = []
    for s in signatures:
        me = alphabet.symbol(s.name)
        for d, diamond in enumerate(tableau.diamonds):
            k = tableau.arguments.index(diamond.item)
            holders = [t for t in signatures if t.arguments[k] != ABSENT]
            strong = isinstance(diamond, DiamondS)
            here = s.arguments[k] != ABSENT
            if s.diamonds[d]:
                if strong and here:
                    holders = [t for t in holders if t.arguments[k] != s.arguments[k]]
                elif here:
                    continue
                constraints.append(Inclusion(me, alphabet.symbols(t.name for t in holders)))
            elif strong and here:
                constraints.append(Key(me))
                constraints.extend(Denial(me, alphabet.symbol(t.name)) for t in holders if t != s)
            else:
                constraints.extend(Denial(me, alphabet.symbol(t.name)) for t in holders)
    return ConstraintSet(alphabet, constraints)


def _automaton(tableau, labels):
    """Generalized Büchi automaton of the tableau, edges labelled by ``labels(source, target)``."""

    def successors(node):
        if node == START:
            return [(label, j) for j in tableau.initial() for label in labels(None, j)]
        return [(label, j) for j in tableau.successors(node) for label in labels(node, j)]

    _, order, raw = explore(START, successors)
    return order, raw


def _finish(tableau, order, raw, alphabet, encode):
    transitions = frozenset((p, encode(label), q) for p, label, q in raw)
    ts = TransitionSystem(alphabet, len(order), transitions)
    position = {node: i for i, node in enumerate(order)}
    acceptance = tuple(frozenset(position[j] for j in sets if j in position) for sets in tableau.acceptance())
    return GeneralizedBuchi(ts, 0, acceptance).degeneralize()


def _signature_alphabet(raw, pick):
    signatures = sorted({pick(label) for _, label, _ in raw})
    return signatures, Alphabet([s.name for s in signatures])


def _letter_adc(formula, alphabet):
    tableau = Tableau(formula, alphabet)
    order, raw = _automaton(tableau, lambda i, j: signatures_of(tableau, tableau.states[j]))
    signatures, sig_alphabet = _signature_alphabet(raw, lambda label: label)
    automaton = _finish(tableau, order, raw, sig_alphabet, lambda label: sig_alphabet.symbol(label.name))
    constraints = signature_constraints(tableau, signatures, sig_alphabet)
    log("signature automaton: %d states, %d letters, %d constraints", automaton.state_count, len(sig_alphabet), len(constraints), name=LOGGER)
    return Adc(automaton, constraints)


def translate_weak(formula, alphabet=None):
    """Adc without keys whose projected language is the models of a weak-diamond formula."""
    if uses(formula, DiamondS, NextSame, NextDiff):
        raise FragmentError("translate_weak accepts only weak data diamonds")
    adc = _letter_adc(normal_form(formula), formula_alphabet(formula, alphabet))
    if adc.constraints.has_keys():
        raise FragmentError("weak translation produced a key constraint")
    return adc


def translate_strong(formula, alphabet=None):
    """Adc for a formula with strong (and possibly weak) data diamonds."""
    if uses(formula, NextSame, NextDiff):
        raise FragmentError("data-aware next operators need translate_full")
    letters = formula_alphabet(formula, alphabet)
    return _letter_adc(normal_form(weak_as_strong(formula)), letters)


def translate_full(formula, alphabet=None):
    """ProfileAdc for the whole logic; each state remembers the right flag its
    next-operators were checked against, and the edge into the following
    state reads that flag as the profile letter's left flag."""
    letters = formula_alphabet(formula, alphabet)
    tableau = Tableau(normal_form(formula), letters, profiles=True)

    def labels(i, j):
        target = tableau.states[j]
        left = FLAG_STAR if i is None else tableau.states[i].flag
        return [(s, left, target.flag) for s in signatures_of(tableau, target)]

    order, raw = _automaton(tableau, labels)
    signatures, sig_alphabet = _signature_alphabet(raw, lambda label: label[0])
    profiles = ProfileAlphabet(sig_alphabet)
    automaton = _finish(
        tableau, order, raw, profiles.alphabet,
        lambda label: profiles.index(sig_alphabet.symbol(label[0].name), label[1], label[2]),
    )
    constraints = signature_constraints(tableau, signatures, sig_alphabet)
    log("profile signature automaton: %d states, %d letters", automaton.state_count, len(sig_alphabet), name=LOGGER)
    return ProfileAdc(automaton, constraints)


def plain_automaton(formula, alphabet=None):
    """Büchi automaton over the letters for a formula without data operators."""
    letters = formula_alphabet(formula, alphabet)
    tableau = Tableau(normal_form(formula), letters)
    order, raw = _automaton(tableau, lambda i, j: [tableau.states[j].letter])
    return _finish(tableau, order, raw, letters, lambda label: label)
