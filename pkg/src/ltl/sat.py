"""
Satisfiability of data LTL.

The fragment picks the procedure: formulas without data operators go to
plain Büchi emptiness, weak-diamond formulas to the key-free search,
strong-diamond formulas to the general search, and anything using the
data-aware next operators to the profile pipeline.
"""

from dataclasses import dataclass
from typing import Optional

from src.adc.model import Verdict
from src.adc.search import adc_nonempty, adc_nonempty_keyfree
from src.automata.emptiness import buchi_nonempty
from src.core.constants import DEFAULT_UNROLL_FACTOR, FIRST_DATA_VALUE, MODEL_SEARCH_LENGTH, MODEL_SEARCH_VALUES
from src.core.options import DEFAULT_OPTIONS
from src.data.search import data_lassos
from src.core.errors import WitnessError
from src.data.words import FiniteDataWord, LassoDataWord
from src.debug.logger import log
from src.ltl.normal_form import Fragment, fragment_of
from src.ltl.semantics import evaluate, prefix_bounds
from src.ltl.translate import (
    erase_signature, formula_alphabet, plain_automaton, translate_full, translate_strong, translate_weak,
)
from src.profile.pipeline import profile_adc_nonempty, zonal_recipe_word

LOGGER = "ltl.sat"


@dataclass(frozen=True)
class LtlWitness:
    """Model of a formula: a lasso when one is known, otherwise a recipe to unroll."""

    alphabet: object
    fragment: Fragment
    lasso: Optional[LassoDataWord] = None
    recipe: Optional[object] = None
    signatures: Optional[object] = None

    def prefix(self, n):
        """First ``n`` positions of the model over the formula's letters."""
        if self.lasso is not None:
            entries = tuple(self.lasso.entry(i) for i in range(n))
            return FiniteDataWord(self.alphabet, entries)
        if self.fragment is Fragment.STRONG_WITH_PROFILES:
            # zonal positions include set letters, so unroll until n base positions exist
            m = n
            word = zonal_recipe_word(self.recipe, m, self.signatures)
            while len(word) < n:
                m *= 2
                word = zonal_recipe_word(self.recipe, m, self.signatures)
            return erase(FiniteDataWord(word.alphabet, word.entries[:n]), self.alphabet)
        return erase(self.recipe.concretize_word(n), self.alphabet)

    def letter_lasso(self):
        """Letters of the recipe's run as (prefix, cycle) over the formula's letters."""
        recipe = self.recipe
        if self.fragment is Fragment.STRONG_WITH_PROFILES:
            source = self.signatures
            # set letters spell no positions
            keep = lambda symbols: [s for s in map(recipe.extended.base_of, symbols) if s < len(source)]
            prefix, cycle = keep(recipe.u + recipe.v_prefix), keep(recipe.v_cycle)
        else:
            source = recipe.extended.base
            prefix = [recipe.extended.base_of(s) for s in recipe.u + recipe.v_prefix]
            cycle = [recipe.extended.base_of(s) for s in recipe.v_cycle]
        to_letters = lambda symbols: [self.alphabet.symbol(erase_signature(source.name(s))) for s in symbols]
        return to_letters(prefix), to_letters(cycle)


def erase(word, alphabet):
    """Map a word over signature letters to the underlying letters."""
    source = word.alphabet
    mapped = lambda entries: tuple((alphabet.symbol(erase_signature(source.name(a))), value) for a, value in entries)
    if isinstance(word, LassoDataWord):
        return LassoDataWord(alphabet, mapped(word.prefix), mapped(word.cycle))
    return FiniteDataWord(alphabet, mapped(word.entries))


def _confirm(formula, witness):
    """Raise WitnessError unless the witness is, or may extend to, a model."""
    if witness.lasso is not None:
        if not evaluate(witness.lasso, 1, formula):
            raise WitnessError("witness lasso does not satisfy the formula")
        return
    if witness.recipe is None:
        return
    prefix, cycle = witness.letter_lasso()
    if not cycle:
        log("no positions in the witness cycle, nothing to confirm", name=LOGGER)
        return
    n = DEFAULT_UNROLL_FACTOR * (len(prefix) + len(cycle))
    must, may = prefix_bounds(witness.prefix(n), prefix, cycle, formula)
    if not may:
        raise WitnessError(f"the first {n} positions of the witness refute the formula")
    log("witness prefix of %d positions %s the formula", n, "forces" if must else "allows", name=LOGGER)


def _plain(formula, letters):
    automaton = plain_automaton(formula, letters)
    run = buchi_nonempty(automaton)
    stats = {"states": automaton.state_count}
    if run is None:
        return Verdict.empty_verdict(**stats), None
    lasso = LassoDataWord(
        letters,
        tuple((a, FIRST_DATA_VALUE) for a in run.prefix_word),
        tuple((a, FIRST_DATA_VALUE) for a in run.cycle_word),
    )
    return Verdict(True, None, stats), lasso


def ltl_sat(formula, alphabet=None, options=DEFAULT_OPTIONS):
    """Verdict whose recipe is an LtlWitness when the formula is satisfiable."""
    letters = formula_alphabet(formula, alphabet)
    fragment = fragment_of(formula)
    log("deciding %s formula over %s", fragment.value, list(letters.names), name=LOGGER)
    lasso = None
    signatures = None
    if fragment is Fragment.PLAIN:
        verdict, lasso = _plain(formula, letters)
    elif fragment is Fragment.STRONG_WITH_PROFILES:
        padc = translate_full(formula, letters)
        signatures = padc.base
        if buchi_nonempty(padc.automaton) is None:
            verdict = Verdict.empty_verdict(states=padc.automaton.state_count)
        else:
            verdict = profile_adc_nonempty(padc, options)
    else:
        if fragment is Fragment.WEAK_ONLY:
            adc, solve = translate_weak(formula, letters), adc_nonempty_keyfree
        else:
            adc, solve = translate_strong(formula, letters), adc_nonempty
        if buchi_nonempty(adc.automaton) is None:
            verdict = Verdict.empty_verdict(states=adc.automaton.state_count)
        else:
            verdict = solve(adc, options=options)
            verdict.stats["states"] = adc.automaton.state_count
            verdict.stats["letters"] = len(adc.alphabet)
        if verdict.nonempty:
            signature_lasso = verdict.recipe.as_lasso()
            if signature_lasso is not None:
                lasso = erase(signature_lasso, letters)
    verdict.stats["fragment"] = fragment.value
    if not verdict.nonempty:
        return verdict
    witness = LtlWitness(letters, fragment, lasso, verdict.recipe, signatures)
    _confirm(formula, witness)
    return Verdict(True, witness, verdict.stats)


def search_ltl_models(formula, alphabet=None, max_len=MODEL_SEARCH_LENGTH, values=MODEL_SEARCH_VALUES):
    """First lasso data word within the bounds satisfying the formula, or None."""
    letters = formula_alphabet(formula, alphabet)
    for word in data_lassos(letters, max_len, values):
        if evaluate(word, 1, formula):
            return word
    return None
