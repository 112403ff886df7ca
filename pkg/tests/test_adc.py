"""Tests for automata with data constraints: extended alphabets, attempts, witnesses and the partition search."""
from __future__ import annotations

import random

import pytest

from src.adc.extended import (
    ExtendedAlphabet, attempt_system, build_extended_system, build_presburger_side, build_tail_buchi, local_epsilon,
)
from src.adc.model import Adc, ClassTag, PartitionGuess
from src.adc.search import ALGORITHM_GENERAL, ALGORITHM_KEYFREE, adc_nonempty, adc_nonempty_keyfree
from src.adc.witness import FAIL, WitnessRecipe, synthesize_witness, verify_witness_prefix
from src.automata.emptiness import buchi_nonempty
from src.automata.monitors import universal
from src.core.errors import AlphabetError, PreconditionError, SearchBudgetExceeded, WitnessError
from src.core.options import SearchOptions
from src.data.constraints import ConstraintSet, satisfies
from src.data.search import search_lasso_models
from src.presburger.formula import eval_formula
from tests.generators import gen_buchi, gen_constraint, gen_constraints
from tests.helpers import constraints, cycle, loop

FIN = ClassTag.FIN
INF = ClassTag.INF


# ======================== Helpers ========================

def _guess(symbols, *tags, four_way=False, gamma=()):
    return PartitionGuess(frozenset(symbols), tuple((frozenset(s), t) for s, t in tags), gamma, four_way)


def _prefix_ok(verdict, adc, n=12):
    recipe = verdict.recipe
    return verify_witness_prefix(recipe, max(n, len(recipe.u) + len(recipe.v)), adc).passed


# ======================== Partition guesses ========================

class TestPartitionGuess:
    def test_zero_tags_dropped(self):
        guess = _guess({0, 1}, ({0}, FIN), ({1}, ClassTag.ZERO))
        assert guess.nonzero_classes == [frozenset([0])]
        assert guess.tag(frozenset([1])) is ClassTag.ZERO

    def test_describe(self, ab):
        guess = _guess({0, 1}, ({0, 1}, INF), ({1}, FIN))
        assert guess.describe(ab) == "{b}:fin, {a,b}:inf"
        assert _guess({0}).describe(ab) == "all-zero"

    def test_epsilon(self):
        assert local_epsilon(frozenset([0])) == 4


# ======================== Extended systems ========================

class TestExtendedSystem:
    def test_pair_letter_copies_edges(self, a_only):
        extended, ts = build_extended_system(loop(a_only, ["a"]).ts, _guess({0}, ({0}, INF)))
        assert extended.alphabet.names == ("a", "a@{a}")
        assert (0, 1, 0) in ts.transitions

    def test_constant_letters(self, ab):
        guess = _guess({0, 1}, ({0, 1}, ClassTag.FIN_SMALL), four_way=True, gamma=((frozenset([0, 1]), 2),))
        extended = ExtendedAlphabet(ab, guess)
        assert "b@{a,b}#2" in extended.alphabet
        assert len(extended.constant_symbols) == 4
        assert extended.constant_id(extended.alphabet.symbol("a@{a,b}#1")) == extended.constant_id(
            extended.alphabet.symbol("b@{a,b}#1"))

    def test_adjacency_product_forbids_repeated_constant(self, a_only):
        guess = _guess({0}, ({0}, ClassTag.FIN_SMALL), four_way=True, gamma=((frozenset([0]), 1),))
        system = attempt_system(loop(a_only, ["a"]), guess)
        constant = system.extended.alphabet.symbol("a@{a}#1")
        after_constant = system.ts.step({system.initial}, constant)
        assert after_constant
        assert not system.ts.step(after_constant, constant)

    def test_presburger_side_for_key(self, a_only):
        """A key on a Fin class: x_a = z and z >= 1."""
        guess = _guess({0}, ({0}, FIN))
        system = attempt_system(loop(a_only, ["a"]), guess)
        side = build_presburger_side(system, 0, guess, constraints(a_only, ("key", "a")))
        formula = side.formula
        assert formula.bound_names == ("z{a}",)
        assert eval_formula(formula, (2,), (2,))
        assert not eval_formula(formula, (2,), (1,))
        assert not eval_formula(formula, (0,), (0,))

    def test_key_letter_banned_in_tail(self, a_only):
        guess = _guess({0}, ({0}, FIN))
        system = attempt_system(loop(a_only, ["a"]), guess)
        tail = build_tail_buchi(system, 0, guess, constraints(a_only, ("key", "a")))
        assert buchi_nonempty(tail) is None

    def test_tail_needs_every_pair_letter(self, ab):
        guess = _guess({0, 1}, ({0}, INF), ({1}, INF))
        system = attempt_system(loop(ab, ["a"]), guess)
        tail = build_tail_buchi(system, 0, guess, ConstraintSet(ab))
        assert buchi_nonempty(tail) is None


# ======================== Witnesses ========================

class TestWitness:
    def test_shared_class_gets_one_value(self, ab):
        guess = _guess({0, 1}, ({0, 1}, FIN))
        extended = ExtendedAlphabet(ab, guess)
        recipe = synthesize_witness(guess, extended, (0, 1), (), (0, 1), (1,), ConstraintSet(ab))
        assert recipe.concretize(4) == [(0, 1), (1, 1), (0, 1), (1, 1)]

    def test_counts_must_fit_finite_part(self, ab):
        guess = _guess({0, 1}, ({0, 1}, FIN))
        extended = ExtendedAlphabet(ab, guess)
        with pytest.raises(WitnessError):
            synthesize_witness(guess, extended, (0, 1), (), (0, 1), (2,), ConstraintSet(ab))

    def test_key_needs_exact_count(self, a_only):
        guess = _guess({0}, ({0}, FIN))
        extended = ExtendedAlphabet(a_only, guess)
        with pytest.raises(WitnessError):
            synthesize_witness(guess, extended, (0, 0), (), (0,), (1,), constraints(a_only, ("key", "a")))

    def test_report_points_at_key_clash(self, a_only):
        """A key letter repeated in the cycle reuses the block value."""
        guess = _guess({0}, ({0}, FIN))
        recipe = WitnessRecipe(guess, ExtendedAlphabet(a_only, guess), (0,), (), (0,), (1,))
        adc = Adc(loop(a_only, ["a"]), constraints(a_only, ("key", "a")))
        report = verify_witness_prefix(recipe, 4, adc)
        assert not report.passed
        (failure,) = report.failures()
        assert failure.status == FAIL and failure.positions == (1, 2)
        assert report.to_json()["passed"] is False

    def test_as_lasso_for_finite_recipe(self, a_only):
        guess = _guess({0}, ({0}, FIN))
        recipe = WitnessRecipe(guess, ExtendedAlphabet(a_only, guess), (0,), (), (0,), (1,))
        lasso = recipe.as_lasso()
        assert lasso.prefix == ((0, 1),) and lasso.cycle == ((0, 1),)

    def test_prefix_too_short(self, a_only):
        guess = _guess({0}, ({0}, FIN))
        recipe = WitnessRecipe(guess, ExtendedAlphabet(a_only, guess), (0, 0), (), (0,), (1,))
        with pytest.raises(PreconditionError):
            verify_witness_prefix(recipe, 2, Adc(loop(a_only, ["a"]), ConstraintSet(a_only)))

    def test_empty_cycle_rejected(self, a_only):
        guess = _guess({0})
        with pytest.raises(WitnessError):
            WitnessRecipe(guess, ExtendedAlphabet(a_only, guess), (), (), (), ())


# ======================== Search ========================

class TestAdcNonempty:
    def test_key_forces_fresh_values(self, a_only):
        """a^omega with a key: every position needs its own value."""
        adc = Adc(loop(a_only, ["a"]), constraints(a_only, ("key", "a")))
        verdict = adc_nonempty(adc)
        assert verdict.nonempty
        word = verdict.recipe.concretize_word(10)
        assert len(set(word.values)) == 10
        assert _prefix_ok(verdict, adc)
        assert verdict.recipe.as_lasso() is None

    @pytest.mark.parametrize("algorithm", [ALGORITHM_GENERAL, ALGORITHM_KEYFREE])
    def test_inclusion_without_target_letter(self, ab, algorithm):
        adc = Adc(loop(ab, ["a"]), constraints(ab, ("inclusion", "a", ["b"])))
        assert adc_nonempty(adc, algorithm).empty

    def test_only_b_class_survives(self, ab):
        adc = Adc(universal(ab), constraints(ab, ("inclusion", "a", ["b"]), ("denial", "a", "b")))
        verdict = adc_nonempty(adc)
        assert verdict.nonempty
        assert verdict.stats["algorithm"] == ALGORITHM_KEYFREE
        assert _prefix_ok(verdict, adc)

    def test_keyfree_alternating(self, ab):
        adc = Adc(cycle(ab, ["a", "b"]), constraints(ab, ("inclusion", "a", ["b"])))
        verdict = adc_nonempty_keyfree(adc)
        assert verdict.nonempty
        assert _prefix_ok(verdict, adc)
        lasso = verdict.recipe.as_lasso()
        if lasso is not None:
            assert satisfies(lasso, adc.constraints)

    def test_keyfree_rejects_keys(self, a_only):
        with pytest.raises(PreconditionError):
            adc_nonempty_keyfree(Adc(loop(a_only, ["a"]), constraints(a_only, ("key", "a"))))

    def test_unknown_algorithm(self, a_only):
        with pytest.raises(ValueError):
            adc_nonempty(Adc(loop(a_only, ["a"]), ConstraintSet(a_only)), "magic")

    def test_alphabets_must_agree(self, a_only, ab):
        with pytest.raises(AlphabetError):
            Adc(loop(a_only, ["a"]), ConstraintSet(ab))

    def test_attempt_budget(self, a_only):
        adc = Adc(loop(a_only, ["a"]), constraints(a_only, ("key", "a")))
        with pytest.raises(SearchBudgetExceeded):
            adc_nonempty(adc, options=SearchOptions(max_attempts=1))

    def test_stats_name_the_partition(self, a_only):
        adc = Adc(loop(a_only, ["a"]), constraints(a_only, ("key", "a")))
        stats = adc_nonempty(adc).stats
        assert stats["partition"] == "{a}:inf"
        assert stats["partitions"] >= 1

    @pytest.mark.parametrize("trial", range(15))
    def test_no_constraints_is_buchi_emptiness(self, ab, trial):
        automaton = gen_buchi(random.Random(trial), ab)
        verdict = adc_nonempty(Adc(automaton, ConstraintSet(ab)))
        assert verdict.nonempty == (buchi_nonempty(automaton) is not None)


class TestSearchAgreement:
    @pytest.mark.parametrize("trial", range(100))
    def test_general_matches_keyfree(self, ab, trial):
        rng = random.Random(1000 + trial)
        adc = Adc(gen_buchi(rng, ab), gen_constraints(rng, ab, keys=False))
        general = adc_nonempty(adc, ALGORITHM_GENERAL)
        keyfree = adc_nonempty(adc, ALGORITHM_KEYFREE)
        assert general.nonempty == keyfree.nonempty

    @pytest.mark.parametrize("trial", range(100))
    def test_bounded_models_are_found(self, ab, trial):
        """Whenever a small lasso model exists the search reports nonempty."""
        rng = random.Random(2000 + trial)
        adc = Adc(gen_buchi(rng, ab), gen_constraints(rng, ab))
        model = search_lasso_models(adc.automaton, adc.constraints, max_len=4, values=3)
        verdict = adc_nonempty(adc)
        if model is not None:
            assert verdict.nonempty
        if verdict.nonempty:
            assert _prefix_ok(verdict, adc)

    @pytest.mark.parametrize("trial", range(15))
    def test_more_constraints_never_help(self, ab, trial):
        rng = random.Random(3000 + trial)
        adc = Adc(gen_buchi(rng, ab), gen_constraints(rng, ab, max_count=2))
        stronger = Adc(adc.automaton, adc.constraints.with_constraint(gen_constraint(rng, ab)))
        if adc_nonempty(stronger).nonempty:
            assert adc_nonempty(adc).nonempty

    @pytest.mark.parametrize("trial", range(50))
    def test_pruning_keeps_the_verdict(self, ab, trial):
        rng = random.Random(4000 + trial)
        adc = Adc(gen_buchi(rng, ab), gen_constraints(rng, ab))
        pruned = adc_nonempty(adc, ALGORITHM_GENERAL, SearchOptions(prune=True))
        exhaustive = adc_nonempty(adc, ALGORITHM_GENERAL, SearchOptions(prune=False))
        assert pruned.nonempty == exhaustive.nonempty
