"""Tests for profile words, zones, zonal translation, local rearrangement and the profile pipeline."""
from __future__ import annotations

import random

import pytest

from src.automata.alphabet import Alphabet
from src.automata.emptiness import buchi_accepts_lasso
from src.core.errors import AlphabetError, ConstraintError, PreconditionError, WitnessError
from src.data.constraints import ConstraintSet, Denial, Inclusion, Key, satisfies
from src.data.words import FiniteDataWord, LassoDataWord, values_of
from src.profile.local import locally_different_nonempty
from src.profile.pipeline import BRANCH_FINITE, BRANCH_INFINITE, profile_adc_nonempty, zonal_recipe_word
from src.profile.profiles import (
    ProfileAdc, ProfileAlphabet, ProfileLetter, profile_accepts_prefix, profile_automaton, profile_of,
    universal_profile_automaton,
)
from src.profile.rearrange import is_locally_different, rearrange_locally_different, rearrange_values
from src.profile.translate import StateProfileAdc, state_constraint_reduction, translate_constraints_zonal
from src.profile.zonal_automaton import zonal_automaton
from src.profile.zones import (
    SetLetter, Zone, ZonalAlphabet, ZonalLasso, ZonalWord, is_well_formed, zonal_of, zonal_to_data_word, zones_of,
)
from tests.generators import gen_constraints, gen_data_word, gen_local_input
from tests.helpers import constraints, cycle, loop


# ======================== Helpers ========================

def _letters(base, *triples):
    return tuple(ProfileLetter(base.symbol(a), left, right) for a, left, right in triples)


def _all_same(base):
    return profile_automaton(base, lambda letter, first: letter.right == "=" and (first or letter.left == "="))


def _all_diff(base):
    return profile_automaton(base, lambda letter, first: letter.right == "!" and (first or letter.left == "!"))


def _set_letter_word(word, zonal):
    """Data word over the zonal alphabet keeping only the set letters of ``word``'s zonal form."""
    items = zonal_of(word).items
    entries = tuple((zonal.set_symbol(item.labels), item.value) for item in items if isinstance(item, SetLetter))
    return FiniteDataWord(zonal.alphabet, entries)


def _once_per_zone(word, once):
    for zone in zones_of(word):
        labels = [a for a, _ in word.entries[zone.start - 1:zone.end]]
        if any(labels.count(a) > 1 for a in once):
            return False
    return True


# ======================== Profiles ========================

class TestProfiles:
    def test_finite_profile(self, ab):
        word = FiniteDataWord.of(ab, [("a", 5), ("b", 5), ("a", 7)])
        assert profile_of(word) == _letters(ab, ("a", "*", "="), ("b", "=", "!"), ("a", "!", "*"))

    def test_constant_lasso(self, a_only):
        lasso = profile_of(LassoDataWord.of(a_only, [], [("a", 1)]))
        assert lasso.prefix == _letters(a_only, ("a", "*", "="))
        assert lasso.cycle == _letters(a_only, ("a", "=", "="))

    def test_alternating_lasso(self, a_only):
        lasso = profile_of(LassoDataWord.of(a_only, [], [("a", 1), ("a", 2)]))
        assert lasso.prefix == _letters(a_only, ("a", "*", "!"), ("a", "!", "!"))
        assert lasso.cycle == _letters(a_only, ("a", "!", "!"), ("a", "!", "!"))

    def test_alphabet_order(self, a_only):
        profiles = ProfileAlphabet(a_only)
        assert profiles.alphabet.names[:3] == ("a:**", "a:*=", "a:*!")
        assert profiles.index(0, "*", "=") == 1

    def test_unknown_flag(self):
        with pytest.raises(AlphabetError):
            ProfileLetter(0, "?", "=")

    def test_profile_automaton_never_ends_a_word(self, a_only):
        automaton = universal_profile_automaton(a_only)
        star_right = ProfileAlphabet(a_only).index(0, "*", "*")
        assert not automaton.ts.step({0}, star_right)

    def test_prefix_acceptance(self, a_only):
        same = _all_same(a_only)
        assert profile_accepts_prefix(same, FiniteDataWord.of(a_only, [("a", 1), ("a", 1)]))
        assert not profile_accepts_prefix(same, FiniteDataWord.of(a_only, [("a", 1), ("a", 2)]))
        assert profile_accepts_prefix(universal_profile_automaton(a_only), FiniteDataWord.of(a_only, [("a", 3)]))

    def test_profile_adc_alphabet(self, a_only, ab):
        with pytest.raises(AlphabetError):
            ProfileAdc(universal_profile_automaton(a_only), ConstraintSet(ab))


# ======================== Zones ========================

class TestZones:
    def test_finite_zones(self, ab):
        word = FiniteDataWord.of(ab, [("a", 1), ("b", 1), ("a", 2)])
        assert zones_of(word) == (Zone(1, 2, frozenset([0, 1]), 1), Zone(3, 3, frozenset([0]), 2))

    def test_lasso_with_one_value_in_the_cycle(self, ab):
        layout = zones_of(LassoDataWord.of(ab, [("b", 3)], [("a", 1)]))
        assert layout.head == (Zone(1, 1, frozenset([1]), 3), Zone(2, None, frozenset([0]), 1))
        assert layout.cycle == ()
        assert layout.head[-1].infinite

    def test_lasso_with_changing_values(self, ab):
        layout = zones_of(LassoDataWord.of(ab, [], [("a", 1), ("b", 2)]))
        assert layout.head == (Zone(1, 1, frozenset([0]), 1),)
        assert layout.cycle == (Zone(2, 2, frozenset([1]), 2), Zone(3, 3, frozenset([0]), 1))

    def test_zonal_word(self, ab):
        word = FiniteDataWord.of(ab, [("a", 1), ("b", 1), ("a", 2)])
        zonal = zonal_of(word)
        assert zonal == ZonalWord((SetLetter(frozenset([0, 1]), 1), 0, 1, SetLetter(frozenset([0]), 2), 0))
        assert is_well_formed(zonal)
        assert zonal_to_data_word(zonal, ab) == word

    def test_zonal_lasso_inverse(self, ab):
        word = LassoDataWord.of(ab, [("b", 3)], [("a", 1)])
        zonal = zonal_of(word)
        assert zonal == ZonalLasso((SetLetter(frozenset([1]), 3), 1, SetLetter(frozenset([0]), 1)), (0,))
        assert is_well_formed(zonal)
        assert zonal_to_data_word(zonal, ab) == word

    def test_ill_formed(self):
        a_set = SetLetter(frozenset([0]), 1)
        assert not is_well_formed(ZonalWord((SetLetter(frozenset([0, 1]), 1), 0)))
        assert not is_well_formed(ZonalWord((0, a_set, 0)))
        assert not is_well_formed(ZonalWord((a_set, 0, a_set, 0)))

    def test_must_start_with_set_letter(self, ab):
        with pytest.raises(WitnessError):
            zonal_to_data_word(ZonalWord((0,)), ab)

    def test_random_words_round_trip(self, ab, rng):
        for _ in range(500):
            word = gen_data_word(rng, ab)
            zonal = zonal_of(word)
            assert is_well_formed(zonal)
            assert zonal_to_data_word(zonal, ab) == word


# ======================== Zonal translation ========================

class TestZonalTranslation:
    def test_alphabet_layout(self, ab):
        zonal = ZonalAlphabet(ab)
        assert zonal.alphabet.names == ("a", "b", "{a}", "{b}", "{a,b}")
        assert zonal.set_symbols == {2, 3, 4}

    def test_key(self, ab):
        translated, once = translate_constraints_zonal(constraints(ab, ("key", "a")))
        assert set(translated) == {Key(2), Key(4), Denial(2, 4)}
        assert once == {0}

    def test_inclusion(self, ab):
        translated, once = translate_constraints_zonal(constraints(ab, ("inclusion", "a", ["b"])))
        assert set(translated) == {Inclusion(2, {3, 4}), Inclusion(4, {3, 4})}
        assert not once

    def test_denial(self, ab):
        translated, _ = translate_constraints_zonal(constraints(ab, ("denial", "a", "b")))
        assert set(translated) == {Denial(2, 3), Denial(2, 4), Denial(3, 4), Denial(4, 4)}

    @pytest.mark.parametrize("trial", range(500))
    def test_set_letters_carry_the_constraints(self, ab, trial):
        """A word satisfies the constraints iff its zone values satisfy the translation, keys once per zone."""
        rng = random.Random(trial)
        word = gen_data_word(rng, ab, max_len=6)
        cs = gen_constraints(rng, ab)
        translated, once = translate_constraints_zonal(cs)
        zonal_side = satisfies(_set_letter_word(word, ZonalAlphabet(ab)), translated) and _once_per_zone(word, once)
        assert satisfies(word, cs) == zonal_side


class TestStateReduction:
    def test_key_on_a_state(self, ab):
        states = Alphabet(["s0", "s1"])
        adc = StateProfileAdc(universal_profile_automaton(ab), ab, ConstraintSet(states, [Key(1)]))
        reduced = state_constraint_reduction(adc)
        assert reduced.base.names == ("s0/a", "s0/b", "s1/a", "s1/b")
        assert set(reduced.constraints) == {Key(2), Key(3), Denial(2, 3)}

    def test_positions_take_the_entered_state(self, ab):
        states = Alphabet(["s0", "s1"])
        adc = StateProfileAdc(universal_profile_automaton(ab), ab, ConstraintSet(states))
        reduced = state_constraint_reduction(adc)
        profiles = reduced.profiles
        # every transition of the universal profile automaton enters state 1
        assert {profiles.letter(a).symbol for _, a, _ in reduced.automaton.ts.transitions} == {2, 3}

    def test_state_count_must_match(self, ab):
        with pytest.raises(ConstraintError):
            StateProfileAdc(universal_profile_automaton(ab), ab, ConstraintSet(Alphabet(["only"])))


# ======================== Rearrangement ========================

class TestRearrange:
    def test_greedy_arrangement(self):
        assert rearrange_values([0] * 5, [1, 1, 2, 3, 4]) == [1, 2, 1, 3, 4]

    def test_is_locally_different(self):
        assert is_locally_different([1, 2, None, 1])
        assert not is_locally_different([1, None, 1])

    def test_fixed_neighbours_block(self):
        with pytest.raises(WitnessError):
            rearrange_values([0, 0, 0], [1, 1, 2], fixed=[1])

    def test_too_few_values(self, a_only):
        word = FiniteDataWord.of(a_only, [("a", 1), ("a", 1), ("a", 2), ("a", 2), ("a", 3)])
        with pytest.raises(PreconditionError):
            rearrange_locally_different(word)

    @pytest.mark.parametrize("trial", range(200))
    def test_random_inputs(self, ab, trial):
        rng = random.Random(trial)
        labels, values = gen_local_input(rng, ab)
        word = FiniteDataWord(ab, tuple(zip(labels, values)))
        result = rearrange_locally_different(word)
        assert result.labels == word.labels
        assert is_locally_different(result.values)
        assert all(values_of(result, a) == values_of(word, a) for a in ab)


# ======================== Locally different words ========================

class TestLocallyDifferent:
    def test_key_on_a_loop(self):
        x = Alphabet(["x"])
        verdict = locally_different_nonempty(loop(x, ["x"]), constraints(x, ("key", "x")))
        assert verdict.nonempty
        values = verdict.recipe.concretize_word(8).values
        assert len(set(values)) == 8

    def test_missing_target(self):
        xy = Alphabet(["x", "y"])
        assert locally_different_nonempty(loop(xy, ["x"]), constraints(xy, ("inclusion", "x", ["y"]))).empty

    def test_alternating_letters(self):
        xy = Alphabet(["x", "y"])
        verdict = locally_different_nonempty(cycle(xy, ["x", "y"]), ConstraintSet(xy))
        assert verdict.nonempty
        assert is_locally_different(verdict.recipe.concretize_word(12).values)


# ======================== Zonal automaton ========================

class TestZonalAutomaton:
    def test_zones_of_one_letter(self, a_only):
        # zonal symbols: a = 0, {a} = 1
        automaton = zonal_automaton(universal_profile_automaton(a_only), a_only)
        assert buchi_accepts_lasso(automaton, (1, 0, 0), (1, 0))

    def test_once_per_zone(self, a_only):
        automaton = zonal_automaton(universal_profile_automaton(a_only), a_only, frozenset([0]))
        assert not buchi_accepts_lasso(automaton, (1, 0, 0), (1, 0))
        assert buchi_accepts_lasso(automaton, (), (1, 0))

    def test_zone_letters_cover_the_set(self, ab):
        # zonal symbols: a = 0, b = 1, {a,b} = 4
        automaton = zonal_automaton(universal_profile_automaton(ab), ab)
        assert buchi_accepts_lasso(automaton, (), (4, 0, 1))
        assert not buchi_accepts_lasso(automaton, (), (4, 0))
        assert buchi_accepts_lasso(automaton, (4,), (0, 1))
        assert not buchi_accepts_lasso(automaton, (4,), (0,))

    def test_profile_letters_are_simulated(self, a_only):
        """All-Same profiles allow one zone only."""
        automaton = zonal_automaton(_all_same(a_only), a_only)
        assert buchi_accepts_lasso(automaton, (1,), (0,))
        assert not buchi_accepts_lasso(automaton, (), (1, 0))


# ======================== Profile pipeline ========================

class TestProfileAdcNonempty:
    def test_universal(self, a_only):
        padc = ProfileAdc(universal_profile_automaton(a_only), ConstraintSet(a_only))
        verdict = profile_adc_nonempty(padc)
        assert verdict.nonempty
        assert verdict.stats["branch"] == BRANCH_FINITE
        word = zonal_recipe_word(verdict.recipe, 12, a_only)
        assert profile_accepts_prefix(padc.automaton, word)

    def test_constant_word_with_key(self, a_only):
        padc = ProfileAdc(_all_same(a_only), constraints(a_only, ("key", "a")))
        verdict = profile_adc_nonempty(padc)
        assert verdict.empty
        assert verdict.stats["branch"] is None

    def test_changing_values_with_key(self, a_only):
        padc = ProfileAdc(_all_diff(a_only), constraints(a_only, ("key", "a")))
        verdict = profile_adc_nonempty(padc)
        assert verdict.nonempty
        assert verdict.stats["branch"] == BRANCH_INFINITE
        word = zonal_recipe_word(verdict.recipe, 20, a_only)
        assert profile_accepts_prefix(padc.automaton, word)
        assert len(set(word.values)) == len(word)
