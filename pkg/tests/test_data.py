"""Tests for data words, data constraints, the bounded model search and clause encoding."""
from __future__ import annotations

import random

import pytest

from src.core.errors import AlphabetError, ConstraintError, SchemaError
from src.data.constraints import (
    ConstraintSet, Denial, Inclusion, Key, check_constraints, constraints_from_json, describe, s_zero_of, satisfies,
)
from src.data.fo2 import CLAUSE_INCLUSION, CLAUSE_KEY, Fo2Clause, LetterPattern, encode_fo2_clauses, extended_name
from src.data.search import label_lassos, search_lasso_models, value_sequences
from src.data.words import (
    FiniteDataWord, LassoDataWord, class_sets, project, values_of, word_from_json, word_to_json,
)
from src.utils.subsets import nonempty_subsets
from tests.generators import gen_constraints, gen_lasso
from tests.helpers import constraints, cycle, loop


# ======================== Words ========================

class TestDataWords:
    def test_values_of(self, ab):
        word = FiniteDataWord.of(ab, [("a", 1), ("b", 2), ("a", 3)])
        assert values_of(word, 0) == {1, 3}
        assert values_of(word, 1) == {2}

    def test_class_sets(self, ab):
        word = FiniteDataWord.of(ab, [("a", 1), ("b", 1), ("a", 2)])
        classes = class_sets(word)
        assert classes[frozenset([0, 1])] == {1}
        assert classes[frozenset([0])] == {2}
        assert classes[frozenset([1])] == frozenset()

    def test_class_sets_partition_the_values(self, abc, rng):
        for _ in range(500):
            word = gen_lasso(rng, abc)
            classes = class_sets(word)
            union = set().union(*classes.values())
            assert union == {value for _, value in word.all_entries()}
            assert sum(len(values) for values in classes.values()) == len(union)

    def test_lasso_positions(self, ab):
        word = LassoDataWord.of(ab, [("a", 1)], [("b", 2), ("a", 3)])
        assert word.entry(3) == (1, 2)
        assert word.canonical(4) == 2
        assert project(word) == (0, 1, 0)
        assert word.unroll(2).labels == (0, 1, 0, 1, 0)

    def test_empty_cycle_rejected(self, ab):
        with pytest.raises(ValueError):
            LassoDataWord(ab, (), ())

    def test_symbol_outside_alphabet(self, ab):
        with pytest.raises(AlphabetError):
            FiniteDataWord(ab, ((4, 1),))

    def test_json_shapes(self, ab):
        lasso = LassoDataWord.of(ab, [], [("a", 1)])
        assert word_to_json(lasso) == {"prefix": [], "cycle": [["a", 1]]}
        assert word_from_json(ab, [["b", 7]]) == FiniteDataWord.of(ab, [("b", 7)])

    def test_json_unknown_label(self, ab):
        with pytest.raises(SchemaError) as error:
            word_from_json(ab, [["a", 1], ["z", 2]])
        assert error.value.pointer == "/word/1/0"

    def test_json_missing_cycle(self, ab):
        with pytest.raises(SchemaError) as error:
            word_from_json(ab, {"prefix": []})
        assert error.value.pointer == "/word/cycle"


# ======================== Constraints ========================

class TestConstraintSet:
    def test_denial_is_unordered(self):
        assert Denial(1, 0) == Denial(0, 1)
        assert Denial(1, 0).first == 0

    def test_duplicates_dropped(self, ab):
        assert len(ConstraintSet(ab, [Key(0), Key(0), Denial(1, 0), Denial(0, 1)])) == 2

    def test_unknown_symbol(self, ab):
        with pytest.raises(ConstraintError):
            ConstraintSet(ab, [Key(5)])

    def test_describe(self, ab):
        assert describe(Key(0), ab) == "V(a) -> a"
        assert describe(Inclusion(0, {0, 1}), ab) == "V(a) <= U{a,b}"

    def test_json_pointer(self, ab):
        with pytest.raises(SchemaError) as error:
            constraints_from_json(ab, [{"kind": "key", "symbol": "a"}, {"kind": "key", "symbol": "q"}])
        assert error.value.pointer == "/constraints/1/symbol"

    def test_json_unknown_kind(self, ab):
        with pytest.raises(SchemaError):
            constraints_from_json(ab, [{"kind": "fd"}])


class TestCheckConstraints:
    def test_key_holds(self, ab):
        word = FiniteDataWord.of(ab, [("a", 1), ("a", 2), ("b", 1)])
        assert satisfies(word, constraints(ab, ("key", "a")))

    def test_key_violation_positions(self, ab):
        word = FiniteDataWord.of(ab, [("a", 1), ("a", 1)])
        (result,) = check_constraints(word, constraints(ab, ("key", "a")))
        assert not result.holds and result.positions == (1, 2)

    def test_inclusion_violation_position(self, ab):
        word = FiniteDataWord.of(ab, [("b", 1), ("a", 1), ("a", 2)])
        (result,) = check_constraints(word, constraints(ab, ("inclusion", "a", ["b"])))
        assert result.positions == (3,)

    def test_lasso_inclusion_and_denial(self, ab):
        """Cycle (a,1)(b,1): every a-value is a b-value, so a and b share a value."""
        word = LassoDataWord.of(ab, [], [("a", 1), ("b", 1)])
        inclusion, denial = check_constraints(word, constraints(ab, ("inclusion", "a", ["b"]), ("denial", "a", "b")))
        assert inclusion.holds
        assert not denial.holds and denial.positions == (1, 2)

    def test_key_inside_cycle_fails(self, ab):
        word = LassoDataWord.of(ab, [("a", 1)], [("b", 2)])
        assert satisfies(word, constraints(ab, ("key", "a")))
        looping = LassoDataWord.of(ab, [], [("a", 1)])
        (result,) = check_constraints(looping, constraints(ab, ("key", "a")))
        assert not result.holds and result.positions == (1, 2)

    def test_self_denial(self, ab):
        word = FiniteDataWord.of(ab, [("b", 1), ("a", 2)])
        (result,) = check_constraints(word, constraints(ab, ("denial", "a", "a")))
        assert result.positions == (2, 2)

    def test_empty_inclusion_target(self, ab):
        word = FiniteDataWord.of(ab, [("b", 1)])
        assert satisfies(word, ConstraintSet(ab, [Inclusion(0, frozenset())]))
        assert not satisfies(FiniteDataWord.of(ab, [("a", 1)]), ConstraintSet(ab, [Inclusion(0, frozenset())]))

    @pytest.mark.parametrize("trial", range(40))
    def test_lasso_agrees_with_two_unrollings(self, ab, trial):
        """Two cycle copies already expose every key clash and every value set."""
        rng = random.Random(trial)
        word = gen_lasso(rng, ab)
        cs = gen_constraints(rng, ab)
        assert satisfies(word, cs) == satisfies(word.unroll(2), cs)


class TestForcedEmpty:
    def test_inclusion_without_target(self, ab):
        cs = constraints(ab, ("inclusion", "a", ["b"]))
        assert s_zero_of(cs) == {frozenset([0])}

    def test_denial_forces_pair(self, ab):
        cs = constraints(ab, ("denial", "a", "b"), ("key", "a"))
        assert s_zero_of(cs) == {frozenset([0, 1])}

    def test_restricted_symbols(self, abc):
        cs = constraints(abc, ("inclusion", "c", ["a"]))
        assert s_zero_of(cs, symbols=[0, 1]) == frozenset()

    def test_classes_of_satisfying_words_avoid_s_zero(self, ab, rng):
        for _ in range(30):
            word = gen_lasso(rng, ab)
            cs = gen_constraints(rng, ab)
            if not satisfies(word, cs):
                continue
            classes = class_sets(word)
            assert all(not classes[subset] for subset in s_zero_of(cs))


# ======================== Bounded search ========================

class TestBoundedSearch:
    def test_label_lassos(self):
        assert list(label_lassos(1, 2)) == [((), (0,)), ((), (0, 0)), ((0,), (0,))]

    def test_value_sequences_are_canonical(self):
        assert list(value_sequences(3, 2)) == [(1, 1, 1), (1, 1, 2), (1, 2, 1), (1, 2, 2)]

    def test_finds_shared_values(self, ab):
        automaton = cycle(ab, ["a", "b"])
        word = search_lasso_models(automaton, constraints(ab, ("inclusion", "a", ["b"])), max_len=4, values=2)
        assert word is not None
        assert satisfies(word, constraints(ab, ("inclusion", "a", ["b"])))

    def test_key_on_every_position(self, a_only):
        assert search_lasso_models(loop(a_only, ["a"]), constraints(a_only, ("key", "a")), max_len=4) is None

    def test_all_subsets_listed(self):
        assert len(nonempty_subsets(range(3))) == 7


# ======================== Clause encoding ========================

class TestClauseEncoding:
    def test_key_clause_splits_by_predicate(self, ab):
        extended, cs = encode_fo2_clauses(ab, 1, [Fo2Clause(CLAUSE_KEY, LetterPattern("a"))])
        a0, a1 = extended.symbol("a/0"), extended.symbol("a/1")
        assert set(cs) == {Key(a0), Key(a1), Denial(a0, a1)}

    def test_inclusion_clause(self, ab):
        clause = Fo2Clause(CLAUSE_INCLUSION, LetterPattern(signs=((0, True),)), LetterPattern("b"))
        extended, cs = encode_fo2_clauses(ab, 1, [clause])
        targets = extended.symbols(["b/0", "b/1"])
        assert set(cs) == {Inclusion(extended.symbol("a/1"), targets), Inclusion(extended.symbol("b/1"), targets)}

    def test_no_predicates_keeps_names(self, ab):
        extended, _ = encode_fo2_clauses(ab, 0, [])
        assert extended.names == ("a", "b")
        assert extended_name("a", (True, False)) == "a/10"

    def test_unknown_letter(self, ab):
        with pytest.raises(ConstraintError):
            encode_fo2_clauses(ab, 1, [Fo2Clause(CLAUSE_KEY, LetterPattern("q"))])

    def test_predicate_out_of_range(self, ab):
        with pytest.raises(ConstraintError):
            encode_fo2_clauses(ab, 1, [Fo2Clause(CLAUSE_KEY, LetterPattern(signs=((2, True),)))])

    def test_inclusion_needs_target(self, ab):
        with pytest.raises(ConstraintError):
            encode_fo2_clauses(ab, 0, [Fo2Clause(CLAUSE_INCLUSION, LetterPattern("a"))])
