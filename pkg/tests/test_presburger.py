"""Tests for existential Presburger formulas, integer feasibility and Parikh solving."""
from __future__ import annotations

import random
from types import SimpleNamespace

import pytest

from src.core.constants import ILP_BOUND_CAP
from src.core.errors import AlphabetError, FormulaError, SearchBudgetExceeded, SolverError, WitnessError
from src.presburger.formula import (
    FALSE, TRUE, And, AtomKind, EPFormula, LinearAtom, Not, Or, eq_const, eq_sum, eval_formula, geq_const,
    leq_const, leq_sum, make_row, to_dnf,
)
from src.presburger.ilp import integer_feasible, small_solution_bound
from src.presburger.parikh import (
    PresburgerAutomaton, brute_force_oracle, euler_walk, parikh_feasible, parikh_solve, parikh_vector,
    presburger_accepts, satisfying_bound_values,
)
from tests.generators import gen_alphabet, gen_presburger
from tests.helpers import a_star_b, nfa


# ======================== Helpers ========================

def _formula(matrix, free=2, bound=0):
    return EPFormula(free, bound, matrix)


def _rows(*atoms):
    return [row for atom in atoms for row in atom.rows()]


def _linprog_returning(status):
    result = SimpleNamespace(status=status, x=None, message="stopped")
    return lambda *args, **kwargs: result


# ======================== Formulas ========================

class TestFormula:
    def test_true_is_empty_conjunction(self):
        assert eval_formula(_formula(TRUE), (0, 0))

    def test_false_is_empty_disjunction(self):
        assert not eval_formula(_formula(FALSE), (3, 1))

    def test_equal_counts(self):
        """x_a = x_b holds at (1, 1)."""
        assert eval_formula(_formula(eq_sum([0], [1])), (1, 1))
        assert not eval_formula(_formula(eq_sum([0], [1])), (1, 2))

    def test_conjunction_fails(self):
        """x_a >= 2 and x_b <= 1 is false at (1, 0)."""
        assert not eval_formula(_formula(And((geq_const([0], 2), leq_const([1], 1)))), (1, 0))

    def test_repeated_variable_is_a_coefficient(self):
        # 2 * x_a <= x_b
        atom = leq_sum([0, 0], [1])
        assert atom.holds({0: 2, 1: 4})
        assert not atom.holds({0: 2, 1: 3})

    def test_bound_variable(self):
        # exists z: x_a = z + z  (x_a even)
        formula = EPFormula(1, 1, eq_sum([0], [1, 1]))
        assert eval_formula(formula, (4,), (2,))
        assert satisfying_bound_values(formula, (4,)) == (2,)
        assert satisfying_bound_values(formula, (3,)) is None

    def test_wrong_assignment_length(self):
        with pytest.raises(FormulaError):
            eval_formula(_formula(TRUE), (1,))

    def test_undeclared_variable(self):
        with pytest.raises(FormulaError):
            EPFormula(1, 0, eq_const([3], 1))

    def test_negative_constant(self):
        with pytest.raises(FormulaError):
            LinearAtom(AtomKind.SUM_LEQ_CONST, (0,), (), -1)

    def test_sum_comparison_takes_no_constant(self):
        with pytest.raises(FormulaError):
            LinearAtom(AtomKind.SUM_EQ_SUM, (0,), (1,), 2)

    def test_kind_from_wire_name(self):
        assert LinearAtom("SumGeqConst", (0,), (), 1).kind is AtomKind.SUM_GEQ_CONST


class TestDnf:
    def test_negated_equality_splits(self):
        branches = to_dnf(Not(eq_const([0], 1)))
        assert len(branches) == 2
        senses = sorted(branch[0].sense for branch in branches)
        assert senses == ["<=", ">="]

    def test_and_of_ors_distributes(self):
        matrix = And((Or((geq_const([0], 1), geq_const([1], 1))), Or((leq_const([0], 0), leq_const([1], 0)))))
        assert len(to_dnf(matrix)) == 4

    def test_negated_and_becomes_or(self):
        branches = to_dnf(Not(And((geq_const([0], 1), geq_const([1], 1)))))
        assert len(branches) == 2

    def test_dnf_agrees_with_evaluation(self):
        matrix = Not(Or((eq_sum([0], [1]), And((geq_const([0], 2), Not(leq_const([1], 0)))))))
        formula = _formula(matrix)
        for x in range(4):
            for y in range(4):
                values = {0: x, 1: y}
                by_dnf = any(all(row.holds(values) for row in branch) for branch in formula.dnf())
                assert by_dnf == eval_formula(formula, (x, y))


# ======================== Integer feasibility ========================

class TestIntegerFeasible:
    def test_contradiction(self):
        assert integer_feasible(_rows(geq_const([0], 1), leq_const([0], 0)), 1) is None

    def test_sum_with_lower_bound(self):
        """x + y = 3 and x >= 2."""
        solution = integer_feasible(_rows(eq_const([0, 1], 3), geq_const([0], 2)), 2)
        x, y = solution
        assert x + y == 3 and x >= 2

    def test_chain_of_equalities_is_minimal(self):
        """x = y, y = z, z >= 5 gives x = y = z = 5."""
        rows = _rows(eq_sum([0], [1]), eq_sum([1], [2]), geq_const([2], 5))
        assert integer_feasible(rows, 3) == (5, 5, 5)

    def test_parity_has_no_solution(self):
        assert integer_feasible([make_row([(0, 2)], "==", 3)], 1) is None

    def test_empty_rows(self):
        assert integer_feasible([], 2) == (0, 0)

    def test_constant_row_checked(self):
        assert integer_feasible([make_row([], "<=", -1)], 1) is None

    def test_upper_bounds_respected(self):
        assert integer_feasible(_rows(geq_const([0], 3)), 1, upper=[2]) is None

    def test_small_solution_bound_is_capped(self):
        rows = _rows(*[geq_const([i], 9) for i in range(12)])
        assert small_solution_bound(rows, 12) <= ILP_BOUND_CAP
        assert small_solution_bound(_rows(geq_const([0], 1)), 1) >= 1

    @pytest.mark.parametrize("status, error", [(1, SearchBudgetExceeded), (3, SolverError), (4, SolverError)])
    def test_solver_failure_is_not_infeasibility(self, monkeypatch, status, error):
        monkeypatch.setattr("src.presburger.ilp.linprog", _linprog_returning(status))
        with pytest.raises(error):
            integer_feasible(_rows(eq_const([0, 1], 3), geq_const([0], 2)), 2)

    def test_infeasible_status_prunes_the_node(self, monkeypatch):
        monkeypatch.setattr("src.presburger.ilp.linprog", _linprog_returning(2))
        assert integer_feasible(_rows(eq_const([0, 1], 3), geq_const([0], 2)), 2) is None


# ======================== Parikh ========================

class TestParikh:
    def test_balanced_a_star_b(self, ab):
        """a*b with x_a = x_b gives the word ab."""
        pa = PresburgerAutomaton(a_star_b(ab), _formula(eq_sum([0], [1])))
        assert parikh_feasible(pa) == ab.word("a b")
        assert brute_force_oracle(pa, 4) == ab.word("a b")

    def test_two_bs_impossible(self, ab):
        pa = PresburgerAutomaton(a_star_b(ab), _formula(geq_const([1], 2)))
        assert parikh_feasible(pa) is None
        assert brute_force_oracle(pa, 6) is None

    def test_empty_language(self, ab):
        pa = PresburgerAutomaton(nfa(ab, 2, [(0, "a", 0)], finals=(1,)), _formula(TRUE))
        assert parikh_feasible(pa) is None
        assert brute_force_oracle(pa, 4) is None

    def test_oracle_at_length_zero(self, ab):
        accepting_start = PresburgerAutomaton(nfa(ab, 1, [(0, "a", 0)]), _formula(TRUE))
        assert brute_force_oracle(accepting_start, 0) == ()
        needs_an_a = PresburgerAutomaton(nfa(ab, 1, [(0, "a", 0)]), _formula(geq_const([0], 1)))
        assert brute_force_oracle(needs_an_a, 0) is None

    def test_solution_carries_bound_values(self, ab):
        # exists z: x_a = z + z and z >= 2
        formula = EPFormula(2, 1, And((eq_sum([0], [2, 2]), geq_const([2], 2))), ("z",))
        pa = PresburgerAutomaton(a_star_b(ab), formula)
        solution = parikh_solve(pa)
        assert solution.counts[0] == 2 * solution.bound_values[0]
        assert solution.bound_values[0] >= 2
        assert presburger_accepts(pa, solution.word)

    def test_counts_need_a_cycle(self, ab):
        # a loop between two states: only even numbers of a then one b
        automaton = nfa(ab, 3, [(0, "a", 1), (1, "a", 0), (0, "b", 2)], finals=(2,))
        pa = PresburgerAutomaton(automaton, _formula(geq_const([0], 3)))
        word = parikh_feasible(pa)
        assert parikh_vector(word, 2) == (4, 1)

    def test_alphabet_mismatch(self, ab):
        with pytest.raises(AlphabetError):
            PresburgerAutomaton(a_star_b(ab), EPFormula(3, 0, TRUE))

    def test_membership(self, ab):
        pa = PresburgerAutomaton(a_star_b(ab), _formula(eq_sum([0], [1])))
        assert presburger_accepts(pa, ab.word("a b"))
        assert not presburger_accepts(pa, ab.word("a a b"))
        assert not presburger_accepts(pa, ab.word("b"))

    def test_walk_that_does_not_replay(self, ab, monkeypatch):
        monkeypatch.setattr("src.presburger.parikh.euler_walk", lambda counts, start: ((start,), ()))
        pa = PresburgerAutomaton(a_star_b(ab), _formula(eq_sum([0], [1])))
        with pytest.raises(WitnessError):
            parikh_solve(pa)


class TestEulerWalk:
    def test_uses_every_edge(self):
        counts = {(0, 0, 0): 2, (0, 1, 1): 1}
        states, word = euler_walk(counts, 0)
        assert states[0] == 0 and states[-1] == 1
        assert sorted(word) == [0, 0, 1]

    def test_single_vertex(self):
        assert euler_walk({}, 0) == ((0,), ())


class TestOracleAgreement:
    @pytest.mark.parametrize("trial", range(200))
    def test_solver_agrees_with_brute_force(self, trial):
        rng = random.Random(trial)
        alphabet = gen_alphabet(rng, 2)
        pa = gen_presburger(rng, alphabet)
        found = parikh_feasible(pa)
        oracle = brute_force_oracle(pa, 8)
        if oracle is not None:
            assert found is not None
        if found is not None:
            assert presburger_accepts(pa, found)
