"""
Command line: ``check``, ``witness`` and ``translate`` over problem files.

Exit codes: 0 when the instance is non-empty (satisfiable), 1 when it is
empty, 2 for unreadable or invalid input.
"""

import argparse
import sys
import time

from src.adc.model import Adc, Verdict
from src.adc.search import adc_nonempty, adc_nonempty_keyfree
from src.adc.witness import FAIL, PASS, STRUCTURAL, verify_witness_prefix
from src.core.constants import (
    DEFAULT_UNROLL_FACTOR, EXIT_EMPTY, EXIT_INPUT_ERROR, EXIT_NONEMPTY, MODE_ADC, MODE_ADC_KEYFREE,
    MODE_LOCALLY_DIFFERENT, MODE_LTL, MODE_PRESBURGER, MODE_PROFILE_ADC, MODE_ZONAL, MODES,
)
from src.core.errors import DataWordsError, LtlSyntaxError, SchemaError
from src.core.options import SearchOptions
from src.data.constraints import ConstraintSet, Inclusion, check_constraints, describe
from src.data.words import word_to_json
from src.debug.logger import log_error, set_debug_mode
from src.ltl.normal_form import Fragment, fragment_of, normal_form
from src.ltl.parser import to_text
from src.ltl.sat import ltl_sat
from src.ltl.semantics import evaluate
from src.ltl.translate import formula_alphabet, plain_automaton, translate_full, translate_strong, translate_weak
from src.presburger.parikh import parikh_solve
from src.profile.local import locally_different_nonempty
from src.profile.pipeline import profile_adc_nonempty, zonal_nonempty, zonal_recipe_word
from src.profile.profiles import profile_accepts_prefix
from src.profile.translate import translate_constraints_zonal
from src.profile.zonal_automaton import zonal_automaton
from src.profile.zones import ZonalAlphabet
from src.cli.report import build_report, error_report, recipe_to_json, render_json, render_text
from src.cli.schema import load_problem, problem_to_json

LOGGER = "cli"

TARGET_ADC = "adc"
TARGET_ZONAL = "zonal"
TARGET_NORMAL_FORM = "normalform"
TARGETS = (TARGET_ADC, TARGET_ZONAL, TARGET_NORMAL_FORM)


class InputError(DataWordsError):
    """Problem file incompatible with the requested command."""


def options_from(args):
    return SearchOptions(max_support=getattr(args, "max_support", None))


def solve(problem, options):
    mode = problem.mode
    if mode == MODE_LTL:
        return ltl_sat(problem.formula, problem.alphabet, options)
    if mode == MODE_PRESBURGER:
        solution = parikh_solve(problem.presburger, options)
        stats = {"supports": 0 if solution is None else solution.supports_tried}
        return Verdict(solution is not None, solution, stats)
    if mode == MODE_PROFILE_ADC:
        return profile_adc_nonempty(problem.profile_adc(), options)
    if mode == MODE_ZONAL:
        return zonal_nonempty(problem.automaton, problem.constraints, frozenset(), ZonalAlphabet(problem.alphabet), options)
    if mode == MODE_LOCALLY_DIFFERENT:
        return locally_different_nonempty(problem.automaton, problem.constraints, options)
    adc = Adc(problem.automaton, problem.constraints)
    if mode == MODE_ADC_KEYFREE:
        return adc_nonempty_keyfree(adc, options)
    return adc_nonempty(adc, options=options)


def default_unroll(recipe):
    return DEFAULT_UNROLL_FACTOR * (len(recipe.u) + len(recipe.v))


def _constraint_checks(word, constraints):
    """Per-constraint outcomes on a finite prefix; an inclusion missing on the prefix may still
    be met later in the word, so it is reported as structural."""
    checks = []
    for r in check_constraints(word, constraints):
        status = PASS if r.holds else (STRUCTURAL if isinstance(r.constraint, Inclusion) else FAIL)
        checks.append({"name": describe(r.constraint, constraints.alphabet), "status": status, "positions": list(r.positions or ())})
    return checks


def witness_sections(problem, verdict, unroll=None):
    """(recipe summary, prefix, checks, extra fields) for a non-empty verdict."""
    mode = problem.mode
    recipe = verdict.recipe
    if mode == MODE_PRESBURGER:
        names = problem.alphabet.names
        bound = problem.presburger.formula.bound_names or tuple(f"z{i}" for i in range(len(recipe.bound_values)))
        extra = {
            "word": [names[a] for a in recipe.word],
            "counts": {names[a]: c for a, c in enumerate(recipe.counts)},
            "bound": dict(zip(bound, recipe.bound_values)),
        }
        return None, None, None, extra
    if mode == MODE_LTL:
        witness = recipe
        extra = {"formula": to_text(problem.formula)}
        checks = None
        if witness.lasso is not None:
            extra["lasso"] = word_to_json(witness.lasso)
            holds = evaluate(witness.lasso, 1, problem.formula)
            checks = {"passed": holds, "checks": [{"name": "formula", "status": PASS if holds else FAIL}]}
            n = unroll or DEFAULT_UNROLL_FACTOR * (len(witness.lasso.prefix) + len(witness.lasso.cycle))
        else:
            n = unroll or default_unroll(witness.recipe)
        summary = recipe_to_json(witness.recipe) if witness.recipe is not None else None
        return summary, word_to_json(witness.prefix(n)), checks, extra
    n = unroll or default_unroll(recipe)
    summary = recipe_to_json(recipe)
    if mode == MODE_PROFILE_ADC:
        padc = problem.profile_adc()
        word = zonal_recipe_word(recipe, n, padc.base)
        checks = _constraint_checks(word, padc.constraints)
        replay = profile_accepts_prefix(padc.automaton, word)
        checks.insert(0, {"name": "profile run", "status": PASS if replay else FAIL, "positions": []})
        passed = all(c["status"] != FAIL for c in checks)
        return summary, word_to_json(word), {"passed": passed, "checks": checks}, None
    report = verify_witness_prefix(recipe, n, Adc(problem.automaton, problem.constraints))
    if mode == MODE_ZONAL:
        names = recipe.extended.alphabet.name
        prefix = [[names(a), value] for a, value in recipe.concretize(n)]
        return summary, prefix, report.to_json(), None
    return summary, word_to_json(report.word), report.to_json(), None


def cmd_check(path, args):
    problem = load_problem(path, args.mode)
    started = time.perf_counter()
    verdict = solve(problem, options_from(args))
    elapsed = (time.perf_counter() - started) * 1000
    summary = None
    if verdict.nonempty and problem.mode not in (MODE_PRESBURGER, MODE_LTL):
        summary = recipe_to_json(verdict.recipe)
    report = build_report(problem.mode, verdict, recipe=summary, timing_ms=elapsed)
    return (EXIT_NONEMPTY if verdict.nonempty else EXIT_EMPTY), report


def cmd_witness(path, args):
    problem = load_problem(path, args.mode)
    started = time.perf_counter()
    verdict = solve(problem, options_from(args))
    if not verdict.nonempty:
        report = build_report(problem.mode, verdict, extra={"error": "instance is empty, no witness exists"})
        return EXIT_EMPTY, report
    summary, prefix, checks, extra = witness_sections(problem, verdict, args.unroll)
    elapsed = (time.perf_counter() - started) * 1000
    report = build_report(problem.mode, verdict, summary, prefix, checks, extra, timing_ms=elapsed)
    return EXIT_NONEMPTY, report


def translate_problem(problem, target):
    """Problem document for ``target`` derived from ``problem``."""
    if target == TARGET_NORMAL_FORM:
        if problem.mode != MODE_LTL:
            raise InputError("normal form needs an ltl problem")
        return problem_to_json(MODE_LTL, problem.alphabet, formula_text=to_text(normal_form(problem.formula)))
    if target == TARGET_ADC:
        if problem.mode != MODE_LTL:
            raise InputError("translation to an adc needs an ltl problem")
        formula = problem.formula
        letters = formula_alphabet(formula, problem.alphabet)
        fragment = fragment_of(formula)
        if fragment is Fragment.STRONG_WITH_PROFILES:
            padc = translate_full(formula, letters)
            return problem_to_json(MODE_PROFILE_ADC, padc.base, padc.automaton, padc.constraints)
        if fragment is Fragment.PLAIN:
            return problem_to_json(MODE_ADC, letters, plain_automaton(formula, letters), ConstraintSet(letters))
        if fragment is Fragment.WEAK_ONLY:
            adc = translate_weak(formula, letters)
            return problem_to_json(MODE_ADC_KEYFREE, adc.alphabet, adc.automaton, adc.constraints)
        adc = translate_strong(formula, letters)
        return problem_to_json(MODE_ADC, adc.alphabet, adc.automaton, adc.constraints)
    if problem.mode != MODE_PROFILE_ADC:
        raise InputError("translation to zonal words needs a profile-adc problem")
    constraints, once = translate_constraints_zonal(problem.constraints)
    automaton = zonal_automaton(problem.automaton, problem.alphabet, once)
    return problem_to_json(MODE_ZONAL, problem.alphabet, automaton, constraints)


def cmd_translate(path, args):
    problem = load_problem(path, args.mode)
    return EXIT_NONEMPTY, translate_problem(problem, args.target)


def build_parser():
    parser = argparse.ArgumentParser(prog="datawords", description="Decide emptiness of data-word automata and data LTL.")
    parser.add_argument("--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, helptext in (("check", "decide the instance"), ("witness", "decide and print a witness prefix"), ("translate", "emit a translated problem file")):
        command = sub.add_parser(name, help=helptext)
        command.add_argument("path", help="problem file (JSON)")
        command.add_argument("--mode", choices=MODES, default=None, help="override the mode given in the file")
        command.add_argument("--max-support", type=int, default=None, dest="max_support", help="support nodes per Presburger query")
        command.add_argument("--seed", type=int, default=None, help="reserved for the random test generators")
        output = command.add_mutually_exclusive_group()
        output.add_argument("--json", dest="as_json", action="store_true", default=True)
        output.add_argument("--text", dest="as_json", action="store_false")
        if name == "witness":
            command.add_argument("--unroll", type=int, default=None, help="prefix length (default 3*(|u|+|v|))")
        if name == "translate":
            command.add_argument("--target", choices=TARGETS, required=True)
            command.add_argument("--output", default=None, help="write the translated file here instead of stdout")
    return parser


COMMANDS = {"check": cmd_check, "witness": cmd_witness, "translate": cmd_translate}


def run(argv=None, out=None):
    """Parse ``argv``, run the command and print its report; returns the exit code."""
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    set_debug_mode(args.verbose)
    try:
        code, report = COMMANDS[args.command](args.path, args)
    except SchemaError as error:
        log_error("invalid problem file", error, name=LOGGER)
        code, report = EXIT_INPUT_ERROR, error_report(error.reason, error.pointer)
    except LtlSyntaxError as error:
        log_error("invalid formula", error, name=LOGGER)
        code, report = EXIT_INPUT_ERROR, error_report(str(error), "/formula")
    except (OSError, DataWordsError) as error:
        log_error(f"{args.command} failed", error, name=LOGGER)
        code, report = EXIT_INPUT_ERROR, error_report(str(error))
    if args.command == "translate" and code == EXIT_NONEMPTY and args.output:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(render_json(report) + "\n")
        return code
    out.write((render_json(report) if args.as_json or args.command == "translate" else render_text(report)) + "\n")
    return code


def main(argv=None):
    sys.exit(run(argv))
