"""
Problem files: JSON documents naming an alphabet, an automaton, constraints,
a formula, or a Presburger condition, depending on the mode.

Every symbol and state is referenced by name and interned on load. Errors
carry the JSON pointer of the offending value.
"""

import json
from dataclasses import dataclass
from typing import Optional

from src.automata.alphabet import Alphabet
from src.automata.systems import BuchiAutomaton, Nfa, TransitionSystem
from src.core.constants import (
    MODE_ADC, MODE_ADC_KEYFREE, MODE_LOCALLY_DIFFERENT, MODE_LTL, MODE_PRESBURGER, MODE_PROFILE_ADC, MODE_ZONAL,
    MODES, PROBLEMS_DIR,
)
from src.core.errors import DataWordsError, SchemaError
from src.data.constraints import ConstraintSet, constraint_to_json, constraints_from_json
from src.ltl.parser import parse
from src.presburger.formula import And, AtomKind, EPFormula, LinearAtom, Not, Or
from src.presburger.parikh import PresburgerAutomaton
from src.profile.profiles import ProfileAdc, ProfileAlphabet
from src.profile.zones import ZonalAlphabet
from src.utils.resource_path import resolve_problem

BUCHI_MODES = (MODE_ADC, MODE_ADC_KEYFREE, MODE_LOCALLY_DIFFERENT, MODE_PROFILE_ADC, MODE_ZONAL)


@dataclass
class Problem:
    mode: str
    alphabet: Alphabet
    automaton: Optional[object] = None
    constraints: Optional[ConstraintSet] = None
    formula: Optional[object] = None
    presburger: Optional[PresburgerAutomaton] = None
    document: Optional[dict] = None

    def profile_adc(self):
        return ProfileAdc(self.automaton, self.constraints)


def _names(document, key, pointer):
    names = document.get(key)
    if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
        raise SchemaError(f"{key} must be an array of strings", f"{pointer}/{key}")
    return names


def _states(document, pointer):
    states = document.get("states")
    if isinstance(states, int) and not isinstance(states, bool) and states >= 0:
        return {str(i): i for i in range(states)}, states
    if isinstance(states, list) and all(isinstance(s, str) for s in states):
        if len(set(states)) != len(states):
            raise SchemaError("duplicate state name", f"{pointer}/states")
        return {name: i for i, name in enumerate(states)}, len(states)
    raise SchemaError("states must be a count or an array of names", f"{pointer}/states")


def _state(table, value, where):
    key = str(value) if isinstance(value, int) and not isinstance(value, bool) else value
    if key not in table:
        raise SchemaError(f"unknown state {value!r}", where)
    return table[key]


def automaton_from_json(alphabet, document, pointer="/automaton", buchi=True):
    if not isinstance(document, dict):
        raise SchemaError("automaton must be an object", pointer)
    table, count = _states(document, pointer)
    transitions = []
    raw = document.get("transitions", [])
    if not isinstance(raw, list):
        raise SchemaError("transitions must be an array", f"{pointer}/transitions")
    for i, item in enumerate(raw):
        where = f"{pointer}/transitions/{i}"
        if not (isinstance(item, list) and len(item) == 3):
            raise SchemaError("transition must be [from, symbol, to]", where)
        source, symbol, target = item
        if symbol not in alphabet:
            raise SchemaError(f"unknown symbol {symbol!r}", f"{where}/1")
        transitions.append((_state(table, source, f"{where}/0"), alphabet.symbol(symbol), _state(table, target, f"{where}/2")))
    initial = _state(table, document.get("initial", 0), f"{pointer}/initial")
    key = "buchiFinals" if buchi and "buchiFinals" in document else "finals"
    finals = document.get(key, [])
    if not isinstance(finals, list):
        raise SchemaError("final states must be an array", f"{pointer}/{key}")
    final = frozenset(_state(table, f, f"{pointer}/{key}/{i}") for i, f in enumerate(finals))
    ts = TransitionSystem(alphabet, count, frozenset(transitions))
    return BuchiAutomaton(ts, initial, final) if buchi else Nfa(ts, initial, final)


def automaton_to_json(automaton):
    alphabet = automaton.alphabet
    finals = automaton.final if isinstance(automaton, BuchiAutomaton) else automaton.finals
    return {
        "states": automaton.ts.state_count,
        "initial": automaton.initial,
        "buchiFinals" if isinstance(automaton, BuchiAutomaton) else "finals": sorted(finals),
        "transitions": [[p, alphabet.name(a), q] for p, a, q in automaton.ts.sorted_transitions],
    }


def _variables(alphabet, bound):
    table = {name: i for i, name in enumerate(alphabet.names)}
    for j, name in enumerate(bound):
        if name in table:
            raise SchemaError(f"bound variable {name!r} clashes with a letter", "/presburger/bound")
        table[name] = len(alphabet) + j
    return table


def matrix_from_json(table, document, pointer):
    if not isinstance(document, dict):
        raise SchemaError("formula node must be an object", pointer)
    if "and" in document or "or" in document:
        key = "and" if "and" in document else "or"
        items = document[key]
        if not isinstance(items, list):
            raise SchemaError(f"{key} needs an array", f"{pointer}/{key}")
        parts = tuple(matrix_from_json(table, item, f"{pointer}/{key}/{i}") for i, item in enumerate(items))
        return And(parts) if key == "and" else Or(parts)
    if "not" in document:
        return Not(matrix_from_json(table, document["not"], f"{pointer}/not"))
    try:
        kind = AtomKind(document.get("atom"))
    except ValueError:
        raise SchemaError(f"unknown atom kind {document.get('atom')!r}", f"{pointer}/atom") from None

    def variables(key):
        names = document.get(key, [])
        if not isinstance(names, list):
            raise SchemaError(f"{key} must be an array", f"{pointer}/{key}")
        for i, name in enumerate(names):
            if name not in table:
                raise SchemaError(f"unknown variable {name!r}", f"{pointer}/{key}/{i}")
        return tuple(table[name] for name in names)

    try:
        return LinearAtom(kind, variables("lhs"), variables("rhs"), document.get("const", 0))
    except DataWordsError as error:
        raise SchemaError(str(error), pointer) from None


def matrix_to_json(names, matrix):
    if isinstance(matrix, LinearAtom):
        node = {"atom": matrix.kind.value, "lhs": [names[v] for v in matrix.lhs]}
        if matrix.rhs:
            node["rhs"] = [names[v] for v in matrix.rhs]
        if matrix.const:
            node["const"] = matrix.const
        return node
    if isinstance(matrix, Not):
        return {"not": matrix_to_json(names, matrix.item)}
    key = "and" if isinstance(matrix, And) else "or"
    return {key: [matrix_to_json(names, item) for item in matrix.items]}


def _presburger(alphabet, document):
    block = document.get("presburger")
    if not isinstance(block, dict):
        raise SchemaError("presburger mode needs a presburger object", "/presburger")
    bound = _names(block, "bound", "/presburger") if "bound" in block else []
    table = _variables(alphabet, bound)
    matrix = matrix_from_json(table, block.get("formula", {"and": []}), "/presburger/formula")
    formula = EPFormula(len(alphabet), len(bound), matrix, tuple(bound))
    nfa = automaton_from_json(alphabet, document.get("automaton"), buchi=False)
    return PresburgerAutomaton(nfa, formula)


def _automaton_alphabet(mode, alphabet):
    if mode == MODE_PROFILE_ADC:
        return ProfileAlphabet(alphabet).alphabet
    if mode == MODE_ZONAL:
        return ZonalAlphabet(alphabet).alphabet
    return alphabet


def problem_from_json(document, mode=None):
    if not isinstance(document, dict):
        raise SchemaError("problem must be a JSON object")
    mode = mode or document.get("mode")
    if mode is None:
        mode = MODE_LTL if "formula" in document else MODE_ADC
    if mode not in MODES:
        raise SchemaError(f"unknown mode {mode!r}", "/mode")
    if mode == MODE_LTL:
        text = document.get("formula")
        if not isinstance(text, str):
            raise SchemaError("ltl mode needs a formula string", "/formula")
        formula = parse(text)
        alphabet = Alphabet(_names(document, "alphabet", "")) if "alphabet" in document else None
        return Problem(mode, alphabet, formula=formula, document=document)
    try:
        alphabet = Alphabet(_names(document, "alphabet", ""))
    except DataWordsError as error:
        raise SchemaError(str(error), "/alphabet") from None
    if mode == MODE_PRESBURGER:
        return Problem(mode, alphabet, presburger=_presburger(alphabet, document), document=document)
    if "automaton" not in document:
        raise SchemaError(f"{mode} mode needs an automaton", "/automaton")
    letters = _automaton_alphabet(mode, alphabet)
    automaton = automaton_from_json(letters, document["automaton"])
    constraint_alphabet = letters if mode == MODE_ZONAL else alphabet
    constraints = constraints_from_json(constraint_alphabet, document.get("constraints"))
    return Problem(mode, alphabet, automaton, constraints, document=document)


def load_problem(path, mode=None):
    """Read and validate a problem file; JSON and schema errors become SchemaError.

    A bare name such as ``weak_unsat`` falls back to the bundled problems directory.
    """
    try:
        with open(resolve_problem(path, PROBLEMS_DIR), "r", encoding="utf-8") as handle:
            document = json.load(handle)
    except json.JSONDecodeError as error:
        raise SchemaError(f"invalid JSON: {error.msg} (line {error.lineno})") from None
    return problem_from_json(document, mode)


def problem_to_json(mode, alphabet, automaton=None, constraints=None, formula_text=None):
    document = {"mode": mode}
    if alphabet is not None:
        document["alphabet"] = list(alphabet.names)
    if automaton is not None:
        document["automaton"] = automaton_to_json(automaton)
    if constraints is not None:
        document["constraints"] = [constraint_to_json(c, constraints.alphabet) for c in constraints]
    if formula_text is not None:
        document["formula"] = formula_text
    return document
