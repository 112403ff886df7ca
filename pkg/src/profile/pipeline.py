"""
Profile automata with data constraints, decided through zonal words.

The profile automaton and its constraints are moved onto zonal words (set
letters carry the data, base letters none), and the zonal automaton is
decided by the four-way partition search over set letters. Words with finitely
many zones are tried first: their tail avoids set letters altogether. Words
with infinitely many zones need some set letter infinitely often.
"""

from src.adc.model import Adc, Verdict
from src.adc.search import PartitionSearch, prefix_verifier
from src.automata.monitors import monitor_avoid, monitor_inf_often_any
from src.core.constants import DEFAULT_UNROLL_FACTOR
from src.core.options import DEFAULT_OPTIONS
from src.data.constraints import Inclusion, check_constraints
from src.data.words import FiniteDataWord
from src.debug.logger import log
from src.profile.profiles import profile_accepts_prefix
from src.profile.translate import translate_constraints_zonal
from src.profile.zonal_automaton import zonal_automaton
from src.profile.zones import ZonalAlphabet

LOGGER = "profile.pipeline"

BRANCH_FINITE = "finite-zones"
BRANCH_INFINITE = "infinite-zones"


def _avoid_sets(extended):
    return [monitor_avoid(extended.alphabet, extended.data_derived)]


def _repeat_sets(extended):
    return [monitor_inf_often_any(extended.alphabet, extended.data_derived)]


def zonal_nonempty(automaton, constraints, once_flags, zonal, options=DEFAULT_OPTIONS, check=None):
    """Emptiness of a zonal automaton under zonal constraints.

    ``once_flags`` are enforced by the automaton itself and only reported
    here; ``check`` is an extra acceptance test for witness recipes.
    """
    adc = Adc(automaton, constraints)
    verify_prefix = prefix_verifier(adc)

    def verify(recipe):
        return verify_prefix(recipe) and (check is None or check(recipe))

    searched = {}
    for branch, extra, inf_allowed in ((BRANCH_FINITE, _avoid_sets, False), (BRANCH_INFINITE, _repeat_sets, True)):
        search = PartitionSearch(
            automaton, constraints, data_symbols=zonal.set_symbols, four_way=True, options=options,
            tail_extra=extra, inf_allowed=inf_allowed, verify=verify, label=f"zonal-{branch}",
        )
        verdict = search.run(search.general_guesses())
        searched[branch] = verdict.stats
        if verdict.nonempty:
            verdict.stats["branch"] = branch
            verdict.stats["once"] = sorted(zonal.base.name(a) for a in once_flags)
            return verdict
    log("zonal search empty in both branches", name=LOGGER)
    return Verdict(False, None, {"branch": None, "branches": searched})


def zonal_recipe_word(recipe, n, base):
    """Base data word spelled by the first ``n`` zonal positions of a recipe."""
    entries = []
    value = None
    for symbol, item_value in recipe.concretize(n):
        label = recipe.extended.base_of(symbol)
        if item_value is not None:
            value = item_value
        elif value is not None:
            entries.append((label, value))
    return FiniteDataWord(base, tuple(entries))


def profile_check(padc):
    """Recipe test: the data word replays through the profile automaton and breaks no key or denial."""

    def check(recipe):
        n = DEFAULT_UNROLL_FACTOR * (len(recipe.u) + len(recipe.v))
        word = zonal_recipe_word(recipe, n, padc.base)
        if not profile_accepts_prefix(padc.automaton, word):
            return False
        results = check_constraints(word, padc.constraints)
        return all(r.holds for r in results if not isinstance(r.constraint, Inclusion))

    return check


def profile_adc_nonempty(padc, options=DEFAULT_OPTIONS):
    zonal = ZonalAlphabet(padc.base)
    constraints, once = translate_constraints_zonal(padc.constraints)
    automaton = zonal_automaton(padc.automaton, padc.base, once)
    verdict = zonal_nonempty(automaton, constraints, once, zonal, options, check=profile_check(padc))
    verdict.stats["zonal_states"] = automaton.state_count
    return verdict
