"""
Rearranging data values so that adjacent positions never share a value.

Each letter keeps its own set of values, though not necessarily how often
each value occurs.
Positions marked fixed keep their value and are treated as obstacles for
their neighbours.
"""

from collections import Counter

from src.core.constants import LOCAL_DIFF_OFFSET
from src.core.errors import PreconditionError, WitnessError
from src.data.words import FiniteDataWord, values_of
from src.debug.logger import log

LOGGER = "profile.rearrange"


def is_locally_different(values):
    """No two consecutive entries are equal; ``None`` entries are skipped."""
    previous = None
    for value in values:
        if value is None:
            continue
        if value == previous:
            return False
        previous = value
    return True


def _order(budget, used, pool, previous, following, spare):
    """Candidate values, multiset-preserving choices first; ``spare`` says whether a covered value may repeat."""
    preferred, others = [], []
    for value in pool:
        if value == previous or value == following:
            continue
        if used[value] and not spare:
            continue
        if budget[value] > 0:
            preferred.append((-budget[value], value))
        else:
            others.append((bool(used[value]), value))
    return [value for _, value in sorted(preferred)] + [value for _, value in sorted(others)]


def rearrange_values(labels, values, fixed=()):
    """New value list with no equal neighbours and the same value set per label.

    ``fixed`` holds indices whose value stays put. Each letter keeps every one
    of its values at least once, but multiplicities may change: the greedy
    order only prefers the original counts (largest remaining count first),
    and dead ends backtrack.
    """
    fixed = set(fixed)
    n = len(labels)
    budgets = {}
    for i in range(n):
        if i not in fixed:
            budgets.setdefault(labels[i], Counter())[values[i]] += 1
    pools = {a: sorted(budget) for a, budget in budgets.items()}
    used = {a: Counter() for a in budgets}
    missing = {a: len(pool) for a, pool in pools.items()}
    left = Counter(labels[i] for i in range(n) if i not in fixed)
    movable = [i for i in range(n) if i not in fixed]
    result = [value if i in fixed else None for i, value in enumerate(values)]

    def release(i):
        a, value = labels[i], result[i]
        budgets[a][value] += 1
        used[a][value] -= 1
        if not used[a][value]:
            missing[a] += 1
        left[a] += 1
        result[i] = None

    stack = []
    cursor = 0
    while cursor < len(movable):
        i = movable[cursor]
        a = labels[i]
        if len(stack) == cursor:
            previous = result[i - 1] if i > 0 else None
            following = result[i + 1] if i + 1 < n and (i + 1) in fixed else None
            spare = left[a] > missing[a]
            stack.append(iter(_order(budgets[a], used[a], pools[a], previous, following, spare)))
        elif result[i] is not None:
            release(i)
        choice = next(stack[cursor], None)
        if choice is None:
            stack.pop()
            if cursor == 0:
                raise WitnessError("no locally different rearrangement exists")
            cursor -= 1
            continue
        budgets[a][choice] -= 1
        if not used[a][choice]:
            missing[a] -= 1
        used[a][choice] += 1
        left[a] -= 1
        result[i] = choice
        cursor += 1
    return result


def rearrange_locally_different(word):
    """Locally different word with the same projection and per-letter value sets."""
    bound = len(word.alphabet) + LOCAL_DIFF_OFFSET
    for a in set(word.labels):
        size = len(values_of(word, a))
        if size < bound:
            raise PreconditionError(
                f"letter {word.alphabet.name(a)!r} carries {size} distinct values, needs at least {bound}"
            )
    values = rearrange_values(word.labels, word.values)
    log("rearranged %d positions", len(values), name=LOGGER)
    return FiniteDataWord(word.alphabet, tuple(zip(word.labels, values)))
