"""
Witness recipes: how to put data values on an extended lasso.

Value layout on the natural numbers, bottom up:

* constant block (four-way mode only): class number ``i`` in canonical
  subset order owns ``epsilon`` consecutive ids, constant ``j`` of that class
  is the ``j``-th of them;
* one consecutive block per finite class, of the size its bound variable
  received (``xi`` blocks);
* Inf pools: pool ``p`` of ``P`` uses ``pool_base + p + P * k`` for
  ``k = 0, 1, ...``.

Base positions of the finite part receive the block values of their letter's
finite classes (every value of a class once per letter, left to right, then
the lowest eligible value). Pair positions ``a@S`` join the oldest open group
of pool S that still lacks ``a``; when none is open a fresh value starts a new
group.
"""

from dataclasses import dataclass, field
from typing import Optional, Tuple

from src.adc.extended import BASE, CONSTANT, PAIR, local_epsilon
from src.core.constants import FIRST_DATA_VALUE
from src.core.errors import PreconditionError, WitnessError
from src.data.constraints import Inclusion, check_constraints, describe
from src.data.words import FiniteDataWord, LassoDataWord
from src.debug.logger import log
from src.profile.rearrange import rearrange_values
from src.utils.subsets import nonempty_subsets

LOGGER = "adc.witness"

PASS = "pass"
FAIL = "fail"
STRUCTURAL = "structural"


@dataclass(frozen=True)
class WitnessRecipe:
    partition: object
    extended: object
    u: Tuple[int, ...]
    v_prefix: Tuple[int, ...]
    v_cycle: Tuple[int, ...]
    class_counts: Tuple[int, ...]
    locally_different: bool = False
    anchor: int = 0

    def __post_init__(self):
        for name in ("u", "v_prefix", "v_cycle", "class_counts"):
            object.__setattr__(self, name, tuple(getattr(self, name)))
        if not self.v_cycle:
            raise WitnessError("recipe cycle must be nonempty")

    @property
    def v(self):
        return self.v_prefix + self.v_cycle

    @property
    def data_symbols(self):
        return self.partition.symbols

    @property
    def four_way(self):
        return self.partition.four_way

    def counts(self):
        return dict(zip(self.partition.finite_classes, self.class_counts))

    # -- value layout -------------------------------------------------

    @property
    def epsilon(self):
        return local_epsilon(self.data_symbols)

    @property
    def constant_block(self):
        if not self.four_way:
            return 0
        return self.epsilon * 2 ** len(self.data_symbols)

    def constant_value(self, subset, j):
        index = nonempty_subsets(self.data_symbols).index(subset)
        return FIRST_DATA_VALUE + index * self.epsilon + j - 1

    def xi_blocks(self):
        """Finite class -> tuple of its values."""
        start = FIRST_DATA_VALUE + self.constant_block
        blocks = {}
        for subset, count in zip(self.partition.finite_classes, self.class_counts):
            blocks[subset] = tuple(range(start, start + count))
            start += count
        return blocks

    @property
    def pool_base(self):
        return FIRST_DATA_VALUE + self.constant_block + sum(self.class_counts)

    def pool_value(self, pool, k):
        return self.pool_base + pool + len(self.partition.inf_classes) * k

    def is_pool_value(self, value):
        return bool(self.partition.inf_classes) and value is not None and value >= self.pool_base

    # -- consistency ----------------------------------------------------

    def validate(self, constraints=None):
        """Raise WitnessError unless the class counts fit the finite part."""
        finite = self.partition.finite_classes
        if len(self.class_counts) != len(finite):
            raise WitnessError(f"expected {len(finite)} class counts, got {len(self.class_counts)}")
        minimum = self.epsilon if self.four_way else 1
        for subset, count in zip(finite, self.class_counts):
            if count < minimum:
                raise WitnessError(f"class count {count} below {minimum}")
        keys = constraints.key_symbols if constraints is not None else frozenset()
        occurrences = {}
        for symbol in self.u:
            if self.extended.kind(symbol) == BASE:
                occurrences[symbol] = occurrences.get(symbol, 0) + 1
        for a in sorted(self.data_symbols):
            needed = sum(count for subset, count in zip(finite, self.class_counts) if a in subset)
            have = occurrences.get(a, 0)
            if have < needed or (a in keys and have != needed):
                raise WitnessError(
                    f"letter {self.extended.base.name(a)!r} occurs {have} times in the finite part but classes need {needed}"
                )

    # -- concretization -------------------------------------------------

    def positions(self):
        """Endless stream of (extended symbol, value or None)."""
        return _Concretizer(self).stream()

    def concretize(self, n):
        stream = self.positions()
        return [next(stream) for _ in range(n)]

    def concretize_word(self, n):
        """First ``n`` positions as a data word over the base alphabet."""
        entries = []
        for symbol, value in self.concretize(n):
            if value is None:
                raise WitnessError("recipe has positions without data; use concretize instead")
            entries.append((self.extended.base_of(symbol), value))
        return FiniteDataWord(self.extended.base, tuple(entries))

    def as_lasso(self):
        """Ultimately periodic data word, or None when fresh values are needed forever."""
        if self.partition.inf_classes:
            return None
        if any(not self.extended.carries_data(s) for s in self.u + self.v):
            return None
        concretizer = _Concretizer(self)
        stream = concretizer.stream()
        head = [next(stream) for _ in range(len(self.u) + len(self.v_prefix))]
        seen = {}
        copies = []
        while concretizer.previous not in seen:
            seen[concretizer.previous] = len(copies)
            copies.append([next(stream) for _ in range(len(self.v_cycle))])
        first = seen[concretizer.previous]
        to_entries = lambda items: tuple((self.extended.base_of(s), value) for s, value in items)
        prefix = head + [item for copy in copies[:first] for item in copy]
        cycle = [item for copy in copies[first:] for item in copy]
        return LassoDataWord(self.extended.base, to_entries(prefix), to_entries(cycle))


class _Concretizer:
    def __init__(self, recipe):
        self.recipe = recipe
        self.extended = recipe.extended
        self.previous = None
        self.previous_index = None
        blocks = recipe.xi_blocks()
        self.eligible = {}
        self.coverage = {}
        for a in recipe.data_symbols:
            owned = [subset for subset in recipe.partition.finite_classes if a in subset]
            self.coverage[a] = [value for subset in owned for value in blocks[subset]]
            self.eligible[a] = sorted(self.coverage[a])
        self.pools = {subset: p for p, subset in enumerate(recipe.partition.inf_classes)}
        self.fresh = {subset: 0 for subset in self.pools}
        self.groups = {subset: [] for subset in self.pools}

    def _finite_values(self):
        """Values for base data positions of the finite part."""
        u = self.recipe.u
        values = [None] * len(u)
        cursor = {a: 0 for a in self.coverage}
        for i, symbol in enumerate(u):
            entry = self.extended.entry(symbol)
            if entry.kind != BASE or entry.base not in self.coverage:
                continue
            coverage = self.coverage[entry.base]
            if cursor[entry.base] < len(coverage):
                values[i] = coverage[cursor[entry.base]]
                cursor[entry.base] += 1
            elif self.eligible[entry.base]:
                values[i] = self.eligible[entry.base][0]
            else:
                raise WitnessError(f"no value available for letter {self.extended.base.name(entry.base)!r}")
        if self.recipe.locally_different:
            values = self._spread(values)
        return values

    def _spread(self, values):
        """Reorder finite-part base values so adjacent data positions differ."""
        u = self.recipe.u
        data = [i for i, symbol in enumerate(u) if self.extended.carries_data(symbol)]
        labels, current, fixed = [], [], []
        for k, i in enumerate(data):
            entry = self.extended.entry(u[i])
            labels.append(entry.base)
            if entry.kind == BASE:
                current.append(values[i])
            else:
                current.append(-1 - k)
                fixed.append(k)
        spread = rearrange_values(labels, current, fixed)
        result = list(values)
        for k, i in enumerate(data):
            if values[i] is not None:
                result[i] = spread[k]
        return result

    def _constant(self, entry):
        return self.recipe.constant_value(entry.subset, entry.constant)

    def _pair(self, entry, index):
        subset = entry.subset
        for group in self.groups[subset]:
            value, letters, last = group
            if entry.base in letters:
                continue
            if self.recipe.locally_different and last == self.previous_index:
                continue
            letters.add(entry.base)
            group[2] = index
            if letters == set(subset):
                self.groups[subset].remove(group)
            return value
        value = self.recipe.pool_value(self.pools[subset], self.fresh[subset])
        self.fresh[subset] += 1
        if len(subset) > 1:
            self.groups[subset].append([value, {entry.base}, index])
        return value

    def _tail_base(self, a):
        for value in self.eligible[a]:
            if not (self.recipe.locally_different and value == self.previous):
                return value
        raise WitnessError(f"no value available for letter {self.extended.base.name(a)!r}")

    def stream(self):
        recipe = self.recipe
        finite = self._finite_values()
        index = 0

        def emit(symbol, value):
            if value is not None:
                self.previous = value
                self.previous_index = index
            return symbol, value

        for i, symbol in enumerate(recipe.u):
            yield emit(symbol, self._value(symbol, index, finite[i], in_tail=False))
            index += 1
        tail = list(recipe.v_prefix)
        while True:
            for symbol in tail:
                yield emit(symbol, self._value(symbol, index, None, in_tail=True))
                index += 1
            tail = recipe.v_cycle

    def _value(self, symbol, index, planned, in_tail):
        entry = self.extended.entry(symbol)
        if entry.base not in self.recipe.data_symbols:
            return None
        if entry.kind == CONSTANT:
            return self._constant(entry)
        if entry.kind == PAIR:
            return self._pair(entry, index)
        if in_tail:
            return self._tail_base(entry.base)
        return planned


def synthesize_witness(partition, extended, u, v_prefix, v_cycle, counts, constraints, locally_different=False, anchor=0):
    """Recipe for a successful attempt; raises WitnessError when ``counts`` do not fit ``u``."""
    recipe = WitnessRecipe(partition, extended, u, v_prefix, v_cycle, counts, locally_different, anchor)
    recipe.validate(constraints)
    log("recipe |u|=%d |v|=%d counts=%s", len(recipe.u), len(recipe.v), recipe.class_counts, name=LOGGER)
    return recipe


@dataclass(frozen=True)
class CheckOutcome:
    name: str
    status: str
    detail: str = ""
    positions: Optional[Tuple[int, ...]] = None


@dataclass(frozen=True)
class WitnessReport:
    word: FiniteDataWord
    checks: Tuple[CheckOutcome, ...] = field(default=())

    @property
    def passed(self):
        return all(check.status != FAIL for check in self.checks)

    def failures(self):
        return [check for check in self.checks if check.status == FAIL]

    def to_json(self):
        return {
            "passed": self.passed,
            "checks": [
                {"name": c.name, "status": c.status, "detail": c.detail, "positions": list(c.positions or ())}
                for c in self.checks
            ],
        }


def _run_check(automaton, labels):
    states = frozenset([automaton.initial])
    for i, symbol in enumerate(labels):
        states = automaton.ts.step(states, symbol)
        if not states:
            return CheckOutcome("run", FAIL, "automaton has no run on the prefix", (i + 1,))
    return CheckOutcome("run", PASS)


def _inclusion_check(recipe, word, constraint, name):
    covered = {value for a, value in word.entries if a in constraint.targets}
    structural = False
    for i, (a, value) in enumerate(word.entries):
        if a != constraint.symbol or value in covered:
            continue
        if recipe.is_pool_value(value):
            structural = True
            continue
        return CheckOutcome(f"inclusion {name}", FAIL, "value not covered by a target letter", (i + 1,))
    if structural:
        return CheckOutcome(f"inclusion {name}", STRUCTURAL, "fresh pool values are covered by their groups")
    return CheckOutcome(f"inclusion {name}", PASS)


def verify_witness_prefix(recipe, n, adc):
    """Concretize ``n`` positions and check everything a finite prefix can show.

    Constraint and adjacency checks look at data positions only; the report's
    word holds those positions, numbered from 1.
    """
    if n < len(recipe.u) + len(recipe.v):
        raise PreconditionError(f"prefix length {n} shorter than the recipe ({len(recipe.u) + len(recipe.v)})")
    if recipe.extended.base != adc.alphabet:
        raise WitnessError("recipe built over a different alphabet")
    recipe.validate(adc.constraints)
    positions = [(recipe.extended.base_of(symbol), value) for symbol, value in recipe.concretize(n)]
    word = FiniteDataWord(adc.alphabet, tuple(entry for entry in positions if entry[1] is not None))
    checks = [_run_check(adc.automaton, [label for label, _ in positions])]
    results = check_constraints(word, adc.constraints)
    for result in results:
        name = describe(result.constraint, adc.alphabet)
        if isinstance(result.constraint, Inclusion):
            checks.append(_inclusion_check(recipe, word, result.constraint, name))
        else:
            status = PASS if result.holds else FAIL
            checks.append(CheckOutcome(name, status, "" if result.holds else "shared value", result.positions))
    cycle = set(recipe.v_cycle)
    missing = sorted(recipe.extended.alphabet.name(s) for s in recipe.extended.pair_symbols if s not in cycle)
    checks.append(CheckOutcome("inf-pairs", FAIL if missing else PASS, ", ".join(missing)))
    if recipe.locally_different:
        values = word.values
        clash = next((i for i in range(1, len(values)) if values[i] == values[i - 1]), None)
        if clash is None:
            checks.append(CheckOutcome("locally-different", PASS))
        else:
            checks.append(CheckOutcome("locally-different", FAIL, "equal adjacent values", (clash, clash + 1)))
    return WitnessReport(word, tuple(checks))
