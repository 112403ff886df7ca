"""Automata with data constraints, partition guesses and verdicts."""

from dataclasses import dataclass, field
from enum import Enum
from typing import FrozenSet, Optional, Tuple

from src.automata.alphabet import require_same
from src.automata.systems import BuchiAutomaton
from src.data.constraints import ConstraintSet
from src.utils.subsets import set_name, subset_key


@dataclass(frozen=True)
class Adc:
    automaton: BuchiAutomaton
    constraints: ConstraintSet

    def __post_init__(self):
        require_same(self.automaton.alphabet, self.constraints.alphabet, "automaton and constraint alphabets")

    @property
    def alphabet(self):
        return self.automaton.alphabet


class ClassTag(Enum):
    ZERO = "zero"
    FIN = "fin"
    INF = "inf"
    FIN_SMALL = "fin-small"
    FIN_BIG = "fin-big"


FINITE_TAGS = (ClassTag.FIN, ClassTag.FIN_BIG)


@dataclass(frozen=True)
class PartitionGuess:
    """Tag for every nonempty subset of ``symbols``; subsets not listed are Zero.

    ``gamma`` gives the number of constants of each FinSmall class.
    """

    symbols: FrozenSet[int]
    tags: Tuple[Tuple[FrozenSet[int], ClassTag], ...] = ()
    gamma: Tuple[Tuple[FrozenSet[int], int], ...] = ()
    four_way: bool = False

    def __post_init__(self):
        tags = tuple(sorted(((frozenset(s), t) for s, t in self.tags if t is not ClassTag.ZERO), key=lambda item: subset_key(item[0])))
        object.__setattr__(self, "tags", tags)
        object.__setattr__(self, "gamma", tuple(sorted(((frozenset(s), g) for s, g in self.gamma), key=lambda item: subset_key(item[0]))))
        object.__setattr__(self, "symbols", frozenset(self.symbols))

    def tag(self, subset):
        for s, t in self.tags:
            if s == subset:
                return t
        return ClassTag.ZERO

    def classes(self, *wanted):
        return [s for s, t in self.tags if t in wanted]

    @property
    def finite_classes(self):
        """Classes counted by bound variables (Fin, or FinBig in four-way mode)."""
        return self.classes(*FINITE_TAGS)

    @property
    def inf_classes(self):
        return self.classes(ClassTag.INF)

    @property
    def small_classes(self):
        return self.classes(ClassTag.FIN_SMALL)

    @property
    def nonzero_classes(self):
        return [s for s, _ in self.tags]

    def gamma_of(self, subset):
        for s, g in self.gamma:
            if s == subset:
                return g
        return 0

    def describe(self, alphabet):
        parts = []
        for subset, tag in self.tags:
            name = set_name(sorted(alphabet.name(a) for a in subset))
            if tag is ClassTag.FIN_SMALL:
                parts.append(f"{name}:{tag.value}({self.gamma_of(subset)})")
            else:
                parts.append(f"{name}:{tag.value}")
        return ", ".join(parts) if parts else "all-zero"


@dataclass
class Verdict:
    nonempty: bool
    recipe: Optional[object] = None
    stats: dict = field(default_factory=dict)

    @property
    def empty(self):
        return not self.nonempty

    @classmethod
    def empty_verdict(cls, **stats):
        return cls(False, None, dict(stats))
