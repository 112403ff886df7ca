"""
Bounded search over concrete lasso data words.

Used as an independent oracle: whatever the decision procedures claim to be
empty must survive this search. Values are enumerated up to renaming
(first-occurrence order), so ``values`` only caps how many distinct values
appear.
"""

from itertools import product

from src.automata.emptiness import buchi_accepts_lasso
from src.core.constants import MODEL_SEARCH_LENGTH, MODEL_SEARCH_VALUES
from src.data.constraints import satisfies
from src.data.words import LassoDataWord


def label_lassos(alphabet_size, max_len):
    """(prefix, cycle) label sequences with |prefix| + |cycle| <= max_len, shortest first."""
    for length in range(1, max_len + 1):
        for labels in product(range(alphabet_size), repeat=length):
            for split in range(length):
                yield labels[:split], labels[split:]


def value_sequences(length, limit, allowed=None):
    """Sequences over 1..limit in first-occurrence order, pruned by ``allowed(i, value, prefix)``."""
    sequence = []

    def extend(top):
        if len(sequence) == length:
            yield tuple(sequence)
            return
        i = len(sequence)
        for value in range(1, min(top + 1, limit) + 1):
            if allowed is not None and not allowed(i, value, sequence):
                continue
            sequence.append(value)
            yield from extend(max(top, value))
            sequence.pop()

    yield from extend(0)


def _is_canonical(prefix, cycle):
    if prefix and prefix[-1] == cycle[-1]:
        return False
    n = len(cycle)
    for period in range(1, n):
        if n % period == 0 and cycle == cycle[:period] * (n // period):
            return False
    return True


def data_lassos(alphabet, max_len=MODEL_SEARCH_LENGTH, values=MODEL_SEARCH_VALUES, label_filter=None, allowed=None):
    """Every lasso data word within the bounds, skipping obviously redundant representations."""
    for prefix_labels, cycle_labels in label_lassos(len(alphabet), max_len):
        if label_filter is not None and not label_filter(prefix_labels, cycle_labels):
            continue
        labels = prefix_labels + cycle_labels
        split = len(prefix_labels)
        check = None if allowed is None else (lambda i, value, seq, labels=labels: allowed(labels, i, value, seq))
        for sequence in value_sequences(len(labels), values, check):
            entries = tuple(zip(labels, sequence))
            prefix, cycle = entries[:split], entries[split:]
            if _is_canonical(prefix, cycle):
                yield LassoDataWord(alphabet, prefix, cycle)


def search_lasso_models(automaton, constraints, max_len=MODEL_SEARCH_LENGTH, values=MODEL_SEARCH_VALUES):
    """A lasso data word accepted by ``automaton`` and satisfying ``constraints``, or None."""
    keys = constraints.key_symbols
    partners = {}
    self_denied = set()
    for denial in constraints.denials:
        if denial.first == denial.second:
            self_denied.add(denial.first)
        partners.setdefault(denial.first, set()).add(denial.second)
        partners.setdefault(denial.second, set()).add(denial.first)

    def label_filter(prefix, cycle):
        if any(a in self_denied for a in prefix + cycle):
            return False
        if any(a in keys for a in cycle):
            return False
        return buchi_accepts_lasso(automaton, prefix, cycle)

    def allowed(labels, i, value, sequence):
        label = labels[i]
        for j, other in enumerate(sequence):
            if other != value:
                continue
            if labels[j] == label and label in keys:
                return False
            if labels[j] in partners.get(label, ()):
                return False
        return True

    for word in data_lassos(automaton.alphabet, max_len, values, label_filter, allowed):
        if satisfies(word, constraints):
            return word
    return None
