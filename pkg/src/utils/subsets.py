from itertools import combinations


def nonempty_subsets(symbols):
    """All nonempty subsets of ``symbols`` as frozensets, by size then lexicographically."""
    ordered = sorted(symbols)
    result = []
    for size in range(1, len(ordered) + 1):
        for combo in combinations(ordered, size):
            result.append(frozenset(combo))
    return result


def subset_key(subset):
    """Canonical sort key matching the order of ``nonempty_subsets``."""
    return (len(subset), tuple(sorted(subset)))


def sorted_subsets(subsets):
    return sorted(subsets, key=subset_key)


def set_name(names):
    return "{" + ",".join(names) + "}"
