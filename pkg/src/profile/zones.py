"""
Zones and zonal words.

A zone is a maximal interval of positions sharing one data value. The zonal
word puts a set letter (the zone's label set, carrying the zone's value) in
front of every zone; the base letters themselves carry no data.
"""

from dataclasses import dataclass
from typing import FrozenSet, NamedTuple, Optional, Tuple, Union

from src.automata.alphabet import Alphabet
from src.core.errors import SchemaError, WitnessError
from src.data.words import FiniteDataWord, LassoDataWord
from src.utils.subsets import nonempty_subsets, set_name


@dataclass(frozen=True)
class Zone:
    """1-based inclusive interval; ``end`` is None for a zone that never ends."""

    start: int
    end: Optional[int]
    labels: FrozenSet[int]
    value: int

    @property
    def infinite(self):
        return self.end is None


class LassoZones(NamedTuple):
    """Zones of a lasso: ``head`` once, then ``cycle`` repeated forever (empty when the last head zone is infinite)."""

    head: Tuple[Zone, ...]
    cycle: Tuple[Zone, ...]


@dataclass(frozen=True)
class SetLetter:
    labels: FrozenSet[int]
    value: int


ZonalItem = Union[SetLetter, int]


@dataclass(frozen=True)
class ZonalWord:
    items: Tuple[ZonalItem, ...]


@dataclass(frozen=True)
class ZonalLasso:
    prefix: Tuple[ZonalItem, ...]
    cycle: Tuple[ZonalItem, ...]


class ZonalAlphabet:
    """Base letters followed by one set letter per nonempty subset (canonical order)."""

    def __init__(self, base):
        self.base = base
        self.subsets = tuple(nonempty_subsets(range(len(base))))
        self._set_index = {subset: len(base) + i for i, subset in enumerate(self.subsets)}
        names = list(base.names) + [self.subset_name(s) for s in self.subsets]
        self.alphabet = Alphabet(names)

    def subset_name(self, subset):
        return set_name(sorted(self.base.name(a) for a in subset))

    def set_symbol(self, subset):
        return self._set_index[frozenset(subset)]

    def subset_of(self, symbol):
        """Subset for a set letter, None for a base letter."""
        if symbol < len(self.base):
            return None
        return self.subsets[symbol - len(self.base)]

    def is_set(self, symbol):
        return symbol >= len(self.base)

    @property
    def set_symbols(self):
        return frozenset(self._set_index.values())

    def project(self, items):
        return tuple(self.set_symbol(item.labels) if isinstance(item, SetLetter) else item for item in items)


def zonal_alphabet(base):
    return ZonalAlphabet(base)


def _scan(entries, offset=0):
    zones = []
    start = 0
    for i in range(1, len(entries) + 1):
        if i == len(entries) or entries[i][1] != entries[start][1]:
            labels = frozenset(symbol for symbol, _ in entries[start:i])
            zones.append(Zone(offset + start + 1, offset + i, labels, entries[start][1]))
            start = i
    return zones


def zones_of(word):
    """Zones of a finite word, or LassoZones of a lasso."""
    if not isinstance(word, LassoDataWord):
        return tuple(_scan(word.entries))
    prefix, cycle = word.prefix, word.cycle
    if len({value for _, value in cycle}) == 1:
        value = cycle[0][1]
        start = len(prefix)
        while start > 0 and prefix[start - 1][1] == value:
            start -= 1
        head = _scan(prefix[:start])
        labels = frozenset(symbol for symbol, _ in prefix[start:] + cycle)
        head.append(Zone(start + 1, None, labels, value))
        return LassoZones(tuple(head), ())
    # rotate so the periodic part starts right after a value change
    entries = prefix + cycle + cycle
    cut = next(i for i in range(len(prefix), len(prefix) + len(cycle)) if entries[i][1] != entries[i + 1][1]) + 1
    head = _scan(entries[:cut])
    periodic = _scan(entries[cut:cut + len(cycle)], offset=cut)
    return LassoZones(tuple(head), tuple(periodic))


def _zonal_items(entries, zones):
    items = []
    for zone in zones:
        items.append(SetLetter(zone.labels, zone.value))
        items.extend(symbol for symbol, _ in entries[zone.start - 1:zone.end])
    return items


def zonal_of(word):
    """ZonalWord of a finite data word, ZonalLasso of a lasso."""
    if not isinstance(word, LassoDataWord):
        return ZonalWord(tuple(_zonal_items(word.entries, zones_of(word))))
    layout = zones_of(word)
    if not layout.cycle:
        *finite, last = layout.head
        prefix = _zonal_items(word.prefix, finite)
        prefix.append(SetLetter(last.labels, last.value))
        prefix.extend(symbol for symbol, _ in word.prefix[last.start - 1:])
        return ZonalLasso(tuple(prefix), tuple(symbol for symbol, _ in word.cycle))
    entries = word.prefix + word.cycle + word.cycle
    return ZonalLasso(tuple(_zonal_items(entries, layout.head)), tuple(_zonal_items(entries, layout.cycle)))


def _data_entries(items):
    entries = []
    value = None
    for item in items:
        if isinstance(item, SetLetter):
            value = item.value
        elif value is None:
            raise WitnessError("zonal word must begin with a set letter")
        else:
            entries.append((item, value))
    return tuple(entries)


def zonal_to_data_word(zonal, base):
    """Data word over ``base`` whose zones are the zonal word's zones."""
    if isinstance(zonal, ZonalLasso):
        prefix = _data_entries(zonal.prefix)
        if any(isinstance(item, SetLetter) for item in zonal.cycle):
            if not isinstance(zonal.cycle[0], SetLetter):
                raise WitnessError("periodic zonal part must start with a set letter")
            return LassoDataWord(base, prefix, _data_entries(zonal.cycle))
        last = next(item for item in reversed(zonal.prefix) if isinstance(item, SetLetter))
        return LassoDataWord(base, prefix, tuple((symbol, last.value) for symbol in zonal.cycle))
    return FiniteDataWord(base, _data_entries(zonal.items))


def _zones_in(items):
    """(set letter, letters) per zone."""
    zones = []
    for item in items:
        if isinstance(item, SetLetter):
            zones.append((item, []))
        elif not zones:
            return None
        else:
            zones[-1][1].append(item)
    return zones


def is_well_formed(zonal):
    """Starts with a set letter, zone letters cover their set letter, neighbouring set letters differ in value."""
    if isinstance(zonal, ZonalLasso):
        if any(isinstance(item, SetLetter) for item in zonal.cycle):
            if not isinstance(zonal.cycle[0], SetLetter):
                return False
            items = zonal.prefix + zonal.cycle + zonal.cycle[:1]
            zones = _zones_in(items)
            return zones is not None and _zones_ok(zones[:-1]) and zones[-1][0].value != zones[-2][0].value
        zones = _zones_in(zonal.prefix + zonal.cycle)
        return zones is not None and _zones_ok(zones)
    zones = _zones_in(zonal.items)
    return zones is not None and _zones_ok(zones)


def _zones_ok(zones):
    for i, (letter, members) in enumerate(zones):
        if not members or set(members) != set(letter.labels):
            return False
        if i and zones[i - 1][0].value == letter.value:
            return False
    return True


def zonal_to_json(zonal, base):
    def render(items):
        return [
            {"set": sorted(base.name(a) for a in item.labels), "value": item.value} if isinstance(item, SetLetter) else base.name(item)
            for item in items
        ]

    if isinstance(zonal, ZonalLasso):
        return {"prefix": render(zonal.prefix), "cycle": render(zonal.cycle)}
    return render(zonal.items)


def zonal_from_json(base, document, pointer="/zonal"):
    def parse(items, where):
        if not isinstance(items, list):
            raise SchemaError("expected an array", where)
        result = []
        for i, item in enumerate(items):
            if isinstance(item, str):
                if item not in base:
                    raise SchemaError(f"unknown label {item!r}", f"{where}/{i}")
                result.append(base.symbol(item))
            elif isinstance(item, dict) and isinstance(item.get("set"), list) and isinstance(item.get("value"), int):
                labels = item["set"]
                if not labels or any(name not in base for name in labels):
                    raise SchemaError("set letter needs known labels", f"{where}/{i}/set")
                result.append(SetLetter(base.symbols(labels), item["value"]))
            else:
                raise SchemaError("expected a label or {set, value}", f"{where}/{i}")
        return tuple(result)

    if isinstance(document, dict):
        return ZonalLasso(parse(document.get("prefix", []), f"{pointer}/prefix"), parse(document.get("cycle"), f"{pointer}/cycle"))
    return ZonalWord(parse(document, pointer))
