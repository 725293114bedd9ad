"""Motivic infinite cyclic cover of an SNC configuration.

    S^A = sum over strata I meeting A of (-1)^(|I|-1) [cover of E°_I] (L-1)^(|I|-1)
"""
import logging
from dataclasses import dataclass
from typing import Callable, Iterable

from .config import Configuration, Stratum, format_stratum, sorted_ids, stratum_cover, validate
from .errors import InvalidConfigurationError, SelectionError
from .ring import RingElement


StratumFilter = Callable[[frozenset[str]], bool]

_L_MINUS_ONE = RingElement.lefschetz() - 1


@dataclass(frozen=True)
class StratumContribution:
    stratum: frozenset[str]
    sign: int
    cover: RingElement
    term: RingElement

    @property
    def name(self) -> str:
        return format_stratum(self.stratum)


def check_selection(config: Configuration, selection: Iterable[str]) -> frozenset[str]:
    selected = frozenset(selection)
    if not selected:
        raise SelectionError("the selection A must not be empty")
    unknown = selected - config.component_ids()
    if unknown:
        raise SelectionError(f"unknown components in selection: {', '.join(sorted_ids(unknown))}")
    return selected


def meets(selection: frozenset[str]) -> StratumFilter:
    return lambda key: bool(key & selection)


def contribution(stratum: Stratum, multiplicities: dict[str, int]) -> StratumContribution | None:
    if stratum.is_empty:
        return None
    depth = len(stratum.components) - 1
    sign = -1 if depth % 2 else 1
    cover = stratum_cover(stratum, multiplicities)
    return StratumContribution(stratum.components, sign, cover, sign * cover * _L_MINUS_ONE ** depth)


def stratum_term(config: Configuration, components: Iterable[str]) -> RingElement:
    item = contribution(config.stratum(components), config.multiplicities)
    return item.term if item is not None else RingElement.zero()


def breakdown(config: Configuration, predicate: StratumFilter) -> list[StratumContribution]:
    multiplicities = config.multiplicities
    items = []
    for stratum in config.ordered_strata():
        if not predicate(stratum.components):
            continue
        item = contribution(stratum, multiplicities)
        if item is not None:
            items.append(item)
    return items


def motive_restricted(config: Configuration, predicate: StratumFilter) -> RingElement:
    total = RingElement.zero()
    for item in breakdown(config, predicate):
        total = total + item.term
    return total


def motive(config: Configuration, selection: Iterable[str]) -> RingElement:
    diagnostics = validate(config)
    if diagnostics:
        raise InvalidConfigurationError(diagnostics)
    selected = check_selection(config, selection)
    logging.debug(f"Computing motive over {len(config.strata)} strata, A = {format_stratum(selected)}")
    return motive_restricted(config, meets(selected))
