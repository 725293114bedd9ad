"""Combinatorial data of an SNC divisor E = sum E_i with holonomy.

A configuration records, for every nonempty I with E_I nonempty, the open
stratum E°_I: its class in K0(Var) as a polynomial in L (when it has one), its
Euler characteristic, and the components whose closure meets it (adjacency).
The adjacency gives the generators of the holonomy image of the punctured
neighborhood of the stratum: the cover of E°_I has as many connected
components as the gcd of the adjacent multiplicities.
"""
import logging
import math
from dataclasses import dataclass, field
from itertools import combinations
from types import MappingProxyType
from typing import Iterable, Mapping

import sympy as sp

from .errors import MissingStratumError, UnknownComponentError, UnrepresentableCoverError
from .ring import RingElement, evaluate_at_one, from_polynomial


StratumKey = frozenset[str]

FINITE_TYPE = "finite-type violation"
EULER_MISMATCH = "Euler/class mismatch"
UNKNOWN_COMPONENT = "unknown component"
ADJACENCY = "adjacency violation"
CLOSURE = "closure violation"
DIMENSION = "dimension violation"
MISSING_CLASS = "missing class"


def component_sort_key(component: str) -> tuple[int, int, str]:
    if component.isdigit():
        return (0, int(component), component)
    return (1, 0, component)


def sorted_ids(components: Iterable[str]) -> list[str]:
    return sorted(components, key=component_sort_key)


def format_stratum(key: Iterable[str]) -> str:
    return "{" + ",".join(sorted_ids(key)) + "}"


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    subject: str
    message: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.subject}: {self.message}"


@dataclass(frozen=True)
class Component:
    id: str
    multiplicity: int


@dataclass(frozen=True)
class Stratum:
    components: StratumKey
    stratum_class: sp.Poly | None
    euler: int
    adjacency: frozenset[str]
    torus_cell: bool = True
    cover_class: RingElement | None = None

    @property
    def name(self) -> str:
        return format_stratum(self.components)

    @property
    def is_empty(self) -> bool:
        return self.cover_class is None and self.stratum_class is not None and self.stratum_class.is_zero

    @property
    def is_representable(self) -> bool:
        return self.cover_class is not None or (self.torus_cell and self.stratum_class is not None)


@dataclass(frozen=True)
class Configuration:
    ambient_dim: int
    components: Mapping[str, Component] = field(default_factory=dict)
    strata: Mapping[StratumKey, Stratum] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", MappingProxyType(dict(self.components)))
        object.__setattr__(self, "strata", MappingProxyType(dict(self.strata)))

    @classmethod
    def build(cls, ambient_dim: int, components: Iterable[Component], strata: Iterable[Stratum]) -> "Configuration":
        return cls(
            ambient_dim=ambient_dim,
            components={c.id: c for c in components},
            strata={s.components: s for s in strata},
        )

    @property
    def multiplicities(self) -> dict[str, int]:
        return {cid: c.multiplicity for cid, c in self.components.items()}

    def component_ids(self) -> frozenset[str]:
        return frozenset(self.components)

    def ordered_strata(self) -> list[Stratum]:
        return sorted(self.strata.values(),
                      key=lambda s: (len(s.components), [component_sort_key(c) for c in sorted_ids(s.components)]))

    def stratum(self, key: Iterable[str]) -> Stratum:
        key = frozenset(key)
        try:
            return self.strata[key]
        except KeyError:
            raise MissingStratumError(format_stratum(key)) from None


def adjacency_gcd(adjacency: Iterable[str], multiplicities: Mapping[str, int]) -> int:
    try:
        return math.gcd(*(abs(multiplicities[c]) for c in adjacency))
    except KeyError as e:
        raise UnknownComponentError(e.args[0]) from None


def stratum_cover(stratum: Stratum, multiplicities: Mapping[str, int]) -> RingElement:
    """Class of the unramified cover of a stratum, with its cyclic action."""
    if stratum.cover_class is not None:
        return stratum.cover_class
    if not stratum.torus_cell:
        raise UnrepresentableCoverError(stratum.name, "not a torus cell and no explicit cover class")
    if stratum.stratum_class is None:
        raise UnrepresentableCoverError(stratum.name, "no stratum class")
    count = adjacency_gcd(stratum.adjacency, multiplicities)
    if count == 0:
        raise UnrepresentableCoverError(stratum.name, "all adjacent multiplicities vanish")
    return RingElement.mu(count) * from_polynomial(stratum.stratum_class)


def _check_stratum(stratum: Stratum, config: Configuration) -> list[Diagnostic]:
    diagnostics = []
    name = f"stratum {stratum.name}"

    if not stratum.components:
        diagnostics.append(Diagnostic(CLOSURE, name, "stratum indexed by the empty set"))
    for c in sorted_ids((stratum.components | stratum.adjacency) - config.component_ids()):
        diagnostics.append(Diagnostic(UNKNOWN_COMPONENT, name, f"references unknown component '{c}'"))
    if not stratum.components <= stratum.adjacency:
        missing = format_stratum(stratum.components - stratum.adjacency)
        diagnostics.append(Diagnostic(ADJACENCY, name, f"adjacency does not contain its own components {missing}"))
    if len(stratum.components) > config.ambient_dim:
        diagnostics.append(Diagnostic(DIMENSION, name,
                                      f"{len(stratum.components)} components meet in ambient dimension {config.ambient_dim}"))
    if stratum.stratum_class is not None:
        at_one = evaluate_at_one(stratum.stratum_class)
        if at_one != stratum.euler:
            diagnostics.append(Diagnostic(EULER_MISMATCH, name, f"euler {stratum.euler} but class(1) = {at_one}"))
    elif stratum.torus_cell:
        diagnostics.append(Diagnostic(MISSING_CLASS, name, "torus-cell stratum without a class"))

    for size in range(1, len(stratum.components)):
        for face in combinations(sorted_ids(stratum.components), size):
            if frozenset(face) not in config.strata:
                diagnostics.append(Diagnostic(CLOSURE, name, f"missing face {format_stratum(face)}"))
    return diagnostics


def validate(config: Configuration) -> list[Diagnostic]:
    diagnostics = []

    if config.ambient_dim < 1:
        diagnostics.append(Diagnostic(DIMENSION, "configuration", f"ambient dimension {config.ambient_dim} < 1"))

    for cid in sorted_ids(config.components):
        component = config.components[cid]
        if component.multiplicity != 0:
            continue
        uncovered = [s.name for s in config.ordered_strata() if cid in s.components and s.cover_class is None]
        if uncovered or not any(cid in key for key in config.strata):
            diagnostics.append(Diagnostic(FINITE_TYPE, f"component {cid}", "multiplicity is 0"))

    for stratum in config.ordered_strata():
        diagnostics.extend(_check_stratum(stratum, config))

    for d in diagnostics:
        logging.debug(f"Validation: {d}")
    return diagnostics


def gcd_multiplicity(config: Configuration, components: Iterable[str]) -> int:
    """m_I = gcd(|m_i| : i in I)."""
    return adjacency_gcd(components, config.multiplicities)


def cover_component_count(config: Configuration, components: Iterable[str]) -> int:
    """Number of connected components N_I of the cover of E°_I."""
    return adjacency_gcd(config.stratum(components).adjacency, config.multiplicities)


def cover_class(config: Configuration, components: Iterable[str]) -> RingElement:
    return stratum_cover(config.stratum(components), config.multiplicities)
