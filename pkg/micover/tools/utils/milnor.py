"""Motivic Milnor fibers of plane curve germs from embedded resolution graphs.

A vertex is a component E_v of the total transform of the germ with
multiplicity m_v; arrows are the branches of the strict transform. The open
stratum E°_v is E_v minus its valence(v) intersection points.
"""
import logging
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

import sympy as sp

from .config import (
    ADJACENCY, DIMENSION, FINITE_TYPE, UNKNOWN_COMPONENT,
    Component, Configuration, Diagnostic, Stratum, sorted_ids,
)
from .errors import InvalidConfigurationError, SelectionError
from .motive import motive
from .realization import CyclotomicRational, zeta_closed_form
from .ring import L, RingElement

GRAPH = "graph violation"


@dataclass(frozen=True)
class Vertex:
    id: str
    multiplicity: int
    genus: int = 0
    exceptional: bool = True


@dataclass(frozen=True)
class Arrow:
    vertex: str
    multiplicity: int = 1


@dataclass(frozen=True)
class ResolutionGraph:
    vertices: tuple[Vertex, ...]
    edges: tuple[tuple[str, str], ...] = ()
    arrows: tuple[Arrow, ...] = ()

    @property
    def vertex_ids(self) -> frozenset[str]:
        return frozenset(v.id for v in self.vertices)

    def vertex(self, vid: str) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise SelectionError(f"unknown vertex '{vid}'")

    def arrow_ids(self) -> list[str]:
        return [f"branch{index}" for index in range(1, len(self.arrows) + 1)]

    def neighbours(self, vid: str) -> list[str]:
        result = [b if a == vid else a for a, b in self.edges if vid in (a, b)]
        result += [aid for aid, arrow in zip(self.arrow_ids(), self.arrows) if arrow.vertex == vid]
        return result

    def valence(self, vid: str) -> int:
        return len(self.neighbours(vid))

    def open_euler(self, vid: str) -> int:
        """chi(E°_v) = 2 - 2g - valence."""
        return 2 - 2 * self.vertex(vid).genus - self.valence(vid)

    def multiplicities(self) -> dict[str, int]:
        result = {v.id: v.multiplicity for v in self.vertices}
        result.update({aid: arrow.multiplicity for aid, arrow in zip(self.arrow_ids(), self.arrows)})
        return result

    def validate(self) -> list[Diagnostic]:
        diagnostics = []
        ids = [v.id for v in self.vertices]
        known = set(ids)

        if not ids:
            diagnostics.append(Diagnostic(GRAPH, "graph", "no vertices"))
        for vid in sorted_ids({i for i in ids if ids.count(i) > 1}):
            diagnostics.append(Diagnostic(GRAPH, f"vertex {vid}", "duplicate vertex id"))
        for vid in sorted_ids(known & set(self.arrow_ids())):
            diagnostics.append(Diagnostic(GRAPH, f"vertex {vid}", "id is reserved for a branch"))
        for v in self.vertices:
            if v.multiplicity < 1:
                diagnostics.append(Diagnostic(FINITE_TYPE, f"vertex {v.id}", f"multiplicity {v.multiplicity} < 1"))
            if v.genus < 0:
                diagnostics.append(Diagnostic(DIMENSION, f"vertex {v.id}", f"negative genus {v.genus}"))

        seen: set[frozenset[str]] = set()
        for a, b in self.edges:
            name = f"edge {a}-{b}"
            for end in sorted_ids({a, b} - known):
                diagnostics.append(Diagnostic(UNKNOWN_COMPONENT, name, f"references unknown vertex '{end}'"))
            if a == b:
                diagnostics.append(Diagnostic(ADJACENCY, name, "self-loop"))
            elif frozenset((a, b)) in seen:
                diagnostics.append(Diagnostic(ADJACENCY, name, "duplicate edge"))
            seen.add(frozenset((a, b)))
        for aid, arrow in zip(self.arrow_ids(), self.arrows):
            if arrow.vertex not in known:
                diagnostics.append(Diagnostic(UNKNOWN_COMPONENT, aid, f"attached to unknown vertex '{arrow.vertex}'"))
            if arrow.multiplicity < 1:
                diagnostics.append(Diagnostic(FINITE_TYPE, aid, f"multiplicity {arrow.multiplicity} < 1"))

        if ids and not diagnostics and not self._connected():
            diagnostics.append(Diagnostic(GRAPH, "graph", "not connected"))
        return diagnostics

    def _connected(self) -> bool:
        start = self.vertices[0].id
        reached = {start}
        queue = deque([start])
        while queue:
            current = queue.popleft()
            for a, b in self.edges:
                if current in (a, b):
                    other = b if a == current else a
                    if other not in reached:
                        reached.add(other)
                        queue.append(other)
        return reached == self.vertex_ids


@dataclass(frozen=True)
class MilnorSelection:
    vertices: frozenset[str] = field(default_factory=frozenset)

    @classmethod
    def exceptional(cls, graph: ResolutionGraph) -> "MilnorSelection":
        return cls(frozenset(v.id for v in graph.vertices if v.exceptional))

    @classmethod
    def of(cls, graph: ResolutionGraph, ids: Iterable[str]) -> "MilnorSelection":
        selected = frozenset(ids)
        unknown = selected - graph.vertex_ids
        if unknown:
            raise SelectionError(f"unknown vertices in selection: {', '.join(sorted_ids(unknown))}")
        return cls(selected)

    def checked(self) -> frozenset[str]:
        if not self.vertices:
            raise SelectionError("the selection of vertices must not be empty")
        return self.vertices


def cover_genus(graph: ResolutionGraph, vid: str) -> int | None:
    """Genus of one connected component of the cyclic cover of E°_v, compactified.

    None when the multiplicities are inconsistent with a cyclic cover.
    """
    m = graph.vertex(vid).multiplicity
    multiplicities = graph.multiplicities()
    neighbours = graph.neighbours(vid)
    count = math.gcd(m, *(multiplicities[j] for j in neighbours))
    closed = m * graph.open_euler(vid) + sum(math.gcd(m, multiplicities[j]) for j in neighbours)
    if closed % count or (closed // count) % 2:
        return None
    return (2 - closed // count) // 2


def _vertex_stratum(graph: ResolutionGraph, v: Vertex) -> Stratum:
    neighbours = graph.neighbours(v.id)
    valence = len(neighbours)
    adjacency = frozenset([v.id, *neighbours])
    chi = graph.open_euler(v.id)
    stratum_class = sp.Poly(L + 1 - valence, L, domain=sp.ZZ) if v.genus == 0 else None

    if v.genus == 0 and 1 <= valence <= 2:
        return Stratum(frozenset({v.id}), stratum_class, chi, adjacency)

    multiplicities = graph.multiplicities()
    count = math.gcd(v.multiplicity, *(multiplicities[j] for j in neighbours))
    genus = cover_genus(graph, v.id)
    cover = None
    if v.genus == 0 and count == v.multiplicity and genus == 0:
        cover = RingElement.mu(count) * (RingElement.lefschetz() + 1 - valence)
    else:
        logging.debug(f"Vertex {v.id}: cover of E° has {count} components of genus {genus}, no class in R")
    return Stratum(frozenset({v.id}), stratum_class, chi, adjacency, torus_cell=False, cover_class=cover)


def graph_to_config(graph: ResolutionGraph) -> Configuration:
    diagnostics = graph.validate()
    if diagnostics:
        raise InvalidConfigurationError(diagnostics)

    point = sp.Poly(1, L, domain=sp.ZZ)
    components = [Component(v.id, v.multiplicity) for v in graph.vertices]
    strata = [_vertex_stratum(graph, v) for v in graph.vertices]
    for a, b in graph.edges:
        strata.append(Stratum(frozenset({a, b}), point, 1, frozenset({a, b})))
    for aid, arrow in zip(graph.arrow_ids(), graph.arrows):
        components.append(Component(aid, arrow.multiplicity))
        feet = frozenset({aid, arrow.vertex})
        strata.append(Stratum(frozenset({aid}), None, 0, feet, torus_cell=False))
        strata.append(Stratum(feet, point, 1, feet))

    logging.debug(f"Resolution graph with {len(graph.vertices)} vertices and "
                  f"{len(graph.arrows)} branches converted to {len(strata)} strata")
    return Configuration.build(2, components, strata)


def motivic_milnor_fiber(graph: ResolutionGraph, selection: MilnorSelection) -> RingElement:
    return motive(graph_to_config(graph), selection.checked())


def acampo_zeta(graph: ResolutionGraph, selection: MilnorSelection) -> CyclotomicRational:
    return zeta_closed_form(graph_to_config(graph), selection.checked())


def milnor_euler(graph: ResolutionGraph, selection: MilnorSelection) -> int:
    return sum(graph.vertex(vid).multiplicity * graph.open_euler(vid) for vid in selection.checked())


def milnor_number(graph: ResolutionGraph, selection: MilnorSelection) -> int:
    return 1 - milnor_euler(graph, selection)


def monodromy_polynomial(graph: ResolutionGraph, selection: MilnorSelection) -> sp.Poly:
    """det(1 - tT) on the first cohomology of the Milnor fiber, (1 - t)*zeta(t)."""
    return (acampo_zeta(graph, selection) * CyclotomicRational.factor(1)).as_polynomial()
