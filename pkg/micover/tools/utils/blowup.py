"""Blow-ups of SNC configurations along centers with normal crossings.

Notation: Z is contained in the components I (k = |I|), meets the components
T transversally and has codimension r+1 in X. Z is stratified by
Z°_K = Z ∩ E°_{I∪K}, K ⊆ T. The exceptional divisor E_* = P(normal bundle)
has fibre P^r over every point of Z, and for G ⊆ I the stratum
L_{G∪K} = E_* ∩ E'_G ∩ E'_K minus the remaining E'_i is a Zariski locally
trivial fibration over Z°_K with fibre

    C^(r-k+1) x (C*)^(k-|G|-1)    for G ≠ I,
    P^(r-k)                       for G = I (only when Z ≠ E_I).
"""
import logging
from dataclasses import dataclass, field, replace
from itertools import combinations
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

import sympy as sp

from .config import (
    CLOSURE, DIMENSION, EULER_MISMATCH, UNKNOWN_COMPONENT, ADJACENCY,
    Component, Configuration, Diagnostic, Stratum,
    format_stratum, sorted_ids, stratum_cover, validate,
)
from .errors import InvalidCenterError, InvalidConfigurationError, UnrepresentableCoverError
from .motive import StratumContribution, check_selection, contribution
from .ring import L, RingElement, evaluate_at_one, from_polynomial, projective_class

CENTER = "center violation"


@dataclass(frozen=True)
class BlowupCenter:
    containing: frozenset[str]
    transversal: frozenset[str] = frozenset()
    codim: int = 2
    is_full_intersection: bool = False
    strata: Mapping[frozenset[str], Stratum] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "strata", MappingProxyType(dict(self.strata)))

    @property
    def k(self) -> int:
        return len(self.containing)

    @property
    def r(self) -> int:
        return self.codim - 1


@dataclass(frozen=True)
class InvarianceVerdict:
    passed: bool
    difference: RingElement
    exceptional_id: str
    before: list[StratumContribution]
    after: list[StratumContribution]


def _subsets(items: Iterable[str]) -> Iterator[frozenset[str]]:
    ordered = sorted_ids(items)
    for size in range(len(ordered) + 1):
        for subset in combinations(ordered, size):
            yield frozenset(subset)


def fresh_component_id(config: Configuration) -> str:
    candidate, index = "*", 0
    while candidate in config.components:
        index += 1
        candidate = f"*{index}"
    return candidate


def validate_center(config: Configuration, center: BlowupCenter) -> list[Diagnostic]:
    diagnostics = []
    subject = f"center {format_stratum(center.containing)}"
    known = config.component_ids()
    I = center.containing

    for c in sorted_ids((I | center.transversal) - known):
        diagnostics.append(Diagnostic(UNKNOWN_COMPONENT, subject, f"references unknown component '{c}'"))
    if not I:
        diagnostics.append(Diagnostic(CENTER, subject, "no containing component"))
    if I & center.transversal:
        diagnostics.append(Diagnostic(CENTER, subject,
                                      f"components {format_stratum(I & center.transversal)} both contain and cross Z"))
    if center.codim < 2:
        diagnostics.append(Diagnostic(DIMENSION, subject, f"codimension {center.codim} < 2"))
    if center.codim > config.ambient_dim:
        diagnostics.append(Diagnostic(DIMENSION, subject,
                                      f"codimension {center.codim} exceeds ambient dimension {config.ambient_dim}"))
    if I not in config.strata:
        diagnostics.append(Diagnostic(CENTER, subject, f"no stratum {format_stratum(I)} contains Z"))
    if diagnostics:
        return diagnostics

    if center.is_full_intersection:
        if center.codim != center.k:
            diagnostics.append(Diagnostic(DIMENSION, subject,
                                          f"Z = E_I has codimension {center.k}, not {center.codim}"))
        if center.strata:
            diagnostics.append(Diagnostic(CENTER, subject, "center strata given for Z = E_I"))
        for key in config.strata:
            if I <= key and not (key - I) <= center.transversal:
                diagnostics.append(Diagnostic(CENTER, subject,
                                              f"stratum {format_stratum(key)} meets Z but is not transversal"))
        return diagnostics

    if center.codim <= center.k:
        diagnostics.append(Diagnostic(DIMENSION, subject,
                                      f"Z ⊊ E_I needs codimension > {center.k}, got {center.codim}"))
    if frozenset() not in center.strata:
        diagnostics.append(Diagnostic(CENTER, subject, "missing the open stratum Z°"))
    for K, z in center.strata.items():
        name = f"{subject} stratum {format_stratum(K)}"
        if not K <= center.transversal:
            diagnostics.append(Diagnostic(CENTER, name, "indexed by non-transversal components"))
            continue
        if z.components != I | K:
            diagnostics.append(Diagnostic(CENTER, name, f"components must be {format_stratum(I | K)}"))
        if I | K not in config.strata:
            diagnostics.append(Diagnostic(CLOSURE, name, f"lies in missing stratum {format_stratum(I | K)}"))
        if center.codim + len(K) > config.ambient_dim:
            diagnostics.append(Diagnostic(DIMENSION, name, "Z ∩ E_K has negative dimension"))
        if not (I | K) <= z.adjacency:
            diagnostics.append(Diagnostic(ADJACENCY, name, f"adjacency must contain {format_stratum(I | K)}"))
        for c in sorted_ids(z.adjacency - known):
            diagnostics.append(Diagnostic(UNKNOWN_COMPONENT, name, f"references unknown component '{c}'"))
        if z.stratum_class is not None and evaluate_at_one(z.stratum_class) != z.euler:
            diagnostics.append(Diagnostic(EULER_MISMATCH, name,
                                          f"euler {z.euler} but class(1) = {evaluate_at_one(z.stratum_class)}"))
        for face in _subsets(K):
            if face != K and face not in center.strata:
                diagnostics.append(Diagnostic(CLOSURE, name, f"missing center face {format_stratum(face)}"))
    return diagnostics


def center_strata(config: Configuration, center: BlowupCenter) -> dict[frozenset[str], Stratum]:
    """Strata Z°_K of the center, keyed by K ⊆ T."""
    if not center.is_full_intersection:
        return dict(center.strata)
    return {
        key - center.containing: stratum
        for key, stratum in config.strata.items()
        if center.containing <= key
    }


def _fibre(center: BlowupCenter, G: frozenset[str]) -> sp.Poly:
    if G == center.containing:
        return projective_class(center.r - center.k).to_polynomial()
    torus_rank = center.k - len(G) - 1
    return sp.Poly(L ** (center.r - center.k + 1) * (L - 1) ** torus_rank, L, domain=sp.ZZ)


def _exceptional_stratum(z: Stratum, key: frozenset[str], fibre: sp.Poly, star: str,
                         m_star: int, multiplicities: Mapping[str, int]) -> Stratum:
    fibre_euler = evaluate_at_one(fibre)
    explicit = None
    if m_star == 0 or z.cover_class is not None:
        explicit = stratum_cover(z, multiplicities) * from_polynomial(fibre)
    return Stratum(
        components=key,
        stratum_class=z.stratum_class * fibre if z.stratum_class is not None else None,
        euler=z.euler * fibre_euler,
        adjacency=z.adjacency | {star},
        torus_cell=z.torus_cell,
        cover_class=explicit,
    )


def _proper_transform(stratum: Stratum, z: Stratum, star: str, multiplicities: Mapping[str, int]) -> Stratum:
    if stratum.stratum_class is not None and z.stratum_class is not None:
        remaining = stratum.stratum_class - z.stratum_class
    else:
        remaining = None
    try:
        explicit: RingElement | None = (stratum_cover(stratum, multiplicities)
                                        - stratum_cover(z, multiplicities))
    except UnrepresentableCoverError as e:
        logging.debug(f"Proper transform of {stratum.name} stays unrepresentable: {e}")
        explicit = None
    return Stratum(
        components=stratum.components,
        stratum_class=remaining,
        euler=stratum.euler - z.euler,
        adjacency=stratum.adjacency | {star},
        torus_cell=False,
        cover_class=explicit,
    )


def blowup(config: Configuration, center: BlowupCenter, exceptional_id: str | None = None) -> Configuration:
    diagnostics = validate(config)
    if diagnostics:
        raise InvalidConfigurationError(diagnostics)
    diagnostics = validate_center(config, center)
    if diagnostics:
        raise InvalidCenterError(diagnostics)

    star = exceptional_id if exceptional_id is not None else fresh_component_id(config)
    if star in config.components:
        raise InvalidCenterError([Diagnostic(CENTER, star, "exceptional id already in use")])

    I = center.containing
    multiplicities = config.multiplicities
    m_star = sum(multiplicities[i] for i in I)
    multiplicities[star] = m_star
    zs = center_strata(config, center)

    logging.debug(f"Blowing up Z ⊆ E_{format_stratum(I)} of codimension {center.codim} "
                 f"({len(zs)} center strata), exceptional component '{star}' with multiplicity {m_star}")
    if m_star == 0:
        logging.debug("Exceptional multiplicity vanishes; exceptional covers are fibred over the center covers")

    strata: dict[frozenset[str], Stratum] = {}
    for key, stratum in config.strata.items():
        K = key - I
        if not I <= key or K not in zs:
            strata[key] = stratum
        elif not center.is_full_intersection:
            strata[key] = _proper_transform(stratum, zs[K], star, multiplicities)

    for K, z in zs.items():
        for G in _subsets(I):
            if G == I and center.is_full_intersection:
                continue
            key = G | K | {star}
            strata[key] = _exceptional_stratum(z, key, _fibre(center, G), star, m_star, multiplicities)

    components = dict(config.components)
    components[star] = Component(star, m_star)
    return Configuration(ambient_dim=config.ambient_dim, components=components, strata=strata)


def center_contribution(config: Configuration, center: BlowupCenter) -> RingElement:
    """Contribution of the strata of Z to S_{X,E}."""
    multiplicities = config.multiplicities
    total = RingElement.zero()
    for K, z in center_strata(config, center).items():
        item = contribution(replace(z, components=center.containing | K), multiplicities)
        if item is not None:
            total = total + item.term
    return total


def _unchanged(key: frozenset[str], before: Configuration, after: Configuration) -> bool:
    if key not in after.strata or before.strata[key] != after.strata[key]:
        return False
    stratum = before.strata[key]
    return all(
        c in after.components and before.components[c] == after.components[c]
        for c in stratum.adjacency | stratum.components
    )


def _changed_keys(before: Configuration, after: Configuration) -> list[frozenset[str]]:
    return [key for key in before.strata if not _unchanged(key, before, after)]


def recover_containing(before: Configuration, after: Configuration) -> frozenset[str]:
    """Components containing the center, read off the two configurations.

    Every stratum altered by the blow-up lies over Z, hence contains I, and
    E°_I itself is always altered.
    """
    changed = _changed_keys(before, after)
    if not changed:
        return frozenset()
    return frozenset.intersection(*changed)


def exceptional_selection(selection: frozenset[str], containing: frozenset[str], star: str) -> frozenset[str]:
    return selection | {star} if selection & containing else selection


def compare_blowup(before: Configuration, after: Configuration, selection: Iterable[str],
                   containing: Iterable[str] | None = None) -> InvarianceVerdict:
    """Compare S^A before a blow-up with S^A' after it.

    Strata present and identical on both sides cancel and are skipped, so only
    strata over the center and on the exceptional divisor need representable covers.
    """
    selected = check_selection(before, selection)
    new_ids = after.component_ids() - before.component_ids()
    if len(new_ids) != 1:
        raise InvalidConfigurationError([Diagnostic(CENTER, "blown-up configuration",
                                                    f"expected one new component, found {len(new_ids)}")])
    (star,) = new_ids
    removed = before.component_ids() - after.component_ids()
    if removed:
        raise InvalidConfigurationError([Diagnostic(CENTER, "blown-up configuration",
                                                    f"components {format_stratum(removed)} disappeared")])

    I = frozenset(containing) if containing is not None else recover_containing(before, after)
    after_selected = exceptional_selection(selected, I, star)
    logging.debug(f"Comparing A = {format_stratum(selected)} with A' = {format_stratum(after_selected)}, "
                  f"center in E_{format_stratum(I)}")

    before_items, after_items = [], []
    for stratum in before.ordered_strata():
        key = stratum.components
        if key & selected and not _unchanged(key, before, after):
            item = contribution(stratum, before.multiplicities)
            if item is not None:
                before_items.append(item)
    for stratum in after.ordered_strata():
        key = stratum.components
        if key & after_selected and (key not in before.strata or not _unchanged(key, before, after)):
            item = contribution(stratum, after.multiplicities)
            if item is not None:
                after_items.append(item)

    difference = RingElement.zero()
    for item in before_items:
        difference = difference + item.term
    for item in after_items:
        difference = difference - item.term
    return InvarianceVerdict(not difference, difference, star, before_items, after_items)


def check_invariance(config: Configuration, center: BlowupCenter, selection: Iterable[str],
                     exceptional_id: str | None = None) -> InvarianceVerdict:
    selected = check_selection(config, selection)
    blown = blowup(config, center, exceptional_id)
    verdict = compare_blowup(config, blown, selected, center.containing)
    logging.debug(f"Center {format_stratum(center.containing)}: difference {verdict.difference}")
    return verdict
