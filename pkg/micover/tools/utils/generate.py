"""Random torus-cell configurations and blow-up centers."""
import logging
import random
from dataclasses import dataclass
from itertools import combinations

import sympy as sp

from .blowup import BlowupCenter
from .config import Component, Configuration, Stratum, sorted_ids
from .ring import L


@dataclass(frozen=True)
class RandomCase:
    config: Configuration
    center: BlowupCenter
    selection: frozenset[str]


def torus_cell_class(rng: random.Random, dimension: int) -> tuple[sp.Poly, int]:
    """Class L^a (L-1)^b with a + b = dimension, and b."""
    b = rng.randint(0, dimension)
    return sp.Poly(L ** (dimension - b) * (L - 1) ** b, L, domain=sp.ZZ), b


def _torus_stratum(rng: random.Random, key: frozenset[str], dimension: int, ids: list[str]) -> Stratum:
    stratum_class, b = torus_cell_class(rng, dimension)
    adjacency = set(key)
    if b:
        adjacency |= {c for c in ids if c not in key and rng.random() < 0.4}
    return Stratum(
        components=key,
        stratum_class=stratum_class,
        euler=1 if b == 0 else 0,
        adjacency=frozenset(adjacency),
    )


def _multiplicity(rng: random.Random, bound: int) -> int:
    return rng.choice([m for m in range(-bound, bound + 1) if m])


def random_configuration(rng: random.Random, max_dim: int = 5, max_components: int = 6,
                         max_multiplicity: int = 6, min_dim: int = 2) -> Configuration:
    """A valid configuration of torus cells with downward-closed strata."""
    dim = rng.randint(min_dim, max_dim)
    ids = [str(i) for i in range(1, rng.randint(1, max_components) + 1)]
    components = [Component(c, _multiplicity(rng, max_multiplicity)) for c in ids]

    keys: list[frozenset[str]] = [frozenset({c}) for c in ids]
    present = set(keys)
    for size in range(2, min(dim, len(ids)) + 1):
        for subset in combinations(ids, size):
            key = frozenset(subset)
            faces = (key - {c} for c in key)
            if all(face in present for face in faces) and rng.random() < 0.5:
                keys.append(key)
                present.add(key)

    strata = [_torus_stratum(rng, key, dim - len(key), ids) for key in keys]
    return Configuration.build(dim, components, strata)


def _full_center(config: Configuration, I: frozenset[str]) -> BlowupCenter:
    transversal = frozenset().union(*(key - I for key in config.strata if I <= key))
    return BlowupCenter(I, transversal, codim=len(I), is_full_intersection=True)


def _strict_center(rng: random.Random, config: Configuration, I: frozenset[str]) -> BlowupCenter | None:
    k = len(I)
    if k + 1 > config.ambient_dim:
        return None
    codim = rng.randint(k + 1, config.ambient_dim)
    room = config.ambient_dim - codim
    candidates = sorted_ids({c for key in config.strata if I <= key and len(key) == k + 1 for c in key - I})
    transversal = frozenset(rng.sample(candidates, min(len(candidates), room, rng.randint(0, 2))))

    ids = sorted_ids(config.components)
    strata = {}
    for size in range(len(transversal) + 1):
        for subset in combinations(sorted_ids(transversal), size):
            K = frozenset(subset)
            if I | K not in config.strata:
                continue
            z = _torus_stratum(rng, I | K, config.ambient_dim - codim - len(K), ids)
            strata[K] = z
    return BlowupCenter(I, transversal, codim=codim, is_full_intersection=False, strata=strata)


def _cancel_exceptional_multiplicity(config: Configuration, I: frozenset[str], bound: int) -> Configuration:
    """Adjust one multiplicity in I so that they sum to zero, when possible."""
    ordered = sorted_ids(I)
    last = ordered[-1]
    rest = sum(config.components[c].multiplicity for c in ordered[:-1])
    if rest == 0 or abs(rest) > bound:
        return config
    components = dict(config.components)
    components[last] = Component(last, -rest)
    return Configuration(config.ambient_dim, components, config.strata)


def random_case(rng: random.Random, max_dim: int = 5, max_components: int = 6,
                max_multiplicity: int = 6) -> RandomCase:
    """A configuration, a valid center on it and a selection A."""
    while True:
        config = random_configuration(rng, max_dim, max_components, max_multiplicity)
        I = rng.choice(sorted(config.strata, key=lambda key: sorted_ids(key)))
        if len(I) >= 2 and rng.random() < 0.2:
            config = _cancel_exceptional_multiplicity(config, I, max_multiplicity)

        center: BlowupCenter | None
        if len(I) >= 2 and rng.random() < 0.5:
            center = _full_center(config, I)
        else:
            center = _strict_center(rng, config, I)
        if center is None:
            logging.debug(f"No center of codimension > {len(I)} fits, drawing again")
            continue

        ids = sorted_ids(config.components)
        selection = frozenset(rng.sample(ids, rng.randint(1, len(ids))))
        return RandomCase(config, center, selection)
