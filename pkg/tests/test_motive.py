import math
import random

import pytest
from hypothesis import given, settings, strategies as st

from micover.tools.utils.blowup import blowup, center_contribution
from micover.tools.utils.config import Component, Configuration, Stratum
from micover.tools.utils.errors import InvalidConfigurationError, SelectionError
from micover.tools.utils.generate import random_configuration
from micover.tools.utils.motive import breakdown, meets, motive, motive_restricted, stratum_term
from micover.tools.utils.ring import L, RingElement

from conftest import coordinate_config, poly

mu = RingElement.mu
Lf = RingElement.lefschetz()


def exceptional_part(config: Configuration, star: str = "*") -> RingElement:
    total = RingElement.zero()
    for item in breakdown(config, lambda key: star in key):
        total = total + item.term
    return total


def test_example_a_motive(load_config):
    config = load_config("example_a.json")
    assert motive(config, {"1", "2"}) == mu(2) * (Lf - 1)
    assert motive(config, {"1"}) == RingElement.zero()


@pytest.mark.parametrize("m1", range(1, 11))
def test_example_a_contributions_agree(m1, load_center):
    center = load_center("example_a_center.json")
    for m2 in range(1, 11):
        config = coordinate_config([m1, m2])
        expected = -mu(math.gcd(m1, m2)) * (Lf - 1)
        assert center_contribution(config, center) == expected
        assert exceptional_part(blowup(config, center)) == expected


@pytest.mark.parametrize("m", range(1, 11))
def test_example_a_single_component(m, load_config, load_center):
    base = load_config("example_a_single.json")
    config = Configuration(2, {"1": Component("1", m)}, base.strata)
    center = load_center("example_a_single_center.json")
    assert motive(config, {"1"}) == mu(m) * Lf
    assert center_contribution(config, center) == mu(m)
    assert exceptional_part(blowup(config, center)) == mu(m) * Lf - mu(m) * (Lf - 1) == mu(m)


def test_breakdown_signs_and_order(load_config):
    config = load_config("example_b.json")
    items = breakdown(config, meets(frozenset({"1", "2", "3"})))
    assert [item.name for item in items] == ["{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}", "{1,2,3}"]
    assert [item.sign for item in items] == [1, 1, 1, -1, -1, -1, 1]
    assert items[-1].term == mu(2) * (Lf - 1) ** 2


def test_stratum_term(load_config):
    config = load_config("example_c.json")
    assert stratum_term(config, {"1", "2"}) == -mu(2) * Lf * (Lf - 1)


def test_empty_strata_are_skipped():
    config = Configuration.build(1, [Component("1", 2), Component("2", 3)], [
        Stratum(frozenset({"1"}), poly(L), 1, frozenset({"1"})),
        Stratum(frozenset({"2"}), poly(0), 0, frozenset({"2"})),
    ])
    assert [item.name for item in breakdown(config, meets(frozenset({"1", "2"})))] == ["{1}"]
    assert motive(config, {"2"}) == RingElement.zero()


def test_selection_errors(load_config):
    config = load_config("example_a.json")
    with pytest.raises(SelectionError):
        motive(config, set())
    with pytest.raises(SelectionError, match="7"):
        motive(config, {"1", "7"})


def test_invalid_configuration_is_rejected(load_config):
    with pytest.raises(InvalidConfigurationError) as e:
        motive(load_config("zero_multiplicity.json"), {"2"})
    assert len(e.value.diagnostics) == 1


def test_normal_crossing_germ(load_config):
    config = load_config("xy_germ.json")
    assert motive(config, {"1", "2"}) == mu(2) * (Lf - 1)


def random_selection(rng: random.Random, config: Configuration) -> frozenset[str]:
    ids = sorted(config.components)
    return frozenset(rng.sample(ids, rng.randint(1, len(ids))))


def scaled(config: Configuration, factor: int) -> Configuration:
    components = [Component(c.id, factor * c.multiplicity) for c in config.components.values()]
    return Configuration.build(config.ambient_dim, components, config.strata.values())


@settings(max_examples=50, deadline=None)
@given(st.randoms(use_true_random=False), st.integers(2, 5))
def test_scaling_multiplicities_scales_mu_orders(rng, factor):
    config = random_configuration(rng, max_dim=4, max_components=4, min_dim=1)
    selection = random_selection(rng, config)
    x = motive(config, selection)
    y = motive(scaled(config, factor), selection)
    assert y.mu_orders() == [factor * n for n in x.mu_orders()]
    for n in x.mu_orders():
        assert y.l_part(factor * n) == x.l_part(n)


def test_motive_is_the_sum_of_stratum_terms():
    rng = random.Random(5)
    for _ in range(100):
        config = random_configuration(rng, min_dim=1)
        selection = random_selection(rng, config)
        total = RingElement.zero()
        for key in config.strata:
            if key & selection:
                total = total + stratum_term(config, key)
        assert total == motive(config, selection)


@settings(max_examples=50, deadline=None)
@given(st.randoms(use_true_random=False))
def test_motive_depends_only_on_the_strata_met(rng):
    config = random_configuration(rng, max_dim=4, max_components=5, min_dim=1)
    selection = random_selection(rng, config)
    met = {key for key in config.strata if key & selection}
    assert motive(config, selection) == motive_restricted(config, lambda key: key in met)


def test_selections_meeting_the_same_strata_agree():
    config = Configuration.build(2, [Component("1", 2), Component("2", 3)], [
        Stratum(frozenset({"1"}), poly(L), 1, frozenset({"1"})),
        Stratum(frozenset({"2"}), poly(0), 0, frozenset({"2"})),
        Stratum(frozenset({"1", "2"}), poly(1), 1, frozenset({"1", "2"})),
    ])
    assert motive(config, {"1"}) == motive(config, {"1", "2"}) == mu(2) * Lf - (Lf - 1)
    assert motive(config, {"2"}) == -(Lf - 1)
