import math
import random
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from micover.tools.utils.blowup import (
    BlowupCenter, blowup, center_contribution, center_strata, check_invariance, compare_blowup,
    fresh_component_id, recover_containing, validate_center,
)
from micover.tools.utils.config import (
    Component, Configuration, Stratum, adjacency_gcd, cover_component_count, validate,
)
from micover.tools.utils.errors import InvalidCenterError, UnrepresentableCoverError
from micover.tools.utils.generate import random_case
from micover.tools.utils.motive import breakdown
from micover.tools.utils.ring import L, RingElement

from conftest import coordinate_config, poly

mu = RingElement.mu
Lf = RingElement.lefschetz()


def exceptional_part(config: Configuration, star: str = "*") -> RingElement:
    total = RingElement.zero()
    for item in breakdown(config, lambda key: star in key):
        total = total + item.term
    return total


def test_blowup_of_two_curves_matches_fixture(load_config, load_center):
    blown = blowup(load_config("example_a.json"), load_center("example_a_center.json"))
    expected = load_config("example_a_blown.json")
    assert dict(blown.components) == dict(expected.components)
    assert dict(blown.strata) == dict(expected.strata)


def test_fresh_component_id(load_config, load_center):
    config = load_config("example_a.json")
    assert fresh_component_id(config) == "*"
    blown = blowup(config, load_center("example_a_point1_center.json"))
    assert fresh_component_id(blown) == "*1"


def test_exceptional_multiplicity_is_the_sum(load_config, load_center):
    blown = blowup(load_config("example_b.json"), load_center("example_b_center.json"))
    assert blown.components["*"].multiplicity == 12


@pytest.mark.parametrize("m1,m2,m3", product(range(1, 7), repeat=3))
def test_triple_point(m1, m2, m3):
    config = coordinate_config([m1, m2, m3])
    center = BlowupCenter(frozenset({"1", "2", "3"}), codim=3, is_full_intersection=True)
    g = math.gcd(m1, m2, m3)
    expected = mu(g) * ((Lf - 1) ** 2 - 3 * (Lf - 1) ** 2 + 3 * (Lf - 1) ** 2)
    assert expected == mu(g) * (Lf - 1) ** 2
    assert exceptional_part(blowup(config, center)) == expected
    assert check_invariance(config, center, {"1", "2", "3"}).passed


def test_point_on_a_curve_of_double_points(load_config, load_center):
    config = load_config("example_c.json")
    center = load_center("example_c_center.json")
    m = 2
    expected = mu(m) * Lf * (Lf - 1) - 2 * mu(m) * Lf * (Lf - 1) + mu(m) * (Lf - 1) ** 2
    assert expected == -mu(m) * (Lf - 1)
    blown = blowup(config, center)
    assert exceptional_part(blown) == expected
    assert center_contribution(config, center) == expected
    assert blown.strata[frozenset({"1", "2"})].stratum_class == poly(L - 1)


@pytest.mark.parametrize("config_name,center_name", [
    ("example_a.json", "example_a_center.json"),
    ("example_a_single.json", "example_a_single_center.json"),
    ("example_b.json", "example_b_center.json"),
    ("example_c.json", "example_c_center.json"),
    ("example_d.json", "example_d_center.json"),
    ("example_d.json", "example_d_strict_center.json"),
    ("example_e.json", "example_e_center.json"),
    ("mstar_zero.json", "mstar_zero_center.json"),
])
def test_invariance_on_fixtures(config_name, center_name, load_config, load_center):
    config = load_config(config_name)
    center = load_center(center_name)
    ids = sorted(config.components)
    for size in range(1, len(ids) + 1):
        for selection in (set(ids[:size]), set(ids[-size:])):
            verdict = check_invariance(config, center, selection)
            assert verdict.passed, f"A={selection}: {verdict.difference}"
            assert verdict.exceptional_id == "*"


def test_transversal_strata_cancel(load_config, load_center):
    config = load_config("example_e.json")
    blown = blowup(config, load_center("example_e_center.json"))
    for K in [frozenset(), frozenset({"3"}), frozenset({"4"}), frozenset({"3", "4"})]:
        assert frozenset({"1", "2"}) | K not in blown.strata
        for G in [frozenset(), frozenset({"1"}), frozenset({"2"})]:
            assert G | K | {"*"} in blown.strata
    assert frozenset({"1", "2", "*"}) not in blown.strata
    assert validate(blown) == []


def test_selection_away_from_the_center(load_config, load_center):
    config = load_config("example_d.json")
    center = load_center("example_d_strict_center.json")
    for selection in [{"2"}, {"3"}, {"2", "3"}]:
        assert check_invariance(config, center, selection).passed


def test_unaffected_strata_are_identical(load_config, load_center):
    config = load_config("example_d.json")
    center = load_center("example_d_strict_center.json")
    blown = blowup(config, center)
    for key, stratum in config.strata.items():
        if not center.containing <= key:
            assert blown.strata[key] is stratum


def test_exceptional_cover_counts_match_the_center(load_config, load_center):
    config = load_config("example_d.json")
    center = load_center("example_d_strict_center.json")
    blown = blowup(config, center)
    multiplicities = config.multiplicities
    for K, z in center.strata.items():
        count = adjacency_gcd(z.adjacency, multiplicities)
        for G in [frozenset(), frozenset({"1"})]:
            assert cover_component_count(blown, G | K | {"*"}) == count


def test_vanishing_exceptional_multiplicity(load_config, load_center):
    config = load_config("mstar_zero.json")
    blown = blowup(config, load_center("mstar_zero_center.json"))
    assert blown.components["*"].multiplicity == 0
    assert blown.strata[frozenset({"*"})].cover_class == mu(3) * (Lf - 1)
    assert all(s.cover_class is not None for key, s in blown.strata.items() if "*" in key)
    assert validate(blown) == []


def test_vanishing_exceptional_multiplicity_needs_a_representable_center():
    config = Configuration.build(2, [Component("1", 3), Component("2", -3)], [
        Stratum(frozenset({"1"}), poly(L - 1), 0, frozenset({"1", "2"})),
        Stratum(frozenset({"2"}), poly(L - 1), 0, frozenset({"1", "2"})),
        Stratum(frozenset({"1", "2"}), poly(1), 1, frozenset({"1", "2"}), torus_cell=False),
    ])
    center = BlowupCenter(frozenset({"1", "2"}), codim=2, is_full_intersection=True)
    with pytest.raises(UnrepresentableCoverError):
        blowup(config, center)


def test_corrupted_blowup_fails(load_config):
    verdict = compare_blowup(load_config("example_a.json"), load_config("example_a_blown_corrupted.json"),
                             {"1", "2"})
    assert not verdict.passed
    assert verdict.difference
    assert verdict.exceptional_id == "*"


def test_supplied_blowup_passes(load_config):
    before = load_config("example_a.json")
    after = load_config("example_a_blown.json")
    assert recover_containing(before, after) == {"1", "2"}
    assert compare_blowup(before, after, {"1", "2"}).passed


def test_disjoint_centers_commute(load_config, load_center):
    config = load_config("example_a.json")
    first = load_center("example_a_point1_center.json")
    second = load_center("example_a_point2_center.json")
    one = blowup(blowup(config, first, "p"), second, "q")
    other = blowup(blowup(config, second, "q"), first, "p")
    assert dict(one.components) == dict(other.components)
    assert dict(one.strata) == dict(other.strata)


@pytest.mark.parametrize("center,fragment", [
    (BlowupCenter(frozenset({"1", "2"}), codim=3, is_full_intersection=True), "codimension"),
    (BlowupCenter(frozenset({"1", "2"}), codim=2, is_full_intersection=True), "not transversal"),
    (BlowupCenter(frozenset({"1"}), frozenset({"1"}), codim=2), "both contain and cross"),
    (BlowupCenter(frozenset({"1"}), codim=2), "open stratum"),
    (BlowupCenter(frozenset({"1"}), codim=1), "< 2"),
    (BlowupCenter(frozenset({"9"}), codim=2), "unknown component"),
])
def test_invalid_centers(center, fragment, load_config):
    config = load_config("example_b.json")
    diagnostics = validate_center(config, center)
    assert any(fragment in d.message for d in diagnostics), diagnostics
    with pytest.raises(InvalidCenterError):
        blowup(config, center)


def test_strict_center_stratum_must_be_downward_closed(load_config, load_center):
    config = load_config("example_d.json")
    center = load_center("example_d_strict_center.json")
    broken = BlowupCenter(center.containing, center.transversal, center.codim, False,
                          {K: z for K, z in center.strata.items() if K})
    assert validate_center(config, broken)


def test_exceptional_id_must_be_fresh(load_config, load_center):
    with pytest.raises(InvalidCenterError):
        blowup(load_config("example_a.json"), load_center("example_a_center.json"), exceptional_id="1")


def assert_exceptional_cover_counts(config: Configuration, center: BlowupCenter, star: str) -> None:
    blown = blowup(config, center, star)
    strata = center_strata(config, center)
    multiplicities = config.multiplicities
    for key in blown.strata:
        if star in key:
            z = strata[key & center.transversal]
            assert cover_component_count(blown, key) == adjacency_gcd(z.adjacency, multiplicities), key


@pytest.mark.slow
def test_random_sweep():
    rng = random.Random(20240611)
    full = strict = vanishing = 0
    for _ in range(500):
        case = random_case(rng)
        verdict = check_invariance(case.config, case.center, case.selection)
        assert verdict.passed, (case, verdict.difference)
        assert_exceptional_cover_counts(case.config, case.center, verdict.exceptional_id)
        full += case.center.is_full_intersection
        strict += not case.center.is_full_intersection
        vanishing += sum(case.config.components[i].multiplicity for i in case.center.containing) == 0
    assert full and strict and vanishing


@settings(max_examples=50, deadline=None)
@given(st.randoms(use_true_random=False))
def test_random_invariance(rng):
    case = random_case(rng, max_dim=4, max_components=4, max_multiplicity=4)
    verdict = check_invariance(case.config, case.center, case.selection)
    assert verdict.passed
    assert_exceptional_cover_counts(case.config, case.center, verdict.exceptional_id)
