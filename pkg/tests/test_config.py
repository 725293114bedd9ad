import pytest

from micover.tools.utils.config import (
    ADJACENCY, CLOSURE, DIMENSION, EULER_MISMATCH, FINITE_TYPE, MISSING_CLASS, UNKNOWN_COMPONENT,
    Component, Configuration, Stratum,
    adjacency_gcd, cover_class, cover_component_count, format_stratum, gcd_multiplicity, sorted_ids, validate,
)
from micover.tools.utils.errors import MissingStratumError, UnknownComponentError, UnrepresentableCoverError
from micover.tools.utils.ring import L, RingElement

from conftest import coordinate_config, poly


def kinds(config: Configuration) -> set[str]:
    return {d.kind for d in validate(config)}


def test_fixture_configurations_are_valid(load_config):
    for name in ["example_a.json", "example_a_single.json", "example_b.json", "example_c.json",
                 "example_d.json", "example_e.json", "mstar_zero.json", "xy_germ.json"]:
        assert validate(load_config(name)) == [], name


def test_zero_multiplicity_is_a_finite_type_violation(load_config):
    diagnostics = validate(load_config("zero_multiplicity.json"))
    assert [d.kind for d in diagnostics] == [FINITE_TYPE]
    assert diagnostics[0].subject == "component 1"


def test_zero_multiplicity_with_explicit_covers_is_accepted():
    one = poly(1)
    config = Configuration.build(1, [Component("1", 0)], [
        Stratum(frozenset({"1"}), one, 1, frozenset({"1"}), cover_class=RingElement.mu(3)),
    ])
    assert validate(config) == []


def test_euler_mismatch():
    config = Configuration.build(1, [Component("1", 2)], [
        Stratum(frozenset({"1"}), poly(L - 1), 1, frozenset({"1"})),
    ])
    assert kinds(config) == {EULER_MISMATCH}


def test_missing_face():
    config = Configuration.build(2, [Component("1", 2), Component("2", 3)], [
        Stratum(frozenset({"1"}), poly(L - 1), 0, frozenset({"1", "2"})),
        Stratum(frozenset({"1", "2"}), poly(1), 1, frozenset({"1", "2"})),
    ])
    diagnostics = validate(config)
    assert [d.kind for d in diagnostics] == [CLOSURE]
    assert "{2}" in diagnostics[0].message


def test_unknown_component_and_adjacency():
    config = Configuration.build(2, [Component("1", 2)], [
        Stratum(frozenset({"1"}), poly(L), 1, frozenset({"1", "9"})),
    ])
    assert kinds(config) == {UNKNOWN_COMPONENT}

    config = Configuration.build(2, [Component("1", 2)], [
        Stratum(frozenset({"1"}), poly(L), 1, frozenset()),
    ])
    assert kinds(config) == {ADJACENCY}


def test_too_many_components_for_dimension():
    config = coordinate_config([1, 2, 3])
    squeezed = Configuration(2, config.components, config.strata)
    assert DIMENSION in kinds(squeezed)


def test_torus_cell_needs_a_class():
    config = Configuration.build(1, [Component("1", 2)], [
        Stratum(frozenset({"1"}), None, 0, frozenset({"1"})),
    ])
    assert kinds(config) == {MISSING_CLASS}

    config = Configuration.build(1, [Component("1", 2)], [
        Stratum(frozenset({"1"}), None, 0, frozenset({"1"}), torus_cell=False),
    ])
    assert validate(config) == []


def test_cover_counts(load_config):
    config = load_config("example_a.json")
    assert cover_component_count(config, {"1"}) == 2
    assert gcd_multiplicity(config, {"1"}) == 4
    assert cover_class(config, {"1", "2"}) == RingElement.mu(2)

    config = load_config("example_b.json")
    assert gcd_multiplicity(config, {"2", "3"}) == 2
    assert cover_component_count(config, {"1", "2", "3"}) == 2


def test_negative_multiplicities_use_absolute_values():
    config = coordinate_config([3, -6])
    assert cover_component_count(config, {"1", "2"}) == 3


def test_cover_of_non_torus_cell_without_class_is_unrepresentable():
    config = Configuration.build(1, [Component("1", 2)], [
        Stratum(frozenset({"1"}), poly(L + 1), 2, frozenset({"1"}), torus_cell=False),
    ])
    with pytest.raises(UnrepresentableCoverError) as e:
        cover_class(config, {"1"})
    assert e.value.stratum == "{1}"


def test_explicit_cover_class_wins():
    explicit = RingElement.mu(2) * (RingElement.lefschetz() - 2)
    config = Configuration.build(1, [Component("1", 2)], [
        Stratum(frozenset({"1"}), poly(L - 1), 0, frozenset({"1"}), torus_cell=False, cover_class=explicit),
    ])
    assert cover_class(config, {"1"}) == explicit


def test_missing_stratum_and_unknown_component(load_config):
    config = load_config("example_a.json")
    with pytest.raises(MissingStratumError):
        config.stratum({"3"})
    with pytest.raises(KeyError):
        config.stratum({"1", "3"})
    with pytest.raises(UnknownComponentError) as e:
        adjacency_gcd({"1", "7"}, config.multiplicities)
    assert e.value.component == "7"


def test_ordering_and_formatting():
    assert sorted_ids(["10", "*", "2", "a"]) == ["2", "10", "*", "a"]
    assert format_stratum({"2", "1", "*"}) == "{1,2,*}"
    config = coordinate_config([1, 2, 3])
    assert [s.name for s in config.ordered_strata()][:4] == ["{1}", "{2}", "{3}", "{1,2}"]


def test_configuration_is_immutable(load_config):
    config = load_config("example_a.json")
    with pytest.raises(TypeError):
        config.strata[frozenset({"9"})] = None  # type: ignore[index]
