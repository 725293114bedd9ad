import json
import logging
from typing import Any

import sympy as sp

from .blowup import BlowupCenter
from .config import Component, Configuration, Stratum, format_stratum, sorted_ids
from .errors import FormatError, MicoverError, RingParseError, SelectionError
from .milnor import Arrow, MilnorSelection, ResolutionGraph, Vertex, graph_to_config
from .motive import check_selection
from .ring import RingElement, l_polynomial, parse, polynomial_coefficients


def _require(obj: Any, key: str, where: str) -> Any:
    if not isinstance(obj, dict):
        raise FormatError(where, "expected an object")
    if key not in obj:
        raise FormatError(where, f"missing field '{key}'")
    return obj[key]


def _integer(value: Any, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise FormatError(where, f"expected an integer, got {json.dumps(value)}")
    return value


def _boolean(value: Any, where: str) -> bool:
    if not isinstance(value, bool):
        raise FormatError(where, f"expected true or false, got {json.dumps(value)}")
    return value


def _identifier(value: Any, where: str) -> str:
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise FormatError(where, f"expected a component id, got {json.dumps(value)}")
    return str(value)


def _id_list(value: Any, where: str) -> frozenset[str]:
    if not isinstance(value, list):
        raise FormatError(where, "expected a list of component ids")
    return frozenset(_identifier(item, f"{where}[{i}]") for i, item in enumerate(value))


def _list(obj: dict, key: str, where: str, default: list | None = None) -> list:
    value = obj.get(key, default) if default is not None else _require(obj, key, where)
    if not isinstance(value, list):
        raise FormatError(f"{where}.{key}", "expected a list")
    return value


def _class(value: Any, where: str) -> sp.Poly | None:
    if value is None:
        return None
    if not isinstance(value, list):
        raise FormatError(where, "expected a list of [power, coefficient] pairs or null")
    coefficients: dict[int, int] = {}
    for i, pair in enumerate(value):
        if not isinstance(pair, list) or len(pair) != 2:
            raise FormatError(f"{where}[{i}]", "expected a [power, coefficient] pair")
        k = _integer(pair[0], f"{where}[{i}][0]")
        if k < 0:
            raise FormatError(f"{where}[{i}][0]", f"negative power {k}")
        coefficients[k] = coefficients.get(k, 0) + _integer(pair[1], f"{where}[{i}][1]")
    return l_polynomial(coefficients)


def _cover(value: Any, where: str) -> RingElement | None:
    if value is None:
        return None
    if not isinstance(value, str):
        raise FormatError(where, "expected a ring element string")
    try:
        return parse(value)
    except RingParseError as e:
        raise FormatError(where, str(e)) from e


def _stratum(obj: Any, components: frozenset[str], where: str) -> Stratum:
    adjacency = _id_list(_require(obj, "adjacency", where), f"{where}.adjacency")
    return Stratum(
        components=components,
        stratum_class=_class(_require(obj, "class", where), f"{where}.class"),
        euler=_integer(_require(obj, "euler", where), f"{where}.euler"),
        adjacency=adjacency,
        torus_cell=_boolean(obj.get("torus_cell", True), f"{where}.torus_cell"),
        cover_class=_cover(obj.get("cover_class"), f"{where}.cover_class"),
    )


def load_configuration(data: Any, where: str = "configuration") -> Configuration:
    ambient_dim = _integer(_require(data, "ambient_dim", where), f"{where}.ambient_dim")
    components = []
    for i, item in enumerate(_list(data, "components", where)):
        name = f"{where}.components[{i}]"
        components.append(Component(
            _identifier(_require(item, "id", name), f"{name}.id"),
            _integer(_require(item, "multiplicity", name), f"{name}.multiplicity"),
        ))
    strata = []
    for i, item in enumerate(_list(data, "strata", where)):
        name = f"{where}.strata[{i}]"
        key = _id_list(_require(item, "components", name), f"{name}.components")
        strata.append(_stratum(item, key, name))

    ids = [c.id for c in components]
    duplicates = {c for c in ids if ids.count(c) > 1}
    if duplicates:
        raise FormatError(f"{where}.components", f"duplicate ids {', '.join(sorted_ids(duplicates))}")
    keys = [s.components for s in strata]
    repeated = [k for k in keys if keys.count(k) > 1]
    if repeated:
        raise FormatError(f"{where}.strata", f"stratum {format_stratum(repeated[0])} listed twice")
    return Configuration.build(ambient_dim, components, strata)


def load_center(data: Any, where: str = "center") -> BlowupCenter:
    containing = _id_list(_require(data, "containing", where), f"{where}.containing")
    transversal = _id_list(data.get("transversal", []), f"{where}.transversal")
    strata = {}
    for i, item in enumerate(_list(data, "strata", where, default=[])):
        name = f"{where}.strata[{i}]"
        K = _id_list(item.get("transversal", []) if isinstance(item, dict) else None, f"{name}.transversal")
        if K in strata:
            raise FormatError(name, "center stratum listed twice")
        strata[K] = _stratum(item, containing | K, name)
    return BlowupCenter(
        containing=containing,
        transversal=transversal,
        codim=_integer(_require(data, "codim", where), f"{where}.codim"),
        is_full_intersection=_boolean(data.get("full_intersection", False), f"{where}.full_intersection"),
        strata=strata,
    )


def load_graph(data: Any, where: str = "graph") -> ResolutionGraph:
    vertices = []
    for i, item in enumerate(_list(data, "vertices", where)):
        name = f"{where}.vertices[{i}]"
        vertices.append(Vertex(
            id=_identifier(_require(item, "id", name), f"{name}.id"),
            multiplicity=_integer(_require(item, "multiplicity", name), f"{name}.multiplicity"),
            genus=_integer(item.get("genus", 0), f"{name}.genus"),
            exceptional=_boolean(item.get("exceptional", True), f"{name}.exceptional"),
        ))
    edges = []
    for i, item in enumerate(_list(data, "edges", where, default=[])):
        name = f"{where}.edges[{i}]"
        if not isinstance(item, list) or len(item) != 2:
            raise FormatError(name, "expected a pair of vertex ids")
        edges.append((_identifier(item[0], f"{name}[0]"), _identifier(item[1], f"{name}[1]")))
    arrows = []
    for i, item in enumerate(_list(data, "arrows", where, default=[])):
        name = f"{where}.arrows[{i}]"
        arrows.append(Arrow(
            vertex=_identifier(_require(item, "vertex", name), f"{name}.vertex"),
            multiplicity=_integer(item.get("multiplicity", 1), f"{name}.multiplicity"),
        ))
    return ResolutionGraph(tuple(vertices), tuple(edges), tuple(arrows))


def _dump_stratum(stratum: Stratum) -> dict[str, Any]:
    result: dict[str, Any] = {
        "class": (None if stratum.stratum_class is None
                  else [[k, c] for k, c in sorted(polynomial_coefficients(stratum.stratum_class).items())]),
        "euler": stratum.euler,
        "adjacency": sorted_ids(stratum.adjacency),
        "torus_cell": stratum.torus_cell,
    }
    if stratum.cover_class is not None:
        result["cover_class"] = str(stratum.cover_class)
    return result


def dump_configuration(config: Configuration) -> dict[str, Any]:
    return {
        "ambient_dim": config.ambient_dim,
        "components": [
            {"id": cid, "multiplicity": config.components[cid].multiplicity}
            for cid in sorted_ids(config.components)
        ],
        "strata": [
            {"components": sorted_ids(s.components), **_dump_stratum(s)}
            for s in config.ordered_strata()
        ],
    }


def dump_center(center: BlowupCenter) -> dict[str, Any]:
    return {
        "containing": sorted_ids(center.containing),
        "transversal": sorted_ids(center.transversal),
        "codim": center.codim,
        "full_intersection": center.is_full_intersection,
        "strata": [
            {"transversal": sorted_ids(K), **_dump_stratum(center.strata[K])}
            for K in sorted(center.strata, key=lambda K: (len(K), sorted_ids(K)))
        ],
    }


def read_json(path: str) -> Any:
    with open(path, encoding="utf-8") as f:
        text = f.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"{path}:{e.lineno}:{e.colno}", e.msg) from e


def read_configuration(path: str) -> Configuration:
    return load_configuration(read_json(path), path)


def read_center(path: str) -> BlowupCenter:
    return load_center(read_json(path), path)


def write_configuration(config: Configuration, path: str) -> None:
    with open(path, "w", encoding="utf-8") as f:
        json.dump(dump_configuration(config), f, indent=2)
        f.write("\n")


class Reader:
    """Loads a configuration file or a resolution graph file."""

    def __init__(self, path: str):
        self.path: str = path
        self.graph: ResolutionGraph | None = None
        self._configuration: Configuration | None = None
        self.io_error: bool = False

        self.ok: bool = self._load()

    @property
    def configuration(self) -> Configuration:
        if self._configuration is None:
            raise FormatError(self.path, "no configuration loaded")
        return self._configuration

    @property
    def is_graph(self) -> bool:
        return self.graph is not None

    def _load(self) -> bool:
        try:
            data = read_json(self.path)
            if isinstance(data, dict) and "vertices" in data:
                self.graph = load_graph(data, self.path)
                self._configuration = graph_to_config(self.graph)
                logging.debug(f"Read resolution graph {self.path}")
            else:
                self._configuration = load_configuration(data, self.path)
                logging.debug(f"Read configuration {self.path}")
        except OSError as e:
            logging.error(f"Failed to read {self.path}: {e}")
            self.io_error = True
            return False
        except MicoverError as e:
            logging.error(f"Failed to load {self.path}: {e}")
            return False
        return True

    def selection(self, spec: str | None) -> frozenset[str]:
        return parse_selection(spec, self.configuration, self.graph)


def parse_selection(spec: str | None, config: Configuration,
                    graph: ResolutionGraph | None = None) -> frozenset[str]:
    """Resolve an A-spec: 'all', 'exceptional' or a comma-separated id list."""
    if spec is None:
        spec = "exceptional" if graph is not None else "all"
    text = spec.strip()
    if text == "all":
        ids = graph.vertex_ids if graph is not None else config.component_ids()
    elif text == "exceptional":
        if graph is not None:
            ids = MilnorSelection.exceptional(graph).vertices
        else:
            ids = frozenset(c for c in config.components if c.startswith("*"))
        if not ids:
            raise SelectionError("no exceptional components")
    else:
        ids = frozenset(part.strip() for part in text.split(",") if part.strip())
    return check_selection(config, ids)
