"""Graph file codecs: JSON, plain edge lists and DOT."""

from __future__ import annotations

import json
import logging
from typing import Any

import networkx as nx
import pydot

from .const import DEFECTOR, DOT_FILL
from .exceptions import (
    ConfigurationLengthError,
    GraphParseError,
    InvalidSizeError,
    InvalidVertexError,
)
from .graph import Graph, HLabel
from .models import Configuration

_LOGGER = logging.getLogger(__name__)

FORMAT_JSON = "json"
FORMAT_EDGES = "edges"


def _encode_label(label: Any) -> Any:
    if isinstance(label, HLabel):
        return {"column": label.column, "row": label.row, "role": label.role}
    if isinstance(label, tuple):
        return [_encode_label(part) for part in label]
    return label


def _decode_label(value: Any) -> Any:
    if isinstance(value, dict):
        try:
            return HLabel(
                column=int(value["column"]), row=int(value["row"]), role=str(value["role"])
            )
        except (KeyError, TypeError, ValueError) as err:
            raise GraphParseError(f"Malformed role label {value!r}") from err
    if isinstance(value, list):
        return tuple(_decode_label(part) for part in value)
    return value


def graph_to_dict(g: Graph) -> dict[str, Any]:
    """Return the canonical JSON document for g."""
    data: dict[str, Any] = {
        "n": g.vertex_count,
        "edges": [[u, v] for u, v in g.edges()],
    }
    if g.labels is not None:
        data["labels"] = {str(v): _encode_label(label) for v, label in enumerate(g.labels)}
    return data


def graph_from_dict(data: dict[str, Any]) -> Graph:
    """Build a graph from a decoded JSON document."""
    count = data.get("n")
    if not isinstance(count, int) or isinstance(count, bool) or count < 0:
        raise GraphParseError(f'"n" must be a non-negative integer, got {count!r}')

    raw_edges = data.get("edges", [])
    if not isinstance(raw_edges, list):
        raise GraphParseError(f'"edges" must be a list of vertex pairs, got {raw_edges!r}')

    edges = []
    for item in raw_edges:
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in item)
        ):
            raise GraphParseError(f"Edge must be a pair of vertex ids, got {item!r}")
        edges.append((item[0], item[1]))

    labels = None
    raw_labels = data.get("labels")
    if raw_labels is not None:
        if not isinstance(raw_labels, dict):
            raise GraphParseError('"labels" must map vertex ids to labels')
        try:
            labels = [_decode_label(raw_labels[str(v)]) for v in range(count)]
        except KeyError as err:
            raise GraphParseError(f"No label for vertex {err.args[0]}") from err

    try:
        return Graph.from_edges(count, edges, labels)
    except (InvalidVertexError, InvalidSizeError) as err:
        raise GraphParseError(str(err)) from err


def _parse_json(text: str) -> Graph:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise GraphParseError(err.msg, line=err.lineno) from err
    if not isinstance(data, dict):
        raise GraphParseError("Graph document must be a JSON object")
    return graph_from_dict(data)


def _is_vertex_id(token: str) -> bool:
    # str.isdigit also accepts superscripts and other non-ASCII digits
    return token.isascii() and token.isdigit()


def _parse_edge_list(text: str) -> Graph:
    count: int | None = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()

    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "n":
            if count is not None or edges:
                raise GraphParseError('"n" header must come first', line=number)
            if len(tokens) != 2 or not _is_vertex_id(tokens[1]):
                raise GraphParseError(f"Bad header {line!r}", line=number)
            count = int(tokens[1])
            continue
        if len(tokens) != 2 or not all(_is_vertex_id(token) for token in tokens):
            raise GraphParseError(f"Expected two vertex ids, got {line!r}", line=number)

        u, v = int(tokens[0]), int(tokens[1])
        if u == v:
            raise GraphParseError(f"Self-loop at vertex {u}", line=number)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphParseError(f"Duplicate edge {key}", line=number)
        if count is not None and key[1] >= count:
            raise GraphParseError(f"Vertex {key[1]} outside 0..{count - 1}", line=number)
        seen.add(key)
        edges.append(key)

    if count is None:
        count = max((v for _, v in edges), default=-1) + 1
    return Graph.from_edges(count, edges)


def parse_graph(text: str) -> Graph:
    """Parse a graph document; JSON objects and edge lists are both accepted."""
    if text.lstrip().startswith("{"):
        g = _parse_json(text)
    else:
        g = _parse_edge_list(text)
    _LOGGER.debug("Parsed graph with %d vertices and %d edges", g.vertex_count, g.edge_count)
    return g


def serialize_graph(g: Graph, fmt: str = FORMAT_JSON) -> str:
    """Return the canonical newline-terminated text of g."""
    if fmt == FORMAT_JSON:
        return json.dumps(graph_to_dict(g)) + "\n"
    if fmt == FORMAT_EDGES:
        lines = [f"n {g.vertex_count}", *(f"{u} {v}" for u, v in g.edges())]
        return "\n".join(lines) + "\n"
    raise ValueError(f"Unknown graph format {fmt!r}")


def _dot_label(label: Any) -> str:
    if isinstance(label, HLabel):
        return f"{label.role}{label.column},{label.row}"
    return str(label)


def dot_graph(g: Graph, config: Configuration | None = None, name: str = "G") -> pydot.Dot:
    """Return g as a pydot graph; collaborators are filled black."""
    if config is not None and config.size != g.vertex_count:
        raise ConfigurationLengthError(
            f"Configuration has {config.size} strategies, graph has {g.vertex_count} vertices"
        )
    nx_graph = g.to_networkx()
    nx_graph.name = name
    nx_graph.graph["node"] = {"shape": "circle", "style": "filled", "fillcolor": DOT_FILL[DEFECTOR]}
    for v, attrs in nx_graph.nodes(data=True):
        if g.labels is not None:
            attrs["xlabel"] = _dot_label(g.labels[v])
        if config is not None:
            attrs["fillcolor"] = DOT_FILL[config.strategy(v)]
    return nx.nx_pydot.to_pydot(nx_graph)


def to_dot(g: Graph, config: Configuration | None = None, name: str = "G") -> str:
    """Return the undirected DOT document of g, newline-terminated."""
    text = dot_graph(g, config, name).to_string()
    return text if text.endswith("\n") else text + "\n"
