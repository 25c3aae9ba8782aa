"""
JSON serialization of graphs
"""
import json
from numbers import Real
from typing import Dict, Optional

from plapflow.common.exceptions import GraphError
from plapflow.graphs.base import Graph, TPosition


def load_graph(text: str) -> Graph:
    """
    Parses {"nodes": int, "boundary": [int...], "edges": [[u, v, w]...]}.

    Edges may come in any orientation; they are canonicalized on load.

    Raises:
        GraphError: on malformed JSON or schema, with the offending record
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as err:
        raise GraphError(f"Graph file is not valid JSON: {err}")

    if not isinstance(data, dict):
        raise GraphError(f"Graph file must hold a JSON object, got {type(data).__name__}.")
    missing = [key for key in ("nodes", "boundary", "edges") if key not in data]
    if missing:
        raise GraphError(f"Graph file is missing keys {missing}.")
    if not isinstance(data["nodes"], int) or isinstance(data["nodes"], bool):
        raise GraphError(f"'nodes' must be an integer, got {data['nodes']!r}.")
    if not isinstance(data["boundary"], list):
        raise GraphError(f"'boundary' must be a list, got {data['boundary']!r}.")
    if not isinstance(data["edges"], list):
        raise GraphError(f"'edges' must be a list, got {data['edges']!r}.")

    for record in data["edges"]:
        if (
            not isinstance(record, list)
            or len(record) != 3
            or any(isinstance(x, bool) for x in record)
            or not isinstance(record[0], int)
            or not isinstance(record[1], int)
            or not isinstance(record[2], Real)
        ):
            raise GraphError(f"Edge records are [u:int, v:int, w:float], got {record!r}.")

    return Graph(
        data["nodes"], data["boundary"], data["edges"], _load_positions(data)
    )


def _load_positions(data: dict) -> Optional[Dict[int, TPosition]]:
    """Optional "positions": [[x, y]...], one pair per node id."""
    positions = data.get("positions")
    if positions is None:
        return None
    if not isinstance(positions, list) or len(positions) != data["nodes"]:
        raise GraphError(f"'positions' must list one [x, y] per node, got {positions!r}.")
    for record in positions:
        if (
            not isinstance(record, list)
            or len(record) != 2
            or not all(isinstance(x, Real) and not isinstance(x, bool) for x in record)
        ):
            raise GraphError(f"Positions are [x:float, y:float], got {record!r}.")
    try:
        return {node: (float(x), float(y)) for node, (x, y) in enumerate(positions)}
    except OverflowError:
        raise GraphError("Positions must fit in a float.")


def save_graph(graph: Graph) -> str:
    """
    Serializes a graph in canonical form (sorted edges, u < v), with node
    positions when the graph has them.
    """
    data = {
        "nodes": graph.num_nodes,
        "boundary": sorted(graph.boundary),
        "edges": [[u, v, omega] for u, v, omega in graph.edges],
    }
    positions = graph.positions
    if positions and len(positions) == graph.num_nodes:
        data["positions"] = [list(positions[node]) for node in range(graph.num_nodes)]
    return json.dumps(data)


def read_graph(path: str) -> Graph:
    with open(path, "r") as fd:
        return load_graph(fd.read())


def write_graph(graph: Graph, path: str) -> None:
    with open(path, "w") as fd:
        fd.write(save_graph(graph))
