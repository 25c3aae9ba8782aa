# -*- coding: utf-8 -*-
"""
Reading and writing run artifacts: report.json, trace.csv and eigenfunction CSVs
"""
import csv
import json
import os
from typing import Any, Dict, List

import numpy as np

from plapflow.common.exceptions import GraphError
from plapflow.flows.base import FlowTrace
from plapflow.graphs.base import Graph
from plapflow.operators.weights import as_node_function
from plapflow.verification.report import EigenReport

EIGENFUNCTION_HEADER = ("node_id", "value")


def write_json(data: Dict[str, Any], path: str) -> str:
    with open(path, "w") as out_file:
        json.dump(data, out_file, indent=2)
        out_file.write("\n")
    return path


def write_eigenfunction(graph: Graph, f, path: str) -> str:
    """
    One row per interior node: node id and value (full float precision).
    """
    f = as_node_function(graph, f)
    with open(path, "w", newline="") as out_file:
        writer = csv.writer(out_file, lineterminator="\n")
        writer.writerow(EIGENFUNCTION_HEADER)
        for node, value in zip(graph.interior, f):
            writer.writerow([node, repr(float(value))])
    return path


def read_eigenfunction(graph: Graph, path: str) -> np.ndarray:
    """
    Reads a node_id,value CSV into a node function ordered like graph.interior.

    Raises:
        GraphError: missing or unknown node ids, duplicates, bad values
    """
    values: Dict[int, float] = {}
    with open(path, newline="") as in_file:
        reader = csv.reader(in_file)
        header = next(reader, None)
        if header is None or tuple(h.strip() for h in header) != EIGENFUNCTION_HEADER:
            raise GraphError(f"{path}: expected header {','.join(EIGENFUNCTION_HEADER)}.")
        for line, row in enumerate(reader, start=2):
            if not row:
                continue
            if len(row) != 2:
                raise GraphError(f"{path}:{line}: expected 2 columns, got {row!r}.")
            try:
                node, value = int(row[0]), float(row[1])
            except ValueError:
                raise GraphError(f"{path}:{line}: unreadable row {row!r}.")
            if node in values:
                raise GraphError(f"{path}:{line}: duplicate node {node}.")
            values[node] = value
    if len(values) != graph.num_interior:
        raise GraphError(
            f"{path}: {len(values)} values for {graph.num_interior} interior nodes."
        )
    try:
        return np.array([values[node] for node in graph.interior])
    except KeyError as err:
        raise GraphError(f"{path}: no value for interior node {err.args[0]}.")


def write_trace(trace: FlowTrace, path: str) -> str:
    with open(path, "w") as out_file:
        out_file.write(trace.to_csv())
    return path


def write_solve_outputs(
    graph: Graph, report: EigenReport, trace: FlowTrace, out_dir: str
) -> List[str]:
    """
    Writes report.json, trace.csv and eigenfunction.csv into out_dir.

    Returns:
        paths (List[str]): written files
    """
    os.makedirs(out_dir, exist_ok=True)
    return [
        write_json(report.to_dict(), os.path.join(out_dir, "report.json")),
        write_trace(trace, os.path.join(out_dir, "trace.csv")),
        write_eigenfunction(graph, report.f, os.path.join(out_dir, "eigenfunction.csv")),
    ]
