"""File formats: graph JSON, edge lists, solution files and result CSVs.

CSV schema version 1:

* traces: ``step,quantum_loss,best_classical_loss``
* summary: ``problem_id,n_a,n_b,space_size,unique_found,n_params,qubits,convergent_pct,avg_steps,max_steps``
* resources: ``n,this_method,qubo_full,compressed_min,compressed_max``

Every CSV starts with ``#`` comment lines carrying the schema version and
any provenance fields (manifest hash, seed) handed to the writer.
"""
from __future__ import annotations

import csv
import hashlib
import io
import json
from pathlib import Path
from typing import Iterable, Mapping

from .graph import Graph, PartialPermutation

SCHEMA_VERSION = 1

TRACE_COLUMNS = ("step", "quantum_loss", "best_classical_loss")
SUMMARY_COLUMNS = (
    "problem_id",
    "n_a",
    "n_b",
    "space_size",
    "unique_found",
    "n_params",
    "qubits",
    "convergent_pct",
    "avg_steps",
    "max_steps",
)
RESOURCE_COLUMNS = ("n", "this_method", "qubo_full", "compressed_min", "compressed_max")


def graph_to_json(g: Graph) -> str:
    return json.dumps({"n": g.num_vertices, "edges": [list(e) for e in g.sorted_edges()]})


def graph_from_json(text: str) -> Graph:
    data = json.loads(text)
    return Graph.from_edges(int(data["n"]), data.get("edges", []))


def graph_to_edgelist(g: Graph) -> str:
    # vertex count travels in a comment so isolated trailing vertices survive
    lines = [f"# n {g.num_vertices}"] + [f"{u} {v}" for u, v in g.sorted_edges()]
    return "\n".join(lines) + "\n"


def graph_from_edgelist(text: str) -> Graph:
    n = None
    edges = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            parts = line[1:].split()
            if len(parts) == 2 and parts[0] == "n":
                n = int(parts[1])
            continue
        u, v = (int(x) for x in line.split()[:2])
        edges.append((u, v))
    if n is None:
        n = 1 + max((max(e) for e in edges), default=0)
    return Graph.from_edges(n, edges)


def read_graph(path) -> Graph:
    path = Path(path)
    text = path.read_text()
    if path.suffix == ".json":
        return graph_from_json(text)
    return graph_from_edgelist(text)


def write_graph(g: Graph, path) -> None:
    path = Path(path)
    path.write_text(graph_to_json(g) if path.suffix == ".json" else graph_to_edgelist(g))


def manifest_hash(manifest: Mapping) -> str:
    blob = json.dumps(manifest, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


def _csv_text(columns: Iterable[str], rows: Iterable[Iterable], meta: Mapping | None = None) -> str:
    buf = io.StringIO()
    buf.write(f"# schema_version={SCHEMA_VERSION}\n")
    for key, value in (meta or {}).items():
        buf.write(f"# {key}={value}\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow(row)
    return buf.getvalue()


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(round(x, 12))
    return str(x)


def trace_csv(result, meta: Mapping | None = None) -> str:
    rows = [
        (step, _fmt(q), c)
        for step, (q, c) in enumerate(zip(result.quantum_loss_trace, result.best_classical_loss_trace), start=1)
    ]
    return _csv_text(TRACE_COLUMNS, rows, meta)


def summary_row(stats, problem_id: str) -> tuple:
    return (
        problem_id,
        stats.n_a,
        stats.n_b,
        stats.space_size,
        stats.unique_solutions_found,
        stats.n_params,
        stats.qubits,
        _fmt(stats.convergent_pct),
        _fmt(stats.avg_steps),
        _fmt(stats.max_steps),
    )


def summary_csv(rows: Iterable[tuple], meta: Mapping | None = None) -> str:
    return _csv_text(SUMMARY_COLUMNS, rows, meta)


def resources_csv(reqs: Iterable, meta: Mapping | None = None) -> str:
    rows = [(r.n_vertices, r.this_method, r.qubo_full, r.compressed_min, r.compressed_max) for r in reqs]
    return _csv_text(RESOURCE_COLUMNS, rows, meta)


def read_csv_rows(text: str) -> list[dict]:
    body = [line for line in text.splitlines() if not line.startswith("#")]
    return list(csv.DictReader(body))


def solutions_to_json(
    solutions: Iterable[PartialPermutation],
    source_vertices: int | None = None,
    pattern_vertices: int | None = None,
    meta: Mapping | None = None,
) -> str:
    """Serialise matches over padded indices plus the map restricted to original labels."""
    items = []
    for w in solutions:
        n_b = pattern_vertices if pattern_vertices is not None else w.target_order
        n_a = source_vertices if source_vertices is not None else w.source_order
        original = {str(t): w.image[t] for t in range(min(n_b, w.target_order))}
        items.append(
            {
                "image": list(w.image),
                "original_map": original,
                "uses_padding": any(v >= n_a for v in original.values()),
            }
        )
    doc = dict(meta or {})
    doc["solutions"] = items
    return json.dumps(doc, indent=1, sort_keys=True)


def solutions_from_json(text: str, source_order: int) -> list[PartialPermutation]:
    data = json.loads(text)
    return [PartialPermutation(source_order, item["image"]) for item in data["solutions"]]
