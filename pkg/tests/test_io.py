import json

import numpy as np

from qsubiso import io as qio
from qsubiso.graph import Graph, PartialPermutation, erdos_renyi
from qsubiso.oracle import qubit_requirements
from qsubiso.solver import RunResult


def test_graph_json_round_trip(tmp_path):
    g = erdos_renyi(8, 0.4, 3)
    path = tmp_path / "g.json"
    qio.write_graph(g, path)
    assert json.loads(path.read_text())["n"] == 8
    assert qio.read_graph(path) == g


def test_edgelist_round_trip(tmp_path):
    g = Graph.from_edges(6, [(0, 1), (4, 2)])
    path = tmp_path / "g.txt"
    qio.write_graph(g, path)
    assert qio.read_graph(path) == g


def test_bare_edgelist_infers_order():
    g = qio.graph_from_edgelist("0 1\n\n2 3\n")
    assert g.num_vertices == 4 and g.sorted_edges() == [(0, 1), (2, 3)]


def test_manifest_hash_order_independent():
    assert qio.manifest_hash({"a": 1, "b": [1, 2]}) == qio.manifest_hash({"b": [1, 2], "a": 1})
    assert qio.manifest_hash({"a": 1}) != qio.manifest_hash({"a": 2})


def test_trace_csv():
    res = RunResult(quantum_loss_trace=[0.5, 0.25], best_classical_loss_trace=[4, 0])
    text = qio.trace_csv(res, {"seed": 3})
    assert text.startswith("# schema_version=1\n# seed=3\n")
    rows = qio.read_csv_rows(text)
    assert rows == [
        {"step": "1", "quantum_loss": "0.5", "best_classical_loss": "4"},
        {"step": "2", "quantum_loss": "0.25", "best_classical_loss": "0"},
    ]


def test_resources_csv():
    rows = qio.read_csv_rows(qio.resources_csv([qubit_requirements(16)]))
    assert rows[0]["this_method"] == "9" and rows[0]["qubo_full"] == "256"


def test_solutions_json_original_labels():
    w = PartialPermutation(8, (2, 6, 0))
    doc = json.loads(qio.solutions_to_json([w], source_vertices=6, pattern_vertices=2))
    item = doc["solutions"][0]
    assert item["image"] == [2, 6, 0]
    assert item["original_map"] == {"0": 2, "1": 6}
    assert item["uses_padding"] is True
    assert qio.solutions_from_json(json.dumps(doc), 8) == [w]
