import json

from wardwick.diagrams import diagrams_to_dot, diagrams_to_json
from wardwick.fields import current, phi, phis
from wardwick.wick import enumerate_full_contractions


def test_json_edges_carry_derivatives_and_orientation():
    diagrams = enumerate_full_contractions([current("mu", "x1"), phis("x2") * phi("x2")])
    data = json.loads(diagrams_to_json(diagrams))
    assert data["schema"] == "wardwick.diagrams/1"
    edges = [e for d in data["diagrams"] for e in d["edges"]]
    assert any(e["derivs"]["source"] == ["mu"] or e["derivs"]["target"] == ["mu"] for e in edges)
    assert all(e["phi_end"] in ("source", "target") for e in edges)
    assert sum(len(d["edges"]) for d in data["diagrams"]) == 2 * len(data["diagrams"])


def test_dot_parallel_edges():
    diagrams = enumerate_full_contractions([phi("x1") ** 2, phis("x2") ** 2])
    dot = diagrams_to_dot(diagrams)
    assert dot.startswith("//")
    assert dot.count('"x1" -- "x2"') == 2
    assert "multiplicity=2" in dot


def test_empty_diagram_list():
    assert json.loads(diagrams_to_json([]))["diagrams"] == []
