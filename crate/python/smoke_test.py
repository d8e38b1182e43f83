"""Smoke test for the berge extension module.

Build and install first:
    pip install --no-build-isolation ./crates/py
then run with python or pytest.
"""

import berge


def test_hypergraph_round_trip():
    h = berge.Hypergraph(5, 3, [[0, 1, 2], [2, 3, 4], [0, 3, 4]])
    assert len(h) == 3
    assert h.degrees() == [2, 1, 2, 2, 2]
    back = berge.Hypergraph.from_bhg(h.to_bhg())
    assert back.edges == h.edges


def test_thresholds():
    assert berge.threshold(9, 5, 7) == {"regime": "main4", "bound": 4}
    assert berge.threshold(9, 3)["regime"] == "main_a"
    assert berge.bermond_baseline(3, 5) >= 1


def test_h2_is_not_hamiltonian():
    h = berge.generate("h2", 7, 3)
    assert berge.find_cycle(h, 7)["verdict"] == "exhausted"
    circ = berge.circumference(h)
    assert circ["outcome"]["verdict"] == "found"
    assert circ["length"] < 7


def test_complete_is_hamiltonian():
    h = berge.generate("complete", 6, 3)
    out = berge.find_cycle(h, 6)
    assert out["verdict"] == "found"
    assert len(out["witness"]["vertices"]) == 6
    assert berge.run_engine(h)["status"] == "found"
    assert berge.longest_path(h)["length"] == 5  # edges, spanning all 6 vertices


def test_lemmas_and_sweep():
    assert berge.lemma_suite(6, 6, 3)["all_hold"]
    rep = berge.verify_sweep("grid = 7:3:7\nsamples_per_cell = 2\nexhaustive_cells = 5:3:5\n", seed=3)
    assert rep["pass"]
    assert rep["violations"] == 0


def test_bad_input_raises():
    try:
        berge.Hypergraph(4, 3, [[0, 1]])
    except ValueError:
        pass
    else:
        raise AssertionError("expected ValueError")


if __name__ == "__main__":
    for name, fn in sorted(globals().items()):
        if name.startswith("test_") and callable(fn):
            fn()
            print("ok", name)
