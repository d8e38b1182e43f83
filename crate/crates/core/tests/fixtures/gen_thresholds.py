"""Regenerates thresholds.jsonl from the closed-form bounds, using only math.comb."""

import json
import math
from pathlib import Path


def pivot(n):
    return (n - 1) // 2


def hamiltonian(n, r):
    t = pivot(n)
    if r <= t:
        return "main_a", math.comb(t, r - 1) + 1
    return "main_b", r


def circumference(n, r, k):
    t = pivot(n)
    if r <= t:
        if k <= r + 1:
            return "main3_a", k - 1
        if k < t + 2:
            return "main3_b", math.comb(k - 2, r - 1) + 1
        return "main3_c", math.comb(t, r - 1) + 1
    return "main4", r * (k - 1) // n + 1


QUERIES = {
    "hamiltonian": [(7, 3), (9, 3), (11, 4), (12, 5), (15, 3), (20, 6), (25, 7),
                    (6, 3), (7, 4), (8, 4), (9, 5), (10, 7), (12, 11), (16, 7), (14, 7)],
    "circumference": [
        (9, 3, 3), (9, 3, 4), (11, 4, 5), (13, 4, 4), (20, 6, 7),
        (9, 3, 5), (13, 3, 6), (15, 3, 7), (21, 4, 8), (30, 5, 10),
        (9, 3, 6), (9, 3, 9), (12, 4, 12), (13, 3, 13), (40, 8, 25),
        (9, 5, 7), (10, 6, 6), (11, 6, 11), (8, 4, 8), (50, 30, 40), (7, 6, 7),
        (17, 4, 6), (25, 5, 13), (14, 5, 6),
    ],
    "half_k": [(9, 5, 7), (10, 6, 9), (7, 4, 4), (12, 7, 12), (11, 10, 11)],
    "bermond": [(3, 4), (3, 9), (4, 6), (5, 12), (6, 10), (7, 20)],
}


def rows():
    for n, r in QUERIES["hamiltonian"]:
        regime, bound = hamiltonian(n, r)
        yield {"query": "hamiltonian", "n": n, "r": r, "regime": regime, "bound": bound}
    for n, r, k in QUERIES["circumference"]:
        regime, bound = circumference(n, r, k)
        yield {"query": "circumference", "n": n, "r": r, "k": k, "regime": regime, "bound": bound}
    for n, r, k in QUERIES["half_k"]:
        assert r > pivot(n) and k >= r
        yield {"query": "half_k", "n": n, "r": r, "k": k, "regime": "main41",
               "bound": -(-k // 2), "min_edges": k}
    for r, k in QUERIES["bermond"]:
        yield {"query": "bermond", "r": r, "k": k, "regime": "bermond",
               "bound": math.comb(k - 2, r - 1) + r - 1}


def main():
    out = [json.dumps(row, separators=(",", ":")) for row in rows()]
    assert len(out) == 50, len(out)
    regimes = {json.loads(line)["regime"] for line in out}
    assert regimes == {"main_a", "main_b", "main3_a", "main3_b", "main3_c", "main4", "main41", "bermond"}
    Path(__file__).with_name("thresholds.jsonl").write_text("\n".join(out) + "\n")


if __name__ == "__main__":
    main()
