"""Seeded instance generators.

All randomness comes from :class:`SeededStream`, which draws raw 64-bit words
from numpy's PCG64 bit generator (seeded through ``numpy.random.SeedSequence``)
and derives values from them with fixed arithmetic:

* ``uniform()  = (word >> 11) * 2**-53``
* ``below(n)   = (word * n) >> 64``

Any implementation of PCG64 plus these two formulas reproduces the outputs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from .graph import Graph, connected_components, from_networkx


@dataclass
class SeededStream:
    seed: int
    _gen: np.random.PCG64 = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self._gen = np.random.PCG64(self.seed)

    def word(self) -> int:
        return int(self._gen.random_raw())

    def uniform(self) -> float:
        return (self.word() >> 11) * (1.0 / (1 << 53))

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        return (self.word() * n) >> 64


def random_graph(n: int, p: float, seed: int) -> Graph:
    """G(n, p): pairs ``u < v`` in lexicographic order, each kept with probability ``p``."""
    if n < 0 or not 0.0 <= p <= 1.0:
        raise ValueError("need n >= 0 and 0 <= p <= 1")
    rng = SeededStream(seed)
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.uniform() < p]
    return Graph.from_edges(n, edges)


def random_connected_graph(n: int, p: float, seed: int, attempts: int = 10_000) -> Graph:
    """First connected G(n, p) sample from one stream (graphs drawn back to back)."""
    if n < 1:
        raise ValueError("need n >= 1")
    rng = SeededStream(seed)
    for _ in range(attempts):
        edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.uniform() < p]
        g = Graph.from_edges(n, edges)
        if len(connected_components(g)) == 1:
            return g
    raise ValueError(f"no connected sample in {attempts} attempts; raise p")


def random_tree(n: int, seed: int) -> Graph:
    """Uniform random labelled tree decoded from a random Pruefer sequence."""
    if n < 1:
        raise ValueError("need n >= 1")
    if n <= 2:
        return Graph.from_edges(n, [(0, 1)] if n == 2 else [])
    rng = SeededStream(seed)
    prufer = [rng.below(n) for _ in range(n - 2)]
    return from_networkx(nx.from_prufer_sequence(prufer))


def random_3cnf(num_vars: int, num_clauses: int, seed: int) -> list[tuple[int, int, int]]:
    """Clauses over three distinct variables, as signed 1-based literals."""
    if num_vars < 3:
        raise ValueError("need at least three variables")
    rng = SeededStream(seed)
    clauses = []
    for _ in range(num_clauses):
        chosen: list[int] = []
        while len(chosen) < 3:
            var = rng.below(num_vars) + 1
            if var not in chosen:
                chosen.append(var)
        clauses.append(tuple(v if rng.below(2) else -v for v in chosen))
    return clauses


def criterion_graphs(count: int, n: int, seed: int) -> list[Graph]:
    """Connected random graphs with edge probability cycling through 0.25..0.55."""
    probs = (0.25, 0.35, 0.45, 0.55)
    return [random_connected_graph(n, probs[i % 4], seed + i) for i in range(count)]
