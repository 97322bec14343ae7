from itertools import product

import numpy as np
import pytest

from core.pattern import PatternGraph
from core.qgraph import QGraph, full_qgraph
from services.acceptance_service import random_star_function
from services.robust_service import chromatic_number, removed_graph


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)


@pytest.fixture
def random_host(rng):
    def make(n: int, q: int, density: float = 0.5) -> QGraph:
        kept = [e for e in full_qgraph(n, q).sorted_edges() if rng.random() < density]
        return QGraph(n, q, frozenset(kept))
    return make


@pytest.fixture
def random_pattern(rng):
    def make(n: int, p: float = 0.5, nonempty: bool = True) -> PatternGraph:
        pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
        while True:
            graph = PatternGraph.from_edges(n, [pair for pair in pairs if rng.random() < p])
            if graph.edges or not nonempty:
                return graph
    return make


@pytest.fixture
def random_star(rng):
    def make(k: int):
        return random_star_function(rng, k)
    return make


# ===== НЕЗАВИСИМЫЕ ОРАКУЛЫ =====

def selection_images(graph: PatternGraph):
    """Образы всех 1-выборов прямым перебором функций v -> инцидентное ребро."""
    vertices = graph.non_isolated()
    choices = [[e for e in graph.sorted_edges() if v in e] for v in vertices]
    return {frozenset(f) for f in product(*choices)}


def brute_robust_chromatic(graph: PatternGraph) -> int:
    if graph.n == 0:
        return 0
    if not graph.edges:
        return 1
    return min(chromatic_number(removed_graph(graph, image)) for image in selection_images(graph))
