"""Обычные простые графы: запрещённые паттерны F и вспомогательные графы"""

import re
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Sequence, Tuple

import networkx as nx

from core.errors import PatternError, ValidationError

Pair = Tuple[int, int]


def _canonical_pair(u: int, v: int) -> Pair:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class PatternGraph:
    """
    Простой граф на вершинах 1..n.

    Изолированные вершины допустимы; рёбра хранятся как пары (u, v), u < v.
    """

    n: int
    edges: FrozenSet[Pair] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValidationError(f"vertex count must be non-negative, got {self.n}")
        normalized = set()
        for u, v in self.edges:
            if u == v:
                raise ValidationError(f"loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise ValidationError(f"edge ({u},{v}) outside 1..{self.n}")
            normalized.add(_canonical_pair(u, v))
        object.__setattr__(self, "edges", frozenset(normalized))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]]) -> "PatternGraph":
        return cls(n, frozenset(_canonical_pair(int(u), int(v)) for u, v in edges))

    @classmethod
    def from_networkx(cls, graph: nx.Graph) -> "PatternGraph":
        """Переименовывает вершины в 1..n в порядке сортировки исходных меток."""
        nodes = sorted(graph.nodes())
        index = {node: i + 1 for i, node in enumerate(nodes)}
        return cls.from_edges(len(nodes), ((index[u], index[v]) for u, v in graph.edges()))

    def to_networkx(self) -> nx.Graph:
        graph = nx.Graph()
        graph.add_nodes_from(range(1, self.n + 1))
        graph.add_edges_from(self.edges)
        return graph

    # ===== СТРУКТУРА =====

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    def sorted_edges(self) -> List[Pair]:
        return sorted(self.edges)

    def adjacency(self) -> Dict[int, FrozenSet[int]]:
        adj: Dict[int, set] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return {v: frozenset(nbrs) for v, nbrs in adj.items()}

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def non_isolated(self) -> List[int]:
        return sorted({v for e in self.edges for v in e})

    def components(self) -> List[Tuple[FrozenSet[int], FrozenSet[Pair]]]:
        """Компоненты связности как пары (вершины, рёбра); изолированные вершины — отдельные компоненты."""
        graph = self.to_networkx()
        result = []
        for nodes in sorted(nx.connected_components(graph), key=min):
            comp_edges = frozenset(e for e in self.edges if e[0] in nodes)
            result.append((frozenset(nodes), comp_edges))
        return result

    def has_dense_component(self) -> bool:
        """Есть ли компонента C с |V(C)| < |E(C)| (не дерево и не уницикл)."""
        return any(len(nodes) < len(comp_edges) for nodes, comp_edges in self.components())

    def relabel(self, perm: Dict[int, int]) -> "PatternGraph":
        return PatternGraph.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges))

    def remove_edges(self, removed: Iterable[Pair]) -> "PatternGraph":
        drop = {_canonical_pair(u, v) for u, v in removed}
        return PatternGraph(self.n, self.edges - drop)

    def __len__(self) -> int:
        return len(self.edges)


# ===== ИМЕНОВАННЫЕ ПАТТЕРНЫ =====

def cycle(k: int) -> PatternGraph:
    if k < 3:
        raise PatternError(f"cycle needs at least 3 vertices, got {k}")
    return PatternGraph.from_networkx(nx.cycle_graph(k))


def path(k: int) -> PatternGraph:
    """Путь на k вершинах (k-1 ребро)."""
    if k < 1:
        raise PatternError(f"path needs at least 1 vertex, got {k}")
    return PatternGraph.from_networkx(nx.path_graph(k))


def complete(k: int) -> PatternGraph:
    return PatternGraph.from_networkx(nx.complete_graph(k))


def complete_multipartite(*parts: int) -> PatternGraph:
    if not parts or any(p < 1 for p in parts):
        raise PatternError(f"part sizes must be positive, got {parts}")
    return PatternGraph.from_networkx(nx.complete_multipartite_graph(*parts))


def star(t: int) -> PatternGraph:
    """K_{1,t}: центр — вершина 1."""
    return PatternGraph.from_networkx(nx.star_graph(t))


def turan_graph(n: int, r: int) -> PatternGraph:
    """T(n, r); при r <= 0 — пустой граф на n вершинах."""
    if r <= 0 or n == 0:
        return PatternGraph(n)
    return PatternGraph.from_networkx(nx.turan_graph(n, min(r, n)))


_NAMED = re.compile(r"^(c|p|star|k)(\d+(?:,\d+)*)$")


def named_pattern(name: str) -> PatternGraph:
    """
    Разбор встроенного имени паттерна.

    c<N> — цикл, p<N> — путь на N вершинах, star<T> — K_{1,T},
    k<N> — полный граф, k<A>,<B>[,<C>] — полный многодольный граф.
    Без запятых многозначное k-имя читается по одной цифре на долю: k333 = K_{3,3,3}.
    """
    match = _NAMED.match(name.strip().lower())
    if not match:
        raise PatternError(f"unknown pattern name: {name!r}")
    kind, digits = match.groups()

    if kind == "k":
        if "," in digits:
            return complete_multipartite(*(int(d) for d in digits.split(",")))
        if len(digits) == 1:
            return complete(int(digits))
        return complete_multipartite(*(int(d) for d in digits))

    if "," in digits:
        raise PatternError(f"unexpected part list in {name!r}")
    size = int(digits)
    if kind == "c":
        return cycle(size)
    if kind == "p":
        return path(size)
    return star(size)
