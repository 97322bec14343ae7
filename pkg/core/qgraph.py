"""q-рёбра, q-графы, срезы и нижний слой"""

from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb
from typing import Dict, FrozenSet, Iterable, Iterator, List, NamedTuple, Set, Tuple

import networkx as nx

from core.errors import ValidationError
from core.pattern import PatternGraph


class QEdge(NamedTuple):
    """
    q-ребро в разреженной форме: носитель {u, v}, u < v, вес a в u и вес b в v.

    Плотный вектор длины n имеет ровно две ненулевые координаты: x_u = a, x_v = b.
    """

    u: int
    v: int
    a: int
    b: int

    @classmethod
    def oriented(cls, i: int, j: int, wi: int, wj: int) -> "QEdge":
        """q-ребро с весом wi в вершине i и wj в вершине j (порядок i, j любой)."""
        if i < j:
            return cls(i, j, wi, wj)
        return cls(j, i, wj, wi)

    @property
    def support(self) -> Tuple[int, int]:
        return (self.u, self.v)

    def weight_at(self, i: int) -> int:
        if i == self.u:
            return self.a
        if i == self.v:
            return self.b
        return 0

    def dense(self, n: int) -> Tuple[int, ...]:
        return tuple(self.weight_at(i) for i in range(1, n + 1))

    def check(self, n: int, q: int) -> None:
        if not (1 <= self.u < self.v <= n):
            raise ValidationError(f"q-edge {tuple(self)}: need 1 <= u < v <= {n}")
        if not (1 <= self.a <= q and 1 <= self.b <= q):
            raise ValidationError(f"q-edge {tuple(self)}: weights must lie in 1..{q}")


class SlicePair(NamedTuple):
    """Упорядоченная пара весов (a, b) для среза H_{a,b}."""

    a: int
    b: int

    def conjugate(self, q: int) -> "SlicePair":
        """(ā, b̄), где ᾱ = q + 1 - α."""
        return SlicePair(q + 1 - self.a, q + 1 - self.b)

    def reversed(self) -> "SlicePair":
        return SlicePair(self.b, self.a)


@dataclass(frozen=True)
class QGraph:
    """
    Множество q-рёбер на [n] с потолком весов q.

    Равенство — равенство множеств канонических кортежей, порядок вставки не важен.
    """

    n: int
    q: int
    edges: FrozenSet[QEdge] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0 or self.q < 1:
            raise ValidationError(f"invalid parameters n={self.n}, q={self.q}")
        edges = frozenset(QEdge(*e) for e in self.edges)
        for edge in edges:
            edge.check(self.n, self.q)
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, n: int, q: int, edges: Iterable[Iterable[int]]) -> "QGraph":
        return cls(n, q, frozenset(QEdge(*e) for e in edges))

    # ===== КОНТЕЙНЕР =====

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[QEdge]:
        return iter(self.sorted_edges())

    def __contains__(self, edge) -> bool:
        return QEdge(*edge) in self.edges

    def sorted_edges(self) -> List[QEdge]:
        return sorted(self.edges)

    def _same_space(self, other: "QGraph") -> None:
        if (self.n, self.q) != (other.n, other.q):
            raise ValidationError(
                f"q-graphs over different spaces: (n={self.n}, q={self.q}) vs (n={other.n}, q={other.q})"
            )

    def __or__(self, other: "QGraph") -> "QGraph":
        self._same_space(other)
        return QGraph(self.n, self.q, self.edges | other.edges)

    def __and__(self, other: "QGraph") -> "QGraph":
        self._same_space(other)
        return QGraph(self.n, self.q, self.edges & other.edges)

    def __sub__(self, other: "QGraph") -> "QGraph":
        self._same_space(other)
        return QGraph(self.n, self.q, self.edges - other.edges)

    def with_edges(self, extra: Iterable[QEdge]) -> "QGraph":
        return QGraph(self.n, self.q, self.edges | frozenset(extra))

    def complement(self) -> "QGraph":
        """Дополнение до Q(n,2)."""
        return full_qgraph(self.n, self.q) - self

    def relabel(self, perm: Dict[int, int]) -> "QGraph":
        return QGraph(
            self.n, self.q,
            frozenset(QEdge.oriented(perm[e.u], perm[e.v], e.a, e.b) for e in self.edges),
        )

    def weights_on(self, i: int, j: int) -> List[Tuple[int, int]]:
        """Пары (вес в i, вес в j) всех q-рёбер на носителе {i, j}."""
        lo, hi = min(i, j), max(i, j)
        pairs = sorted((e.a, e.b) for e in self.edges if e.u == lo and e.v == hi)
        return pairs if i < j else [(b, a) for a, b in pairs]


# ===== ОПЕРАЦИИ =====

def full_qgraph(n: int, q: int) -> QGraph:
    """Q(n,2): все q-рёбра на n вершинах, q²·C(n,2) штук."""
    if n < 2 or q < 1:
        raise ValidationError(f"full q-graph needs n >= 2 and q >= 1, got n={n}, q={q}")
    weights = list(product(range(1, q + 1), repeat=2))
    return QGraph(
        n, q,
        frozenset(QEdge(u, v, a, b) for u, v in combinations(range(1, n + 1), 2) for a, b in weights),
    )


def s_sum_intersection(x: QEdge, y: QEdge, s: int) -> Set[int]:
    """x ∩_s y: индексы, где сумма координат плотных векторов не меньше s."""
    return {i for i in {x.u, x.v, y.u, y.v} if x.weight_at(i) + y.weight_at(i) >= s}


def low_threshold(q: int) -> int:
    """⌈(q+1)/2⌉ — наименьший вес «нижнего слоя»."""
    return (q + 2) // 2


def low_layer(host: QGraph) -> QGraph:
    """H^L: q-рёбра, у которых оба веса не меньше ⌈(q+1)/2⌉."""
    t = low_threshold(host.q)
    return QGraph(host.n, host.q, frozenset(e for e in host.edges if min(e.a, e.b) >= t))


def low_layer_size(n: int, q: int) -> int:
    return (q - low_threshold(q) + 1) ** 2 * comb(n, 2)


def support_graph(host: QGraph) -> PatternGraph:
    """S_H как простой граф на [n]."""
    return PatternGraph(host.n, frozenset(e.support for e in host.edges))


def slice_graph(host: QGraph, pair: SlicePair):
    """
    Срез H_{a,b}: дуга i -> j, если q-ребро с весом a в i и b в j лежит в H.

    При a == b возвращается неориентированный граф H_{a,a}.
    """
    a, b = pair
    if a == b:
        graph = nx.Graph()
        graph.add_nodes_from(range(1, host.n + 1))
        graph.add_edges_from(e.support for e in host.edges if e.a == a and e.b == a)
        return graph

    graph = nx.DiGraph()
    graph.add_nodes_from(range(1, host.n + 1))
    for e in host.edges:
        if (e.a, e.b) == (a, b):
            graph.add_edge(e.u, e.v)
        elif (e.b, e.a) == (a, b):
            graph.add_edge(e.v, e.u)
    return graph


def _arcs(host: QGraph, pair: SlicePair) -> Set[Tuple[int, int]]:
    a, b = pair
    arcs = set()
    for e in host.edges:
        if (e.a, e.b) == (a, b):
            arcs.add((e.u, e.v))
        if (e.b, e.a) == (a, b):
            arcs.add((e.v, e.u))
    return arcs


def double_slice(host: QGraph, first: SlicePair, second: SlicePair) -> nx.Graph:
    """H_{(a,b),(c,d)}: пересечение дуг двух срезов без ориентаций и кратностей."""
    common = _arcs(host, first) & _arcs(host, second)
    graph = nx.Graph()
    graph.add_nodes_from(range(1, host.n + 1))
    graph.add_edges_from(common)
    return graph
