"""Поиск s-копий паттерна F в q-графе"""

from collections import defaultdict, deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Any, Dict, Iterator, List, Optional, Tuple

import structlog

from core.errors import PatternError, ValidationError
from core.pattern import Pair, PatternGraph
from core.qgraph import QEdge, QGraph

logger = structlog.get_logger()


# ===== РЕЗУЛЬТАТЫ =====

@dataclass(frozen=True)
class Embedding:
    """
    Вложение F[U] в H: вершины U переходят в [n], рёбра F — в q-рёбра H.

    Изолированные вершины F не отображаются.
    """

    vertex_map: Dict[int, int]
    edge_map: Dict[Pair, QEdge]

    def qgraph(self, n: int, q: int) -> QGraph:
        return QGraph(n, q, frozenset(self.edge_map.values()))

    def key(self) -> Tuple:
        return (
            tuple(sorted(self.vertex_map.items())),
            tuple(sorted(self.edge_map.items())),
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "vertex_map": {str(v): h for v, h in sorted(self.vertex_map.items())},
            "edges": [
                {"pattern_edge": list(e), "qedge": list(x)}
                for e, x in sorted(self.edge_map.items())
            ],
        }


@dataclass(frozen=True)
class FreenessCertificate:
    free: bool
    witness: Optional[Embedding] = None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "free": self.free,
            "witness": self.witness.to_dict() if self.witness else None,
        }


# ===== ПОИСК =====

def _pareto_maximal(pairs: List[Tuple[int, int]]) -> List[Tuple[int, int]]:
    """Пары весов, не доминируемые покоординатно другой парой того же носителя."""
    return [
        p for p in pairs
        if not any(o != p and o[0] >= p[0] and o[1] >= p[1] for o in pairs)
    ]


class CopySearch:
    """
    Одноразовый перебор с возвратом: вершины паттерна ставятся в порядке обхода
    в ширину, после установки вершины выбираются веса всех рёбер к уже
    поставленным соседям с проверкой s-суммы в обоих концах.

    maximal_only=True перебирает только Парето-максимальные пары весов на
    каждом носителе: этого достаточно для ответа «есть/нет», так как
    увеличение веса не нарушает условие s-суммы.
    """

    def __init__(self, host: QGraph, pattern: PatternGraph, s: int, maximal_only: bool = False):
        if s < 1:
            raise ValidationError(f"s must be at least 1, got {s}")
        if pattern.n == 0:
            raise PatternError("pattern has no vertices and no edges")

        self.host = host
        self.pattern = pattern
        self.s = s
        self._started = False

        pairs: Dict[Pair, List[Tuple[int, int]]] = defaultdict(list)
        for e in host.sorted_edges():
            pairs[e.support].append((e.a, e.b))
        if maximal_only:
            pairs = {k: _pareto_maximal(v) for k, v in pairs.items()}
        self._pairs = dict(pairs)

        self._host_adj: Dict[int, set] = {h: set() for h in range(1, host.n + 1)}
        for u, v in self._pairs:
            self._host_adj[u].add(v)
            self._host_adj[v].add(u)

        self._adj = pattern.adjacency()
        self._order = self._placement_order()
        position = {x: i for i, x in enumerate(self._order)}
        self._back = [
            sorted((y for y in self._adj[x] if position[y] < i), key=position.get)
            for i, x in enumerate(self._order)
        ]

        self._vmap: Dict[int, int] = {}
        self._emap: Dict[Pair, QEdge] = {}
        self._used: set = set()
        self._at: Dict[int, List[int]] = {x: [] for x in self._order}

    def _placement_order(self) -> List[int]:
        """Компоненты F[U] по убыванию размера; внутри — BFS от вершины максимальной степени."""
        comps = [
            sorted(nodes) for nodes, edges in self.pattern.components() if edges
        ]
        comps.sort(key=lambda c: (-len(c), c[0]))

        order: List[int] = []
        for comp in comps:
            start = max(comp, key=lambda x: (len(self._adj[x]), -x))
            seen = {start}
            queue = deque([start])
            while queue:
                x = queue.popleft()
                order.append(x)
                for y in sorted(self._adj[x], key=lambda y: (-len(self._adj[y]), y)):
                    if y not in seen:
                        seen.add(y)
                        queue.append(y)
        return order

    def _candidates(self, i: int) -> List[int]:
        x = self._order[i]
        need = len(self._adj[x])
        back = self._back[i]
        if back:
            pool = set.intersection(*(self._host_adj[self._vmap[y]] for y in back))
        else:
            pool = self._host_adj.keys()
        return sorted(
            h for h in pool
            if h not in self._used and len(self._host_adj[h]) >= need
        )

    def _fits(self, x: int, weight: int) -> bool:
        placed = self._at[x]
        return not placed or weight + min(placed) >= self.s

    def _weights(self, hx: int, hy: int) -> List[Tuple[int, int]]:
        """Пары (вес в hx, вес в hy) в порядке канонических q-рёбер."""
        if hx < hy:
            return self._pairs[(hx, hy)]
        return [(b, a) for a, b in self._pairs[(hy, hx)]]

    def _place(self, i: int) -> Iterator[Embedding]:
        if i == len(self._order):
            yield Embedding(dict(self._vmap), dict(self._emap))
            return

        x = self._order[i]
        for h in self._candidates(i):
            self._vmap[x] = h
            self._used.add(h)
            yield from self._assign(i, 0)
            self._used.discard(h)
            del self._vmap[x]

    def _assign(self, i: int, j: int) -> Iterator[Embedding]:
        back = self._back[i]
        if j == len(back):
            yield from self._place(i + 1)
            return

        x, y = self._order[i], back[j]
        hx, hy = self._vmap[x], self._vmap[y]
        edge = (min(x, y), max(x, y))
        for wx, wy in self._weights(hx, hy):
            if not (self._fits(x, wx) and self._fits(y, wy)):
                continue
            self._at[x].append(wx)
            self._at[y].append(wy)
            self._emap[edge] = QEdge.oriented(hx, hy, wx, wy)
            yield from self._assign(i, j + 1)
            del self._emap[edge]
            self._at[y].pop()
            self._at[x].pop()

    def run(self) -> Iterator[Embedding]:
        if self._started:
            raise RuntimeError("CopySearch instances are single-use")
        self._started = True

        if self.host.n < self.pattern.n:
            return
        if not self._order:
            yield Embedding({}, {})
            return
        yield from self._place(0)


# ===== API =====

def contains_s_copy(host: QGraph, pattern: PatternGraph, s: int) -> Optional[Embedding]:
    """Первое найденное вложение s-копии F в H или None."""
    search = CopySearch(host, pattern, s, maximal_only=True)
    found = next(search.run(), None)
    logger.debug("🔍 s-copy search", n=host.n, q=host.q, edges=len(host),
                 pattern_edges=len(pattern), s=s, found=found is not None)
    return found


def find_s_copies(host: QGraph, pattern: PatternGraph, s: int, limit: int) -> List[Embedding]:
    """
    До limit различных вложений (различных по паре vertex_map, edge_map)
    в детерминированном порядке.
    """
    if limit < 1:
        raise ValidationError(f"limit must be at least 1, got {limit}")
    result = []
    for embedding in CopySearch(host, pattern, s).run():
        result.append(embedding)
        if len(result) >= limit:
            break
    logger.debug("🔍 s-copy enumeration", found=len(result), limit=limit)
    return result


def iter_s_copies(host: QGraph, pattern: PatternGraph, s: int) -> Iterator[Embedding]:
    return CopySearch(host, pattern, s).run()


def verify_free(host: QGraph, pattern: PatternGraph, s: int) -> FreenessCertificate:
    witness = contains_s_copy(host, pattern, s)
    return FreenessCertificate(free=witness is None, witness=witness)


def check_embedding(host: QGraph, pattern: PatternGraph, s: int, embedding: Embedding) -> bool:
    """Независимая проверка всех условий на вложение."""
    if host.n < pattern.n:
        return False
    vmap = embedding.vertex_map
    if set(vmap) != set(pattern.non_isolated()):
        return False
    if len(set(vmap.values())) != len(vmap) or not all(1 <= h <= host.n for h in vmap.values()):
        return False
    if set(embedding.edge_map) != set(pattern.edges):
        return False

    for (x, y), qedge in embedding.edge_map.items():
        if qedge not in host.edges:
            return False
        if set(qedge.support) != {vmap[x], vmap[y]}:
            return False

    for x in vmap:
        incident = [e for e in pattern.edges if x in e]
        for e, f in combinations(incident, 2):
            wx = embedding.edge_map[e].weight_at(vmap[x])
            wy = embedding.edge_map[f].weight_at(vmap[x])
            if wx + wy < s:
                return False
    return True
