"""Хроматическое число, 1-выборы и робастное хроматическое число χ₁"""

from dataclasses import asdict, dataclass, field
from typing import Any, Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Union

import networkx as nx
import numpy as np
import structlog

from config.settings import config
from core.errors import CapExceeded, ValidationError
from core.pattern import Pair, PatternGraph
from utils.parallel import run_tasks
from utils.union_find import RollbackUnionFind

logger = structlog.get_logger()

RemovalSet = FrozenSet[Pair]


# ===== ХРОМАТИЧЕСКОЕ ЧИСЛО =====

def _coloring_order(graph: PatternGraph) -> List[int]:
    adj = graph.adjacency()
    return sorted(graph.vertices, key=lambda v: (-len(adj[v]), v))


def greedy_colors(graph: PatternGraph) -> int:
    """Верхняя оценка χ по DSATUR (networkx)."""
    if graph.n == 0:
        return 0
    coloring = nx.greedy_color(graph.to_networkx(), strategy="DSATUR")
    return max(coloring.values()) + 1


def _k_colorable(graph: PatternGraph, k: int) -> bool:
    adj = graph.adjacency()
    order = _coloring_order(graph)
    colors: Dict[int, int] = {}

    def place(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        taken = {colors[u] for u in adj[v] if u in colors}
        for c in range(min(used + 1, k)):
            if c in taken:
                continue
            colors[v] = c
            if place(i + 1, max(used, c + 1)):
                return True
            del colors[v]
        return False

    return place(0, 0)


def chromatic_number(graph: PatternGraph, cap: Optional[int] = None) -> int:
    """
    Точное χ: нижняя оценка — наибольшая клика, верхняя — DSATUR,
    между ними перебор k-раскрасок с возвратом.
    """
    cap = cap or config.CHROMATIC_CAP
    if graph.n > cap:
        raise CapExceeded(f"chromatic number limited to {cap} vertices, got {graph.n}")
    if graph.n == 0:
        return 0
    if not graph.edges:
        return 1

    lower = max(len(c) for c in nx.find_cliques(graph.to_networkx()))
    upper = greedy_colors(graph)
    for k in range(lower, upper):
        if _k_colorable(graph, k):
            return k
    return upper


# ===== 1-ВЫБОРЫ =====

def _check_subset(graph: PatternGraph, removed: Iterable[Pair]) -> RemovalSet:
    edges = frozenset((min(u, v), max(u, v)) for u, v in removed)
    extra = edges - graph.edges
    if extra:
        raise ValidationError(f"edges {sorted(extra)} are not edges of the pattern")
    return edges


def is_selection_image(graph: PatternGraph, removed: Iterable[Pair]) -> bool:
    """
    D = f[V(F)] для некоторого 1-выбора f тогда и только тогда, когда D
    покрывает все неизолированные вершины и в каждой компоненте (V(F), D)
    рёбер не больше, чем вершин.
    """
    edges = _check_subset(graph, removed)
    covered = {v for e in edges for v in e}
    if any(v not in covered for v in graph.non_isolated()):
        return False
    sub = PatternGraph(graph.n, edges)
    return all(len(comp_edges) <= len(nodes) for nodes, comp_edges in sub.components())


def selection_for_image(graph: PatternGraph, removed: Iterable[Pair]) -> Optional[Dict[int, Pair]]:
    """
    Явный 1-выбор с образом D: паросочетание «ребро -> выбирающая его вершина»,
    насыщающее D, остальные вершины берут любое своё ребро из D.
    """
    edges = sorted(_check_subset(graph, removed))
    vertices = graph.non_isolated()

    bipartite = nx.Graph()
    edge_nodes = [("e", e) for e in edges]
    bipartite.add_nodes_from(edge_nodes, bipartite=0)
    bipartite.add_nodes_from((("v", v) for v in vertices), bipartite=1)
    for e in edges:
        for v in e:
            bipartite.add_edge(("e", e), ("v", v))

    matching = nx.bipartite.hopcroft_karp_matching(bipartite, top_nodes=edge_nodes)
    if any(node not in matching for node in edge_nodes):
        return None

    selection: Dict[int, Pair] = {}
    for e in edges:
        selection[matching[("e", e)][1]] = e
    for v in vertices:
        if v in selection:
            continue
        incident = [e for e in edges if v in e]
        if not incident:
            return None
        selection[v] = incident[0]
    return selection


def removed_graph(graph: PatternGraph, removed: Iterable[Pair]) -> PatternGraph:
    """F_f: вершины сохраняются, удаляются рёбра образа."""
    return graph.remove_edges(_check_subset(graph, removed))


def enumerate_removal_sets(graph: PatternGraph, cap: Optional[int] = None) -> Iterator[RemovalSet]:
    """Все образы 1-выборов, каждый ровно один раз (перебор рёбер вкл/выкл)."""
    cap = cap or config.REMOVAL_EDGE_CAP
    if len(graph.edges) > cap:
        raise CapExceeded(f"removal-set enumeration limited to {cap} edges, got {len(graph.edges)}")

    edges = graph.sorted_edges()
    last_incident: Dict[int, int] = {}
    for i, (u, v) in enumerate(edges):
        last_incident[u] = i
        last_incident[v] = i

    uf = RollbackUnionFind(graph.vertices)
    cover = {v: 0 for v in graph.vertices}
    chosen: List[Pair] = []

    def closes_ok(i: int) -> bool:
        u, v = edges[i]
        return all(cover[x] > 0 or last_incident[x] != i for x in (u, v))

    def walk(i: int) -> Iterator[RemovalSet]:
        if i == len(edges):
            yield frozenset(chosen)
            return
        u, v = edges[i]

        verts, count = uf.edges_after_union(u, v)
        if count <= verts:
            uf.add_edge(u, v)
            cover[u] += 1
            cover[v] += 1
            chosen.append(edges[i])
            yield from walk(i + 1)
            chosen.pop()
            cover[v] -= 1
            cover[u] -= 1
            uf.rollback()

        if closes_ok(i):
            yield from walk(i + 1)

    if not edges:
        yield frozenset()
        return
    yield from walk(0)


# ===== χ₁ =====

def _pseudoforest_colorable(graph: PatternGraph, k: int) -> bool:
    """
    Есть ли k-раскраска, у которой одноцветные рёбра образуют граф, где в
    каждой компоненте рёбер не больше, чем вершин. Такое множество всегда
    дополняется до образа 1-выбора, поэтому χ₁(F) — наименьшее такое k.
    """
    adj = graph.adjacency()
    order = _coloring_order(graph)
    colors: Dict[int, int] = {}
    uf = RollbackUnionFind(graph.vertices)

    def place(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        for c in range(min(used + 1, k)):
            mark = uf.checkpoint()
            ok = True
            for u in adj[v]:
                if colors.get(u) != c:
                    continue
                verts, count = uf.edges_after_union(u, v)
                if count > verts:
                    ok = False
                    break
                uf.add_edge(u, v)
            if ok:
                colors[v] = c
                if place(i + 1, max(used, c + 1)):
                    return True
                del colors[v]
            uf.rollback_to(mark)
        return False

    return place(0, 0)


def robust_chromatic(graph: PatternGraph, method: str = "coloring",
                     vertex_cap: Optional[int] = None, edge_cap: Optional[int] = None) -> int:
    """
    χ₁(F) = min χ(F_f) по всем 1-удалённым графам.

    method="coloring" — через раскраски с «псевдолесным» одноцветным множеством;
    method="removal" — прямой перебор образов 1-выборов (медленнее, для сверки).
    """
    if graph.n == 0:
        return 0
    if not graph.edges:
        return 1

    if method == "removal":
        best = None
        for removed in enumerate_removal_sets(graph, edge_cap):
            value = chromatic_number(removed_graph(graph, removed))
            if best is None or value < best:
                best = value
                if best == 1:
                    break
        return best

    if method != "coloring":
        raise ValidationError(f"unknown method {method!r}")

    vertex_cap = vertex_cap or config.ROBUST_VERTEX_CAP
    if graph.n > vertex_cap:
        raise CapExceeded(f"robust chromatic number limited to {vertex_cap} vertices, got {graph.n}")

    upper = greedy_colors(graph)
    for k in range(1, upper):
        if _pseudoforest_colorable(graph, k):
            return k
    return upper


# ===== СЛУЧАЙНЫЕ МНОГОДОЛЬНЫЕ ГРАФЫ =====

def random_multipartite(m: int, r: int, p: float, seed: Union[int, Sequence[int], None]) -> PatternGraph:
    """
    K(m, r, p): доля i — вершины i·m+1 .. (i+1)·m; межпартийные пары
    в лексикографическом порядке берутся, если очередное число PCG64 < p.
    """
    if m < 1 or r < 1:
        raise ValidationError(f"m and r must be positive, got m={m}, r={r}")
    if not 0.0 <= p <= 1.0:
        raise ValidationError(f"p must lie in [0, 1], got {p}")

    n = m * r
    part = {v: (v - 1) // m for v in range(1, n + 1)}
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if part[u] != part[v]]

    rng = np.random.default_rng(seed)
    draws = rng.random(len(pairs))
    return PatternGraph(n, frozenset(pair for pair, x in zip(pairs, draws) if x < p))


def count_cliques(graph: PatternGraph, r: int) -> int:
    return sum(1 for c in nx.enumerate_all_cliques(graph.to_networkx()) if len(c) == r)


def clique_count_threshold_holds(graph: PatternGraph, r: int, m: int) -> bool:
    """
    Образ 1-выбора содержит не больше r·m рёбер, каждое ребро r-дольного
    графа с долями по m лежит не более чем в m^(r-2) r-кликах. Если r-клик
    больше r·m^(r-1), одна из них переживает удаление и χ₁ = r.
    """
    return count_cliques(graph, r) > r * m ** (r - 1)


@dataclass
class ExperimentReport:
    m: int
    r: int
    p: float
    trials: int
    seed: int
    frequency: float
    rng: str = config.RNG_NAME
    per_trial: List[Dict[str, Any]] = field(default_factory=list)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def _run_trial(task: Dict[str, Any]) -> Dict[str, Any]:
    m, r, p, seed, trial = task["m"], task["r"], task["p"], task["seed"], task["trial"]
    graph = random_multipartite(m, r, p, [seed, trial])
    chi1 = robust_chromatic(graph)
    record = {
        "trial": trial,
        "edges": len(graph.edges),
        "chi1": chi1,
        "clique_threshold": clique_count_threshold_holds(graph, r, m),
    }
    logger.debug("🎲 Trial finished", **record)
    return record


def chi1_experiment(m: int, r: int, p: float, trials: int, seed: int, jobs: int = 1) -> ExperimentReport:
    """Доля испытаний, где χ₁(K(m,r,p)) = r. Испытание t использует зерно [seed, t]."""
    if trials < 1:
        raise ValidationError(f"trials must be positive, got {trials}")
    logger.info("🚀 χ₁ experiment started", m=m, r=r, p=p, trials=trials, seed=seed, rng=config.RNG_NAME)

    tasks = [{"m": m, "r": r, "p": p, "seed": seed, "trial": t} for t in range(trials)]
    records = run_tasks(_run_trial, tasks, jobs)
    hits = sum(1 for rec in records if rec["chi1"] == r)

    report = ExperimentReport(m=m, r=r, p=p, trials=trials, seed=seed,
                              frequency=hits / trials, per_trial=records)
    logger.info("✅ χ₁ experiment finished", frequency=report.frequency, hits=hits)
    return report
