"""
Точное вычисление ex(n, F, q, s) на малых n.

q-графы без s-копий F — это независимые множества гиперграфа запрещённых
конфигураций, поэтому ex(n,F,q,s) = |Q(n,2)| - (минимальное покрытие гиперрёбер).
Покрытие ищется ветвлением с отсечением.
"""

import time
from dataclasses import dataclass, field
from math import comb
from typing import Any, Dict, List, Optional, Tuple

import structlog

from config.settings import config
from core.errors import InstanceTooLarge, PatternError, ValidationError
from core.io import qgraph_to_json
from core.pattern import PatternGraph
from core.qgraph import QEdge, QGraph, full_qgraph, low_threshold
from services.detect_service import Embedding, contains_s_copy, iter_s_copies
from utils.parallel import run_tasks

logger = structlog.get_logger()

STATUS_EXACT = "exact"
STATUS_LOWER_BOUND = "lower_bound"
STATUS_TIMEOUT = "timeout"

_TIME_CHECK_EVERY = 1024


# ===== ТИПЫ =====

@dataclass(frozen=True)
class ForbiddenHypergraph:
    n: int
    q: int
    s: int
    ground: List[QEdge]
    hyperedges: List[frozenset]

    def indexed(self) -> List[Tuple[int, ...]]:
        """Гиперрёбра как отсортированные кортежи индексов в ground, лексикографически."""
        index = {e: i for i, e in enumerate(self.ground)}
        return sorted(tuple(sorted(index[e] for e in h)) for h in self.hyperedges)


@dataclass
class SearchResult:
    value: int
    witness: QGraph
    status: str
    nodes: int = 0
    seconds: float = 0.0
    params: Dict[str, Any] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": self.value,
            "status": self.status,
            "witness": qgraph_to_json(self.witness),
            "nodes": self.nodes,
            "seconds": round(self.seconds, 6),
            **self.params,
        }


# ===== ГИПЕРГРАФ =====

def _ground(n: int, q: int) -> List[QEdge]:
    if n < 2:
        return []
    return full_qgraph(n, q).sorted_edges()


def forbidden_configs(
    n: int,
    q: int,
    pattern: PatternGraph,
    s: int,
    max_ground: Optional[int] = None,
    max_hyperedges: Optional[int] = None,
) -> ForbiddenHypergraph:
    """Все s-копии F внутри Q(n,2), без повторов как множеств q-рёбер."""
    max_ground = max_ground or config.MAX_GROUND
    max_hyperedges = max_hyperedges or config.MAX_HYPEREDGES

    size = q * q * comb(n, 2) if n >= 2 else 0
    if size > max_ground:
        raise InstanceTooLarge(f"|Q(n,2)| = {size} exceeds the ground cap {max_ground}")

    ground = _ground(n, q)
    host = QGraph(n, q, frozenset(ground))

    found = set()
    for embedding in iter_s_copies(host, pattern, s):
        edges = frozenset(embedding.edge_map.values())
        if not edges:
            raise PatternError("edgeless pattern fits into every q-graph; ex is undefined")
        found.add(edges)
        if len(found) > max_hyperedges:
            raise InstanceTooLarge(f"more than {max_hyperedges} forbidden configurations")

    hyperedges = sorted(found, key=lambda h: sorted(h))
    logger.info("🧩 Forbidden configurations built", n=n, q=q, s=s,
                ground=len(ground), hyperedges=len(hyperedges))
    return ForbiddenHypergraph(n, q, s, ground, hyperedges)


# ===== ПОКРЫТИЕ =====

class HittingSetSearch:
    """
    Минимальное покрытие гиперрёбер (битовые маски над ground).

    Состояние узла: исключённые элементы (попали в покрытие) и сохранённые
    (запрещено исключать). Ветвимся по лексикографически первому живому
    гиперребру x_1..x_k: ветвь i исключает x_i и сохраняет x_1..x_{i-1}.
    Нижняя оценка — жадная упаковка попарно непересекающихся живых гиперрёбер
    по их несохранённым элементам.

    started — момент старта по time.time(), общий для воркеров пула.
    """

    def __init__(self, size: int, hyperedges: List[Tuple[int, ...]],
                 budget_nodes: Optional[int], budget_secs: Optional[float],
                 started: Optional[float] = None):
        self.size = size
        self.members = hyperedges
        self.masks = [sum(1 << x for x in h) for h in hyperedges]
        self.budget_nodes = budget_nodes
        self.budget_secs = budget_secs
        self.started = started if started is not None else time.time()

        self.nodes = 0
        self.stopped: Optional[str] = None
        self.best_mask, self.best_count = self.greedy_cover()

    def greedy_cover(self) -> Tuple[int, int]:
        """Жадное покрытие, затем удаление лишних элементов."""
        live = list(range(len(self.masks)))
        chosen: List[int] = []
        while live:
            counts: Dict[int, int] = {}
            for i in live:
                for x in self.members[i]:
                    counts[x] = counts.get(x, 0) + 1
            pick = min(counts, key=lambda x: (-counts[x], x))
            chosen.append(pick)
            live = [i for i in live if not self.masks[i] >> pick & 1]

        mask = sum(1 << x for x in chosen)
        for x in reversed(chosen):
            trial = mask & ~(1 << x)
            if all(m & trial for m in self.masks):
                mask = trial
        return mask, bin(mask).count("1")

    def _out_of_budget(self) -> bool:
        if self.budget_nodes is not None and self.nodes >= self.budget_nodes:
            self.stopped = STATUS_LOWER_BOUND
        elif (self.budget_secs is not None and self.nodes % _TIME_CHECK_EVERY == 0
              and time.time() - self.started >= self.budget_secs):
            self.stopped = STATUS_TIMEOUT
        return self.stopped is not None

    def _packing_bound(self, live: List[int], kept: int) -> Optional[int]:
        used = 0
        count = 0
        for i in live:
            free = self.masks[i] & ~kept
            if not free:
                return None
            if not free & used:
                used |= free
                count += 1
        return count

    def search(self, excluded: int, count: int, kept: int) -> None:
        if self.stopped or self._out_of_budget():
            return
        self.nodes += 1

        live = [i for i, m in enumerate(self.masks) if not m & excluded]
        if not live:
            if count < self.best_count:
                self.best_mask, self.best_count = excluded, count
                logger.debug("📈 Better cover", size=count, nodes=self.nodes)
            return

        bound = self._packing_bound(live, kept)
        if bound is None or count + bound >= self.best_count:
            return

        prefix = kept
        for x in self.members[live[0]]:
            bit = 1 << x
            if kept & bit:
                continue
            self.search(excluded | bit, count + 1, prefix)
            prefix |= bit
            if self.stopped:
                return


def _root_branches(ground: List[QEdge]) -> List[Tuple[int, int]]:
    """
    Ветви корня с учётом симметрии S_n: орбита q-ребра задаётся мультимножеством
    весов {a, b}. Ветвь k исключает представителя QEdge(1,2,min,max) k-й орбиты и
    сохраняет целиком орбиты 1..k-1.
    """
    index = {e: i for i, e in enumerate(ground)}
    orbits: Dict[Tuple[int, int], int] = {}
    for i, e in enumerate(ground):
        key = (min(e.a, e.b), max(e.a, e.b))
        orbits[key] = orbits.get(key, 0) | (1 << i)

    branches = []
    kept = 0
    for key in sorted(orbits):
        rep = index[QEdge(1, 2, key[0], key[1])]
        branches.append((rep, kept))
        kept |= orbits[key]
    return branches


def _solve_branch(task: Dict[str, Any]) -> Dict[str, Any]:
    solver = HittingSetSearch(task["size"], task["hyperedges"],
                              task["budget_nodes"], task["budget_secs"], task["started"])
    rep, kept = task["rep"], task["kept"]
    solver.search(1 << rep, 1, kept)
    return {
        "mask": solver.best_mask,
        "count": solver.best_count,
        "nodes": solver.nodes,
        "stopped": solver.stopped,
    }


# ===== API =====

def _check_budget(budget_nodes, budget_secs):
    if budget_nodes is not None and budget_nodes <= 0:
        raise ValidationError(f"node budget must be positive, got {budget_nodes}")
    if budget_secs is not None and budget_secs <= 0:
        raise ValidationError(f"time budget must be positive, got {budget_secs}")


def extremal_number(
    n: int,
    pattern: PatternGraph,
    q: int,
    s: int,
    budget_nodes: Optional[int] = None,
    budget_secs: Optional[float] = None,
    jobs: int = 1,
    symmetry: bool = True,
) -> SearchResult:
    """
    ex(n, F, q, s) с свидетелем.

    status=exact — перебор завершён; lower_bound — исчерпан бюджет узлов;
    timeout — исчерпан бюджет времени. В двух последних случаях value —
    лучшая найденная нижняя оценка.
    """
    budget_nodes = budget_nodes if budget_nodes is not None else config.BUDGET_NODES
    budget_secs = budget_secs if budget_secs is not None else config.BUDGET_SECS
    _check_budget(budget_nodes, budget_secs)
    if q < 1 or s < 1 or n < 0:
        raise ValidationError(f"invalid parameters n={n}, q={q}, s={s}")

    params = {"n": n, "q": q, "s": s, "pattern": {"n": pattern.n, "edges": [list(e) for e in pattern.sorted_edges()]}}
    started = time.monotonic()
    wall_started = time.time()
    logger.info("🚀 Extremal search started", n=n, q=q, s=s,
                pattern_vertices=pattern.n, pattern_edges=len(pattern),
                budget_nodes=budget_nodes, budget_secs=budget_secs)

    ground = _ground(n, q)
    full = QGraph(n, q, frozenset(ground))

    if not pattern.edges:
        if pattern.n == 0 or n >= pattern.n:
            raise PatternError("edgeless pattern fits into every q-graph on enough vertices")
        return SearchResult(len(ground), full, STATUS_EXACT, 0, time.monotonic() - started, params)

    hypergraph = forbidden_configs(n, q, pattern, s)
    hyperedges = hypergraph.indexed()
    if not hyperedges:
        logger.info("✅ No forbidden configurations", value=len(ground))
        return SearchResult(len(ground), full, STATUS_EXACT, 0, time.monotonic() - started, params)

    solver = HittingSetSearch(len(ground), hyperedges, budget_nodes, budget_secs, wall_started)

    if symmetry:
        branches = _root_branches(ground)
        if jobs is not None and jobs != 1:
            tasks = [
                {"size": len(ground), "hyperedges": hyperedges, "rep": rep, "kept": kept,
                 "budget_nodes": budget_nodes, "budget_secs": budget_secs, "started": wall_started}
                for rep, kept in branches
            ]
            for outcome in run_tasks(_solve_branch, tasks, jobs):
                solver.nodes += outcome["nodes"]
                solver.stopped = solver.stopped or outcome["stopped"]
                if outcome["count"] < solver.best_count:
                    solver.best_mask, solver.best_count = outcome["mask"], outcome["count"]
        else:
            for rep, kept in branches:
                solver.search(1 << rep, 1, kept)
                if solver.stopped:
                    break
    else:
        solver.search(0, 0, 0)

    status = solver.stopped or STATUS_EXACT
    witness = QGraph(n, q, frozenset(e for i, e in enumerate(ground) if not solver.best_mask >> i & 1))
    result = SearchResult(len(witness), witness, status, solver.nodes, time.monotonic() - started, params)

    log = logger.info if status == STATUS_EXACT else logger.warning
    log("✅ Extremal search finished" if status == STATUS_EXACT else "⚠️ Extremal search stopped by budget",
        value=result.value, status=status, nodes=result.nodes, seconds=round(result.seconds, 3))
    return result


def ordinary_turan(n: int, pattern: PatternGraph, **kwargs) -> SearchResult:
    """ex(n, F) как ex(n, F, 1, 2)."""
    return extremal_number(n, pattern, 1, 2, **kwargs)


def upper_bound_low_layer(n: int, pattern: PatternGraph, q: int, **kwargs) -> int:
    """
    (q² - m²)·C(n,2) + m²·ex(n,F), m = q - ⌈(q+1)/2⌉ + 1: вне нижнего слоя
    считаем всё, а носители нижнего слоя образуют F-свободный граф.
    Если ex(n,F) не досчитан до конца, вместо него берётся C(n,2).
    """
    m = q - low_threshold(q) + 1
    turan = ordinary_turan(n, pattern, **kwargs)
    supports = turan.value if turan.status == STATUS_EXACT else comb(n, 2)
    if turan.status != STATUS_EXACT:
        logger.warning("⚠️ Ordinary Turán number not exact, using C(n,2)", n=n)
    return (q * q - m * m) * comb(n, 2) + m * m * supports


def maximality_certificate(result: SearchResult, pattern: PatternGraph, s: int) -> List[Tuple[QEdge, Optional[Embedding]]]:
    """Для каждого отсутствующего q-ребра — s-копия F, которую оно создаёт."""
    witness = result.witness
    if witness.n < 2:
        return []
    missing = full_qgraph(witness.n, witness.q) - witness
    return [
        (edge, contains_s_copy(witness.with_edges([edge]), pattern, s))
        for edge in missing.sorted_edges()
    ]
