"""Приёмочная сетка: точные значения, формулы размеров и сертификаты"""

import time
from dataclasses import asdict, dataclass, field
from itertools import combinations, combinations_with_replacement, permutations, product
from math import comb
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np
import structlog

from core.errors import ValidationError
from core.pattern import PatternGraph, complete_multipartite, cycle, named_pattern
from core.qgraph import QGraph, full_qgraph
from services import construction_service as cs
from services.detect_service import contains_s_copy, verify_free
from services.extremal_service import STATUS_EXACT, extremal_number, ordinary_turan
from services.robust_service import chi1_experiment, chromatic_number, robust_chromatic
from services.wstar_service import (
    ALLOWED,
    WeightFunction,
    check_star,
    degree,
    max_star_weight,
    quarter_split,
    quarter_split_weight,
    total_weight,
    zykov_shift,
)

logger = structlog.get_logger()

ACCEPTANCE_SEED = 20240501


@dataclass
class CriterionResult:
    name: str
    passed: bool
    failures: List[str] = field(default_factory=list)
    seconds: float = 0.0


@dataclass
class AcceptanceReport:
    criteria: List[CriterionResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.criteria)

    def to_dict(self) -> Dict[str, Any]:
        return {"passed": self.passed, "criteria": [asdict(c) for c in self.criteria]}


# ===== ОРАКУЛЫ =====

def brute_force_contains(host: QGraph, pattern: PatternGraph, s: int) -> bool:
    """Перебор всех инъекций V(F[U]) -> [n] и всех выборов q-рёбер на образах."""
    if host.n < pattern.n:
        return False
    if not pattern.edges:
        return True

    core = pattern.non_isolated()
    edges = pattern.sorted_edges()
    for image in permutations(range(1, host.n + 1), len(core)):
        vmap = dict(zip(core, image))
        options = []
        for u, v in edges:
            hu, hv = vmap[u], vmap[v]
            options.append([e for e in host.edges if set(e.support) == {hu, hv}])
        for choice in product(*options):
            chosen = dict(zip(edges, choice))
            if all(
                chosen[e].weight_at(vmap[x]) + chosen[f].weight_at(vmap[x]) >= s
                for x in core
                for i, e in enumerate(edges) if x in e
                for f in edges[i + 1:] if x in f
            ):
                return True
    return False


def random_star_function(rng: np.random.Generator, k: int) -> WeightFunction:
    """Случайная W с условием (⋆): выборка с отбраковкой, 3-рёбра редкие."""
    while True:
        values = rng.choice(ALLOWED, size=comb(k, 2), p=[0.3, 0.4, 0.3])
        candidate = WeightFunction(k, tuple(int(v) for v in values))
        if check_star(candidate).ok:
            return candidate


def _random_pattern(rng: np.random.Generator, vertices: int) -> PatternGraph:
    while True:
        edges = [pair for pair in combinations(range(1, vertices + 1), 2) if rng.random() < 0.6]
        if edges:
            return PatternGraph.from_edges(vertices, edges)


def _random_graph(rng: np.random.Generator, vertices: int, p: float) -> PatternGraph:
    pairs = [(u, v) for u in range(1, vertices + 1) for v in range(u + 1, vertices + 1)]
    return PatternGraph.from_edges(vertices, [pair for pair in pairs if rng.random() < p])


# ===== КРИТЕРИИ =====

def _counts(fail: Callable[[str], None]) -> None:
    for q in range(1, 7):
        for n in range(2, 11):
            size = len(cs.universal_tree(q, n))
            if size != (q * q // 2) * comb(n, 2):
                fail(f"|U_{q},{n}| = {size}")
        m = q - (q + 2) // 2 + 1
        size = len(cs.low_complement(q, 5))
        if size != (q * q - m * m) * comb(5, 2):
            fail(f"|low_complement({q},5)| = {size}")
    if len(cs.tripart_13_4(8)) != 94:
        fail("|tripart_13_4(8)| != 94")
    for k in range(2, 6):
        size = len(cs.triangle_family(4, 3 * k, 4))
        if size != 36 * k * k - 7 * k:
            fail(f"triangle v4 k={k}: {size}")


def _universal_tree_cycles(fail):
    for q in (2, 3, 4):
        for n in (5, 6, 7):
            host = cs.universal_tree(q, n)
            for k in (3, 4, 5):
                if not verify_free(host, cycle(k), q + 1).free:
                    fail(f"U_{q},{n} contains a {q + 1}-copy of C{k}")


def _extremal_values(fail):
    triangle = cycle(3)
    for n, q, expected in ((3, 2, 8), (3, 3, 18), (4, 2, 16)):
        result = extremal_number(n, triangle, q, q + 1)
        if result.value != expected or result.status != STATUS_EXACT:
            fail(f"ex({n},C3,{q}) = {result.value} ({result.status}), expected {expected}")


def _mantel(fail):
    for n in range(3, 8):
        result = ordinary_turan(n, cycle(3))
        if result.value != n * n // 4 or result.status != STATUS_EXACT:
            fail(f"ex({n},C3) = {result.value}")


def _triple_partition(fail):
    for q in range(2, 11):
        triples = cs.triple_partition(q)
        flat = [e for t in triples for e in t]
        if len(triples) != q * q or len(flat) != len(set(flat)) or set(flat) != full_qgraph(3, q).edges:
            fail(f"q={q}: not a partition of Q(3,2) into q² triples")
            continue
        for t in triples:
            if contains_s_copy(QGraph(3, q, frozenset(t)), cycle(3), q + 1) is None:
                fail(f"q={q}: triple {t} is not a {q + 1}-triangle")


def _robust(fail):
    for r, s, t in combinations_with_replacement((1, 2, 3), 3):
        expected = 1 if t == 1 else (2 if r <= 2 else 3)
        value = robust_chromatic(complete_multipartite(r, s, t))
        if value != expected:
            fail(f"χ₁(K_{r},{s},{t}) = {value}, expected {expected}")
    if robust_chromatic(cycle(3)) != 1:
        fail("χ₁(C3) != 1")

    rng = np.random.default_rng(ACCEPTANCE_SEED)
    for _ in range(100):
        graph = _random_graph(rng, int(rng.integers(1, 9)), 0.5)
        if graph.edges and not 1 <= robust_chromatic(graph) <= chromatic_number(graph):
            fail(f"χ₁ > χ on {graph.sorted_edges()}")


def _freeness(fail):
    checks = [
        ("tripart_13_4(8) vs K233", cs.tripart_13_4(8), named_pattern("k233"), 3),
        ("q3_pair(8) vs C3", cs.q3_pair_example(8), cycle(3), 4),
        ("F_A(9,2) vs P5", cs.tree_family(cs.Partition.balanced(9, 2)), named_pattern("p5"), 3),
    ]
    for q in (2, 4):
        for variant in (1, 2, 3, 4):
            if variant == 4 and q != 4:
                continue
            checks.append((f"triangle v{variant} q={q}", cs.triangle_family(q, 6, variant), cycle(3), q + 1))

    for name, host, pattern, s in checks:
        if not verify_free(host, pattern, s).free:
            fail(f"{name}: copy found")


def _wstar(fail):
    for k, expected in ((2, 3), (3, 8), (4, 15)):
        value, _ = max_star_weight(k, method="scan")
        if value != expected:
            fail(f"scan max W⋆({k}) = {value}")
    for k in range(2, 6):
        if max_star_weight(k, method="scan")[0] != max_star_weight(k, method="branch")[0]:
            fail(f"scan and branch disagree at k={k}")
    for k in range(2, 13):
        w = quarter_split(k)
        if not check_star(w).ok or total_weight(w) != quarter_split_weight(k):
            fail(f"quarter split k={k}")

    rng = np.random.default_rng(ACCEPTANCE_SEED)
    for _ in range(1000):
        k = int(rng.integers(2, 7))
        w = random_star_function(rng, k)
        u, v = (int(x) + 1 for x in rng.choice(k, size=2, replace=False))
        shifted = zykov_shift(w, u, v)
        if not check_star(shifted).ok:
            fail(f"shift {u}->{v} breaks (⋆) on {w.values}")
        if degree(w, v) - degree(w, u) >= w.weight(u, v) and total_weight(shifted) < total_weight(w):
            fail(f"shift {u}->{v} decreases weight on {w.values}")


def _experiment(fail):
    report = chi1_experiment(6, 3, 0.95, 50, 42)
    if report.frequency < 0.9:
        fail(f"K(6,3,0.95): frequency {report.frequency}")
    report = chi1_experiment(6, 2, 1.0, 10, 42)
    if report.frequency != 1.0:
        fail(f"K(6,2,1.0): frequency {report.frequency}")


def _oracle(fail):
    rng = np.random.default_rng(ACCEPTANCE_SEED)
    for _ in range(200):
        n = int(rng.integers(2, 6))
        q = int(rng.integers(1, 3))
        s = int(rng.integers(1, 2 * q + 1))
        pattern = _random_pattern(rng, int(rng.integers(2, 5)))
        host = QGraph(n, q, frozenset(e for e in full_qgraph(n, q).edges if rng.random() < 0.5))
        fast = contains_s_copy(host, pattern, s) is not None
        if fast != brute_force_contains(host, pattern, s):
            fail(f"detector disagrees with oracle: n={n} q={q} s={s} F={pattern.sorted_edges()}")


CRITERIA: Dict[str, Callable] = {
    "count-formulas": _counts,
    "universal-tree-cycles": _universal_tree_cycles,
    "extremal-values": _extremal_values,
    "mantel": _mantel,
    "triple-partition": _triple_partition,
    "robust-chromatic": _robust,
    "construction-freeness": _freeness,
    "wstar": _wstar,
    "random-chi1": _experiment,
    "detector-oracle": _oracle,
}


def run_acceptance(only: Optional[Sequence[str]] = None) -> AcceptanceReport:
    names = list(only) if only else list(CRITERIA)
    unknown = [name for name in names if name not in CRITERIA]
    if unknown:
        raise ValidationError(f"unknown acceptance criteria: {unknown}")
    results = []
    for name in names:
        failures: List[str] = []
        started = time.monotonic()
        CRITERIA[name](failures.append)
        result = CriterionResult(name, not failures, failures[:20], round(time.monotonic() - started, 3))
        results.append(result)
        if result.passed:
            logger.info("✅ Criterion passed", name=name, seconds=result.seconds)
        else:
            logger.error("❌ Criterion failed", name=name, failures=len(failures))
    return AcceptanceReport(results)
