"""
Командный слой: одинаковые отчёты для CLI и HTTP.

Каждая run_* функция только разбирает параметры, вызывает сервис и
упаковывает результат в RunReport.
"""

import csv
import io
import time
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple

import structlog

from core.errors import ConstructionError
from core.io import pattern_to_json, qgraph_to_json
from core.pattern import PatternGraph
from core.qgraph import QGraph
from services import construction_service as cs
from services.acceptance_service import run_acceptance
from services.detect_service import contains_s_copy, find_s_copies, verify_free
from services.extremal_service import extremal_number
from services.robust_service import chi1_experiment, chromatic_number, robust_chromatic
from services.wstar_service import WeightFunction, check_star, max_star_weight, total_weight

logger = structlog.get_logger()


@dataclass
class RunReport:
    command: str
    parameters: Dict[str, Any]
    result: Dict[str, Any]
    seconds: float = 0.0
    nodes: Optional[int] = None
    artifact: Any = field(default=None, repr=False)

    def to_dict(self) -> Dict[str, Any]:
        payload = {
            "command": self.command,
            "parameters": self.parameters,
            "result": self.result,
            "seconds": round(self.seconds, 6),
        }
        if self.nodes is not None:
            payload["nodes"] = self.nodes
        return payload

    def rows(self) -> List[Dict[str, Any]]:
        """Табличный вид: строки испытаний, если они есть, иначе одна строка скаляров."""
        for key in ("per_trial", "criteria"):
            if key in self.result:
                return [{k: v for k, v in rec.items() if _scalar(v)} for rec in self.result[key]]
        row = {k: v for k, v in self.parameters.items() if _scalar(v)}
        row.update({k: v for k, v in self.result.items() if _scalar(v)})
        return [row]


def _scalar(value: Any) -> bool:
    return isinstance(value, (int, float, str, bool)) or value is None


def to_csv(report: RunReport) -> str:
    rows = report.rows()
    columns: List[str] = []
    for row in rows:
        columns.extend(k for k in row if k not in columns)
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=columns, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()


def _timed(command: str, parameters: Dict[str, Any], func: Callable[[], Tuple[Dict[str, Any], Optional[int], Any]]) -> RunReport:
    started = time.monotonic()
    result, nodes, artifact = func()
    report = RunReport(command, parameters, result, time.monotonic() - started, nodes, artifact)
    logger.info("📋 Command finished", command=command, seconds=round(report.seconds, 3))
    return report


# ===== ПОИСК КОПИЙ =====

def run_detect(host: QGraph, pattern: PatternGraph, s: int, all_copies: bool = False, limit: int = 100) -> RunReport:
    params = {"n": host.n, "q": host.q, "s": s, "pattern": pattern_to_json(pattern),
              "all": all_copies, "limit": limit if all_copies else None}

    def work():
        if all_copies:
            found = find_s_copies(host, pattern, s, limit)
            return {"found": bool(found), "count": len(found),
                    "embeddings": [e.to_dict() for e in found]}, None, None
        witness = contains_s_copy(host, pattern, s)
        return {"found": witness is not None,
                "witness": witness.to_dict() if witness else None}, None, None

    return _timed("detect", params, work)


def run_verify(host: QGraph, pattern: PatternGraph, s: int) -> RunReport:
    params = {"n": host.n, "q": host.q, "s": s, "pattern": pattern_to_json(pattern)}
    return _timed("verify", params, lambda: (verify_free(host, pattern, s).to_dict(), None, None))


# ===== ЭКСТРЕМАЛЬНЫЕ ЧИСЛА =====

def run_extremal(n: int, q: int, s: int, pattern: PatternGraph,
                 budget_nodes: Optional[int] = None, budget_secs: Optional[float] = None,
                 jobs: int = 1) -> RunReport:
    params = {"n": n, "q": q, "s": s, "pattern": pattern_to_json(pattern),
              "budget_nodes": budget_nodes, "budget_secs": budget_secs}

    def work():
        result = extremal_number(n, pattern, q, s, budget_nodes=budget_nodes,
                                 budget_secs=budget_secs, jobs=jobs)
        payload = result.to_dict()
        for key in ("n", "q", "s", "pattern"):
            payload.pop(key, None)
        return payload, result.nodes, result.witness

    return _timed("extremal", params, work)


# ===== КОНСТРУКЦИИ =====

def _tree_partition(params: Dict[str, Any]) -> cs.Partition:
    if params.get("blocks"):
        return cs.Partition(tuple(tuple(b) for b in params["blocks"]))
    return cs.Partition.balanced(params["n"], params["r"])


def _build_chi1_lower(p):
    graph = cs.chi1_lower(p["pattern"], p["q"], p["n"], p.get("allow_degenerate", False))
    return graph, None


def _build_tree_family(p):
    partition = _tree_partition(p)
    variant = p.get("variant", "F_A")
    return cs.tree_family(partition, variant), cs.tree_family_size(partition, variant)


def _build_triangle_family(p):
    try:
        variant = int(p["variant"])
    except ValueError:
        raise ConstructionError(f"triangle-family variant must be 1..4, got {p['variant']!r}") from None
    return cs.triangle_family(p["q"], p["n"], variant), cs.triangle_family_size(p["q"], p["n"], variant)


def _build_tripart_lower(p):
    return cs.tripart_lower(p["n"], p["r"], p["s"], p["t"]), None


def _build_triple_partition(p):
    triples = cs.triple_partition(p["q"])
    union = QGraph(3, p["q"], frozenset(e for t in triples for e in t))
    return union, 3 * p["q"] ** 2


CONSTRUCTIONS: Dict[str, Callable[[Dict[str, Any]], Tuple[QGraph, Optional[int]]]] = {
    "universal-tree": lambda p: (cs.universal_tree(p["q"], p["n"]), cs.universal_tree_size(p["q"], p["n"])),
    "blowup": lambda p: (cs.blowup(p["pattern"], p["q"]), cs.blowup_size(p["pattern"], p["q"])),
    "low-complement": lambda p: (cs.low_complement(p["q"], p["n"]), cs.low_complement_size(p["q"], p["n"])),
    "chi1-lower": _build_chi1_lower,
    "tree-family": _build_tree_family,
    "tripart-13-4": lambda p: (cs.tripart_13_4(p["n"]), cs.tripart_13_4_size(p["n"])),
    "tripart-lower": _build_tripart_lower,
    "triangle-family": _build_triangle_family,
    "triple-partition": _build_triple_partition,
    "q3-pair": lambda p: (cs.q3_pair_example(p["n"]), cs.q3_pair_size(p["n"])),
}


def run_construct(kind: str, **params) -> RunReport:
    if kind not in CONSTRUCTIONS:
        raise ConstructionError(f"unknown construction {kind!r}, expected one of {sorted(CONSTRUCTIONS)}")

    shown = {k: (pattern_to_json(v) if isinstance(v, PatternGraph) else v) for k, v in params.items()}
    shown["kind"] = kind

    def work():
        try:
            graph, expected = CONSTRUCTIONS[kind](params)
        except KeyError as e:
            raise ConstructionError(f"construction {kind!r} needs parameter {e.args[0]!r}") from None
        result = {"size": len(graph), "expected_size": expected, "qgraph": qgraph_to_json(graph)}
        if kind == "triple-partition":
            result["triples"] = [[list(e) for e in t] for t in cs.triple_partition(params["q"])]
        return result, None, graph

    return _timed("construct", shown, work)


# ===== ХРОМАТИЧЕСКИЕ ЧИСЛА =====

def run_chi(pattern: PatternGraph) -> RunReport:
    return _timed("chi", {"pattern": pattern_to_json(pattern)},
                  lambda: ({"chi": chromatic_number(pattern)}, None, None))


def run_chi1(pattern: PatternGraph, method: str = "coloring") -> RunReport:
    return _timed("chi1", {"pattern": pattern_to_json(pattern), "method": method},
                  lambda: ({"chi1": robust_chromatic(pattern, method=method)}, None, None))


def run_random_chi1(m: int, r: int, p: float, trials: int, seed: int, jobs: int = 1) -> RunReport:
    params = {"m": m, "r": r, "p": p, "trials": trials, "seed": seed}
    return _timed("random-chi1", params,
                  lambda: (chi1_experiment(m, r, p, trials, seed, jobs=jobs).to_dict(), None, None))


# ===== W⋆ =====

def run_wstar_max(k: int, method: str = "branch") -> RunReport:
    def work():
        best, witness = max_star_weight(k, method=method)
        return {"weight": best, "witness": witness.to_dict()}, None, witness

    return _timed("wstar-max", {"k": k, "method": method}, work)


def run_wstar_check(w: WeightFunction) -> RunReport:
    def work():
        payload = check_star(w).to_dict()
        payload["total_weight"] = total_weight(w)
        return payload, None, None

    return _timed("wstar-check", {"k": w.k}, work)


# ===== ПРИЁМКА =====

def run_acceptance_grid(only: Optional[List[str]] = None) -> RunReport:
    return _timed("acceptance", {"only": list(only) if only else None},
                  lambda: (run_acceptance(only).to_dict(), None, None))
