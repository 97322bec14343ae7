"""Весовые функции W: E(K_k) -> {0,2,3}, условие (⋆), сдвиги Зыкова"""

from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple, Union

import structlog

from config.settings import config
from core.errors import CapExceeded, FormatError, ValidationError
from core.io import parse_header, parse_int_row, read_text, split_header

logger = structlog.get_logger()

ALLOWED = (0, 2, 3)
SCAN_CAP = 5

Pair = Tuple[int, int]


@dataclass(frozen=True)
class WeightFunction:
    """Полная функция на парах [k]; values — в порядке itertools.combinations."""

    k: int
    values: Tuple[int, ...]

    def __post_init__(self):
        if self.k < 0:
            raise ValidationError(f"k must be non-negative, got {self.k}")
        values = tuple(self.values)
        if len(values) != comb(self.k, 2):
            raise ValidationError(f"expected {comb(self.k, 2)} values for k={self.k}, got {len(values)}")
        bad = sorted(set(values) - set(ALLOWED))
        if bad:
            raise ValidationError(f"weights must lie in {{0,2,3}}, got {bad}")
        object.__setattr__(self, "values", values)

    @classmethod
    def from_mapping(cls, k: int, weights: Dict[Pair, int]) -> "WeightFunction":
        normalized = {(min(u, v), max(u, v)): w for (u, v), w in weights.items()}
        missing = [p for p in pairs_of(k) if p not in normalized]
        if missing:
            raise ValidationError(f"weight function is not total, missing {missing[:5]}")
        return cls(k, tuple(normalized[p] for p in pairs_of(k)))

    @classmethod
    def constant(cls, k: int, value: int) -> "WeightFunction":
        return cls(k, (value,) * comb(k, 2))

    def as_mapping(self) -> Dict[Pair, int]:
        return dict(zip(pairs_of(self.k), self.values))

    def weight(self, u: int, v: int) -> int:
        if u == v:
            raise ValidationError("weight of a loop is undefined")
        return self.as_mapping()[(min(u, v), max(u, v))]

    def to_dict(self) -> Dict[str, Any]:
        return {"k": self.k, "weights": [[u, v, w] for (u, v), w in self.as_mapping().items()]}


def pairs_of(k: int) -> List[Pair]:
    return list(combinations(range(1, k + 1), 2))


def total_weight(w: WeightFunction) -> int:
    return sum(w.values)


def degree(w: WeightFunction, v: int) -> int:
    if not 1 <= v <= w.k:
        raise ValidationError(f"vertex {v} outside 1..{w.k}")
    return sum(x for (a, b), x in w.as_mapping().items() if v in (a, b))


# ===== УСЛОВИЕ (⋆) =====

@dataclass(frozen=True)
class StarCheck:
    ok: bool
    kind: Optional[str] = None
    vertices: Optional[Tuple[int, ...]] = None

    def to_dict(self) -> Dict[str, Any]:
        return {"ok": self.ok, "kind": self.kind, "vertices": list(self.vertices) if self.vertices else None}


def _cycles_on(quad: Tuple[int, int, int, int]):
    a, b, c, d = quad
    return ((a, b, c, d), (a, b, d, c), (a, c, b, d))


def check_star(w: WeightFunction) -> StarCheck:
    """
    (i) 3-рёбра без треугольников; (ii) у каждого 4-цикла из 3-рёбер
    хотя бы одна диагональ — 0-ребро. При нарушении возвращает его.
    """
    weights = w.as_mapping()

    def get(x: int, y: int) -> int:
        return weights[(min(x, y), max(x, y))]

    for tri in combinations(range(1, w.k + 1), 3):
        if all(get(x, y) == 3 for x, y in combinations(tri, 2)):
            return StarCheck(False, "triangle", tri)

    for quad in combinations(range(1, w.k + 1), 4):
        for u, v, x, y in _cycles_on(quad):
            if all(get(*e) == 3 for e in ((u, v), (v, x), (x, y), (y, u))):
                if get(u, x) != 0 and get(v, y) != 0:
                    return StarCheck(False, "c4", (u, v, x, y))
    return StarCheck(True)


# ===== СДВИГ ЗЫКОВА =====

def zykov_shift(w: WeightFunction, u: int, v: int) -> WeightFunction:
    """W^{u->v}: W(uv) = 0, W(ux) = W(vx) для x != u, v, остальное без изменений."""
    if u == v:
        raise ValidationError("zykov shift needs two distinct vertices")
    if not (1 <= u <= w.k and 1 <= v <= w.k):
        raise ValidationError(f"vertices must lie in 1..{w.k}")

    weights = w.as_mapping()
    shifted = dict(weights)
    shifted[(min(u, v), max(u, v))] = 0
    for x in range(1, w.k + 1):
        if x in (u, v):
            continue
        shifted[(min(u, x), max(u, x))] = weights[(min(v, x), max(v, x))]
    return WeightFunction.from_mapping(w.k, shifted)


def symmetrize(w: WeightFunction) -> WeightFunction:
    """
    Применяет сдвиги Зыкова, строго увеличивающие вес, пока такие есть.
    Вход должен удовлетворять (⋆); результат тоже удовлетворяет (⋆).
    """
    check = check_star(w)
    if not check.ok:
        raise ValidationError(f"input violates condition (⋆): {check.kind} on {check.vertices}")

    steps = 0
    improved = True
    while improved:
        improved = False
        for u, v in product(range(1, w.k + 1), repeat=2):
            if u == v:
                continue
            gain = degree(w, v) - degree(w, u) - w.weight(u, v)
            if gain > 0:
                w = zykov_shift(w, u, v)
                steps += 1
                improved = True
                break
    logger.debug("🔁 Symmetrization finished", k=w.k, steps=steps, weight=total_weight(w))
    return w


# ===== КОНСТРУКЦИИ И МАКСИМУМ =====

def quarter_split(k: int) -> WeightFunction:
    """X = первые ⌊k/4⌋ вершин: 3 между X и остальными, 2 вне X, 0 внутри X."""
    x = k // 4
    weights = {}
    for u, v in pairs_of(k):
        if u <= x and v <= x:
            weights[(u, v)] = 0
        elif u <= x or v <= x:
            weights[(u, v)] = 3
        else:
            weights[(u, v)] = 2
    return WeightFunction.from_mapping(k, weights)


def quarter_split_weight(k: int) -> int:
    x = k // 4
    return 3 * x * (k - x) + 2 * comb(k - x, 2)


def _scan(k: int) -> Tuple[int, WeightFunction]:
    best, best_w = -1, None
    for values in product(ALLOWED, repeat=comb(k, 2)):
        total = sum(values)
        if total <= best:
            continue
        candidate = WeightFunction(k, values)
        if check_star(candidate).ok:
            best, best_w = total, candidate
    return best, best_w


class _StarBranch:
    """
    Пары в лексикографическом порядке, значения 3, 2, 0. После каждого
    назначения проверяются треугольники и 4-циклы, у которых назначены все
    пары и которые содержат текущую. Оценка сверху: оставшиеся пары по 2 плюс
    не больше ⌊k²/4⌋ 3-рёбер всего (граф 3-рёбер без треугольников).
    """

    def __init__(self, k: int):
        self.k = k
        self.pairs = pairs_of(k)
        self.index = {p: i for i, p in enumerate(self.pairs)}
        self.values: List[Optional[int]] = [None] * len(self.pairs)
        self.max_threes = k * k // 4
        start = quarter_split(k)
        self.best = total_weight(start)
        self.best_values = start.values
        self.nodes = 0

    def _get(self, x: int, y: int) -> Optional[int]:
        return self.values[self.index[(min(x, y), max(x, y))]]

    def _consistent(self, u: int, v: int) -> bool:
        others = [x for x in range(1, self.k + 1) if x not in (u, v)]
        if self._get(u, v) == 3:
            for x in others:
                if self._get(u, x) == 3 and self._get(v, x) == 3:
                    return False
        for x, y in combinations(others, 2):
            for cycle in _cycles_on((u, v, x, y)):
                a, b, c, d = cycle
                ring = [self._get(a, b), self._get(b, c), self._get(c, d), self._get(d, a)]
                diag = [self._get(a, c), self._get(b, d)]
                if None in ring or None in diag:
                    continue
                if all(val == 3 for val in ring) and all(val != 0 for val in diag):
                    return False
        return True

    def run(self, i: int = 0, total: int = 0, threes: int = 0) -> None:
        self.nodes += 1
        if i == len(self.pairs):
            if total > self.best:
                self.best, self.best_values = total, tuple(self.values)
            return

        remaining = len(self.pairs) - i
        if total + 2 * remaining + min(remaining, self.max_threes - threes) <= self.best:
            return

        u, v = self.pairs[i]
        for value in (3, 2, 0):
            if value == 3 and threes >= self.max_threes:
                continue
            self.values[i] = value
            if self._consistent(u, v):
                self.run(i + 1, total + value, threes + (value == 3))
            self.values[i] = None


def max_star_weight(k: int, method: str = "branch", cap: Optional[int] = None) -> Tuple[int, WeightFunction]:
    """Точный максимум w(W) среди W с (⋆) и один максимизатор."""
    cap = cap or config.WSTAR_CAP
    if k > cap:
        raise CapExceeded(f"max_star_weight limited to k <= {cap}, got {k}")
    if k < 0:
        raise ValidationError(f"k must be non-negative, got {k}")
    if k < 2:
        return 0, WeightFunction(k, ())

    if method == "scan":
        if k > SCAN_CAP:
            raise CapExceeded(f"plain scan limited to k <= {SCAN_CAP}, got {k}")
        best, witness = _scan(k)
        logger.info("✅ W⋆ scan finished", k=k, weight=best)
        return best, witness

    if method != "branch":
        raise ValidationError(f"unknown method {method!r}")

    search = _StarBranch(k)
    search.run()
    logger.info("✅ W⋆ branch-and-bound finished", k=k, weight=search.best, nodes=search.nodes)
    return search.best, WeightFunction(k, search.best_values)


# ===== ФОРМАТ =====

def parse_wstar(text: str) -> WeightFunction:
    (hnum, header), body = split_header(text)
    k = parse_header(header, hnum, "wstar", ("k",))["k"]

    weights: Dict[Pair, int] = {}
    for number, line in body:
        u, v, value = parse_int_row(line, number, 3)
        if u == v or not (1 <= u <= k and 1 <= v <= k):
            raise FormatError(f"pair ({u},{v}) invalid for k={k}", number)
        if value not in ALLOWED:
            raise FormatError(f"weight {value} not in {{0,2,3}}", number)
        pair = (min(u, v), max(u, v))
        if pair in weights:
            raise FormatError(f"duplicate pair {pair[0]} {pair[1]}", number)
        weights[pair] = value

    missing = [p for p in pairs_of(k) if p not in weights]
    if missing:
        raise FormatError(f"weight function is not total, missing pair {missing[0][0]} {missing[0][1]}")
    return WeightFunction.from_mapping(k, weights)


def format_wstar(w: WeightFunction) -> str:
    lines = [f"wstar k={w.k}"]
    lines.extend(f"{u} {v} {x}" for (u, v), x in w.as_mapping().items())
    return "\n".join(lines) + "\n"


def read_wstar(path: Union[str, Path]) -> WeightFunction:
    return parse_wstar(read_text(path))


def write_wstar(w: WeightFunction, path: Union[str, Path]) -> None:
    Path(path).write_text(format_wstar(w), encoding="utf-8")
    logger.info("💾 Weight function written", path=str(path), k=w.k)
