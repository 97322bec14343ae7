"""Генераторы экстремальных конструкций и формулы их размеров"""

from dataclasses import dataclass
from itertools import combinations, product
from math import comb
from typing import Dict, List, Sequence, Tuple

import structlog

from core.errors import ConstructionError, ValidationError
from core.pattern import PatternGraph, complete_multipartite, turan_graph
from core.qgraph import QEdge, QGraph, full_qgraph, low_threshold
from services.robust_service import robust_chromatic

logger = structlog.get_logger()

TREE_VARIANTS = ("F_A", "F'_A")

Triple = Tuple[QEdge, QEdge, QEdge]


def _pairs(vertices: Sequence[int]):
    return combinations(sorted(vertices), 2)


def _require_n(n: int, minimum: int = 2) -> None:
    if n < minimum:
        raise ConstructionError(f"need n >= {minimum}, got {n}")


def _low_width(q: int) -> int:
    """Число весов нижнего слоя: q - ⌈(q+1)/2⌉ + 1."""
    return q - low_threshold(q) + 1


# ===== РАЗБИЕНИЯ =====

@dataclass(frozen=True)
class Partition:
    """Упорядоченное разбиение [n] на непустые блоки A_1..A_r."""

    blocks: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(tuple(sorted(b)) for b in self.blocks)
        if not blocks or any(not b for b in blocks):
            raise ValidationError("partition blocks must be non-empty")
        flat = [v for b in blocks for v in b]
        if sorted(flat) != list(range(1, len(flat) + 1)):
            raise ValidationError("partition blocks must be disjoint and cover 1..n")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def balanced(cls, n: int, r: int) -> "Partition":
        """Подряд идущие блоки, размеры отличаются не больше чем на 1 (первые больше)."""
        if not 1 <= r <= n:
            raise ValidationError(f"need 1 <= r <= n, got r={r}, n={n}")
        sizes = [n // r + (1 if i < n % r else 0) for i in range(r)]
        blocks, start = [], 1
        for size in sizes:
            blocks.append(tuple(range(start, start + size)))
            start += size
        return cls(tuple(blocks))

    @property
    def n(self) -> int:
        return sum(len(b) for b in self.blocks)

    @property
    def r(self) -> int:
        return len(self.blocks)

    def index(self) -> Dict[int, int]:
        """Вершина -> номер блока (с 1)."""
        return {v: i for i, block in enumerate(self.blocks, start=1) for v in block}


# ===== УНИВЕРСАЛЬНОЕ ДЕРЕВО, РАЗДУТИЕ, ДОПОЛНЕНИЕ СЛОЯ =====

def universal_tree(q: int, n: int) -> QGraph:
    """
    U_{q,n}: все q-рёбра с a+b < q+1 и те, у которых a+b = q+1,
    а меньший вес стоит в вершине с меньшим номером.
    """
    if q < 1:
        raise ConstructionError(f"need q >= 1, got {q}")
    _require_n(n)
    weights = [
        (a, b) for a, b in product(range(1, q + 1), repeat=2)
        if a + b < q + 1 or (a + b == q + 1 and a < b)
    ]
    return QGraph(n, q, frozenset(QEdge(u, v, a, b) for u, v in _pairs(range(1, n + 1)) for a, b in weights))


def universal_tree_size(q: int, n: int) -> int:
    return (q * q // 2) * comb(n, 2)


def blowup(graph: PatternGraph, q: int) -> QGraph:
    """H_{G,q}: все q² q-рёбер на каждом ребре G."""
    if q < 1:
        raise ConstructionError(f"need q >= 1, got {q}")
    weights = list(product(range(1, q + 1), repeat=2))
    return QGraph(graph.n, q, frozenset(QEdge(u, v, a, b) for u, v in graph.edges for a, b in weights))


def blowup_size(graph: PatternGraph, q: int) -> int:
    return q * q * len(graph.edges)


def low_complement(q: int, n: int) -> QGraph:
    """Q(n,2) без нижнего слоя: q-рёбра, у которых хотя бы один вес < ⌈(q+1)/2⌉."""
    if q < 1:
        raise ConstructionError(f"need q >= 1, got {q}")
    _require_n(n)
    t = low_threshold(q)
    return QGraph(n, q, frozenset(e for e in full_qgraph(n, q).edges if min(e.a, e.b) < t))


def low_complement_size(q: int, n: int) -> int:
    return (q * q - _low_width(q) ** 2) * comb(n, 2)


def _low_layer_on(graph: PatternGraph, q: int) -> List[QEdge]:
    t = low_threshold(q)
    heavy = range(t, q + 1)
    return [QEdge(u, v, a, b) for u, v in graph.edges for a in heavy for b in heavy]


def chi1_lower(pattern: PatternGraph, q: int, n: int, allow_degenerate: bool = False) -> QGraph:
    """
    Нижняя конструкция через χ₁: дополнение нижнего слоя плюс весь нижний слой
    на рёбрах T(n, χ₁(F) - 1).

    Паттерн без компоненты с |V(C)| < |E(C)| имеет χ₁ = 1, и конструкция
    вырождается: такой F отвергается, если не передан allow_degenerate=True
    (тогда возвращается дополнение нижнего слоя).
    """
    base = low_complement(q, n)
    if not pattern.has_dense_component():
        if not allow_degenerate:
            raise ConstructionError(
                "every component of the pattern is a tree or unicyclic; χ₁ construction does not apply"
            )
        logger.warning("⚠️ Degenerate χ₁ construction, returning low-layer complement", n=n, q=q)
        return base

    chi1 = robust_chromatic(pattern)
    support = turan_graph(n, chi1 - 1)
    result = base.with_edges(_low_layer_on(support, q))
    logger.info("🏗️ χ₁ construction built", chi1=chi1, n=n, q=q, edges=len(result))
    return result


def chi1_lower_size(q: int, n: int, chi1: int) -> int:
    return low_complement_size(q, n) + _low_width(q) ** 2 * len(turan_graph(n, chi1 - 1).edges)


# ===== ДЕРЕВЬЯ: F_A и F'_A (q = 2) =====

def tree_family(partition: Partition, variant: str = "F_A") -> QGraph:
    """
    F_A: все (1,1)-рёбра и рёбра с весом 1 в u и 2 в v, когда блок u раньше блока v.
    F'_A: F_A без (1,1)-рёбер внутри последнего блока.
    """
    if variant not in TREE_VARIANTS:
        raise ConstructionError(f"unknown tree-family variant {variant!r}, expected one of {TREE_VARIANTS}")
    n, block = partition.n, partition.index()
    _require_n(n)

    edges = set()
    for u, v in _pairs(range(1, n + 1)):
        same_last = block[u] == block[v] == partition.r
        if not (variant == "F'_A" and same_last):
            edges.add(QEdge(u, v, 1, 1))
        if block[u] < block[v]:
            edges.add(QEdge.oriented(u, v, 1, 2))
        elif block[v] < block[u]:
            edges.add(QEdge.oriented(v, u, 1, 2))
    return QGraph(n, 2, frozenset(edges))


def tree_family_size(partition: Partition, variant: str = "F_A") -> int:
    sizes = [len(b) for b in partition.blocks]
    total = comb(partition.n, 2) + sum(a * b for a, b in combinations(sizes, 2))
    if variant == "F'_A":
        total -= comb(sizes[-1], 2)
    return total


# ===== ТРЁХДОЛЬНЫЕ ПАТТЕРНЫ (q = 2) =====

def tripart_13_4(n: int) -> QGraph:
    """
    A = первые ⌊n/4⌋ вершин, B — остальные. Внутри A только (1,1),
    внутри B — (1,1), (2,1), (1,2), между A и B — все четыре пары.
    """
    _require_n(n, 8)
    cut = n // 4
    part_a = range(1, cut + 1)
    part_b = range(cut + 1, n + 1)

    edges = set()
    for u, v in _pairs(part_a):
        edges.add(QEdge(u, v, 1, 1))
    for u, v in _pairs(part_b):
        edges.update(QEdge(u, v, a, b) for a, b in ((1, 1), (2, 1), (1, 2)))
    for u in part_a:
        for v in part_b:
            edges.update(QEdge(u, v, a, b) for a, b in product((1, 2), repeat=2))
    return QGraph(n, 2, frozenset(edges))


def tripart_13_4_size(n: int) -> int:
    a = n // 4
    b = n - a
    return comb(a, 2) + 3 * comb(b, 2) + 4 * a * b


def tripart_lower(n: int, r: int, s: int, t: int) -> QGraph:
    """Нижняя конструкция для K_{r,s,t} при q = 2 в зависимости от режима."""
    r, s, t = sorted((r, s, t))
    if r < 1 or t < 2:
        raise ConstructionError(f"need 1 <= r <= s <= t and t >= 2, got {(r, s, t)}")
    if r == 1 or s <= 2:
        return low_complement(2, n)
    if r == 2:
        return tripart_13_4(n)
    return chi1_lower(complete_multipartite(r, s, t), 2, n)


# ===== ТРЕУГОЛЬНИКИ =====

def _triangle_v3(q: int, n: int) -> QGraph:
    half = q // 2
    k = n // 2
    inside = [(a, b) for a, b in product(range(1, half + 1), repeat=2)]
    across = [(c, d) for c, d in product(range(1, q + 1), repeat=2) if c <= half or d <= half]

    edges = set()
    for block in (range(1, k + 1), range(k + 1, n + 1)):
        for u, v in _pairs(block):
            edges.update(QEdge(u, v, a, b) for a, b in inside)
    for u in range(1, k + 1):
        for v in range(k + 1, n + 1):
            edges.update(QEdge(u, v, c, d) for c, d in across)
    return QGraph(n, q, frozenset(edges))


_V4_INSIDE_XY = ((3, 1), (2, 1), (1, 1), (1, 2), (1, 3))
_V4_INSIDE_Z = tuple(product((1, 2), repeat=2))
_V4_X_TO_Y = tuple(product((1, 2, 3), repeat=2))
_V4_XY_TO_Z = tuple((1, j) for j in range(1, 5)) + tuple(product((2, 3, 4), (1, 2)))


def _triangle_v4(n: int) -> QGraph:
    k = n // 3
    xs = range(1, k + 1)
    ys = range(k + 1, 2 * k + 1)
    zs = range(2 * k + 1, n + 1)

    edges = set()
    for block in (xs, ys):
        for u, v in _pairs(block):
            edges.update(QEdge(u, v, a, b) for a, b in _V4_INSIDE_XY)
    for u, v in _pairs(zs):
        edges.update(QEdge(u, v, a, b) for a, b in _V4_INSIDE_Z)
    for u in xs:
        for v in ys:
            edges.update(QEdge(u, v, a, b) for a, b in _V4_X_TO_Y)
    for u in list(xs) + list(ys):
        for v in zs:
            edges.update(QEdge(u, v, a, b) for a, b in _V4_XY_TO_Z)
    return QGraph(n, 4, frozenset(edges))


def triangle_family(q: int, n: int, variant: int) -> QGraph:
    """
    Четыре конструкции без (q+1)-копий треугольника:
    1 — U_{q,n}; 2 — раздутие T(n,2) (q чётно); 3 — две половины X, Y
    (q и n чётны); 4 — три трети X, Y, Z (q = 4, n кратно 3).
    """
    _require_n(n)
    if variant == 1:
        return universal_tree(q, n)
    if variant == 2:
        if q % 2:
            raise ConstructionError(f"variant 2 needs even q, got {q}")
        return blowup(turan_graph(n, 2), q)
    if variant == 3:
        if q % 2 or n % 2:
            raise ConstructionError(f"variant 3 needs even q and even n, got q={q}, n={n}")
        return _triangle_v3(q, n)
    if variant == 4:
        if q != 4 or n % 3:
            raise ConstructionError(f"variant 4 needs q=4 and n divisible by 3, got q={q}, n={n}")
        return _triangle_v4(n)
    raise ConstructionError(f"unknown triangle-family variant {variant}")


def triangle_family_size(q: int, n: int, variant: int) -> int:
    if variant == 1:
        return universal_tree_size(q, n)
    if variant == 2:
        return q * q * (n * n // 4)
    if variant == 3:
        k = n // 2
        return q * q * (4 * k * k - k) // 4
    if variant == 4:
        k = n // 3
        return 36 * k * k - 7 * k
    raise ConstructionError(f"unknown triangle-family variant {variant}")


def triple_partition(q: int) -> List[Triple]:
    """
    Разбиение Q(3,2) на q² попарно непересекающихся троек, каждая из
    которых — (q+1)-копия треугольника на вершинах 1, 2, 3.

    Тройка весов (P1, P2, P3) кладётся на упорядоченные пары (1,2), (2,3), (3,1)
    во всех трёх циклических сдвигах; пара (x, y) на (u, v) — вес x в u и y в v.
    """
    if q < 2:
        raise ConstructionError(f"need q >= 2, got {q}")

    classes: List[Tuple[Tuple[int, int], ...]] = []
    for j in range(0, (q - 2) // 3 + 1):
        for i in range(1, q - 1 - 3 * j + 1):
            classes.append(((i + 2 * j, j + 1), (q - j, i + j), (q + 1 - i - j, q + 1 - i - 2 * j)))
    for j in range(0, (q - 3) // 3 + 1):
        for i in range(1, q - 2 - 3 * j + 1):
            classes.append(((i + j, i + 2 * j + 1), (q - i - 2 * j, q - j), (j + 1, q + 1 - i - j)))

    slots = ((1, 2), (2, 3), (3, 1))
    triples: List[Triple] = []
    for weights in classes:
        for shift in range(3):
            triples.append(tuple(
                QEdge.oriented(*slots[(k + shift) % 3], *weights[k]) for k in range(3)
            ))

    r, rest = divmod(q, 3)
    extra = {1: (2 * r + 1, r + 1), 2: (r + 1, 2 * r + 2)}.get(rest)
    if extra:
        triples.append(tuple(QEdge.oriented(*slot, *extra) for slot in slots))
    return triples


# ===== ПРИМЕР ДЛЯ q = 3 =====

Q3_PAIR = (2, 3)
Q3_PAIR_CONJUGATE = (2, 1)


def q3_pair_example(n: int) -> QGraph:
    """
    q = 3, |A| = 3n/4 первых вершин, B — остальные.
    Срез (2,3): дуги A -> B; срез (2,1): дуги в обе стороны для пар, не лежащих целиком в B.
    """
    if n < 4 or n % 4:
        raise ConstructionError(f"need n divisible by 4, got {n}")
    cut = 3 * n // 4
    edges = set()
    for i in range(1, cut + 1):
        for j in range(cut + 1, n + 1):
            edges.add(QEdge.oriented(i, j, *Q3_PAIR))
    for i, j in _pairs(range(1, n + 1)):
        if i > cut and j > cut:
            continue
        edges.add(QEdge.oriented(i, j, *Q3_PAIR_CONJUGATE))
        edges.add(QEdge.oriented(j, i, *Q3_PAIR_CONJUGATE))
    return QGraph(n, 3, frozenset(edges))


def q3_pair_size(n: int) -> int:
    a = 3 * n // 4
    b = n - a
    return a * b + 2 * (comb(n, 2) - comb(b, 2))
