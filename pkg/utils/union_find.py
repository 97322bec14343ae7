"""Система непересекающихся множеств с откатом (для перебора с возвратом)"""

from typing import Dict, Hashable, List, Tuple


class RollbackUnionFind:
    """
    Union-find без сжатия путей, но с объединением по размеру, поэтому каждое
    объединение можно отменить за O(1). Для каждой компоненты хранится
    число вершин и число рёбер, чтобы проверять |E(C)| <= |V(C)|.
    """

    def __init__(self, items):
        self._parent: Dict[Hashable, Hashable] = {x: x for x in items}
        self._size: Dict[Hashable, int] = {x: 1 for x in self._parent}
        self._edges: Dict[Hashable, int] = {x: 0 for x in self._parent}
        self._history: List[Tuple[Hashable, Hashable, bool]] = []

    def find(self, x):
        while self._parent[x] != x:
            x = self._parent[x]
        return x

    def edges_after_union(self, x, y) -> Tuple[int, int]:
        """(вершины, рёбра) компоненты, которая получится после добавления ребра xy."""
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return self._size[rx], self._edges[rx] + 1
        return self._size[rx] + self._size[ry], self._edges[rx] + self._edges[ry] + 1

    def add_edge(self, x, y) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            self._edges[rx] += 1
            self._history.append((rx, rx, False))
            return
        if self._size[rx] < self._size[ry]:
            rx, ry = ry, rx
        self._parent[ry] = rx
        self._size[rx] += self._size[ry]
        self._edges[rx] += self._edges[ry] + 1
        self._history.append((rx, ry, True))

    def rollback(self) -> None:
        root, child, merged = self._history.pop()
        if not merged:
            self._edges[root] -= 1
            return
        self._parent[child] = child
        self._size[root] -= self._size[child]
        self._edges[root] -= self._edges[child] + 1

    def checkpoint(self) -> int:
        return len(self._history)

    def rollback_to(self, mark: int) -> None:
        while len(self._history) > mark:
            self.rollback()
