"""Dynamic k-d tree with exact box queries."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence


@dataclass
class _Node:
    key: tuple[float, ...]
    id: str
    axis: int
    left: "_Node | None" = None
    right: "_Node | None" = None


class KdTree:
    """Keys smaller than a node's split value go left, the rest go right."""

    def __init__(self, points: dict[str, Sequence[float]] | None = None, dim: int = 5):
        self.dim = dim
        self.points: dict[str, tuple[float, ...]] = {}
        self.root = None
        if points:
            items = sorted((tuple(map(float, p)), cid) for cid, p in points.items())
            self.points = {cid: key for key, cid in items}
            self.root = self._build([(key, cid) for key, cid in items], 0)

    def __len__(self):
        return len(self.points)

    def _build(self, items, depth):
        if not items:
            return None
        axis = depth % self.dim
        items = sorted(items, key=lambda t: (t[0][axis], t[1]))
        m = len(items) // 2
        while m > 0 and items[m - 1][0][axis] == items[m][0][axis]:
            m -= 1
        node = _Node(items[m][0], items[m][1], axis)
        node.left = self._build(items[:m], depth + 1)
        node.right = self._build(items[m + 1:], depth + 1)
        return node

    def insert(self, cid: str, point: Sequence[float]):
        if cid in self.points:
            raise KeyError(f"{cid} already in tree")
        key = tuple(map(float, point))
        self.points[cid] = key
        if self.root is None:
            self.root = _Node(key, cid, 0)
            return
        node = self.root
        while True:
            side = "left" if key[node.axis] < node.key[node.axis] else "right"
            child = getattr(node, side)
            if child is None:
                setattr(node, side, _Node(key, cid, (node.axis + 1) % self.dim))
                return
            node = child

    def delete(self, cid: str):
        key = self.points.pop(cid)
        self.root = self._delete(self.root, key, cid)

    def _delete(self, node, key, cid):
        if node is None:
            raise KeyError(cid)
        if node.id == cid:
            if node.right is not None:
                sub = self._min(node.right, node.axis)
                node.key, node.id = sub.key, sub.id
                node.right = self._delete(node.right, sub.key, sub.id)
            elif node.left is not None:
                sub = self._min(node.left, node.axis)
                node.key, node.id = sub.key, sub.id
                node.right = self._delete(node.left, sub.key, sub.id)
                node.left = None
            else:
                return None
            return node
        if key[node.axis] < node.key[node.axis]:
            node.left = self._delete(node.left, key, cid)
        else:
            node.right = self._delete(node.right, key, cid)
        return node

    def _min(self, node, axis):
        """A node holding the smallest key[axis] in the subtree."""
        best = node
        stack = [node]
        while stack:
            cur = stack.pop()
            if (cur.key[axis], cur.id) < (best.key[axis], best.id):
                best = cur
            if cur.left is not None:
                stack.append(cur.left)
            # the right side can only hold smaller values on other axes
            if cur.right is not None and cur.axis != axis:
                stack.append(cur.right)
        return best

    def range(self, lo: Sequence[float], hi: Sequence[float]) -> list[str]:
        """Ids whose points lie in the closed box [lo, hi]."""
        out = []
        stack = [self.root] if self.root is not None else []
        while stack:
            node = stack.pop()
            k, a = node.key, node.axis
            if all(lo[d] <= k[d] <= hi[d] for d in range(self.dim)):
                out.append(node.id)
            if node.left is not None and lo[a] < k[a]:
                stack.append(node.left)
            if node.right is not None and hi[a] >= k[a]:
                stack.append(node.right)
        return sorted(out)

    def check(self) -> bool:
        """Every node splits its subtrees correctly."""

        def walk(node, bounds):
            if node is None:
                return 0
            for axis, lo, hi in bounds:
                v = node.key[axis]
                if (lo is not None and v < lo) or (hi is not None and v >= hi):
                    return -1
            a = node.axis
            left = walk(node.left, bounds + [(a, None, node.key[a])])
            right = walk(node.right, bounds + [(a, node.key[a], None)])
            if left < 0 or right < 0:
                return -1
            return 1 + left + right

        return walk(self.root, []) == len(self.points)
