"""Static navigation tables over (tile, facing) nodes.

Walkability never changes during a game (staged items sit on counters, which
were never walkable), so per-layout shortest paths are computed once. A node
is reached by moving: entering a tile moving in direction d leaves the chef
facing d, which is what interacting with the tile ahead requires.
"""

from __future__ import annotations

from collections import deque
from functools import lru_cache

from ..game.tiles import DIR_DELTA, DIRECTIONS, TileMap

Node = tuple[tuple[int, int], str]  # (position, facing)


class NavGraph:
    def __init__(self, layout: TileMap):
        self.layout = layout
        self.walkable = [
            (r, c)
            for r in range(layout.height)
            for c in range(layout.width)
            if layout.is_walkable((r, c))
        ]
        self.nodes: list[Node] = [(pos, d) for pos in self.walkable for d in DIRECTIONS]
        self._dist: dict[Node, dict[Node, int]] = {}
        for node in self.nodes:
            self._dist[node] = self._bfs(node)
        # Counters ranked by how close they sit to a pot; used as canonical
        # staging spots.
        def pot_closeness(counter):
            return min(
                abs(counter[0] - p[0]) + abs(counter[1] - p[1]) for p in layout.pots
            )

        reachable_counters = [
            c for c in layout.counters if any(self.approach_nodes(c))
        ]
        self.staging_counters = tuple(
            sorted(reachable_counters, key=lambda c: (pot_closeness(c), c))
        )

    def _bfs(self, start: Node) -> dict[Node, int]:
        dist = {start: 0}
        queue = deque([start])
        while queue:
            pos, facing = queue.popleft()
            d0 = dist[(pos, facing)]
            for d in DIRECTIONS:
                dr, dc = DIR_DELTA[d]
                nxt = ((pos[0] + dr, pos[1] + dc), d)
                if self.layout.is_walkable(nxt[0]) and nxt not in dist:
                    dist[nxt] = d0 + 1
                    queue.append(nxt)
        return dist

    def distance(self, src: Node, dst: Node) -> int | None:
        return self._dist.get(src, {}).get(dst)

    def approach_nodes(self, target: tuple[int, int]) -> list[Node]:
        """Nodes from which the chef faces `target`, in N/S/E/W order."""
        out = []
        for d in DIRECTIONS:
            dr, dc = DIR_DELTA[d]
            stand = (target[0] - dr, target[1] - dc)
            if self.layout.is_walkable(stand):
                out.append((stand, d))
        return out

    def nearest_approach(self, src: Node, target: tuple[int, int]) -> tuple[Node, int] | None:
        """Cheapest node facing `target`, ties broken in N/S/E/W order."""
        best = None
        for node in self.approach_nodes(target):
            d = self.distance(src, node)
            if d is not None and (best is None or d < best[1]):
                best = (node, d)
        return best

    def path(self, src: Node, dst: Node) -> list[str]:
        """Move directions along one shortest path (deterministic)."""
        if src == dst:
            return []
        total = self.distance(src, dst)
        if total is None:
            raise ValueError(f"{dst} unreachable from {src}")
        moves: list[str] = []
        here = src
        remaining = total
        while here != dst:
            for d in DIRECTIONS:
                dr, dc = DIR_DELTA[d]
                nxt = ((here[0][0] + dr, here[0][1] + dc), d)
                dn = self.distance(nxt, dst) if self.layout.is_walkable(nxt[0]) else None
                if dn is not None and dn == remaining - 1:
                    moves.append(d)
                    here = nxt
                    remaining = dn
                    break
            else:
                raise AssertionError("path reconstruction lost its way")
        return moves


@lru_cache(maxsize=32)
def nav_for(layout: TileMap) -> NavGraph:
    return NavGraph(layout)
