"""Distance estimators for the footstep planner.

The anchor is a full backward Dijkstra over the union graph (admissible and
consistent for the footstep cost model, which charges at least the projected
cell-center displacement per step).  Homotopy estimators answer through the
shared resumable session, bounded by the anchor so a hopeless class never
stalls the planner.
"""

from __future__ import annotations

import heapq
import io
from dataclasses import dataclass, field

from .errors import InvalidQueryError
from .hbsp import INF_MM, HbspSession, QueryStatus, d_s, query
from .signature import Word, render_word
from .world import Vertex, World


def build_h_dijk(world: World, goal_cell: Vertex) -> dict[Vertex, int]:
    """Backward Dijkstra over all surfaces, through gates, in millimeters."""
    sid, gx, gy = goal_cell
    if not world.cell_is_free(sid, (gx, gy)):
        raise InvalidQueryError(f"goal cell {goal_cell} is occupied or out of bounds")
    dist: dict[Vertex, int] = {goal_cell: 0}
    heap: list[tuple[int, Vertex]] = [(0, goal_cell)]
    done: set[Vertex] = set()
    while heap:
        d, v = heapq.heappop(heap)
        if v in done:
            continue
        done.add(v)
        for w, cost in world.neighbors(v):
            nd = d + cost
            if nd < dist.get(w, INF_MM):
                dist[w] = nd
                heapq.heappush(heap, (nd, w))
    return dist


@dataclass
class HeuristicSet:
    """Anchor table plus the homotopy estimators sharing one session."""

    world: World
    goal_cell: Vertex
    anchor: dict[Vertex, int]
    session: HbspSession | None
    reference_words: tuple[Word, ...]
    w2: float
    goal_radius_mm: int = 0
    eval_counts: dict[str, int] = field(default_factory=dict)

    @property
    def queue_count(self) -> int:
        return 1 + len(self.reference_words)

    def anchor_at_cell(self, cell: Vertex) -> int:
        value = self.anchor.get(cell, INF_MM)
        if value >= INF_MM:
            return INF_MM
        return max(0, value - self.goal_radius_mm)

    def eval_anchor(self, state) -> int:
        """Anchor estimate of a footstep state via its projected cell."""
        self.eval_counts["anchor"] = self.eval_counts.get("anchor", 0) + 1
        cell = state.projected_cell
        if cell is None:
            return INF_MM
        return self.anchor_at_cell(cell)

    def eval_homotopy(self, index: int, state) -> int:
        """Class-constrained estimate for reference word ``index``.

        Returns the infinity sentinel when the session cannot settle the
        target within ``w2`` times the anchor; the planner then simply skips
        this state in that queue.
        """
        key = f"h{index + 1}"
        self.eval_counts[key] = self.eval_counts.get(key, 0) + 1
        cell = state.projected_cell
        if cell is None or self.session is None:
            return INF_MM
        anchor = self.anchor_at_cell(cell)
        if anchor >= INF_MM:
            return INF_MM
        bound = int(self.w2 * anchor)
        return d_s(self.session, cell, state.sig, self.reference_words[index], bound)

    def evaluators(self) -> list:
        """Anchor-first list of callables for the search engine."""
        hs = [self.eval_anchor]
        for i in range(len(self.reference_words)):
            hs.append(lambda state, i=i: self.eval_homotopy(i, state))
        return hs


def build_heuristic_set(world: World, goal_cell: Vertex,
                        reference_words=(), w2: float = 2.0,
                        goal_radius_mm: int = 0) -> HeuristicSet:
    from .hbsp import open_session
    anchor = build_h_dijk(world, goal_cell)
    words = tuple(tuple(w) for w in reference_words)
    session = open_session(world, goal_cell, words) if words else None
    return HeuristicSet(world, goal_cell, anchor, session, words, w2, goal_radius_mm)


def anchor_heatmap_csv(world: World, anchor: dict[Vertex, int]) -> str:
    """Anchor values as ``surface,x,y,value_mm`` rows (cell centers in m)."""
    buf = io.StringIO()
    buf.write("surface,x,y,value_mm\n")
    for (sid, gx, gy), value in sorted(anchor.items()):
        x, y = world.cell_center((gx, gy))
        buf.write(f"{sid},{x:.3f},{y:.3f},{value}\n")
    return buf.getvalue()


def session_heatmap_csv(world: World, session: HbspSession, word: Word) -> str:
    """Best settled distance per cell within one reference class.

    Partial by design: the session only ever settles what queries needed.
    """
    best: dict[Vertex, int] = {}
    for (sid, gx, gy, sig), dist in session.dist.items():
        v = (sid, gx, gy)
        if dist < best.get(v, INF_MM):
            best[v] = dist
    buf = io.StringIO()
    buf.write("surface,x,y,value_mm\n")
    for (sid, gx, gy), value in sorted(best.items()):
        x, y = world.cell_center((gx, gy))
        buf.write(f"{sid},{x:.3f},{y:.3f},{value}\n")
    return buf.getvalue()
