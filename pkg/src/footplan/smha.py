"""Shared multi-heuristic A* over an opaque state space.

One anchor queue (admissible, consistent heuristic) plus N inadmissible
queues share a single g/parent store.  Queue i may expand while its minimum
key stays within w2 times the anchor's minimum key; otherwise the anchor
expands.  States closed by an inadmissible search leave all inadmissible
queues but may still be re-opened by the anchor; anchor-closed states are
final.  On success the returned cost is within w1 * w2 of optimal.
"""

from __future__ import annotations

import heapq
import time
from dataclasses import dataclass, field
from typing import Callable, Hashable, Protocol, Sequence

INF = 2 ** 62

State = Hashable


class SearchSpace(Protocol):
    def successors(self, state: State) -> Sequence[tuple[State, int]]: ...
    def is_goal(self, state: State) -> bool: ...


@dataclass
class SmhaConfig:
    w1: float = 3.0
    w2: float = 2.0
    expansion_cap: int = 200_000
    debug: bool = False

    def __post_init__(self) -> None:
        if self.w1 < 1 or self.w2 < 1:
            raise ValueError("w1 and w2 must be at least 1")


@dataclass
class PlanResult:
    status: str                      # "success" | "cap_exceeded" | "exhausted"
    path: list
    cost_mm: int
    expansions: list[int]            # per queue, anchor first
    settled: int
    wall_time_s: float
    heuristic_evals: dict[str, int] = field(default_factory=dict)

    @property
    def success(self) -> bool:
        return self.status == "success"


class _Queue:
    """Priority queue with lazy deletion keyed by (key, -g, state order)."""

    def __init__(self) -> None:
        self._heap: list = []
        self._current: dict = {}

    def upsert(self, state, key: int, g: int) -> None:
        self._current[state] = (key, g)
        heapq.heappush(self._heap, (key, -g, _order(state), state))

    def remove(self, state) -> None:
        self._current.pop(state, None)

    def _skim(self) -> None:
        heap = self._heap
        while heap:
            key, ng, _, state = heap[0]
            cur = self._current.get(state)
            if cur is not None and cur == (key, -ng):
                return
            heapq.heappop(heap)

    def min_key(self) -> int:
        self._skim()
        return self._heap[0][0] if self._heap else INF

    def pop(self):
        self._skim()
        if not self._heap:
            return None
        key, ng, _, state = heapq.heappop(self._heap)
        del self._current[state]
        return state


def _order(state) -> tuple:
    try:
        return tuple(state)
    except TypeError:
        return (state,)


def plan(space: SearchSpace, heuristics: Sequence[Callable[[State], int]],
         start: State, config: SmhaConfig) -> PlanResult:
    """Run SMHA*; ``heuristics[0]`` is the anchor.

    Any heuristic may return the infinity sentinel for a state; that queue
    simply never holds the state.  The anchor alone determines completeness
    and, with w1 = w2 = 1, exact optimality.
    """
    t0 = time.perf_counter()
    n_inad = len(heuristics) - 1
    queues = [_Queue() for _ in range(len(heuristics))]
    g: dict[State, int] = {start: 0}
    parent: dict[State, State | None] = {start: None}
    closed_anchor: set[State] = set()
    closed_inad: set[State] = set()
    expansions = [0] * len(heuristics)

    def key_of(state, i: int) -> int:
        h = heuristics[i](state)
        if h >= INF:
            return INF
        return g[state] + int(config.w1 * h)

    def insert(state) -> None:
        k0 = key_of(state, 0)
        if state not in closed_anchor and k0 < INF:
            queues[0].upsert(state, k0, g[state])
        if state not in closed_inad:
            for i in range(1, len(heuristics)):
                ki = key_of(state, i)
                if ki < INF and ki <= config.w2 * k0:
                    queues[i].upsert(state, ki, g[state])

    best_goal: State | None = None

    def note_goal(state) -> None:
        nonlocal best_goal
        if space.is_goal(state) and (best_goal is None or g[state] < g[best_goal]):
            best_goal = state

    def expand(state, i: int) -> None:
        expansions[i] += 1
        for nxt, cost in space.successors(state):
            if cost <= 0:
                raise ValueError(f"non-positive edge cost {cost}")
            ng = g[state] + cost
            if ng < g.get(nxt, INF):
                g[nxt] = ng
                parent[nxt] = state
                note_goal(nxt)
                if nxt not in closed_anchor:
                    insert(nxt)

    def reconstruct(goal_state) -> list:
        path = [goal_state]
        while parent[path[-1]] is not None:
            path.append(parent[path[-1]])
        path.reverse()
        return path

    def result(status: str, goal_state=None) -> PlanResult:
        path = reconstruct(goal_state) if goal_state is not None else []
        cost = g[goal_state] if goal_state is not None else INF
        return PlanResult(status, path, cost, expansions, len(g),
                          time.perf_counter() - t0)

    note_goal(start)
    insert(start)
    rotation = list(range(1, n_inad + 1)) or [0]
    while True:
        if queues[0].min_key() >= INF:
            return result("exhausted")
        if sum(expansions) >= config.expansion_cap:
            return result("cap_exceeded")
        for i in rotation:
            anchor_min = queues[0].min_key()
            if anchor_min >= INF:
                return result("exhausted")
            goal_g = g[best_goal] if best_goal is not None else INF
            if i != 0 and queues[i].min_key() <= config.w2 * anchor_min:
                if goal_g <= queues[i].min_key():
                    return result("success", best_goal)
                state = queues[i].pop()
                if config.debug:
                    assert state is not None
                closed_inad.add(state)
                for q in queues[1:]:
                    q.remove(state)
                expand(state, i)
            else:
                if goal_g <= anchor_min:
                    return result("success", best_goal)
                state = queues[0].pop()
                if state is None:
                    return result("exhausted")
                closed_anchor.add(state)
                for q in queues:
                    q.remove(state)
                expand(state, 0)
            if sum(expansions) >= config.expansion_cap:
                return result("cap_exceeded")
