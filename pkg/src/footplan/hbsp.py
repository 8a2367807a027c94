"""Resumable goal-rooted Dijkstra over the signature-augmented union graph.

A session is opened at ``(q_goal, ^)`` and expands augmented vertices
``(cell, signature)`` on demand, pruning every successor whose signature
leaves the suffix set of the registered reference words.  Queries resume
the stored queue, stop early once the frontier passes the caller's bound,
and never lose work: interleaving bounded queries and then draining gives
exactly the distances of a from-scratch full run.
"""

from __future__ import annotations

import heapq
import io
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

from .errors import InvalidQueryError
from .signature import EMPTY_WORD, SuffixSet, Word, concat_reduce, render_word, suffixes
from .world import Vertex, World

INF_MM = 2 ** 62

AugmentedVertex = tuple[int, int, int, Word]  # (surface, gx, gy, signature)


class QueryStatus(Enum):
    FOUND = "found"
    EXCEEDS_BOUND = "exceeds_bound"
    EXHAUSTED = "exhausted"
    UNREACHABLE = "unreachable"


@dataclass
class HbspSession:
    """Mutable single-writer search state; serialize all calls externally."""

    world: World
    goal_cell: Vertex
    reference_words: tuple[Word, ...]
    suffix_set: SuffixSet
    dist: dict[AugmentedVertex, int] = field(default_factory=dict)
    queue: list = field(default_factory=list)
    expansions: int = 0
    _last_key: int = 0

    def settled(self, v: AugmentedVertex) -> bool:
        return v in self.dist


def open_session(world: World, q_goal: Vertex, reference_words: Iterable[Sequence[int]]) -> HbspSession:
    """Seed a session at the goal with the empty signature.

    ``reference_words`` are un-reduced goal-to-start signatures; an empty
    collection degenerates to a plain backward Dijkstra restricted to the
    empty signature class.
    """
    sid, gx, gy = q_goal
    if not world.cell_is_free(sid, (gx, gy)):
        raise InvalidQueryError(f"goal cell {q_goal} is occupied or out of bounds")
    words = tuple(tuple(w) for w in reference_words)
    sset = suffixes(words, world)
    session = HbspSession(world, q_goal, words, sset)
    source = (sid, gx, gy, EMPTY_WORD)
    heapq.heappush(session.queue, (0, sid, gx, gy, EMPTY_WORD))
    return session


def succ(v: AugmentedVertex, session: HbspSession) -> list[tuple[AugmentedVertex, int]]:
    """Valid augmented successors of ``v`` with edge lengths in millimeters.

    A union-graph neighbour is kept only when the signature extended by the
    edge's crossing word reduces into the suffix set.
    """
    world = session.world
    sid, gx, gy, sig = v
    out = []
    for (nsid, ngx, ngy), cost in world.neighbors((sid, gx, gy)):
        word = world.edge_word((sid, gx, gy), (nsid, ngx, ngy))
        nsig = concat_reduce(sig, word, world) if word else sig
        if nsig in session.suffix_set:
            out.append(((nsid, ngx, ngy, nsig), cost))
    return out


def query(session: HbspSession, u: AugmentedVertex, bound: int = INF_MM) -> tuple[QueryStatus, int]:
    """Resume the search until ``u`` settles, the frontier passes ``bound``,
    or the queue drains.

    A vertex whose signature is outside the suffix set is unreachable by
    construction.  ``EXCEEDS_BOUND`` leaves ``u`` unsettled; a later call
    with a larger bound may still settle it.
    """
    if u[3] not in session.suffix_set:
        return QueryStatus.UNREACHABLE, INF_MM
    dist = session.dist
    if u in dist:
        return QueryStatus.FOUND, dist[u]
    queue = session.queue
    while queue:
        d = queue[0][0]
        if d > bound:
            return QueryStatus.EXCEEDS_BOUND, INF_MM
        d, sid, gx, gy, sig = heapq.heappop(queue)
        v = (sid, gx, gy, sig)
        if v in dist:
            continue  # stale queue entry
        assert d >= session._last_key, "extract-min keys must be monotone"
        session._last_key = d
        dist[v] = d
        session.expansions += 1
        for nv, cost in succ(v, session):
            if nv not in dist:
                heapq.heappush(queue, (d + cost, nv[0], nv[1], nv[2], nv[3]))
        if v == u:
            return QueryStatus.FOUND, d
    return QueryStatus.EXHAUSTED, INF_MM


def d_s(session: HbspSession, q: Vertex, s_u: Sequence[int], s: Sequence[int],
        bound: int = INF_MM) -> int:
    """Distance of the remaining class-constrained path from cell ``q``.

    ``s`` is one of the session's reference words (goal to start) and
    ``s_u`` the signature accumulated by the planner from the start; the
    target class is the reduction of their concatenation.
    """
    s = tuple(s)
    if s not in session.reference_words:
        raise InvalidQueryError(f"word {render_word(s)} is not registered in this session")
    target_sig = concat_reduce(s, s_u, session.world)
    status, value = query(session, (q[0], q[1], q[2], target_sig), bound)
    return value if status is QueryStatus.FOUND else INF_MM


def drain(session: HbspSession) -> None:
    """Run the session to exhaustion (used by tests and full heatmaps)."""
    while session.queue:
        d, sid, gx, gy, sig = heapq.heappop(session.queue)
        v = (sid, gx, gy, sig)
        if v in session.dist:
            continue
        session._last_key = d
        session.dist[v] = d
        session.expansions += 1
        for nv, cost in succ(v, session):
            if nv not in session.dist:
                heapq.heappush(session.queue, (d + cost, nv[0], nv[1], nv[2], nv[3]))


def dump_settled_csv(session: HbspSession) -> str:
    """Settled vertices as ``surface,gx,gy,sig,dist_mm`` CSV rows."""
    buf = io.StringIO()
    buf.write("surface,gx,gy,sig,dist_mm\n")
    for (sid, gx, gy, sig), d in sorted(session.dist.items()):
        buf.write(f"{sid},{gx},{gy},{render_word(sig)},{d}\n")
    return buf.getvalue()
