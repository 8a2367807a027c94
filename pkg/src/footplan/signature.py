"""Crossing words: signatures, reduction, suffix sets, and crossing detection.

A letter is a signed integer: ``+k`` is a forward crossing of beam or gate
``k`` and ``-k`` the inverse crossing.  A word is a tuple of letters; the
empty tuple is the empty word (rendered ``^``).  Reduction cancels adjacent
inverse pairs, where a beam letter and a gate letter may trade places
whenever the beam's ray passes through that gate (the crossing point can be
slid through the gate without sweeping an obstacle).  The reduced word in
canonical order is the homotopy invariant used everywhere else.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import InvalidSegmentError, WorldConsistencyError

Word = tuple[int, ...]

EMPTY_WORD: Word = ()

# Tolerance for "the crossing happened exactly at the gate seam", in the
# normalized segment parameter.  World coordinates are grid-scale meters,
# so honest coincidences land far inside this band and honest non-ties far
# outside it.
_SEAM_TOL = 1e-7


def render_word(word: Word) -> str:
    """Format a word as ``t2.t3.~t5``; the empty word renders as ``^``."""
    if not word:
        return "^"
    return ".".join(f"t{x}" if x > 0 else f"~t{-x}" for x in word)


def parse_word(text: str) -> Word:
    """Inverse of :func:`render_word`."""
    text = text.strip()
    if text == "^":
        return EMPTY_WORD
    letters = []
    for tok in text.split("."):
        tok = tok.strip()
        neg = tok.startswith("~")
        body = tok[1:] if neg else tok
        if not body.startswith("t") or not body[1:].isdigit():
            raise ValueError(f"unparseable letter {tok!r}")
        k = int(body[1:])
        if k <= 0:
            raise ValueError(f"letter ids start at 1, got {tok!r}")
        letters.append(-k if neg else k)
    return tuple(letters)


def inverse(word: Word) -> Word:
    """Reverse the word and flip every orientation."""
    return tuple(-x for x in reversed(word))


def _check_letters(word: Word, world) -> None:
    for x in word:
        if not world.letter_exists(abs(x)):
            raise WorldConsistencyError(f"letter t{abs(x)} does not resolve in this world")


def _sort_key(letter: int) -> tuple[int, int]:
    # Descending letter id: a gate letter precedes the letters of beams
    # whose rays thread it, matching emission order when descending a fold.
    return (-abs(letter), 0 if letter > 0 else 1)


def reduce_word(word: Sequence[int], world) -> Word:
    """Canonical reduced form of ``word``.

    Repeatedly removes a pair ``x ... x̄`` whose in-between letters all
    commute with ``x`` (leftmost pair first), then orders adjacent commuting
    letters so equal homotopy classes share one representation.  Beam
    letters commute with a gate letter exactly when the beam crosses that
    gate's free cells; no other commutations exist.
    """
    _check_letters(tuple(word), world)
    letters = list(word)
    commutes = world.letters_commute

    changed = True
    while changed:
        changed = False
        for i in range(len(letters)):
            xi = letters[i]
            for j in range(i + 1, len(letters)):
                xj = letters[j]
                if xj == -xi:
                    del letters[j]
                    del letters[i]
                    changed = True
                    break
                if not commutes(abs(xi), abs(xj)):
                    break
            if changed:
                break

    # Canonical order: bubble commuting neighbours into ascending letter
    # order.  Eliminations are exhausted, so no swap can expose a new pair.
    swapped = True
    while swapped:
        swapped = False
        for i in range(len(letters) - 1):
            a, b = letters[i], letters[i + 1]
            if commutes(abs(a), abs(b)) and _sort_key(a) > _sort_key(b):
                letters[i], letters[i + 1] = b, a
                swapped = True
    return tuple(letters)


def concat_reduce(a: Sequence[int], b: Sequence[int], world) -> Word:
    """Reduced form of the concatenation ``a · b``."""
    return reduce_word(tuple(a) + tuple(b), world)


@dataclass(frozen=True)
class SuffixSet:
    """Admissible intermediate signatures derived from reference words.

    Holds ``reduce(prefix)`` for every prefix (including the empty one and
    the full word) of every registered un-reduced reference signature.
    """

    members: frozenset[Word]

    def __post_init__(self) -> None:
        if EMPTY_WORD not in self.members:
            raise WorldConsistencyError("a suffix set must contain the empty word")

    def __contains__(self, word: Word) -> bool:
        return word in self.members

    def __iter__(self):
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)


def suffixes(words: Iterable[Sequence[int]], world) -> SuffixSet:
    """Reduced-prefix set of a collection of un-reduced reference words."""
    members = {EMPTY_WORD}
    for word in words:
        word = tuple(word)
        for n in range(1, len(word) + 1):
            members.add(reduce_word(word[:n], world))
    return SuffixSet(frozenset(members))


def _beam_events(x0: float, y0: float, x1: float, y1: float, surface_id: int,
                 world, t_lo: float, t_hi: float) -> list[tuple[float, int]]:
    """Beam crossings of one straight sub-segment on a single surface.

    Returns ``(t, signed letter)`` events with parameter ``t`` measured on
    the full segment; only events with ``t_lo < t < t_hi`` are kept.
    A crossing requires a strict straddle of the beam column, so endpoints
    resting exactly on a beam emit nothing (tangency convention); anchors
    sit at perturbed sub-cell offsets, which keeps grid polylines away from
    exact ties.
    """
    events = []
    if x0 == x1:
        return events
    lo_x, hi_x = (x0, x1) if x0 < x1 else (x1, x0)
    for piece in world.beam_pieces_on(surface_id):
        xb = piece.x
        if not (lo_x < xb < hi_x):
            continue
        t = (xb - x0) / (x1 - x0)
        if not (t_lo < t < t_hi):
            continue
        yc = y0 + t * (y1 - y0)
        if piece.y_lo - 1e-9 <= yc <= piece.y_hi + 1e-9:
            events.append((t, piece.letter if x1 > x0 else -piece.letter))
    return events


def segment_crossings(p0: tuple[float, float], surface0: int,
                      p1: tuple[float, float], surface1: int, world) -> Word:
    """Crossing word of the straight segment from ``p0`` to ``p1``.

    Within one surface the word lists beam crossings in traversal order
    (increasing x emits the forward letter).  Across two surfaces the word
    additionally carries the gate letter (forward when moving from the
    lower-id surface to the higher), and a beam crossed exactly at the gate
    seam is ordered by the side its ray piece lives on: piece on the
    departure surface goes before the gate letter, piece on the arrival
    surface after it.
    """
    x0, y0 = p0
    x1, y1 = p1
    for pt, sid in ((p0, surface0), (p1, surface1)):
        if not world.point_is_free(pt, sid):
            raise InvalidSegmentError(
                f"segment endpoint {pt} on surface {sid} is not in free space")

    if surface0 == surface1:
        events = _beam_events(x0, y0, x1, y1, surface0, world,
                              -math.inf, math.inf)
        events.sort(key=lambda e: e[0])
        return tuple(letter for _, letter in events)

    gate = world.gate_between(surface0, surface1)
    if gate is None:
        raise InvalidSegmentError(
            f"no gate connects surfaces {surface0} and {surface1}")
    if abs(x1 - x0) < 1e-12 and abs(y1 - y0) < 1e-12:
        t_gate = 0.5  # zero-length hop between coincident gate cells
    else:
        t_gate = gate.segment_crossing_param(x0, y0, x1, y1)
        if t_gate is None and gate.fold is not None:
            # A segment running along the fold strip: the transition may
            # happen anywhere on it, the midpoint is as good as any.
            da, db, dc = gate.fold
            tol = (abs(da) + abs(db)) * world.resolution / 2 + 1e-9
            if abs(da * x0 + db * y0 + dc) <= tol:
                t_gate = 0.5
    if t_gate is None:
        raise InvalidSegmentError(
            f"segment never meets the fold between surfaces {surface0} and {surface1}")
    cross_pt = (x0 + t_gate * (x1 - x0), y0 + t_gate * (y1 - y0))
    if not world.cell_in_gate(gate, cross_pt):
        raise InvalidSegmentError(
            f"segment crosses the fold at {cross_pt}, outside the gate's free cells")

    gate_letter = gate.letter if surface0 == gate.lower else -gate.letter
    before = _beam_events(x0, y0, x1, y1, surface0, world,
                          -math.inf, t_gate - _SEAM_TOL)
    after = _beam_events(x0, y0, x1, y1, surface1, world,
                         t_gate + _SEAM_TOL, math.inf)

    # Seam-coincident beam crossings: the crossing point lies on the gate,
    # where the ray of a through-going beam exists on both surfaces.  Emit
    # each such beam once, on the side of its anchor's home surface.
    seam: dict[int, dict] = {}
    for sid in (surface0, surface1):
        for _, letter in _beam_events(x0, y0, x1, y1, sid, world,
                                      t_gate - _SEAM_TOL, t_gate + _SEAM_TOL):
            info = seam.setdefault(abs(letter), {"letter": letter, "sides": set()})
            info["sides"].add(sid)
    for info in seam.values():
        home = world.beam_home(abs(info["letter"]))
        if home == surface0 or (home != surface1 and surface0 in info["sides"]):
            before.append((t_gate, info["letter"]))
        else:
            after.append((t_gate, info["letter"]))
    before.sort(key=lambda e: e[0])
    after.sort(key=lambda e: e[0])
    return tuple(letter for _, letter in before) + (gate_letter,) + \
        tuple(letter for _, letter in after)


def path_signature(polyline: Sequence[tuple[tuple[float, float], int]], world) -> Word:
    """Un-reduced signature of a polyline of ``((x, y), surface_id)`` points.

    Per-segment words are concatenated without reduction; reducing the
    result yields the polyline's homotopy invariant.
    """
    if not polyline:
        return EMPTY_WORD
    letters: list[int] = []
    for (pt0, s0), (pt1, s1) in zip(polyline, polyline[1:]):
        letters.extend(segment_crossings(pt0, s0, pt1, s1, world))
    return tuple(letters)
