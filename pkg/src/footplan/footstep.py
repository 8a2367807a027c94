"""Discretized footstep state space with accumulated crossing signatures.

States pair two foot poses on the cell-center lattice with the signature of
the projected midpoint path walked so far.  Successors place the moving
foot by a motion primitive expressed in the stance-foot frame, re-snap to
the lattice, and advance the signature by the crossing word of the midpoint
cell transition.  Costs charge the projected cell-center displacement plus
a constant per step, which keeps the backward-Dijkstra anchor admissible
and consistent on this graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

from .errors import InvalidQueryError
from .signature import EMPTY_WORD, Word, concat_reduce
from .world import Vertex, World

LEFT, RIGHT = 0, 1
THETA_BINS = 16

# Moving-foot displacements (forward, outward-offset) in meters relative to
# the nominal lateral separation, symmetric so every maneuver has a mirror.
DEFAULT_DISPLACEMENTS: tuple[tuple[float, float], ...] = (
    (0.0, 0.0),
    (0.1, 0.0), (0.2, 0.0), (-0.1, 0.0), (-0.2, 0.0),
    (0.1, 0.1), (0.1, -0.1), (-0.1, 0.1), (-0.1, -0.1),
    (0.0, 0.1), (0.0, -0.1),
)
DEFAULT_YAW_STEPS: tuple[int, ...] = (-1, 0, 1)


class FootPose(NamedTuple):
    gx: int
    gy: int
    theta: int          # multiples of pi/8
    surface_id: int


class FootState(NamedTuple):
    left: FootPose
    right: FootPose
    moving: int         # which foot steps next
    sig: Word
    projected_cell: Vertex


@dataclass(frozen=True)
class FootParams:
    nominal_separation_m: float = 0.2
    min_separation_m: float = 0.1
    max_separation_m: float = 0.45
    max_step_height_m: float = 0.3
    max_rel_yaw_bins: int = 4
    step_cost_mm: int = 50
    # Extra clearance required around the feet midpoint (torso footprint);
    # 0 disables the check.  Passages wide enough for single feet but not
    # for the body stay visible to the 2D heuristics yet reject stances.
    body_clearance_m: float = 0.0
    displacements: tuple[tuple[float, float], ...] = DEFAULT_DISPLACEMENTS
    yaw_steps: tuple[int, ...] = DEFAULT_YAW_STEPS


def _theta_rad(theta: int) -> float:
    return theta * (2 * math.pi / THETA_BINS)


class FootstepSpace:
    """Successor generator over an immutable world.

    ``track_signatures`` is enabled when homotopy heuristics are active;
    without it all states stay in the trivial class and collapse to plain
    configurations.
    """

    def __init__(self, world: World, params: FootParams = FootParams(),
                 track_signatures: bool = True):
        self.world = world
        self.params = params
        self.track_signatures = track_signatures
        self._goal_region: tuple[dict[Vertex, int], int] | None = None
        self._goal_feet: tuple[FootPose, FootPose] | None = None
        self._goal_sig: Word | None = None
        self._body_grids: dict[int, object] = {}

    def _cell_body_free(self, cell: Vertex) -> bool:
        if self.params.body_clearance_m <= 0:
            return True
        sid = cell[0]
        grid = self._body_grids.get(sid)
        if grid is None:
            from .world import _inflate
            ws = self.world.workspaces[sid]
            grid = _inflate(ws.inflated, self.params.body_clearance_m / ws.resolution)
            self._body_grids[sid] = grid
        ws = self.world.workspaces[sid]
        loc = ws.local((cell[1], cell[2]))
        return loc is not None and not grid[loc]

    # -- geometry helpers ---------------------------------------------------

    def foot_center(self, foot: FootPose) -> tuple[float, float]:
        return self.world.cell_center((foot.gx, foot.gy))

    def foot_z(self, foot: FootPose) -> float:
        x, y = self.foot_center(foot)
        return self.world.height_at(foot.surface_id, x, y)

    def resolve_surface(self, x: float, y: float, z_hint: float) -> int | None:
        """Surface closest in height to ``z_hint`` among those containing
        the point, within the step-height tolerance."""
        best = None
        for sid in self.world.surfaces_containing(x, y):
            dz = abs(self.world.height_at(sid, x, y) - z_hint)
            if dz <= self.params.max_step_height_m + 1e-9:
                if best is None or dz < best[0]:
                    best = (dz, sid)
        return best[1] if best else None

    def project_m(self, left: FootPose, right: FootPose) -> Vertex | None:
        """Midpoint of the feet snapped to the grid of the height-closest
        surface."""
        xl, yl = self.foot_center(left)
        xr, yr = self.foot_center(right)
        mx, my = (xl + xr) / 2, (yl + yr) / 2
        mz = (self.foot_z(left) + self.foot_z(right)) / 2
        best = None
        for sid in self.world.surfaces_containing(mx, my):
            dz = abs(self.world.height_at(sid, mx, my) - mz)
            if best is None or dz < best[0]:
                best = (dz, sid)
        if best is None:
            return None
        cell = self.world.cell_of((mx, my))
        return (best[1], cell[0], cell[1])

    # -- validity -------------------------------------------------------------

    def is_valid(self, left: FootPose, right: FootPose) -> bool:
        w, p = self.world, self.params
        for foot in (left, right):
            if foot.surface_id not in w.surfaces:
                return False
            if not w.cell_is_free(foot.surface_id, (foot.gx, foot.gy)):
                return False
        xl, yl = self.foot_center(left)
        xr, yr = self.foot_center(right)
        sep = math.hypot(xl - xr, yl - yr)
        if not (p.min_separation_m - 1e-9 <= sep <= p.max_separation_m + 1e-9):
            return False
        if abs(self.foot_z(left) - self.foot_z(right)) > p.max_step_height_m + 1e-9:
            return False
        dyaw = (left.theta - right.theta) % THETA_BINS
        if min(dyaw, THETA_BINS - dyaw) > p.max_rel_yaw_bins:
            return False
        return True

    def make_state(self, left: FootPose, right: FootPose, moving: int,
                   sig: Word) -> FootState | None:
        cell = self.project_m(left, right)
        if cell is None or not self._cell_body_free(cell):
            return None
        return FootState(left, right, moving, sig, cell)

    # -- projected transition --------------------------------------------------

    def _transition(self, a: Vertex, b: Vertex) -> tuple[Word, int] | None:
        """Crossing word and grid cost of moving the projection a -> b.

        Allowed transitions: staying put, one union-graph edge, or a gate
        hop composed with one in-surface edge.
        """
        w = self.world
        if a == b:
            return EMPTY_WORD, 0
        direct = _edge_cost(w, a, b)
        if direct is not None:
            return w.edge_word(a, b), direct
        if a[0] != b[0]:
            hop_first = (b[0], a[1], a[2])
            if _edge_cost(w, a, hop_first) is not None:
                step = _edge_cost(w, hop_first, b)
                if step is not None:
                    return w.edge_word(a, hop_first) + w.edge_word(hop_first, b), step
            move_first = (a[0], b[1], b[2])
            step = _edge_cost(w, a, move_first)
            if step is not None and _edge_cost(w, move_first, b) is not None:
                return w.edge_word(a, move_first) + w.edge_word(move_first, b), step
        return None

    # -- search interface -------------------------------------------------------

    def successors(self, state: FootState) -> list[tuple[FootState, int]]:
        w, p = self.world, self.params
        stance = state.right if state.moving == LEFT else state.left
        side = 1.0 if state.moving == LEFT else -1.0
        theta = _theta_rad(stance.theta)
        cos_t, sin_t = math.cos(theta), math.sin(theta)
        sx, sy = self.foot_center(stance)
        sz = self.foot_z(stance)
        r = w.resolution
        out = []
        for dx, dout in p.displacements:
            lat = side * (p.nominal_separation_m + dout)
            wx = sx + dx * cos_t - lat * sin_t
            wy = sy + dx * sin_t + lat * cos_t
            gx = int(math.floor(wx / r))
            gy = int(math.floor(wy / r))
            cx, cy = (gx + 0.5) * r, (gy + 0.5) * r
            sid = self.resolve_surface(cx, cy, sz)
            if sid is None:
                continue
            for dyaw in p.yaw_steps:
                ntheta = (stance.theta + dyaw) % THETA_BINS
                foot = FootPose(gx, gy, ntheta, sid)
                left, right = ((foot, state.right) if state.moving == LEFT
                               else (state.left, foot))
                if not self.is_valid(left, right):
                    continue
                new_cell = self.project_m(left, right)
                if new_cell is None or not self._cell_body_free(new_cell):
                    continue
                trans = self._transition(state.projected_cell, new_cell)
                if trans is None:
                    continue
                word, grid_cost = trans
                if self.track_signatures and word:
                    sig = concat_reduce(state.sig, word, w)
                else:
                    sig = state.sig
                out.append((
                    FootState(left, right, 1 - state.moving, sig, new_cell),
                    grid_cost + p.step_cost_mm,
                ))
        return out

    # -- goal -----------------------------------------------------------------

    def set_goal_region(self, region_dist: dict[Vertex, int], radius_mm: int,
                        goal_sig: Word | None = None) -> None:
        self._goal_region = (region_dist, radius_mm)
        self._goal_feet = None
        self._goal_sig = goal_sig

    def set_goal_feet(self, left: FootPose, right: FootPose,
                      goal_sig: Word | None = None) -> None:
        self._goal_feet = (left, right)
        self._goal_region = None
        self._goal_sig = goal_sig

    def is_goal(self, state: FootState) -> bool:
        if self._goal_sig is not None and state.sig != self._goal_sig:
            return False
        if self._goal_feet is not None:
            return (state.left, state.right) == self._goal_feet
        if self._goal_region is not None:
            dist, radius = self._goal_region
            return dist.get(state.projected_cell, 2 ** 62) <= radius
        raise InvalidQueryError("no goal configured")


def _edge_cost(world: World, a: Vertex, b: Vertex) -> int | None:
    """Cost of a single union-graph edge, None when there is no edge."""
    if a[0] == b[0]:
        dx, dy = b[1] - a[1], b[2] - a[2]
        if (dx, dy) == (0, 0) or abs(dx) > 1 or abs(dy) > 1:
            return None
        if not (world.cell_is_free(a[0], (a[1], a[2]))
                and world.cell_is_free(b[0], (b[1], b[2]))):
            return None
        if dx and dy and not (world.cell_is_free(a[0], (a[1] + dx, a[2]))
                              and world.cell_is_free(a[0], (a[1], a[2] + dy))):
            return None
        return world.diag_mm if dx and dy else world.orth_mm
    if (a[1], a[2]) != (b[1], b[2]):
        return None
    gate = world.gate_between(a[0], b[0])
    if gate is None or (a[1], a[2]) not in gate.cells:
        return None
    return 0


def foot_pose_from_doc(world: World, doc: dict) -> FootPose:
    """Parse ``{"x":..,"y":..,"theta":bin,"surface":id?}`` into a pose."""
    x, y = float(doc["x"]), float(doc["y"])
    theta = int(doc.get("theta", 0)) % THETA_BINS
    cell = world.cell_of((x, y))
    if "surface" in doc:
        sid = int(doc["surface"])
        if sid not in world.surfaces or not world.surfaces[sid].bounds.contains(x, y):
            raise InvalidQueryError(f"foot at ({x}, {y}) is not on surface {sid}")
    else:
        candidates = world.surfaces_containing(x, y)
        if len(candidates) != 1:
            raise InvalidQueryError(
                f"foot at ({x}, {y}) needs an explicit surface (candidates: {candidates})")
        sid = candidates[0]
    return FootPose(cell[0], cell[1], theta, sid)
