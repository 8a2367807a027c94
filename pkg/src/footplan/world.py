"""Multi-level 2D world model: surfaces, obstacles, beams, gates, union graph.

A world is a set of bounded planar surfaces with per-surface occupancy
grids.  3D obstacles are split along the vertical plane over each fold
between two surfaces, attributed to the surface they rest on, and projected
pessimistically.  Every obstacle grows one vertical ray ("beam") from a
representative point toward y = +inf; where the ray passes a free gate cell
it continues onto the neighbouring surface.  Surface pairs that touch along
a fold are connected by a gate: the coincident free cells along the fold.
The union graph is the 8-connected graph over free cells of all surfaces
plus zero-length edges across gate cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np
from scipy import ndimage

from .errors import ShapeError, WorldConsistencyError

Cell = tuple[int, int]
Vertex = tuple[int, int, int]  # (surface_id, gx, gy)

_ALIGN_TOL = 1e-6
_DIRS8 = ((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1))


@dataclass(frozen=True)
class Rect:
    xmin: float
    ymin: float
    xmax: float
    ymax: float

    def __post_init__(self) -> None:
        if not (self.xmax > self.xmin and self.ymax > self.ymin):
            raise ShapeError(f"degenerate rectangle {self}")

    def contains(self, x: float, y: float) -> bool:
        return self.xmin <= x <= self.xmax and self.ymin <= y <= self.ymax

    def intersection(self, other: "Rect") -> "Rect | None":
        xmin = max(self.xmin, other.xmin)
        ymin = max(self.ymin, other.ymin)
        xmax = min(self.xmax, other.xmax)
        ymax = min(self.ymax, other.ymax)
        if xmax > xmin and ymax > ymin:
            return Rect(xmin, ymin, xmax, ymax)
        return None


@dataclass(frozen=True)
class Surface:
    """A bounded plane: z = a*x + b*y + c over an axis-aligned xy rectangle."""

    id: int
    bounds: Rect
    height: tuple[float, float, float]
    resolution: float

    def height_at(self, x: float, y: float) -> float:
        a, b, c = self.height
        return a * x + b * y + c


@dataclass
class Workspace2D:
    """Per-surface occupancy grid in global cell coordinates."""

    surface_id: int
    origin: Cell              # global index of the lowest cell
    nx: int
    ny: int
    resolution: float
    raw: np.ndarray           # bool (nx, ny), True = obstacle
    inflated: np.ndarray      # raw dilated by the robot inflation radius

    def local(self, cell: Cell) -> Cell | None:
        ix, iy = cell[0] - self.origin[0], cell[1] - self.origin[1]
        if 0 <= ix < self.nx and 0 <= iy < self.ny:
            return ix, iy
        return None

    def is_free(self, cell: Cell) -> bool:
        loc = self.local(cell)
        return loc is not None and not self.inflated[loc]

    def free_cells(self) -> Iterator[Cell]:
        for ix, iy in zip(*np.nonzero(~self.inflated)):
            yield (self.origin[0] + int(ix), self.origin[1] + int(iy))


@dataclass(frozen=True)
class Obstacle:
    letter: int
    surface_id: int
    cells: frozenset[Cell]
    representative: tuple[float, float]
    input_index: int


@dataclass(frozen=True)
class BeamPiece:
    surface_id: int
    letter: int
    x: float
    y_lo: float
    y_hi: float


@dataclass(frozen=True)
class Beam:
    letter: int
    surface_id: int
    anchor: tuple[float, float]
    pieces: tuple[BeamPiece, ...]
    gates_crossed: frozenset[int]


@dataclass(frozen=True)
class Gate:
    """Free coincident cells along the fold between two surfaces."""

    letter: int
    lower: int
    upper: int
    cells: frozenset[Cell]
    fold: tuple[float, float, float] | None   # da*x + db*y + dc = 0; None if coplanar

    def other(self, surface_id: int) -> int:
        return self.upper if surface_id == self.lower else self.lower

    def fold_y_at(self, x: float) -> float | None:
        if self.fold is None:
            return None
        da, db, dc = self.fold
        if abs(db) < 1e-12:
            return None
        return -(da * x + dc) / db

    def segment_crossing_param(self, x0: float, y0: float,
                               x1: float, y1: float) -> float | None:
        if self.fold is None:
            raise WorldConsistencyError(
                f"gate t{self.letter} joins coplanar surfaces; fold crossing undefined")
        da, db, dc = self.fold
        denom = da * (x1 - x0) + db * (y1 - y0)
        if abs(denom) < 1e-12:
            return None
        t = -(da * x0 + db * y0 + dc) / denom
        if -1e-9 <= t <= 1 + 1e-9:
            return min(max(t, 0.0), 1.0)
        return None


@dataclass(frozen=True)
class Fragment:
    """An obstacle point set after subdivision, attributed to one surface."""

    input_index: int
    serial: int
    surface_id: int
    points: np.ndarray        # (n, 3) float


def pessimistic_project(voxels: np.ndarray, bounds: Rect, resolution: float) -> np.ndarray:
    """Project a 3D occupancy grid down: a column blocks its 2D cell if any
    z-layer is occupied.  Returns a bool grid of shape (nx, ny)."""
    if resolution <= 0:
        raise ShapeError(f"resolution must be positive, got {resolution}")
    nx = int(round((bounds.xmax - bounds.xmin) / resolution))
    ny = int(round((bounds.ymax - bounds.ymin) / resolution))
    if nx <= 0 or ny <= 0:
        raise ShapeError(f"bounds {bounds} span no cells at resolution {resolution}")
    voxels = np.asarray(voxels, dtype=bool)
    if voxels.ndim != 3 or voxels.shape[0] != nx or voxels.shape[1] != ny:
        raise ShapeError(
            f"voxel grid shape {voxels.shape} does not match {nx}x{ny} columns")
    return voxels.any(axis=2)


def subdivide_obstacles(point_sets: Sequence[np.ndarray],
                        surfaces: Sequence[Surface]) -> list[Fragment]:
    """Split obstacles along every fold plane and attribute each part to the
    surface it rests on.

    The fold plane between surfaces i and j is the vertical plane through
    the line where their height functions agree; points are partitioned by
    the sign (<= 0 vs > 0) of the plane expression.  A fragment is assigned
    to the candidate surface minimizing the mean gap between the fragment's
    per-column base height and the surface.
    """
    surfaces = sorted(surfaces, key=lambda s: s.id)
    planes = []
    for i, si in enumerate(surfaces):
        for sj in surfaces[i + 1:]:
            if si.bounds.intersection(sj.bounds) is None:
                continue
            da = si.height[0] - sj.height[0]
            db = si.height[1] - sj.height[1]
            dc = si.height[2] - sj.height[2]
            if abs(da) < 1e-12 and abs(db) < 1e-12:
                continue  # parallel or coplanar: no fold line
            planes.append((da, db, dc))

    parts: list[tuple[int, np.ndarray]] = [
        (idx, np.asarray(pts, dtype=float).reshape(-1, 3))
        for idx, pts in enumerate(point_sets)
    ]
    for da, db, dc in planes:
        split: list[tuple[int, np.ndarray]] = []
        for idx, pts in parts:
            vals = da * pts[:, 0] + db * pts[:, 1] + dc
            low, high = pts[vals <= 0], pts[vals > 0]
            if len(low) and len(high):
                split.append((idx, low))
                split.append((idx, high))
            else:
                split.append((idx, pts))
        parts = split

    fragments = []
    for serial, (idx, pts) in enumerate(parts):
        cx, cy = float(pts[:, 0].mean()), float(pts[:, 1].mean())
        candidates = [s for s in surfaces if s.bounds.contains(cx, cy)]
        if not candidates:
            raise WorldConsistencyError(
                f"obstacle {idx} fragment at ({cx:.2f}, {cy:.2f}) lies outside all surfaces")
        bases: dict[tuple[float, float], float] = {}
        for x, y, z in pts:
            key = (round(x, 6), round(y, 6))
            bases[key] = min(z, bases.get(key, math.inf))
        best = min(
            candidates,
            key=lambda s: (
                sum(abs(z - s.height_at(x, y)) for (x, y), z in bases.items()) / len(bases),
                s.id,
            ),
        )
        fragments.append(Fragment(idx, serial, best.id, pts))
    return fragments


def _gate_cell_candidates(surfaces: dict[int, Surface],
                          workspaces: dict[int, Workspace2D],
                          lower: Surface, upper: Surface,
                          resolution: float) -> tuple[set[Cell], tuple | None]:
    overlap = lower.bounds.intersection(upper.bounds)
    if overlap is None:
        return set(), None
    da = lower.height[0] - upper.height[0]
    db = lower.height[1] - upper.height[1]
    dc = lower.height[2] - upper.height[2]
    coplanar = abs(da) < 1e-12 and abs(db) < 1e-12
    if coplanar and abs(dc) > 1e-9:
        return set(), None  # parallel planes never touch
    fold = None if coplanar else (da, db, dc)
    tol = (abs(da) + abs(db)) * resolution / 2 + 1e-9
    cells = set()
    wl, wu = workspaces[lower.id], workspaces[upper.id]
    gx_lo = math.floor(overlap.xmin / resolution + _ALIGN_TOL)
    gx_hi = math.ceil(overlap.xmax / resolution - _ALIGN_TOL)
    gy_lo = math.floor(overlap.ymin / resolution + _ALIGN_TOL)
    gy_hi = math.ceil(overlap.ymax / resolution - _ALIGN_TOL)
    for gx in range(gx_lo, gx_hi):
        for gy in range(gy_lo, gy_hi):
            cell = (gx, gy)
            if wl.local(cell) is None or wu.local(cell) is None:
                continue
            cx, cy = (gx + 0.5) * resolution, (gy + 0.5) * resolution
            if not coplanar and abs(da * cx + db * cy + dc) > tol:
                continue
            if wl.is_free(cell) and wu.is_free(cell):
                cells.add(cell)
    return cells, fold


def build_gates(surfaces: Sequence[Surface], workspaces: dict[int, Workspace2D],
                resolution: float,
                letters: dict[tuple[int, int], int] | None = None) -> list[Gate]:
    """One gate per surface pair whose fold has at least one free coincident
    cell; fully blocked folds yield no gate."""
    ordered = sorted(surfaces, key=lambda s: s.id)
    by_id = {s.id: s for s in ordered}
    gates = []
    for i, lo in enumerate(ordered):
        for hi in ordered[i + 1:]:
            cells, fold = _gate_cell_candidates(by_id, workspaces, lo, hi, resolution)
            if not cells:
                continue
            letter = letters[(lo.id, hi.id)] if letters else 0
            gates.append(Gate(letter, lo.id, hi.id, frozenset(cells), fold))
    return gates


def _walk_beam(letter: int, anchor: tuple[float, float], home: int,
               surfaces: dict[int, Surface], gates_by_surface: dict[int, list[Gate]],
               resolution: float) -> tuple[tuple[BeamPiece, ...], frozenset[int]]:
    """Extend the vertical ray upward, hopping onto the neighbouring surface
    wherever it meets a free gate cell."""
    x, y = anchor
    pieces: list[BeamPiece] = []
    crossed: set[int] = set()
    sid, y_lo = home, y
    visited = {home}
    while True:
        surf = surfaces[sid]
        if not (surf.bounds.xmin <= x <= surf.bounds.xmax):
            break
        y_hi = surf.bounds.ymax
        if y_hi < y_lo - 1e-9:
            break
        pieces.append(BeamPiece(sid, letter, x, y_lo, y_hi))
        hop = None
        for gate in gates_by_surface.get(sid, ()):
            yg = gate.fold_y_at(x)
            if yg is None or not (y_lo + 1e-9 < yg <= y_hi + 1e-9):
                continue
            if gate.other(sid) in visited:
                continue
            near = {
                (math.floor(x / resolution + _ALIGN_TOL), math.floor((yg + dy) / resolution + _ALIGN_TOL))
                for dy in (-resolution / 4, resolution / 4)
            }
            if not near & set(gate.cells):
                continue
            if hop is None or yg < hop[0]:
                hop = (yg, gate)
        if hop is None:
            break
        yg, gate = hop
        crossed.add(gate.letter)
        nsid = gate.other(sid)
        visited.add(nsid)
        # The bounds-overlap strip below the fold is the same ground on both
        # surfaces, so the continuation must cover the next surface's copy.
        sid, y_lo = nsid, max(surfaces[nsid].bounds.ymin, y_lo)
    return tuple(pieces), frozenset(crossed)


def build_beams(obstacles: Sequence[Obstacle], surfaces: dict[int, Surface],
                gates: Sequence[Gate], resolution: float) -> list[Beam]:
    """One beam per obstacle, anchored at its representative point."""
    xs = [o.representative[0] for o in obstacles]
    if len(set(xs)) != len(xs):
        raise WorldConsistencyError("obstacle representatives share an x-coordinate")
    gates_by_surface: dict[int, list[Gate]] = {}
    for gate in gates:
        gates_by_surface.setdefault(gate.lower, []).append(gate)
        gates_by_surface.setdefault(gate.upper, []).append(gate)
    beams = []
    for obs in obstacles:
        pieces, crossed = _walk_beam(obs.letter, obs.representative, obs.surface_id,
                                     surfaces, gates_by_surface, resolution)
        beams.append(Beam(obs.letter, obs.surface_id, obs.representative, pieces, crossed))
    return beams


def _inflate(raw: np.ndarray, radius_cells: float) -> np.ndarray:
    if radius_cells <= 0 or not raw.any():
        return raw.copy()
    n = int(math.floor(radius_cells + 1e-9))
    di, dj = np.ogrid[-n:n + 1, -n:n + 1]
    footprint = di * di + dj * dj <= radius_cells * radius_cells + 1e-9
    return ndimage.binary_dilation(raw, structure=footprint)


class World:
    """Immutable built world; safe for concurrent readers."""

    def __init__(self, surfaces: Sequence[Surface], workspaces: dict[int, Workspace2D],
                 obstacles: Sequence[Obstacle], beams: Sequence[Beam],
                 gates: Sequence[Gate], resolution: float,
                 inflation_radius: float, source: dict | None = None):
        self.surfaces = {s.id: s for s in sorted(surfaces, key=lambda s: s.id)}
        self.workspaces = workspaces
        self.obstacles = list(obstacles)
        self.beams = list(beams)
        self.gates = list(gates)
        self.resolution = resolution
        self.inflation_radius = inflation_radius
        self.source = source or {}

        self.orth_mm = int(round(resolution * 1000))
        self.diag_mm = int(round(resolution * 1000 * math.sqrt(2)))

        self._letters: dict[int, tuple[str, object]] = {}
        for obs in self.obstacles:
            self._letters[obs.letter] = ("beam", obs)
        for gate in self.gates:
            self._letters[gate.letter] = ("gate", gate)

        self._pieces_by_surface: dict[int, tuple[BeamPiece, ...]] = {
            sid: () for sid in self.surfaces
        }
        grouped: dict[int, list[BeamPiece]] = {sid: [] for sid in self.surfaces}
        for beam in self.beams:
            for piece in beam.pieces:
                grouped[piece.surface_id].append(piece)
        for sid, pieces in grouped.items():
            self._pieces_by_surface[sid] = tuple(pieces)

        self._gate_by_pair: dict[frozenset[int], Gate] = {
            frozenset((g.lower, g.upper)): g for g in self.gates
        }
        self._gates_by_surface: dict[int, list[Gate]] = {sid: [] for sid in self.surfaces}
        self._gate_cells: dict[int, dict[Cell, list[Gate]]] = {sid: {} for sid in self.surfaces}
        for gate in self.gates:
            for sid in (gate.lower, gate.upper):
                self._gates_by_surface[sid].append(gate)
                for cell in gate.cells:
                    self._gate_cells[sid].setdefault(cell, []).append(gate)

        self._commuting: frozenset[tuple[int, int]] = frozenset(
            (min(beam.letter, g), max(beam.letter, g))
            for beam in self.beams for g in beam.gates_crossed
        )
        self._edge_words: dict[tuple[Vertex, Vertex], tuple[int, ...]] = {}

    # -- letters -----------------------------------------------------------

    def letter_exists(self, letter: int) -> bool:
        return letter in self._letters

    def letter_kind(self, letter: int) -> str:
        return self._letters[letter][0]

    def letters_commute(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self._commuting

    def beam_home(self, letter: int) -> int:
        kind, obj = self._letters[letter]
        if kind != "beam":
            raise WorldConsistencyError(f"t{letter} is not a beam letter")
        return obj.surface_id

    # -- geometry ----------------------------------------------------------

    def cell_of(self, pt: tuple[float, float]) -> Cell:
        r = self.resolution
        return (math.floor(pt[0] / r + _ALIGN_TOL), math.floor(pt[1] / r + _ALIGN_TOL))

    def cell_center(self, cell: Cell) -> tuple[float, float]:
        r = self.resolution
        return ((cell[0] + 0.5) * r, (cell[1] + 0.5) * r)

    def surfaces_containing(self, x: float, y: float) -> list[int]:
        return [sid for sid, s in self.surfaces.items() if s.bounds.contains(x, y)]

    def height_at(self, surface_id: int, x: float, y: float) -> float:
        return self.surfaces[surface_id].height_at(x, y)

    def beam_pieces_on(self, surface_id: int) -> tuple[BeamPiece, ...]:
        return self._pieces_by_surface.get(surface_id, ())

    def gates_of(self, surface_id: int) -> list[Gate]:
        return self._gates_by_surface.get(surface_id, [])

    def gate_between(self, a: int, b: int) -> Gate | None:
        return self._gate_by_pair.get(frozenset((a, b)))

    def cell_in_gate(self, gate: Gate, pt: tuple[float, float]) -> bool:
        half = self.resolution / 2 + 1e-9
        x, y = pt
        for cell in gate.cells:
            cx, cy = self.cell_center(cell)
            if abs(cx - x) <= half and abs(cy - y) <= half:
                return True
        return False

    def cell_is_free(self, surface_id: int, cell: Cell) -> bool:
        ws = self.workspaces.get(surface_id)
        return ws is not None and ws.is_free(cell)

    def point_is_free(self, pt: tuple[float, float], surface_id: int) -> bool:
        surf = self.surfaces.get(surface_id)
        if surf is None or not surf.bounds.contains(*pt):
            return False
        return self.cell_is_free(surface_id, self.cell_of(pt))

    # -- union graph -------------------------------------------------------

    def vertices(self) -> Iterator[Vertex]:
        for sid in sorted(self.workspaces):
            for cell in self.workspaces[sid].free_cells():
                yield (sid, cell[0], cell[1])

    def neighbors(self, v: Vertex) -> list[tuple[Vertex, int]]:
        """Union-graph neighbours with integer-millimeter edge costs.

        Diagonal moves require both orthogonally adjacent cells free (no
        corner cutting); gate edges join coincident cells at zero cost.
        """
        sid, gx, gy = v
        out = []
        for dx, dy in _DIRS8:
            cell = (gx + dx, gy + dy)
            if not self.cell_is_free(sid, cell):
                continue
            if dx and dy and not (self.cell_is_free(sid, (gx + dx, gy))
                                  and self.cell_is_free(sid, (gx, gy + dy))):
                continue
            cost = self.diag_mm if dx and dy else self.orth_mm
            out.append(((sid, cell[0], cell[1]), cost))
        for gate in self._gate_cells[sid].get((gx, gy), ()):
            out.append(((gate.other(sid), gx, gy), 0))
        return out

    def edge_word(self, u: Vertex, v: Vertex) -> tuple[int, ...]:
        """Crossing word of traversing union-graph edge u -> v."""
        cached = self._edge_words.get((u, v))
        if cached is not None:
            return cached
        from .signature import segment_crossings
        if u[0] == v[0]:
            word = segment_crossings(self.cell_center((u[1], u[2])), u[0],
                                     self.cell_center((v[1], v[2])), v[0], self)
        else:
            gate = self.gate_between(u[0], v[0])
            if gate is None or (u[1], u[2]) != (v[1], v[2]):
                raise WorldConsistencyError(f"no gate edge between {u} and {v}")
            word = (gate.letter,) if u[0] == gate.lower else (-gate.letter,)
        self._edge_words[(u, v)] = word
        return word

    def connected_components(self) -> list[set[Vertex]]:
        seen: set[Vertex] = set()
        comps = []
        for v in self.vertices():
            if v in seen:
                continue
            comp = {v}
            stack = [v]
            while stack:
                u = stack.pop()
                for w, _ in self.neighbors(u):
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(comp)
        return comps


def _points_of_spec(entry: dict, resolution: float, index: int) -> np.ndarray:
    if "points" in entry:
        pts = np.asarray(entry["points"], dtype=float).reshape(-1, 3)
        if not len(pts):
            raise WorldConsistencyError(f"obstacle {index} has no points")
        return pts
    if "box" in entry:
        x0, y0, z0, x1, y1, z1 = (float(v) for v in entry["box"])
        if not (x1 >= x0 and y1 >= y0 and z1 >= z0):
            raise WorldConsistencyError(f"obstacle {index} box is inverted")
        def centers(lo: float, hi: float) -> np.ndarray:
            n = max(1, int(math.ceil((hi - lo) / resolution - 1e-9)))
            return lo + (np.arange(n) + 0.5) * min(resolution, (hi - lo) / n if hi > lo else resolution)
        xs, ys, zs = centers(x0, x1), centers(y0, y1), centers(z0, z1)
        grid = np.array(np.meshgrid(xs, ys, zs, indexing="ij"), dtype=float)
        return grid.reshape(3, -1).T
    raise WorldConsistencyError(f"obstacle {index} must define 'points' or 'box'")


def build_world(doc: dict) -> World:
    """Build an immutable world from a parsed world document."""
    resolution = float(doc.get("resolution_m", 0.1))
    if resolution <= 0:
        raise ShapeError(f"resolution must be positive, got {resolution}")
    inflation = float(doc.get("inflation_radius_m", 0.0))

    surfaces = []
    for s in doc.get("surfaces", []):
        bounds = Rect(*map(float, s["bounds"]))
        for edge in (bounds.xmin, bounds.ymin, bounds.xmax, bounds.ymax):
            if abs(edge / resolution - round(edge / resolution)) > _ALIGN_TOL:
                raise WorldConsistencyError(
                    f"surface {s['id']} bounds must align to the {resolution} m grid")
        surfaces.append(Surface(int(s["id"]), bounds, tuple(map(float, s["height"])),
                                resolution))
    if not surfaces:
        raise WorldConsistencyError("world defines no surfaces")
    ids = [s.id for s in surfaces]
    if len(set(ids)) != len(ids):
        raise WorldConsistencyError("surface ids must be unique")
    surfaces.sort(key=lambda s: s.id)
    by_id = {s.id: s for s in surfaces}

    point_sets = [_points_of_spec(entry, resolution, i)
                  for i, entry in enumerate(doc.get("obstacles_3d", []))]
    fragments = subdivide_obstacles(point_sets, surfaces)

    # Project fragments to per-surface cells.
    frag_cells: list[tuple[Fragment, frozenset[Cell]]] = []
    per_surface_frags: dict[int, list[int]] = {s.id: [] for s in surfaces}
    for k, frag in enumerate(fragments):
        surf = by_id[frag.surface_id]
        cells = set()
        for x, y, _ in frag.points:
            if surf.bounds.contains(x, y):
                cells.add((math.floor(x / resolution + _ALIGN_TOL),
                           math.floor(y / resolution + _ALIGN_TOL)))
        if not cells:
            raise WorldConsistencyError(
                f"obstacle {frag.input_index} projects to no cells on surface {frag.surface_id}")
        frag_cells.append((frag, frozenset(cells)))
        per_surface_frags[frag.surface_id].append(k)

    workspaces: dict[int, Workspace2D] = {}
    for surf in surfaces:
        gx0 = int(round(surf.bounds.xmin / resolution))
        gy0 = int(round(surf.bounds.ymin / resolution))
        nx = int(round((surf.bounds.xmax - surf.bounds.xmin) / resolution))
        ny = int(round((surf.bounds.ymax - surf.bounds.ymin) / resolution))
        raw = np.zeros((nx, ny), dtype=bool)
        for k in per_surface_frags[surf.id]:
            for gx, gy in frag_cells[k][1]:
                ix, iy = gx - gx0, gy - gy0
                if 0 <= ix < nx and 0 <= iy < ny:
                    raw[ix, iy] = True
        inflated = _inflate(raw, inflation / resolution)
        workspaces[surf.id] = Workspace2D(surf.id, (gx0, gy0), nx, ny,
                                          resolution, raw, inflated)

    gate_specs = build_gates(surfaces, workspaces, resolution)

    # Interleaved letter assignment: per surface in ascending id order,
    # first that surface's obstacles (input order), then its gates to
    # higher-id surfaces (ascending).
    letter = 0
    obstacle_letters: dict[int, int] = {}   # fragment index -> letter
    gate_letters: dict[tuple[int, int], int] = {}
    gate_pairs = sorted((g.lower, g.upper) for g in gate_specs)
    for surf in surfaces:
        ks = sorted(per_surface_frags[surf.id],
                    key=lambda k: (fragments[k].input_index, fragments[k].serial))
        for k in ks:
            letter += 1
            obstacle_letters[k] = letter
        for pair in gate_pairs:
            if pair[0] == surf.id:
                letter += 1
                gate_letters[pair] = letter
    max_letter = letter

    obstacles = []
    for k, (frag, cells) in enumerate(frag_cells):
        let = obstacle_letters[k]
        centers = np.array([[(gx + 0.5) * resolution, (gy + 0.5) * resolution]
                            for gx, gy in sorted(cells)])
        centroid = centers.mean(axis=0)
        d2 = ((centers - centroid) ** 2).sum(axis=1)
        rep_center = centers[np.lexsort((centers[:, 1], centers[:, 0], d2))[0]]
        # Sub-cell x offset keeps representatives off the cell-center lattice
        # and pairwise distinct in x, so grid polylines never graze a beam.
        offset = let * resolution / (2 * (max_letter + 1))
        representative = (float(rep_center[0]) + offset, float(rep_center[1]))
        obstacles.append(Obstacle(let, frag.surface_id, cells, representative,
                                  frag.input_index))

    gates = [Gate(gate_letters[(g.lower, g.upper)], g.lower, g.upper, g.cells, g.fold)
             for g in gate_specs]
    beams = build_beams(obstacles, by_id, gates, resolution)

    return World(surfaces, workspaces, obstacles, beams, gates,
                 resolution, inflation, source=doc)
