"""Space-filling curves over a directed Hamiltonian triangle cycle.

Each triangle is entered and left at the midpoints of its strip edges. At
depth 0 the curve visits the centroid between them; deeper levels split the
triangle at its edge midpoints into four half-size cells and thread the four
sub-curves so that consecutive cells connect at the midpoint of a shared
edge, or at a shared vertex where two corner cells meet only in a point.
Every depth-d cell contributes its centroid, so the curve comes within one
cell diameter (2^-d of the triangle's) of every surface point.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import permutations
from pathlib import Path

from .mesh import Mesh, edge_key

MAX_DEPTH = 12

Point = tuple[float, float, float]


class CurveError(Exception):
    """Invalid directed cycle or curve request."""


@dataclass
class DirectedCycle:
    """Per-triangle (entry edge, exit edge) chain along the cycle direction."""

    triangles: list[int]
    entry: list[tuple[int, int]]
    exit: list[tuple[int, int]]

    def __len__(self) -> int:
        return len(self.triangles)

    def reversed(self) -> "DirectedCycle":
        ids = [self.triangles[0]] + self.triangles[:0:-1]
        ent = [self.exit[0]] + self.exit[:0:-1]
        ext = [self.entry[0]] + self.entry[:0:-1]
        return DirectedCycle(triangles=ids, entry=ent, exit=ext)


@dataclass
class CurvePolyline:
    points: list[Point]
    closed: bool


def direct_cycle(mesh: Mesh, cycle: list[int]) -> DirectedCycle:
    """Chain the cycle's shared edges into per-triangle entry/exit pairs."""
    k = len(cycle)
    if k < 3:
        raise CurveError(f"cycle of {k} triangles cannot be directed")
    shared = []
    for i in range(k):
        t1, t2 = cycle[i], cycle[(i + 1) % k]
        common = set(mesh.triangles[t1]) & set(mesh.triangles[t2])
        if len(common) != 2:
            raise CurveError(f"consecutive triangles {t1} and {t2} share no edge")
        a, b = common
        shared.append(edge_key(a, b))
    entry = [shared[i - 1] for i in range(k)]
    for i in range(k):
        if entry[i] == shared[i]:
            raise CurveError(f"triangle {cycle[i]} enters and exits by the same edge")
    return DirectedCycle(triangles=list(cycle), entry=entry, exit=shared)


def _mid(p: Point, q: Point) -> Point:
    return ((p[0] + q[0]) / 2.0, (p[1] + q[1]) / 2.0, (p[2] + q[2]) / 2.0)


def _centroid(cell: tuple[Point, Point, Point]) -> Point:
    a, b, c = cell
    return (
        (a[0] + b[0] + c[0]) / 3.0,
        (a[1] + b[1] + c[1]) / 3.0,
        (a[2] + b[2] + c[2]) / 3.0,
    )


def _cells_of(cell):
    """Midpoint subdivision: three corner cells plus the center cell."""
    a, b, c = cell
    mab, mbc, mca = _mid(a, b), _mid(b, c), _mid(c, a)
    corners = ((a, mab, mca), (b, mbc, mab), (c, mca, mbc))
    return corners, (mab, mbc, mca)


def _boundary_points(cell) -> set[Point]:
    a, b, c = cell
    return {a, b, c, _mid(a, b), _mid(b, c), _mid(c, a)}


def _touch_point(c1, c2) -> Point | None:
    """Connector between two sub-cells: midpoint of a shared edge, or the
    shared vertex when they touch only in a point."""
    common = [p for p in c1 if p in c2]
    if len(common) == 2:
        return _mid(common[0], common[1])
    if len(common) == 1:
        return common[0]
    return None


# try corner, center, corner, corner threadings first: that is the regular
# pattern; other orders only occur where a connector would degenerate
_PERM_ORDER = sorted(permutations(range(4)), key=lambda p: (p.index(3) != 1, p))


def _subcurve(cell, p_in: Point, p_out: Point, depth: int, out: list[Point]) -> None:
    """Append the cell's curve points; p_in was emitted by the predecessor."""
    if depth == 0:
        out.append(_centroid(cell))
        out.append(p_out)
        return
    corners, center = _cells_of(cell)
    cells = list(corners) + [center]
    for perm in _PERM_ORDER:
        seq = [cells[i] for i in perm]
        if p_in not in _boundary_points(seq[0]) or p_out not in _boundary_points(seq[-1]):
            continue
        conns = []
        for i in range(3):
            touch = _touch_point(seq[i], seq[i + 1])
            if touch is None:
                break
            conns.append(touch)
        else:
            waypoints = [p_in, *conns, p_out]
            if len(set(waypoints)) == 5:
                for i in range(4):
                    _subcurve(seq[i], waypoints[i], waypoints[i + 1], depth - 1, out)
                return
    raise CurveError("no valid traversal of the four sub-cells (unreachable for strip input)")


def generate_curve(mesh: Mesh, dc: DirectedCycle, depth: int) -> CurvePolyline:
    """Closed polyline threading every triangle of the directed cycle.

    Point count is exactly len(dc) * 2 * 4**depth: each depth-`depth` cell
    contributes its centroid and its exit connector, entries being shared.
    """
    if depth < 0:
        raise CurveError("depth must be >= 0")
    if depth > MAX_DEPTH:
        raise CurveError(f"depth {depth} exceeds the guard of {MAX_DEPTH}")
    points: list[Point] = []
    for i, t in enumerate(dc.triangles):
        cell = tuple(mesh.vertices[v] for v in mesh.triangles[t])
        e_in, e_out = dc.entry[i], dc.exit[i]
        p_in = _mid(mesh.vertices[e_in[0]], mesh.vertices[e_in[1]])
        p_out = _mid(mesh.vertices[e_out[0]], mesh.vertices[e_out[1]])
        _subcurve(cell, p_in, p_out, depth, points)
    return CurvePolyline(points=points, closed=True)


# -- export -------------------------------------------------------------------


def dumps_curve_obj(curve: CurvePolyline) -> str:
    points = _dedupe(curve.points)
    if not points:
        raise CurveError("cannot export an empty curve")
    lines = [f"v {x!r} {y!r} {z!r}" for x, y, z in points]
    refs = list(range(1, len(points) + 1))
    if curve.closed:
        refs.append(1)
    lines.append("l " + " ".join(str(r) for r in refs))
    return "\n".join(lines) + "\n"


def dumps_curve_json(curve: CurvePolyline) -> str:
    points = _dedupe(curve.points)
    if not points:
        raise CurveError("cannot export an empty curve")
    return json.dumps({"closed": curve.closed, "points": [list(p) for p in points]})


def export_curve(curve: CurvePolyline, path, fmt: str | None = None) -> None:
    """Write the polyline as an OBJ line element or a JSON point array."""
    path = Path(path)
    if fmt is None:
        fmt = path.suffix.lstrip(".").lower()
    fmt = fmt.lower()
    if fmt == "obj":
        path.write_text(dumps_curve_obj(curve))
    elif fmt == "json":
        path.write_text(dumps_curve_json(curve))
    else:
        raise CurveError(f"unknown curve format {fmt!r}")


def load_curve_json(path) -> CurvePolyline:
    data = json.loads(Path(path).read_text())
    return CurvePolyline(points=[tuple(p) for p in data["points"]], closed=data["closed"])


def _dedupe(points: list[Point]) -> list[Point]:
    out: list[Point] = []
    for p in points:
        if not out or out[-1] != p:
            out.append(p)
    return out
