"""
Turning numbers of closed curves in the punctured disc, gap angles between docking points, and W_d: the number of times
a path crosses the seam rays theta = n pi/3 (each crossing is one AGV passing through the center).
"""
import math

import networkx as nx
import numpy as np

from guidepath.exceptions import ConfigError


WINDING_ZERO = "Zero"
WINDING_PLUS_MINUS_ONE = "PlusMinusOne"

SEAM_SPACING = math.pi / 3

# the grid search: how far the curve may wind either way, and the ring its chords are drawn on
MAX_LAPS = 2
SEARCH_RADIUS = 0.9


def as_polyline(path):
    """(n, 2) array of (r, theta) from DiscPoints, (r, theta) pairs, or an array."""
    return np.asarray([tuple(p) for p in path] if not isinstance(path, np.ndarray) else path, dtype=float)


def _angle_increments(polyline):
    d = np.diff(polyline[:, 1])
    return np.mod(d + math.pi, 2 * math.pi) - math.pi


def _unwrapped_angles(polyline):
    return polyline[0, 1] + np.concatenate([[0.0], np.cumsum(_angle_increments(polyline))])


def _cartesian(polyline):
    return np.column_stack([polyline[:, 0] * np.cos(polyline[:, 1]), polyline[:, 0] * np.sin(polyline[:, 1])])


def winding_number(path):
    polyline = as_polyline(path)
    if len(polyline) < 2:
        raise ConfigError("a closed path needs at least two points")
    if np.any(polyline[:, 0] <= 0):
        raise ConfigError("the path passes through the origin")

    xy = _cartesian(polyline)
    if np.hypot(*(xy[0] - xy[-1])) > 1e-9:
        raise ConfigError("the path is not closed")
    if np.hypot(*np.diff(xy, axis=0).T).sum() == 0:
        raise ConfigError("the path is degenerate (zero length)")

    return int(round(_angle_increments(polyline).sum() / (2 * math.pi)))


def _in_seam_units(theta):
    q = theta / SEAM_SPACING
    nearest = round(q)
    return float(nearest) if abs(q - nearest) < 1e-9 else q


def _seams_crossed(a, b):
    # start excluded, end included; so that a touch at a polyline vertex counts once
    qa, qb = _in_seam_units(a), _in_seam_units(b)
    if qb > qa:
        return math.floor(qb) - math.floor(qa)
    if qb < qa:
        return math.ceil(qa) - math.ceil(qb)
    return 0


def wd_cost(path):
    polyline = as_polyline(path)
    if np.any(polyline[:, 0] <= 0):
        raise ConfigError("the path passes through the origin")
    if len(polyline) < 2:
        return 0

    angles = _unwrapped_angles(polyline)
    return sum(_seams_crossed(a, b) for a, b in zip(angles, angles[1:]))


def _angle_of(q):
    return float(getattr(q, "theta", q))


def gap_angles(q):
    """
    The angles from each docking point to the next (cyclically), for time-ordered points on r = 1 (or their angles).
    Gaps sum to 2 pi; when all points coincide the closing gap is the full circle.
    """
    angles = [_angle_of(p) for p in q]
    if not angles:
        raise ConfigError("gap angles need at least one point")

    gaps = [float(np.mod(b - a, 2 * math.pi)) for a, b in zip(angles, angles[1:] + angles[:1])]
    if all(g < 1e-12 for g in gaps):
        gaps[-1] = 2 * math.pi

    total = sum(gaps)
    if abs(total - 2 * math.pi) > 1e-9:
        raise ConfigError("the points go around %.6g times; they are not in monotone order" % (total / (2 * math.pi)))
    return gaps


def optimal_winding_class(gaps):
    if any(g > math.pi for g in gaps):
        return WINDING_ZERO
    return WINDING_PLUS_MINUS_ONE


def search_grid(angles, grid):
    """
    The angles the grid search moves between: a uniform grid, the seam rays and the docking angles themselves, sorted
    in [0, 2 pi). Returns the grid and, per docking point, its index in it.
    """
    angles = [float(np.mod(_angle_of(a), 2 * math.pi)) for a in angles]
    values = np.concatenate([np.arange(0.0, 2 * math.pi, grid), SEAM_SPACING * np.arange(6), angles])
    values = np.sort(np.mod(values, 2 * math.pi))
    values = values[np.concatenate([[True], np.diff(values) > 1e-9]) & (values < 2 * math.pi - 1e-9)]
    return values, [int(np.argmin(np.abs(values - a))) for a in angles]


def _search_graph(values):
    # nodes are (grid index, lap); stepping to a seam ray costs one crossing
    n = len(values)
    seam = [_in_seam_units(v) == round(_in_seam_units(v)) for v in values]
    g = nx.DiGraph()
    for lap in range(-MAX_LAPS, MAX_LAPS + 1):
        for i in range(n):
            forward_lap = lap + (1 if i == n - 1 else 0)
            if abs(forward_lap) <= MAX_LAPS:
                g.add_edge((i, lap), ((i + 1) % n, forward_lap), weight=int(seam[(i + 1) % n]))
            backward_lap = lap - (1 if i == 0 else 0)
            if abs(backward_lap) <= MAX_LAPS:
                g.add_edge((i, lap), ((i - 1) % n, backward_lap), weight=int(seam[(i - 1) % n]))
    return g


def _chord_rows(values, path):
    # out from the docking point onto the ring, along it, and back to the next docking point
    rows = [(1.0, values[path[0][0]])] + [(SEARCH_RADIUS, values[i]) for i, _ in path]
    return rows + [(1.0, values[path[-1][0]])]


def _describe(sweeps):
    if all(abs(s) < 1e-12 for s in sweeps):
        return "stays at the docking point"
    back = [str(k) for k, s in enumerate(sweeps) if s < 0]
    return "reversed chords %s" % ", ".join(back) if back else "forward"


def cheapest_cycles(angles, grid=math.pi / 90):
    """
    Shortest paths over a grid of (angle, lap) nodes: for each winding class, the closed polyline through the docking
    points (in order) that crosses the fewest seam rays. Every chord may go either way round, turn back and wind up to
    MAX_LAPS times; the winding number is the total lap count when the curve is back at the first point.

    Returns {winding class: (W_d, description, polyline)}.
    """
    gap_angles(angles)
    values, index = search_grid(angles, grid)
    g = _search_graph(values)
    n = len(index)

    # lap -> (cost, chords so far)
    best = {0: (0, [])}
    for j in range(n):
        source, target = index[j], index[(j + 1) % n]
        costs, paths = nx.single_source_dijkstra(g, (source, 0))
        reached = {}
        for lap, (cost, chords) in best.items():
            for m in range(-MAX_LAPS, MAX_LAPS + 1):
                if (target, m) not in costs or abs(lap + m) > MAX_LAPS:
                    continue
                total = cost + int(costs[(target, m)])
                if lap + m not in reached or total < reached[lap + m][0]:
                    sweep = values[target] - values[source] + 2 * math.pi * m
                    reached[lap + m] = (total, chords + [(sweep, paths[(target, m)])])
        best = reached

    result = {}
    for cls, laps in ((WINDING_ZERO, (0,)), (WINDING_PLUS_MINUS_ONE, (1, -1))):
        found = [best[lap] for lap in laps if lap in best]
        if not found:
            continue
        cost, chords = min(found, key=lambda c: c[0])
        polyline = np.asarray([row for _, path in chords for row in _chord_rows(values, path)])
        result[cls] = (cost, _describe([sweep for sweep, _ in chords]), polyline)
    return result


def winding_class_costs(angles, grid=math.pi / 90):
    """The minimal W_d per winding class found by cheapest_cycles, with a description of the cheapest cycle."""
    return {cls: (cost, description) for cls, (cost, description, _) in cheapest_cycles(angles, grid).items()}


def brute_force_agrees(angles, grid=math.pi / 90):
    """optimal_winding_class names a class that attains the minimal W_d over the grid search."""
    costs = winding_class_costs(angles, grid)
    cls = optimal_winding_class(gap_angles(angles))
    return cls in costs and costs[cls][0] == min(cost for cost, _ in costs.values())
