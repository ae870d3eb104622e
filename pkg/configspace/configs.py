import math
from collections import namedtuple

import numpy as np

from graphs.points import CENTER, canonicalize, format_point, graph_distance
from guidepath.app_settings import get_settings
from guidepath.exceptions import ConfigError


Config = namedtuple("Config", ["x", "y"])

# kind is SQUARE or FIN. For a Square, (i, j) are the station indices of x and y; for a Fin, i is the shared edge and
# j says which AGV is nearer the center.
CellId = namedtuple("CellId", ["kind", "i", "j"])

SQUARE = "Square"
FIN = "Fin"

X_BELOW = "x<y"
Y_BELOW = "y<x"

# the Square whose half-open wedge [n pi/3, (n+1) pi/3) of the disc model is wedge n
WEDGE_SQUARES = [(1, 2), (3, 2), (3, 1), (2, 1), (2, 3), (1, 3)]

TWO_PI = 2 * math.pi


def square(i, j):
    return CellId(SQUARE, i, j)


def fin(i, below):
    return CellId(FIN, i, below)


def format_cell(cell):
    return "%s(%s,%s)" % cell


def format_config(c):
    return "x=%s y=%s" % (format_point(c.x), format_point(c.y))


def wrap(theta):
    """theta reduced to [0, 2 pi)."""
    theta = math.fmod(theta, TWO_PI)
    if theta < 0:
        theta += TWO_PI
    if theta >= TWO_PI - 1e-15:
        theta = 0.0
    return theta


def wedge_of(theta):
    return int(math.floor(3 * wrap(theta) / math.pi + 1e-12)) % 6


def separation(c):
    return graph_distance(c.x, c.y)


def make_config(x, y, delta=None):
    """A canonical Config; raises ConfigError when the AGVs are within `delta` of each other."""
    delta = get_settings().DELTA if delta is None else delta
    c = Config(canonicalize(x), canonicalize(y))
    if separation(c) < delta:
        raise ConfigError("%s is within the diagonal guard (separation %.6g < %g)" % (
            format_config(c), separation(c), delta))
    return c


def check_config(c, delta=None):
    return make_config(c.x, c.y, delta)


def cell_of(c):
    x, y = c.x, c.y
    if x.edge is not None and x.edge == y.edge:
        return fin(x.edge, X_BELOW if x.value < y.value else Y_BELOW)

    if x.edge is not None and y.edge is not None:
        return square(x.edge, y.edge)

    if x.edge is None and y.edge is None:
        raise ConfigError("both AGVs are at the center")

    # on a seam ray; the half-open wedge starting at that ray decides
    if x.edge is None:
        return square(_next_station(y.edge), y.edge)
    return square(x.edge, _next_station(x.edge))


def _next_station(i):
    return i % 3 + 1


def product_distance(a, b):
    return math.hypot(graph_distance(a.x, b.x), graph_distance(a.y, b.y))


def config_array(configs):
    """(n, 4) array of [edge_x, nu_x, edge_y, nu_y], the center being edge 0 at 0."""
    rows = [(c.x.edge or 0, c.x.value, c.y.edge or 0, c.y.value) for c in configs]
    return np.asarray(rows, dtype=float).reshape(-1, 4)


def _factor_distances(edges_a, values_a, edges_b, values_b):
    same = edges_a[:, None] == edges_b[None, :]
    return np.where(same, np.abs(values_a[:, None] - values_b[None, :]), values_a[:, None] + values_b[None, :])


def product_distances(a, b):
    """Pairwise product-metric distances between the rows of two config arrays (Y-graph only)."""
    dx = _factor_distances(a[:, 0], a[:, 1], b[:, 0], b[:, 1])
    dy = _factor_distances(a[:, 2], a[:, 3], b[:, 2], b[:, 3])
    return np.hypot(dx, dy)


def distance_to_polyline(c, polyline):
    """
    Product-metric distance from c to a polyline given as a config array. Segments whose two ends are in c's chart (the
    same edges) are straight there, and the distance to them is the projection distance; other segments count through
    their end points only.
    """
    return _row_distance_to_polyline(config_array([c])[0], polyline)


def _row_distance_to_polyline(row, polyline):
    best = float(product_distances(row[None, :], polyline).min())

    a, b = polyline[:-1], polyline[1:]
    in_chart = (
        (a[:, 0] == row[0]) & (b[:, 0] == row[0]) & (a[:, 2] == row[2]) & (b[:, 2] == row[2]))
    if not in_chart.any():
        return best

    p = row[[1, 3]]
    pa = a[in_chart][:, [1, 3]]
    pb = b[in_chart][:, [1, 3]]
    d = pb - pa
    length2 = np.einsum("ij,ij->i", d, d)
    s = np.divide(np.einsum("ij,ij->i", p - pa, d), length2, out=np.zeros_like(length2), where=length2 > 0)
    s = np.clip(s, 0.0, 1.0)
    nearest = pa + s[:, None] * d
    return min(best, float(np.hypot(*(nearest - p).T).min()))


def polyline_hausdorff(a, b):
    """
    Hausdorff distance between two polylines given as config arrays, from the vertices of each to the segments of the
    other. Sparse vertices along a curve do not count against it, as they would between point sets.
    """
    return max(
        max(_row_distance_to_polyline(row, b) for row in a),
        max(_row_distance_to_polyline(row, a) for row in b))


def agv_at_center(c):
    """The AGV at the center, 'x' or 'y', or None."""
    if c.x == CENTER:
        return "x"
    if c.y == CENTER:
        return "y"
    return None
