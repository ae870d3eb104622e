"""
The disc model of D, the part of the configuration space where the AGVs are on different edges: a homeomorphism F from
the punctured unit disc onto D, and its inverse. The six Squares are the wedges [n pi/3, (n+1) pi/3]; the rays
theta = n pi/3 are the seams where one AGV is at the center, and the circle r = 1 is where at least one AGV is docked.
"""
import math
from collections import namedtuple

import numpy as np

from graphs.points import point

from guidepath.exceptions import ConfigError

from .configs import Config, FIN, cell_of, format_config, wrap


DiscPoint = namedtuple("DiscPoint", ["r", "theta"])

# below this, a coordinate that the trigonometry leaves as rounding noise is taken to be 0, i.e. the center
_SNAP = 1e-13


def parity(theta):
    theta = wrap(theta)
    return -1 if (math.floor(3 * theta / math.pi) + math.floor(6 * theta / math.pi)) % 2 else 1


def _station(k):
    k %= 3
    return 3 if k == 0 else k


def to_disc(c):
    if c.x.edge is None and c.y.edge is None:
        raise ConfigError("both AGVs are at the center")
    if cell_of(c).kind == FIN:
        raise ConfigError("%s is on a fin, which has no disc image" % format_config(c))

    nu_x, nu_y = c.x.value, c.y.value
    i_x, i_y = c.x.edge, c.y.edge

    if nu_x == 0 or (nu_y != 0 and i_y == _station(i_x + 1)):
        theta = 2 / 3 * math.atan2(nu_y, nu_x) - 2 * math.pi / 3 * (i_y + 1)
    else:
        theta = -2 / 3 * math.atan2(nu_y, nu_x) - 2 * math.pi / 3 * (i_x - 1)

    return DiscPoint(max(nu_x, nu_y), wrap(theta))


def from_disc(d):
    r, theta = d
    if not 0.0 < r <= 1.0 + 1e-12:
        raise ConfigError("disc radius %r outside (0, 1]" % (r,))
    r = min(r, 1.0)
    theta = wrap(theta)

    half = 1.5 * theta
    if parity(theta) == 1:
        nu_x, nu_y = r, r * abs(math.tan(half))
    else:
        nu_x, nu_y = r * abs(math.cos(half) / math.sin(half)), r

    nu_x = 0.0 if nu_x < _SNAP else min(nu_x, 1.0)
    nu_y = 0.0 if nu_y < _SNAP else min(nu_y, 1.0)

    i_x, i_y = stations(theta)
    return Config(point(i_x, nu_x), point(i_y, nu_y))


def disc_to_xy(d):
    return d.r * math.cos(d.theta), d.r * math.sin(d.theta)


def disc_array(configs):
    """(n, 2) array of (r, theta) for the configurations in D; rows for configurations on fins are NaN."""
    rows = []
    for c in configs:
        if cell_of(c).kind == FIN:
            rows.append((np.nan, np.nan))
        else:
            rows.append(tuple(to_disc(c)))
    return np.asarray(rows, dtype=float).reshape(-1, 2)


def polyline_from_xy(xy):
    """A disc polyline (rows of r, theta) from Cartesian points."""
    xy = np.asarray(xy, dtype=float)
    return np.column_stack([np.hypot(xy[:, 0], xy[:, 1]), np.mod(np.arctan2(xy[:, 1], xy[:, 0]), 2 * math.pi)])


def stations(theta):
    """(i_x, i_y): the stations of x and y for the wedge that theta is in."""
    theta = wrap(theta)
    scale = -3 / (2 * math.pi)
    return _station(math.floor(scale * (theta - math.pi))), _station(math.floor(scale * theta))
