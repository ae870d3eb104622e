"""Periodic radius profiles r = f(theta) for the tuned limit-cycle fields."""
import math

import numpy as np
from scipy.interpolate import PchipInterpolator

from guidepath.exceptions import FieldError


TWO_PI = 2 * math.pi


class HarmonicProfile:
    """f(theta) = a0 + sum_k (cos_k cos(k theta) + sin_k sin(k theta)), k = 1, 2, ..."""

    def __init__(self, a0, cos=(), sin=()):
        self.a0 = float(a0)
        n = max(len(cos), len(sin))
        self.cos = np.zeros(n)
        self.sin = np.zeros(n)
        self.cos[:len(cos)] = cos
        self.sin[:len(sin)] = sin
        self._k = np.arange(1, n + 1)

    def __repr__(self):
        return "<HarmonicProfile a0=%g cos=%s sin=%s>" % (self.a0, list(self.cos), list(self.sin))

    def __call__(self, theta):
        return float(self.a0 + np.dot(self.cos, np.cos(self._k * theta)) + np.dot(self.sin, np.sin(self._k * theta)))

    def derivative(self, theta):
        k = self._k
        return float(np.dot(-k * self.cos, np.sin(k * theta)) + np.dot(k * self.sin, np.cos(k * theta)))

    def values(self, thetas):
        thetas = np.asarray(thetas, dtype=float)
        return self.a0 + np.cos(np.outer(thetas, self._k)) @ self.cos + np.sin(np.outer(thetas, self._k)) @ self.sin


class KnotProfile:
    """
    The periodic monotone cubic (pchip) through the knots (angles[i], radii[i]), angles strictly increasing within one
    period. Equal neighbouring radii give a flat stretch; every knot that is a local extremum has zero slope.
    """

    def __init__(self, angles, radii):
        angles = np.asarray(angles, dtype=float)
        radii = np.asarray(radii, dtype=float)
        if len(angles) != len(radii) or len(angles) < 2:
            raise FieldError("a knot profile needs at least two (angle, radius) knots")
        if np.any(np.diff(angles) <= 0) or angles[-1] - angles[0] >= TWO_PI:
            raise FieldError("knot angles must increase strictly within one period")

        self.angles = angles
        self.radii = radii
        self.start = float(angles[0])

        # three periods, such that the slopes at the knots of the middle one see their periodic neighbours
        extended = np.concatenate([angles - TWO_PI, angles, angles + TWO_PI])
        self._pchip = PchipInterpolator(extended, np.tile(radii, 3))
        self._slope = self._pchip.derivative()

    def __repr__(self):
        return "<KnotProfile %d knots from %g>" % (len(self.angles), self.start)

    def _reduce(self, theta):
        return self.start + np.mod(np.asarray(theta, dtype=float) - self.start, TWO_PI)

    def __call__(self, theta):
        return float(self._pchip(self._reduce(theta)))

    def derivative(self, theta):
        return float(self._slope(self._reduce(theta)))

    def values(self, thetas):
        return self._pchip(self._reduce(thetas))


def check_profile(f, n=4096):
    """Raises FieldError unless 0 < f <= 1 all around (sampled on n angles)."""
    radii = f.values(np.linspace(0.0, TWO_PI, n, endpoint=False))
    if np.min(radii) <= 0:
        raise FieldError("the profile is not positive (min %.6g)" % np.min(radii))
    if np.max(radii) > 1.0 + 1e-12:
        raise FieldError("the profile exceeds the unit circle (max %.6g)" % np.max(radii))
    return f
