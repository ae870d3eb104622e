import math
from collections import namedtuple

import numpy as np

from guidepath.exceptions import FieldError

from .profiles import check_profile


# A field on the punctured disc in polar coordinates: r_dot(r, theta) and theta_dot(r, theta).
DiscField = namedtuple("DiscField", ["r_dot", "theta_dot"])


def disc_rates(f, r, theta):
    return f.r_dot(r, theta), f.theta_dot(r, theta)


def tuned_cycle_field(f, omega):
    """
    A field with the attracting invariant cycle r = f(theta), traversed at constant angular speed omega:
    r_dot = r (1 - (r - f'(theta) omega) / f(theta)), theta_dot = omega. On the cycle r_dot = f' omega; off it the
    radial error e = r - f obeys e_dot = -e (r - f' omega) / f. Over a turn it decays at rate 1 on average, but it grows
    where f climbs steeply in the direction of travel.
    """
    if omega == 0:
        raise FieldError("omega must be nonzero")
    check_profile(f)

    def r_dot(r, theta):
        radius = f(theta)
        return r * (1.0 - (r - f.derivative(theta) * omega) / radius)

    def theta_dot(r, theta):
        return omega

    return DiscField(r_dot, theta_dot)


def zero_disc_field():
    return DiscField(lambda r, theta: 0.0, lambda r, theta: 0.0)


def integrate_disc(f, r, theta, t_max, dt):
    """Fixed-step RK4 in polar coordinates; rows of (t, r, theta), theta not wrapped."""
    if dt <= 0:
        raise FieldError("dt must be positive, got %r" % (dt,))

    def rates(state):
        return np.array(disc_rates(f, state[0], state[1]))

    state = np.array([r, theta], dtype=float)
    n = int(round(t_max / dt))
    rows = [(0.0, state[0], state[1])]
    for i in range(1, n + 1):
        k1 = rates(state)
        k2 = rates(state + dt / 2 * k1)
        k3 = rates(state + dt / 2 * k2)
        k4 = rates(state + dt * k3)
        state = state + dt / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        rows.append((i * dt, state[0], state[1]))
    return np.asarray(rows)


def cycle_polyline(f, n=2048, omega=1.0):
    """The closed curve r = f(theta), traversed in the direction of omega; rows of (r, theta)."""
    thetas = np.linspace(0.0, 2 * math.pi, n + 1)
    if omega < 0:
        thetas = thetas[::-1]
    return np.column_stack([f.values(thetas), np.mod(thetas, 2 * math.pi)])
