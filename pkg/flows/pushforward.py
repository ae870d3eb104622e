"""
Fields on D obtained by pushing a disc field forward through the disc model, and the fin companion that extends such a
field (which is undefined on the fins) to all of the configuration space.
"""
import math

from configspace.configs import FIN, X_BELOW, Config, cell_of, format_config, wrap
from configspace.disc import parity, stations, to_disc
from graphs.points import CENTER, Velocity
from guidepath.exceptions import FieldError

from .base import PiecewiseField
from .disc_fields import disc_rates


# on a seam the wedge that the orbit moves into decides parity and sign; this is how far into it we look
_SEAM_NUDGE = 1e-12


def _sign(value):
    if value == 0:
        return 0.0
    return math.copysign(1.0, value)


def pushforward_velocities(c, d, r_dot, theta_dot):
    """
    The exact differential of the disc model at c = F(d), applied to (r_dot, theta_dot). Where parity is +1, nu_x = r
    and nu_y = r |tan(3 theta / 2)|; where it is -1 the roles swap and tan becomes cot.
    """
    theta = d.theta
    at_center = c.x.edge is None or c.y.edge is None
    if at_center and theta_dot != 0:
        theta = wrap(theta + math.copysign(_SEAM_NUDGE, theta_dot))

    half = 1.5 * theta
    sigma = _sign(math.sin(half) * math.cos(half))
    nu_x, nu_y = c.x.value, c.y.value

    if parity(theta) == 1:
        ratio = nu_y / nu_x
        rate_x = r_dot
        rate_y = r_dot * ratio + sigma * 1.5 * theta_dot * nu_x * (1 + ratio ** 2)
    else:
        ratio = nu_x / nu_y
        rate_x = r_dot * ratio - sigma * 1.5 * theta_dot * nu_y * (1 + ratio ** 2)
        rate_y = r_dot

    i_x, i_y = stations(theta)
    return Velocity(c.x.edge or i_x, rate_x), Velocity(c.y.edge or i_y, rate_y)


class PushforwardField(PiecewiseField):
    """A disc field carried over to D; undefined on the fins."""

    def __init__(self, disc_field, name="pushforward"):
        self.disc_field = disc_field
        self.name = name

    def velocities(self, c):
        if cell_of(c).kind == FIN:
            raise FieldError("%s is on a fin, where a push-forward field is undefined" % format_config(c))

        d = to_disc(c)
        r_dot, theta_dot = disc_rates(self.disc_field, d.r, d.theta)
        return pushforward_velocities(c, d, r_dot, theta_dot)

    def branch(self, c):
        cell = cell_of(c)
        if cell.kind == FIN:
            return cell
        return cell, parity(to_disc(c).theta)


def pushforward_disc_field(f, name="pushforward"):
    return PushforwardField(f, name=name)


class FinCompanionField(PiecewiseField):
    """
    Extends a field on D to the fins. On a fin the lower AGV descends to the center at the speed with which the wrapped
    field moves it off the center at the adjoining seam, and the upper AGV moves as it does there, damped to a stop
    towards the diagonal. With `barrier`, the descent speeds up as the lower AGV gets further from the center, which is
    the flow of the potential that grows without bound up the fin.
    """

    def __init__(self, field, barrier=False, name=None):
        self.field = field
        self.barrier = barrier
        self.name = name or field.name
        self.goal = field.goal

    def _seam_velocities(self, c, x_below):
        if x_below:
            return self.field.velocities(Config(CENTER, c.y))
        return self.field.velocities(Config(c.x, CENTER))

    def velocities(self, c):
        cell = cell_of(c)
        if cell.kind != FIN:
            return self.field.velocities(c)

        i = cell.i
        x_below = cell.j == X_BELOW
        lower, upper = (c.x.value, c.y.value) if x_below else (c.y.value, c.x.value)

        vx_seam, vy_seam = self._seam_velocities(c, x_below)
        seam_lower, seam_upper = (vx_seam, vy_seam) if x_below else (vy_seam, vx_seam)

        descent = abs(seam_lower.rate)
        carried = (1.0 - lower / upper) * seam_upper.rate
        if self.barrier:
            descent /= (1.0 - lower) ** 2
            carried /= 1.0 - lower

        if x_below:
            return Velocity(i, -descent), Velocity(i, carried)
        return Velocity(i, carried), Velocity(i, -descent)

    def branch(self, c):
        return self.field.branch(c)

    def lyapunov(self, c):
        return self.field.lyapunov(c)

    def start(self, t, c):
        self.field.start(t, c)

    def mode_guard(self, c):
        return self.field.mode_guard(c)

    def switch(self, t, c):
        return self.field.switch(t, c)

    def observe(self, t, c):
        self.field.observe(t, c)
