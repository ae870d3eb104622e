from configspace.configs import FIN, X_BELOW, Y_BELOW, cell_of
from graphs.points import Velocity

from .base import PiecewiseField


def _next_station(i):
    return i % 3 + 1


class CirculatingField(PiecewiseField):
    """
    The dance: a nonsingular field whose only attractor is the boundary of D, around which both AGVs take turns docking
    at every station. Three cases, tried in this order:

      same edge (a fin): the lower AGV moves to the center at the upper one's speed; the upper one docks.
      x one station past y, or x at the center: while x is below y, x moves out onto the edge after y's and y
        docks; otherwise x docks and y retreats.
      y one station past x, or y at the center: while x is not above y, x retreats and y docks; otherwise x docks
        and y moves out onto the edge after x's.
    """

    name = "circulating"

    def _case(self, c):
        x, y = c.x, c.y
        nu_x, nu_y = x.value, y.value

        if x.edge is not None and x.edge == y.edge:
            if nu_x < nu_y:
                return (FIN, X_BELOW), Velocity(x.edge, -nu_y), Velocity(y.edge, nu_y * (1 - nu_y))
            return (FIN, Y_BELOW), Velocity(x.edge, nu_x * (1 - nu_x)), Velocity(y.edge, -nu_x)

        if nu_x == 0 or (nu_y != 0 and x.edge == _next_station(y.edge)):
            if nu_x < nu_y:
                vx = Velocity(_next_station(y.edge), nu_y)
                return ("x-past-y", X_BELOW), vx, Velocity(y.edge, nu_y * (1 - nu_y))
            return ("x-past-y", Y_BELOW), Velocity(x.edge, nu_x * (1 - nu_x)), Velocity(y.edge, -nu_x)

        if 0 < nu_x <= nu_y:
            return ("y-past-x", X_BELOW), Velocity(x.edge, -nu_y), Velocity(y.edge, nu_y * (1 - nu_y))
        return ("y-past-x", Y_BELOW), Velocity(x.edge, nu_x * (1 - nu_x)), Velocity(_next_station(x.edge), nu_x)

    def velocities(self, c):
        _, vx, vy = self._case(c)
        return vx, vy

    def branch(self, c):
        return cell_of(c), self._case(c)[0]

    def lyapunov(self, c):
        return circulating_lyapunov(c)


def circulating_field():
    return CirculatingField()


def circulating_lyapunov(c):
    if cell_of(c).kind == FIN:
        return 1.0 - abs(c.x.value - c.y.value)
    return 1.0 - max(c.x.value, c.y.value)
