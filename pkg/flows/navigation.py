import math

from configspace.configs import FIN, X_BELOW, Config, cell_of
from configspace.disc import to_disc
from graphs.points import CENTER, format_point
from guidepath.app_settings import get_settings
from guidepath.exceptions import FieldError

from .disc_fields import DiscField
from .pushforward import FinCompanionField, PushforwardField


def _check_goal(p):
    if p.edge is None or not 0.0 < p.value < 1.0:
        raise FieldError("navigation goals must be in the interior of an edge, got %s" % format_point(p))


class NavigationField(FinCompanionField):
    """
    Gradient descent of a potential with a single minimum at the goal. In the disc model the potential is
    V = ln(r / r_g)^2 + kappa (1 - cos(theta - theta_g)), which blows up at the puncture (the diagonal); on a fin it is
    the potential at the adjoining seam divided by the lower AGV's distance to the top of the fin, so that orbits leave
    the fins. The only orbits that miss the goal are the ones on the ray opposite to it.
    """

    def __init__(self, goal_x, goal_y, kappa=None):
        _check_goal(goal_x)
        _check_goal(goal_y)
        if goal_x.edge == goal_y.edge:
            raise FieldError("navigation goals must be on different edges, got both on e%d" % goal_x.edge)

        self.kappa = get_settings().NAVIGATION_KAPPA if kappa is None else kappa
        self.goal_disc = to_disc(Config(goal_x, goal_y))
        r_g, theta_g = self.goal_disc
        kappa = self.kappa

        disc_field = DiscField(
            lambda r, theta: -2 * math.log(r / r_g) / r,
            lambda r, theta: -kappa * math.sin(theta - theta_g),
        )
        super().__init__(PushforwardField(disc_field, name="navigation"), barrier=True, name="navigation")
        self.goal = Config(goal_x, goal_y)

    def _disc_potential(self, c):
        r, theta = to_disc(c)
        r_g, theta_g = self.goal_disc
        return math.log(r / r_g) ** 2 + self.kappa * (1 - math.cos(theta - theta_g))

    def lyapunov(self, c):
        cell = cell_of(c)
        if cell.kind != FIN:
            return self._disc_potential(c)
        if cell.j == X_BELOW:
            return self._disc_potential(Config(CENTER, c.y)) / (1.0 - c.x.value)
        return self._disc_potential(Config(c.x, CENTER)) / (1.0 - c.y.value)


def navigation_field(goal_x, goal_y, kappa=None):
    return NavigationField(goal_x, goal_y, kappa=kappa)
