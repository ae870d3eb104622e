from configspace.configs import cell_of
from graphs.points import Velocity


class PiecewiseField:
    """
    A vector field on the two-AGV configuration space, smooth on each of a finite set of pieces. `velocities` returns a
    (Velocity, Velocity) pair for x and y; at the center a Velocity names the edge moved onto.

    `branch` labels the smooth piece a configuration is in; the integrator restarts its steps where the label changes.
    Fields with a discrete mode (the chord controller) also implement `mode_guard` and `switch`.
    """

    name = "field"
    goal = None
    # levels of the Lyapunov function whose crossings the integrator records as threshold events
    lyapunov_levels = ()

    def velocities(self, c):
        raise NotImplementedError()

    def branch(self, c):
        return cell_of(c)

    def lyapunov(self, c):
        return None

    def start(self, t, c):
        """Called once before integration; may pick a mode."""

    def mode_guard(self, c):
        """None, or a value that crosses to <= 0 when the mode must change."""
        return None

    def switch(self, t, c):
        """Changes the mode; returns the switch event's payload, or None for a switch that should not be logged."""
        raise NotImplementedError()

    def observe(self, t, c):
        """Called after every accepted step."""


class ReversedField(PiecewiseField):
    """The time-reversal of a field: every velocity negated. The repelling diagonal becomes attracting."""

    def __init__(self, field):
        self.field = field
        self.name = "reversed " + field.name

    def velocities(self, c):
        vx, vy = self.field.velocities(c)
        return vx._replace(rate=-vx.rate), vy._replace(rate=-vy.rate)

    def branch(self, c):
        return self.field.branch(c)

    def lyapunov(self, c):
        return self.field.lyapunov(c)


class ZeroField(PiecewiseField):
    name = "zero"

    def velocities(self, c):
        return Velocity(c.x.edge or 1, 0.0), Velocity(c.y.edge or 1, 0.0)
