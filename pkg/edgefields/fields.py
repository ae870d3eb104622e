from collections import namedtuple

import numpy as np
from scipy.optimize import bisect

from graphs.graph import CENTER_VERTEX, format_edge_id
from graphs.points import GraphPoint, Velocity
from guidepath.app_settings import get_settings
from guidepath.exceptions import FieldError


# Where a point sits relative to an edge point field: on the goal edge at `value`, or in a collar, `s` away from the
# shared vertex (which is at `vertex_end` of the collar edge and at `goal_end` of the goal edge).
OnGoalEdge = namedtuple("OnGoalEdge", ["value"])
InCollar = namedtuple("InCollar", ["edge", "vertex_end", "goal_end", "s"])


class EdgePointField:
    """
    A locally defined field for a single AGV with a unique attracting goal in the interior of one edge.

    On the goal edge the AGV is pulled toward the goal at rate -k (v - v_goal). On every edge sharing a vertex with the
    goal edge (the collar edges) it drifts toward that shared vertex at the speed the goal-edge field has there, so
    velocities agree at the vertex. The domain is the goal edge plus the half-open collars [0, collar) measured from
    the shared vertices. The Lyapunov function is the scaled local path distance to the goal.
    """

    def __init__(self, graph, goal, alpha, collar, gain, lyapunov_scale):
        self.graph = graph
        self.goal = goal
        self.alpha = alpha
        self.collar = collar
        self.gain = gain
        self.lyapunov_scale = lyapunov_scale

        u, v = graph.endpoints(goal.edge)
        self._goal_ends = {u: 0.0, v: 1.0}

        self._collars = {}
        for vertex, goal_end in self._goal_ends.items():
            for edge in graph.incident_edges(vertex):
                if edge == goal.edge:
                    continue
                a, b = graph.endpoints(edge)
                vertex_end = 0.0 if a == vertex else 1.0
                self._collars.setdefault(edge, []).append((vertex_end, goal_end))

    def __repr__(self):
        return "<EdgePointField goal=(%s, %g)>" % (format_edge_id(self.goal.edge), self.goal.value)

    @property
    def goal_edge(self):
        return self.goal.edge

    @property
    def collar_edges(self):
        return sorted(self._collars)

    def locate(self, p):
        """OnGoalEdge / InCollar, or None when p is outside the domain."""
        if p.edge is None:
            # the canonical center of the Y-graph
            if CENTER_VERTEX in self._goal_ends:
                return OnGoalEdge(self._goal_ends[CENTER_VERTEX])
            return None

        if p.edge == self.goal.edge:
            return OnGoalEdge(p.value)

        if p.edge not in self._collars:
            return None

        best = None
        for vertex_end, goal_end in self._collars[p.edge]:
            s = abs(p.value - vertex_end)
            if best is None or s < best.s:
                best = InCollar(p.edge, vertex_end, goal_end, s)

        if best.s == 0.0:
            return OnGoalEdge(best.goal_end)
        if best.s < self.collar:
            return best
        return None

    def contains(self, p):
        return self.locate(p) is not None

    def _locate_or_raise(self, p):
        where = self.locate(p)
        if where is None:
            raise FieldError("%r is outside the domain of %r" % (p, self))
        return where

    def velocity(self, p):
        where = self._locate_or_raise(p)
        if isinstance(where, OnGoalEdge):
            return Velocity(self.goal.edge, -self.gain * (where.value - self.goal.value))

        speed = self.gain * abs(where.goal_end - self.goal.value)
        return Velocity(where.edge, -speed if where.vertex_end == 0.0 else speed)

    def lyapunov(self, p):
        where = self._locate_or_raise(p)
        if isinstance(where, OnGoalEdge):
            return self.lyapunov_scale * abs(where.value - self.goal.value)
        return self.lyapunov_scale * (where.s + abs(where.goal_end - self.goal.value))

    def sublevel_points(self, level, resolution=1e-3):
        """Samples of the set where the Lyapunov function is at most `level`."""
        result = []
        for value in np.arange(0.0, 1.0 + resolution / 2, resolution):
            p = GraphPoint(self.goal.edge, float(value))
            if self.lyapunov(p) <= level:
                result.append(p)

        for edge, ends in self._collars.items():
            for vertex_end, goal_end in ends:
                for s in np.arange(resolution, self.collar, resolution):
                    if self.lyapunov_scale * (s + abs(goal_end - self.goal.value)) > level:
                        break
                    result.append(GraphPoint(edge, abs(vertex_end - float(s))))
        return result


def make_edge_point_field(g, goal, alpha=None, collar=None, gain=None, lyapunov_scale=None):
    app_settings = get_settings()
    alpha = app_settings.ALPHA if alpha is None else alpha
    collar = app_settings.COLLAR if collar is None else collar
    gain = app_settings.EDGE_GAIN if gain is None else gain

    if goal.edge is None:
        raise FieldError("the goal of an edge point field must be on an edge, not at a vertex")
    g.check_edge(goal.edge)
    if not 0.0 < goal.value < 1.0:
        raise FieldError("the goal must be interior to its edge, got value %r" % (goal.value,))
    if not 0.0 < alpha < 1.0:
        raise FieldError("alpha must be in (0, 1), got %r" % (alpha,))
    if not 0.0 < collar <= 1.0:
        raise FieldError("collar must be in (0, 1], got %r" % (collar,))
    if gain <= 0:
        raise FieldError("gain must be positive, got %r" % (gain,))

    if lyapunov_scale is None:
        # the alpha-sublevel set is then the middle half of the goal edge's stretch on the goal's short side
        lyapunov_scale = 2 * alpha / min(goal.value, 1.0 - goal.value)

    return EdgePointField(g, goal, alpha, collar, gain, lyapunov_scale)


def lyapunov(f, p):
    return f.lyapunov(p)


def prepares(f1, f2, resolution=1e-3):
    """f1 prepares f2: f1's goal lies in f2's domain, and so does the whole set where f1 signals arrival."""
    if not f2.contains(f1.goal):
        return False
    return all(f2.contains(p) for p in f1.sublevel_points(f1.alpha, resolution))


def _rk4(rate, value, h):
    k1 = rate(value)
    k2 = rate(value + h / 2 * k1)
    k3 = rate(value + h / 2 * k2)
    k4 = rate(value + h * k3)
    return value + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)


def _chart_rate(field, edge):
    def rate(value):
        return field.velocity(GraphPoint(edge, min(max(value, 0.0), 1.0))).rate
    return rate


def _on_edge(field, p):
    """p with an explicit edge (the center of the Y-graph is put on the goal edge)."""
    if p.edge is None:
        return GraphPoint(field.goal.edge, field.locate(p).value)
    return p


def flow_for(field, p, h, event_tol=None):
    """
    Flow p along `field` for time h. Returns the end point and the list of (tau, entered_edge) vertex events, where an
    AGV drifting through a collar reaches the shared vertex and continues on the goal edge.
    """
    event_tol = get_settings().EVENT_TOL if event_tol is None else event_tol
    p = _on_edge(field, p)
    events = []
    elapsed = 0.0

    while True:
        remaining = h - elapsed
        where = field.locate(p)
        if where is None:
            raise FieldError("%r is outside the domain of %r" % (p, field))

        if isinstance(where, OnGoalEdge) or remaining <= 0:
            return GraphPoint(p.edge, _rk4(_chart_rate(field, p.edge), p.value, remaining)), events

        # in a collar the drift is constant, so the chart is frozen at the rate we have now
        collar_rate = field.velocity(p).rate
        rate = lambda value: collar_rate  # noqa
        moving_in = np.sign(where.vertex_end - p.value)

        def ahead_of_vertex(tau):
            return (where.vertex_end - _rk4(rate, p.value, tau)) * moving_in

        if ahead_of_vertex(remaining) > 0:
            return GraphPoint(p.edge, _rk4(rate, p.value, remaining)), events

        # the AGV reaches the vertex within this step
        tau = bisect(ahead_of_vertex, 0.0, remaining, xtol=event_tol)
        elapsed += tau
        p = GraphPoint(field.goal.edge, where.goal_end)
        events.append((elapsed, field.goal.edge))


def flow_edge_field(field, start, t_max, dt):
    """Samples (t, point) of the forward orbit of a single edge point field."""
    if dt <= 0:
        raise FieldError("dt must be positive, got %r" % (dt,))
    p = _on_edge(field, start)
    t = 0.0
    samples = [(t, p)]
    for i in range(1, int(round(t_max / dt)) + 1):
        p, _ = flow_for(field, p, dt)
        t = i * dt
        samples.append((t, p))
    return samples
