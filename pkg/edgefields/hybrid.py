import logging
from collections import namedtuple

from scipy.optimize import bisect

from graphs.graph import format_edge_id
from graphs.points import GraphPoint
from guidepath.app_settings import get_settings
from guidepath.exceptions import FieldError, ViolatedExpectation
from patterns.levels import graph_controller

from .fields import flow_for, make_edge_point_field, prepares


logger = logging.getLogger("guidepath.edgefields")


HybridEvent = namedtuple("HybridEvent", ["t", "kind", "edge", "field"])

HybridRun = namedtuple("HybridRun", ["samples", "events"])


class HybridController:
    """
    The single-AGV hybrid controller: while the active field is X_e, the AGV follows X_e; when X_e's Lyapunov function
    drops to alpha (the AGV has 'arrived' near X_e's goal), or the AGV enters edge G(e) first, the field of G(e) takes
    over. Because X_e prepares X_G(e), the AGV then drifts onto edge G(e), and so the edges visited replay the
    iterates of the graph controller.

    Carries mutable mode state; use one instance per run.
    """

    def __init__(self, levels, fields, alpha):
        self.levels = levels
        self.fields = fields
        self.alpha = alpha
        self.reset()

    def reset(self):
        self.t = 0.0
        self.active = None
        self.latched = False

    @property
    def field(self):
        return self.fields[self.active]

    def _record(self, events, kind, edge, t=None):
        events.append(HybridEvent(self.t if t is None else t, kind, edge, self.active))

    def start(self, p):
        """Activates the field for the start edge; returns the t=0 events (which may already include a switch)."""
        self.reset()
        edge = self.levels.block[0] if p.edge is None else p.edge
        self.levels.check_reachable(edge)

        self.active = edge
        events = []
        self._record(events, "field-activated", edge)
        self._record(events, "edge-entered", edge)
        self._maybe_switch(p, events)
        return events

    def _phi(self, p):
        try:
            return self.field.lyapunov(p)
        except FieldError as e:
            raise ViolatedExpectation("state %r left the domain of the active field: %s" % (p, e)) from e

    def _maybe_switch(self, p, events):
        for _ in range(len(self.fields) + 1):
            if self.latched or self._phi(p) > self.alpha:
                return

            self._record(events, "threshold-crossed", p.edge)
            nxt = graph_controller(self.levels, self.active)
            if nxt == self.active:
                # a single-edge block: the goal is where we stay
                self.latched = True
                return

            logger.debug("t=%.6f switching from field %s to field %s", self.t, format_edge_id(self.active),
                         format_edge_id(nxt))
            self.active = nxt
            self._record(events, "field-activated", nxt)

        raise ViolatedExpectation("switching does not settle at %r" % (p,))

    def _successor_entry(self, vertex_events):
        """The first vertex event onto G(active), or None."""
        if self.latched:
            return None
        nxt = graph_controller(self.levels, self.active)
        if nxt == self.active:
            return None
        return next(((t_vertex, edge) for t_vertex, edge in vertex_events if edge == nxt), None)

    def step(self, p, dt):
        if dt <= 0:
            raise FieldError("dt must be positive, got %r" % (dt,))

        event_tol = get_settings().EVENT_TOL
        events = []
        elapsed = 0.0

        while dt - elapsed > 0:
            remaining = dt - elapsed
            field = self.field

            def flow(tau):
                try:
                    return flow_for(field, p, tau, event_tol)
                except FieldError as e:
                    raise ViolatedExpectation("state left all field domains: %s" % e) from e

            end, vertex_events = flow(remaining)
            tau = remaining
            crossing = not self.latched and field.lyapunov(end) <= self.alpha

            if crossing:
                tau = bisect(lambda s: field.lyapunov(flow(s)[0]) - self.alpha, 0.0, remaining, xtol=event_tol)
                # land just past the threshold, such that the switch below sees Phi <= alpha
                tau = min(tau + event_tol, remaining)
                end, vertex_events = flow(tau)

            entry = self._successor_entry(vertex_events)
            if entry is not None:
                # the AGV is on G(e) before Phi reaches alpha: switch there
                crossing = False
                tau = min(entry[0] + event_tol, tau)
                end, vertex_events = flow(tau)

            for t_vertex, edge in vertex_events:
                self._record(events, "edge-entered", edge, t=self.t + t_vertex)

            self.t += tau
            elapsed += tau
            p = end

            if entry is not None:
                self._record(events, "successor-entered", p.edge)
                logger.debug("t=%.6f entered edge %s ahead of the threshold", self.t, format_edge_id(p.edge))
                self.active = p.edge
                self._record(events, "field-activated", p.edge)

            if crossing or entry is not None:
                self._maybe_switch(p, events)

        return p, events


def make_single_agv_hybrid(levels, fields, alpha=None):
    alpha = get_settings().ALPHA if alpha is None else alpha

    for edge in levels.graph.edges:
        if edge in levels.leftover:
            continue
        nxt = graph_controller(levels, edge)
        for e in (edge, nxt):
            if e not in fields:
                raise FieldError("no field assigned to edge %s" % format_edge_id(e))
            if fields[e].goal_edge != e:
                raise FieldError("the field assigned to edge %s has its goal on %s" % (
                    format_edge_id(e), format_edge_id(fields[e].goal_edge)))

        if not prepares(fields[edge], fields[nxt]):
            raise FieldError("field %s does not prepare field %s" % (format_edge_id(edge), format_edge_id(nxt)))

    return HybridController(levels, fields, alpha)


def fields_for_pattern(levels, goal_value=0.5, alpha=None, collar=None, gain=None):
    """One edge point field per reachable edge, each with its goal at `goal_value` along that edge."""
    return {
        edge: make_edge_point_field(levels.graph, GraphPoint(edge, goal_value), alpha=alpha, collar=collar, gain=gain)
        for edge in levels.graph.edges if edge not in levels.leftover
    }


def step_hybrid(c, p, dt):
    return c.step(p, dt)


def run_hybrid(c, start, t_max, dt, until_transitions=None):
    """Runs the controller from `start`; stops at t_max or once `until_transitions` edges have been entered."""
    events = c.start(start)
    p = start if start.edge is not None else GraphPoint(c.active, c.field.locate(start).value)
    samples = [(c.t, p)]

    n_steps = int(round(t_max / dt))
    for _ in range(n_steps):
        p, step_events = c.step(p, dt)
        events.extend(step_events)
        samples.append((c.t, p))
        if until_transitions is not None and len(edge_transitions(events)) >= until_transitions:
            break

    return HybridRun(samples, events)


def edge_transitions(events):
    """The sequence of edges the AGV was on, starting with the start edge."""
    if isinstance(events, HybridRun):
        events = events.events
    return [e.edge for e in events if e.kind == "edge-entered"]
