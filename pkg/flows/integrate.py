"""
Fixed-step fourth-order integration of piecewise fields on the configuration space, with events located by bisection.

Within a step the AGVs' edges are frozen (the 'chart'), and the state is the pair (nu_x, nu_y). An AGV at the center
that the field moves out takes the edge it is moved onto as its chart edge; one that the field leaves in place stays at
the center. Whenever something discrete changes within a step (a cell, a smooth piece of the field, a docking symbol,
an AGV reaching the center or a station, a mode guard, a Lyapunov level) the step is cut short just past that moment,
the event is recorded, and the rest of the step is integrated in the new chart.
"""
import logging
from collections import namedtuple

import numpy as np
from scipy.optimize import bisect

from configspace.configs import (
    Config, cell_of, check_config, format_cell, format_config, product_distance, separation)
from configspace.grammar import format_symbol, visit_symbol
from graphs.points import CENTER, point
from guidepath.app_settings import get_settings
from guidepath.exceptions import CaptureFailure, ConfigError, FieldError, SafetyViolation, ViolatedExpectation

from .trajectory import Trajectory


logger = logging.getLogger("guidepath.flows")

# more than this many events within a single step means the field chatters
MAX_EVENTS_PER_STEP = 256

MAX_SWITCHES_PER_EVENT = 32

# the diagonal guard is checked at this many points within a step near the guard, not only at its end
GUARD_SAMPLES = 8

Label = namedtuple("Label", ["cell", "branch", "symbol", "docked"])


def _chart_edge(p, v):
    if p.edge is not None:
        return p.edge
    return v.edge if v.rate > 0 else None


def _chart_rate(p, v, edge):
    if edge is None:
        return 0.0

    if p.edge is None:
        if v.edge == edge:
            return v.rate
        # moving on past the center, onto another edge: in this chart that is nu going negative
        return -v.rate if v.rate > 0 else 0.0

    if v.edge != edge:
        raise ViolatedExpectation("velocity along e%s for an AGV on e%d" % (v.edge, edge))
    if p.value >= 1.0 and v.rate > 0:
        return 0.0
    return v.rate


def _chart_point(edge, nu):
    if edge is None or nu <= 0:
        return CENTER
    return point(edge, min(nu, 1.0))


class Integrator:

    def __init__(self, field, dt=None, delta=None, tol=None, event_tol=None, convergence_tol=None):
        settings = get_settings()
        self.field = field
        self.dt = settings.DT if dt is None else dt
        self.delta = settings.DELTA if delta is None else delta
        self.tol = settings.DOCK_TOL if tol is None else tol
        self.event_tol = settings.EVENT_TOL if event_tol is None else event_tol
        self.convergence_tol = settings.CONVERGENCE_TOL if convergence_tol is None else convergence_tol

        if self.dt <= 0:
            raise FieldError("dt must be positive, got %r" % (self.dt,))

        self.t = 0.0
        self.c = None

    def _config(self, chart, nu):
        return Config(_chart_point(chart[0], nu[0]), _chart_point(chart[1], nu[1]))

    def _rates(self, chart, nu):
        c = self._config(chart, nu)
        try:
            vx, vy = self.field.velocities(c)
        except ConfigError as e:
            # both AGVs at the center: only reachable by running through the guard
            raise SafetyViolation(self.t, format_config(c)) from e

        rates = np.array([_chart_rate(c.x, vx, chart[0]), _chart_rate(c.y, vy, chart[1])])
        if not np.all(np.isfinite(rates)):
            raise ViolatedExpectation("non-finite velocity at %s" % format_config(c))
        return rates

    def _chart(self, c):
        vx, vy = self.field.velocities(c)
        return _chart_edge(c.x, vx), _chart_edge(c.y, vy)

    def _flow(self, chart, nu0, k1, s):
        k2 = self._rates(chart, nu0 + s / 2 * k1)
        k3 = self._rates(chart, nu0 + s / 2 * k2)
        k4 = self._rates(chart, nu0 + s * k3)
        return nu0 + s / 6 * (k1 + 2 * k2 + 2 * k3 + k4)

    def _label(self, c):
        return Label(cell_of(c), self.field.branch(c), visit_symbol(c, self.tol), (c.x.value >= 1.0, c.y.value >= 1.0))

    def _crossing(self, g, h):
        return bisect(g, 0.0, h, xtol=self.event_tol)

    def _first_breach(self, config_at, h, c0, c_end, k1):
        """The earliest of the sampled times in (0, h] at which the AGVs are within delta, or None."""
        reach = 2 * h * np.abs(k1).sum()
        if min(separation(c0), separation(c_end)) >= self.delta + reach:
            return None
        for s in h * np.arange(1, GUARD_SAMPLES + 1) / GUARD_SAMPLES:
            if separation(config_at(s)) < self.delta:
                return s
        return None

    def _earliest_event(self, chart, nu0, k1, h, label0, guard0, c_end, nu_end):
        """(tau, is_breach) for the earliest event in (0, h], or None."""
        def config_at(s):
            return self._config(chart, self._flow(chart, nu0, k1, s))

        c0 = self._config(chart, nu0)
        candidates = []

        breach = self._first_breach(config_at, h, c0, c_end, k1)
        if breach is not None:
            tau = self._crossing(lambda s: separation(config_at(s)) - self.delta, breach)
            candidates.append((tau, True))

        for i in range(2):
            if chart[i] is not None and nu0[i] > 0 and nu_end[i] <= 0:
                candidates.append((self._crossing(lambda s: self._flow(chart, nu0, k1, s)[i], h), False))

        if self._label(c_end) != label0:
            tau = self._crossing(lambda s: 1.0 if self._label(config_at(s)) == label0 else -1.0, h)
            candidates.append((tau, False))

        if guard0 is not None and guard0 > 0:
            guard_end = self.field.mode_guard(c_end)
            if guard_end is not None and guard_end <= 0:
                candidates.append((self._crossing(lambda s: self.field.mode_guard(config_at(s)), h), False))

        for level in self.field.lyapunov_levels:
            if (self.field.lyapunov(c0) - level) * (self.field.lyapunov(c_end) - level) < 0:
                tau = self._crossing(lambda s: self.field.lyapunov(config_at(s)) - level, h)
                candidates.append((tau, False))

        return min(candidates, default=None)

    def _record(self, t, old, new, trajectory):
        before, after = self._label(old), self._label(new)
        trajectory.add_visit(t, after.symbol)

        if after.cell != before.cell:
            trajectory.add_event(
                t, "cell-change", {"from": format_cell(before.cell), "to": format_cell(after.cell)}, new)

        for name, p, q in (("x", old.x, new.x), ("y", old.y, new.y)):
            if p.edge is not None and q.edge is None:
                trajectory.add_event(t, "vertex-pass", {"agv": name, "from": "e%d" % p.edge}, new)

        if after.symbol is not None and after.symbol != before.symbol:
            trajectory.add_event(t, "dock", {"symbol": format_symbol(after.symbol)}, new)

        for name, p, was, now in zip("xy", (new.x, new.y), before.docked, after.docked):
            if now and not was:
                trajectory.add_event(t, "boundary-hit", {"agv": name, "station": "v%d" % p.edge}, new)

        for level in self.field.lyapunov_levels:
            phi_old, phi_new = self.field.lyapunov(old), self.field.lyapunov(new)
            if (phi_old - level) * (phi_new - level) < 0:
                direction = "below" if phi_new < level else "above"
                trajectory.add_event(t, "threshold", {"level": "%g" % level, "to": direction}, new)

    def _settle_mode(self, t, c, trajectory):
        for _ in range(MAX_SWITCHES_PER_EVENT):
            guard = self.field.mode_guard(c)
            if guard is None or guard > 0:
                return
            payload = self.field.switch(t, c)
            if payload is not None:
                logger.debug("t=%.6f %s switched %s", t, self.field.name, payload)
                trajectory.add_event(t, "switch", payload, c)

        raise ViolatedExpectation("mode switching does not settle at %s" % format_config(c))

    def _step(self, k, trajectory):
        t0 = (k - 1) * self.dt
        elapsed = 0.0

        for _ in range(MAX_EVENTS_PER_STEP):
            h = self.dt - elapsed
            if h <= 0:
                break

            c0 = self.c
            chart = self._chart(c0)
            nu0 = np.array([c0.x.value, c0.y.value])
            k1 = self._rates(chart, nu0)
            nu_end = self._flow(chart, nu0, k1, h)
            c_end = self._config(chart, nu_end)

            event = self._earliest_event(chart, nu0, k1, h, self._label(c0), self.field.mode_guard(c0), c_end, nu_end)
            if event is None:
                self.c = c_end
                break

            tau, breach = event
            if breach:
                c_breach = self._config(chart, self._flow(chart, nu0, k1, tau))
                raise SafetyViolation(t0 + elapsed + tau, format_config(c_breach))

            tau = min(tau + 2 * self.event_tol, h)
            self.c = self._config(chart, self._flow(chart, nu0, k1, tau))
            elapsed += tau
            self.t = t0 + elapsed

            self._record(self.t, c0, self.c, trajectory)
            self._settle_mode(self.t, self.c, trajectory)
        else:
            raise ViolatedExpectation("more than %d events in the step ending at t=%.6f" % (
                MAX_EVENTS_PER_STEP, k * self.dt))

        self.t = k * self.dt

    def run(self, start, t_max=None):
        t_max = get_settings().T_MAX if t_max is None else t_max
        if t_max < 0:
            raise FieldError("t_max must not be negative, got %r" % (t_max,))
        check_config(start, self.delta)

        trajectory = Trajectory(self.field.name, self.dt)
        self.t, self.c = 0.0, start
        trajectory.add_sample(0.0, start)
        trajectory.add_visit(0.0, visit_symbol(start, self.tol))
        self.field.start(0.0, start)

        n_steps = int(round(t_max / self.dt))
        if n_steps == 0:
            return trajectory

        try:
            self._settle_mode(0.0, start, trajectory)
            for k in range(1, n_steps + 1):
                self._step(k, trajectory)
                trajectory.add_sample(self.t, self.c)
                self.field.observe(self.t, self.c)

                if self.field.goal is not None and product_distance(self.c, self.field.goal) < self.convergence_tol:
                    trajectory.add_event(self.t, "converged", {"distance": "%.3g" % product_distance(
                        self.c, self.field.goal)}, self.c)
                    break

        except SafetyViolation as e:
            logger.warning("%s: %s", self.field.name, e)
            e.trajectory = trajectory
            raise
        except CaptureFailure as e:
            logger.warning("%s: %s", self.field.name, e)
            e.trajectory = trajectory
            raise

        logger.debug("integrated %s up to t=%.6f: %d samples, %d events", self.field.name, self.t, len(trajectory),
                     len(trajectory.events))
        return trajectory


def integrate(field, start, t_max=None, dt=None, delta=None, tol=None):
    return Integrator(field, dt=dt, delta=delta, tol=tol).run(start, t_max)
