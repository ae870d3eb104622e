import logging

from configspace.configs import config_array, polyline_hausdorff
from flows.base import PiecewiseField
from flows.integrate import integrate
from guidepath.app_settings import get_settings
from guidepath.exceptions import CaptureFailure, CycleError

from .plan import chord_lyapunov


logger = logging.getLogger("guidepath.cycles")

CAPTURE = "capture"


class ChordController(PiecewiseField):
    """
    Switches between the chord fields of a plan. Until the orbit comes within epsilon of some chord's cycle it follows
    the first chord's field ('capture'). Following chord j, it switches to chord j + 1 as soon as Psi_j drops below
    epsilon, i.e. when it is on chord j's cycle and close to its end point. Right after a switch Psi of the new chord
    may itself be below epsilon (a one-chord plan); the guard is then disarmed until Psi rises above epsilon again.

    Carries mutable mode state; use one instance per run.
    """

    def __init__(self, plan, capture_time=None):
        self.plan = plan
        self.capture_time = get_settings().CAPTURE_TIME if capture_time is None else capture_time
        self.name = "chords"
        self.chord = None
        self.armed = True
        self.last_switch = None

    @property
    def n(self):
        return len(self.plan.chords)

    @property
    def mode(self):
        return CAPTURE if self.chord is None else self.chord

    @property
    def field(self):
        return self.plan.chords[self.chord or 0].field

    def velocities(self, c):
        return self.field.velocities(c)

    def branch(self, c):
        return self.mode, self.field.branch(c)

    def lyapunov(self, c):
        return chord_lyapunov(self.plan, self.chord or 0, c)[0]

    def _select(self, c):
        """The chord whose cycle is within epsilon of c and whose end point is not; or None."""
        epsilon = self.plan.epsilon
        close = []
        for j in range(self.n):
            phi, psi = chord_lyapunov(self.plan, j, c)
            if phi <= epsilon:
                if psi > epsilon:
                    return j
                close.append(j)
        if close:
            # at the end point of the nearest chord already: the next one takes over
            return (close[0] + 1) % self.n
        return None

    def _arm(self, c):
        self.armed = chord_lyapunov(self.plan, self.chord, c)[1] > self.plan.epsilon

    def start(self, t, c):
        self.chord = self._select(c)
        self.armed = True
        self.last_switch = None
        if self.chord is not None:
            self._arm(c)
        logger.debug("chords start in mode %s", self.mode)

    def mode_guard(self, c):
        epsilon = self.plan.epsilon
        if self.chord is None:
            return min(chord_lyapunov(self.plan, j, c)[0] for j in range(self.n)) - epsilon

        psi = chord_lyapunov(self.plan, self.chord, c)[1]
        return psi - epsilon if self.armed else epsilon - psi

    def switch(self, t, c):
        if self.chord is not None and not self.armed:
            self.armed = True
            return None

        before = self.mode
        self.chord = self._select(c) if self.chord is None else (self.chord + 1) % self.n
        self._arm(c)
        self.last_switch = t
        return {"from": before, "to": self.chord}

    def observe(self, t, c):
        if self.chord is None and t > self.capture_time:
            raise CaptureFailure(t)


def run_cycle(plan, start, t_max=None, dt=None, delta=None, tol=None, capture_time=None):
    return integrate(ChordController(plan, capture_time=capture_time), start, t_max=t_max, dt=dt, delta=delta, tol=tol)


def period_switches(trajectory, plan):
    """The switch events that close a period: the ones from the last chord into the first."""
    last = len(plan.chords) - 1
    return [e for e in trajectory.events_of("switch") if e.payload["from"] == last and e.payload["to"] == 0]


def realized_cycle_error(trajectory, plan):
    """
    The Hausdorff distance between the orbit's last full period and the planned curve alpha, both as polylines. The
    configurations at the events within that period (the switches among them) are part of the orbit.
    """
    closing = period_switches(trajectory, plan)
    if len(closing) < 3:
        raise CycleError("the orbit completed %d periods; at least 2 are needed" % max(len(closing) - 1, 0))

    t_from, t_to = closing[-2].t, closing[-1].t
    timed = [(t, c) for t, c in trajectory.samples if t_from <= t <= t_to]
    timed += [(e.t, e.config) for e in trajectory.events if t_from <= e.t <= t_to and e.config is not None]
    configs = [c for t, c in sorted(timed, key=lambda tc: tc[0])]
    if not configs:
        raise CycleError("no samples in the last period")

    return polyline_hausdorff(config_array(configs), plan.alpha)


def chord_switches(trajectory):
    """(from, to) of every switch between chords, in order."""
    return [
        (e.payload["from"], e.payload["to"]) for e in trajectory.events_of("switch") if e.payload["from"] != CAPTURE]
