"""What `simulate` reports per start: the word the orbit settles into, how its Lyapunov value evolved, and its cost."""
import math
from collections import namedtuple

import numpy as np

from configspace.configs import FIN, cell_of
from configspace.disc import disc_array, to_disc
from configspace.grammar import format_word
from configspace.winding import wd_cost
from cycles.controller import period_switches, realized_cycle_error
from cycles.plan import chord_lyapunov
from flows.circulating import circulating_lyapunov
from flows.navigation import navigation_field
from flows.trajectory import last_period, same_cycle, steady_state_word
from guidepath.exceptions import ConfigError, CycleError

from .scenario import make_profile


# Phi is evaluated on at most this many (evenly spaced) samples per run
PHI_SAMPLES = 2000

RunSummary = namedtuple("RunSummary", [
    "index",
    "steady_word",  # None when the orbit has not settled
    "phi_min",
    "phi_max",
    "phi_final",
    "wd_last_period",  # None without a full period
    "cycle_error",  # chords only
    "failure",
])


def phi_function(spec, plan=None):
    """c -> Phi(c) for the scenario's field, or None where Phi is not defined (a tuned field on a fin)."""
    if spec.kind == "circulating":
        return circulating_lyapunov

    if spec.kind == "navigation":
        return navigation_field(spec.goal_x, spec.goal_y, kappa=spec.kappa).lyapunov

    if spec.kind == "tuned":
        profile = make_profile(spec.harmonics)

        def phi(c):
            if cell_of(c).kind == FIN:
                return None
            r, theta = to_disc(c)
            return abs(r - profile(theta))
        return phi

    # the distance to the nearest chord's cycle
    return lambda c: min(chord_lyapunov(plan, j, c)[0] for j in range(len(plan.chords)))


def phi_statistics(phi, trajectory):
    k = max(1, int(math.ceil(len(trajectory) / PHI_SAMPLES)))
    configs = trajectory.configs[::k]
    if trajectory.configs and configs[-1] is not trajectory.end:
        configs.append(trajectory.end)

    values = [v for v in (phi(c) for c in configs) if v is not None]
    if not values:
        return None, None, None
    return min(values), max(values), values[-1]


def _last_period_window(trajectory, plan, steady):
    if plan is not None:
        closing = period_switches(trajectory, plan)
        if len(closing) >= 2:
            return closing[-2].t, closing[-1].t
        return None
    if steady is None:
        return None
    try:
        return last_period(trajectory, len(steady))
    except CycleError:
        return None


def wd_of_window(trajectory, window):
    t_from, t_to = window
    configs = [c for t, c in trajectory.samples if t_from <= t <= t_to]
    polyline = disc_array(configs)
    polyline = polyline[~np.isnan(polyline[:, 0])]
    try:
        return wd_cost(polyline)
    except ConfigError:
        return None


def _as_planned(steady, word):
    """The steady word rotated to start where the planned word does, if it is the planned cycle."""
    if steady is None or not same_cycle(word, steady):
        return steady
    k = steady.index(word[0])
    return steady[k:] + steady[:k]


def summarize(run, spec, plan=None):
    trajectory = run.trajectory
    period = len(plan.word) if plan is not None else None
    try:
        steady = steady_state_word(trajectory.word(), period)
    except CycleError:
        steady = None
    if plan is not None:
        steady = _as_planned(steady, list(plan.word))

    phi_min, phi_max, phi_final = phi_statistics(phi_function(spec, plan), trajectory)

    window = _last_period_window(trajectory, plan, steady)
    wd = wd_of_window(trajectory, window) if window is not None else None

    cycle_error = None
    if plan is not None:
        try:
            cycle_error = realized_cycle_error(trajectory, plan)
        except CycleError:
            pass

    return RunSummary(run.index, steady, phi_min, phi_max, phi_final, wd, cycle_error, run.failure)


def _g(value):
    return "-" if value is None else "%.6g" % value


def format_summary(summary):
    parts = [
        "start %d:" % summary.index,
        "word %s;" % (format_word(summary.steady_word) if summary.steady_word else "-"),
        "Phi min %s max %s final %s;" % (_g(summary.phi_min), _g(summary.phi_max), _g(summary.phi_final)),
        "W_d %s" % ("-" if summary.wd_last_period is None else summary.wd_last_period),
    ]
    if summary.cycle_error is not None:
        parts[-1] += ";"
        parts.append("cycle error %s" % _g(summary.cycle_error))
    if summary.failure is not None:
        parts[-1] += ";"
        parts.append("aborted: %s" % summary.failure)
    return " ".join(parts)
