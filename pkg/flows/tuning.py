"""Diagnostics of the tuned limit cycles r = f(theta): invariance, contraction, and what the cycle does on the graph."""
import math
from collections import namedtuple

import numpy as np
from scipy.integrate import solve_ivp

from configspace.grammar import zone_of
from configspace.winding import wd_cost, winding_number
from guidepath.app_settings import get_settings
from guidepath.moreiterutils import runs

from .disc_fields import cycle_polyline, tuned_cycle_field
from .trajectory import word_from_visits


CycleDiagnostics = namedtuple("CycleDiagnostics", [
    "period",
    "invariance_residual",  # max |r_dot - f' omega| on the cycle
    "floquet_exponent",  # per unit time
    "multiplier",  # exp(floquet_exponent * period)
    "estimated_multiplier",  # from an orbit started next to the cycle
    "word",
    "winding_number",
    "wd_cost",
])

# how far off the cycle the orbit for the multiplier estimate starts
PERTURBATION = 1e-4


def invariance_residual(field, f, omega, n=4096):
    thetas = np.linspace(0.0, 2 * math.pi, n, endpoint=False)
    return max(abs(field.r_dot(f(theta), theta) - f.derivative(theta) * omega) for theta in thetas)


def estimate_multiplier(field, f, omega):
    """The contraction of the radial error over one period, measured on an orbit started PERTURBATION off the cycle."""
    period = 2 * math.pi / abs(omega)
    offset = PERTURBATION if f(0.0) + PERTURBATION <= 1.0 else -PERTURBATION

    def rhs(t, state):
        return [field.r_dot(state[0], state[1]), field.theta_dot(state[0], state[1])]

    solution = solve_ivp(rhs, (0.0, period), [f(0.0) + offset, 0.0], rtol=1e-10, atol=1e-12)
    r_end, theta_end = solution.y[:, -1]
    return (r_end - f(theta_end)) / offset


def traced_word(f, omega, tol=None, min_dwell=None, n=4096):
    """The docking word read off the cycle, starting from theta = 0 and following the direction of omega."""
    settings = get_settings()
    tol = settings.DOCK_TOL if tol is None else tol
    min_dwell = settings.WORD_MIN_DWELL if min_dwell is None else min_dwell

    thetas = np.linspace(0.0, 2 * math.pi, n, endpoint=False)
    if omega < 0:
        thetas = np.concatenate([[0.0], thetas[:0:-1]])
    radii = f.values(thetas)
    symbols = [zone_of(theta, tol) if radius >= 1.0 - tol else None for theta, radius in zip(thetas, radii)]

    step = 2 * math.pi / n / abs(omega)
    visits = [[symbol, (j - i + 1) * step] for symbol, i, j in runs(symbols)]
    if len(visits) > 1 and visits[0][0] == visits[-1][0]:
        # the run through theta = 0 is one visit
        visits[0][1] += visits.pop()[1]

    return word_from_visits(visits, min_dwell)


def tuned_cycle_diagnostics(f, omega, tol=None, min_dwell=None):
    field = tuned_cycle_field(f, omega)
    period = 2 * math.pi / abs(omega)
    polyline = cycle_polyline(f, omega=omega)

    return CycleDiagnostics(
        period=period,
        invariance_residual=invariance_residual(field, f, omega),
        floquet_exponent=-1.0,
        multiplier=math.exp(-period),
        estimated_multiplier=estimate_multiplier(field, f, omega),
        word=traced_word(f, omega, tol=tol, min_dwell=min_dwell),
        winding_number=winding_number(polyline),
        wd_cost=wd_cost(polyline),
    )
