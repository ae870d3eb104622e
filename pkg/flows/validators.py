"""
Checks that a piecewise field generates a well-defined semiflow. At a vertex where K smooth pieces meet, the one-sided
velocities must all have the same magnitude, and exactly one of them may point away from the vertex (or all vanish).
On the configuration space the vertex is the center: wherever one AGV sits there, the three one-sided limits of its
velocity (one per edge) must satisfy the vertex conditions, while the other AGV's velocity must not depend on the side.
Tolerances are relative for speeds above 1.
"""
import logging
from collections import namedtuple

import numpy as np

from configspace.configs import Config, format_config
from graphs.points import CENTER, point
from guidepath.app_settings import get_settings
from guidepath.exceptions import FieldError


logger = logging.getLogger("guidepath.flows")

# how far from the center the one-sided limits are taken
LIMIT_OFFSET = 1e-14

Violation = namedtuple("Violation", ["kind", "location", "detail"])


class ValidityReport:

    def __init__(self, violations=(), singular=False, checked=0):
        self.violations = list(violations)
        self.singular = singular
        self.checked = checked

    @property
    def valid(self):
        return not self.violations

    def __bool__(self):
        return self.valid

    def __repr__(self):
        return "<ValidityReport %s, %d checked, %d violations>" % (
            "valid" if self.valid else "invalid", self.checked, len(self.violations))

    def kinds(self):
        return sorted({v.kind for v in self.violations})

    def extend(self, other):
        self.violations.extend(other.violations)
        self.checked += other.checked


def validate_vertex_fields(speeds, signs, tol=None, location=None):
    """
    `speeds` are the magnitudes of the one-sided velocities at a vertex, `signs` their directions: '+' away from the
    vertex, '-' towards it.
    """
    tol = get_settings().VALIDATE_TOL if tol is None else tol
    if len(speeds) != len(signs):
        raise FieldError("%d speeds but %d signs" % (len(speeds), len(signs)))
    if not speeds:
        raise FieldError("a vertex has at least one incident edge")

    speeds = [abs(s) for s in speeds]
    if max(speeds) <= tol:
        # the vertex is a fixed point; the direction condition is void
        return ValidityReport(singular=True, checked=1)

    violations = []
    if max(speeds) - min(speeds) > tol * max(1.0, max(speeds)):
        violations.append(Violation("magnitude", location, "speeds %s differ" % ", ".join("%.6g" % s for s in speeds)))

    outgoing = sum(1 for s in signs if s == "+")
    if outgoing > 1:
        violations.append(Violation("two-outgoing", location, "%d edges leave the vertex" % outgoing))
    if outgoing == 0:
        violations.append(Violation("no-outgoing", location, "no edge leaves the vertex"))

    return ValidityReport(violations, checked=1)


def _sample_branch_points(samples, seed, delta):
    """(moving, edge, nu) triples: the AGV at the center, and where the other one is."""
    rng = np.random.default_rng(seed)
    edges = rng.integers(1, 4, size=samples)
    values = rng.uniform(delta + 1e-3, 1.0, size=samples)
    return [("x" if k % 2 == 0 else "y", int(e), float(v)) for k, (e, v) in enumerate(zip(edges, values))]


def _place(moving, p_moving, p_other):
    if moving == "x":
        return Config(p_moving, p_other)
    return Config(p_other, p_moving)


def _split(moving, velocities):
    vx, vy = velocities
    return (vx, vy) if moving == "x" else (vy, vx)


def _check_branch_point(field, moving, stationary, tol):
    at_center = _place(moving, CENTER, stationary)
    location = format_config(at_center)
    violations = []

    limits = {}
    for i in (1, 2, 3):
        try:
            limits[i] = _split(moving, field.velocities(_place(moving, point(i, LIMIT_OFFSET), stationary)))
        except FieldError as e:
            violations.append(Violation("coverage", location, "undefined coming from e%d: %s" % (i, e)))
    if violations:
        return ValidityReport(violations, checked=1)

    for i, (v_moving, _) in limits.items():
        if v_moving.edge != i:
            violations.append(Violation("edge", location, "coming from e%d, the velocity is along e%s" % (
                i, v_moving.edge)))
    if violations:
        return ValidityReport(violations, checked=1)

    speeds = [limits[i][0].rate for i in (1, 2, 3)]
    signs = ["+" if rate > tol else "-" for rate in speeds]
    report = validate_vertex_fields(speeds, signs, tol=tol, location=location)

    stationary_rates = [limits[i][1].rate for i in (1, 2, 3)]
    scale = max(1.0, max(abs(r) for r in stationary_rates))
    if max(stationary_rates) - min(stationary_rates) > tol * scale:
        report.violations.append(Violation("R-factor", location, "the other AGV's rates %s differ" % ", ".join(
            "%.9g" % r for r in stationary_rates)))

    v_center, _ = _split(moving, field.velocities(at_center))
    if report.singular:
        if abs(v_center.rate) > tol:
            report.violations.append(Violation("seam", location, "moves at %.6g from a fixed point" % v_center.rate))
    elif signs.count("+") == 1:
        out = signs.index("+") + 1
        if v_center.edge != out or abs(v_center.rate - speeds[out - 1]) > tol:
            report.violations.append(Violation("seam", location, "at the center moves along e%s at %.6g, not e%d" % (
                v_center.edge, v_center.rate, out)))

    return report


def validate_config_field(field, samples=None, seed=None, tol=None, delta=None):
    settings = get_settings()
    samples = settings.VALIDATE_SAMPLES if samples is None else samples
    seed = settings.SEED if seed is None else seed
    tol = settings.VALIDATE_TOL if tol is None else tol
    delta = settings.DELTA if delta is None else delta

    if samples < 1:
        raise FieldError("validation needs at least one sample")

    report = ValidityReport()
    for moving, edge, nu in _sample_branch_points(samples, seed, delta):
        report.extend(_check_branch_point(field, moving, point(edge, nu), tol))

    logger.info("validated %s at %d branch points: %s", field.name, report.checked,
                "valid" if report.valid else "%d violations" % len(report.violations))
    return report
