"""
Chord plans: a monotone word turned into docking points on the boundary of the disc, the arcs (chords) between
consecutive ones, and per chord a tuned limit-cycle field whose cycle contains the chord.

A chord's cycle r = f(theta) runs along the boundary everywhere except over its own gap, and over the gap of the chord
before it when that one runs in the same direction: there it follows both arcs. So the cycle of chord j passes through
every docking point, and an orbit that switches from chord j - 1 to chord j is on the new cycle already.

A word of winding class zero has one chord that runs clockwise, beneath the others. At its two ends the orbit turns
around; there the clockwise chord shares the last stretch of the forward chord it turns back from (the slope up to the
docking point and a terrace before it), such that the turn, too, happens on both cycles at once.
"""
import logging
import math
from collections import namedtuple
from itertools import combinations

import numpy as np

from configspace.configs import config_array, distance_to_polyline, product_distance
from configspace.disc import from_disc
from configspace.grammar import format_word, is_monotone, zone_midpoint
from configspace.winding import WINDING_PLUS_MINUS_ONE, WINDING_ZERO, gap_angles, optimal_winding_class
from flows.disc_fields import tuned_cycle_field
from flows.profiles import TWO_PI, KnotProfile
from flows.pushforward import FinCompanionField, PushforwardField
from guidepath.app_settings import get_settings
from guidepath.exceptions import CycleError, GrammarError


logger = logging.getLogger("guidepath.cycles")

# angular width over which a chord climbs from its depth to the boundary, next to A/B and next to AB docking points
SLOPE_WIDTH = {"A": 0.2, "B": 0.2, "AB": 0.04}

# the stretch at the forward chords' depth that a clockwise chord shares with them before it descends to its own
TERRACE = 0.05

DESCENT = 0.2

BETA_SAMPLES = 2000

PREPARES_TOL = 1e-9

# start: the angle where the chord's arc begins in counter-clockwise terms; the chord is run from there over `span` if
# omega > 0, and backwards from start + span otherwise. profile: that of the chord's cycle, which agrees with the arc
# over [start, start + span]. beta: the full cycle of the chord's field, as a config array.
Chord = namedtuple("Chord", ["index", "start", "span", "omega", "profile", "beta", "field"])

ChordPlan = namedtuple("ChordPlan", [
    "word",
    "epsilon",
    "angles",  # of the docking points, in word order
    "docking_points",  # Configs
    "gaps",
    "winding_class",
    "chords",
    "alpha",  # the closed curve through all docking points, as a config array
    "alpha_disc",  # the same, as (r, theta) rows
])


def slope_width(kind, gap):
    return min(SLOPE_WIDTH[kind], gap / 4)


def chord_knots(start, span, depth, slope_start, slope_end):
    """(angles, radii) of a profile that is 1 at start and at start + span, and 1 - depth in between."""
    slope_start = min(slope_start, span / 4)
    slope_end = min(slope_end, span / 4)

    angles = [start, start + slope_start, start + span - slope_end]
    radii = [1.0, 1.0 - depth, 1.0 - depth]
    if span < TWO_PI - 1e-12:
        angles.append(start + span)
        radii.append(1.0)
    return angles, radii


def turnaround_knots(start, span, depth, slopes, terraces):
    """
    (angles, radii) of a chord over [start, start + span] at depth 2 * depth, beneath forward chords of depth `depth`.
    Next to each end it has the forward chord's slope and then a terrace at 1 - depth; both are (start, end) pairs.
    """
    (slope_start, slope_end), (terrace_start, terrace_end) = slopes, terraces
    inner_start = start + slope_start + terrace_start
    inner_end = start + span - slope_end - terrace_end
    if inner_end <= inner_start:
        raise CycleError("no room for a turnaround chord over %.6g" % span)
    descent = min(DESCENT, (inner_end - inner_start) / 3)

    angles = [
        start, start + slope_start, inner_start, inner_start + descent,
        inner_end - descent, inner_end, start + span - slope_end, start + span]
    radii = [1.0, 1.0 - depth, 1.0 - depth, 1.0 - 2 * depth, 1.0 - 2 * depth, 1.0 - depth, 1.0 - depth, 1.0]
    return angles, radii


def joined_knots(before, after):
    """
    The knots of two consecutive arcs as one profile: `before` runs from before.start over before.span, and `after`
    begins where it ends. Both are (start, span, (angles, radii)).
    """
    start, span, (angles, radii) = before
    after_start, after_span, (after_angles, after_radii) = after

    shift = start + span - after_start
    angles = list(angles) + [a + shift for a in after_angles[1:]]
    radii = list(radii) + list(after_radii[1:])
    if span + after_span >= TWO_PI - 1e-12:
        # all around: the closing knot is the first one, a period later
        angles, radii = angles[:-1], radii[:-1]
    return angles, radii


def _beta(profile, start):
    thetas = np.sort(np.concatenate([
        start + np.linspace(0.0, TWO_PI, BETA_SAMPLES, endpoint=False), profile.angles, [start + TWO_PI]]))
    return config_array([from_disc((r, theta)) for r, theta in zip(profile.values(thetas), thetas)])


def _arc_disc(profile, start, span, omega):
    n = max(2, int(math.ceil(span / TWO_PI * BETA_SAMPLES)))
    knots = start + np.mod(profile.angles - start, TWO_PI)
    thetas = np.unique(np.concatenate([start + np.linspace(0.0, span, n), knots]))
    thetas = thetas[(thetas >= start) & (thetas <= start + span)]
    if omega < 0:
        thetas = thetas[::-1]
    return np.column_stack([profile.values(thetas), thetas])


def _chord(index, start, span, omega, knots):
    profile = KnotProfile(*knots)
    field = FinCompanionField(PushforwardField(tuned_cycle_field(profile, omega)), name="chord %d" % index)
    return Chord(index, start, span, omega, profile, _beta(profile, profile.start), field)


def _check_epsilon(docking_points, epsilon):
    if epsilon <= 0:
        raise CycleError("epsilon must be positive, got %r" % (epsilon,))
    if len(docking_points) < 2:
        return
    limit = min(product_distance(a, b) for a, b in combinations(docking_points, 2)) / 2
    if epsilon >= limit:
        raise CycleError("epsilon %.6g is not below half the smallest distance between docking points (%.6g)" % (
            epsilon, limit))


def _check_prepares(chords, docking_points):
    n = len(chords)
    for j in range(n):
        following = (j + 1) % n
        phi = distance_to_polyline(docking_points[following], chords[following].beta)
        if phi >= PREPARES_TOL:
            raise CycleError("chord %d ends %.3g away from the cycle of chord %d" % (j, phi, following))


def plan_cycle(word, epsilon=None, margin=None, omega=None):
    """
    Docking points at the zone midpoints of `word`'s symbols, and one chord per pair of consecutive points. When some
    gap exceeds pi the cheapest cycle has winding number zero: the chord across the largest gap is then run clockwise,
    the long way round, beneath the others. A single symbol gets one chord all around.
    """
    settings = get_settings()
    epsilon = settings.EPSILON if epsilon is None else epsilon
    margin = settings.ARC_MARGIN if margin is None else margin
    omega = settings.CHORD_OMEGA if omega is None else omega

    word = list(word)
    if not word:
        raise GrammarError("a word has at least one symbol")
    if len(word) > 1 and not is_monotone(word):
        raise CycleError("%s is not a monotone word" % format_word(word))
    if not 0 < margin < 0.5:
        raise CycleError("the chord margin must be in (0, 0.5), got %r" % (margin,))
    if omega <= 0:
        raise CycleError("the chord angular speed must be positive, got %r" % (omega,))

    n = len(word)
    kinds = [s.kind for s in word]
    angles = [zone_midpoint(s) for s in word]
    docking_points = [from_disc((1.0, phi)) for phi in angles]
    _check_epsilon(docking_points, epsilon)

    gaps = gap_angles(angles)
    winding_class = optimal_winding_class(gaps) if n > 1 else WINDING_PLUS_MINUS_ONE
    reversed_index = gaps.index(max(gaps)) if winding_class == WINDING_ZERO else None

    # per chord: (start, span, omega, knots of its own arc)
    arcs = []
    for j in range(n):
        following = (j + 1) % n
        if j == reversed_index:
            # clockwise from this point to the next; the orbit turns around at both ends
            before, after = (j - 1) % n, following
            knots = turnaround_knots(
                angles[following], TWO_PI - gaps[j], margin,
                (slope_width(kinds[following], gaps[after]), slope_width(kinds[j], gaps[before])),
                (min(TERRACE, gaps[after] / 8), min(TERRACE, gaps[before] / 8)))
            arcs.append((angles[following], TWO_PI - gaps[j], -omega, knots))
        else:
            knots = chord_knots(angles[j], gaps[j], margin, SLOPE_WIDTH[kinds[j]], SLOPE_WIDTH[kinds[following]])
            arcs.append((angles[j], gaps[j], omega, knots))

    chords = []
    for j, (start, span, chord_omega, knots) in enumerate(arcs):
        previous = arcs[(j - 1) % n]
        if n > 1 and chord_omega > 0 and previous[2] > 0:
            knots = joined_knots((previous[0], previous[1], previous[3]), (start, span, knots))
        chords.append(_chord(j, start, span, chord_omega, knots))

    _check_prepares(chords, docking_points)

    alpha_disc = np.vstack([_arc_disc(c.profile, c.start, c.span, c.omega) for c in chords])
    alpha = config_array([from_disc((r, theta)) for r, theta in alpha_disc])

    logger.info("planned %s: %d chords, winding class %s", format_word(word), n, winding_class)
    return ChordPlan(word, epsilon, angles, docking_points, gaps, winding_class, chords, alpha, alpha_disc)


def chord_lyapunov(plan, j, c):
    """(Phi, Psi) of chord j at c: the distance to the chord's cycle, and that plus the distance to its end point."""
    n = len(plan.chords)
    if not 0 <= j < n:
        raise CycleError("no chord %r in a plan of %d" % (j, n))
    phi = distance_to_polyline(c, plan.chords[j].beta)
    return phi, phi + product_distance(c, plan.docking_points[(j + 1) % n])
