import math
import os
from unittest import TestCase as RegularTestCase, skipUnless

import numpy as np

from configspace.configs import Config, distance_to_polyline, product_distance
from configspace.disc import from_disc
from configspace.grammar import format_word, is_monotone, monotone_words, parse_word
from configspace.winding import WINDING_PLUS_MINUS_ONE, WINDING_ZERO, winding_number
from flows.trajectory import Trajectory, same_cycle, steady_state_word
from flows.tuning import traced_word
from graphs.points import point
from guidepath.exceptions import CaptureFailure, CycleError, GrammarError

from .controller import ChordController, chord_switches, realized_cycle_error, run_cycle
from .plan import chord_knots, chord_lyapunov, joined_knots, plan_cycle, turnaround_knots


SLOW_TESTS = os.environ.get("GUIDEPATH_SLOW_TESTS", "") not in ("", "0")


def c(x, y):
    return Config(point(*x), point(*y))


class PlanTestCase(RegularTestCase):

    def test_three_symbols(self):
        plan = plan_cycle(parse_word("A1 B2 A3"), 0.05)
        self.assertEqual(3, len(plan.chords))
        self.assertEqual(WINDING_ZERO, plan.winding_class)

        # the gap from A3 back to A1 is larger than pi: that chord runs clockwise, and the cycle does not wind
        self.assertEqual([1.0, 1.0, -1.0], [math.copysign(1.0, chord.omega) for chord in plan.chords])
        self.assertEqual(0, winding_number(plan.alpha_disc))

    def test_alpha_is_closed_through_the_docking_points(self):
        plan = plan_cycle(parse_word("A1 AB12 B2 AB32"), 0.05)
        self.assertAlmostEqual(0.0, product_distance(plan.docking_points[0], from_disc(plan.alpha_disc[0])))
        self.assertAlmostEqual(0.0, product_distance(plan.docking_points[0], from_disc(plan.alpha_disc[-1])))
        for q in plan.docking_points:
            self.assertLess(distance_to_polyline(q, plan.alpha), 1e-9)

    def test_winding_one(self):
        plan = plan_cycle(parse_word("A1 B1"), 0.05)
        self.assertEqual(WINDING_PLUS_MINUS_ONE, plan.winding_class)
        self.assertTrue(all(chord.omega > 0 for chord in plan.chords))
        self.assertEqual(1, winding_number(plan.alpha_disc))

    def test_single_symbol(self):
        plan = plan_cycle(parse_word("AB12"), 0.05)
        self.assertEqual(1, len(plan.chords))
        self.assertEqual(1, winding_number(plan.alpha_disc))

    def test_chords_prepare_each_other(self):
        for word in ["A1 B2 A3", "A1 AB12", "AB12 AB32 AB21"]:
            plan = plan_cycle(parse_word(word), 0.05)
            n = len(plan.chords)
            for j in range(n):
                q = plan.docking_points[(j + 1) % n]
                self.assertLess(distance_to_polyline(q, plan.chords[(j + 1) % n].beta), 1e-9)

    def test_errors(self):
        with self.assertRaises(CycleError):
            plan_cycle(parse_word("A1 A3 B2"), 0.05)
        with self.assertRaises(CycleError):
            plan_cycle(parse_word("A1 B2 A3"), 1.0)
        with self.assertRaises(CycleError):
            plan_cycle(parse_word("A1 B2 A3"), 0.0)
        with self.assertRaises(CycleError):
            plan_cycle(parse_word("A1 B2 A3"), 0.05, margin=0.6)
        with self.assertRaises(GrammarError):
            plan_cycle([], 0.05)

    def test_knots(self):
        angles, radii = chord_knots(0.0, 1.0, 0.35, 0.2, 0.04)
        self.assertEqual([0.0, 0.2, 0.96, 1.0], [round(a, 12) for a in angles])
        self.assertEqual([1.0, 0.65, 0.65, 1.0], [round(r, 12) for r in radii])

        # all around: no closing knot, the profile's period closes it
        angles, radii = chord_knots(0.0, 2 * math.pi, 0.35, 0.2, 0.2)
        self.assertEqual(3, len(angles))

    def test_turnaround_knots(self):
        angles, radii = turnaround_knots(0.0, 2.0, 0.35, (0.2, 0.04), (0.05, 0.05))
        self.assertEqual([0.0, 0.2, 0.25, 0.45, 1.71, 1.91, 1.96, 2.0], [round(a, 12) for a in angles])
        self.assertEqual([1.0, 0.65, 0.65, 0.3, 0.3, 0.65, 0.65, 1.0], [round(r, 12) for r in radii])

        with self.assertRaises(CycleError):
            turnaround_knots(0.0, 0.2, 0.35, (0.1, 0.1), (0.05, 0.05))

    def test_joined_knots(self):
        before = (1.0, 1.0, chord_knots(1.0, 1.0, 0.35, 0.2, 0.2))
        after = (2.0, 0.5, chord_knots(2.0, 0.5, 0.35, 0.2, 0.2))
        angles, radii = joined_knots(before, after)
        self.assertEqual([1.0, 1.2, 1.8, 2.0, 2.125, 2.375, 2.5], [round(a, 12) for a in angles])
        self.assertEqual([1.0, 0.65, 0.65, 1.0, 0.65, 0.65, 1.0], [round(r, 12) for r in radii])

        # across 2 pi, and all around
        before = (math.pi, math.pi, chord_knots(math.pi, math.pi, 0.35, 0.2, 0.2))
        after = (0.0, math.pi, chord_knots(0.0, math.pi, 0.35, 0.2, 0.2))
        angles, radii = joined_knots(before, after)
        self.assertEqual(6, len(angles))
        self.assertAlmostEqual(2 * math.pi + 0.2, angles[4])

    def test_cycle_follows_the_previous_arc(self):
        plan = plan_cycle(parse_word("A1 AB12 B2 AB32"), 0.05)
        self.assertEqual([1.0, 1.0, 1.0, -1.0], [math.copysign(1.0, chord.omega) for chord in plan.chords])

        first, second = plan.chords[0], plan.chords[1]
        for theta in np.linspace(first.start, first.start + first.span, 50):
            self.assertAlmostEqual(first.profile(theta), second.profile(theta), places=12)

        # the chord before the first one runs clockwise: the first one's cycle is the boundary elsewhere
        self.assertAlmostEqual(1.0, first.profile(math.pi))

    def test_turnaround_shares_the_forward_stretch(self):
        plan = plan_cycle(parse_word("A1 B2 A3"), 0.05)
        first, second, back = plan.chords

        # turning back at A3 (2 pi / 3) and at A1 (0)
        for theta in np.linspace(2 * math.pi / 3 - 0.25, 2 * math.pi / 3, 30):
            self.assertAlmostEqual(second.profile(theta), back.profile(theta), places=12)
        for theta in np.linspace(0.0, 0.25, 30):
            self.assertAlmostEqual(first.profile(theta), back.profile(theta), places=12)

        self.assertAlmostEqual(0.3, back.profile(math.pi / 3))
        for theta in np.linspace(0.0, 2 * math.pi / 3, 100):
            self.assertLessEqual(back.profile(theta), second.profile(theta) + 1e-12)

    def test_chord_cycles_trace_monotone_words(self):
        rng = np.random.default_rng(5)
        words = list(monotone_words(4))
        for k in rng.choice(len(words), size=50, replace=False):
            plan = plan_cycle(words[k], 0.05)
            chord = plan.chords[int(rng.integers(len(plan.chords)))]
            traced = traced_word(chord.profile, chord.omega)
            self.assertTrue(is_monotone(traced, either_orientation=True), traced)


class LyapunovTestCase(RegularTestCase):

    def setUp(self):
        self.plan = plan_cycle(parse_word("A1 B1"), 0.05)

    def test_at_the_end_point(self):
        phi, psi = chord_lyapunov(self.plan, 0, self.plan.docking_points[1])
        self.assertAlmostEqual(0.0, phi, places=9)
        self.assertAlmostEqual(0.0, psi, places=9)

    def test_at_the_start_point(self):
        phi, psi = chord_lyapunov(self.plan, 0, self.plan.docking_points[0])
        self.assertAlmostEqual(0.0, phi, places=9)
        self.assertAlmostEqual(product_distance(self.plan.docking_points[0], self.plan.docking_points[1]), psi)

    def test_additive(self):
        # B1: y docked at station 1 with x at the center; moving x onto e1 leaves D, and the end point stays nearest
        phi, psi = chord_lyapunov(self.plan, 0, c((1, 0.1), (1, 1.0)))
        self.assertAlmostEqual(0.1, phi)
        self.assertAlmostEqual(0.2, psi)

    def test_no_such_chord(self):
        with self.assertRaises(CycleError):
            chord_lyapunov(self.plan, 2, self.plan.docking_points[0])


class ControllerTestCase(RegularTestCase):

    def setUp(self):
        self.plan = plan_cycle(parse_word("A1 B2 A3"), 0.05)

    def test_starts_on_the_nearest_chord(self):
        chord = self.plan.chords[1]
        theta = chord.start + chord.span / 2
        controller = ChordController(self.plan)
        controller.start(0.0, from_disc((chord.profile(theta), theta)))
        self.assertEqual(1, controller.mode)
        self.assertTrue(controller.armed)

    def test_starts_in_capture(self):
        controller = ChordController(self.plan)
        controller.start(0.0, from_disc((0.3, math.pi + 0.3)))
        self.assertEqual("capture", controller.mode)

    def test_zero_horizon(self):
        trajectory = run_cycle(self.plan, c((1, 0.5), (2, 0.5)), t_max=0.0, dt=0.01)
        self.assertEqual(1, len(trajectory))
        self.assertEqual([], trajectory.events)

    def test_capture_failure(self):
        with self.assertRaises(CaptureFailure) as cm:
            run_cycle(self.plan, from_disc((0.1, math.pi + 0.3)), t_max=1.0, dt=0.01, capture_time=0.05)
        self.assertIsNotNone(cm.exception.trajectory)

    def test_realizes_the_word(self):
        trajectory = run_cycle(self.plan, c((1, 0.5), (2, 0.5)), t_max=40.0, dt=0.01)

        self.assertTrue(same_cycle(self.plan.word, steady_state_word(trajectory.word(), 3)))
        self.assertLess(realized_cycle_error(trajectory, self.plan), self.plan.epsilon)

        switches = chord_switches(trajectory)
        self.assertGreater(len(switches), 6)
        for before, after in switches:
            self.assertEqual((before + 1) % 3, after)

    def test_too_few_periods(self):
        trajectory = run_cycle(self.plan, c((1, 0.5), (2, 0.5)), t_max=3.0, dt=0.01)
        with self.assertRaises(CycleError):
            realized_cycle_error(trajectory, self.plan)

    def test_error_of_alpha_itself(self):
        configs = [from_disc(row) for row in self.plan.alpha_disc]
        trajectory = Trajectory("alpha", 1.0)
        for k, config in enumerate(configs):
            trajectory.add_sample(float(k), config)
        for t in [0.0, 0.0, float(len(configs) - 1)]:
            trajectory.add_event(t, "switch", {"from": 2, "to": 0}, self.plan.docking_points[0])

        self.assertAlmostEqual(0.0, realized_cycle_error(trajectory, self.plan), places=12)


class SweepTestCase(RegularTestCase):
    """Monotone words of up to four symbols, both winding classes, A/B and AB docking points."""

    def _check(self, word):
        plan = plan_cycle(word, 0.05)
        trajectory = run_cycle(plan, c((1, 0.5), (2, 0.5)), t_max=40.0, dt=0.005)

        steady = steady_state_word(trajectory.word(), len(word))
        self.assertTrue(same_cycle(word, steady), "%s: %s" % (format_word(word), format_word(steady)))
        error = realized_cycle_error(trajectory, plan)
        self.assertLess(error, plan.epsilon, format_word(word))
        return error

    def test_chosen_words(self):
        for tokens in ["AB12", "A1 AB12", "A1 B1", "AB12 AB32 AB21", "A1 AB12 B2 AB32"]:
            with self.subTest(word=tokens):
                self._check(parse_word(tokens))

    def test_turning_around_next_to_corners(self):
        for tokens in ["AB12 AB31 B1", "A3 AB31 B1 AB21", "AB31 AB21 A2 AB23", "A1 AB12 B2 AB23"]:
            with self.subTest(word=tokens):
                self._check(parse_word(tokens))

    def test_winding_one_follows_alpha(self):
        # no turnaround: the orbit passes through every docking point, and only the sampling separates it from alpha
        for tokens in ["A1 B1", "A1 AB32 B1 AB23"]:
            with self.subTest(word=tokens):
                self.assertLess(self._check(parse_word(tokens)), 0.02)

    def test_random_words(self):
        rng = np.random.default_rng(3)
        words = list(monotone_words(4))
        for k in rng.choice(len(words), size=3, replace=False):
            with self.subTest(word=format_word(words[k])):
                self._check(words[k])

    @skipUnless(SLOW_TESTS, "set GUIDEPATH_SLOW_TESTS=1 to run every monotone word of up to four symbols")
    def test_every_word(self):
        for word in monotone_words(4):
            with self.subTest(word=format_word(word)):
                self._check(word)
