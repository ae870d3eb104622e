import math
from itertools import groupby
from unittest import TestCase as RegularTestCase

import numpy as np

from graphs.graph import make_y_graph
from graphs.points import GraphPoint
from guidepath.exceptions import FieldError, ViolatedExpectation
from patterns.levels import build_levels, g_iterates
from patterns.tests import random_graph_and_block

from .fields import make_edge_point_field, lyapunov, prepares, flow_edge_field
from .hybrid import (
    HybridController, make_single_agv_hybrid, fields_for_pattern, step_hybrid, run_hybrid, edge_transitions)


class EdgePointFieldTestCase(RegularTestCase):

    def setUp(self):
        self.g = make_y_graph()
        self.field = make_edge_point_field(self.g, GraphPoint(1, 0.5))

    def test_velocity_toward_goal(self):
        v = self.field.velocity(GraphPoint(1, 0.8))
        self.assertEqual(1, v.edge)
        self.assertLess(v.rate, 0)

    def test_zero_at_goal(self):
        self.assertEqual(0.0, self.field.velocity(GraphPoint(1, 0.5)).rate)

    def test_collar_drifts_to_center(self):
        v = self.field.velocity(GraphPoint(2, 0.2))
        self.assertEqual(2, v.edge)
        self.assertLess(v.rate, 0)

    def test_continuous_at_vertex(self):
        # approaching v0 through a collar, the speed equals that of the goal edge at v0
        self.assertAlmostEqual(-self.field.velocity(GraphPoint(2, 1e-9)).rate,
                               self.field.velocity(GraphPoint(1, 0.0)).rate, places=12)

    def test_collar_reaches_goal(self):
        samples = flow_edge_field(self.field, GraphPoint(2, 0.2), t_max=20, dt=0.05)
        t, p = samples[-1]
        self.assertEqual(1, p.edge)
        self.assertAlmostEqual(0.5, p.value, places=6)

    def test_lyapunov(self):
        f = make_edge_point_field(self.g, GraphPoint(1, 0.5), lyapunov_scale=1.0)
        self.assertEqual(0.0, lyapunov(f, GraphPoint(1, 0.5)))
        self.assertAlmostEqual(0.4, lyapunov(f, GraphPoint(1, 0.9)), places=12)
        self.assertAlmostEqual(0.8, lyapunov(f, GraphPoint(2, 0.3)), places=12)

    def test_lyapunov_outside_domain(self):
        f = make_edge_point_field(self.g, GraphPoint(1, 0.5), collar=0.2)
        with self.assertRaises(FieldError):
            f.lyapunov(GraphPoint(2, 0.5))

    def test_goal_must_be_interior(self):
        with self.assertRaises(FieldError):
            make_edge_point_field(self.g, GraphPoint(1, 1.0))
        with self.assertRaises(FieldError):
            make_edge_point_field(self.g, GraphPoint(None, 0.0))

    def test_alpha_sublevel_inside_goal_edge(self):
        for p in self.field.sublevel_points(self.field.alpha):
            self.assertEqual(1, p.edge)

    def test_lyapunov_decreases_and_converges(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            edge = int(rng.integers(1, 4))
            start = GraphPoint(edge, float(rng.uniform(0.01, 0.99)))
            samples = flow_edge_field(self.field, start, t_max=16, dt=0.05)
            phis = [self.field.lyapunov(p) for _, p in samples]
            for a, b in zip(phis, phis[1:]):
                self.assertLessEqual(b, a + 1e-9)
            self.assertLess(phis[-1], 1e-6)


class PreparesTestCase(RegularTestCase):

    def test_prepares_neighbor(self):
        g = make_y_graph()
        f1 = make_edge_point_field(g, GraphPoint(1, 0.5))
        f2 = make_edge_point_field(g, GraphPoint(2, 0.5))
        self.assertTrue(prepares(f1, f2))

    def test_goal_outside_domain(self):
        g = make_y_graph()
        f1 = make_edge_point_field(g, GraphPoint(1, 0.8))
        f2 = make_edge_point_field(g, GraphPoint(2, 0.5), collar=0.2)
        self.assertFalse(prepares(f1, f2))

    def test_prepares_itself(self):
        f = make_edge_point_field(make_y_graph(), GraphPoint(3, 0.3))
        self.assertTrue(prepares(f, f))


class HybridTestCase(RegularTestCase):

    def setUp(self):
        self.levels = build_levels(make_y_graph(), [1, 2])
        self.controller = make_single_agv_hybrid(self.levels, fields_for_pattern(self.levels))

    def test_transitions_replay_graph_controller(self):
        run = run_hybrid(self.controller, GraphPoint(3, 0.9), t_max=40, dt=0.01, until_transitions=5)
        self.assertEqual([3, 1, 2, 1, 2], edge_transitions(run)[:5])

    def test_transitions_for_all_start_edges(self):
        for start_edge in (1, 2, 3):
            controller = make_single_agv_hybrid(self.levels, fields_for_pattern(self.levels))
            run = run_hybrid(controller, GraphPoint(start_edge, 0.9), t_max=40, dt=0.01, until_transitions=5)
            self.assertEqual(g_iterates(self.levels, start_edge, 5), edge_transitions(run)[:5])

    def test_start_at_goal_switches_immediately(self):
        events = self.controller.start(GraphPoint(1, 0.5))
        self.assertIn("threshold-crossed", [e.kind for e in events])
        self.assertEqual(2, self.controller.active)

    def test_entering_the_successor_edge_switches(self):
        # the field active on edge 1 has its goal on G(1) = 2: the AGV reaches edge 2 while Phi is still above alpha
        fields = fields_for_pattern(self.levels)
        fields[1] = make_edge_point_field(self.levels.graph, GraphPoint(2, 0.5))
        controller = HybridController(self.levels, fields, 0.1)
        p = GraphPoint(1, 0.303)
        controller.start(p)

        events = []
        while "successor-entered" not in [e.kind for e in events] and controller.t < 2.0:
            p, step_events = step_hybrid(controller, p, 0.01)
            events.extend(step_events)

        self.assertEqual(["edge-entered", "successor-entered", "field-activated"], [e.kind for e in events])
        self.assertEqual(2, controller.active)
        self.assertEqual(2, p.edge)
        self.assertAlmostEqual(0.303 / 0.5, events[0].t, delta=1e-8)
        self.assertAlmostEqual(events[0].t, events[2].t, delta=1e-8)

    def test_broken_chain(self):
        fields = fields_for_pattern(self.levels)
        fields[2] = make_edge_point_field(self.levels.graph, GraphPoint(2, 0.5), collar=0.2)
        with self.assertRaises(FieldError):
            make_single_agv_hybrid(self.levels, fields)

    def test_step_near_goal(self):
        self.controller.start(GraphPoint(1, 0.8))
        p, events = step_hybrid(self.controller, GraphPoint(1, 0.8), 1e-3)
        self.assertEqual(1, p.edge)
        self.assertLess(p.value, 0.8)
        self.assertGreater(p.value, 0.5)
        self.assertEqual([], events)

    def test_crossing_time_is_localized(self):
        # v(t) = 0.5 + 0.4 exp(-t) reaches the alpha-threshold (0.25 from the goal) at t = ln(0.4 / 0.25)
        p = GraphPoint(1, 0.9)
        self.controller.start(p)
        crossings = []
        while not crossings:
            p, events = step_hybrid(self.controller, p, 0.01)
            crossings = [e for e in events if e.kind == "threshold-crossed"]
        self.assertAlmostEqual(math.log(0.4 / 0.25), crossings[0].t, delta=1e-8)

    def test_zero_dt(self):
        self.controller.start(GraphPoint(1, 0.8))
        with self.assertRaises(FieldError):
            step_hybrid(self.controller, GraphPoint(1, 0.8), 0)

    def test_outside_all_domains(self):
        levels = build_levels(make_y_graph(), [1, 2])
        fields = fields_for_pattern(levels, collar=0.9)
        controller = make_single_agv_hybrid(levels, fields)
        controller.start(GraphPoint(1, 0.8))
        with self.assertRaises(ViolatedExpectation):
            # edge 2 at 0.95 is beyond the collar of the field that is active on edge 1
            controller.step(GraphPoint(2, 0.95), 0.01)

    def test_random_graphs(self):
        rng = np.random.default_rng(4)
        for _ in range(20):
            g, block = random_graph_and_block(rng)
            levels = build_levels(g, block)
            for start_edge in g.edges:
                if start_edge in levels.leftover:
                    continue
                # a single-edge block is a fixed point of G: the AGV stays, so there is no transition to log
                expected = [e for e, _ in groupby(g_iterates(levels, start_edge, levels.level_of[start_edge] + 4))]
                n = len(expected)
                controller = make_single_agv_hybrid(levels, fields_for_pattern(levels))
                run = run_hybrid(controller, GraphPoint(start_edge, 0.9), t_max=4.0 * n, dt=0.05,
                                 until_transitions=n)
                self.assertEqual(expected, edge_transitions(run)[:n])
