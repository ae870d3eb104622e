import json
import os
import tempfile
from io import StringIO
from unittest import TestCase as RegularTestCase

import pandas as pd
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from configspace.configs import Config, cell_of, separation
from configspace.grammar import parse_word
from cycles.controller import ChordController
from flows.base import ReversedField
from flows.pushforward import FinCompanionField, PushforwardField
from flows.trajectory import Trajectory
from graphs.points import CENTER, point
from guidepath.exceptions import ScenarioError

from .export import TRAJECTORY_COLUMNS, numbered_path, trajectory_rows
from .scenario import make_field, parse_scenario, plan_for, render_scenario
from .starts import CELLS, random_starts, starts_for


def c(x, y):
    return Config(point(*x) if x is not None else CENTER, point(*y) if y is not None else CENTER)


def scenario_text(**sections):
    return json.dumps(sections)


CIRCULATING = {
    "field": {"kind": "circulating"},
    "sim": {"t_max": 60.0, "dt": 0.01, "starts": [{"x": {"edge": "e1", "nu": 0.2}, "y": {"edge": "e1", "nu": 0.6}}]},
}

CHORDS = {
    "field": {"kind": "chords", "word": "A1 B2 A3"},
    "sim": {"t_max": 40.0, "dt": 0.01, "starts": [{"x": {"edge": 1, "nu": 0.5}, "y": {"edge": 2, "nu": 0.5}}]},
}

NAVIGATION = {
    "field": {"kind": "navigation", "goal_x": {"edge": "e1", "nu": 0.5}, "goal_y": {"edge": "e2", "nu": 0.5}},
    "sim": {"random_starts": 2, "seed": 4},
}

TUNED = {
    "field": {"kind": "tuned", "f_harmonics": {"a0": 0.5, "sin": [0.1]}, "omega": -1.0, "fins": False},
    "output": {"csv": "tuned.csv", "svg": "tuned.svg"},
}

PATTERN = {
    "name": "pattern on Y",
    "pattern": {"block": ["e1", "e2"], "start": "e3"},
    "sim": {"t_max": 40.0, "dt": 0.01},
}

DISCONNECTED = {
    "graph": {
        "vertices": ["v0", "v1", "v2", "v4", "v5"],
        "edges": [{"id": 1, "vertices": ["v0", "v1"]}, {"id": 2, "vertices": ["v0", "v2"]},
                  {"id": 3, "vertices": ["v4", "v5"]}],
    },
    "pattern": {"block": [1, 2], "start": 3},
}


class ScenarioTestCase(RegularTestCase):

    def test_defaults(self):
        scenario = parse_scenario(scenario_text(field={"kind": "circulating"}))
        self.assertEqual(1e-3, scenario.sim.dt)
        self.assertEqual(0.02, scenario.sim.delta)
        self.assertEqual(50.0, scenario.sim.t_max)
        self.assertEqual((), scenario.sim.starts)
        self.assertEqual(1, scenario.sim.random_starts)
        self.assertEqual("Y", scenario.graph)
        self.assertEqual("trajectory.csv", scenario.output.csv)
        self.assertIsNone(scenario.pattern)

    def test_chord_defaults(self):
        scenario = parse_scenario(scenario_text(**CHORDS))
        self.assertEqual(tuple(parse_word("A1 B2 A3")), scenario.field.word)
        self.assertEqual(0.05, scenario.field.epsilon)
        self.assertEqual(0.35, scenario.field.margin)
        self.assertEqual((c((1, 0.5), (2, 0.5)),), scenario.sim.starts)
        self.assertEqual(0, scenario.sim.random_starts)

    def test_unknown_kind(self):
        with self.assertRaises(ScenarioError) as cm:
            parse_scenario(scenario_text(field={"kind": "vortex"}))
        self.assertIn("$.field.kind", str(cm.exception))
        self.assertIn("vortex", str(cm.exception))

    def test_unknown_key(self):
        with self.assertRaises(ScenarioError) as cm:
            parse_scenario(scenario_text(field={"kind": "circulating", "speed": 2}))
        self.assertIn("speed", str(cm.exception))

    def test_most_relevant_error_is_reported(self):
        # an unknown top-level key outranks the bad kind nested in the field section
        with self.assertRaises(ScenarioError) as cm:
            parse_scenario(scenario_text(field={"kind": "vortex"}, speed=2))
        self.assertTrue(str(cm.exception).startswith("$: "), str(cm.exception))
        self.assertIn("speed", str(cm.exception))

    def test_empty_field(self):
        with self.assertRaises(ScenarioError) as cm:
            parse_scenario(scenario_text(field={}))
        self.assertIn("kind", str(cm.exception))

    def test_nothing_to_run(self):
        with self.assertRaises(ScenarioError):
            parse_scenario(scenario_text(sim={"t_max": 1.0}))

    def test_bad_token(self):
        with self.assertRaises(ScenarioError) as cm:
            parse_scenario(scenario_text(field={"kind": "chords", "word": "A1 AB11"}))
        self.assertIn("$.field.word", str(cm.exception))
        self.assertIn("AB11", str(cm.exception))

    def test_not_monotone(self):
        with self.assertRaises(ScenarioError) as cm:
            parse_scenario(scenario_text(field={"kind": "chords", "word": ["A1", "A3", "B2"]}))
        self.assertIn("not a monotone word", str(cm.exception))

    def test_not_json(self):
        with self.assertRaises(ScenarioError) as cm:
            parse_scenario('{\n  "field": {"kind": "circulating"},\n}')
        self.assertTrue(str(cm.exception).startswith("line 3 column 1"), str(cm.exception))

    def test_start_inside_the_guard(self):
        start = {"x": {"edge": "e1", "nu": 0.5}, "y": {"edge": "e1", "nu": 0.51}}
        with self.assertRaises(ScenarioError) as cm:
            parse_scenario(scenario_text(field={"kind": "circulating"}, sim={"starts": [start]}))
        self.assertIn("$.sim.starts[0]", str(cm.exception))

    def test_no_such_edge(self):
        start = {"x": {"edge": "e4", "nu": 0.5}, "y": {"edge": "e1", "nu": 0.5}}
        with self.assertRaises(ScenarioError) as cm:
            parse_scenario(scenario_text(field={"kind": "circulating"}, sim={"starts": [start]}))
        self.assertIn("e4", str(cm.exception))

    def test_navigation_needs_goals(self):
        with self.assertRaises(ScenarioError):
            parse_scenario(scenario_text(field={"kind": "navigation", "goal_x": {"edge": 1, "nu": 0.5}}))

    def test_fields_need_the_y_graph(self):
        with self.assertRaises(ScenarioError):
            parse_scenario(scenario_text(graph=DISCONNECTED["graph"], field={"kind": "circulating"}))

    def test_chords_cannot_be_reversed(self):
        with self.assertRaises(ScenarioError):
            parse_scenario(scenario_text(field={"kind": "chords", "word": "A1 B2", "reverse": True}))

    def test_round_trip(self):
        for sections in [CIRCULATING, CHORDS, NAVIGATION, TUNED, PATTERN, DISCONNECTED]:
            scenario = parse_scenario(scenario_text(**sections), name="round trip")
            self.assertEqual(scenario, parse_scenario(render_scenario(scenario)))

    def test_fields(self):
        self.assertIsInstance(make_field(parse_scenario(scenario_text(**TUNED)).field), PushforwardField)

        reversed_tuned = dict(TUNED, field=dict(TUNED["field"], fins=True, reverse=True))
        field = make_field(parse_scenario(scenario_text(**reversed_tuned)).field)
        self.assertIsInstance(field, ReversedField)
        self.assertIsInstance(field.field, FinCompanionField)

        scenario = parse_scenario(scenario_text(**CHORDS))
        plan = plan_for(scenario)
        self.assertEqual(3, len(plan.chords))
        self.assertIsInstance(make_field(scenario.field, plan), ChordController)
        self.assertIsNone(plan_for(parse_scenario(scenario_text(**CIRCULATING))))


class StartsTestCase(RegularTestCase):

    def test_reproducible(self):
        self.assertEqual(random_starts(20, 3, 0.02), random_starts(20, 3, 0.02))
        self.assertNotEqual(random_starts(20, 3, 0.02), random_starts(20, 4, 0.02))

    def test_outside_the_guard(self):
        starts = random_starts(300, 1, 0.1)
        self.assertTrue(all(separation(start) >= 0.1 for start in starts))

    def test_every_cell(self):
        self.assertEqual(set(CELLS), {cell_of(start) for start in random_starts(300, 2, 0.02)})

    def test_starts_for(self):
        scenario = parse_scenario(scenario_text(**dict(CIRCULATING, sim=dict(CIRCULATING["sim"], random_starts=2))))
        starts = starts_for(scenario)
        self.assertEqual(3, len(starts))
        self.assertEqual(c((1, 0.2), (1, 0.6)), starts[0])

        self.assertEqual(random_starts(5, 9, 0.02), starts_for(scenario, n=5, seed=9))


class ExportTestCase(RegularTestCase):

    def test_numbered_path(self):
        self.assertEqual("out/run.csv", numbered_path("out/run.csv", 0, 1))
        self.assertEqual("out/run-2.csv", numbered_path("out/run.csv", 2, 3))

    def test_rows(self):
        trajectory = Trajectory("rows", 0.1)
        trajectory.add_sample(0.0, c((1, 1.0), (2, 0.5)))
        trajectory.add_sample(0.1, c((1, 0.2), (1, 0.6)))
        trajectory.add_event(0.05, "cell-change", {"from": "Square(1,2)", "to": "Fin(1,x<y)"}, c((1, 0.3), (1, 0.6)))

        rows = trajectory_rows(trajectory, 0.05)
        self.assertEqual(3, len(rows))
        self.assertEqual(len(TRAJECTORY_COLUMNS), len(rows[0]))
        self.assertEqual([0.0, 0.05, 0.1], [row[0] for row in rows])

        self.assertEqual([0.0, 1, 1.0, 2, 0.5, "Square(1,2)"], rows[0][:6])
        self.assertEqual("A1", rows[0][-1])
        self.assertEqual("cell-change from=Square(1,2) to=Fin(1,x<y)", rows[1][-2])
        self.assertEqual("Fin(1,x<y)", rows[2][5])


class CommandTestCase(SimpleTestCase):

    def setUp(self):
        self.tempdir = tempfile.TemporaryDirectory()
        self.addCleanup(self.tempdir.cleanup)

    def path(self, name):
        return os.path.join(self.tempdir.name, name)

    def scenario_file(self, sections, name="scenario.json"):
        with open(self.path(name), "w") as f:
            f.write(scenario_text(**sections))
        return self.path(name)

    def call(self, *args, **kwargs):
        out = StringIO()
        call_command(*args, stdout=out, **kwargs)
        return out.getvalue()

    def test_simulate_circulating(self):
        out = self.call("simulate", scenario=self.scenario_file(CIRCULATING), out=self.path("c.csv"))

        frame = pd.read_csv(self.path("c.csv"), keep_default_na=False)
        self.assertEqual(TRAJECTORY_COLUMNS, list(frame.columns))

        ccw = ["Square(1,3)", "Square(1,2)", "Square(3,2)", "Square(3,1)", "Square(2,1)", "Square(2,3)"]
        events = [e for e in frame["event"] if e.startswith("cell-change")]
        cells = [e.split("to=")[1] for e in events][-12:]
        self.assertEqual(12, len(cells))
        for a, b in zip(cells, cells[1:]):
            self.assertEqual(ccw[(ccw.index(a) + 1) % 6], b)

        word = out.split("word ")[1].split(";")[0]
        self.assertEqual(12, len(word.split()))
        self.assertIn("W_d 6", out)

    def test_simulate_chords(self):
        out = self.call("simulate", scenario=self.scenario_file(CHORDS), out=self.path("chords.csv"),
                        svg=self.path("chords.svg"))

        self.assertIn("start 0: word A1 B2 A3;", out)
        # the orbit turns around where Psi drops below epsilon; printed with 6 digits that may read as 0.05
        cycle_error = float(out.split("cycle error ")[1].split()[0])
        self.assertLessEqual(cycle_error, 0.05)

        with open(self.path("chords.svg")) as f:
            svg = f.read()
        self.assertIn('viewBox="0 0 800 800"', svg)
        self.assertIn(">AB12<", svg)

        frame = pd.read_csv(self.path("chords.csv"), keep_default_na=False)
        self.assertTrue(any(e.startswith("switch") for e in frame["event"]))

    def test_simulate_safety_violation(self):
        adversarial = dict(CIRCULATING, field={"kind": "circulating", "reverse": True})
        with self.assertRaises(CommandError) as cm:
            self.call("simulate", scenario=self.scenario_file(adversarial), out=self.path("r.csv"))

        self.assertEqual(3, cm.exception.returncode)
        self.assertTrue(str(cm.exception).startswith("safety violation: start 0: t="))
        # the partial trajectory is written all the same
        self.assertTrue(os.path.exists(self.path("r.csv")))

    def test_simulate_many_starts(self):
        sections = dict(NAVIGATION, sim={"t_max": 1.0, "dt": 0.01})
        scenario = self.scenario_file(sections)
        for directory in ["a", "b"]:
            os.mkdir(self.path(directory))
            self.call("simulate", scenario=scenario, out=self.path(directory + "/n.csv"), starts=3, seed=11)

        for k in range(3):
            with open(self.path("a/n-%d.csv" % k), "rb") as a, open(self.path("b/n-%d.csv" % k), "rb") as b:
                self.assertEqual(a.read(), b.read())
        self.assertFalse(os.path.exists(self.path("a/n-3.csv")))

    def test_simulate_pattern(self):
        out = self.call("simulate", scenario=self.scenario_file(PATTERN), out=self.path("p.csv"))

        self.assertIn("edges: e3 e1 e2 e1 e2 e1", out)
        self.assertIn("graph controller: replayed", out)
        frame = pd.read_csv(self.path("p.csv"), keep_default_na=False)
        self.assertEqual(["t", "edge", "nu", "event", "field"], list(frame.columns))

    def test_simulate_missing_file(self):
        with self.assertRaises(CommandError) as cm:
            self.call("simulate", scenario=self.path("missing.json"))
        self.assertEqual(4, cm.exception.returncode)
        self.assertTrue(str(cm.exception).startswith("parse error: "))

    def test_simulate_parse_error(self):
        with self.assertRaises(CommandError) as cm:
            self.call("simulate", scenario=self.scenario_file({"field": {"kind": "vortex"}}))
        self.assertEqual(4, cm.exception.returncode)
        self.assertNotIn("\n", str(cm.exception))

    def test_validate(self):
        out = self.call("validate", scenario=self.scenario_file(CIRCULATING), samples=100)
        self.assertIn("circulating: valid (100 branch points)", out)

    def test_validate_uncovered_fins(self):
        out = StringIO()
        with self.assertRaises(CommandError) as cm:
            call_command("validate", scenario=self.scenario_file(TUNED), samples=20, stdout=out)

        self.assertEqual(2, cm.exception.returncode)
        self.assertIn("tuned: invalid", out.getvalue())
        self.assertIn("coverage at x=center", out.getvalue())

    def test_check_word(self):
        out = self.call("check_word", "A1", "B2", "A3")
        self.assertIn("monotone: yes", out)
        self.assertIn("gap angles: 1.047198 1.047198 4.188790", out)
        self.assertIn("winding class: Zero", out)

        self.assertIn("monotone: no", self.call("check_word", "A1", "A3", "B2"))

        out = self.call("check_word", "A1")
        self.assertIn("monotone: yes", out)
        self.assertIn("gap angles: 6.283185", out)
        self.assertIn("winding class: Zero", out)

    def test_check_word_bad_token(self):
        with self.assertRaises(CommandError) as cm:
            self.call("check_word", "A1", "AB11")
        self.assertEqual(4, cm.exception.returncode)

    def test_pattern(self):
        out = self.call("pattern", block=["e1", "e2"], start="e3")
        self.assertIn("E0: e1 e2", out)
        self.assertIn("E1: e3", out)
        self.assertIn("leftover: none", out)
        self.assertIn("iterates: e3 e1 e2 e1 e2", out)

        self.assertIn("P: 0", self.call("pattern", block=["e1", "e2", "e3"], start="e1"))

    def test_pattern_leftover_start(self):
        with self.assertRaises(CommandError) as cm:
            self.call("pattern", scenario=self.scenario_file(DISCONNECTED))
        self.assertEqual(2, cm.exception.returncode)
        self.assertIn("leftover", str(cm.exception))

    def test_tune(self):
        out = self.call("tune", a0=1.0)
        self.assertIn("floquet exponent: -1", out)
        self.assertIn("winding number: 1", out)

        out = self.call("tune", scenario=self.scenario_file(dict(TUNED, field=dict(TUNED["field"], fins=True))))
        self.assertIn("winding number: -1", out)
        self.assertIn("word: -", out)

    def test_tune_profile_outside_the_disc(self):
        with self.assertRaises(CommandError) as cm:
            self.call("tune", a0=1.2)
        self.assertEqual(4, cm.exception.returncode)

    def test_gap_angles(self):
        out = self.call("gap_angles", angles=[0.3, 1.2, 2.0], brute_force=True)
        self.assertIn("winding class: Zero", out)
        self.assertIn("grid search agrees", out)
        self.assertIn("cheapest Zero: W_d 2 (reversed chords 2)", out)

        out = self.call("gap_angles", "A1", "AB32", "B1", "AB23")
        self.assertIn("winding class: PlusMinusOne", out)
