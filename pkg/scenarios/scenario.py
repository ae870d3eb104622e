"""
Scenario files: one JSON document per run, validated against scenario.schema.json and then checked for what a schema
cannot express (edge ids that resolve, starts outside the diagonal guard, words that are monotone, ...). Defaults are
applied while parsing, so a parsed Scenario is complete; render_scenario writes it back out with every default spelled
out.
"""
import json
import logging
from collections import namedtuple

import jsonschema
from django.conf import settings

from configspace.configs import make_config
from configspace.grammar import format_word, parse_word
from cycles.controller import ChordController
from cycles.plan import plan_cycle
from flows.base import ReversedField
from flows.circulating import circulating_field
from flows.disc_fields import tuned_cycle_field
from flows.navigation import navigation_field
from flows.profiles import HarmonicProfile
from flows.pushforward import FinCompanionField, PushforwardField
from graphs.graph import BUILTIN_GRAPHS, Graph, format_edge_id, parse_edge_id
from graphs.points import CENTER, point
from guidepath.app_settings import get_settings
from guidepath.exceptions import (
    ConfigError, CycleError, FieldError, GrammarError, GraphError, PatternError, ScenarioError)
from patterns.levels import build_levels


logger = logging.getLogger("guidepath.scenarios")

DEFAULT_CSV = "trajectory.csv"

# a single AGV starts this far along its start edge unless the scenario says otherwise
DEFAULT_PATTERN_NU = 0.9
DEFAULT_PATTERN_GOAL = 0.5

Harmonics = namedtuple("Harmonics", ["a0", "cos", "sin"])

FieldSpec = namedtuple("FieldSpec", [
    "kind",
    "reverse",
    "fins",
    "goal_x",  # navigation
    "goal_y",
    "kappa",
    "harmonics",  # tuned
    "omega",  # tuned and chords
    "word",  # chords
    "epsilon",
    "margin",
    "capture_time",
])

SimSpec = namedtuple("SimSpec", ["t_max", "dt", "delta", "tol", "starts", "random_starts", "seed"])

PatternSpec = namedtuple("PatternSpec", ["block", "start", "nu", "goal", "transitions"])

OutputSpec = namedtuple("OutputSpec", ["csv", "svg"])

# graph is "Y" or a dict of vertices and edges; field or pattern may be None, not both
Scenario = namedtuple("Scenario", ["name", "graph", "field", "sim", "pattern", "output"])


_schema = None


def get_schema():
    global _schema
    if _schema is None:
        schema_filename = settings.BASE_DIR / "scenarios/scenario.schema.json"
        with open(schema_filename, "r") as f:
            _schema = json.loads(f.read())
    return _schema


def _fail(path, message):
    raise ScenarioError("%s: %s" % (path, message))


def _point(data, path):
    if data["nu"] == 0:
        return CENTER
    if data.get("edge") is None:
        _fail(path, "a point off the center needs an edge")
    try:
        return point(parse_edge_id(data["edge"]), data["nu"])
    except GraphError as e:
        _fail(path, str(e))


def _point_json(p):
    if p.edge is None:
        return {"edge": None, "nu": 0.0}
    return {"edge": format_edge_id(p.edge), "nu": p.value}


def _graph(data):
    if data is None or data == "Y":
        return "Y"
    try:
        return Graph.from_dict(data).to_dict()
    except GraphError as e:
        _fail("$.graph", str(e))


def build_graph(scenario):
    if scenario.graph in BUILTIN_GRAPHS:
        return BUILTIN_GRAPHS[scenario.graph]()
    return Graph.from_dict(scenario.graph)


def _check_y_edges(p, path):
    if p.edge is not None and p.edge not in (1, 2, 3):
        _fail(path, "the Y-graph has edges e1, e2 and e3, not %s" % format_edge_id(p.edge))
    return p


def _field(data):
    s = get_settings()
    kind = data["kind"]
    spec = FieldSpec(
        kind=kind, reverse=data.get("reverse", False), fins=data.get("fins", True),
        goal_x=None, goal_y=None, kappa=None, harmonics=None, omega=None, word=None, epsilon=None, margin=None,
        capture_time=None)

    if kind == "navigation":
        for key in ["goal_x", "goal_y"]:
            if key not in data:
                _fail("$.field", "navigation fields need '%s'" % key)
        spec = spec._replace(
            goal_x=_check_y_edges(_point(data["goal_x"], "$.field.goal_x"), "$.field.goal_x"),
            goal_y=_check_y_edges(_point(data["goal_y"], "$.field.goal_y"), "$.field.goal_y"),
            kappa=data.get("kappa", s.NAVIGATION_KAPPA))

    elif kind == "tuned":
        if "f_harmonics" not in data:
            _fail("$.field", "tuned fields need 'f_harmonics'")
        h = data["f_harmonics"]
        spec = spec._replace(
            harmonics=Harmonics(h["a0"], tuple(h.get("cos", ())), tuple(h.get("sin", ()))),
            omega=data.get("omega", 1.0))

    elif kind == "chords":
        if "word" not in data:
            _fail("$.field", "chord fields need 'word'")
        if spec.reverse:
            _fail("$.field.reverse", "chord fields cannot be reversed")
        try:
            word = tuple(parse_word(data["word"]))
        except GrammarError as e:
            _fail("$.field.word", str(e))
        spec = spec._replace(
            word=word, omega=data.get("omega", s.CHORD_OMEGA), epsilon=data.get("epsilon", s.EPSILON),
            margin=data.get("margin", s.ARC_MARGIN), capture_time=data.get("capture_time", s.CAPTURE_TIME))

    return spec


def _sim(data):
    s = get_settings()
    delta = data.get("delta", s.DELTA)

    starts = []
    for k, start in enumerate(data.get("starts", [])):
        path = "$.sim.starts[%d]" % k
        x = _check_y_edges(_point(start["x"], path + ".x"), path + ".x")
        y = _check_y_edges(_point(start["y"], path + ".y"), path + ".y")
        try:
            starts.append(make_config(x, y, delta))
        except ConfigError as e:
            _fail(path, str(e))

    return SimSpec(
        t_max=data.get("t_max", s.T_MAX),
        dt=data.get("dt", s.DT),
        delta=delta,
        tol=data.get("tol", s.DOCK_TOL),
        starts=tuple(starts),
        random_starts=data.get("random_starts", 0 if starts else 1),
        seed=data.get("seed", s.SEED),
    )


def _pattern(data):
    try:
        block = tuple(parse_edge_id(e) for e in data["block"])
        start = parse_edge_id(data["start"])
    except GraphError as e:
        _fail("$.pattern", str(e))
    return PatternSpec(
        block=block, start=start, nu=data.get("nu", DEFAULT_PATTERN_NU), goal=data.get("goal", DEFAULT_PATTERN_GOAL),
        transitions=data.get("transitions"))


def make_profile(harmonics):
    return HarmonicProfile(harmonics.a0, harmonics.cos, harmonics.sin)


def plan_for(scenario):
    """The chord plan of a chords scenario; None for every other kind."""
    spec = scenario.field
    if spec is None or spec.kind != "chords":
        return None
    return plan_cycle(spec.word, epsilon=spec.epsilon, margin=spec.margin, omega=spec.omega)


def make_field(spec, plan=None):
    """A fresh field for one run. Chord controllers carry mode state, so every run needs its own."""
    if spec.kind == "chords":
        return ChordController(plan, capture_time=spec.capture_time)

    if spec.kind == "circulating":
        field = circulating_field()
    elif spec.kind == "navigation":
        field = navigation_field(spec.goal_x, spec.goal_y, kappa=spec.kappa)
        if not spec.fins:
            field = field.field
    elif spec.kind == "tuned":
        field = PushforwardField(tuned_cycle_field(make_profile(spec.harmonics), spec.omega), name="tuned")
        if spec.fins:
            field = FinCompanionField(field, name="tuned")
    else:
        raise FieldError("unknown field kind %r" % (spec.kind,))

    return ReversedField(field) if spec.reverse else field


def _check(scenario):
    if scenario.field is not None:
        if scenario.graph != "Y":
            _fail("$.graph", "fields on the configuration space need the Y-graph")
        try:
            make_field(scenario.field, plan_for(scenario))
        except (FieldError, CycleError) as e:
            _fail("$.field", str(e))

    if scenario.pattern is not None:
        try:
            graph = build_graph(scenario)
            graph.check_edge(scenario.pattern.start)
            build_levels(graph, scenario.pattern.block)
        except (GraphError, PatternError) as e:
            _fail("$.pattern", str(e))


def parse_scenario(text, name=None):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError("line %d column %d: %s" % (e.lineno, e.colno, e.msg)) from e

    best = jsonschema.exceptions.best_match(jsonschema.Draft7Validator(get_schema()).iter_errors(data))
    if best is not None:
        raise ScenarioError("%s: %s" % (best.json_path, best.message))

    output = data.get("output", {})
    scenario = Scenario(
        name=data.get("name", name),
        graph=_graph(data.get("graph")),
        field=_field(data["field"]) if "field" in data else None,
        sim=_sim(data.get("sim", {})),
        pattern=_pattern(data["pattern"]) if "pattern" in data else None,
        output=OutputSpec(csv=output.get("csv", DEFAULT_CSV), svg=output.get("svg")),
    )
    _check(scenario)

    logger.debug("parsed scenario %s", scenario.name)
    return scenario


def _field_json(spec):
    data = {"kind": spec.kind, "reverse": spec.reverse, "fins": spec.fins}
    if spec.goal_x is not None:
        data["goal_x"] = _point_json(spec.goal_x)
        data["goal_y"] = _point_json(spec.goal_y)
    if spec.harmonics is not None:
        data["f_harmonics"] = {
            "a0": spec.harmonics.a0, "cos": list(spec.harmonics.cos), "sin": list(spec.harmonics.sin)}
    if spec.word is not None:
        data["word"] = format_word(spec.word)
    for key in ["kappa", "omega", "epsilon", "margin", "capture_time"]:
        if getattr(spec, key) is not None:
            data[key] = getattr(spec, key)
    return data


def render_scenario(scenario):
    """The scenario as a JSON document that parses back to the same Scenario."""
    sim = scenario.sim
    data = {
        "graph": scenario.graph,
        "sim": {
            "t_max": sim.t_max,
            "dt": sim.dt,
            "delta": sim.delta,
            "tol": sim.tol,
            "starts": [{"x": _point_json(c.x), "y": _point_json(c.y)} for c in sim.starts],
            "random_starts": sim.random_starts,
            "seed": sim.seed,
        },
        "output": {"csv": scenario.output.csv},
    }
    if scenario.name is not None:
        data["name"] = scenario.name
    if scenario.field is not None:
        data["field"] = _field_json(scenario.field)
    if scenario.pattern is not None:
        p = scenario.pattern
        data["pattern"] = {
            "block": [format_edge_id(e) for e in p.block], "start": format_edge_id(p.start), "nu": p.nu, "goal": p.goal}
        if p.transitions is not None:
            data["pattern"]["transitions"] = p.transitions
    if scenario.output.svg is not None:
        data["output"]["svg"] = scenario.output.svg
    return json.dumps(data, indent=2)
