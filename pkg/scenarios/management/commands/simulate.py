import logging

from django.core.management.base import BaseCommand

from edgefields.hybrid import edge_transitions, fields_for_pattern, make_single_agv_hybrid, run_hybrid
from graphs.graph import format_edge_id
from graphs.points import point
from guidepath.exceptions import FieldError, PatternError, SafetyViolation
from patterns.levels import build_levels, g_iterates

from scenarios.batch import run_batch
from scenarios.cli import EXIT_FAILURE, EXIT_SAFETY, EXIT_VALIDATION, failure, load_scenario
from scenarios.export import numbered_path, write_hybrid_csv, write_trajectory_csv
from scenarios.scenario import build_graph, plan_for
from scenarios.starts import starts_for
from scenarios.summary import format_summary, summarize
from scenarios.svg import write_disc_svg


logger = logging.getLogger("guidepath.scenarios")


class Command(BaseCommand):
    help = "Integrate a scenario from its starts; write the trajectories as CSV (and SVG), and a summary per start."

    def add_arguments(self, parser):
        parser.add_argument("--scenario", required=True, help="Path of the scenario file (JSON)")
        parser.add_argument("--out", help="CSV path; overrides the scenario's output.csv")
        parser.add_argument("--svg", help="SVG path; overrides the scenario's output.svg")
        parser.add_argument("--seed", type=int, help="Seed for the random starts")
        parser.add_argument("--starts", type=int, help="Run from this many random starts instead")

    def handle(self, *args, **options):
        scenario = load_scenario(options["scenario"])
        csv_path = options["out"] or scenario.output.csv
        svg_path = options["svg"] or scenario.output.svg

        if scenario.field is None:
            self.handle_pattern(scenario, csv_path)
            return

        plan = plan_for(scenario)
        starts = starts_for(scenario, n=options["starts"], seed=options["seed"])
        logger.info("simulating %s (%s field) from %d starts", scenario.name, scenario.field.kind, len(starts))

        runs = run_batch(scenario, starts, plan=plan)

        # a single writer, in the order of the starts
        for run in runs:
            write_trajectory_csv(run.trajectory, numbered_path(csv_path, run.index, len(runs)), scenario.sim.tol)
            self.stdout.write(format_summary(summarize(run, scenario.field, plan)))

        if svg_path:
            write_disc_svg(svg_path, [run.trajectory for run in runs], plan=plan, tol=scenario.sim.tol,
                           title=scenario.name)

        failed = [run for run in runs if run.failure is not None]
        if not failed:
            return

        run = failed[0]
        if isinstance(run.failure, SafetyViolation):
            raise failure("safety violation", "start %d: t=%.9f %s" % (run.index, run.failure.t, run.failure.config),
                          EXIT_SAFETY)
        raise failure("capture failure", "start %d: %s" % (run.index, run.failure), EXIT_FAILURE)

    def handle_pattern(self, scenario, csv_path):
        spec = scenario.pattern
        levels = build_levels(build_graph(scenario), spec.block)
        try:
            levels.check_reachable(spec.start)
        except PatternError as e:
            raise failure("pattern error", e, EXIT_VALIDATION) from e
        try:
            controller = make_single_agv_hybrid(levels, fields_for_pattern(levels, goal_value=spec.goal))
        except FieldError as e:
            raise failure("validation failure", e, EXIT_VALIDATION) from e

        transitions = spec.transitions or levels.level_of[spec.start] + 2 * len(spec.block) + 1
        run = run_hybrid(controller, point(spec.start, spec.nu), t_max=scenario.sim.t_max, dt=scenario.sim.dt,
                         until_transitions=transitions)
        write_hybrid_csv(run, csv_path)

        edges = edge_transitions(run)
        expected = g_iterates(levels, spec.start, len(edges))
        self.stdout.write("edges: %s" % " ".join(format_edge_id(e) for e in edges))
        self.stdout.write("graph controller: %s" % ("replayed" if edges == expected else "not replayed"))
