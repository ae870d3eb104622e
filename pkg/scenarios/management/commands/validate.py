from django.core.management.base import BaseCommand

from edgefields.hybrid import fields_for_pattern, make_single_agv_hybrid
from flows.validators import validate_config_field
from guidepath.app_settings import get_settings
from guidepath.exceptions import FieldError
from patterns.levels import build_levels

from scenarios.cli import EXIT_VALIDATION, failure, load_scenario
from scenarios.scenario import build_graph, make_field, plan_for


class Command(BaseCommand):
    help = "Check that the scenario's field generates a semiflow: the gluing conditions at the branch locus."

    def add_arguments(self, parser):
        parser.add_argument("--scenario", required=True, help="Path of the scenario file (JSON)")
        parser.add_argument("--samples", type=int, help="Number of branch points to check")
        parser.add_argument("--seed", type=int, help="Seed for the branch points")

    def handle(self, *args, **options):
        scenario = load_scenario(options["scenario"])
        samples = options["samples"] or get_settings().VALIDATE_SAMPLES
        seed = scenario.sim.seed if options["seed"] is None else options["seed"]

        violations = 0
        if scenario.field is not None:
            plan = plan_for(scenario)
            fields = [chord.field for chord in plan.chords] if plan is not None else [make_field(scenario.field)]
            for field in fields:
                report = validate_config_field(field, samples=samples, seed=seed, delta=scenario.sim.delta)
                violations += len(report.violations)
                self.stdout.write("%s: %s (%d branch points)" % (
                    field.name, "valid" if report.valid else "invalid", report.checked))
                for v in report.violations:
                    self.stdout.write("  %s at %s: %s" % (v.kind, v.location, v.detail))

        if scenario.pattern is not None:
            levels = build_levels(build_graph(scenario), scenario.pattern.block)
            try:
                make_single_agv_hybrid(levels, fields_for_pattern(levels, goal_value=scenario.pattern.goal))
                self.stdout.write("edge point fields: each prepares the next")
            except FieldError as e:
                violations += 1
                self.stdout.write("edge point fields: %s" % e)

        if violations:
            raise failure("validation failure", "%d violations" % violations, EXIT_VALIDATION)
