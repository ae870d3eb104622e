from django.core.management.base import BaseCommand

from configspace.grammar import format_word
from flows.profiles import HarmonicProfile
from flows.tuning import tuned_cycle_diagnostics
from guidepath.exceptions import FieldError

from scenarios.cli import EXIT_PARSE, failure, load_scenario
from scenarios.scenario import make_profile


class Command(BaseCommand):
    help = "Diagnostics of the tuned limit cycle r = f(theta): invariance, contraction, and the word it traces."

    def add_arguments(self, parser):
        parser.add_argument("--scenario", help="Take f and omega from this scenario's tuned field")
        parser.add_argument("--a0", type=float, default=1.0)
        parser.add_argument("--cos", type=float, nargs="*", default=[], help="cos(k theta) coefficients, k = 1, 2, ...")
        parser.add_argument("--sin", type=float, nargs="*", default=[], help="sin(k theta) coefficients, k = 1, 2, ...")
        parser.add_argument("--omega", type=float, default=1.0)

    def handle(self, *args, **options):
        if options["scenario"]:
            scenario = load_scenario(options["scenario"])
            if scenario.field is None or scenario.field.kind != "tuned":
                raise failure("parse error", "%s has no tuned field" % options["scenario"], EXIT_PARSE)
            profile, omega = make_profile(scenario.field.harmonics), scenario.field.omega
        else:
            profile, omega = HarmonicProfile(options["a0"], options["cos"], options["sin"]), options["omega"]

        try:
            d = tuned_cycle_diagnostics(profile, omega)
        except FieldError as e:
            raise failure("parse error", e, EXIT_PARSE) from e

        self.stdout.write("period: %.6g" % d.period)
        self.stdout.write("invariance residual: %.3g" % d.invariance_residual)
        self.stdout.write("floquet exponent: %.6g" % d.floquet_exponent)
        self.stdout.write("multiplier: %.6g" % d.multiplier)
        self.stdout.write("estimated multiplier: %.6g" % d.estimated_multiplier)
        self.stdout.write("word: %s" % (format_word(d.word) or "-"))
        self.stdout.write("winding number: %d" % d.winding_number)
        self.stdout.write("W_d: %d" % d.wd_cost)
