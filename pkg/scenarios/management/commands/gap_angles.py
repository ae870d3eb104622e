import math

from django.core.management.base import BaseCommand

from configspace.grammar import parse_word, zone_midpoint
from configspace.winding import brute_force_agrees, gap_angles, optimal_winding_class, winding_class_costs
from guidepath.exceptions import ConfigError, GrammarError

from scenarios.cli import EXIT_PARSE, EXIT_VALIDATION, failure, format_angles


class Command(BaseCommand):
    help = (
        "Gap angles between consecutive docking points and the winding class of the cheapest cycle through them; "
        "optionally checked against a shortest-path search over grid polylines through the points.")

    def add_arguments(self, parser):
        parser.add_argument("tokens", nargs="*", help="Docking symbols, e.g. A1 B2 A3")
        parser.add_argument("--angles", type=float, nargs="+", help="Docking angles (radians) instead of symbols")
        parser.add_argument("--brute-force", action="store_true", help="Search grid cycles and compare their W_d costs")
        parser.add_argument("--grid", type=float, default=math.pi / 90, help="Angular grid of the search")

    def handle(self, *args, **options):
        try:
            if options["angles"]:
                angles = options["angles"]
            elif options["tokens"]:
                angles = [zone_midpoint(s) for s in parse_word(options["tokens"])]
            else:
                raise GrammarError("give docking symbols or --angles")
            gaps = gap_angles(angles)
        except (GrammarError, ConfigError) as e:
            raise failure("parse error", e, EXIT_PARSE) from e

        self.stdout.write("angles: %s" % format_angles(angles))
        self.stdout.write("gap angles: %s" % format_angles(gaps))
        self.stdout.write("largest gap: %.6f (%s pi)" % (max(gaps), "above" if max(gaps) > math.pi else "not above"))
        self.stdout.write("winding class: %s" % optimal_winding_class(gaps))

        if not options["brute_force"]:
            return

        for cls, (cost, description) in sorted(winding_class_costs(angles, options["grid"]).items()):
            self.stdout.write("cheapest %s: W_d %d (%s)" % (cls, cost, description))

        if not brute_force_agrees(angles, options["grid"]):
            raise failure("validation failure", "the grid search finds a cheaper winding class", EXIT_VALIDATION)
        self.stdout.write("grid search agrees")
