from django.core.management.base import BaseCommand

from configspace.grammar import format_word, is_monotone, parse_word, zone_midpoint
from configspace.winding import gap_angles, optimal_winding_class
from guidepath.exceptions import ConfigError, GrammarError

from scenarios.cli import EXIT_PARSE, failure, format_angles


class Command(BaseCommand):
    help = "Whether a word of docking symbols is monotone, with its zone angles, gap angles and optimal winding class."

    def add_arguments(self, parser):
        parser.add_argument("tokens", nargs="+", help="Docking symbols, e.g. A1 B2 A3 or AB12")

    def handle(self, *args, **options):
        try:
            word = parse_word(options["tokens"])
        except GrammarError as e:
            raise failure("parse error", e, EXIT_PARSE) from e

        angles = [zone_midpoint(s) for s in word]
        self.stdout.write("word: %s" % format_word(word))
        self.stdout.write("monotone: %s" % ("yes" if is_monotone(word) else "no"))
        self.stdout.write("zone angles: %s" % format_angles(angles))

        try:
            gaps = gap_angles(angles)
        except ConfigError as e:
            # a word that is not monotone need not go around once
            self.stdout.write("gap angles: - (%s)" % e)
            return

        self.stdout.write("gap angles: %s" % format_angles(gaps))
        self.stdout.write("winding class: %s" % optimal_winding_class(gaps))
