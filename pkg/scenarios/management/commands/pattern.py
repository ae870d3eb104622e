from django.core.management.base import BaseCommand

from graphs.graph import BUILTIN_GRAPHS, format_edge_id, parse_edge_id
from guidepath.exceptions import GraphError, PatternError
from patterns.levels import build_levels, lock_sequence

from scenarios.cli import EXIT_PARSE, EXIT_VALIDATION, failure, load_scenario
from scenarios.scenario import build_graph


def _edges(edges):
    return " ".join(format_edge_id(e) for e in edges) or "none"


class Command(BaseCommand):
    help = "The levels of a repeating block of edges, and the iterates of the graph controller until they lock on."

    def add_arguments(self, parser):
        parser.add_argument("--scenario", help="Take graph, block and start from this scenario's pattern section")
        parser.add_argument("--graph", default="Y", choices=sorted(BUILTIN_GRAPHS))
        parser.add_argument("--block", nargs="+", help="The repeating block, e.g. e1 e2")
        parser.add_argument("--start", help="The start edge, e.g. e3")

    def handle(self, *args, **options):
        if options["scenario"]:
            scenario = load_scenario(options["scenario"])
            if scenario.pattern is None:
                raise failure("parse error", "%s has no pattern section" % options["scenario"], EXIT_PARSE)
            graph, block, start = build_graph(scenario), scenario.pattern.block, scenario.pattern.start

        else:
            if not options["block"] or not options["start"]:
                raise failure("parse error", "--block and --start are needed without --scenario", EXIT_PARSE)
            try:
                graph = BUILTIN_GRAPHS[options["graph"]]()
                block = [parse_edge_id(e) for e in options["block"]]
                start = parse_edge_id(options["start"])
                for e in block + [start]:
                    graph.check_edge(e)
            except GraphError as e:
                raise failure("parse error", e, EXIT_PARSE) from e

        try:
            levels = build_levels(graph, block)
            self.stdout.write("P: %d" % levels.P)
            for p, cell in enumerate(levels.levels):
                self.stdout.write("E%d: %s" % (p, _edges(cell)))
            self.stdout.write("leftover: %s" % _edges(sorted(levels.leftover)))
            self.stdout.write("iterates: %s" % _edges(lock_sequence(levels, start)))
        except PatternError as e:
            raise failure("pattern error", e, EXIT_VALIDATION) from e
