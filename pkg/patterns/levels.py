import logging

import networkx as nx

from graphs.graph import format_edge_id
from guidepath.exceptions import PatternError

from .language import is_cyclic_excursion, m_block_extension


logger = logging.getLogger("guidepath.patterns")


class PatternLevels:
    """
    The partition of a graph's edges by how many steps they are removed from a repeating block B:

    * E^0 is the set of block edges, ordered by (first) position in the block;
    * E^{p+1} is every edge not yet placed that shares a vertex with some edge in E^p, ordered by ascending id;
    * edges from which E^0 cannot be reached are `leftover`.

    Immutable after construction (use `build_levels`).
    """

    def __init__(self, graph, block, levels):
        self.graph = graph
        self.block = tuple(block)
        self.levels = tuple(tuple(cell) for cell in levels)
        self.level_of = {e: p for p, cell in enumerate(self.levels) for e in cell}
        self.leftover = frozenset(e for e in graph.edges if e not in self.level_of)

    @property
    def P(self):
        return len(self.levels) - 1

    @property
    def cell_sizes(self):
        return [len(cell) for cell in self.levels]

    def check_reachable(self, edge):
        self.graph.check_edge(edge)
        if edge in self.leftover:
            raise PatternError("edge %s cannot reach the pattern (leftover)" % format_edge_id(edge))

    def __repr__(self):
        return "<PatternLevels block=%s levels=%s leftover=%s>" % (
            list(self.block), [list(c) for c in self.levels], sorted(self.leftover))


def build_levels(g, block):
    block = list(block)
    if not is_cyclic_excursion(g, block):
        raise PatternError("block %s is not a cyclic excursion" % " ".join(format_edge_id(e) for e in block))

    # dict.fromkeys: ordered dedup, i.e. first-occurrence position
    e0 = list(dict.fromkeys(block))

    layers = list(nx.bfs_layers(g.line_graph(), e0))
    levels = [e0] + [sorted(layer) for layer in layers[1:]]
    return PatternLevels(g, block, levels)


def successor(levels, edge):
    """The least legal successor: the next block edge (cyclically) on level 0, otherwise the first-ordered edge of the
    level below that shares a vertex with `edge`."""
    levels.check_reachable(edge)
    p = levels.level_of[edge]

    if p == 0:
        i = levels.block.index(edge)
        return levels.block[(i + 1) % len(levels.block)]

    for candidate in levels.levels[p - 1]:
        if levels.graph.shares_vertex(edge, candidate):
            return candidate

    # by construction of the levels every edge in E^p touches E^{p-1}
    raise AssertionError("edge %s on level %d has no neighbor below" % (format_edge_id(edge), p))


def graph_controller(levels, edge):
    return successor(levels, edge)


def g_iterates(levels, start, n):
    """`start` followed by n - 1 iterates of the graph controller."""
    levels.check_reachable(start)
    result = [start]
    while len(result) < n:
        result.append(graph_controller(levels, result[-1]))
    return result


def steps_to_pattern(levels, start):
    """Number of iterates of G after which the trajectory's M-block extension is the repeated block."""
    levels.check_reachable(start)
    M = len(levels.block)

    steps, current = 0, start
    while levels.level_of[current] != 0:
        current = graph_controller(levels, current)
        steps += 1
        if steps > len(levels.graph.edges):
            raise AssertionError("graph controller failed to descend from %s" % format_edge_id(start))

    # with a repeating block entry G follows the first occurrence, so we check the lock rather than assume it
    tail = g_iterates(levels, current, 2 * M)
    rotations = m_block_extension(list(levels.block) * 2, M)
    if not all(window in rotations for window in m_block_extension(tail, M)):
        logger.info("pattern %s does not lock from %s; it cycles through the first occurrences",
                    list(levels.block), format_edge_id(start))
    return steps


def lock_sequence(levels, start):
    """The iterate sequence shown to users: the descent onto the block followed by two full block periods."""
    return g_iterates(levels, start, steps_to_pattern(levels, start) + 2 * len(levels.block))
