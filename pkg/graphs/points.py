from collections import namedtuple

from guidepath.exceptions import GraphError


# A position on a graph: the edge it is on and the distance from that edge's 0-end. On the Y-graph the 0-end of every
# edge is the center, and the center itself is canonically GraphPoint(None, 0.0).
GraphPoint = namedtuple("GraphPoint", ["edge", "value"])

# A velocity along the unit tangent of `edge` (positive: away from the 0-end). Naming the edge explicitly is what makes
# a velocity at the center well-typed: it says which edge is being moved onto.
Velocity = namedtuple("Velocity", ["edge", "rate"])

CENTER = GraphPoint(None, 0.0)


def canonicalize(p):
    if not 0.0 <= p.value <= 1.0:
        raise GraphError("value %r outside [0, 1]" % (p.value,))
    if p.value == 0:
        return CENTER
    return p


def point(edge, value):
    return canonicalize(GraphPoint(edge, float(value)))


def format_point(p):
    if p.edge is None:
        return "center"
    return "(e%d, %.6g)" % (p.edge, p.value)


def graph_distance(a, b, graph=None):
    """
    Path-metric distance between two points. Without a graph, both points are taken to be on the Y-graph, where any two
    distinct edges meet at the center.
    """
    if a.edge == b.edge:
        return abs(a.value - b.value)

    if graph is None:
        return a.value + b.value

    a_ends = graph.endpoints(a.edge)
    b_ends = graph.endpoints(b.edge)
    best = float("inf")
    for u, to_u in zip(a_ends, (a.value, 1.0 - a.value)):
        for w, to_w in zip(b_ends, (b.value, 1.0 - b.value)):
            best = min(best, to_u + graph.vertex_distance(u, w) + to_w)
    return best
