import re

import networkx as nx

from guidepath.exceptions import GraphError, UnknownEdge


CENTER_VERTEX = "v0"

_EDGE_TOKEN = re.compile(r"^e?(\d+)$")


def parse_edge_id(token):
    """Edge ids are ints; in scenario files and on the command line both `e3` and `3` are accepted."""
    if isinstance(token, bool):
        raise UnknownEdge("not an edge id: %r" % token)
    if isinstance(token, int):
        return token

    match = _EDGE_TOKEN.match(str(token).strip())
    if match is None:
        raise UnknownEdge("not an edge id: %r" % token)
    return int(match.group(1))


def format_edge_id(edge_id):
    return "e%d" % edge_id


class Graph:
    """
    A guidepath network: vertices, and edges of unit length between them. Each edge is parametrized by [0, 1] with 0 at
    its first listed endpoint. Immutable after construction.

    Storage is a networkx MultiGraph keyed by edge id (parallel edges between the same two vertices are legal;
    homoclinic edges, i.e. loops, are not).
    """

    def __init__(self, vertices, edges, name=None):
        self.name = name
        self._nx = nx.MultiGraph()
        self._nx.add_nodes_from(vertices)
        self._endpoints = {}

        for edge_id, (u, v) in edges:
            edge_id = parse_edge_id(edge_id)
            if edge_id in self._endpoints:
                raise GraphError("duplicate edge id %s" % format_edge_id(edge_id))
            for vertex in (u, v):
                if vertex not in self._nx:
                    raise GraphError("edge %s references unknown vertex %r" % (format_edge_id(edge_id), vertex))
            if u == v:
                # the pattern layer needs "shares a vertex" to mean something; subdivide such edges before passing them
                raise GraphError("edge %s is homoclinic (both endpoints are %r)" % (format_edge_id(edge_id), u))

            self._endpoints[edge_id] = (u, v)
            self._nx.add_edge(u, v, key=edge_id)

        self._line_graph = None

    def __repr__(self):
        return "<Graph %s: %d vertices, %d edges>" % (self.name or "", len(self.vertices), len(self.edges))

    @property
    def vertices(self):
        return list(self._nx.nodes)

    @property
    def edges(self):
        """Edge ids in ascending order."""
        return sorted(self._endpoints)

    def has_edge(self, edge_id):
        return edge_id in self._endpoints

    def check_edge(self, edge_id):
        if edge_id not in self._endpoints:
            raise UnknownEdge("unknown edge %r" % (edge_id,))
        return edge_id

    def endpoints(self, edge_id):
        return self._endpoints[self.check_edge(edge_id)]

    def degree(self, vertex):
        return self._nx.degree(vertex)

    def incident_edges(self, vertex):
        return sorted(key for _, _, key in self._nx.edges(vertex, keys=True))

    def shares_vertex(self, e_i, e_j):
        return bool(set(self.endpoints(e_i)) & set(self.endpoints(e_j)))

    def shared_vertices(self, e_i, e_j):
        return set(self.endpoints(e_i)) & set(self.endpoints(e_j))

    def line_graph(self):
        """The adjacency of edges: a plain networkx Graph on edge ids, with an edge wherever two ids share a vertex."""
        if self._line_graph is None:
            lg = nx.Graph()
            lg.add_nodes_from(self.edges)
            for vertex in self._nx.nodes:
                incident = self.incident_edges(vertex)
                lg.add_edges_from((a, b) for i, a in enumerate(incident) for b in incident[i + 1:])
            self._line_graph = lg
        return self._line_graph

    def neighbors(self, edge_id):
        """Edges sharing a vertex with `edge_id`, itself excluded, ascending."""
        return sorted(self.line_graph().neighbors(self.check_edge(edge_id)))

    def vertex_distance(self, u, v):
        try:
            return nx.shortest_path_length(self._nx, u, v)
        except nx.NetworkXNoPath:
            return float("inf")

    def to_dict(self):
        return {
            "vertices": self.vertices,
            "edges": [{"id": e, "vertices": list(self._endpoints[e])} for e in self.edges],
        }

    @classmethod
    def from_dict(cls, json_dict):
        try:
            edges = [(e["id"], tuple(e["vertices"])) for e in json_dict["edges"]]
            return cls(json_dict["vertices"], edges)
        except (KeyError, TypeError) as e:
            raise GraphError("malformed graph description: %s" % e) from e


def make_y_graph():
    """The Y-graph: central vertex v0, edges e1, e2, e3 out to the stations v1, v2, v3, each with 0 at v0."""
    return Graph(
        [CENTER_VERTEX, "v1", "v2", "v3"],
        [(i, (CENTER_VERTEX, "v%d" % i)) for i in (1, 2, 3)],
        name="Y",
    )


def shares_vertex(g, e_i, e_j):
    return g.shares_vertex(e_i, e_j)


BUILTIN_GRAPHS = {
    "Y": make_y_graph,
}
