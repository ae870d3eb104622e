"""CSV output: trajectories of the two-AGV system, and the event logs of single-AGV hybrid runs."""
import math
import os

import pandas as pd

from configspace.configs import FIN, cell_of, format_cell
from configspace.disc import to_disc
from configspace.grammar import format_symbol, visit_symbol
from flows.trajectory import format_event
from graphs.graph import format_edge_id


TRAJECTORY_COLUMNS = ["t", "iota_x", "nu_x", "iota_y", "nu_y", "cell", "r", "theta", "event", "symbol"]

HYBRID_COLUMNS = ["t", "edge", "nu", "event", "field"]

FLOAT_FORMAT = "%.9g"


def numbered_path(path, k, n):
    """With more than one start, the file of start k is `<root>-<k><ext>`."""
    if n == 1:
        return path
    root, ext = os.path.splitext(path)
    return "%s-%d%s" % (root, k, ext)


def _row(t, c, event, tol):
    if cell_of(c).kind == FIN:
        r, theta = math.nan, math.nan
    else:
        r, theta = to_disc(c)
    symbol = visit_symbol(c, tol)
    return [
        t, c.x.edge or 0, c.x.value, c.y.edge or 0, c.y.value, format_cell(cell_of(c)), r, theta, event,
        format_symbol(symbol) if symbol is not None else ""]


def trajectory_rows(trajectory, tol):
    """One row per sample and one per event, in time order; at equal times samples go first."""
    keyed = [((t, 0, k), _row(t, c, "", tol)) for k, (t, c) in enumerate(trajectory.samples)]
    keyed += [((e.t, 1, k), _row(e.t, e.config, format_event(e), tol)) for k, e in enumerate(trajectory.events)]
    keyed.sort(key=lambda pair: pair[0])
    return [row for _, row in keyed]


def trajectory_frame(trajectory, tol):
    return pd.DataFrame(trajectory_rows(trajectory, tol), columns=TRAJECTORY_COLUMNS)


def write_trajectory_csv(trajectory, path, tol):
    trajectory_frame(trajectory, tol).to_csv(path, index=False, float_format=FLOAT_FORMAT, na_rep="")


def hybrid_rows(run):
    keyed = [
        ((t, 0, k), [t, format_edge_id(p.edge) if p.edge is not None else "", p.value, "", ""])
        for k, (t, p) in enumerate(run.samples)]
    keyed += [
        ((e.t, 1, k), [e.t, format_edge_id(e.edge), math.nan, e.kind, format_edge_id(e.field)])
        for k, e in enumerate(run.events)]
    keyed.sort(key=lambda pair: pair[0])
    return [row for _, row in keyed]


def write_hybrid_csv(run, path):
    frame = pd.DataFrame(hybrid_rows(run), columns=HYBRID_COLUMNS)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, na_rep="")
