import math

import matplotlib
import numpy as np
from matplotlib.figure import Figure

from configspace.disc import disc_array
from configspace.grammar import SYMBOLS, boundary_angle, format_symbol
from guidepath.app_settings import get_settings


# SVG user units are points; a figure of SIZE / 72 inches has a SIZE x SIZE viewBox
SIZE = 800

ZONE_COLORS = {"A": "tab:blue", "B": "tab:orange", "AB": "tab:green"}


def _xy(polyline):
    polyline = np.asarray(polyline, dtype=float).reshape(-1, 2)
    return polyline[:, 0] * np.cos(polyline[:, 1]), polyline[:, 0] * np.sin(polyline[:, 1])


def disc_figure(trajectories, plan=None, tol=None, title=None):
    """
    The disc model: the unit circle with its six seam rays and twelve labeled docking zones, the orbits (broken where
    they are on a fin, which the disc does not show) and, for chords, the planned cycle with its docking points.
    """
    tol = get_settings().DOCK_TOL if tol is None else tol

    fig = Figure(figsize=(SIZE / 72, SIZE / 72))
    ax = fig.add_axes([0.04, 0.04, 0.92, 0.92])
    ax.set_aspect("equal")
    ax.set_xlim(-1.25, 1.25)
    ax.set_ylim(-1.25, 1.25)
    ax.set_axis_off()
    if title:
        ax.set_title(title)

    thetas = np.linspace(0.0, 2 * math.pi, 721)
    ax.plot(np.cos(thetas), np.sin(thetas), color="black", linewidth=1.0)
    for n in range(6):
        theta = n * math.pi / 3
        ax.plot([0.0, math.cos(theta)], [0.0, math.sin(theta)], color="gray", linewidth=0.6, linestyle="--")

    for s in SYMBOLS:
        zone = boundary_angle(s, tol)
        arc = np.linspace(zone.center - zone.half_width, zone.center + zone.half_width, 60)
        ax.plot(1.03 * np.cos(arc), 1.03 * np.sin(arc), color=ZONE_COLORS[s.kind], linewidth=3.0)
        ax.text(1.13 * math.cos(zone.center), 1.13 * math.sin(zone.center), format_symbol(s), ha="center",
                va="center", fontsize=10)

    for trajectory in trajectories:
        ax.plot(*_xy(disc_array(trajectory.configs)), linewidth=0.6)

    if plan is not None:
        ax.plot(*_xy(plan.alpha_disc), color="red", linewidth=1.0, linestyle=":")
        ax.plot(np.cos(plan.angles), np.sin(plan.angles), "o", color="red", markersize=5)

    return fig


def write_disc_svg(path, trajectories, plan=None, tol=None, title=None):
    fig = disc_figure(trajectories, plan=plan, tol=tol, title=title)
    # labels as <text> elements; element ids from a fixed salt
    with matplotlib.rc_context({"svg.fonttype": "none", "svg.hashsalt": "guidepath"}):
        fig.savefig(path, format="svg", metadata={"Date": None})
