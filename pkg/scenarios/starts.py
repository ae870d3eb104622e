import numpy as np

from configspace.configs import SQUARE, WEDGE_SQUARES, X_BELOW, Y_BELOW, Config, fin, separation, square
from graphs.points import point


# the twelve cells of the configuration space: the six Squares of D and the six fins
CELLS = [square(i, j) for i, j in WEDGE_SQUARES] + [fin(i, below) for i in (1, 2, 3) for below in (X_BELOW, Y_BELOW)]


def random_config_in(cell, rng):
    """A configuration drawn uniformly from a cell (which may put it inside the diagonal guard)."""
    a, b = rng.uniform(0.0, 1.0, size=2)
    if cell.kind == SQUARE:
        return Config(point(cell.i, a), point(cell.j, b))

    lower, upper = sorted([a, b])
    if cell.j == X_BELOW:
        return Config(point(cell.i, lower), point(cell.i, upper))
    return Config(point(cell.i, upper), point(cell.i, lower))


def random_starts(n, seed, delta):
    """n starts, each in a cell picked uniformly; draws inside the diagonal guard are rejected and redrawn."""
    rng = np.random.default_rng(seed)
    starts = []
    while len(starts) < n:
        cell = CELLS[int(rng.integers(len(CELLS)))]
        c = random_config_in(cell, rng)
        if separation(c) < delta:
            continue
        starts.append(c)
    return starts


def starts_for(scenario, n=None, seed=None):
    """
    The starts of a run: the scenario's explicit starts followed by its random ones. `n` (the --starts flag) replaces
    both by n random starts; `seed` replaces the scenario's seed.
    """
    sim = scenario.sim
    seed = sim.seed if seed is None else seed
    if n is not None:
        return random_starts(n, seed, sim.delta)
    return list(sim.starts) + random_starts(sim.random_starts, seed, sim.delta)
