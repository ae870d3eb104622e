import math
import re
from collections import namedtuple
from itertools import combinations

from guidepath.exceptions import GrammarError
from guidepath.moreiterutils import cyclic_pairs

from .configs import FIN, cell_of, wrap
from .disc import to_disc


# kind is "A" (x docked at station i), "B" (y docked at station i) or "AB" (x at station i, y at station j).
GrammarSymbol = namedtuple("GrammarSymbol", ["kind", "i", "j"])

ZoneArc = namedtuple("ZoneArc", ["symbol", "center", "half_width"])

_TOKEN = re.compile(r"^(AB|A|B)([1-3])([1-3])?$")


def A(i):
    return GrammarSymbol("A", i, None)


def B(i):
    return GrammarSymbol("B", i, None)


def AB(i, j):
    return GrammarSymbol("AB", i, j)


# the counter-clockwise order of the docking zones around the boundary of the disc model; symbol k sits at k pi/6
SYMBOLS = [
    A(1), AB(1, 2), B(2), AB(3, 2), A(3), AB(3, 1),
    B(1), AB(2, 1), A(2), AB(2, 3), B(3), AB(1, 3),
]

_POSITION = {s: k for k, s in enumerate(SYMBOLS)}


def format_symbol(s):
    if s.kind == "AB":
        return "AB%d%d" % (s.i, s.j)
    return "%s%d" % (s.kind, s.i)


def format_word(word):
    return " ".join(format_symbol(s) for s in word)


def parse_symbol(token):
    match = _TOKEN.match(str(token).strip().upper())
    if match is None:
        raise GrammarError("not a grammar symbol: %r" % (token,))

    kind, i, j = match.group(1), int(match.group(2)), match.group(3)
    if kind == "AB":
        if j is None:
            raise GrammarError("AB symbols name two stations: %r" % (token,))
        if int(j) == i:
            raise GrammarError("AB symbols need two different stations: %r" % (token,))
        return AB(i, int(j))

    if j is not None:
        raise GrammarError("%s symbols name one station: %r" % (kind, token))
    return GrammarSymbol(kind, i, None)


def parse_word(tokens):
    """A word from a list of tokens, or from one string of tokens separated by commas and/or whitespace."""
    if isinstance(tokens, str):
        tokens = [t for t in re.split(r"[\s,]+", tokens) if t]
    word = [parse_symbol(t) for t in tokens]
    if not word:
        raise GrammarError("a word has at least one symbol")
    return word


def position(s):
    return _POSITION[s]


def zone_midpoint(s):
    return position(s) * math.pi / 6


def _a_b_half_width(tol):
    return 2 / 3 * math.atan(1.0 - tol)


def boundary_angle(s, tol):
    """
    The arc of the circle r = 1 on which `s` is the docking symbol at tolerance `tol`. A and B zones are centered on the
    seam rays; AB zones on the corners theta = pi/6 + n pi/3 (with tol = 0 they shrink to those corners).
    """
    c = _a_b_half_width(tol)
    if s.kind == "AB":
        return ZoneArc(s, zone_midpoint(s), math.pi / 6 - c)
    return ZoneArc(s, zone_midpoint(s), c)


def zone_of(theta, tol):
    """The symbol whose zone contains theta; A and B zones are open, AB zones closed."""
    theta = wrap(theta)
    m = round(theta / (math.pi / 3))
    offset = theta - m * math.pi / 3

    k = (2 * m) % 12
    if abs(offset) < _a_b_half_width(tol):
        return SYMBOLS[k]
    return SYMBOLS[(k + (1 if offset > 0 else -1)) % 12]


def docking_symbol(c, tol):
    x_docked = c.x.edge is not None and c.x.value >= 1.0 - tol
    y_docked = c.y.edge is not None and c.y.value >= 1.0 - tol
    if x_docked and y_docked:
        return AB(c.x.edge, c.y.edge)
    if x_docked:
        return A(c.x.edge)
    if y_docked:
        return B(c.y.edge)
    return None


def visit_symbol(c, tol):
    """
    The symbol a docking visit at c counts as. Within D the zone is read off the disc angle, such that an orbit touching
    a corner reads as AB rather than as A, AB, B in quick succession.
    """
    if cell_of(c).kind == FIN:
        return docking_symbol(c, tol)

    d = to_disc(c)
    if d.r < 1.0 - tol:
        return None
    return zone_of(d.theta, tol)


def _ccw_steps(word):
    return [(position(b) - position(a)) % 12 for a, b in cyclic_pairs(word)]


def is_monotone(word, either_orientation=False):
    """
    The word visits its zones in counter-clockwise order, once around: every cyclic triple has its middle symbol in the
    open forward arc from the first to the last. With `either_orientation`, the clockwise reading is admitted too.
    """
    if not word:
        raise GrammarError("a word has at least one symbol")
    if len(word) == 1:
        return True

    def once_around(w):
        steps = _ccw_steps(w)
        return all(step > 0 for step in steps) and sum(steps) == 12

    return once_around(word) or (either_orientation and once_around(list(reversed(word))))


def monotone_words(max_length):
    """Every monotone word of 1 to max_length symbols, once per cyclic word: read from its first zone in SYMBOLS."""
    for n in range(1, max_length + 1):
        for positions in combinations(range(len(SYMBOLS)), n):
            yield [SYMBOLS[k] for k in positions]
