from collections import namedtuple

from configspace.configs import config_array
from configspace.grammar import format_word
from guidepath.app_settings import get_settings
from guidepath.exceptions import CycleError


EVENT_KINDS = ["cell-change", "vertex-pass", "dock", "boundary-hit", "switch", "converged"]

# `config` is where the event happened; it is not part of the CSV output
Event = namedtuple("Event", ["t", "kind", "payload", "config"])


def format_event(e):
    payload = " ".join("%s=%s" % (k, v) for k, v in sorted((e.payload or {}).items()))
    return ("%s %s" % (e.kind, payload)).strip()


class Trajectory:
    """Time-ordered samples (t, Config) of one orbit, and the events found between them."""

    def __init__(self, field_name=None, dt=None):
        self.field_name = field_name
        self.dt = dt
        self.times = []
        self.configs = []
        self.events = []
        # (t, symbol) at every change of the docking symbol, None meaning undocked
        self.visits = []

    def __repr__(self):
        return "<Trajectory %s: %d samples, %d events>" % (self.field_name, len(self.times), len(self.events))

    def __len__(self):
        return len(self.times)

    def add_sample(self, t, c):
        if self.times and t <= self.times[-1]:
            raise ValueError("sample times must increase: %r after %r" % (t, self.times[-1]))
        self.times.append(t)
        self.configs.append(c)

    def add_event(self, t, kind, payload=None, config=None):
        self.events.append(Event(t, kind, payload or {}, config))

    def add_visit(self, t, symbol):
        if not self.visits or self.visits[-1][1] != symbol:
            self.visits.append((t, symbol))

    @property
    def samples(self):
        return list(zip(self.times, self.configs))

    @property
    def end(self):
        return self.configs[-1]

    def events_of(self, kind):
        return [e for e in self.events if e.kind == kind]

    def cell_sequence(self):
        """The cells entered, in order, as formatted by the cell-change events."""
        return [e.payload["to"] for e in self.events_of("cell-change")]

    def timed_word(self, min_dwell=None, since=None):
        """The docking word as (t, symbol) pairs, t being when the orbit entered the symbol's zone."""
        min_dwell = get_settings().WORD_MIN_DWELL if min_dwell is None else min_dwell
        end = self.times[-1] if self.times else 0.0
        visits = [
            (t, symbol, t_next - t)
            for (t, symbol), t_next in zip(self.visits, [t for t, _ in self.visits[1:]] + [end])
            if since is None or t >= since]
        return [
            (visits[k][0], symbol)
            for k, symbol in word_entries([(symbol, duration) for _, symbol, duration in visits], min_dwell)]

    def word(self, min_dwell=None, since=None):
        """The docking word, from the visits that start at or after `since`."""
        return [symbol for _, symbol in self.timed_word(min_dwell, since)]

    def as_array(self):
        return config_array(self.configs)

    def since(self, t):
        """The samples at or after t, as (times, configs)."""
        k = next((i for i, s in enumerate(self.times) if s >= t), len(self.times))
        return self.times[k:], self.configs[k:]


def word_entries(visits, min_dwell):
    """(index of the visit, symbol) for every visit that adds a symbol to the word; see word_from_visits."""
    entries = []
    undocked = True
    for k, (symbol, duration) in enumerate(visits):
        if duration < min_dwell:
            continue
        if symbol is None:
            undocked = True
            continue
        if not entries or symbol != entries[-1][1] or undocked:
            entries.append((k, symbol))
        undocked = False
    return entries


def word_from_visits(visits, min_dwell):
    """
    A word from (symbol, duration) visits in order; symbol None is 'not docked'. Visits shorter than min_dwell are
    ignored. A symbol is appended when it differs from the previous one, or when the orbit left docking in between.
    """
    return [symbol for _, symbol in word_entries(visits, min_dwell)]


def _periodic_tail(word, period, repetitions):
    n = period * repetitions
    if len(word) < n:
        return False
    tail = word[-n:]
    return all(tail[k] == tail[k + period] for k in range(n - period))


def steady_state_word(word, period=None, repetitions=2):
    """
    The word the orbit settles into: the last `period` symbols, provided they were repeated `repetitions` times in a
    row. Without a period, the shortest one with that property is taken. Raises CycleError when the orbit has not
    settled.
    """
    periods = [period] if period is not None else range(1, len(word) // repetitions + 1)
    for p in periods:
        if _periodic_tail(word, p, repetitions):
            return list(word[-p:])
    raise CycleError("no steady state in %r" % format_word(word))


def last_period(trajectory, period, min_dwell=None):
    """(t_from, t_to) of the last full period: between the last two entries into the same zone, `period` apart."""
    entries = trajectory.timed_word(min_dwell)
    if len(entries) < period + 1:
        raise CycleError("the word has %d symbols; a period of %d needs %d" % (len(entries), period, period + 1))
    return entries[-period - 1][0], entries[-1][0]


def same_cycle(a, b):
    """True iff the cyclic words a and b are equal up to rotation."""
    a, b = list(a), list(b)
    if len(a) != len(b):
        return False
    return any(a[k:] + a[:k] == b for k in range(len(a))) or not a
