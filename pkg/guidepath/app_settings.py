# approach as in Django's own per-app settings: the simulator's tunables live here rather than in the big settings.py,
# such that they can be overridden as a group (GUIDEPATH = {...}) and in tests (override_settings below).
from contextlib import contextmanager

from django.conf import settings


DEFAULTS = {
    # Integration
    "DT": 1e-3,  # fixed step of the fourth-order integrator
    "T_MAX": 50.0,
    "EVENT_TOL": 1e-9,  # event localization (in time)
    "CONVERGENCE_TOL": 1e-6,

    # Configuration space
    "DELTA": 0.02,  # half-width of the removed neighborhood of the diagonal, in edge-lengths
    "DOCK_TOL": 0.05,
    "WORD_MIN_DWELL": 2e-3,  # docking visits shorter than this (in time) are not words, they are corners

    # Single-AGV edge point fields
    "ALPHA": 0.1,
    "COLLAR": 1.0,
    "EDGE_GAIN": 1.0,

    # Fields on the configuration space
    "NAVIGATION_KAPPA": 1.0,  # angular weight of the navigation potential
    "VALIDATE_TOL": 1e-9,
    "VALIDATE_SAMPLES": 500,

    # Chords
    "EPSILON": 0.05,
    "ARC_MARGIN": 0.35,  # how far (radially) chords bulge inward from the boundary
    "CHORD_OMEGA": 1.0,
    "CAPTURE_TIME": 60.0,

    # Batches
    "NUM_WORKERS": 4,
    "SEED": 0,
}


class AttrLikeDict(dict):
    def __hasattr__(self, item):
        return item in self

    def __getattr__(self, item):
        # attribute errors are to be understood at the call site; as they are for regular object's missing attributes.
        __tracebackhide__ = True

        try:
            return self[item]
        except KeyError:
            raise AttributeError(item) from None


_settings = None


def _sanitize(settings):
    """ 'sanitize' the settings, i.e. fixes common mistakes in the settings. """

    for key in ["DT", "T_MAX", "EVENT_TOL", "DELTA", "DOCK_TOL", "EPSILON"]:
        # "1e-3" in an env-driven conf file is a common enough mistake
        settings[key] = float(settings[key])

    settings["NUM_WORKERS"] = max(1, int(settings["NUM_WORKERS"]))


def get_settings():
    global _settings
    if _settings is None:
        _settings = AttrLikeDict()
        _settings.update(DEFAULTS)
        _settings.update(getattr(settings, "GUIDEPATH", {}))

        _sanitize(_settings)

    return _settings


@contextmanager
def override_settings(**new_settings):
    global _settings
    old_settings = get_settings()
    _settings = AttrLikeDict()
    _settings.update(old_settings)
    for k in new_settings:
        assert k in old_settings, "Unknown setting (likely error in tests): %s" % k
    _settings.update(new_settings)
    try:
        yield
    finally:
        _settings = old_settings
