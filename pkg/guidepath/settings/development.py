from .default import *  # noqa
from .default import LOGGING, I_AM_RUNNING


DEBUG = True


if I_AM_RUNNING != "TEST":
    # while working on the integrator it's useful to see mode switches and event localization as they happen
    LOGGING['loggers']['guidepath']["level"] = "DEBUG"

    # and the timings, too
    LOGGING['loggers']['guidepath.performance']["handlers"] = ["console"]


GUIDEPATH = {
    # bitwise reproducibility is a property we want to see exercised in development, so we fix the seed explicitly
    "SEED": 0,
}
