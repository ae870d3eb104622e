class ViolatedExpectation(Exception):
    pass


class GraphError(ValueError):
    pass


class UnknownEdge(GraphError):
    pass


class PatternError(ValueError):
    pass


class ConfigError(ValueError):
    pass


class GrammarError(ValueError):
    pass


class FieldError(ValueError):
    pass


class CycleError(ValueError):
    pass


class ScenarioError(ValueError):
    pass


class SafetyViolation(Exception):
    """The two AGVs came closer than the diagonal guard allows; the run is aborted at `t`."""

    def __init__(self, t, config, trajectory=None):
        super().__init__("diagonal guard breached at t=%.9f (%s)" % (t, config))
        self.t = t
        self.config = config
        self.trajectory = trajectory


class CaptureFailure(Exception):
    def __init__(self, t, trajectory=None):
        super().__init__("no chord captured the orbit by t=%.3f" % t)
        self.t = t
        self.trajectory = trajectory
