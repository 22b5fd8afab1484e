"""Exception hierarchy shared by every walkstream module."""


class WalkStreamError(Exception):
    """Base class for all walkstream errors."""


class GraphError(WalkStreamError, ValueError):
    """A graph or walk violates one of its structural invariants."""


class TemplateError(WalkStreamError, ValueError):
    """A sequence is not a valid walk template."""


class StreamError(WalkStreamError, ValueError):
    """Invalid stream construction or window bounds."""


class ConfigError(WalkStreamError, ValueError):
    """Sampler, estimator or experiment parameters are out of range."""


class OracleError(WalkStreamError, ValueError):
    """An exact oracle was asked for an instance beyond its guard rails."""


class ProtocolError(WalkStreamError, ValueError):
    """A black-box algorithm returned output the decision rule cannot read."""


class SamplingFailed(WalkStreamError, RuntimeError):
    """Fewer than the requested number of walks survived the pass.

    This is the FAIL outcome of ``simulate_walks``; estimators let it
    propagate to their caller.
    """

    def __init__(self, requested: int, succeeded: int, instances: int):
        self.requested = requested
        self.succeeded = succeeded
        self.instances = instances
        super().__init__(
            f"Only {succeeded} of {instances} walk instances succeeded, "
            f"{requested} were requested"
        )
