"""Exception types shared across the package."""


class HybsError(Exception):
    """Base class for all package errors."""


class ParseError(HybsError):
    """Layout text could not be parsed."""


class ValidationError(HybsError):
    """Parsed layout violates a structural requirement."""


class PhaseError(HybsError):
    """Operation called in the wrong game phase."""


class IllegalAction(HybsError):
    """Action violates the rules in the current state."""


class InvalidRecommendation(HybsError):
    """Recommendation names the wrong customers or repeats one."""


class DegenerateScenario(HybsError):
    """Scenario admits no positive tip at all."""


class PlanNotFound(HybsError):
    """Goal unreachable within the remaining action points."""


class BudgetExhausted(HybsError):
    """Search cap hit before the planner could prove optimality."""


class NoFeasibleMacro(HybsError):
    """No macro-action is legal from the search root."""


class MalformedLog(HybsError):
    """Episode log is incomplete or inconsistent under replay."""


class EmptyCluster(HybsError):
    """A cluster has no members."""


class NonFiniteLoss(HybsError):
    """Training diverged; loss is NaN or infinite."""


class DegenerateDataset(HybsError):
    """Dataset has zero variance in every feature dimension."""


class InvalidK(HybsError):
    """Requested cluster count is out of range."""


class InvalidAssignment(HybsError):
    """Cluster assignment does not meet the operation's preconditions."""


class DegenerateGroup(HybsError):
    """A sample group is too small or has zero variance."""


class SampleTooSmall(HybsError):
    """Sample below the minimum size for the test."""


class SampleTooLarge(HybsError):
    """Sample above the maximum size for the test."""


class QuadratureNonConvergence(HybsError):
    """Adaptive quadrature failed to reach the requested tolerance."""


class PolicyFailure(HybsError):
    """A policy raised during an episode; the log up to failure is kept."""


class ConfigError(HybsError):
    """Experiment configuration is invalid or paths are unresolvable."""
