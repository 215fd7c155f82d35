"""
Exception hierarchy shared by every package.
Each error carries the process exit code the command-line entry point reports.
"""


class HypergraphToolkitError(Exception):
    """Base error for the toolkit"""
    exit_code = 1


class ValidationError(HypergraphToolkitError):
    """Invalid input: out-of-range vertex, bad parameters, malformed files"""
    exit_code = 2


class FeasibilityGuardError(HypergraphToolkitError):
    """A census or enumeration request exceeds a configured feasibility guard"""
    exit_code = 3

    def __init__(self, guard: str, message: str):
        self.guard = guard
        super().__init__(f"feasibility guard '{guard}': {message}")


class BudgetExceededError(HypergraphToolkitError):
    """A size limit or work budget would be exceeded"""
    exit_code = 4

    def __init__(self, budget: str, requested, allowed):
        self.budget = budget
        self.requested = requested
        self.allowed = allowed
        super().__init__(f"budget '{budget}' exceeded: requested {requested}, allowed {allowed}")


class CensusIntegrityError(HypergraphToolkitError):
    """A counting invariant failed or two fingerprints collided on their digest"""
    exit_code = 1
