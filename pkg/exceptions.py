from typing import List


class InvalidPathError(Exception):
    pass


class InvalidParameterError(Exception):
    pass


class InvalidTableError(Exception):
    pass


class InvalidBundleError(Exception):
    pass


class InfeasibleDegreeError(Exception):
    pass


class DecodeMismatchError(Exception):
    pass


class NotApplicableError(Exception):
    pass


class ConstructionError(Exception):
    pass


class CannotAccountError(Exception):
    pass


class CapExceededError(Exception):
    pass


class SearchFailureError(Exception):
    pass


class FeasibilityError(Exception):
    def __init__(self, violations: List):
        self.violations = violations
        super().__init__("; ".join(str(v) for v in violations))
