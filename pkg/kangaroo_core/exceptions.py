"""Kangaroo custom exceptions
"""

class KangarooException(Exception):
    """Base class for exceptions with a message that can be displayed to users
    """

    def __init__(self, message: str) -> None:
        super().__init__(message)
        self.user_message = message

class InvalidModulus(KangarooException):
    def __init__(self, modulus: int) -> None:
        super().__init__(f"Modulus must be at least 2, got {modulus}.")

class InvalidOrder(KangarooException):
    def __init__(self, generator: int, order: int) -> None:
        super().__init__(f"Generator {generator} raised to {order} is not the identity.")

class UnknownGroupKind(KangarooException):
    def __init__(self, kind: str) -> None:
        super().__init__(f"Unknown group kind {kind!r}, expected 'mul' or 'add'.")

class InfeasibleTarget(KangarooException):
    def __init__(self, width: int, base: int) -> None:
        super().__init__(f"No step set with gamma <= 2 reaches the target mean for width {width} and base {base}.")

class CapExceeded(KangarooException):
    """Raised inside the solver when both walks together exceed the step cap"""

    def __init__(self, steps: int) -> None:
        super().__init__(f"Kangaroos took {steps} steps without a collision.")
        self.steps = steps

class SolveFailed(KangarooException):
    def __init__(self, restarts: int) -> None:
        super().__init__(f"No collision found after {restarts} restarts.")

class VerificationFailed(KangarooException):
    def __init__(self, x: int) -> None:
        super().__init__(f"Recovered exponent {x} does not verify, the point store is inconsistent.")

class HorizonExceeded(KangarooException):
    def __init__(self, steps: int) -> None:
        super().__init__(f"Walk exceeded its horizon of {steps} steps.")

class Intractable(KangarooException):
    def __init__(self, i: int, d: int) -> None:
        super().__init__(f"Transition table for i={i}, d={d} is too large (i*d must be at most 64).")

class InsufficientSamples(KangarooException):
    def __init__(self, count: int) -> None:
        super().__init__(f"At least 2 samples are required, got {count}.")

class ExperimentFailed(KangarooException):
    def __init__(self, failures: int, trials: int) -> None:
        super().__init__(f"{failures} of {trials} trials failed, more than 1%.")
