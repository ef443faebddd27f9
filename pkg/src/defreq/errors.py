"""Exception hierarchy shared by every module."""


class DefreqError(Exception):
    """Base class for all library errors."""


class LimitExceeded(DefreqError):
    """An internal enumeration cap was hit."""


class AtomLimitExceeded(LimitExceeded):
    def __init__(self, count: int, cap: int):
        super().__init__(f"{count} atoms exceed the enumeration cap of {cap}")
        self.count = count
        self.cap = cap


class DefaultLimitExceeded(LimitExceeded):
    def __init__(self, count: int, cap: int):
        super().__init__(f"{count} defaults exceed the subset enumeration cap of {cap}")
        self.count = count
        self.cap = cap


class NestingDepthExceeded(LimitExceeded):
    def __init__(self, depth: int, cap: int):
        super().__init__(f"nesting depth {depth} exceeds the cap of {cap}")
        self.depth = depth
        self.cap = cap


class InconsistentKnowledge(DefreqError):
    """The background knowledge has no model."""


class UnknownRuleId(DefreqError, KeyError):
    def __str__(self) -> str:
        return f"unknown rule id {self.args[0]!r}"


class UnknownObject(DefreqError, KeyError):
    def __str__(self) -> str:
        return f"object {self.args[0]!r} has no context profile"


class MalformedNesting(DefreqError):
    """A nested default appears outside prerequisite position."""


class NestedRuleError(DefreqError):
    """A nested default reached the engine without being flattened."""


class LevelEditsMultipleDimensions(DefreqError):
    pass


class MalformedRow(DefreqError):
    pass


class InvalidProblem(DefreqError):
    """A benchmark problem violates its structural invariants."""
