"""Exception types shared across the package."""


class RanktwistError(Exception):
    pass


class NotFound(RanktwistError, LookupError):
    """A bounded search ran out of candidates."""

    def __init__(self, what: str, bound: int):
        super().__init__(f"{what}: nothing found within {bound} candidates")
        self.what = what
        self.bound = bound


class Inconsistent(RanktwistError, ValueError):
    """Search constraints that no integer can satisfy."""


class InvariantError(RanktwistError, AssertionError):
    """A computed quantity contradicts a proven identity."""


class ConfigError(RanktwistError, ValueError):
    pass


class Unsupported(RanktwistError, NotImplementedError):
    pass
