"""Exception types shared across the package."""


class InputError(ValueError):
    """A caller supplied data that violates an operation's precondition."""


class InitError(RuntimeError):
    """A hard-constraint initialisation cannot produce a satisfying state."""


class FormatError(ValueError):
    """An instance or solution file violates the schema.

    The message carries the offending field path (section/line) so that
    errors in hand-edited files are easy to locate.
    """

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"{path}: {message}")
