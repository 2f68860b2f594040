"""Exception hierarchy shared by all dpbokeh modules.
The command line maps each class onto its own exit status.
"""


class DofError(Exception):
    """Base class of every error raised by dpbokeh."""


class ValidationError(DofError, ValueError):
    """A parameter, shape or value range is invalid."""


class DofIOError(DofError, OSError):
    """A file could not be found, decoded or written.

    arguments:
       path: The offending file path.
       reason: Human readable explanation.
    """

    def __init__(self, path, reason):
        super().__init__(f'{path}: {reason}')
        self.path = str(path)
        self.reason = reason

    def __str__(self):
        return f'{self.path}: {self.reason}'


class RenderError(DofError, RuntimeError):
    """The renderer was handed something it cannot composite."""
