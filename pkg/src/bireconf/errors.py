"""Exception hierarchy.

Each error carries the process exit code the command-line front end uses
when the error escapes a subcommand.
"""


class ReconfError(Exception):
    exit_code = 1


class ParseError(ReconfError, ValueError):
    exit_code = 2

    def __init__(self, message: str, line: int | None = None, source: str | None = None):
        self.line = line
        self.source = source
        where = ""
        if source is not None:
            where += source
        if line is not None:
            where += f":{line}" if where else f"line {line}"
        super().__init__(f"{where}: {message}" if where else message)


class OutOfRange(ReconfError, ValueError):
    exit_code = 2


class SelfLoop(ReconfError, ValueError):
    exit_code = 2


class CapExceeded(ReconfError):
    exit_code = 3

    def __init__(self, estimate: int, cap: int, what: str = "candidate states"):
        self.estimate = estimate
        self.cap = cap
        super().__init__(f"estimated {estimate} {what} exceeds cap {cap}")


class PreconditionViolated(ReconfError, ValueError):
    exit_code = 4


class Unpaddable(PreconditionViolated):
    pass


class NotBipartite(PreconditionViolated):
    pass


class SideViolation(PreconditionViolated):
    pass


class PropertyViolated(PreconditionViolated):
    pass


class InvalidSourceSequence(ReconfError, ValueError):
    exit_code = 5

    def __init__(self, message: str, index: int | None = None):
        self.index = index
        super().__init__(message if index is None else f"index {index}: {message}")
