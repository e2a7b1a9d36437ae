"""Exception hierarchy for gallai_lab."""


class GallaiLabError(Exception):
    """Base class for every error raised by this package."""


# graph core

class Graph6Error(GallaiLabError, ValueError):
    pass


class MalformedHeader(Graph6Error):
    pass


class TruncatedBody(Graph6Error):
    pass


class InvalidByte(Graph6Error):
    pass


class OrderTooLarge(GallaiLabError, ValueError):
    pass


class InvalidParams(GallaiLabError, ValueError):
    pass


class ConnectivityRetriesExhausted(GallaiLabError, RuntimeError):
    pass


class InvalidPath(GallaiLabError, ValueError):
    pass


# path engine

class EmptyGraph(GallaiLabError, ValueError):
    pass


class OrderTooLargeForOracle(GallaiLabError, ValueError):
    pass


class SearchBudgetExceeded(GallaiLabError, RuntimeError):
    """The enumeration visited more search nodes than its budget allows."""

    def __init__(self, budget: int):
        super().__init__(f"search exceeded node budget of {budget}")
        self.budget = budget


# intersection checks

class PathsFromDifferentGraphs(GallaiLabError, ValueError):
    pass


class DisconnectedGraph(GallaiLabError, ValueError):
    pass


class TruncatedReport(GallaiLabError, ValueError):
    pass


# surgery

class SurgeryError(GallaiLabError, ValueError):
    pass


class NotDisjoint(SurgeryError):
    pass


class ConnectorTouchesInterior(SurgeryError):
    pass


class EndpointNotOnPath(SurgeryError):
    pass


class LengthMismatch(SurgeryError):
    pass


class NotSingleIntersection(SurgeryError):
    pass


class WrongParity(SurgeryError):
    pass


class IndexMismatch(SurgeryError):
    pass


class PremiseViolated(SurgeryError):
    """A structural precondition of a construction does not hold.

    ``clause`` names the failing condition so callers can tabulate them.
    """

    def __init__(self, clause: str, message: str = ""):
        super().__init__(f"{clause}: {message}" if message else clause)
        self.clause = clause


# campaign

class InvalidConfig(GallaiLabError, ValueError):
    pass


class OutputUnwritable(GallaiLabError, OSError):
    pass


class FileUnreadable(GallaiLabError, OSError):
    pass


class ParseError(GallaiLabError, ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
