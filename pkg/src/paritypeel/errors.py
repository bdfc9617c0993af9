"""Exception hierarchy shared by every module of the package."""


class ParityGameError(Exception):
    """Base class for all errors raised by paritypeel."""


class EmptyGame(ParityGameError):
    def __init__(self):
        super().__init__("game has no vertices")


class DeadEnd(ParityGameError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} has no successors")


class BadId(ParityGameError):
    def __init__(self, vertex, successor):
        self.vertex = vertex
        self.successor = successor
        super().__init__(f"vertex {vertex} has out-of-range successor {successor}")


class DeadEndCreated(ParityGameError):
    """Raised by restrict when the removed set was not the complement of a trap."""

    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"restriction leaves vertex {vertex} without live successors")


class TargetNotLive(ParityGameError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"target vertex {vertex} is not live")


class SelfLoopPresent(ParityGameError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} has a self-loop; run remove_self_loops first")


class NotAPriorityOfGame(ParityGameError):
    def __init__(self, priority):
        self.priority = priority
        super().__init__(f"priority {priority} does not occur in the live game")


class NoProgress(ParityGameError):
    """Both dominion attractors came back empty on a non-empty residual game.

    ``residual`` holds the residual game in canonical PGSolver text, ``origin``
    maps its dense ids back to ids of the game handed to the solver.
    """

    def __init__(self, residual, origin, partial=None, trace=""):
        self.residual = residual
        self.origin = origin
        self.partial = partial
        self.trace = trace
        super().__init__(
            f"no progress on a residual game of {len(origin)} vertices"
        )


class TooLarge(ParityGameError):
    def __init__(self, estimate, limit):
        self.estimate = estimate
        self.limit = limit
        super().__init__(f"search space {estimate} exceeds limit {limit}")


class NotAPartition(ParityGameError):
    pass


class PGSolverSyntaxError(ParityGameError):
    def __init__(self, line, column, expected):
        self.line = line
        self.column = column
        self.expected = expected
        super().__init__(f"line {line}, column {column}: expected {expected}")


class DanglingSuccessor(ParityGameError):
    def __init__(self, successor):
        self.successor = successor
        super().__init__(f"successor {successor} is not a declared vertex")


class DuplicateVertex(ParityGameError):
    def __init__(self, vertex):
        self.vertex = vertex
        super().__init__(f"vertex {vertex} declared twice")


class Unsatisfiable(ParityGameError):
    pass


class UnknownFamily(ParityGameError):
    def __init__(self, name):
        self.name = name
        super().__init__(f"unknown game family {name!r}")


class NotReproducing(ParityGameError):
    pass
