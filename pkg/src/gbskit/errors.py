"""Exception hierarchy.

Every error maps to one CLI exit code through ``exit_code``.
"""


class GbsError(Exception):
    exit_code = 1


# -- input errors (exit 2) ---------------------------------------------------

class InputError(GbsError):
    exit_code = 2


class GraphSyntaxError(InputError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class LabelZero(InputError):
    def __init__(self, edge, line=None):
        self.edge = edge
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}edge {edge!r} has a zero label")


class UnknownVertex(InputError):
    def __init__(self, vertex, line=None):
        self.vertex = vertex
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}unknown vertex {vertex!r}")


class DuplicateName(InputError):
    def __init__(self, name, line=None):
        self.name = name
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}duplicate name {name!r}")


class Disconnected(InputError):
    def __init__(self, unreachable):
        self.unreachable = tuple(unreachable)
        super().__init__(
            "graph is not connected; unreachable from base: "
            + ", ".join(self.unreachable))


class WordSyntaxError(InputError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"token {position}: {message}"
        super().__init__(message)


class UnknownGenerator(InputError):
    def __init__(self, name, position=None):
        self.name = name
        self.position = position
        where = f"token {position}: " if position is not None else ""
        super().__init__(f"{where}unknown generator {name!r}")


class TreeEdgeLetterUsed(InputError):
    def __init__(self, edge, position=None):
        self.edge = edge
        self.position = position
        where = f"token {position}: " if position is not None else ""
        super().__init__(
            f"{where}{edge!r} is a spanning-tree edge, not a generator")


class PathError(InputError):
    """A sequence of letters that is not a valid edge path."""


# -- automorphism errors (exit 3) --------------------------------------------

class AutomorphismError(GbsError):
    exit_code = 3


class MissingImage(AutomorphismError):
    def __init__(self, generator, direction="map"):
        self.generator = generator
        self.direction = direction
        super().__init__(f"no '{direction}' image for generator {generator!r}")


class RelatorNotPreserved(AutomorphismError):
    def __init__(self, relator, direction="map"):
        self.relator = relator
        self.direction = direction
        super().__init__(
            f"'{direction}' images do not kill relator {relator}")


class InverseCheckFailed(AutomorphismError):
    def __init__(self, generator, composite):
        self.generator = generator
        self.composite = composite
        super().__init__(
            f"{composite} does not fix generator {generator!r}")


# -- unmet preconditions (exit 4) ----------------------------------------------

class PreconditionError(GbsError):
    exit_code = 4


class DeltaNotRespected(PreconditionError):
    def __init__(self, generator=None):
        self.generator = generator
        detail = f" (fails on {generator!r})" if generator is not None else ""
        super().__init__(
            "automorphism does not preserve the modular homomorphism" + detail)


class NotUnimodularProduct(PreconditionError):
    def __init__(self, reason):
        super().__init__(
            "free quotient needs one vertex with all loops labeled (1, 1): "
            + reason)


class KernelNotPreserved(PreconditionError):
    def __init__(self, image):
        self.image = image
        super().__init__(
            f"automorphism sends the central generator outside its "
            f"subgroup: {image}")


# -- resource caps (exit 5) ----------------------------------------------------

class CapExceeded(GbsError):
    exit_code = 5


class ExponentOverflowPolicy(CapExceeded):
    def __init__(self, digits, cap):
        self.digits = digits
        self.cap = cap
        super().__init__(
            f"exponent with ~{digits} decimal digits exceeds cap of {cap}")


class RadiusTooLargePolicy(CapExceeded):
    def __init__(self, size, cap):
        self.size = size
        self.cap = cap
        super().__init__(
            f"conjugator ball has {size} words, cap is {cap}")
