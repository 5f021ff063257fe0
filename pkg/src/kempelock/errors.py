"""Exception hierarchy shared by all kempelock modules."""


class KempeLockError(Exception):
    """Base class for every error raised by this package."""


class InvalidGraph(KempeLockError):
    """A rotation system does not describe the requested kind of plane graph."""


class NotSimple(InvalidGraph):
    pass


class NotTriangulation(InvalidGraph):
    pass


class EulerViolation(InvalidGraph):
    pass


class Disconnected(InvalidGraph):
    pass


class NoSuchEdge(KempeLockError):
    pass


class DegenerateFlank(KempeLockError):
    """The two triangles flanking an edge share their apex."""


class NotContractible(KempeLockError):
    pass


class WrongVertices(KempeLockError):
    pass


class InvalidSplit(KempeLockError):
    pass


class PreconditionViolated(KempeLockError):
    pass


class TooSmall(KempeLockError):
    pass


class OrderTooLarge(KempeLockError):
    pass


class ExhaustedRetries(KempeLockError):
    pass


class ColorMismatch(KempeLockError):
    pass


class BadColors(KempeLockError):
    pass


class NotLockedInput(KempeLockError):
    pass


class CodecError(KempeLockError):
    pass


class BadHeader(CodecError):
    pass


class TruncatedRecord(CodecError):
    pass


class NotATriangulation(CodecError):
    pass


class VertexOutOfRange(CodecError):
    pass


class OrderOverflow(CodecError):
    pass


class SchemaViolation(CodecError):
    pass
