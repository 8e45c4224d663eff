"""Exception hierarchy shared by every module."""


class LocalCertError(ValueError):
    """Base class for all errors raised by :mod:`localcert`."""


class DuplicateEdge(LocalCertError):
    pass


class SelfLoop(LocalCertError):
    pass


class Disconnected(LocalCertError):
    pass


class IndexOutOfRange(LocalCertError):
    pass


class NotAnEdge(LocalCertError):
    pass


class ConflictingEdge(LocalCertError):
    """An edge whose two endpoint bits agree, so it has no direction."""

    def __init__(self, node: int, neighbor: int):
        super().__init__(f"edge ({node}, {neighbor}) is not directed")
        self.node = node
        self.neighbor = neighbor


class MalformedCertificate(LocalCertError):
    pass


class NotATree(LocalCertError):
    pass


class InvalidOrdering(LocalCertError):
    pass


class NoEligibleParent(LocalCertError):
    pass


class BoundExceeded(LocalCertError):
    pass


class GenerationError(LocalCertError):
    pass


class EmptySubset(LocalCertError):
    pass


class MemberNotEnabled(LocalCertError):
    pass


class NothingEnabled(LocalCertError):
    pass


class FormatError(LocalCertError):
    """Malformed JSON input; ``where`` names the offending field."""

    def __init__(self, message: str, where: str = ""):
        super().__init__(f"{where}: {message}" if where else message)
        self.where = where
