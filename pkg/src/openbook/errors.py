"""Exception hierarchy shared by all openbook modules."""


class OpenBookError(Exception):
    """Base class for all errors raised by this package."""


class DegeneratePage(OpenBookError):
    """The requested page has no arc system (the disk, genus 0 with one
    boundary component)."""


class NonEmbeddedCurve(OpenBookError):
    """A curve that must be embedded and essential is not (it has
    self-crossings, or it is null-homotopic)."""


class WindingBudgetExceeded(OpenBookError):
    """Winding failed to produce a weakly admissible diagram within the
    configured number of attempts."""


class NiceificationBudgetExceeded(OpenBookError):
    """Finger moves failed to produce a nice diagram within the configured
    move budget."""


class CapExceeded(OpenBookError):
    """A domain enumeration is unbounded (or exceeds its coefficient cap)
    in a direction the caller did not cap."""


class NotNice(OpenBookError):
    """The differential was requested on a diagram that is not nice."""


class NotAdmissible(OpenBookError):
    """A Floer-theoretic count was requested on a diagram that is not
    weakly admissible."""


class NotACycle(OpenBookError):
    """A homology membership query was made for a chain that is not a
    cycle."""


class UnknownCurve(OpenBookError):
    """A twist word refers to a curve name that was never defined."""


class DslError(OpenBookError):
    """A syntax or semantic error in an open-book description file.

    Carries 1-based line and column of the offending token.
    """

    def __init__(self, message, line, column):
        super().__init__("line %d, column %d: %s" % (line, column, message))
        self.line = line
        self.column = column
