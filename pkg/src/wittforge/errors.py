"""Exception hierarchy. Every library error derives from WittforgeError."""


class WittforgeError(Exception):
    pass


# -- field tower / square class errors ------------------------------------

class ZeroElement(WittforgeError):
    pass


class UnknownVariable(WittforgeError):
    pass


class FieldMismatch(WittforgeError):
    pass


class InfiniteSquareClassGroup(WittforgeError):
    pass


class NotLaurent(WittforgeError):
    pass


class DeltaIsSquare(WittforgeError):
    pass


class UnsupportedDelta(WittforgeError):
    pass


class FactorBoundExceeded(WittforgeError):
    pass


# -- quadratic form errors -------------------------------------------------

class Degenerate(WittforgeError):
    pass


class NotSymmetric(WittforgeError):
    pass


class ZeroScale(WittforgeError):
    pass


class ZeroSlot(WittforgeError):
    pass


class NotPfister(WittforgeError):
    pass


class NoSplit(WittforgeError):
    pass


class WitnessUnsupported(WittforgeError):
    pass


# -- rational local-global errors -------------------------------------------

class ZeroArgument(WittforgeError):
    pass


# -- composition algebra errors ---------------------------------------------

class AlgebraMismatch(WittforgeError):
    pass


class DimTooLarge(WittforgeError):
    pass


class UnsupportedDim(WittforgeError):
    pass


# -- torus type layer errors --------------------------------------------------

class UnsupportedCubic(WittforgeError):
    pass


class NotSeparable(WittforgeError):
    pass


class LambdaNotUnit(WittforgeError):
    pass


class DSquare(WittforgeError):
    pass


class PreconditionFailed(WittforgeError):
    pass


# -- CLI / DSL ----------------------------------------------------------------

class ParseError(WittforgeError):
    """Raised by the DSL parsers; carries the offending position."""

    def __init__(self, message, text="", pos=0):
        super().__init__(message)
        self.message = message
        self.text = text
        self.pos = pos

    def caret_message(self):
        lines = [f"parse error: {self.message}"]
        if self.text:
            lines.append("  " + self.text)
            lines.append("  " + " " * self.pos + "^")
        return "\n".join(lines)
