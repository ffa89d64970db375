"""Exception hierarchy shared by all gyrokit modules."""


class GyroError(Exception):
    """Base class for every error raised by gyrokit."""


class OutOfRangeEntry(GyroError, ValueError):
    def __init__(self, row, col, value, order):
        self.row, self.col, self.value, self.order = row, col, value, order
        super().__init__(f"entry ({row},{col}) = {value} is outside [0, {order})")


class IndexOutOfRange(GyroError, IndexError):
    pass


class LengthMismatch(GyroError, ValueError):
    pass


class InvalidGyrogroup(GyroError):
    """The table failed axiom verification; ``report`` holds the violations."""

    def __init__(self, report):
        self.report = report
        first = report.violations[0] if report.violations else None
        super().__init__(f"not a gyrogroup: {len(report.violations)} violation(s), first {first}")


# subalgebra
class EmptySubset(GyroError, ValueError):
    pass


class OrderTooLarge(GyroError):
    pass


class NotASubgyrogroup(GyroError):
    pass


class NotNormal(GyroError):
    pass


class IllDefinedProduct(GyroError):
    pass


class NotAHomomorphism(GyroError):
    def __init__(self, a, b):
        self.witness = (a, b)
        super().__init__(f"map does not respect the operation at ({a},{b})")


# doubling
class PhiNotBijective(GyroError, ValueError):
    pass


class ConstructionAxiomFailure(GyroError):
    pass


class TheoremViolation(GyroError):
    pass


# catalog
class UnknownFixture(GyroError, LookupError):
    pass


class CapExceeded(GyroError):
    pass


class NoGoldenData(GyroError, LookupError):
    pass


# file formats
class ParseError(GyroError, ValueError):
    def __init__(self, message, line=None, column=None):
        self.line, self.column = line, column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class BadMagic(ParseError):
    pass


class BadDimensions(ParseError):
    pass


class NonIntegerEntry(ParseError):
    pass


class EntryOutOfRange(ParseError):
    pass
