"""Exception hierarchy for latdist."""


class LatdistError(Exception):
    """Base class for all errors raised by latdist."""


class DegenerateBasis(LatdistError, ValueError):
    """The three basis vectors do not span 3-space."""


class NonPositiveDefinite(LatdistError, ValueError):
    """Cell lengths/angles admit no real lattice basis."""


class CellValidationFailed(LatdistError, RuntimeError):
    """A computed Voronoi cell failed its correctness certificate."""


class ParseError(LatdistError, ValueError):
    """Malformed input document."""


class MissingTag(ParseError):
    def __init__(self, tag, source=None):
        self.tag = tag
        self.source = source
        where = f" in {source}" if source else ""
        super().__init__(f"missing CIF tag {tag}{where}")


class MalformedNumber(ParseError):
    def __init__(self, text, line, source=None):
        self.text = text
        self.line = line
        self.source = source
        where = f"{source}:" if source else "line "
        super().__init__(f"{where}{line}: cannot parse number {text!r}")


class SchemaError(ParseError):
    """A JSON lattice record does not follow the expected schema."""

    def __init__(self, message, record_id=None):
        self.record_id = record_id
        if record_id is not None:
            message = f"record {record_id!r}: {message}"
        super().__init__(message)


class SymmetryViolation(ParseError):
    """A distance matrix read from disk is not symmetric with zero diagonal."""
