"""Exception types shared across the package."""


class VConceptsError(Exception):
    """Base class for all library errors."""


class DomainError(VConceptsError, ValueError):
    """A value lies outside the carrier, or data lacks a required property."""


class StructuralError(VConceptsError, ValueError):
    """Mismatched dimensions, identifiers, or truth-value algebras."""


class ResourceCapError(VConceptsError, RuntimeError):
    """A configured resource cap was exceeded."""


class ParseError(VConceptsError, ValueError):
    """A file could not be parsed; carries path, line and column when known."""

    def __init__(self, message, path=None, line=None, column=None):
        self.path = path
        self.line = line
        self.column = column
        where = ""
        if path is not None:
            where = str(path)
            if line is not None:
                where += f":{line}"
                if column is not None:
                    where += f":{column}"
            where += ": "
        super().__init__(where + message)


class ValidationFailure(VConceptsError):
    """An artifact failed validation and no repair was requested."""

    def __init__(self, report):
        self.report = report
        super().__init__(str(report))
