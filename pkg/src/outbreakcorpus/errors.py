"""Exception hierarchy shared across the package.

Validation problems found in *data* (bad spans, overlapping zones, ...) are
reported as :class:`~outbreakcorpus.model.Violation` records, not exceptions.
Exceptions are reserved for inputs we cannot interpret at all.
"""


class CorpusError(Exception):
    """Base class for all errors raised by this package."""

    #: short machine-parseable class, printed by the CLI on failure
    code = "corpus-error"


class FileFormatError(CorpusError):
    """A structured input file could not be parsed."""

    code = "parse-error"

    def __init__(self, message: str, *, path: str | None = None, line: int | None = None):
        self.path = path
        self.line = line
        prefix = ""
        if path is not None:
            prefix += str(path)
        if line is not None:
            prefix += f":{line}"
        super().__init__(f"{prefix}: {message}" if prefix else message)


class LexiconConflictError(CorpusError):
    """Two lexicon files assign conflicting entity types to one match form."""

    code = "conflict-error"


class CorrectionOverlapError(CorpusError):
    """Two spelling corrections cover overlapping character ranges."""

    code = "conflict-error"


class AlignmentError(CorpusError):
    """Word-box alignment failed badly enough that inputs look mismatched."""

    code = "alignment-error"


class QuerySyntaxError(CorpusError):
    """Query string could not be parsed; ``position`` is a character offset."""

    code = "query-error"

    def __init__(self, message: str, position: int):
        self.position = position
        super().__init__(f"{message} (at position {position})")


class DuplicateDocumentError(CorpusError):
    """Two documents with the same doc_id were offered for indexing."""

    code = "conflict-error"


class SelectionError(CorpusError):
    """A corpus selection (zone / year filters) matched nothing."""

    code = "empty-selection"
