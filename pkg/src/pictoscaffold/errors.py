"""Exception types shared across the package.

Every error carries a stable machine-readable ``code`` so the HTTP layer
can surface ``{code, message}`` bodies without string matching.
"""

from __future__ import annotations


class PictoScaffoldError(Exception):
    """Base class for all domain errors."""

    code = "error"


class EmptyInput(PictoScaffoldError):
    code = "empty_input"


class UnsupportedLanguage(PictoScaffoldError):
    code = "unsupported_language"


class MalformedRecord(PictoScaffoldError):
    code = "malformed_record"

    def __init__(self, line_no: int, reason: str):
        super().__init__(f"line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class DuplicateId(PictoScaffoldError):
    code = "duplicate_id"

    def __init__(self, pictogram_id: int):
        super().__init__(f"duplicate pictogram id {pictogram_id}")
        self.pictogram_id = pictogram_id


class RemoteUnavailable(PictoScaffoldError):
    code = "remote_unavailable"


class MalformedResponse(PictoScaffoldError):
    code = "malformed_response"


class NoContent(PictoScaffoldError):
    code = "no_content"


class MissingTerm(PictoScaffoldError):
    code = "missing_term"

    def __init__(self, term: str):
        super().__init__(f"no score for term {term!r}")
        self.term = term


class DimensionMismatch(PictoScaffoldError):
    code = "dimension_mismatch"


class EmbedderUnavailable(PictoScaffoldError):
    code = "embedder_unavailable"


class NoSentences(PictoScaffoldError):
    code = "no_sentences"


class EmptySamples(PictoScaffoldError):
    code = "empty_samples"


class SessionNotFound(PictoScaffoldError):
    code = "not_found"


class IndexOutOfRange(PictoScaffoldError):
    code = "index_out_of_range"
