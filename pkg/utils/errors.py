"""
utils/errors.py – Exception hierarchy shared by every pipeline stage.

Library code raises these; only ``app.py`` turns them into exit codes.
"""


class PipelineError(Exception):
    """Base class for all recoverable pipeline failures."""


class ConfigError(PipelineError):
    """Invalid run configuration (bad path, bad parameter)."""


class CorpusError(PipelineError):
    """Corpus ingestion failed."""


class EmptyCorpusError(CorpusError):
    """No valid record survived ingestion."""


class LexiconError(PipelineError):
    """Lexicon file violates the lexicon invariants."""


class EventFileError(PipelineError):
    """Malformed row in an events CSV."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class WindowRangeError(PipelineError):
    """Event window does not fit inside the weekly series."""
