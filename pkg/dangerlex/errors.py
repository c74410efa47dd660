from __future__ import annotations

from typing import Iterable


class DangerlexError(Exception):
    exit_code = 2


class UsageError(DangerlexError):
    exit_code = 1


class ConfigError(UsageError):
    def __init__(self, message: str, missing: Iterable[str] = ()) -> None:
        self.missing = list(missing)
        if self.missing:
            message = f"{message}: " + ", ".join(self.missing)
        super().__init__(message)


class DataError(DangerlexError, ValueError):
    exit_code = 2


class CorpusFormatError(DataError):
    pass


class UnknownLabelError(CorpusFormatError):
    pass


class WordListError(DataError):
    pass


class EmbeddingFormatError(DataError):
    pass


class DetectionError(DataError):
    pass


class EvaluationError(DataError):
    pass


class CacheMissError(DataError):
    def __init__(self, word: str) -> None:
        self.word = word
        super().__init__(f"knowledge-graph cache miss for {word!r} (cache-only mode)")


class ExternalServiceError(DangerlexError, RuntimeError):
    """Network failure talking to the knowledge graph; safe to retry later."""

    exit_code = 3
    retryable = True


class StageError(DangerlexError):
    def __init__(self, stage: str, cause: BaseException) -> None:
        self.stage = stage
        self.cause = cause
        self.exit_code = getattr(cause, "exit_code", 2)
        super().__init__(f"[{stage}] {cause}")
