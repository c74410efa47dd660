from __future__ import annotations

import hashlib
import json
import os
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional

from dotenv import dotenv_values

from .corpus import CorpusFormat, GoldPolicy
from .detection import ThresholdScope
from .errors import ConfigError
from .resources import DEFAULT_LEMMA_TABLE, DEFAULT_STOPWORDS, DEFAULT_WORDLIST_DIR
from .segmentation import CutoffPolicy, SegmenterConfig, load_stopwords


@dataclass(frozen=True)
class Settings:
    user_agent: str
    http_timeout_seconds: int
    http_retry_count: int
    http_retry_backoff_seconds: float
    rate_limit_min_interval: float
    conceptnet_api_url: str
    conceptnet_language: str
    log_level: str


def load_settings() -> Settings:
    return Settings(
        user_agent=os.getenv("USER_AGENT", "dangerlex/0.1 (lexicon expansion)"),
        http_timeout_seconds=int(os.getenv("HTTP_TIMEOUT_SECONDS", "30")),
        http_retry_count=int(os.getenv("HTTP_RETRY_COUNT", "3")),
        http_retry_backoff_seconds=float(os.getenv("HTTP_RETRY_BACKOFF_SECONDS", "0.4")),
        rate_limit_min_interval=float(os.getenv("RATE_LIMIT_MIN_INTERVAL", "1.0")),
        conceptnet_api_url=os.getenv("CONCEPTNET_API_URL", "https://api.conceptnet.io"),
        conceptnet_language=os.getenv("CONCEPTNET_LANGUAGE", "de"),
        log_level=os.getenv("DANGERLEX_LOG_LEVEL", "INFO"),
    )


_PATH_KEYS = {
    "CORPUS_PATH": "corpus_path",
    "WORDLIST_DIR": "wordlist_dir",
    "LEMMA_TABLE": "lemma_table",
    "STOPWORDS": "stopwords",
    "VECTORS_PATH": "vectors_path",
    "KG_DUMP": "kg_dump",
    "KG_CACHE_DIR": "kg_cache_dir",
    "OUTPUT_DIR": "output_dir",
}
_INT_KEYS = {
    "EXPANSION_K": "expansion_k",
    "SEGMENT_W": "segment_w",
    "SEGMENT_K": "segment_k",
    "SEGMENT_SMOOTHING_WIDTH": "segment_smoothing_width",
    "SEGMENT_SMOOTHING_ROUNDS": "segment_smoothing_rounds",
    "TOP_N": "top_n",
    "JOBS": "jobs",
}
_STR_KEYS = {
    "CORPUS_FORMAT": "corpus_format",
    "KG_API_URL": "kg_api_url",
    "SEGMENT_CUTOFF": "segment_cutoff",
    "DETECTION_SCOPE": "detection_scope",
    "GOLD_POLICY": "gold_policy",
}
_BOOL_KEYS = {"TYPES_ONLY": "types_only", "KG_CACHE_ONLY": "kg_cache_only"}

# fields that do not change any report byte
_UNHASHED = {"output_dir", "jobs"}


@dataclass(frozen=True)
class PipelineConfig:
    corpus_path: Optional[Path] = None
    corpus_format: str = CorpusFormat.SEGMENTED_JSONL.value
    wordlist_dir: Path = DEFAULT_WORDLIST_DIR
    lemma_table: Path = DEFAULT_LEMMA_TABLE
    stopwords: Path = DEFAULT_STOPWORDS
    vectors_path: Optional[Path] = None
    kg_dump: Optional[Path] = None
    kg_api_url: Optional[str] = None
    kg_cache_dir: Optional[Path] = None
    kg_cache_only: bool = False
    expansion_k: int = 50
    segment_w: int = 20
    segment_k: int = 10
    segment_smoothing_width: int = 2
    segment_smoothing_rounds: int = 1
    segment_cutoff: str = CutoffPolicy.HC.value
    detection_scope: str = ThresholdScope.GLOBAL.value
    types_only: bool = False
    gold_policy: str = GoldPolicy.FIRST_ANNOTATOR.value
    top_n: int = 10
    output_dir: Path = Path("dangerlex-out")
    jobs: int = 1
    source: Optional[Path] = field(default=None, compare=False)

    @property
    def scope(self) -> ThresholdScope:
        return ThresholdScope.parse(self.detection_scope)

    @property
    def policy(self) -> GoldPolicy:
        return GoldPolicy.parse(self.gold_policy)

    @property
    def format(self) -> CorpusFormat:
        return CorpusFormat.parse(self.corpus_format)

    def segmenter_config(self) -> SegmenterConfig:
        return SegmenterConfig(
            pseudosentence_size=self.segment_w,
            block_size=self.segment_k,
            smoothing_width=self.segment_smoothing_width,
            smoothing_rounds=self.segment_smoothing_rounds,
            cutoff_policy=CutoffPolicy.parse(self.segment_cutoff),
            stopwords=load_stopwords(self.stopwords),
        )

    def with_overrides(self, overrides: Mapping[str, Any]) -> "PipelineConfig":
        updates = {k: v for k, v in overrides.items() if v is not None}
        for key in list(updates):
            if key in _PATH_KEYS.values() and not isinstance(updates[key], Path):
                updates[key] = Path(updates[key])
        return replace(self, **updates)

    def validate(self) -> "PipelineConfig":
        missing: List[str] = []
        if self.corpus_path is None:
            missing.append("CORPUS_PATH (not set)")
        required = [self.corpus_path, self.wordlist_dir, self.lemma_table, self.stopwords]
        optional = [self.vectors_path, self.kg_dump]
        for path in required + optional:
            if path is not None and not Path(path).exists():
                missing.append(str(path))
        if missing:
            raise ConfigError("missing input files", missing)
        try:
            ThresholdScope.parse(self.detection_scope)
            GoldPolicy.parse(self.gold_policy)
            CorpusFormat.parse(self.corpus_format)
            CutoffPolicy.parse(self.segment_cutoff)
        except ValueError as exc:
            raise ConfigError(str(exc)) from exc
        if self.jobs < 1:
            raise ConfigError("JOBS must be >= 1")
        if self.expansion_k < 1:
            raise ConfigError("EXPANSION_K must be >= 1")
        for key, value, floor in (
            ("SEGMENT_W", self.segment_w, 1),
            ("SEGMENT_K", self.segment_k, 1),
            ("SEGMENT_SMOOTHING_WIDTH", self.segment_smoothing_width, 1),
            ("SEGMENT_SMOOTHING_ROUNDS", self.segment_smoothing_rounds, 0),
        ):
            if value < floor:
                raise ConfigError(f"{key} must be >= {floor}")
        return self

    def as_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data.pop("source", None)
        return {k: (str(v) if isinstance(v, Path) else v) for k, v in data.items()}

    def config_hash(self) -> str:
        hashed = {k: v for k, v in self.as_dict().items() if k not in _UNHASHED}
        canonical = json.dumps(hashed, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(canonical.encode("utf-8")).hexdigest()[:12]


def _parse_bool(key: str, raw: str) -> bool:
    value = raw.strip().lower()
    if value in {"1", "true", "yes", "on"}:
        return True
    if value in {"0", "false", "no", "off", ""}:
        return False
    raise ConfigError(f"{key} must be a boolean, got {raw!r}")


def load_pipeline_config(path: Path | str) -> PipelineConfig:
    path = Path(path)
    if not path.exists():
        raise ConfigError("missing config file", [str(path)])
    base_dir = path.resolve().parent
    values: Dict[str, Any] = {}
    for key, raw in dotenv_values(path).items():
        if raw is None:
            continue
        if key in _PATH_KEYS:
            candidate = Path(raw)
            values[_PATH_KEYS[key]] = candidate if candidate.is_absolute() else base_dir / candidate
        elif key in _INT_KEYS:
            try:
                values[_INT_KEYS[key]] = int(raw)
            except ValueError as exc:
                raise ConfigError(f"{key} must be an integer, got {raw!r}") from exc
        elif key in _STR_KEYS:
            values[_STR_KEYS[key]] = raw.strip()
        elif key in _BOOL_KEYS:
            values[_BOOL_KEYS[key]] = _parse_bool(key, raw)
        else:
            raise ConfigError(f"unknown config key {key!r} in {path}")
    return PipelineConfig(source=path, **values)
