from __future__ import annotations

import logging
import threading
import time
from typing import Any, Dict, Optional
from urllib.parse import urlparse

import requests
from tenacity import Retrying, retry_if_exception_type, stop_after_attempt, wait_exponential, wait_random

from .config import Settings
from .errors import ExternalServiceError

logger = logging.getLogger(__name__)

_RETRY_STATUSES = (429, 500, 502, 503, 504)
_rate_lock = threading.Lock()
_last_request: Dict[str, float] = {}


class _RetryableStatus(Exception):
    pass


def _rate_limit(host: str, min_interval: float) -> None:
    if min_interval <= 0:
        return
    with _rate_lock:
        last = _last_request.get(host, 0.0)
        now = time.monotonic()
        wait = min_interval - (now - last)
        if wait > 0:
            time.sleep(wait)
        _last_request[host] = time.monotonic()


def _retrying(settings: Settings) -> Retrying:
    return Retrying(
        stop=stop_after_attempt(max(settings.http_retry_count, 0) + 1),
        wait=wait_exponential(multiplier=settings.http_retry_backoff_seconds) + wait_random(0, 0.2),
        retry=retry_if_exception_type((requests.ConnectionError, requests.Timeout, _RetryableStatus)),
        reraise=True,
    )


def http_get_json(
    settings: Settings,
    url: str,
    params: Optional[Dict[str, Any]] = None,
    headers: Optional[Dict[str, str]] = None,
    session: Optional[Any] = None,
) -> Dict[str, Any]:
    """GET a JSON document, rate limited per host and retried on 429/5xx."""
    client = session or requests
    merged = {"User-Agent": settings.user_agent, "Accept": "application/json"}
    if headers:
        merged.update(headers)
    host = urlparse(url).netloc
    try:
        for attempt in _retrying(settings):
            with attempt:
                _rate_limit(host, settings.rate_limit_min_interval)
                response = client.get(url, params=params, headers=merged, timeout=settings.http_timeout_seconds)
                if response.status_code in _RETRY_STATUSES:
                    logger.warning("GET %s -> %s, retrying", url, response.status_code)
                    raise _RetryableStatus(f"HTTP {response.status_code}")
                response.raise_for_status()
                return response.json()
    except (requests.RequestException, _RetryableStatus, ValueError) as exc:
        raise ExternalServiceError(f"GET {url} failed: {exc}") from exc
    raise ExternalServiceError(f"GET {url} failed")
