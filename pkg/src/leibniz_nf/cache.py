"""In-memory caching of basis-free invariants.

Fingerprints bundle the lower central and derived series, the square, the
right annihilator and the derivation algebra of a table. The classifier asks
for them repeatedly on the same tables, so results are kept in a bounded
thread-safe cache keyed by the table's constants.
"""

import logging
import threading
from dataclasses import dataclass, field
from datetime import UTC, datetime
from typing import Any, Generic, TypeVar

from leibniz_nf.config import get_settings
from leibniz_nf.core.algebra import AlgebraTable

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass
class CacheEntry(Generic[T]):
    """A cached value with its insertion time.

    Attributes:
        value: The cached value.
        created_at: When this entry was created (UTC).
    """

    value: T
    created_at: datetime = field(default_factory=lambda: datetime.now(UTC))


class InvariantCache(Generic[T]):
    """Bounded thread-safe cache that evicts by ``created_at`` when full.

    The tenth of the entries created first is dropped on each eviction.

    Example:
        cache = InvariantCache[Fingerprint](max_entries=256)
        cache.set(table_key(A), fp)
        fp = cache.get(table_key(A))
    """

    def __init__(self, max_entries: int | None = None):
        """Initialize the cache.

        Args:
            max_entries: Capacity; read from settings when None.
        """
        self._max_entries = max_entries
        self._cache: dict[str, CacheEntry[T]] = {}
        self._lock = threading.Lock()
        self.hits = 0
        self.misses = 0

    @property
    def max_entries(self) -> int:
        if self._max_entries is None:
            return get_settings().cache_size
        return self._max_entries

    def get(self, key: str) -> T | None:
        with self._lock:
            entry = self._cache.get(key)
            if entry is None:
                self.misses += 1
                return None
            self.hits += 1
            logger.debug("Cache hit: %s", key[:60])
            return entry.value

    def set(self, key: str, value: T) -> None:
        with self._lock:
            if key not in self._cache and len(self._cache) >= self.max_entries:
                self._evict_oldest_unlocked(max(1, len(self._cache) // 10))
            self._cache[key] = CacheEntry(value=value)

    def clear(self) -> None:
        with self._lock:
            self._cache.clear()
            self.hits = 0
            self.misses = 0
            logger.debug("Cache cleared")

    def _evict_oldest_unlocked(self, count: int) -> None:
        """Evict the ``count`` entries created first. Must be called with lock held."""
        by_age = sorted(self._cache.items(), key=lambda item: item[1].created_at)
        for key, _ in by_age[:count]:
            del self._cache[key]
        logger.debug("Evicted %d oldest cache entries", count)

    @property
    def size(self) -> int:
        return len(self._cache)


def make_cache_key(*args: Any) -> str:
    """Create a cache key from multiple arguments."""
    return ":".join(str(arg) for arg in args)


def table_key(A: AlgebraTable) -> str:
    """Cache key identifying a table by dimension and nonzero constants."""
    return make_cache_key(A.dim, *(f"{i},{j},{k},{c}" for i, j, k, c in A.entries))
