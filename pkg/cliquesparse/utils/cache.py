"""
Memoization utilities for the exhaustive solvers.

Provides a bounded, thread-safe LRU table keyed by hashable values
(usually vertex bitsets) with hit/miss statistics.
"""

import threading
from collections import OrderedDict
from typing import Any, Callable, Dict, Hashable, Optional

from ..core.config import resolve_cap

_MISSING = object()


class MemoTable:
    """
    Thread-safe bounded LRU table.

    Tables are created per solver invocation, so entries never outlive the
    graph they were computed for.
    """

    def __init__(self, max_size: Optional[int] = None, name: str = 'memo'):
        """
        Initialize the memo table.

        Args:
            max_size: Maximum number of entries (memo_max_size cap if None)
            name: Label used in statistics
        """
        self.name = name
        self.max_size = resolve_cap('memo_max_size', max_size)
        self._table: "OrderedDict[Hashable, Any]" = OrderedDict()
        self._lock = threading.RLock()
        self.hits = 0
        self.misses = 0

    def get(self, key: Hashable, default: Any = None) -> Any:
        """
        Get a value from the table.

        Args:
            key: Table key
            default: Returned when the key is absent

        Returns:
            Stored value or default
        """
        with self._lock:
            value = self._table.get(key, _MISSING)
            if value is _MISSING:
                self.misses += 1
                return default
            self.hits += 1
            self._table.move_to_end(key)
            return value

    def set(self, key: Hashable, value: Any) -> None:
        """
        Store a value, evicting the least recently used entry when full.

        Args:
            key: Table key
            value: Value to store
        """
        with self._lock:
            if key in self._table:
                del self._table[key]
            elif len(self._table) >= self.max_size:
                self._table.popitem(last=False)
            self._table[key] = value

    def get_or_compute(self, key: Hashable, compute: Callable[[], Any]) -> Any:
        """Return the stored value for key, computing and storing it on a miss."""
        value = self.get(key, _MISSING)
        if value is _MISSING:
            value = compute()
            self.set(key, value)
        return value

    def __contains__(self, key: Hashable) -> bool:
        with self._lock:
            return key in self._table

    def clear(self) -> None:
        """Clear all entries and statistics."""
        with self._lock:
            self._table.clear()
            self.hits = 0
            self.misses = 0

    def size(self) -> int:
        """Get current table size."""
        with self._lock:
            return len(self._table)

    def get_stats(self) -> Dict[str, Any]:
        """Get table statistics."""
        with self._lock:
            return {
                'name': self.name,
                'size': len(self._table),
                'max_size': self.max_size,
                'hits': self.hits,
                'misses': self.misses,
            }
