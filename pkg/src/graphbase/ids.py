"""Time-sortable 26-character identifiers (ULID layout).

48 bits of millisecond timestamp followed by 80 random bits, encoded in
Crockford base32: lexicographic order equals creation order, ids are
URL-safe and fixed-length.  Within one process, ids created in the same
millisecond stay monotonic by incrementing the random part.
"""

from __future__ import annotations

import os
import re
import threading
import time

_ALPHABET = "0123456789ABCDEFGHJKMNPQRSTVWXYZ"
_ID_RE = re.compile(r"^[0-9A-HJKMNP-TV-Z]{26}$")

_lock = threading.Lock()
_last: tuple[int, int] | None = None  # (timestamp_ms, random80)


def new_id() -> str:
    global _last
    with _lock:
        now_ms = time.time_ns() // 1_000_000
        if _last is not None and _last[0] >= now_ms:
            now_ms = _last[0]
            rand = (_last[1] + 1) & ((1 << 80) - 1)
        else:
            rand = int.from_bytes(os.urandom(10), "big")
        _last = (now_ms, rand)
    value = (now_ms << 80) | rand
    chars = []
    for _ in range(26):
        chars.append(_ALPHABET[value & 31])
        value >>= 5
    return "".join(reversed(chars))


def is_valid(candidate: str) -> bool:
    return _ID_RE.match(candidate) is not None
