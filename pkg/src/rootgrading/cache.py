"""Keyed on-disk cache with integrity digests and atomic writes.

The directory defaults to a per-user cache root and can be overridden by
the ROOTGRADING_CACHE_DIR environment variable or a CLI flag.  Entries are
JSON blobs wrapped with a sha256 digest; a corrupt entry is treated as a
miss and recomputed by the caller.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile

ENV_VAR = "ROOTGRADING_CACHE_DIR"


def default_dir() -> str:
    override = os.environ.get(ENV_VAR)
    if override:
        return override
    base = os.environ.get("XDG_CACHE_HOME", os.path.join(os.path.expanduser("~"), ".cache"))
    return os.path.join(base, "rootgrading")


def _path(cache_dir, key):
    safe = key.replace("/", "_").replace(":", "_")
    return os.path.join(cache_dir, safe + ".json")


def load(key: str, cache_dir=None):
    """The cached object for a key, or None on miss or corruption."""
    cache_dir = cache_dir or default_dir()
    path = _path(cache_dir, key)
    try:
        with open(path, "r", encoding="utf-8") as fh:
            wrapper = json.load(fh)
        blob = json.dumps(wrapper["payload"], sort_keys=True, separators=(",", ":"))
        if wrapper.get("digest") != hashlib.sha256(blob.encode()).hexdigest():
            return None
        return wrapper["payload"]
    except (OSError, ValueError, KeyError, TypeError):
        return None


def store(key: str, payload, cache_dir=None) -> None:
    """Atomically persist a JSON-serializable payload under a key."""
    cache_dir = cache_dir or default_dir()
    os.makedirs(cache_dir, exist_ok=True)
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    wrapper = {
        "digest": hashlib.sha256(blob.encode()).hexdigest(),
        "payload": payload,
    }
    fd, tmp = tempfile.mkstemp(dir=cache_dir, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            json.dump(wrapper, fh, sort_keys=True, separators=(",", ":"))
        os.replace(tmp, _path(cache_dir, key))
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise
