"""Content-addressed on-disk cache for rank and elementary-divisor results."""

from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path

ENV_VAR = "MONOIDCOH_CACHE_DIR"


def default_cache_dir() -> Path:
    if os.environ.get(ENV_VAR):
        return Path(os.environ[ENV_VAR])
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "monoidcoh"


class DiskCache:
    """JSON values keyed by strings such as ``rank-<sha256>``.

    Writes go through a temporary file and ``os.replace`` so concurrent
    workers never observe partial entries.
    """

    def __init__(self, root=None):
        self.root = Path(root) if root is not None else default_cache_dir()
        self.hits = 0
        self.misses = 0

    def _path(self, key):
        kind, _, digest = key.partition("-")
        return self.root / kind / digest[:2] / f"{digest}.json"

    def get(self, key):
        try:
            with open(self._path(key)) as fh:
                value = json.load(fh)
        except (OSError, ValueError):
            self.misses += 1
            return None
        self.hits += 1
        return value

    def put(self, key, value):
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(value, fh)
        os.replace(tmp, path)
