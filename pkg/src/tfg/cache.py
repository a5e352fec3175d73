"""On-disk cache of rendered command payloads.

A key is the sha256 of the subcommand, its canonical arguments and
:data:`FORMAT_VERSION`; bumping the version is the only invalidation.
Entries are written to a temporary file in the cache directory and renamed
into place, so concurrent writers never expose a partial file.
"""
from __future__ import annotations

import hashlib
import json
import os
import tempfile
from pathlib import Path
from typing import Optional

FORMAT_VERSION = 1
ENV_VAR = "TFG_CACHE_DIR"


def cache_key(subcommand: str, args: dict) -> str:
    blob = json.dumps({"cmd": subcommand, "args": args, "version": FORMAT_VERSION},
                      sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(blob.encode("utf-8")).hexdigest()


class ResultCache:
    def __init__(self, root):
        self.root = Path(root)

    @classmethod
    def from_option(cls, path: Optional[str]) -> Optional["ResultCache"]:
        path = path or os.environ.get(ENV_VAR)
        return cls(path) if path else None

    def _path(self, key: str) -> Path:
        return self.root / f"{key}.txt"

    def get(self, key: str) -> Optional[str]:
        try:
            return self._path(key).read_text(encoding="utf-8")
        except FileNotFoundError:
            return None

    def put(self, key: str, payload: str) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=self.root, prefix=".tmp-", suffix=".txt")
        try:
            with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
                fh.write(payload)
            os.replace(tmp, self._path(key))
        except BaseException:
            try:
                os.unlink(tmp)
            except FileNotFoundError:
                pass
            raise
