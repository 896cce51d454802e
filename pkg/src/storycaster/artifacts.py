"""Content-addressed artifact storage.

Generated panoramas, frames, and audio land under one directory named by
content hash, so identical outputs dedupe and event URLs are deterministic
for deterministic runs.
"""

from __future__ import annotations

import hashlib
from pathlib import Path


class ArtifactStore:
    def __init__(self, root: str | Path):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)

    def put(self, data: bytes, suffix: str) -> str:
        """Store bytes; returns the relative URL ``artifacts/<hash><suffix>``."""
        digest = hashlib.sha256(data).hexdigest()[:20]
        name = f"{digest}{suffix}"
        path = self.root / name
        if not path.exists():
            path.write_bytes(data)
        return f"artifacts/{name}"

    def path_for(self, url: str) -> Path:
        return self.root / Path(url).name
