"""Visual best-match for virtual object queries.

A detection backend supplies (name, descriptor) pairs for the objects it can
see; queries embed the requested virtual object and take the cosine-nearest
detection above a similarity threshold.  With a deliberately low threshold
(0.1 by default) this maps imaginary objects onto whatever in the room looks
most like them; raising the threshold filters monotonically toward none.

The bundled fixture descriptors are 16-float shape sketches (elongation,
hollowness, height, and so on) for the room objects plus a few query words,
stored as a plain text table: ``name v1 .. v16`` per line.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..errors import StorycasterError
from ..textutil import stable_hash64

DESCRIPTOR_DIM = 16
DEFAULT_THRESHOLD = 0.1


@dataclass
class MatchQuery:
    virtual_object: str
    similarity_threshold: float = DEFAULT_THRESHOLD

    def __post_init__(self):
        if not 0.0 < self.similarity_threshold <= 1.0:
            raise StorycasterError("similarity threshold must lie in (0, 1]")


def load_descriptors(path: str | Path) -> dict[str, np.ndarray]:
    table: dict[str, np.ndarray] = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != DESCRIPTOR_DIM + 1:
            raise StorycasterError(
                f"descriptor line {lineno}: need name + {DESCRIPTOR_DIM} floats"
            )
        table[parts[0].lower()] = np.array([float(v) for v in parts[1:]])
    return table


def embed_query(name: str, table: dict[str, np.ndarray]) -> np.ndarray:
    """Descriptor for a query word: table lookup, else a stable pseudo-vector."""
    key = name.lower().strip()
    if key in table:
        return table[key]
    rng = np.random.default_rng(stable_hash64("embed", key) % 2**63)
    return rng.normal(size=DESCRIPTOR_DIM)


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))


def best_visual_match(
    query: MatchQuery,
    detections: list[tuple[str, np.ndarray]],
    table: dict[str, np.ndarray],
) -> tuple[str, float] | None:
    """Highest-similarity detection at or above the threshold, else None."""
    qv = embed_query(query.virtual_object, table)
    best: tuple[str, float] | None = None
    for name, desc in detections:
        score = cosine(qv, np.asarray(desc, dtype=np.float64))
        if best is None or score > best[1]:
            best = (name, score)
    if best is None or best[1] < query.similarity_threshold:
        return None
    return best


def room_detections(
    table: dict[str, np.ndarray], object_names: list[str]
) -> list[tuple[str, np.ndarray]]:
    """Fixture detections for the registry objects present in the table."""
    return [(name, table[name]) for name in object_names if name in table]
