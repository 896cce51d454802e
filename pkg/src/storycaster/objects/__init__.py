"""Object-level editing: masks, mappings, and visual matching."""

from .mapping import (
    EditRecord,
    INPAINT_STRENGTH_DEFAULT,
    ObjectMapping,
    apply_object_edit,
    generate_mappings,
)
from .masks import MASK_FILE_RE, MaskRegistry, load_masks, mask_filename
from .matching import (
    DEFAULT_THRESHOLD,
    DESCRIPTOR_DIM,
    MatchQuery,
    best_visual_match,
    cosine,
    embed_query,
    load_descriptors,
    room_detections,
)

__all__ = [
    "DEFAULT_THRESHOLD",
    "DESCRIPTOR_DIM",
    "EditRecord",
    "INPAINT_STRENGTH_DEFAULT",
    "MASK_FILE_RE",
    "MaskRegistry",
    "MatchQuery",
    "ObjectMapping",
    "apply_object_edit",
    "best_visual_match",
    "cosine",
    "embed_query",
    "generate_mappings",
    "load_descriptors",
    "load_masks",
    "mask_filename",
    "room_detections",
]
