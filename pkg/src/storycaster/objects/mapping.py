"""Physical-to-virtual object mapping and mask-scoped edits.

Mapping generation is a backend call over four inputs (current scene,
previous scene, detected objects, previous mappings); a post-hoc continuity
rule keeps a previous mapping whenever its virtual object still appears
verbatim in the current scene text.  Backend failure degrades to an identity
mapping (nothing transformed) with a warning rather than stalling a scene.
"""

from __future__ import annotations

import base64
import logging
from dataclasses import dataclass, field

from ..backends.hub import BackendHub
from ..backends.requests import ChatRequest, ImageGenRequest
from ..errors import BackendError
from ..geometry.types import CylindricalDepthImage, PanoramaImage
from ..imageio import mask_png_bytes
from ..story.prompts import PromptAssets
from ..textutil import stable_hash64
from .masks import MaskRegistry

log = logging.getLogger(__name__)

INPAINT_STRENGTH_DEFAULT = 0.54


@dataclass
class ObjectMapping:
    pairs: dict[str, str]  # physical name -> virtual description
    inpaint_prompt: str
    act: int


def generate_mappings(
    hub: BackendHub,
    prompts: PromptAssets,
    current_scene: str,
    previous_scene: str,
    registry: MaskRegistry,
    previous_mappings: dict[str, str] | None,
    seed: int,
    act: int = 1,
) -> ObjectMapping:
    """Map every registry object to a story-appropriate virtual counterpart."""
    if not registry.masks:
        raise BackendError("mask registry is empty; nothing to map")
    previous_mappings = previous_mappings or {}
    objects = registry.names()
    try:
        raw = hub.chat(
            ChatRequest(
                system_prompt=prompts.render(
                    "object_mapper",
                    current_scene=current_scene,
                    previous_scene=previous_scene or "(none)",
                    objects=", ".join(objects),
                    previous_mappings=(
                        ", ".join(f"{k} -> {v}" for k, v in sorted(previous_mappings.items()))
                        or "(none)"
                    ),
                ),
                messages=[],
                seed=stable_hash64("mapping", str(seed), current_scene) % 2**31,
            )
        )
    except BackendError as exc:
        log.warning("mapping backend failed (%s); leaving objects unmapped", exc)
        return ObjectMapping(pairs={}, inpaint_prompt="", act=act)

    pairs: dict[str, str] = {}
    inpaint_prompt = ""
    for line in raw.splitlines():
        if line.lower().startswith("inpaint prompt:"):
            inpaint_prompt = line.split(":", 1)[1].strip()
        elif "->" in line:
            phys, _, virt = line.partition("->")
            phys = phys.strip().lower()
            if phys in registry:
                pairs[phys] = virt.strip()

    # continuity rule: a previous virtual object still named in the scene stays
    scene_lower = current_scene.lower()
    for phys, virt in previous_mappings.items():
        if phys in registry and virt and virt.lower() in scene_lower:
            pairs[phys] = virt
    return ObjectMapping(pairs=pairs, inpaint_prompt=inpaint_prompt, act=act)


@dataclass
class EditRecord:
    """What was sent to the inpainting backend for one object edit."""

    physical: str
    virtual: str
    prompt: str
    control_strength: float
    mask_base64: str


def apply_object_edit(
    hub: BackendHub,
    registry: MaskRegistry,
    physical: str,
    virtual: str,
    base_pano: PanoramaImage,
    depth: CylindricalDepthImage,
    control_mask,
    seed: int,
    control_strength: float = INPAINT_STRENGTH_DEFAULT,
    prompt_suffix: str = "",
) -> tuple[PanoramaImage, EditRecord]:
    """Inpaint one object's mask region; pixels outside the mask are untouched.

    Raises :class:`UnknownObjectError` (listing known names) for objects the
    registry does not hold; the narrator speaks that message back.
    """
    mask = registry.get(physical)  # raises UnknownObjectError with the listing
    prompt = f"a {virtual}, matching the scene lighting, saturated bright colors"
    if prompt_suffix:
        prompt += f", {prompt_suffix}"
    record = EditRecord(
        physical=physical,
        virtual=virtual,
        prompt=prompt,
        control_strength=control_strength,
        mask_base64=base64.b64encode(mask_png_bytes(mask)).decode("ascii"),
    )
    req = ImageGenRequest(
        prompt=prompt,
        depth=depth,
        control_strength=control_strength,
        control_mask=control_mask,
        seed=seed,
        output_size=(base_pano.width, base_pano.height),
        inpaint_mask=mask,
    )
    return hub.inpaint_image(base_pano, req), record
