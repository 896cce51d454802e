"""Deterministic mock providers.

Every mock is a pure function of its request (seed included): repeated calls
return byte-identical results.  The image mock follows a fixed, documented
contract so pipeline tests can assert exact behavior:

* base color: hue derived from the prompt hash;
* luminance: scaled by ``1 + strength * (depth_norm - 0.5)`` wherever the
  control mask is set and depth is positive, untouched elsewhere;
* a small seeded per-pixel dither so constant regions still carry variance.

The chat mock recognizes which prompt template it was handed (by markers
that exist in the bundled templates) and produces rule-based deterministic
completions for each role.
"""

from __future__ import annotations

import colorsys
import re

import numpy as np

from ..errors import BackendError
from ..geometry.types import PanoramaImage
from ..textutil import (
    ACTION_WORDS,
    MOOD_WORDS,
    SETTING_WORDS,
    SLOT_NAMES,
    content_words,
    detect_story_slots,
    looks_outdoor,
    stable_hash64,
    tokenize,
)
from .requests import (
    PLAYBACK_SAMPLE_RATE,
    SPEECH_SAMPLE_RATE,
    VOICES,
    AmbientAudioRequest,
    ChatRequest,
    ImageGenRequest,
    SpeechRequest,
)

MAX_IMAGE_DIM = 8192

# ---------------------------------------------------------------------------
# images


def _prompt_hue(prompt: str) -> float:
    return (stable_hash64("hue", prompt) % 3600) / 3600.0


def _base_color(prompt: str) -> np.ndarray:
    r, g, b = colorsys.hsv_to_rgb(_prompt_hue(prompt), 0.58, 0.62)
    return np.array([r, g, b]) * 255.0


def _nearest_resize(field: np.ndarray, out_w: int, out_h: int) -> np.ndarray:
    h, w = field.shape[:2]
    xi = np.clip(((np.arange(out_w) + 0.5) * w / out_w - 0.5).round().astype(int), 0, w - 1)
    yi = np.clip(((np.arange(out_h) + 0.5) * h / out_h - 0.5).round().astype(int), 0, h - 1)
    return field[yi][:, xi]


def bilinear_resize(img: np.ndarray, out_w: int, out_h: int) -> np.ndarray:
    """Half-pixel-aligned bilinear resize of an (H, W, C) array.

    Separable (rows then columns) in float32 to keep 4x panorama upscales
    cheap.
    """
    h, w = img.shape[:2]

    def axis_coords(n_in: int, n_out: int):
        x = (np.arange(n_out) + 0.5) * n_in / n_out - 0.5
        x0 = np.clip(np.floor(x).astype(np.int64), 0, n_in - 1)
        x1 = np.clip(x0 + 1, 0, n_in - 1)
        f = np.clip(x - x0, 0.0, 1.0).astype(np.float32)
        return x0, x1, f

    y0, y1, fy = axis_coords(h, out_h)
    x0, x1, fx = axis_coords(w, out_w)
    arr = img.astype(np.float32)
    rows = arr[y0] * (1 - fy)[:, None, None] + arr[y1] * fy[:, None, None]
    return rows[:, x0] * (1 - fx)[None, :, None] + rows[:, x1] * fx[None, :, None]


class MockImageProvider:
    """Depth-aware procedural image generation, inpainting, upscaling."""

    def _render_field(self, req: ImageGenRequest) -> np.ndarray:
        depth = req.depth.depth
        positive = depth > 0
        dmax = float(depth.max()) if positive.any() else 1.0
        dn = np.where(positive, depth / dmax, 0.0)
        modulated = req.control_mask & positive
        mod = np.where(modulated, 1.0 + req.control_strength * (dn - 0.5), 1.0)

        out_w, out_h = req.output_size
        mod = _nearest_resize(mod, out_w, out_h)
        base = _base_color(req.prompt)
        rng = np.random.default_rng(
            np.uint64(req.seed) ^ np.uint64(stable_hash64("dither", req.prompt))
        )
        noise = rng.integers(-5, 6, size=(out_h, out_w, 1))
        img = base[None, None, :] * mod[..., None] + noise
        return np.clip(np.rint(img), 0, 255).astype(np.uint8)

    def generate(self, req: ImageGenRequest) -> PanoramaImage:
        return PanoramaImage(self._render_field(req))

    def inpaint(self, base: PanoramaImage, req: ImageGenRequest) -> PanoramaImage:
        if req.inpaint_mask is None:
            raise BackendError("inpainting requires an inpaint mask")
        out_w, out_h = req.output_size
        if (base.width, base.height) != (out_w, out_h):
            raise BackendError("base image dimensions must match the request output size")
        region = _nearest_resize(req.inpaint_mask, out_w, out_h)
        fresh = self._render_field(req)
        out = base.pixels.copy()
        out[region] = fresh[region]
        return PanoramaImage(out)

    def upscale(self, img: PanoramaImage, factor: int) -> PanoramaImage:
        if factor not in (2, 4):
            raise BackendError("upscale factor must be 2 or 4")
        out_w, out_h = img.width * factor, img.height * factor
        if max(out_w, out_h) > MAX_IMAGE_DIM:
            raise BackendError(f"upscaled dimension exceeds {MAX_IMAGE_DIM}")
        up = bilinear_resize(img.pixels, out_w, out_h)
        up += 0.5  # round-half-up; values are non-negative
        np.clip(up, 0.0, 255.0, out=up)
        return PanoramaImage(up.astype(np.uint8))


# ---------------------------------------------------------------------------
# ambient audio


class MockAmbientProvider:
    """Layered periodic tones plus spectrally-shaped looped noise.

    Every component's period divides the buffer length, so the loop seam is
    continuous by construction.
    """

    def generate(self, req: AmbientAudioRequest) -> np.ndarray:
        frames = int(round(req.duration_s * PLAYBACK_SAMPLE_RATE))
        rng = np.random.default_rng(
            np.uint64(req.seed) ^ np.uint64(stable_hash64("ambient", req.prompt))
        )
        t = np.arange(frames) / PLAYBACK_SAMPLE_RATE
        out = np.zeros((frames, 2), dtype=np.float64)
        for _ in range(4):
            cycles = max(1, int(round(rng.uniform(40.0, 600.0) * req.duration_s)))
            freq = cycles / req.duration_s
            amp = rng.uniform(0.04, 0.14)
            phase = rng.uniform(0, 2 * np.pi)
            pan = rng.uniform(0.2, 0.8)
            wave = amp * np.sin(2 * np.pi * freq * t + phase)
            # slow integer-cycle tremolo keeps the seam continuous
            trem_cycles = max(1, int(round(rng.uniform(0.1, 0.5) * req.duration_s)))
            wave *= 0.7 + 0.3 * np.sin(2 * np.pi * trem_cycles / req.duration_s * t)
            out[:, 0] += wave * (1.0 - pan)
            out[:, 1] += wave * pan

        # periodic noise bed: random phases on integer frequency bins
        n_bins = frames // 2 + 1
        mag = np.zeros(n_bins)
        lo, hi = sorted(rng.integers(8, max(9, n_bins // 8), size=2))
        hi = max(hi, lo + 4)
        band = np.arange(lo, min(hi, n_bins))
        mag[band] = rng.uniform(0.2, 1.0, size=len(band)) / len(band)
        for ch in range(2):
            phases = rng.uniform(0, 2 * np.pi, n_bins)
            spec = mag * np.exp(1j * phases)
            noise = np.fft.irfft(spec, n=frames)
            peak = np.abs(noise).max()
            if peak > 0:
                noise = noise / peak * 0.05
            out[:, ch] += noise

        peak = np.abs(out).max()
        if peak > 0.9:
            out *= 0.9 / peak
        return out.astype(np.float32)


# ---------------------------------------------------------------------------
# speech

VOICE_FUNDAMENTALS = {
    "alloy": 220.0,
    "echo": 175.0,
    "fable": 196.0,
    "onyx": 147.0,
    "nova": 262.0,
    "shimmer": 311.0,
}

WORD_DURATION_S = 0.06


class MockSpeechProvider:
    """Syllable-free beep speech: one 60 ms amplitude-shaped tone per word."""

    def synthesize(self, req: SpeechRequest) -> np.ndarray:
        words = req.text.split()
        if not words:
            raise BackendError("speech text must contain at least one word")
        f0 = VOICE_FUNDAMENTALS[req.voice]
        seg = int(round(WORD_DURATION_S * SPEECH_SAMPLE_RATE))
        t = np.arange(seg) / SPEECH_SAMPLE_RATE
        fade = max(1, seg // 6)
        env = np.ones(seg)
        ramp = np.linspace(0.0, 1.0, fade)
        env[:fade] = ramp
        env[-fade:] = ramp[::-1]
        out = np.empty(seg * len(words), dtype=np.float64)
        for k, word in enumerate(words):
            jitter = ((stable_hash64(req.voice, word, str(k)) % 1000) / 1000.0 - 0.5) * 0.06
            f = f0 * (1.0 + jitter)
            tone = 0.30 * np.sin(2 * np.pi * f * t) + 0.08 * np.sin(2 * np.pi * 2 * f * t)
            out[k * seg : (k + 1) * seg] = tone * env
        return out.astype(np.float32)


# ---------------------------------------------------------------------------
# chat

_NAME_POOL = (
    "Mira", "Orrin", "Talia", "Bren", "Suri", "Kato", "Elen", "Rook",
    "Vada", "Joss", "Petra", "Finn",
)

_STYLE_POOL = (
    "Warm and steady, unhurried pace, quietly confident.",
    "Bright and eager, quick pace, rising energy.",
    "Low and gravelly, deliberate pauses, wry humor.",
    "Gentle and airy, soft dynamics, wonder in every line.",
    "Crisp and commanding, clipped rhythm, focused.",
    "Playful and musical, light lilt, mischievous edge.",
)

_VIRTUAL_POOL = (
    "campfire", "treasure chest", "quilt", "glowing console", "mossy boulder",
    "market stall", "escape pod", "crystal shard", "woven basket", "star chart table",
)

_AMBIENCE_TABLE = (
    ({"forest", "tree", "trees", "woods", "grove", "enchanted"},
     "gentle wind through ancient trees, soft magical chimes, footsteps on moss and leaves"),
    ({"space", "station", "ship", "orbit", "mars", "stars", "rocket"},
     "low engine hum, electronic beeping, distant metallic resonance"),
    ({"sea", "ocean", "waves", "harbor", "boat", "sail"},
     "rolling waves, creaking timber, distant gulls, rope and canvas sounds"),
    ({"rain", "storm", "thunder"},
     "steady rain on windows, distant thunder, dripping water"),
    ({"fire", "fireplace", "campfire", "hearth", "tavern"},
     "crackling fire, muffled conversations, wooden creaking"),
    ({"cave", "mine", "tunnel", "underground"},
     "dripping water, deep stone echoes, faint mineral shimmer"),
    ({"desert", "canyon", "dunes"},
     "dry wind over sand, distant hawk cries, shifting grit"),
    ({"city", "market", "street", "bazaar"},
     "murmuring crowds, distant bells, cart wheels on stone"),
    ({"mountain", "glacier", "peak", "cliff"},
     "thin whistling wind, distant rockfall, vast open air"),
    ({"night", "owl", "moon"},
     "soft night insects, distant owl calls, still air"),
)

_POSITIVE_PHRASES = (
    "yes", "yeah", "yep", "sure", "ready", "lets go", "let's go", "go ahead",
    "absolutely", "i am ready", "i'm ready", "im ready", "ok", "okay",
    "sounds good", "do it", "begin", "start", "of course", "please do",
)

_NEGATIVE_PHRASES = (
    "no", "not yet", "not ready", "wait", "hold on", "add", "change", "actually",
    "first", "one more", "another detail", "hmm", "can we", "could we", "instead",
)

_COACH_POOLS = {
    "The Confrontation": (
        "A rival arrives demanding the {noun}",
        "A sudden storm cuts off every path",
        "The {noun} vanishes in the night",
        "An old enemy returns with a warning",
        "A hidden trap splits the companions apart",
        "A risky bargain is offered at a price",
    ),
    "The Resolution": (
        "The true guardian of the {noun} is revealed",
        "A brave sacrifice repairs what was broken",
        "The companions outwit their rival together",
        "A hidden door leads them home changed",
        "Peace is made and the {noun} returned",
        "The long journey ends where it began",
    ),
}

_SCENE_OPENERS = (
    "The {a} of {b} stretches around them in every direction.",
    "Light falls across the {a}, and the {b} waits in the quiet.",
    "They arrive where the {a} meets the {b}, breath held.",
)

_DIALOGUE_TEMPLATES = (
    "Do you see the {a} ahead of us?",
    "Stay close, the {a} is not what it seems.",
    "I have waited a long time to find this {a}.",
    "Whatever happens, we keep the {a} safe.",
    "Listen, something is moving near the {a}.",
    "Then it is decided, we go toward the {a} together.",
    "The old stories about the {a} were true after all.",
    "Give me your hand, the {a} is closer than you think.",
)

_NARRATION_TEMPLATES = (
    "A hush settles while the {a} glimmers faintly.",
    "Far off, the {b} answers with a low sound.",
    "The companions trade a look and press on past the {a}.",
    "Shadows shift along the {b} as the moment stretches.",
)


def _pick(rng: np.random.Generator, seq):
    return seq[int(rng.integers(0, len(seq)))]


def _fill(template: str, words: list[str], rng: np.random.Generator) -> str:
    a = words[int(rng.integers(0, len(words)))] if words else "path"
    b = words[int(rng.integers(0, len(words)))] if words else "horizon"
    return template.replace("{a}", a).replace("{b}", b)


def _field(prompt: str, label: str) -> str:
    m = re.search(rf"{label}\s*:?(.*)", prompt)
    return m.group(1).strip() if m else ""


class MockChatProvider:
    """Rule-based completions keyed off the template a request carries."""

    def complete(self, req: ChatRequest) -> str:
        sp = req.system_prompt
        if "Scene Converser" in sp:
            return self._converse(req)
        if "masterful storyteller creating Scene" in sp:
            return self._scene(req)
        if "SDXL image prompt" in sp:
            return self._image_prompt(sp)
        if "INDOOR or OUTDOOR" in sp:
            return "OUTDOOR" if looks_outdoor(_field(sp, "Scene description")) else "INDOOR"
        if "ambient audio prompt" in sp:
            return self._ambient_prompt(sp)
        if "Story Coach" in sp:
            return self._coach(sp, req.seed)
        if "POSITIVE, NEGATIVE, or UNCLEAR" in sp:
            return self._confirmation(_field(sp, "Reply"))
        if "vocal style" in sp.lower():
            speaker = _field(sp, "Character")
            return _STYLE_POOL[stable_hash64("style", speaker) % len(_STYLE_POOL)]
        if "virtual counterpart" in sp:
            return self._mappings(sp)
        # default: echo a short acknowledgment with stable content
        return f"Understood ({stable_hash64(sp) % 997})."

    # -- conversation -----------------------------------------------------
    def _converse(self, req: ChatRequest) -> str:
        user_text = " ".join(text for role, text in req.messages if role == "user")
        slots = detect_story_slots(user_text)
        missing = [s for s in SLOT_NAMES if s not in slots]
        words = content_words(user_text)
        topic = next((w for w in words if w not in ("story", "tale")), "story")
        if not missing:
            return (
                "READY\n"
                f"That gives me everything I need! A {topic} tale it is. "
                "Are you ready to bring your story to life?"
            )
        questions = {
            "setting": f"I love it! Where does this {topic} story take place?",
            "characters": "Wonderful! Who is there in this scene?",
            "action": "Perfect! What is the key thing happening or about to happen?",
            "mood": "Great setup! What is the general feeling or atmosphere?",
        }
        return "NEED MORE\n" + questions[missing[0]]

    # -- storytelling -------------------------------------------------------
    def _scene(self, req: ChatRequest) -> str:
        sp = req.system_prompt
        storyline = _field(sp, "Original Storyline")
        user_ctx = _field(sp, r"User direction")
        object_ctx = _field(sp, r"Personal object")
        rng = np.random.default_rng(
            np.uint64(req.seed) ^ np.uint64(stable_hash64("scene", sp))
        )
        words = content_words(storyline + " " + user_ctx) or ["path", "horizon"]
        n1 = _pick(rng, _NAME_POOL)
        n2 = _pick(rng, [n for n in _NAME_POOL if n != n1])
        target = 8 + int(rng.integers(0, 3))  # 8..10 sentences
        lines: list[str] = [_fill(_pick(rng, _SCENE_OPENERS), words, rng)]
        speakers = (n1, n2)
        while len(lines) < target - 1:
            k = len(lines)
            if k % 3 == 2:
                lines.append(_fill(_pick(rng, _NARRATION_TEMPLATES), words, rng))
            else:
                who = speakers[k % 2]
                lines.append(f"{who.upper()}: " + _fill(_pick(rng, _DIALOGUE_TEMPLATES), words, rng))
        if object_ctx:
            keep = content_words(object_ctx)
            token = " ".join(keep[:3]) if keep else "keepsake"
            lines.append(f"Between them, the {token} catches the light like a promise.")
        else:
            lines.append(_fill(_pick(rng, _NARRATION_TEMPLATES), words, rng))
        return "\n".join(lines)

    # -- image prompt -------------------------------------------------------
    def _image_prompt(self, sp: str) -> str:
        m = re.search(r"Story to Convert:(.*?)(?:Create ONE|$)", sp, re.DOTALL)
        story = m.group(1).strip() if m else sp
        words = content_words(story)
        skip = {name.lower() for name in _NAME_POOL}
        visual = [w for w in words if w not in skip][:18]
        return ", ".join(visual) + ", saturated bright colors, cinematic composition"

    # -- ambient prompt -------------------------------------------------------
    def _ambient_prompt(self, sp: str) -> str:
        m = re.search(r"Now convert this story:(.*?)(?:Generate only|$)", sp, re.DOTALL)
        story = (m.group(1) if m else sp).lower()
        toks = set(tokenize(story))
        phrases = [phrase for keys, phrase in _AMBIENCE_TABLE if toks & keys]
        if not phrases:
            return "gentle neutral room tone"
        return "Ambience with " + ", ".join(phrases[:2])

    # -- story coach -------------------------------------------------------
    def _coach(self, sp: str, seed: int) -> str:
        act_name = _field(sp, "Story Act").split("(")[0].strip() or "The Confrontation"
        excerpt = _field(sp, "Latest events")
        storyline = _field(sp, "Original idea")
        pool = _COACH_POOLS.get(act_name, _COACH_POOLS["The Confrontation"])
        words = [w for w in content_words(excerpt + " " + storyline) if len(w) > 3]
        noun = words[0] if words else "journey"
        rng = np.random.default_rng(np.uint64(seed) ^ np.uint64(stable_hash64("coach", sp)))
        picks = rng.permutation(len(pool))[:3]
        options = [pool[int(i)].replace("{noun}", noun) for i in picks]
        summary_words = " ".join(storyline.split()[:14]) or "Your story is underway"
        return (
            f"So far: {summary_words}. Here are some options for what could happen "
            "next in this Act:\n\n"
            f"1. {options[0]}\n2. {options[1]}\n3. {options[2]}\n\n"
            "You can pick option 1, 2, or 3, share your own idea directly, "
            "or say 'you decide' and I'll surprise you! What sounds good?"
        )

    # -- confirmation -------------------------------------------------------
    def _confirmation(self, reply: str) -> str:
        toks = tokenize(reply)
        text = " ".join(toks)
        for phrase in _NEGATIVE_PHRASES:
            ptoks = phrase.split()
            for i in range(len(toks) - len(ptoks) + 1):
                if toks[i : i + len(ptoks)] == ptoks:
                    return "NEGATIVE"
        for phrase in _POSITIVE_PHRASES:
            if phrase in text:
                return "POSITIVE"
        return "UNCLEAR"

    # -- object mappings -----------------------------------------------------
    def _mappings(self, sp: str) -> str:
        scene = _field(sp, "Current scene")
        objects = [o.strip() for o in _field(sp, "Physical objects").split(",") if o.strip()]
        digest = str(stable_hash64("scenekey", scene))
        lines = []
        chosen = []
        for obj in objects:
            virtual = _VIRTUAL_POOL[stable_hash64(obj, digest) % len(_VIRTUAL_POOL)]
            chosen.append(virtual)
            lines.append(f"{obj} -> {virtual}")
        lines.append(
            "Inpaint prompt: " + ", ".join(f"a {v}" for v in chosen)
            + ", blended into the scene, saturated bright colors"
        )
        return "\n".join(lines)


class ScriptedChatProvider:
    """Canned chat replies in order (fault injection in tests).

    With ``then_mock`` set, falls through to the rule-based mock once the
    scripted replies run out.
    """

    def __init__(self, replies: list[str], then_mock: bool = True):
        self._replies = list(replies)
        self._fallback = MockChatProvider() if then_mock else None
        self.calls = 0

    def complete(self, req: ChatRequest) -> str:
        self.calls += 1
        if self._replies:
            return self._replies.pop(0)
        if self._fallback is not None:
            return self._fallback.complete(req)
        raise BackendError("scripted chat exhausted")
