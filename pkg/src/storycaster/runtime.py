"""Headless session runtime: executes narrator effects against real subsystems.

The narrator owns state; this runtime owns everything with a cost: scene
generation (storyteller -> visuals -> object mappings -> audio), object
edits, speech synthesis, and the event stream consumed by transcripts, the
tool server, and the console UI.

Event stream records are plain dicts with a strictly increasing ``seq``;
``render_transcript`` defines the canonical text rendering that the browser
console reproduces byte-for-byte from the same events.
"""

from __future__ import annotations

import json
import logging
import threading
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from .artifacts import ArtifactStore
from .audio import (
    AudioSource,
    PlaybackRegistry,
    PlanEntry,
    PlaybackPlan,
    render_plan,
    resample_24_to_48,
    sequential_plan,
    wav_bytes,
)
from .backends import (
    AmbientAudioRequest,
    BackendHub,
    BackendProfile,
    ImageGenRequest,
    ScriptedTranscriber,
    SpeechRequest,
)
from .config import Config
from .errors import BackendError, SessionError, StorycasterError, UnknownObjectError
from .geometry import PanoramaImage
from .imageio import depth_grid_to_png_bytes, mask_png_bytes, rgb_png_bytes
from .objects import apply_object_edit, generate_mappings, load_masks
from .room import RoomModel
from .story import (
    Chime,
    CoachPrompt,
    EndSession,
    GenerateScene,
    Narrator,
    NewStory,
    ObjectEditRequest,
    PlayMusic,
    PromptAssets,
    SceneScript,
    Speak,
    WelcomeVisual,
    assign_voices,
    build_ambient_prompt,
    build_image_prompt,
    generate_scene_text,
)
from .textutil import stable_hash64

log = logging.getLogger(__name__)

WELCOME_PROMPT = (
    "a warm library with tall bookshelves lining the walls, candlelight, "
    "cozy reading chairs, saturated bright colors"
)
WELCOME_SEED = 101  # fixed: the welcome visual is a stock seeded generation
AMBIENT_LOOP_S = 8.0
TTS_WORKERS = 4


def render_transcript(events: list[dict]) -> str:
    """Canonical transcript text from an event stream (UI replays this)."""
    lines: list[str] = []
    for e in events:
        kind = e.get("kind")
        if kind == "state":
            label = e["state"] if not e.get("act") else f"{e['state']}({e['act']})"
            lines.append(f"== {label} ==")
        elif kind == "user":
            lines.append(f"You: {e['text']}")
        elif kind == "narrator":
            lines.append(f"Narrator ({e['mode']}): {e['text']}")
        elif kind == "chime":
            lines.append("* chime *")
        elif kind == "coach":
            opts = " | ".join(f"{i + 1}) {o}" for i, o in enumerate(e["options"]))
            lines.append(f"Coach: {e['summary']} | {opts}")
        elif kind == "image":
            lines.append(f"[image {e['role']} act {e['act']}] {e['url']}")
        elif kind == "projector":
            lines.append(f"[frame {e['name']} act {e['act']}] {e['url']}")
        elif kind == "music":
            lines.append(f"[music track {e['track']}]")
        elif kind == "edit":
            if e.get("ok"):
                lines.append(f"[edit {e['physical']} -> {e['virtual']}]")
            else:
                lines.append(f"[edit failed: {e['message']}]")
        elif kind == "audio":
            lines.append(f"[audio act {e['act']}] {e['url']}")
        elif kind == "generate":
            suffix = f": {e['direction']}" if e.get("direction") else ""
            lines.append(f"[generating act {e['act']}{suffix}]")
        elif kind == "warning":
            lines.append(f"[warn] {e['text']}")
        elif kind == "new_story":
            lines.append("== a new story begins ==")
        elif kind == "end":
            lines.append("== session ended ==")
    return "\n".join(lines) + "\n"


class SessionRuntime:
    def __init__(
        self,
        config: Config,
        room: RoomModel | None = None,
        hub: BackendHub | None = None,
        artifact_store: ArtifactStore | None = None,
        session_id: str = "local",
    ):
        self.config = config
        self.session_id = session_id
        self.room = room or RoomModel(config)
        profile = BackendProfile(
            chat=config.backend, image=config.backend, ambient=config.backend,
            speech=config.backend, endpoints=dict(config.remote_endpoints),
        ) if config.backend == "remote" else BackendProfile()
        self.hub = hub or BackendHub(profile)
        self.prompts = PromptAssets.load(
            config.path(config.prompt_dir), config.path(config.script_dir)
        )
        self.masks = load_masks(config.path(config.mask_dir), config.panorama_size)
        self.narrator = Narrator(self.hub, self.prompts, config.seed)
        self.registry = PlaybackRegistry(np.asarray(config.listener, dtype=np.float64))
        self.artifacts = artifact_store or ArtifactStore(
            (config.base_dir or Path.cwd()) / config.artifacts_dir
        )
        music_dir = config.path(config.music_dir)
        self.music_tracks = sorted(p.name for p in music_dir.glob("*.wav"))

        self.events: list[dict] = []
        self.effect_log: list[str] = []
        self._seq = 0
        self._lock = threading.RLock()
        # fine-grained guard for the event list so stream snapshots never wait
        # on a session mid-generation
        self._events_lock = threading.Lock()
        self._listeners: list = []
        self.scene_audio: dict[int, dict] = {}  # act -> {"url", "events", "duration"}
        self._depth_published: set[bool] = set()
        self.current_pano: PanoramaImage | None = None
        self.current_outdoor = False
        self.completed = False
        self.story_index = 0

    # -- event plumbing -----------------------------------------------------

    def on_event(self, callback) -> None:
        self._listeners.append(callback)

    def _emit(self, kind: str, **fields) -> dict:
        with self._events_lock:
            self._seq += 1
            event = {"seq": self._seq, "kind": kind, **fields}
            self.events.append(event)
        for cb in list(self._listeners):
            cb(event)
        return event

    def _emit_state(self) -> None:
        st = self.narrator.state
        self._emit("state", state=st.name, act=st.act)

    @property
    def state(self):
        return self.narrator.state

    # -- public entry points -----------------------------------------------------

    def start(self) -> None:
        with self._lock:
            self._emit_state()
            self._execute_all(self.narrator.start())

    def submit(self, text: str) -> None:
        """One user utterance through the narrator plus all resulting effects."""
        with self._lock:
            if self.narrator.state.name == "Ended":
                raise SessionError("session has ended")
            if not self.narrator.state.accepts_input:
                raise SessionError(
                    f"session is busy ({self.narrator.state.label()}); input not accepted"
                )
            self._emit("user", text=text)
            before = self.narrator.state
            effects = self.narrator.advance(text)
            if self.narrator.state != before:
                self._emit_state()
            self._execute_all(effects)

    def run_script(self, transcriber: ScriptedTranscriber) -> None:
        """Drive the session from a scripted transcriber until it ends."""
        self.start()
        while self.narrator.state.name != "Ended":
            text = transcriber.next_utterance()
            if text is None:
                if self.narrator.state.name in ("WrapUp", "Ended"):
                    self.narrator.close()
                    break
                raise SessionError(
                    f"script exhausted in state {self.narrator.state.label()}"
                )
            self.submit(text)
        self.completed = True

    def snapshot_after(self, after_seq: int) -> tuple[list[dict], int]:
        """Atomic event replay: (events with seq > after_seq, replay floor).

        Events emitted after this call all have seq greater than the returned
        floor, so a subscriber that replays then listens sees a gap-free,
        duplicate-free stream.
        """
        with self._events_lock:
            events = [e for e in self.events if e["seq"] > after_seq]
            last = self.events[-1]["seq"] if self.events else 0
        return events, max(after_seq, last)

    def view(self) -> dict:
        """Snapshot for the session.state tool and the console UI."""
        with self._lock:
            latest_image = next(
                (e for e in reversed(self.events) if e["kind"] == "image"), None
            )
            frames = {}
            for e in self.events:
                if e["kind"] == "projector":
                    frames[e["name"]] = e["url"]
            coach = next(
                (e for e in reversed(self.events) if e["kind"] == "coach"), None
            )
            return {
                "session_id": self.session_id,
                "state": self.narrator.state.name,
                "act": self.narrator.state.act,
                "accepts_input": self.narrator.state.accepts_input,
                "acts_completed": self.narrator.ctx.acts_completed,
                "seq": self._seq,
                "panorama_url": latest_image["url"] if latest_image else None,
                "projector_urls": frames,
                "coach_options": coach["options"] if coach and self.narrator.pending_coach else [],
            }

    # -- effect execution -----------------------------------------------------

    def _execute_all(self, effects: list) -> None:
        queue = list(effects)
        while queue:
            effect = queue.pop(0)
            self.effect_log.append(type(effect).__name__)
            more = self._execute(effect)
            if more:
                queue.extend(more)

    def _execute(self, effect) -> list:
        if isinstance(effect, Chime):
            start = self.registry.schedule_chime()
            self.registry.clock = start + 0.4
            self._emit("chime")
            return []
        if isinstance(effect, Speak):
            self._speak(effect)
            return []
        if isinstance(effect, GenerateScene):
            return self._generate_scene(effect)
        if isinstance(effect, CoachPrompt):
            self._emit("coach", act=effect.act, summary=effect.summary, options=effect.options)
            return []
        if isinstance(effect, ObjectEditRequest):
            return self._object_edit(effect)
        if isinstance(effect, PlayMusic):
            track = effect.track_index % len(self.music_tracks) if self.music_tracks else 0
            self._emit("music", track=track)
            return []
        if isinstance(effect, WelcomeVisual):
            self._welcome_visual()
            return []
        if isinstance(effect, NewStory):
            self.story_index += 1
            self._emit("new_story")
            return []
        if isinstance(effect, EndSession):
            self._emit("end")
            self.narrator.close()
            self._emit_state()
            return []
        raise StorycasterError(f"unknown effect {effect!r}")

    # -- speech -----------------------------------------------------

    def _synthesize(self, text: str, voice: str, style: str) -> np.ndarray:
        buf24 = self.hub.synthesize_speech(
            SpeechRequest(text=text, voice=voice, style_instructions=style)
        )
        return resample_24_to_48(buf24)

    def _speak(self, effect: Speak) -> None:
        style_name = "tutorial_voice" if effect.mode == "tutorial" else "narrator_voice"
        style = self.prompts.templates[style_name]
        try:
            buf = self._synthesize(effect.text, "fable", style)
        except BackendError as exc:
            self._emit("warning", text=f"speech synthesis failed, continuing: {exc}")
            self._emit("narrator", text=effect.text, mode=effect.mode)
            return
        name = f"speech_{self._seq + 1}"
        src = AudioSource(name, buf, np.asarray(self.config.listener), volume=0.9)
        self.registry.add(src, at=self.registry.clock)
        self.registry.clock += src.duration_s
        self._emit("narrator", text=effect.text, mode=effect.mode)

    # -- the scene pipeline -----------------------------------------------------

    def _image_request(
        self, prompt: str, outdoor: bool, seed: int
    ) -> ImageGenRequest:
        depth = self.room.depth_for(outdoor)
        return ImageGenRequest(
            prompt=prompt,
            depth=depth,
            control_strength=self.config.scene_control_strength,
            control_mask=self.room.guidance_mask(outdoor),
            seed=seed,
            output_size=self.config.panorama_size,
            # full-scene generations carry an all-white regenerate-everything mask
            inpaint_mask=np.ones_like(depth.depth, dtype=bool),
        )

    def _welcome_visual(self) -> None:
        try:
            pano = self.hub.generate_image(
                self._image_request(WELCOME_PROMPT, outdoor=False, seed=WELCOME_SEED)
            )
        except BackendError as exc:
            self._emit("warning", text=f"welcome visual failed: {exc}")
            return
        self.current_pano = pano
        self.current_outdoor = False
        url = self.artifacts.put(rgb_png_bytes(pano.pixels), ".png")
        self._emit("image", role="welcome", act=0, url=url)

    def _generate_scene(self, effect: GenerateScene) -> list:
        ctx = self.narrator.ctx
        act = effect.act
        self._emit("generate", act=act, direction=effect.direction)
        scene, warnings = generate_scene_text(
            self.hub, self.prompts, ctx, act, effect.direction
        )
        for w in warnings:
            self._emit("warning", text=w)

        image_prompt, outdoor = build_image_prompt(self.hub, self.prompts, scene.raw_text)
        ambient_prompt = build_ambient_prompt(self.hub, self.prompts, scene.raw_text)

        seed = stable_hash64(str(ctx.seed), "image", str(act)) % 2**31
        pano = self.hub.generate_image(self._image_request(image_prompt, outdoor, seed))

        previous = ctx.scenes[-1].raw_text if ctx.scenes else ""
        mapping = generate_mappings(
            self.hub, self.prompts, scene.raw_text, previous, self.masks,
            ctx.object_mappings, ctx.seed, act,
        )
        depth = self.room.depth_for(outdoor)
        cmask = self.room.guidance_mask(outdoor)
        for phys, virt in sorted(mapping.pairs.items()):
            pano, _ = apply_object_edit(
                self.hub, self.masks, phys, virt, pano, depth, cmask,
                seed=stable_hash64(str(ctx.seed), "edit", phys, str(act)) % 2**31,
                control_strength=self.config.inpaint_control_strength,
            )
        ctx.object_mappings = dict(mapping.pairs)

        self.current_pano = pano
        self.current_outdoor = outdoor
        self._publish_visuals(act, pano, outdoor)
        self._render_scene_audio(act, scene, ambient_prompt)

        follow = self.narrator.scene_ready(scene)
        self._emit_state()
        follow += self.narrator.playback_complete()
        self._emit_state()
        return follow

    def _publish_visuals(self, act: int, pano: PanoramaImage, outdoor: bool) -> None:
        upscaled = self.hub.upscale(pano, self.config.upscale_factor)
        url = self.artifacts.put(rgb_png_bytes(upscaled.pixels), ".png")
        self._emit("image", role="scene", act=act, url=url)
        depth = self.room.depth_for(outdoor)
        if outdoor not in self._depth_published:
            self.artifacts.put(depth_grid_to_png_bytes(depth.depth), ".png")
            self.artifacts.put(mask_png_bytes(self.room.guidance_mask(outdoor)), ".png")
            self._depth_published.add(outdoor)
        if self.config.render_projectors:
            for frame in self.room.projector_frames(pano, depth):
                frame_url = self.artifacts.put(rgb_png_bytes(frame.pixels), ".png")
                self._emit("projector", act=act, name=frame.projector_name, url=frame_url)

    def _render_scene_audio(self, act: int, scene: SceneScript, ambient_prompt: str) -> None:
        ctx = self.narrator.ctx
        assignment, warnings = assign_voices(scene.lines, ctx.seed, self.hub, self.prompts)
        for w in warnings:
            self._emit("warning", text=w)

        def synth(indexed):
            k, line = indexed
            spec = assignment[line.speaker]
            buf = self._synthesize(line.text, spec.voice, spec.style_instructions)
            return AudioSource(
                f"act{act}_line{k}", buf, spec.position,
                volume=0.9 if line.kind == "dialogue" else 0.8,
            )

        # all line syntheses may run concurrently; playback stays in script order
        with ThreadPoolExecutor(max_workers=TTS_WORKERS) as pool:
            line_sources = list(pool.map(synth, enumerate(scene.lines)))

        ambient = self.hub.generate_ambient(
            AmbientAudioRequest(
                prompt=ambient_prompt,
                duration_s=AMBIENT_LOOP_S,
                seed=stable_hash64(str(ctx.seed), "ambient", str(act)) % 2**31,
            )
        )
        ambient_src = AudioSource(
            f"act{act}_ambient", ambient, np.asarray(self.config.listener),
            volume=0.5, loop=True,
        )

        registry = PlaybackRegistry(np.asarray(self.config.listener, dtype=np.float64))
        for src in line_sources:
            registry.add(src)
        registry.add(ambient_src)
        plan = sequential_plan(line_sources)
        plan = PlaybackPlan([PlanEntry(ambient_src.name, 0)] + plan.entries, plan.total_frames)
        mix = render_plan(plan, registry)

        info = {"duration_s": mix.frames.shape[0] / 48000.0, "events": mix.events}
        if self.config.write_audio:
            info["url"] = self.artifacts.put(wav_bytes(mix.frames), ".wav")
            self._emit("audio", act=act, url=info["url"])
        self.scene_audio[act] = info

    # -- object edits -----------------------------------------------------

    def _object_edit(self, effect: ObjectEditRequest) -> list:
        ctx = self.narrator.ctx
        if self.current_pano is None:
            follow = self.narrator.edit_complete(
                "There is no scene on the walls yet; let's create one first."
            )
            self._emit_state()
            return follow
        try:
            depth = self.room.depth_for(self.current_outdoor)
            pano, record = apply_object_edit(
                self.hub, self.masks, effect.physical, effect.virtual,
                self.current_pano, depth, self.room.guidance_mask(self.current_outdoor),
                seed=stable_hash64(str(ctx.seed), "useredit", effect.physical, effect.virtual) % 2**31,
                control_strength=self.config.inpaint_control_strength,
            )
        except UnknownObjectError as exc:
            self._emit("edit", physical=effect.physical, virtual=effect.virtual,
                       ok=False, message=str(exc))
            follow = self.narrator.edit_complete(
                f"I don't know an object called {effect.physical}. I can change: "
                + ", ".join(exc.known) + "."
            )
            self._emit_state()
            return follow
        self.current_pano = pano
        ctx.object_mappings[effect.physical] = effect.virtual
        self._emit("edit", physical=effect.physical, virtual=effect.virtual, ok=True)
        act = self.narrator.state.act or ctx.acts_completed
        self._publish_visuals(act, pano, self.current_outdoor)
        follow = self.narrator.edit_complete(None)
        self._emit_state()
        return follow

    # -- outputs -----------------------------------------------------

    def transcript_text(self) -> str:
        return render_transcript(self.events)

    def write_outputs(self, outdir: str | Path) -> None:
        outdir = Path(outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        (outdir / "transcript.txt").write_text(self.transcript_text())
        with (outdir / "events.jsonl").open("w") as fh:
            for event in self.events:
                fh.write(json.dumps(event, sort_keys=True) + "\n")
        (outdir / "effects.log").write_text("\n".join(self.effect_log) + "\n")
        if self.config.write_audio:
            narration = self.registry.plan()
            if narration.entries:
                mix = render_plan(narration, self.registry)
                (outdir / "narration.wav").write_bytes(wav_bytes(mix.frames))
                (outdir / "narration_events.log").write_text(mix.event_log_text())
            for act, info in sorted(self.scene_audio.items()):
                lines = "".join(
                    f"{t:.6f}\t{src}\t{action}\n" for t, src, action in info["events"]
                )
                (outdir / f"act{act}_audio_events.log").write_text(lines)
