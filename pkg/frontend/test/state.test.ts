import assert from "node:assert/strict";
import test from "node:test";

import type { SessionEvent } from "../src/events.js";
import { acceptsInput, applyEvent, initialView, replay } from "../src/state.js";

let seq = 0;
function ev(kind: string, fields: Record<string, unknown> = {}): SessionEvent {
  seq += 1;
  return { seq, kind, ...fields } as SessionEvent;
}

test.beforeEach(() => {
  seq = 0;
});

test("controls enable only in input-accepting states", () => {
  const view = initialView("s1");
  const expectations: Array<[string, boolean]> = [
    ["Welcome", true],
    ["Tutorial", true],
    ["AwaitPersonalObject", true],
    ["Converse", true],
    ["ConfirmScene", true],
    ["GeneratingScene", false],
    ["ScenePlayback", false],
    ["PostScene", true],
    ["CoachChoice", true],
    ["ObjectEdit", false],
    ["WrapUp", true],
    ["Ended", false],
  ];
  for (const [state, expected] of expectations) {
    applyEvent(view, ev("state", { state, act: 1 }));
    assert.equal(acceptsInput(view), expected, state);
  }
});

test("coach options pend until the state moves on", () => {
  const view = initialView("s1");
  applyEvent(view, ev("state", { state: "CoachChoice", act: 1 }));
  applyEvent(view, ev("coach", { act: 2, summary: "So far", options: ["a", "b", "c"] }));
  assert.deepEqual(view.pendingOptions, ["a", "b", "c"]);
  applyEvent(view, ev("state", { state: "GeneratingScene", act: 2 }));
  assert.deepEqual(view.pendingOptions, []);
});

test("latest panorama and projector frames tracked from events", () => {
  const view = initialView("s1");
  applyEvent(view, ev("image", { role: "welcome", act: 0, url: "artifacts/a.png" }));
  applyEvent(view, ev("image", { role: "scene", act: 1, url: "artifacts/b.png" }));
  applyEvent(view, ev("projector", { act: 1, name: "proj_px", url: "artifacts/c.png" }));
  applyEvent(view, ev("projector", { act: 1, name: "proj_px", url: "artifacts/d.png" }));
  assert.equal(view.panoramaUrl, "artifacts/b.png");
  assert.equal(view.projectorUrls["proj_px"], "artifacts/d.png");
});

test("audio ticker keeps a bounded recent window", () => {
  const view = initialView("s1");
  for (let k = 0; k < 20; k++) applyEvent(view, ev("chime"));
  assert.equal(view.audioTicker.length, 12);
  assert.equal(view.audioTicker[view.audioTicker.length - 1].seq, 20);
});

test("stale events never rewind the view", () => {
  const view = initialView("s1");
  applyEvent(view, ev("state", { state: "Converse", act: 0 }));
  const stale: SessionEvent = { seq: 1, kind: "state", state: "Welcome", act: 0 };
  applyEvent(view, stale);
  assert.equal(view.stateName, "Converse");
});

test("end event marks the session over", () => {
  const view = replay("s1", [
    { seq: 1, kind: "state", state: "WrapUp", act: 0 } as SessionEvent,
    { seq: 2, kind: "end" } as SessionEvent,
    { seq: 3, kind: "state", state: "Ended", act: 0 } as SessionEvent,
  ]);
  assert.equal(view.ended, true);
  assert.equal(acceptsInput(view), false);
});
