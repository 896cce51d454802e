/**
 * Replay acceptance: rendering the recorded demo event stream reproduces the
 * server's transcript byte-for-byte.  The fixture pair is generated together
 * by `storycaster bless-goldens --bless` and copied from tests/goldens/demo.
 */

import assert from "node:assert/strict";
import { readFileSync } from "node:fs";
import { dirname, join } from "node:path";
import test from "node:test";
import { fileURLToPath } from "node:url";

import type { SessionEvent } from "../src/events.js";
import { replay } from "../src/state.js";
import { renderTranscript } from "../src/transcript.js";

const here = dirname(fileURLToPath(import.meta.url));
const fixtures = join(here, "..", "..", "test", "fixtures", "demo");

function loadFixture(): { events: SessionEvent[]; transcript: string } {
  const events = readFileSync(join(fixtures, "events.jsonl"), "utf8")
    .split("\n")
    .filter((line) => line.trim())
    .map((line) => JSON.parse(line) as SessionEvent);
  const transcript = readFileSync(join(fixtures, "transcript.txt"), "utf8");
  return { events, transcript };
}

test("recorded event stream renders the server transcript byte-for-byte", () => {
  const { events, transcript } = loadFixture();
  assert.equal(renderTranscript(events), transcript);
});

test("view replay produces the same transcript lines", () => {
  const { events, transcript } = loadFixture();
  const view = replay("golden", events);
  assert.equal(view.transcript.join("\n") + "\n", transcript);
});

test("replaying twice is stable and duplicate events are ignored", () => {
  const { events } = loadFixture();
  const once = replay("golden", events);
  const twice = replay("golden", [...events, ...events]); // duplicates dropped by seq
  assert.deepEqual(twice.transcript, once.transcript);
  assert.equal(twice.lastSeq, once.lastSeq);
});

test("the demo stream exercises both stories and ends the session", () => {
  const { events } = loadFixture();
  const view = replay("golden", events);
  assert.equal(view.ended, true);
  assert.equal(view.stateName, "Ended");
  assert.ok(view.transcript.includes("== a new story begins =="));
  assert.ok(view.panoramaUrl !== null);
  assert.ok(Object.keys(view.projectorUrls).length >= 6);
});
