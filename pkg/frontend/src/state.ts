/**
 * SessionView: everything the console renders, folded purely from the event
 * stream.  No story state is invented client-side; replaying the same events
 * always yields the same view.
 */

import { INPUT_STATES, SessionEvent } from "./events.js";
import { renderEventLine } from "./transcript.js";

export interface AudioTick {
  seq: number;
  label: string;
}

export interface SessionView {
  sessionId: string;
  stateName: string;
  act: number;
  lastSeq: number;
  /** transcript lines in canonical byte format */
  transcript: string[];
  /** coach options awaiting an answer; cleared once the user replies */
  pendingOptions: string[];
  panoramaUrl: string | null;
  projectorUrls: Record<string, string>;
  audioTicker: AudioTick[];
  storiesCompleted: number;
  ended: boolean;
}

export function initialView(sessionId: string): SessionView {
  return {
    sessionId,
    stateName: "Welcome",
    act: 0,
    lastSeq: 0,
    transcript: [],
    pendingOptions: [],
    panoramaUrl: null,
    projectorUrls: {},
    audioTicker: [],
    storiesCompleted: 0,
    ended: false,
  };
}

export function acceptsInput(view: SessionView): boolean {
  return !view.ended && INPUT_STATES.has(view.stateName);
}

const TICKER_LIMIT = 12;

function pushTick(view: SessionView, seq: number, label: string): void {
  view.audioTicker.push({ seq, label });
  if (view.audioTicker.length > TICKER_LIMIT) {
    view.audioTicker.splice(0, view.audioTicker.length - TICKER_LIMIT);
  }
}

/** Fold one event into the view; duplicate/stale seqs are ignored. */
export function applyEvent(view: SessionView, e: SessionEvent): SessionView {
  if (e.seq <= view.lastSeq) return view;
  view.lastSeq = e.seq;

  const line = renderEventLine(e);
  if (line !== null) view.transcript.push(line);

  switch (e.kind) {
    case "state":
      view.stateName = String(e.state);
      view.act = Number(e.act) || 0;
      if (view.stateName !== "CoachChoice") view.pendingOptions = [];
      if (view.stateName === "Ended") view.ended = true;
      break;
    case "coach":
      view.pendingOptions = [...(e.options as string[])];
      break;
    case "image":
      view.panoramaUrl = String(e.url);
      break;
    case "projector":
      view.projectorUrls[String(e.name)] = String(e.url);
      break;
    case "chime":
      pushTick(view, e.seq, "chime");
      break;
    case "music":
      pushTick(view, e.seq, `music track ${e.track}`);
      break;
    case "audio":
      pushTick(view, e.seq, `scene audio act ${e.act}`);
      break;
    case "end":
      view.ended = true;
      view.storiesCompleted += 1;
      break;
  }
  return view;
}

export function replay(sessionId: string, events: SessionEvent[]): SessionView {
  const view = initialView(sessionId);
  for (const e of events) applyEvent(view, e);
  return view;
}
