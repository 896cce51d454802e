/**
 * Canonical transcript rendering from a session event stream.
 *
 * This must stay byte-compatible with the server's own transcript writer:
 * replaying a recorded stream through this function reproduces the server's
 * transcript.txt exactly (the fixture test pins that).
 */

import type { SessionEvent } from "./events.js";

export function renderEventLine(e: SessionEvent): string | null {
  switch (e.kind) {
    case "state": {
      const act = e.act as number;
      const label = act ? `${e.state}(${act})` : String(e.state);
      return `== ${label} ==`;
    }
    case "user":
      return `You: ${e.text}`;
    case "narrator":
      return `Narrator (${e.mode}): ${e.text}`;
    case "chime":
      return "* chime *";
    case "coach": {
      const options = e.options as string[];
      const opts = options.map((o, i) => `${i + 1}) ${o}`).join(" | ");
      return `Coach: ${e.summary} | ${opts}`;
    }
    case "image":
      return `[image ${e.role} act ${e.act}] ${e.url}`;
    case "projector":
      return `[frame ${e.name} act ${e.act}] ${e.url}`;
    case "music":
      return `[music track ${e.track}]`;
    case "edit":
      return e.ok
        ? `[edit ${e.physical} -> ${e.virtual}]`
        : `[edit failed: ${e.message}]`;
    case "audio":
      return `[audio act ${e.act}] ${e.url}`;
    case "generate": {
      const suffix = e.direction ? `: ${e.direction}` : "";
      return `[generating act ${e.act}${suffix}]`;
    }
    case "warning":
      return `[warn] ${e.text}`;
    case "new_story":
      return "== a new story begins ==";
    case "end":
      return "== session ended ==";
    default:
      return null;
  }
}

export function renderTranscript(events: SessionEvent[]): string {
  const lines: string[] = [];
  for (const e of events) {
    const line = renderEventLine(e);
    if (line !== null) lines.push(line);
  }
  return lines.join("\n") + "\n";
}
