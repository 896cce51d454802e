/** Session event records as the server streams them (seq strictly increasing). */

export interface SessionEvent {
  seq: number;
  kind: string;
  [key: string]: unknown;
}

export interface StateEvent extends SessionEvent {
  kind: "state";
  state: string;
  act: number;
}

export interface CoachEvent extends SessionEvent {
  kind: "coach";
  act: number;
  summary: string;
  options: string[];
}

/** States in which the server accepts user input (mirrors the engine). */
export const INPUT_STATES = new Set([
  "Welcome",
  "Tutorial",
  "AwaitPersonalObject",
  "Converse",
  "ConfirmScene",
  "PostScene",
  "CoachChoice",
  "WrapUp",
]);
