/**
 * JSON-RPC 2.0 over WebSocket with session-stream resume.
 *
 * The client remembers the highest event sequence it has applied; on any
 * reconnect it re-issues session.stream with that cursor, so the server's
 * replay fills the gap and nothing is lost or duplicated.  The socket is
 * injectable for tests.
 */

import type { SessionEvent } from "./events.js";

export interface SocketLike {
  send(data: string): void;
  close(): void;
  onopen: (() => void) | null;
  onclose: (() => void) | null;
  onerror: (() => void) | null;
  onmessage: ((ev: { data: string }) => void) | null;
}

export type SocketFactory = (url: string) => SocketLike;

export type ConnectionState = "connecting" | "open" | "reconnecting" | "closed";

interface Pending {
  resolve: (value: unknown) => void;
  reject: (err: Error) => void;
}

export interface RpcError extends Error {
  code: number;
}

function rpcError(code: number, message: string): RpcError {
  const err = new Error(message) as RpcError;
  err.code = code;
  return err;
}

const RECONNECT_BASE_MS = 500;
const RECONNECT_MAX_MS = 8000;

export class SessionClient {
  private socket: SocketLike | null = null;
  private nextId = 1;
  private pending = new Map<number, Pending>();
  private sessionId: string | null = null;
  private lastSeq = 0;
  private reconnectDelay = RECONNECT_BASE_MS;
  private closedByUser = false;
  private reconnectTimer: ReturnType<typeof setTimeout> | null = null;

  onEvent: ((event: SessionEvent) => void) | null = null;
  onConnectionState: ((state: ConnectionState) => void) | null = null;

  constructor(
    private url: string,
    private makeSocket: SocketFactory = (u) => new WebSocket(u) as unknown as SocketLike,
  ) {}

  get streamCursor(): number {
    return this.lastSeq;
  }

  connect(): void {
    this.closedByUser = false;
    this.openSocket("connecting");
  }

  close(): void {
    this.closedByUser = true;
    if (this.reconnectTimer !== null) clearTimeout(this.reconnectTimer);
    this.socket?.close();
    this.signal("closed");
  }

  private signal(state: ConnectionState): void {
    this.onConnectionState?.(state);
  }

  private openSocket(phase: ConnectionState): void {
    this.signal(phase);
    const socket = this.makeSocket(this.url);
    this.socket = socket;
    socket.onopen = () => {
      this.reconnectDelay = RECONNECT_BASE_MS;
      this.signal("open");
      if (this.sessionId !== null) {
        void this.resubscribe();
      }
    };
    socket.onmessage = (ev) => this.handleFrame(ev.data);
    socket.onclose = () => this.handleDrop();
    socket.onerror = () => {
      /* the close handler drives reconnection */
    };
  }

  private handleDrop(): void {
    for (const [, p] of this.pending) p.reject(new Error("connection lost"));
    this.pending.clear();
    if (this.closedByUser) return;
    this.signal("reconnecting");
    this.reconnectTimer = setTimeout(() => {
      this.reconnectDelay = Math.min(this.reconnectDelay * 2, RECONNECT_MAX_MS);
      this.openSocket("reconnecting");
    }, this.reconnectDelay);
  }

  private handleFrame(data: string): void {
    let msg: Record<string, unknown>;
    try {
      msg = JSON.parse(data);
    } catch {
      return;
    }
    if (msg.method === "session.event") {
      const params = msg.params as { session_id: string; event: SessionEvent };
      if (params.session_id === this.sessionId) this.deliver(params.event);
      return;
    }
    if (typeof msg.id === "number" && this.pending.has(msg.id)) {
      const p = this.pending.get(msg.id)!;
      this.pending.delete(msg.id);
      const err = msg.error as { code: number; message: string } | undefined;
      if (err) p.reject(rpcError(err.code, err.message));
      else p.resolve(msg.result);
    }
  }

  private deliver(event: SessionEvent): void {
    if (event.seq <= this.lastSeq) return; // replay overlap
    this.lastSeq = event.seq;
    this.onEvent?.(event);
  }

  call<T = unknown>(method: string, params: Record<string, unknown> = {}): Promise<T> {
    const id = this.nextId++;
    const frame = JSON.stringify({ jsonrpc: "2.0", id, method, params });
    return new Promise<T>((resolve, reject) => {
      if (!this.socket) {
        reject(new Error("not connected"));
        return;
      }
      this.pending.set(id, { resolve: resolve as (v: unknown) => void, reject });
      this.socket.send(frame);
    });
  }

  /** Start a fresh session and subscribe to its stream. */
  async startSession(seed?: number): Promise<string> {
    const params: Record<string, unknown> = {};
    if (seed !== undefined) params.seed = seed;
    const started = await this.call<{ session_id: string }>("session.start", params);
    this.sessionId = started.session_id;
    this.lastSeq = 0;
    await this.resubscribe();
    return this.sessionId;
  }

  /** Attach to an existing session, replaying everything missed. */
  async attach(sessionId: string, afterSeq = 0): Promise<void> {
    this.sessionId = sessionId;
    this.lastSeq = afterSeq;
    await this.resubscribe();
  }

  private async resubscribe(): Promise<void> {
    if (this.sessionId === null) return;
    const result = await this.call<{ events: SessionEvent[] }>("session.stream", {
      session_id: this.sessionId,
      after_seq: this.lastSeq,
    });
    for (const event of result.events) this.deliver(event);
  }

  /** One user utterance; the server replies with its new state. */
  sendInput(text: string): Promise<{ state: string; accepts_input: boolean }> {
    if (this.sessionId === null) return Promise.reject(new Error("no session"));
    return this.call("session.input", { session_id: this.sessionId, text });
  }

  /** Clicking option k round-trips as the text "option k". */
  chooseOption(k: number): Promise<{ state: string; accepts_input: boolean }> {
    return this.sendInput(`option ${k}`);
  }

  /** Object-panel edits encode as the spoken edit phrasing. */
  editObject(name: string, target: string): Promise<{ state: string; accepts_input: boolean }> {
    return this.sendInput(`change the ${name} to a ${target}`);
  }

  listObjects(): Promise<{ objects: string[]; mask_urls: Record<string, string> }> {
    return this.call("room.objects");
  }

  sessionState(): Promise<Record<string, unknown>> {
    if (this.sessionId === null) return Promise.reject(new Error("no session"));
    return this.call("session.state", { session_id: this.sessionId });
  }
}
