/**
 * Lockstep client session.
 *
 * Human-play mode answers every state message with exactly one action —
 * never more than one unacknowledged action in flight — sampled from the
 * key source after a pacing delay (the server is lockstep; the delay is
 * what makes play feel real-time at the nominal tick rate). Replay-view
 * mode never sends actions. A result or error message ends the exchange;
 * errors halt the session visibly rather than silently reconnecting.
 */

import {
  ActionBits,
  ErrorMsg,
  ResultMsg,
  StateMsg,
  decodeServerMessage,
  encodeAction,
  encodeReset,
  ProtocolError,
} from "./protocol.js";

/** Minimal duplex transport: a browser WebSocket or anything test-shaped. */
export interface Transport {
  send(line: string): void;
  close(): void;
}

export type SessionMode = "human" | "replay-view";

export interface SessionOptions {
  mode: SessionMode;
  /** Sampled right before each action goes out. */
  keySource?: () => ActionBits;
  /** Delay between receiving a state and answering it, ms (default 33). */
  tickIntervalMs?: number;
  onState?: (s: StateMsg) => void;
  onResult?: (r: ResultMsg) => void;
  onError?: (e: ErrorMsg | ProtocolError) => void;
}

export class ClientSession {
  readonly mode: SessionMode;
  latestState: StateMsg | null = null;
  result: ResultMsg | null = null;
  halted = false;
  actionsSent = 0;

  private transport: Transport;
  private opts: SessionOptions;
  private pendingTimer: ReturnType<typeof setTimeout> | null = null;
  private awaitingAck = false;

  constructor(transport: Transport, opts: SessionOptions) {
    this.transport = transport;
    this.opts = opts;
    this.mode = opts.mode;
  }

  reset(bossId: number, seed: number): void {
    this.cancelPending();
    this.latestState = null;
    this.result = null;
    this.halted = false;
    this.awaitingAck = false;
    this.transport.send(encodeReset(bossId, seed));
  }

  /** Feed one raw message line from the transport. */
  handleMessage(raw: string): void {
    if (this.halted) return;
    let msg;
    try {
      msg = decodeServerMessage(raw);
    } catch (err) {
      this.halt();
      this.opts.onError?.(err as ProtocolError);
      return;
    }
    switch (msg.type) {
      case "state":
        this.latestState = msg;
        this.awaitingAck = false;
        this.opts.onState?.(msg);
        if (this.mode === "human" && this.result === null) {
          this.scheduleAction(msg.tick);
        }
        break;
      case "result":
        this.result = msg;
        this.cancelPending();
        this.opts.onResult?.(msg);
        break;
      case "error":
        this.halt();
        this.opts.onError?.(msg);
        break;
    }
  }

  close(): void {
    this.halt();
    this.transport.close();
  }

  private scheduleAction(tick: number): void {
    this.cancelPending();
    const delay = this.opts.tickIntervalMs ?? 33;
    this.pendingTimer = setTimeout(() => {
      this.pendingTimer = null;
      // lockstep: one action per state, none after the match ended
      if (this.halted || this.result !== null || this.awaitingAck) return;
      if (this.latestState === null || this.latestState.tick !== tick) return;
      const bits = this.opts.keySource?.() ?? {
        left: false, right: false, jump: false, shoot: false, release: false,
      };
      this.transport.send(encodeAction(tick, bits));
      this.actionsSent += 1;
      this.awaitingAck = true;
    }, delay);
  }

  private cancelPending(): void {
    if (this.pendingTimer !== null) {
      clearTimeout(this.pendingTimer);
      this.pendingTimer = null;
    }
  }

  private halt(): void {
    this.halted = true;
    this.cancelPending();
  }
}
