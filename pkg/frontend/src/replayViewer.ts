/**
 * Replay viewer over the structured export (`evoman replay export-json`).
 *
 * Deliberately simulation-free: a frame is a pure function of the loaded
 * document and the cursor, so the viewer can never disagree with the
 * server-side verifier. Energies are facts only at the endpoints — 100/100
 * at tick 0, the trailer values at the end — and the in-between display is
 * the recorded action track itself.
 */

import type { ActionBits } from "./protocol.js";

export interface ReplayDoc {
  format_version: number;
  roster_version: string;
  boss_id: number;
  seed: number;
  config_digest: string;
  genome_digest: string;
  actions: number[][]; // 5 bits per tick: left, right, jump, shoot, release
  trailer: { ep: number; ee: number; outcome: string; hash: string; trace: string };
}

export interface ReplayFrame {
  tick: number;
  total: number;
  /** Action recorded AT this tick; null on the terminal frame. */
  action: ActionBits | null;
  /** Known energies: start and end only; null mid-replay (no simulation). */
  playerEnergy: number | null;
  enemyEnergy: number | null;
  outcome: string | null;
  gain: number | null;
}

export function parseReplayDoc(text: string): ReplayDoc {
  const doc = JSON.parse(text) as ReplayDoc;
  if (doc.format_version !== 1) {
    throw new Error(`unsupported replay format_version: ${doc.format_version}`);
  }
  if (!Array.isArray(doc.actions) || !doc.actions.every((a) => a.length === 5)) {
    throw new Error("replay actions must be rows of 5 bits");
  }
  if (!doc.trailer || typeof doc.trailer.ep !== "number"
      || typeof doc.trailer.ee !== "number") {
    throw new Error("replay trailer malformed");
  }
  return doc;
}

function bitsAt(doc: ReplayDoc, tick: number): ActionBits {
  const [left, right, jump, shoot, release] = doc.actions[tick];
  return {
    left: !!left, right: !!right, jump: !!jump, shoot: !!shoot, release: !!release,
  };
}

/** The competition gain of the recorded match, from the trailer. */
export function trailerGain(doc: ReplayDoc): number {
  return 100.01 + doc.trailer.ep - doc.trailer.ee;
}

export class ReplayViewer {
  readonly doc: ReplayDoc;
  private cursor = 0;
  private timer: ReturnType<typeof setInterval> | null = null;
  onFrame?: (f: ReplayFrame) => void;

  constructor(doc: ReplayDoc) {
    this.doc = doc;
  }

  get totalTicks(): number {
    return this.doc.actions.length;
  }

  get tick(): number {
    return this.cursor;
  }

  frame(): ReplayFrame {
    const total = this.totalTicks;
    const t = this.cursor;
    const terminal = t >= total;
    return {
      tick: t,
      total,
      action: terminal ? null : bitsAt(this.doc, t),
      playerEnergy: t === 0 ? 100 : terminal ? this.doc.trailer.ep : null,
      enemyEnergy: t === 0 ? 100 : terminal ? this.doc.trailer.ee : null,
      outcome: terminal ? this.doc.trailer.outcome : null,
      gain: terminal ? trailerGain(this.doc) : null,
    };
  }

  seek(tick: number): ReplayFrame {
    this.cursor = Math.max(0, Math.min(this.totalTicks, Math.floor(tick)));
    const f = this.frame();
    this.onFrame?.(f);
    return f;
  }

  stepForward(): ReplayFrame {
    return this.seek(this.cursor + 1);
  }

  stepBack(): ReplayFrame {
    return this.seek(this.cursor - 1);
  }

  get playing(): boolean {
    return this.timer !== null;
  }

  play(intervalMs = 33): void {
    if (this.timer !== null) return;
    this.timer = setInterval(() => {
      if (this.cursor >= this.totalTicks) {
        this.pause();
        return;
      }
      this.stepForward();
    }, intervalMs);
  }

  pause(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }
}
