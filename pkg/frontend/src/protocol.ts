/**
 * Wire grammar shared with the step server: one canonical JSON object per
 * message. Encoding is byte-exact (key order fixed, no whitespace) so
 * transcripts pin the protocol; golden tests on both sides assert the same
 * strings.
 */

export interface ActionBits {
  left: boolean;
  right: boolean;
  jump: boolean;
  shoot: boolean;
  release: boolean;
}

export const IDLE_ACTION: ActionBits = {
  left: false, right: false, jump: false, shoot: false, release: false,
};

export interface EntityOnWire {
  x: number;
  y: number;
  facing: -1 | 1;
}

export interface BulletOnWire {
  x: number;
  y: number;
  owner: "player" | "enemy";
}

export interface StateMsg {
  type: "state";
  tick: number;
  player: EntityOnWire;
  enemy: EntityOnWire;
  bullets: BulletOnWire[];
  sensors: number[];
  player_energy: number;
  enemy_energy: number;
}

export interface ResultMsg {
  type: "result";
  outcome: "PlayerWon" | "EnemyWon" | "Timeout" | "Ongoing";
  ep: number;
  ee: number;
  gain: number;
  ticks: number;
}

export interface ErrorMsg {
  type: "error";
  code: string;
  message: string;
}

export type ServerMsg = StateMsg | ResultMsg | ErrorMsg;

export class ProtocolError extends Error {}

export function encodeReset(bossId: number, seed: number): string {
  return JSON.stringify({ type: "reset", boss_id: bossId, seed });
}

export function encodeAction(tick: number, a: ActionBits): string {
  return JSON.stringify({
    type: "action", tick,
    left: a.left, right: a.right, jump: a.jump, shoot: a.shoot, release: a.release,
  });
}

export function encodeClose(): string {
  return JSON.stringify({ type: "close" });
}

function bad(reason: string): never {
  throw new ProtocolError(reason);
}

export function decodeServerMessage(raw: string): ServerMsg {
  let doc: unknown;
  try {
    doc = JSON.parse(raw);
  } catch {
    bad(`not valid JSON: ${raw.slice(0, 60)}`);
  }
  if (typeof doc !== "object" || doc === null) bad("message is not an object");
  const msg = doc as Record<string, unknown>;

  switch (msg.type) {
    case "state": {
      const sensors = msg.sensors;
      if (!Array.isArray(sensors) || sensors.length !== 20
          || !sensors.every((v) => typeof v === "number")) {
        bad("state.sensors must be 20 numbers");
      }
      for (const side of ["player", "enemy"] as const) {
        const e = msg[side] as Record<string, unknown> | undefined;
        if (!e || typeof e.x !== "number" || typeof e.y !== "number"
            || (e.facing !== 1 && e.facing !== -1)) {
          bad(`state.${side} malformed`);
        }
      }
      if (!Array.isArray(msg.bullets)) bad("state.bullets must be a list");
      if (typeof msg.tick !== "number" || typeof msg.player_energy !== "number"
          || typeof msg.enemy_energy !== "number") {
        bad("state header malformed");
      }
      return msg as unknown as StateMsg;
    }
    case "result": {
      if (typeof msg.ep !== "number" || typeof msg.ee !== "number"
          || typeof msg.gain !== "number" || typeof msg.ticks !== "number"
          || typeof msg.outcome !== "string") {
        bad("result malformed");
      }
      return msg as unknown as ResultMsg;
    }
    case "error": {
      if (typeof msg.code !== "string" || typeof msg.message !== "string") {
        bad("error malformed");
      }
      return msg as unknown as ErrorMsg;
    }
    default:
      bad(`unknown message type: ${String(msg.type)}`);
  }
}
