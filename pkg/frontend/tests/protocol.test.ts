import { describe, expect, it } from "vitest";

import {
  decodeServerMessage,
  encodeAction,
  encodeClose,
  encodeReset,
  ProtocolError,
} from "../src/protocol.js";

// The exact bytes of the wire grammar; the server pins the same strings.
const GOLDEN_RESET = '{"type":"reset","boss_id":3,"seed":9}';
const GOLDEN_ACTION =
  '{"type":"action","tick":0,"left":false,"right":true,"jump":false,"shoot":true,"release":false}';
const GOLDEN_CLOSE = '{"type":"close"}';

describe("canonical encoding", () => {
  it("reset bytes", () => {
    expect(encodeReset(3, 9)).toBe(GOLDEN_RESET);
  });

  it("action bytes", () => {
    expect(encodeAction(0, {
      left: false, right: true, jump: false, shoot: true, release: false,
    })).toBe(GOLDEN_ACTION);
  });

  it("close bytes", () => {
    expect(encodeClose()).toBe(GOLDEN_CLOSE);
  });
});

describe("server message decoding", () => {
  const state = JSON.stringify({
    type: "state", tick: 4,
    player: { x: 60, y: 424, facing: 1 },
    enemy: { x: 620, y: 416, facing: -1 },
    bullets: [{ x: 100, y: 420, owner: "enemy" }],
    sensors: Array(20).fill(0),
    player_energy: 100, enemy_energy: 99,
  });

  it("decodes a state", () => {
    const msg = decodeServerMessage(state);
    expect(msg.type).toBe("state");
    if (msg.type === "state") {
      expect(msg.tick).toBe(4);
      expect(msg.sensors).toHaveLength(20);
      expect(msg.enemy.facing).toBe(-1);
    }
  });

  it("decodes a result", () => {
    const msg = decodeServerMessage(
      '{"type":"result","outcome":"Timeout","ep":100,"ee":100,"gain":100.01,"ticks":2}');
    expect(msg.type).toBe("result");
    if (msg.type === "result") expect(msg.gain).toBeCloseTo(100.01);
  });

  it("decodes an error", () => {
    const msg = decodeServerMessage('{"type":"error","code":"desync","message":"x"}');
    expect(msg.type).toBe("error");
  });

  it.each([
    "{broken",
    '"a string"',
    '{"type":"warp"}',
    '{"type":"state","tick":0}',
    JSON.stringify({
      type: "state", tick: 0,
      player: { x: 0, y: 0, facing: 2 },
      enemy: { x: 0, y: 0, facing: 1 },
      bullets: [], sensors: Array(20).fill(0),
      player_energy: 100, enemy_energy: 100,
    }),
    JSON.stringify({
      type: "state", tick: 0,
      player: { x: 0, y: 0, facing: 1 },
      enemy: { x: 0, y: 0, facing: 1 },
      bullets: [], sensors: Array(19).fill(0),
      player_energy: 100, enemy_energy: 100,
    }),
  ])("rejects malformed input %#", (raw) => {
    expect(() => decodeServerMessage(raw)).toThrow(ProtocolError);
  });
});
