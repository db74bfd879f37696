/**
 * Keyboard state tracking and the key-to-action mapping:
 * ArrowLeft -> left, ArrowRight -> right, Space -> jump, X -> shoot,
 * Z -> release. Actions echo whatever is held at sampling time, so a key
 * released between frames drops out of the next action.
 */

import type { ActionBits } from "./protocol.js";

const KEY_TO_BIT: Record<string, keyof ActionBits> = {
  ArrowLeft: "left",
  ArrowRight: "right",
  " ": "jump",
  x: "shoot",
  X: "shoot",
  z: "release",
  Z: "release",
};

export function keyboardToAction(pressed: ReadonlySet<string>): ActionBits {
  const a: ActionBits = { left: false, right: false, jump: false, shoot: false, release: false };
  for (const key of pressed) {
    const bit = KEY_TO_BIT[key];
    if (bit) a[bit] = true;
  }
  return a;
}

/** Tracks currently-held keys; feed it keydown/keyup events. */
export class KeyTracker {
  private held = new Set<string>();

  keyDown(key: string): void {
    if (key in KEY_TO_BIT) this.held.add(key);
  }

  keyUp(key: string): void {
    this.held.delete(key);
  }

  pressed(): ReadonlySet<string> {
    return this.held;
  }

  sample(): ActionBits {
    return keyboardToAction(this.held);
  }

  /** Wire to a DOM event target; returns an unsubscribe function. */
  attach(target: {
    addEventListener(type: string, cb: (e: KeyboardEvent) => void): void;
    removeEventListener(type: string, cb: (e: KeyboardEvent) => void): void;
  }): () => void {
    const down = (e: KeyboardEvent) => {
      if (e.key in KEY_TO_BIT) e.preventDefault();
      this.keyDown(e.key);
    };
    const up = (e: KeyboardEvent) => this.keyUp(e.key);
    target.addEventListener("keydown", down);
    target.addEventListener("keyup", up);
    return () => {
      target.removeEventListener("keydown", down);
      target.removeEventListener("keyup", up);
    };
  }
}
