/**
 * Schematic canvas rendering of a wire state: arena, the two fighters,
 * bullets, energy bars, and an optional overlay that draws the 20-sensor
 * vector as labeled lines (8 bullet slots, the enemy vector, and the two
 * facing arrows).
 *
 * The drawing surface is typed structurally so headless tests can record
 * calls and assert pixel positions without a real canvas.
 */

import type { StateMsg } from "./protocol.js";

type Paint = string | CanvasGradient | CanvasPattern;

export interface Surface {
  fillStyle: Paint;
  strokeStyle: Paint;
  lineWidth: number;
  font: string;
  fillRect(x: number, y: number, w: number, h: number): void;
  clearRect(x: number, y: number, w: number, h: number): void;
  beginPath(): void;
  moveTo(x: number, y: number): void;
  lineTo(x: number, y: number): void;
  stroke(): void;
  fillText(text: string, x: number, y: number): void;
}

export const ARENA_W = 736;
export const ARENA_H = 512;
export const FLOOR_Y = 440;

// schematic body sizes (the wire carries centers only)
const PLAYER_W = 24;
const PLAYER_H = 32;
const ENEMY_W = 32;
const ENEMY_H = 48;
const BULLET_R = 3;

export interface RenderOptions {
  overlay?: boolean;
}

function drawEntity(ctx: Surface, x: number, y: number, w: number, h: number,
                    facing: number, color: string): void {
  ctx.fillStyle = color;
  ctx.fillRect(x - w / 2, y - h / 2, w, h);
  // a nose strip marks the facing side
  ctx.fillStyle = "#ffffff";
  const noseX = facing > 0 ? x + w / 2 - 3 : x - w / 2;
  ctx.fillRect(noseX, y - 3, 3, 6);
}

function drawVector(ctx: Surface, x0: number, y0: number, dx: number, dy: number,
                    label: string): void {
  ctx.beginPath();
  ctx.moveTo(x0, y0);
  ctx.lineTo(x0 + dx, y0 + dy);
  ctx.stroke();
  ctx.fillText(label, x0 + dx + 3, y0 + dy - 3);
}

function drawFacingArrow(ctx: Surface, x: number, y: number, facing: number,
                         label: string): void {
  const len = 18 * facing;
  ctx.beginPath();
  ctx.moveTo(x, y);
  ctx.lineTo(x + len, y);
  ctx.lineTo(x + len - 5 * facing, y - 4);
  ctx.stroke();
  ctx.fillText(label, x + len + 3 * facing, y + 4);
}

/** Draw one wire state. Coordinates map 1:1 to arena pixels. */
export function renderFrame(ctx: Surface, state: StateMsg,
                            opts: RenderOptions = {}): void {
  ctx.clearRect(0, 0, ARENA_W, ARENA_H);
  ctx.fillStyle = "#101418";
  ctx.fillRect(0, 0, ARENA_W, ARENA_H);
  ctx.fillStyle = "#2a3138";
  ctx.fillRect(0, FLOOR_Y, ARENA_W, ARENA_H - FLOOR_Y);

  drawEntity(ctx, state.player.x, state.player.y, PLAYER_W, PLAYER_H,
             state.player.facing, "#4db8ff");
  drawEntity(ctx, state.enemy.x, state.enemy.y, ENEMY_W, ENEMY_H,
             state.enemy.facing, "#ff5d5d");

  for (const b of state.bullets) {
    ctx.fillStyle = b.owner === "enemy" ? "#ffd24d" : "#9dff4d";
    ctx.fillRect(b.x - BULLET_R, b.y - BULLET_R, 2 * BULLET_R, 2 * BULLET_R);
  }

  // energy bars strictly mirror the wire values
  ctx.fillStyle = "#223";
  ctx.fillRect(10, 10, 200, 12);
  ctx.fillRect(ARENA_W - 210, 10, 200, 12);
  ctx.fillStyle = "#4db8ff";
  ctx.fillRect(10, 10, 2 * state.player_energy, 12);
  ctx.fillStyle = "#ff5d5d";
  ctx.fillRect(ARENA_W - 210, 10, 2 * state.enemy_energy, 12);
  ctx.fillStyle = "#ccc";
  ctx.font = "10px monospace";
  ctx.fillText(String(state.player_energy), 215, 20);
  ctx.fillText(String(state.enemy_energy), ARENA_W - 230, 20);

  if (opts.overlay) {
    const px = state.player.x;
    const py = state.player.y;
    ctx.strokeStyle = "#7a8896";
    ctx.lineWidth = 1;
    ctx.fillStyle = "#7a8896";
    for (let slot = 0; slot < 8; slot++) {
      const dx = state.sensors[2 * slot];
      const dy = state.sensors[2 * slot + 1];
      drawVector(ctx, px, py, dx, dy, `s${slot + 1}`);
    }
    ctx.strokeStyle = "#ff9d4d";
    ctx.fillStyle = "#ff9d4d";
    drawVector(ctx, px, py, state.sensors[16], state.sensors[17], "E");
    ctx.strokeStyle = "#ffffff";
    ctx.fillStyle = "#ffffff";
    drawFacingArrow(ctx, px, py - 28, state.sensors[18], "P");
    drawFacingArrow(ctx, state.enemy.x, state.enemy.y - 36, state.sensors[19], "B");
  }
}
