/**
 * Browser entry point: wires the WebSocket transport, keyboard, canvas,
 * and the replay viewer panel together. Everything protocol-shaped lives
 * in the imported modules; this file is DOM glue.
 */

import { KeyTracker } from "./input.js";
import { encodeClose, StateMsg } from "./protocol.js";
import { renderFrame } from "./render.js";
import { ParsedQuery, parseQuery } from "./query.js";
import { ClientSession, Transport } from "./session.js";
import { parseReplayDoc, ReplayFrame, ReplayViewer, trailerGain } from "./replayViewer.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function banner(text: string, kind: "info" | "error" = "info"): void {
  const b = el<HTMLDivElement>("banner");
  b.textContent = text;
  b.className = kind;
}

// ---------------------------------------------------------------------------
// live play
// ---------------------------------------------------------------------------

function startLive(query: ParsedQuery): void {
  const canvas = el<HTMLCanvasElement>("arena");
  const ctx = canvas.getContext("2d");
  if (!ctx) throw new Error("no 2d context");
  const overlayBox = el<HTMLInputElement>("overlay");
  const tracker = new KeyTracker();
  tracker.attach(window);

  const url = `ws://${location.hostname}:${location.port || "8808"}/`;
  const ws = new WebSocket(url);
  const transport: Transport = {
    send: (line) => ws.send(line),
    close: () => ws.close(),
  };

  let lastState: StateMsg | null = null;
  const session = new ClientSession(transport, {
    mode: "human",
    keySource: () => tracker.sample(),
    tickIntervalMs: 33,
    onState: (s) => {
      lastState = s;
      renderFrame(ctx, s, { overlay: overlayBox.checked });
      el<HTMLSpanElement>("tick").textContent = String(s.tick);
    },
    onResult: (r) => {
      banner(`${r.outcome} — ep ${r.ep}, ee ${r.ee}, gain ${r.gain.toFixed(2)} `
             + `after ${r.ticks} ticks. Press Restart to go again.`);
    },
    onError: (e) => {
      const text = "code" in e ? `${e.code}: ${e.message}` : String(e);
      banner(`session halted — ${text}`, "error");
    },
  });

  ws.onmessage = (ev) => session.handleMessage(String(ev.data));
  ws.onopen = () => {
    banner(`connected; fighting boss ${query.boss} (seed ${query.seed})`);
    session.reset(query.boss, query.seed);
  };
  ws.onclose = () => banner("connection closed", "error");

  overlayBox.onchange = () => {
    if (lastState) renderFrame(ctx, lastState, { overlay: overlayBox.checked });
  };
  el<HTMLButtonElement>("restart").onclick = () => {
    banner("restarted");
    session.reset(query.boss, query.seed);
  };
  window.addEventListener("beforeunload", () => {
    try {
      ws.send(encodeClose());
    } catch {
      /* already closed */
    }
  });
}

// ---------------------------------------------------------------------------
// replay viewer
// ---------------------------------------------------------------------------

const BIT_NAMES = ["left", "right", "jump", "shoot", "release"] as const;

function showReplayFrame(viewer: ReplayViewer, f: ReplayFrame): void {
  el<HTMLSpanElement>("rv-tick").textContent = `${f.tick} / ${f.total}`;
  el<HTMLInputElement>("rv-scrub").value = String(f.tick);
  const bits = f.action;
  for (const name of BIT_NAMES) {
    const cell = el<HTMLSpanElement>(`rv-${name}`);
    const on = bits !== null && bits[name];
    cell.className = on ? "bit on" : "bit";
  }
  const energy = f.playerEnergy === null
    ? "energies: (mid-replay, not recorded)"
    : `energies: player ${f.playerEnergy}, boss ${f.enemyEnergy}`;
  let tail = "";
  if (f.outcome !== null && f.gain !== null) {
    tail = ` — ${f.outcome}, gain ${f.gain.toFixed(2)}`;
  }
  el<HTMLDivElement>("rv-status").textContent = energy + tail;
}

function wireReplayPanel(): void {
  const input = el<HTMLInputElement>("rv-file");
  let viewer: ReplayViewer | null = null;

  input.onchange = async () => {
    const file = input.files?.[0];
    if (!file) return;
    try {
      const doc = parseReplayDoc(await file.text());
      viewer = new ReplayViewer(doc);
      viewer.onFrame = (f) => showReplayFrame(viewer!, f);
      const scrub = el<HTMLInputElement>("rv-scrub");
      scrub.max = String(viewer.totalTicks);
      el<HTMLDivElement>("rv-header").textContent =
        `boss ${doc.boss_id}, seed ${doc.seed}, roster ${doc.roster_version}, `
        + `${doc.actions.length} ticks, final gain ${trailerGain(doc).toFixed(2)}`;
      viewer.seek(0);
    } catch (err) {
      banner(`replay load failed — ${String(err)}`, "error");
    }
  };

  el<HTMLButtonElement>("rv-play").onclick = () => viewer?.play();
  el<HTMLButtonElement>("rv-pause").onclick = () => viewer?.pause();
  el<HTMLButtonElement>("rv-back").onclick = () => viewer?.stepBack();
  el<HTMLButtonElement>("rv-fwd").onclick = () => viewer?.stepForward();
  el<HTMLInputElement>("rv-scrub").oninput = (ev) => {
    viewer?.pause();
    viewer?.seek(Number((ev.target as HTMLInputElement).value));
  };
}

// ---------------------------------------------------------------------------

export function mount(): void {
  const query = parseQuery(location.search);
  wireReplayPanel();
  startLive(query);
}

if (typeof document !== "undefined" && document.getElementById("arena")) {
  mount();
}
