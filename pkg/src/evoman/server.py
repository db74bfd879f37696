"""Lockstep step-server over WebSocket.

Each session owns at most one match.  The loop is strict lockstep: the
server sends a state message, waits for the action carrying that state's
tick, steps the simulation, and repeats; when the match ends it sends the
result and waits for a new reset.  Lockstep (rather than real time) keeps
remote agents fair and replays exact; the browser client paces itself at
the nominal tick rate so human play still feels live.

WebSocket is the one duplex stream browsers can open, so it carries the
line-grammar directly: one canonical JSON message per frame.  Plain HTTP
requests on the same port serve the static web client (when a directory
is configured), which keeps local play a one-command affair.

Error policy: malformed messages get an error frame and close the session;
an action with the wrong tick gets {"code": "desync"} and the session
keeps waiting (a refreshing client may resync); actions arriving after the
match ended are dropped (they lost the race against the result frame).
"""

from __future__ import annotations

import asyncio
import http
import mimetypes
from pathlib import Path

from websockets.asyncio.server import serve as ws_serve
from websockets.datastructures import Headers
from websockets.exceptions import ConnectionClosed
from websockets.http11 import Request, Response

from .engine import _step_inplace, new_match
from .state import DEFAULT_CONFIG, MatchConfig, Outcome
from .wire import (
    Action,
    Close,
    ProtocolError,
    Reset,
    decode_client_message,
    encode_error,
    encode_result,
    encode_state,
)

DEFAULT_PORT = 8808


async def _session(ws, config: MatchConfig, action_timeout: float | None) -> None:
    sim = None
    while True:
        try:
            if sim is not None and sim.outcome == Outcome.ONGOING and action_timeout:
                raw = await asyncio.wait_for(ws.recv(), action_timeout)
            else:
                raw = await ws.recv()
        except asyncio.TimeoutError:
            await ws.send(encode_error("timeout", "no action received in time"))
            return
        except ConnectionClosed:
            return

        try:
            msg = decode_client_message(raw)
        except ProtocolError as exc:
            await ws.send(encode_error(exc.code, exc.message))
            return

        if isinstance(msg, Close):
            return
        if isinstance(msg, Reset):
            try:
                sim = new_match(msg.boss_id, config, msg.seed)
            except ValueError as exc:
                await ws.send(encode_error("bad_reset", str(exc)))
                return
            await ws.send(encode_state(sim))
            continue
        assert isinstance(msg, Action)
        if sim is None:
            await ws.send(encode_error("no_match", "action before reset"))
            return
        if sim.outcome != Outcome.ONGOING:
            continue  # late action racing the result frame; drop it
        if msg.tick != sim.tick:
            await ws.send(encode_error(
                "desync", f"expected action for tick {sim.tick}, got {msg.tick}"))
            continue
        _step_inplace(sim, msg.action)
        await ws.send(encode_state(sim))
        if sim.outcome != Outcome.ONGOING:
            await ws.send(encode_result(sim))


def _static_responder(static_dir: Path):
    root = static_dir.resolve()

    def respond(connection, request: Request):
        if "Upgrade" in request.headers.get("Connection", ""):
            return None  # proceed with the websocket handshake
        path = request.path.split("?", 1)[0]
        rel = path.lstrip("/") or "index.html"
        target = (root / rel).resolve()
        if not str(target).startswith(str(root)) or not target.is_file():
            return Response(http.HTTPStatus.NOT_FOUND, "Not Found", Headers(),
                            b"not found")
        ctype = mimetypes.guess_type(target.name)[0] or "application/octet-stream"
        body = target.read_bytes()
        headers = Headers()
        headers["Content-Type"] = ctype
        headers["Content-Length"] = str(len(body))
        return Response(http.HTTPStatus.OK, "OK", headers, body)

    return respond


async def serve_async(host: str = "127.0.0.1", port: int = DEFAULT_PORT,
                      config: MatchConfig = DEFAULT_CONFIG,
                      action_timeout: float | None = 30.0,
                      static_dir: Path | None = None):
    """Start the step server; returns the websockets server object."""

    async def handler(ws):
        await _session(ws, config, action_timeout)

    process_request = _static_responder(static_dir) if static_dir else None
    return await ws_serve(handler, host, port, process_request=process_request)


def serve_forever(host: str = "127.0.0.1", port: int = DEFAULT_PORT,
                  config: MatchConfig = DEFAULT_CONFIG,
                  action_timeout: float | None = None,
                  static_dir: Path | None = None) -> None:
    """Blocking entry point for the CLI `play` command."""

    async def main() -> None:
        server = await serve_async(host, port, config, action_timeout, static_dir)
        await server.wait_closed()

    asyncio.run(main())
