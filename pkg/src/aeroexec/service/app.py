"""HTTP + WebSocket surface for operator clients.

    POST /plan       upload a mission plan (JSON body, plan format)
    POST /event      {"name": str} -> injection ack
    POST /sim        {"cmd": "start|pause|resume|set_speed|reset", "arg"?}
    GET  /state      latest telemetry frame
    WS   /telemetry  stream of telemetry frames (latest-frame coalescing)

All payloads carry a "v": 1 version field.
"""

from __future__ import annotations

import asyncio
import json
from contextlib import asynccontextmanager
from pathlib import Path

from fastapi import FastAPI, Request, WebSocket, WebSocketDisconnect
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from ..mission_plan import PlanError, SchemaError, UnsupportedVersion
from .session import IllegalLifecycle, NotIdle, SessionError, SimSession


def create_app(config_source: dict | str | Path, frame_period: float = 0.1,
               seed: int = 0) -> FastAPI:
    if isinstance(config_source, (str, Path)):
        path = Path(config_source)
        config_doc = json.loads(path.read_text())
        # Inline file references so the session's config is self-contained
        # regardless of the working directory.
        for key in ("plan", "table"):
            value = config_doc.get(key)
            if isinstance(value, str):
                config_doc[key] = json.loads((path.parent / value).read_text())
    else:
        config_doc = dict(config_source)
    session = SimSession(config_doc, frame_period=frame_period, seed=seed)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        session.start_thread()
        yield
        session.stop_thread()

    app = FastAPI(title="aeroexec ground control", lifespan=lifespan)
    app.state.session = session
    # The console is typically served from a separate static origin; the
    # service carries no credentials, so a permissive policy is fine.
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])

    @app.exception_handler(SessionError)
    async def _session_error(_req: Request, exc: SessionError):
        status = 409 if isinstance(exc, (IllegalLifecycle, NotIdle)) else 400
        return JSONResponse({"v": 1, "error": type(exc).__name__, "detail": str(exc)},
                            status_code=status)

    @app.post("/plan")
    async def upload_plan(request: Request):
        body = await request.body()
        try:
            return session.upload_plan(body)
        except SchemaError as e:
            return JSONResponse({"v": 1, "error": "SchemaError", "path": e.path,
                                 "detail": str(e)}, status_code=422)
        except UnsupportedVersion as e:
            return JSONResponse({"v": 1, "error": "UnsupportedVersion", "detail": str(e)},
                                status_code=422)
        except PlanError as e:
            return JSONResponse({"v": 1, "error": type(e).__name__, "detail": str(e)},
                                status_code=422)

    @app.post("/event")
    async def post_event(request: Request):
        doc = await request.json()
        name = str(doc.get("name", ""))
        return session.post_event(name)

    @app.post("/sim")
    async def sim_control(request: Request):
        doc = await request.json()
        return session.control(str(doc.get("cmd", "")), doc.get("arg"))

    @app.get("/state")
    async def get_state():
        return session.state_frame()

    @app.websocket("/telemetry")
    async def telemetry(ws: WebSocket):
        await ws.accept()
        # Per-connection sequence numbers: coalescing may skip global
        # frames, but each subscriber sees a gap-free stream.
        local_seq = 0
        last_global = -1
        try:
            while True:
                frame_seq = session.frame_seq
                if frame_seq != last_global:
                    last_global = frame_seq
                    frame = session.state_frame()
                    frame["seq"] = local_seq
                    local_seq += 1
                    await ws.send_text(json.dumps(frame, separators=(",", ":")))
                await asyncio.sleep(session.frame_period / 4.0)
        except WebSocketDisconnect:
            pass

    return app
