"""HTTP/WebSocket assembly and CLI entry point.

Endpoints: GET / and /static/* (console assets), GET /stream (MJPEG),
GET /health, and the pub/sub WebSocket at /ws (text frames only).
"""

from __future__ import annotations

import asyncio
import sys
from contextlib import asynccontextmanager
from importlib import resources
from pathlib import Path

import uvicorn
from fastapi import FastAPI, WebSocket
from fastapi.responses import FileResponse, HTMLResponse, JSONResponse, Response, StreamingResponse
from fastapi.staticfiles import StaticFiles

from .camera import RenderConfig
from .config import USAGE, CliError, Config, parse_cli
from .gateway import MJPEG_CONTENT_TYPE, STATUS_TOPIC, Gateway, mjpeg_stream
from .protocol import Envelope, encode_envelope
from .world import load_course

PLACEHOLDER_INDEX = """<!doctype html>
<html><head><title>huro-teleop gateway</title></head>
<body>
<h1>huro-teleop gateway</h1>
<p>No operator console is configured (start with --static-dir to serve one).</p>
<ul>
  <li><a href="/health">/health</a></li>
  <li><a href="/stream">/stream</a> (MJPEG camera)</li>
  <li><code>/ws</code> (JSON pub/sub WebSocket)</li>
</ul>
</body></html>
"""


def default_course_bytes() -> bytes:
    return resources.files("huro_teleop").joinpath("courses/default.json").read_bytes()


async def _tick_loop(gateway: Gateway) -> None:
    period = 1.0 / gateway.config.tick_hz
    while True:
        await asyncio.sleep(period)
        gateway.advance(period)


def build_app(config: Config | None = None, *, auto_tick: bool | None = None) -> FastAPI:
    """Assemble the ASGI app around one Gateway.

    auto_tick defaults to running the real-time loop in 'wall' mode; in
    'lockstep' mode ticks happen as commands arrive (and tests may drive
    gateway.advance themselves).
    """
    config = config or Config()
    if config.course_path:
        course = load_course(Path(config.course_path).read_bytes())
    else:
        course = load_course(default_course_bytes())
    gateway = Gateway(config, course)
    if auto_tick is None:
        auto_tick = config.tick_mode == "wall"

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        task = asyncio.create_task(_tick_loop(gateway)) if auto_tick else None
        try:
            yield
        finally:
            if task is not None:
                task.cancel()

    app = FastAPI(title="huro-teleop gateway", lifespan=lifespan)
    app.state.gateway = gateway

    @app.get("/health")
    def health():
        return JSONResponse({"status": "ok"})

    @app.get("/")
    def index():
        if config.static_dir:
            index_path = Path(config.static_dir) / "index.html"
            if index_path.is_file():
                return FileResponse(index_path)
        return HTMLResponse(PLACEHOLDER_INDEX)

    if config.static_dir and Path(config.static_dir).is_dir():
        app.mount("/static", StaticFiles(directory=config.static_dir), name="static")

    @app.get("/stream")
    def stream(
        width: int | None = None,
        height: int | None = None,
        fps: float | None = None,
        quality: int | None = None,
        frames: int | None = None,
    ):
        base = config.render
        try:
            cfg = RenderConfig(
                width=width if width is not None else base.width,
                height=height if height is not None else base.height,
                fov=base.fov,
                fps=fps if fps is not None else base.fps,
                jpeg_quality=quality if quality is not None else base.jpeg_quality,
            )
        except ValueError as exc:
            return Response(str(exc), status_code=400)
        return StreamingResponse(
            mjpeg_stream(gateway, cfg, frame_limit=frames),
            media_type=MJPEG_CONTENT_TYPE,
        )

    @app.websocket("/ws")
    async def ws_endpoint(ws: WebSocket):
        await ws.accept()
        outbound: asyncio.Queue[str] = asyncio.Queue()
        sid = gateway.open_session(lambda e: outbound.put_nowait(encode_envelope(e)))

        async def pump():
            while True:
                await ws.send_text(await outbound.get())

        pump_task = asyncio.create_task(pump())
        try:
            while True:
                message = await ws.receive()
                if message["type"] == "websocket.disconnect":
                    break
                if message.get("bytes") is not None:
                    err = Envelope(op="status", topic=STATUS_TOPIC, msg={"level": "error", "msg": "text frames only"})
                    outbound.put_nowait(encode_envelope(err))
                    continue
                text = message.get("text")
                if text is not None:
                    gateway.handle_text(sid, text)
        finally:
            pump_task.cancel()
            gateway.close_session(sid)

    return app


def main(argv: list[str] | None = None) -> int:
    try:
        config = parse_cli(sys.argv[1:] if argv is None else argv)
    except CliError as err:
        print(f"error: {err}\n", file=sys.stderr)
        print(USAGE, file=sys.stderr)
        return 2
    app = build_app(config)
    uvicorn.run(app, host=config.host, port=config.port)
    return 0


if __name__ == "__main__":
    sys.exit(main())
