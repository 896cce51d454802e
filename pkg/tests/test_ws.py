"""WebSocket transport: live calls, event streaming, reconnect resume."""

import asyncio
import json
import urllib.error
import urllib.request

import pytest
import websockets

from storycaster.server.service import ToolService
from storycaster.server.ws import WebSocketServer


@pytest.fixture(scope="module")
def service(small_config, shared_room, tmp_path_factory):
    return ToolService(
        small_config, room=shared_room,
        artifacts_dir=str(tmp_path_factory.mktemp("ws_artifacts")),
    )


async def rpc(conn, method, params, req_id):
    await conn.send(json.dumps({"jsonrpc": "2.0", "id": req_id, "method": method, "params": params}))
    while True:
        reply = json.loads(await asyncio.wait_for(conn.recv(), timeout=30))
        if reply.get("id") == req_id:
            return reply


def run(coro):
    return asyncio.new_event_loop().run_until_complete(coro)


def test_live_session_stream_and_reconnect(service):
    async def scenario():
        ws = WebSocketServer(service, host="127.0.0.1", port=0)
        server = await ws.start()
        port = server.sockets[0].getsockname()[1]
        uri = f"ws://127.0.0.1:{port}"
        try:
            async with websockets.connect(uri) as conn:
                started = await rpc(conn, "session.start", {"seed": 21}, 1)
                sid = started["result"]["session_id"]
                stream = await rpc(conn, "session.stream", {"session_id": sid}, 2)
                backlog = stream["result"]["events"]
                assert [e["seq"] for e in backlog] == list(range(1, len(backlog) + 1))

                # live events arrive as notifications while input is processed
                await conn.send(json.dumps({
                    "jsonrpc": "2.0", "id": 3, "method": "session.input",
                    "params": {"session_id": sid, "text": "hello"},
                }))
                pushed = []
                response = None
                while response is None:
                    msg = json.loads(await asyncio.wait_for(conn.recv(), timeout=30))
                    if msg.get("method") == "session.event":
                        pushed.append(msg["params"]["event"])
                    elif msg.get("id") == 3:
                        response = msg
                assert pushed, "no live events pushed"
                seqs = [e["seq"] for e in pushed]
                assert seqs == list(range(backlog[-1]["seq"] + 1, seqs[-1] + 1))
                last_seen = seqs[-1]

            # drop the connection mid-session, talk on a second connection,
            # then reconnect and resume from the last seen sequence
            async with websockets.connect(uri) as other:
                await rpc(other, "session.input", {"session_id": sid, "text": "okay"}, 4)

            async with websockets.connect(uri) as conn2:
                resumed = await rpc(
                    conn2, "session.stream",
                    {"session_id": sid, "after_seq": last_seen}, 5,
                )
                replay = resumed["result"]["events"]
                assert replay, "reconnect replay empty"
                assert [e["seq"] for e in replay] == list(
                    range(last_seen + 1, replay[-1]["seq"] + 1)
                )
        finally:
            server.close()
            await server.wait_closed()

    run(scenario())


def test_artifact_http_fetch(service):
    async def scenario():
        url_path = service.artifacts.put(b"\x89PNG\r\n\x1a\nfakefile", ".png")
        ws = WebSocketServer(service, host="127.0.0.1", port=0)
        server = await ws.start()
        port = server.sockets[0].getsockname()[1]
        try:
            def fetch():
                with urllib.request.urlopen(f"http://127.0.0.1:{port}/{url_path}") as resp:
                    return resp.status, resp.headers["Content-Type"], resp.read()

            status, ctype, body = await asyncio.get_running_loop().run_in_executor(None, fetch)
            assert status == 200
            assert ctype == "image/png"
            assert body.startswith(b"\x89PNG")

            def fetch_missing():
                try:
                    urllib.request.urlopen(f"http://127.0.0.1:{port}/artifacts/nope.png")
                except urllib.error.HTTPError as err:
                    return err.code
                return 200

            assert await asyncio.get_running_loop().run_in_executor(None, fetch_missing) == 404
        finally:
            server.close()
            await server.wait_closed()

    run(scenario())


def test_malformed_frames_do_not_disrupt_connection(service):
    async def scenario():
        ws = WebSocketServer(service, host="127.0.0.1", port=0)
        server = await ws.start()
        port = server.sockets[0].getsockname()[1]
        try:
            async with websockets.connect(f"ws://127.0.0.1:{port}") as conn:
                await conn.send("{broken json")
                reply = json.loads(await asyncio.wait_for(conn.recv(), timeout=10))
                assert reply["error"]["code"] == -32700
                # the connection still works afterwards
                listed = await rpc(conn, "tools/list", {}, 2)
                assert "tools" in listed["result"]
        finally:
            server.close()
            await server.wait_closed()

    run(scenario())
