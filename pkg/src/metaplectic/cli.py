"""Command-line client of the compute service.

Every subcommand marshals its flags into a request model, posts it to the
FastAPI app -- in-process by default, or to --server URL -- and prints the
JSON response (sorted keys, so identical invocations are byte-identical).
Exit codes: 0 success, 1 domain error, 2 verification failure.
"""

from __future__ import annotations

import json
import sys

import click
import httpx

SERVER_ENV = "METAPLECTIC_SERVER"


def _post_raw(server: str | None, path: str, payload: dict) -> httpx.Response:
    if server:
        with httpx.Client(base_url=server, timeout=600.0) as client:
            return client.post(path, json=payload)
    # in-process: drive the ASGI app directly, no sockets involved
    import asyncio

    from .service.app import app

    async def go() -> httpx.Response:
        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport,
                                     base_url="http://metaplectic.local",
                                     timeout=None) as client:
            return await client.post(path, json=payload)

    return asyncio.run(go())


def _post(ctx, path: str, payload: dict) -> dict:
    resp = _post_raw(ctx.obj.get("server"), path, payload)
    body = resp.json()
    if resp.status_code != 200:
        click.echo(json.dumps({"error": body.get("detail", body)}, sort_keys=True))
        sys.exit(1)
    return body


def _emit(body: dict, fmt: str):
    if fmt == "json":
        click.echo(json.dumps(body, sort_keys=True))
        return
    # aligned two-column table of scalar fields, dicts flattened one level
    rows = []
    for key in sorted(body):
        val = body[key]
        if isinstance(val, dict):
            for k2 in sorted(val):
                rows.append((f"{key}.{k2}", val[k2]))
        else:
            rows.append((key, val))
    width = max(len(k) for k, _ in rows)
    for k, v in rows:
        click.echo(f"{k.ljust(width)}  {v}")


@click.group()
@click.option("--server", default=None, envvar=SERVER_ENV,
              help="URL of a running service; default is in-process.")
@click.option("--format", "fmt", type=click.Choice(["json", "table"]), default="json")
@click.pass_context
def main(ctx, server, fmt):
    """Exact arithmetic for the metaplectic double cover of Sp(2n)."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server
    ctx.obj["fmt"] = fmt


@main.command()
@click.option("--place", required=True)
@click.option("--a", required=True)
@click.option("--b", required=True)
@click.pass_context
def hilbert(ctx, place, a, b):
    """Quadratic Hilbert symbol (a, b) at a place."""
    _emit(_post(ctx, "/hilbert", {"place": place, "a": a, "b": b}), ctx.obj["fmt"])


@main.command()
@click.option("--place", required=True)
@click.option("--a", required=True)
@click.option("--psi-twist", default="1")
@click.option("--bruteforce", is_flag=True,
              help="Also evaluate the principal-value sum route.")
@click.pass_context
def weil(ctx, place, a, psi_twist, bruteforce):
    """Weil factor gamma_psi(a) as an exact fourth root of unity."""
    _emit(_post(ctx, "/weil", {"place": place, "a": a, "psi_twist": psi_twist,
                               "bruteforce": bruteforce}), ctx.obj["fmt"])


def _read_matrix(path: str) -> list[list[str]]:
    with open(path) as fh:
        data = json.load(fh)
    return [[str(x) for x in row] for row in data]


@main.command()
@click.option("--place", required=True)
@click.option("--g", "g_path", required=True, type=click.Path(exists=True),
              help="JSON file with a matrix of rational strings.")
@click.option("--h", "h_path", required=True, type=click.Path(exists=True))
@click.option("--similitude", is_flag=True, help="Use the GSp extension.")
@click.pass_context
def cocycle(ctx, place, g_path, h_path, similitude):
    """Rao cocycle c(g, h) with its trace (cells, x-classes, Leray data)."""
    _emit(_post(ctx, "/cocycle", {
        "place": place, "g": _read_matrix(g_path), "h": _read_matrix(h_path),
        "similitude": similitude}), ctx.obj["fmt"])


@main.command("mp-mul")
@click.option("--place", required=True)
@click.option("--elements", "elements_path", required=True, type=click.Path(exists=True),
              help="JSON file: list of {g: matrix, eps: +-1}.")
@click.pass_context
def mp_mul(ctx, place, elements_path):
    """Compose a list of metaplectic elements under the twisted product."""
    with open(elements_path) as fh:
        elements = json.load(fh)
    for elt in elements:
        elt["g"] = [[str(x) for x in row] for row in elt["g"]]
    _emit(_post(ctx, "/mp-mul", {"place": place, "elements": elements}), ctx.obj["fmt"])


@main.command()
@click.option("--place", default="q2")
@click.option("--g", "g_path", required=True, type=click.Path(exists=True))
@click.pass_context
def bruhat(ctx, place, g_path):
    """Factor g = p1 tau_S p2 and report the x-invariant."""
    _emit(_post(ctx, "/bruhat", {"place": place, "g": _read_matrix(g_path)}),
          ctx.obj["fmt"])


@main.command("local-coef")
@click.option("--place", required=True)
@click.option("--mode", type=click.Choice(["closed", "integral", "both"]), default="both")
@click.option("--char-kind", type=click.Choice(["unramified", "legendre", "generator"]),
              default="unramified")
@click.option("--conductor", type=int, default=0)
@click.option("--value-at-pi", default="1,0", help="complex as re,im")
@click.option("--generator-value", default=None, help="complex as re,im")
@click.option("--psi-twist", default="1")
@click.option("--s", default="0.5,0", help="complex as re,im")
@click.option("--emit", "emit_what", type=click.Choice(["value", "decomposition"]),
              default="value")
@click.option("--parity", type=int, default=1, help="real place: chi(-1)")
@click.option("--a", type=float, default=1.0, help="real place: Weil twist sign")
@click.option("--b", type=float, default=1.0, help="real place: Whittaker twist sign")
@click.pass_context
def local_coef(ctx, place, mode, char_kind, conductor, value_at_pi, generator_value,
               psi_twist, s, emit_what, parity, a, b):
    """Rank-1 local coefficient: closed form, integral route, or both."""
    payload = {
        "place": place, "mode": mode,
        "char": {
            "kind": char_kind, "conductor": conductor,
            "value_at_pi": _pair(value_at_pi),
            "generator_value": _pair(generator_value) if generator_value else None,
        },
        "psi_twist": psi_twist, "s": _pair(s),
        "emit_decomposition": emit_what == "decomposition",
        "parity": parity, "a": a, "b": b,
    }
    _emit(_post(ctx, "/local-coef", payload), ctx.obj["fmt"])


def _pair(text: str) -> list[float]:
    parts = [float(x) for x in text.split(",")]
    return parts + [0.0] * (2 - len(parts))


@main.command()
@click.option("--kind", type=click.Choice(["tate", "sym2", "rankin", "metaplectic", "lpsi"]),
              required=True)
@click.option("--q", type=float, default=3.0)
@click.option("--params", default="", help="semicolon-separated re,im pairs")
@click.option("--params-b", default="", help="second parameter tuple")
@click.option("--shift", type=float, default=0.0)
@click.option("--doubled", is_flag=True, help="argument at 2s")
@click.pass_context
def gamma(ctx, kind, q, params, params_b, shift, doubled):
    """Symbolic gamma/L factors as factored rational functions in q^-s."""
    payload = {
        "kind": kind, "q": q,
        "params": [_pair(p) for p in params.split(";") if p],
        "params_b": [_pair(p) for p in params_b.split(";") if p],
        "shift": shift, "doubled": doubled,
    }
    _emit(_post(ctx, "/gamma", payload), ctx.obj["fmt"])


@main.command()
@click.option("--place", required=True)
@click.option("--kind", type=click.Choice(["zeta", "tate", "gamma-tilde", "phi-tilde"]),
              required=True)
@click.option("--char-kind", type=click.Choice(["unramified", "legendre"]),
              default="unramified")
@click.option("--value-at-pi", default="1,0")
@click.option("--s", default="0.5,0")
@click.option("--indicator", type=click.Choice(["ball", "coset"]), default="ball")
@click.option("--n", type=int, default=0)
@click.option("--a", default="1")
@click.option("--y", default="1")
@click.pass_context
def mellin(ctx, place, kind, char_kind, value_at_pi, s, indicator, n, a, y):
    """Mellin-type shell sums: zeta, Tate gamma, the twisted transform."""
    payload = {
        "place": place, "kind": kind,
        "char": {"kind": char_kind, "conductor": 0 if char_kind == "unramified" else 1,
                 "value_at_pi": _pair(value_at_pi)},
        "s": _pair(s), "indicator": indicator, "n": n, "a": a, "y": y,
    }
    _emit(_post(ctx, "/mellin", payload), ctx.obj["fmt"])


@main.command()
@click.option("--q", type=float, default=3.0)
@click.option("--alphas", required=True,
              help="semicolon-separated entries: re,im or the word 'quadratic'")
@click.pass_context
def reducibility(ctx, q, alphas):
    """Irreducibility verdict for a unitary principal-series tuple."""
    entries = []
    for token in alphas.split(";"):
        token = token.strip()
        if not token:
            continue
        if token == "quadratic":
            entries.append({"quadratic_ramified": True})
        else:
            entries.append({"value": _pair(token)})
    _emit(_post(ctx, "/reducibility", {"q": q, "entries": entries}), ctx.obj["fmt"])


@main.command()
@click.option("--kind", type=click.Choice(["q2-weil", "weil", "square-classes"]),
              default="q2-weil")
@click.option("--place", default="q2")
@click.pass_context
def table(ctx, kind, place):
    """Emit a named table (the eight-class Weil table at Q_2, square classes)."""
    _emit(_post(ctx, "/table", {"kind": kind, "place": place}), ctx.obj["fmt"])


@main.command()
@click.option("--suite", required=True)
@click.option("--seed", type=int, required=True, help="mandatory for reproducibility")
@click.option("--trials", type=int, default=None)
@click.option("--instances", type=int, default=None)
@click.option("--draws", type=int, default=None)
@click.option("--spoints", type=int, default=None)
@click.option("--tol", type=float, default=1e-8)
@click.option("--n", type=int, default=None, help="restrict the fuzz rank")
@click.option("--place", default=None, help="restrict the fuzz place")
@click.pass_context
def verify(ctx, suite, seed, trials, instances, draws, spoints, tol, n, place):
    """Run a named verification suite; exit 2 if any check fails."""
    payload = {"suite": suite, "seed": seed, "tol": tol}
    for key, val in (("trials", trials), ("instances", instances),
                     ("draws", draws), ("spoints", spoints)):
        if val is not None:
            payload[key] = val
    body = _post(ctx, "/verify", payload)
    if n is not None or place is not None:
        # rank/place restriction runs locally (the service endpoint is general)
        from .verify import run_suite

        params = {k: v for k, v in payload.items() if k not in ("suite", "tol")}
        if suite == "cocycle":
            if n is not None:
                params["ranks"] = (n,)
            if place is not None:
                params["places"] = (place,)
        body = run_suite(suite, **params).to_dict()
        body["schema"] = 1
    body.pop("elapsed", None)  # wall-clock noise would break byte-determinism
    _emit(body, ctx.obj["fmt"])
    if not body.get("passed", False):
        sys.exit(2)


@main.command()
@click.option("--host", default="127.0.0.1")
@click.option("--port", type=int, default=8000)
def serve(host, port):
    """Run the compute service under uvicorn."""
    import uvicorn

    uvicorn.run("metaplectic.service.app:app", host=host, port=port)


if __name__ == "__main__":
    main()
