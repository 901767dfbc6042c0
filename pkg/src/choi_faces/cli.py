"""Command-line client: classification, certificates, sweeps, face reports.

Commands compute in process by default; --server URL sends the same request
to a running HTTP service instead.  Exit codes: 0 success, 1 negative
domain answer (not separable, failed verification), 2 input error, 3 I/O
or service transport failure.
"""

from __future__ import annotations

import json
import pathlib
import sys

import click

from .errors import ChoiFacesError, NotSeparableError
from .service import api


def _server(ctx) -> str | None:
    return (ctx.obj or {}).get("server")


def _post(server: str, path: str, payload):
    import httpx

    try:
        return httpx.post(server.rstrip("/") + path, json=payload, timeout=600.0)
    except httpx.HTTPError as exc:
        click.echo(f"service request failed: {exc}", err=True)
        raise SystemExit(3)


def _detail(resp) -> str:
    try:
        return str(resp.json().get("detail"))
    except ValueError:
        return resp.text


def _handle_error(resp):
    if resp.status_code == 409:
        try:
            body = resp.json()
        except ValueError:
            body = {}
        click.echo(body.get("detail", "not separable"), err=True)
        cls = body.get("classification") or {}
        if "verdict" in cls:
            click.echo(f"verdict: {cls['verdict']}", err=True)
        raise SystemExit(1)
    if resp.status_code == 422:
        click.echo(_detail(resp), err=True)
        raise SystemExit(2)
    click.echo(f"service error {resp.status_code}: {resp.text[:500]}", err=True)
    raise SystemExit(3)


def _call(ctx, path: str, payload, local_fn) -> dict:
    server = _server(ctx)
    if server is None:
        try:
            return local_fn().model_dump()
        except NotSeparableError as exc:
            click.echo(str(exc), err=True)
            if exc.classification is not None:
                click.echo(f"verdict: {exc.classification.verdict}", err=True)
            raise SystemExit(1)
        except ChoiFacesError as exc:
            click.echo(str(exc), err=True)
            raise SystemExit(2)
    resp = _post(server, path, payload)
    if resp.status_code != 200:
        _handle_error(resp)
    return resp.json()


def _format_boundary(data: dict) -> str:
    tag = data["tag"]
    params = data.get("params") or {}
    if not params:
        return tag
    inner = ", ".join(f"{k} = {v:.9g}" for k, v in sorted(params.items()))
    return f"{tag} ({inner})"


@click.group()
@click.option(
    "--server",
    default=None,
    metavar="URL",
    help="Send requests to a running service instead of computing in process.",
)
@click.pass_context
def main(ctx, server):
    """Tools for the two-qutrit state family A[a,b,c]."""
    ctx.obj = {"server": server}


@main.command()
@click.argument("a", type=float)
@click.argument("b", type=float)
@click.argument("c", type=float)
@click.option("--json", "as_json", is_flag=True, help="Emit the report as JSON.")
@click.pass_context
def classify(ctx, a, b, c, as_json):
    """Classify A[a,b,c]; report boundary element, type and witness."""
    data = _call(
        ctx,
        "/classify",
        {"a": a, "b": b, "c": c},
        lambda: api.classify_point(a, b, c),
    )
    if as_json:
        click.echo(json.dumps(data, indent=2))
        return
    click.echo(f"verdict: {data['verdict']}")
    click.echo(f"tolerance: {data['tolerance_used']:.3g}")
    click.echo(f"boundary element: {_format_boundary(data['boundary'])}")
    if data.get("state_type"):
        p, q = data["state_type"]
        click.echo(f"type: ({p}, {q})")
    click.echo(
        f"witness minimum: {data['witness_value']:.9g} at t = {data['witness_t']:.9g}"
    )


@main.command()
@click.argument("a", type=float)
@click.argument("b", type=float)
@click.argument("c", type=float)
@click.option("--json", "as_json", is_flag=True, help="Print only the certificate JSON.")
@click.option("--verify", "do_verify", is_flag=True, help="Recompute and print the residual.")
@click.pass_context
def decompose(ctx, a, b, c, as_json, do_verify):
    """Emit a product-state certificate for a separable A[a,b,c]."""
    data = _call(
        ctx,
        "/decompose",
        {"a": a, "b": b, "c": c},
        lambda: api.decompose_point(a, b, c),
    )
    if not as_json:
        click.echo(f"terms: {len(data['terms'])}")
    click.echo(json.dumps(data, indent=2))
    if do_verify:
        click.echo(f"residual: {data['residual']:.3e}", err=as_json)


@main.command()
@click.option(
    "--a",
    "a_range",
    type=(float, float, int),
    default=(1.0, 3.0, 5),
    metavar="LO HI STEPS",
    help="Grid for a.",
)
@click.option(
    "--b",
    "b_range",
    type=(float, float, int),
    default=(0.5, 3.0, 5),
    metavar="LO HI STEPS",
    help="Grid for b.",
)
@click.option(
    "--c",
    "c_range",
    type=(float, float, int),
    default=(0.5, 3.0, 5),
    metavar="LO HI STEPS",
    help="Grid for c.",
)
@click.option("--out", default="-", metavar="PATH", help="Output file, - for stdout.")
@click.pass_context
def sweep(ctx, a_range, b_range, c_range, out):
    """Classify a parameter grid; CSV rows in a-major order."""
    server = _server(ctx)
    if server is None:
        try:
            text = api.sweep_csv(a_range, b_range, c_range)
        except ChoiFacesError as exc:
            click.echo(str(exc), err=True)
            raise SystemExit(2)
    else:
        payload = {
            "a": {"lo": a_range[0], "hi": a_range[1], "steps": a_range[2]},
            "b": {"lo": b_range[0], "hi": b_range[1], "steps": b_range[2]},
            "c": {"lo": c_range[0], "hi": c_range[1], "steps": c_range[2]},
        }
        resp = _post(server, "/sweep", payload)
        if resp.status_code != 200:
            _handle_error(resp)
        text = resp.text
    if out == "-":
        click.echo(text, nl=False)
        return
    try:
        pathlib.Path(out).write_text(text)
    except OSError as exc:
        click.echo(f"cannot write {out}: {exc}", err=True)
        raise SystemExit(3)
    click.echo(f"wrote {out}")


@main.command()
@click.argument("a", type=float)
@click.argument("b", type=float)
@click.argument("c", type=float)
@click.option("--samples", type=int, default=20, show_default=True, help="Random members to check.")
@click.option("--seed", type=int, default=None, help="Seed for the random check.")
@click.pass_context
def face(ctx, a, b, c, samples, seed):
    """Report the face data of a separable A[a,b,c]."""
    data = _call(
        ctx,
        "/face",
        {"a": a, "b": b, "c": c, "samples": samples, "seed": seed},
        lambda: api.face_report(a, b, c, samples, seed),
    )
    click.echo(f"boundary element: {_format_boundary(data['boundary'])}")
    p, q = data["state_type"]
    click.echo(f"type: ({p}, {q})")
    kd, ke = data["kernel_dims"]
    click.echo(f"kernel dimensions: ({kd}, {ke})")
    if data.get("family"):
        click.echo(f"product-vector family: {data['family']}")
    else:
        click.echo("product-vector family: none catalogued for this element")
    through = data.get("through")
    if through is None:
        click.echo("through-decomposition check: not applicable to this element")
        return
    status = "PASS" if through["passed"] == through["samples"] else "FAIL"
    if through["constructive"]:
        click.echo(
            f"through-decomposition check: {status} "
            f"({through['passed']}/{through['samples']} samples, "
            f"max residual {through['max_residual']:.3e})"
        )
    else:
        click.echo(
            f"through-decomposition check: negative case {status} "
            f"({through['passed']}/{through['samples']} samples)"
        )
    click.echo(f"  {through['note']}")


@main.command()
@click.argument("path", type=click.Path())
@click.pass_context
def verify(ctx, path):
    """Check a certificate file: exit 0 iff it reconstructs its target."""
    try:
        raw = pathlib.Path(path).read_text()
    except OSError as exc:
        click.echo(f"cannot read {path}: {exc}", err=True)
        raise SystemExit(3)
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        click.echo(f"malformed JSON: {exc}", err=True)
        raise SystemExit(2)
    server = _server(ctx)
    if server is None:
        try:
            data = api.verify_certificate(doc).model_dump()
        except ValueError as exc:
            click.echo(str(exc), err=True)
            raise SystemExit(2)
    else:
        resp = _post(server, "/verify", doc)
        if resp.status_code != 200:
            _handle_error(resp)
        data = resp.json()
    tgt = data["target"]
    click.echo(f"target: a = {tgt['a']:.9g}, b = {tgt['b']:.9g}, c = {tgt['c']:.9g}")
    click.echo(f"terms: {data['terms']}")
    click.echo(f"min weight: {data['min_weight']:.3e}")
    click.echo(f"residual: {data['residual']:.3e}")
    if data["ok"]:
        click.echo("verification passed")
        return
    click.echo("verification FAILED")
    raise SystemExit(1)


@main.command()
@click.argument("a", type=float)
@click.argument("b", type=float)
@click.argument("c", type=float)
@click.option("--t-min", type=float, default=1e-3, show_default=True)
@click.option("--t-max", type=float, default=1e3, show_default=True)
@click.option("--grid", type=int, default=1001, show_default=True)
@click.pass_context
def witness(ctx, a, b, c, t_min, t_max, grid):
    """Scan the witness curve of A[a,b,c] and refine its minimum."""
    data = _call(
        ctx,
        "/witness",
        {"a": a, "b": b, "c": c, "t_min": t_min, "t_max": t_max, "grid": grid},
        lambda: api.witness_point(a, b, c, t_min, t_max, grid),
    )
    click.echo(f"grid minimum: {data['scan_value']:.9g} at t = {data['scan_t']:.9g}")
    click.echo(f"refined minimum: {data['value']:.9g} at t = {data['t']:.9g}")
    if data["zeros"]:
        zs = ", ".join(f"{z:.9g}" for z in data["zeros"])
        click.echo(f"zero crossings: {zs}")
    else:
        click.echo("zero crossings: none")


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(), host=host, port=port)


if __name__ == "__main__":
    sys.exit(main())
