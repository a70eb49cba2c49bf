"""Command-line client; talks to the service in-process (or to a remote server)."""

from __future__ import annotations

import asyncio
import sys

import click
import httpx

from .reports import canonical_json


def _post(path: str, body: dict, server: str | None) -> dict:
    async def run():
        if server:
            async with httpx.AsyncClient(base_url=server, timeout=None) as client:
                resp = await client.post(path, json=body)
                return resp.json()
        from .service.app import app

        transport = httpx.ASGITransport(app=app)
        async with httpx.AsyncClient(transport=transport, base_url="http://planefol.local", timeout=None) as client:
            resp = await client.post(path, json=body)
            return resp.json()

    return asyncio.run(run())


def _foliation_body(form, corpus, d, lam, gamma, p) -> dict:
    spec = {}
    if form:
        spec["form"] = form
    if corpus:
        spec["corpus"] = corpus
    if d is not None:
        spec["d"] = d
    if lam is not None:
        spec["lambda"] = lam
    if gamma is not None:
        spec["gamma"] = gamma
    if p is not None:
        spec["p"] = [v.strip() for v in p.split(",")]
    return spec


def _emit(payload: dict, summary_lines: list):
    click.echo(f"# planefol {payload.get('command')} - status: {payload.get('status')} (exit {payload.get('exit_code')})")
    for line in summary_lines:
        click.echo(line)
    click.echo("---")
    click.echo(canonical_json(payload))
    sys.exit(payload.get("exit_code", 3))


def foliation_options(fn):
    fn = click.option("--form", default=None, help="1-form text, e.g. 'x*dy - 2*y*dx + y^2*dy @ z=1' or 'a; b; c'")(fn)
    fn = click.option("--corpus", default=None, help="corpus family name (see `planefol corpus`)")(fn)
    fn = click.option("--d", type=int, default=None, help="family degree")(fn)
    fn = click.option("--lambda", "lam", default=None, help="rational parameter p/q")(fn)
    fn = click.option("--gamma", default=None, help="rational parameter p/q")(fn)
    fn = click.option("--p", default=None, help="comma-separated rational coefficients")(fn)
    return fn


@click.group()
@click.option("--server", default=None, envvar=None, help="remote service URL (default: in-process)")
@click.pass_context
def main(ctx, server):
    """Exact invariants and orbit-closure certificates for plane foliations."""
    ctx.obj = {"server": server}


def _simple_command(name, path):
    @main.command(name=name)
    @foliation_options
    @click.pass_context
    def cmd(ctx, form, corpus, d, lam, gamma, p):
        body = {"foliation": _foliation_body(form, corpus, d, lam, gamma, p)}
        payload = _post(path, body, ctx.obj["server"])
        lines = _summarize(name, payload)
        _emit(payload, lines)

    cmd.__doc__ = f"Run the {name} computation."
    return cmd


def _summarize(name, payload) -> list:
    res = payload.get("result", {})
    lines = []
    if name == "analyze":
        fol = res.get("foliation", {})
        lines.append(f"degree: {fol.get('degree')}")
        loc = res.get("singular_locus", {})
        lines.append(f"singular points: {len(loc.get('points', []))} (complete: {loc.get('complete')})")
        inf = res.get("inflection", {})
        lines.append(f"convex: {inf.get('convex')}")
        lines.append(f"dim Iso: {res.get('isotropy', {}).get('dim_iso')}")
    elif name == "invariants":
        loc = res.get("singular_locus", {})
        lines.append(f"singular points: {len(loc.get('points', []))}, Milnor sum {loc.get('milnor_sum')}")
        lines.append(f"U1 member: {res.get('u1', {}).get('member')}")
    elif name == "inflection":
        lines.append(f"divisor: {res.get('divisor', {}).get('factors')}")
        lines.append(f"convex: {res.get('convex')}  reduced: {res.get('divisor', {}).get('reduced')}")
        lines.append(f"U2 member: {res.get('u2', {}).get('member')}")
    elif name == "convex":
        lines.append(f"convex: {res.get('convex')}")
    elif name == "iso-dim":
        lines.append(f"dim Iso: {res.get('dim_iso')}  dim orbit: {res.get('dim_orbit')}")
    elif name == "sigma2":
        lines.append(f"maximal flex exists: {res.get('member')} ({res.get('certificate')})")
    elif name == "xi":
        lines.append(f"coordinates ({res.get('length')}): {':'.join(res.get('coords', []))}")
    return lines


for _name, _path in (
    ("analyze", "/analyze"),
    ("invariants", "/invariants"),
    ("inflection", "/inflection"),
    ("convex", "/convex"),
    ("iso-dim", "/iso-dim"),
    ("sigma2", "/sigma2"),
    ("xi", "/xi"),
):
    _simple_command(_name, _path)


@main.command()
@foliation_options
@click.option("--target", type=click.Choice(["f1", "f2", "h12"]), required=True)
@click.pass_context
def degenerate(ctx, form, corpus, d, lam, gamma, p, target):
    """Construct (or refute) a degeneration certificate onto a minimal model."""
    body = {"foliation": _foliation_body(form, corpus, d, lam, gamma, p), "target": target}
    payload = _post("/degenerate", body, ctx.obj["server"])
    res = payload.get("result", {})
    lines = [f"target: {target}  outcome: {res.get('status')}"]
    if res.get("status") == "absence":
        lines.append(f"reason: {res.get('reason')} (proof: {res.get('proof')})")
    else:
        lines.append(f"replays exactly: {res.get('replays')}")
    _emit(payload, lines)


@main.command()
@click.option("--poly", type=click.Choice(["p3", "p4", "p5"]), required=True)
@click.option("--lambda", "lam", required=True, help="rational p/q, nonzero")
@click.option("--samples", type=int, default=100, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--mode", type=click.Choice(["sample", "lambda-symbolic", "full-symbolic"]), default="sample")
@click.pass_context
def certify(ctx, poly, lam, samples, seed, mode):
    """Evaluate a closed-orbit certificate on random orbit samples."""
    body = {"poly": poly, "lambda": lam, "samples": samples, "seed": seed, "mode": mode}
    payload = _post("/certify", body, ctx.obj["server"])
    res = payload.get("result", {})
    lines = []
    if mode == "sample":
        lines.append(f"samples: {res.get('samples')}  all zero: {res.get('all_zero')}")
        lines.append(f"value at the non-convex model: {res.get('f2_value')}")
    else:
        lines.append(f"identically zero: {res.get('all_zero', res.get('identically_zero'))}")
    _emit(payload, lines)


@main.command(name="fit-qd")
@click.option("--degree", type=int, required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--train", type=int, default=None)
@click.option("--holdout", type=int, default=200, show_default=True)
@click.pass_context
def fit_qd_cmd(ctx, degree, seed, train, holdout):
    """Fit the cubic closed-orbit certificate ansatz for degree >= 6."""
    body = {"degree": degree, "seed": seed, "train": train, "holdout": holdout}
    payload = _post("/fit-qd", body, ctx.obj["server"])
    res = payload.get("result", {})
    lines = [f"feasible: {res.get('feasible')}  unknowns: {res.get('unknowns')}"]
    if res.get("feasible"):
        lines.append(f"b2_1: {res.get('b21')}  holdout samples: {res.get('holdout')}")
    _emit(payload, lines)


@main.command()
@click.option("--d", type=int, required=True)
@click.option("--lambda", "lam", required=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--samples", type=int, default=40, show_default=True)
@click.pass_context
def closure(ctx, d, lam, seed, samples):
    """Closed-orbit verdict for the x dy - lambda y dx + y^d dy family."""
    body = {"d": d, "lambda": lam, "seed": seed, "samples": samples}
    payload = _post("/closure", body, ctx.obj["server"])
    res = payload.get("result", {})
    _emit(payload, [f"verdict: {res.get('verdict')} ({res.get('reason')})"])


@main.command()
@click.option("--name", required=True)
@click.option("--d", type=int, default=None)
@click.option("--lambda", "lam", default=None)
@click.option("--gamma", default=None)
@click.option("--p", default=None)
@click.pass_context
def corpus(ctx, name, d, lam, gamma, p):
    """Print a bundled benchmark foliation."""
    body = {"name": name}
    if d is not None:
        body["d"] = d
    if lam is not None:
        body["lambda"] = lam
    if gamma is not None:
        body["gamma"] = gamma
    if p is not None:
        body["p"] = [v.strip() for v in p.split(",")]
    payload = _post("/corpus", body, ctx.obj["server"])
    res = payload.get("result", {})
    _emit(payload, [f"form: {res.get('form')}"])


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8700, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    from .service.app import app

    uvicorn.run(app, host=host, port=port)


if __name__ == "__main__":
    main()
