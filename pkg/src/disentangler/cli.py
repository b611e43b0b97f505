"""Command-line client for the disentangler service.

By default commands run against an in-process instance of the HTTP service;
pass --url to talk to a remote one instead.  Exit codes: 0 success,
1 internal inconsistency or failed verification, 2 usage/domain error.
"""

from __future__ import annotations

import csv
import json
import os
import sys
from pathlib import Path

import click
import httpx

OUT_DIR_ENV = "DISENTANGLER_OUT_DIR"


def _client(url: str | None) -> httpx.Client:
    if url:
        return httpx.Client(base_url=url, timeout=600.0)
    # No URL: serve requests in-process through the ASGI app.
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from .service import app

    return TestClient(app, raise_server_exceptions=False)


def _post(url: str | None, path: str, payload: dict) -> dict:
    with _client(url) as client:
        resp = client.post(path, json=payload)
    if resp.status_code == 422:
        detail = resp.json().get("detail", resp.text)
        click.echo(f"error: {detail}", err=True)
        sys.exit(2)
    resp.raise_for_status()
    return resp.json()


def _default_out(filename: str) -> Path:
    return Path(os.environ.get(OUT_DIR_ENV, ".")) / filename


def _fmt(value) -> str:
    if value is None:
        return "nan"
    if isinstance(value, float):
        return format(value, ".12g")
    return str(value)


def _write_csv(path: Path, header: list[str], rows: list[dict]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(row[col]) for col in header])


@click.group()
@click.option("--url", default=None, help="Base URL of a running service; default runs in-process.")
@click.pass_context
def main(ctx, url):
    """Disentangling-machine checks, frontier scans and verification suites."""
    ctx.ensure_object(dict)
    ctx.obj["url"] = url


@main.command()
@click.option("--alpha", type=click.FloatRange(0.0, 1.0), required=True, help="Schmidt coefficient of |00>.")
@click.option("--eta-y", type=float, required=True, help="Reduction factor of the machine on qubit y.")
@click.option("--lambda-y", type=click.FloatRange(-1.0, 1.0), default=0.0, show_default=True)
@click.option("--eta-x", type=float, default=None, help="Attach a machine on qubit x too.")
@click.option("--lambda-x", type=click.FloatRange(-1.0, 1.0), default=0.0, show_default=True)
@click.option("--tol", type=float, default=1e-8, show_default=True)
@click.pass_context
def check(ctx, alpha, eta_y, lambda_y, eta_x, lambda_x, tol):
    """Closed-form output, condition values, PPT verdict and shrink factors."""
    payload = {
        "alpha": alpha,
        "eta_y": eta_y,
        "lambda_y": lambda_y,
        "eta_x": eta_x,
        "lambda_x": lambda_x,
        "tol": tol,
    }
    result = _post(ctx.obj["url"], "/check", payload)
    click.echo(json.dumps(result, indent=2))
    if not result["consistent"]:
        sys.exit(1)


@main.command()
@click.option("--grid-n", type=click.IntRange(min=2), default=2001, show_default=True, help="s-grid size.")
@click.option("--refine-depth", type=click.IntRange(min=0), default=40, show_default=True)
@click.option("--lambda-sq", "lambda_sq", type=click.FloatRange(0.0, 1.0), multiple=True, help="lambda^2 values; default 0..1 step 0.05.")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help=f"CSV path; default figure1.csv under ${OUT_DIR_ENV} or cwd.")
@click.pass_context
def figure1(ctx, grid_n, refine_depth, lambda_sq, out):
    """Scan the symmetric-machine optimum against lambda^2 to CSV."""
    payload = {
        "lambda_sq_values": list(lambda_sq) or None,
        "grid_n": grid_n,
        "refine_depth": refine_depth,
    }
    result = _post(ctx.obj["url"], "/figure1", payload)
    out = out or _default_out("figure1.csv")
    _write_csv(out, ["lambda_sq", "eta_max", "binding_s", "grid_n", "tol"], result["rows"])
    click.echo(f"wrote {len(result['rows'])} rows to {out}")


@main.command()
@click.option("--grid-n", type=click.IntRange(min=2), default=2001, show_default=True)
@click.option("--refine-depth", type=click.IntRange(min=0), default=40, show_default=True)
@click.option("--eta-x", "eta_x", type=float, multiple=True, help="eta_x grid; default 0.4..1.0 step 0.1.")
@click.option("--pair", "pairs", multiple=True, help="lambda pair as 'lx,ly'; repeatable. Default: the four reference pairs.")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=None, help=f"CSV path; default figure2.csv under ${OUT_DIR_ENV} or cwd.")
@click.pass_context
def figure2(ctx, grid_n, refine_depth, eta_x, pairs, out):
    """Scan the asymmetric frontier eta_y_max(eta_x) per lambda pair to CSV."""
    parsed = None
    if pairs:
        parsed = []
        for raw in pairs:
            try:
                lx, ly = (float(part) for part in raw.split(","))
            except ValueError:
                raise click.UsageError(f"--pair must look like '0.2,-0.2', got {raw!r}")
            parsed.append([lx, ly])
    payload = {
        "eta_x_values": list(eta_x) or None,
        "pairs": parsed,
        "grid_n": grid_n,
        "refine_depth": refine_depth,
    }
    result = _post(ctx.obj["url"], "/figure2", payload)
    out = out or _default_out("figure2.csv")
    _write_csv(out, ["lambda_x", "lambda_y", "eta_x", "eta_y_max", "binding_s"], result["rows"])
    click.echo(f"wrote {len(result['rows'])} rows to {out}")


@main.command()
@click.option("--suite", type=click.Choice(["quick", "full"]), default="quick", show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.pass_context
def verify(ctx, suite, seed):
    """Run the property suites; nonzero exit on any failure."""
    result = _post(ctx.obj["url"], "/verify", {"suite": suite, "seed": seed})
    for r in result["results"]:
        status = "PASS" if r["passed"] else "FAIL"
        extras = {k: v for k, v in r.items() if k not in ("name", "passed")}
        click.echo(f"[{status}] {r['name']}: {json.dumps(extras, default=str)}")
    click.echo(f"suite={result['suite']} seed={result['seed']} overall={'PASS' if result['passed'] else 'FAIL'}")
    if not result["passed"]:
        sys.exit(1)


if __name__ == "__main__":
    main()
