"""Command-line client for the geometry service.

The CLI is a thin HTTP client: by default it mounts the FastAPI app on an
in-process ASGI transport (no server needed), and with ``--server URL`` it
talks to a remote instance instead.  Exit codes are stable contracts:
0 success, 1 invalid input, 2 degenerate geometry, 3 theorem-violation
findings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

import httpx

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_DEGENERATE = 2
EXIT_FINDING = 3


class _InProcessClient:
    """Synchronous facade over the ASGI app; no server process needed."""

    def __init__(self, app):
        self._app = app

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        return False

    def post(self, endpoint: str, json: dict) -> httpx.Response:
        import asyncio

        async def go():
            transport = httpx.ASGITransport(app=self._app)
            async with httpx.AsyncClient(transport=transport,
                                         base_url="http://indicatrix.local",
                                         timeout=None) as client:
                return await client.post(endpoint, json=json)

        return asyncio.run(go())


def _client(server: str | None):
    if server:
        return httpx.Client(base_url=server, timeout=600.0)
    from .service import app

    return _InProcessClient(app)


def _load_input(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise SystemExit2(EXIT_INVALID, f"input file not found: {path}")
    except json.JSONDecodeError as exc:
        raise SystemExit2(EXIT_INVALID, f"input is not valid JSON: {exc}")


class SystemExit2(Exception):
    def __init__(self, code: int, message: str):
        self.code = code
        self.message = message


def _exactify(polygon: dict) -> dict:
    """Rewrite numeric coordinates as exact rational strings.

    JSON numbers are reinterpreted through their shortest decimal repr, so
    0.6 means exactly 3/5; strings pass through to the rational parser.
    """
    verts = []
    for v in polygon.get("vertices", []):
        row = []
        for c in v:
            if isinstance(c, str):
                row.append(c)
            else:
                f = Fraction(repr(float(c)))
                row.append(f"{f.numerator}/{f.denominator}")
        verts.append(row)
    return {**polygon, "vertices": verts}


def _post(client: httpx.Client, endpoint: str, body: dict) -> dict:
    try:
        resp = client.post(endpoint, json=body)
    except httpx.HTTPError as exc:
        raise SystemExit2(EXIT_INVALID, f"request failed: {exc}")
    if resp.status_code == 200:
        return resp.json()
    try:
        problem = resp.json()
    except json.JSONDecodeError:
        raise SystemExit2(EXIT_INVALID, f"HTTP {resp.status_code}: {resp.text[:500]}")
    kind = problem.get("error_kind", "invalid-input")
    message = problem.get("message", resp.text[:500])
    detail = problem.get("detail")
    if detail is not None:  # pydantic validation errors
        raise SystemExit2(EXIT_INVALID, f"invalid request: {detail}")
    code = {"invalid-input": EXIT_INVALID,
            "degenerate-geometry": EXIT_DEGENERATE,
            "theorem-violation": EXIT_FINDING}.get(kind, EXIT_INVALID)
    raise SystemExit2(code, f"{kind}: {message}")


def _to_csv(payload: dict) -> str:
    """Flatten a response: tabular keys become rows, scalars become
    key/value pairs."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    if "steps" in payload:
        writer.writerow(["deleted", "before", "after"])
        for s in payload["steps"]:
            writer.writerow([s["deleted"], s["before"], s["after"]])
        return buf.getvalue()
    if "claims" in payload:
        writer.writerow(["claim", "trials", "passes", "failures"])
        for name, st in payload["claims"].items():
            writer.writerow([name, st["trials"], st["passes"], st["failures"]])
        return buf.getvalue()
    if "weights" in payload:
        writer.writerow(["index", "weight"])
        for i, w in enumerate(payload["weights"], start=1):
            writer.writerow([i, w])
        return buf.getvalue()
    if "vertices" in payload.get("polygon", {}):
        writer.writerow(["x", "y", "z"])
        for v in payload["polygon"]["vertices"]:
            writer.writerow(v)
        return buf.getvalue()
    for key, value in payload.items():
        writer.writerow([key, json.dumps(value) if isinstance(value, (list, dict)) else value])
    return buf.getvalue()


def _emit(payload: dict, output: str | None, as_csv: bool) -> None:
    text = _to_csv(payload) if as_csv else json.dumps(payload, indent=2)
    if output:
        Path(output).write_text(text + ("" if text.endswith("\n") else "\n"))
    else:
        print(text)


def _say(message: str | None, output: str | None) -> None:
    """Human-readable summary: stdout when the payload went to a file,
    stderr when the payload occupies stdout."""
    if message:
        print(message, file=sys.stdout if output else sys.stderr)


def _summarize(command: str, payload: dict) -> str:
    if command == "check":
        bits = [f"n={payload.get('n')}"]
        for key in ("planar", "simple", "balanced", "generic", "inflections",
                    "sign_changes", "flattenings", "indicatrix_simple"):
            if payload.get(key) is not None:
                bits.append(f"{key}={payload[key]}")
        return "check: " + " ".join(bits)
    if command == "reduce":
        return (f"reduce: {len(payload['steps'])} deletions, "
                f"terminal epsilon {''.join(payload['terminal_epsilon'])}")
    if command == "certify":
        status = "all claims passed" if payload["ok"] else \
            f"{len(payload['findings'])} finding(s)"
        return f"certify: {status}"
    if command == "lift":
        return (f"lift: closure residual {payload['closure_residual']:.3e}, "
                f"{len(payload['weights'])} weights")
    if command == "area":
        return f"area: ({payload['area1']:.9f}, {payload['area2']:.9f}) sr"
    if command == "tennis-ball":
        return (f"tennis-ball: equal_area={payload['equal_area']} "
                f"inflections={payload['inflections']} holds={payload['theorem_holds']}")
    if command == "mobius":
        return (f"mobius: inflections={payload['inflections']} "
                f"holds={payload['theorem_holds']}")
    if command == "inflections":
        return f"inflections: {payload['count']} at edges {payload['pairs']}"
    if command == "flattenings":
        return f"flattenings: {payload['count']} at triples {payload['triples']}"
    return None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="indicatrix",
        description="Polygon indicatrix toolkit: inflection counting, lifting, "
                    "reduction traces, and randomized theorem certification.",
    )
    parser.add_argument("--server", help="URL of a running service (default: in-process)")
    sub = parser.add_subparsers(dest="command", required=True)

    def polygon_command(name, help_text, extra=None):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", help="polygon JSON file")
        p.add_argument("-o", "--output", help="write the JSON/CSV report here")
        p.add_argument("--csv", action="store_true", help="emit CSV instead of JSON")
        p.add_argument("--exact", action="store_true",
                       help="reinterpret coordinates as exact rationals")
        p.add_argument("--degeneracy-tol", type=float, default=None)
        p.add_argument("--plot-data", metavar="PATH",
                       help="also write per-edge polyline samples for plotting")
        if extra:
            extra(p)
        return p

    polygon_command("indicatrix", "tangent indicatrix of a space polygon")
    polygon_command("flattenings", "flattening triples of a space polygon")
    polygon_command("inflections", "inflection edges of a spherical polygon")
    polygon_command("check", "simplicity/balance/inflection report")

    def lift_extra(p):
        p.add_argument("--base", default=None,
                       help="base vertex as 'x,y,z' (default origin)")
        p.add_argument("--closure-tol", type=float, default=None)

    polygon_command("lift", "rescale and integrate into a space polygon", lift_extra)
    polygon_command("reduce", "deletion trace down to a quadruple")

    def area_extra(p):
        p.add_argument("--planar-tol", type=float, default=None)

    polygon_command("area", "areas of the two regions", area_extra)

    def tb_extra(p):
        p.add_argument("--planar-tol", type=float, default=None)
        p.add_argument("--equal-area-tol", type=float, default=None)

    polygon_command("tennis-ball", "equal-area inflection bound report", tb_extra)
    polygon_command("mobius", "centrally symmetric inflection bound report", area_extra)

    def perturb_extra(p):
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--magnitude", type=float, default=1e-6)
        p.add_argument("--max-retries", type=int, default=64)

    polygon_command("perturb", "nudge vertices into general position", perturb_extra)

    cert = sub.add_parser("certify", help="run the randomized claim suite")
    cert.add_argument("-o", "--output", help="write the JSON/CSV report here")
    cert.add_argument("--csv", action="store_true")
    cert.add_argument("--seed", type=int, default=0)
    cert.add_argument("--trials", type=int, default=100)
    cert.add_argument("--n-min", type=int, default=4)
    cert.add_argument("--n-max", type=int, default=12)
    cert.add_argument("--attempts", type=int, default=5000)
    cert.add_argument("--claims", default=None,
                      help="comma-separated subset of claim ids")
    cert.add_argument("--findings-dir", default="findings",
                      help="directory for violation files (default: findings)")

    serve = sub.add_parser("serve", help="run the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)

    return parser


def _run(args) -> int:
    if args.command == "serve":
        import uvicorn

        uvicorn.run("indicatrix.service:app", host=args.host, port=args.port)
        return EXIT_OK

    with _client(args.server) as client:
        if args.command == "certify":
            body = {
                "seed": args.seed,
                "trials": args.trials,
                "n_min": args.n_min,
                "n_max": args.n_max,
                "attempts": args.attempts,
            }
            if args.claims:
                body["claims"] = [c.strip() for c in args.claims.split(",")]
            payload = _post(client, "/certify", body)
            _emit(payload, args.output, args.csv)
            _say(_summarize("certify", payload), args.output)
            if not payload["ok"]:
                from .harness import CertifyReport, Finding, write_findings

                report = CertifyReport(
                    claims={}, findings=[Finding(**f) for f in payload["findings"]]
                )
                written = write_findings(report, args.findings_dir)
                _say(f"wrote {len(written)} finding file(s) under {args.findings_dir}/",
                     args.output)
                return EXIT_FINDING
            return EXIT_OK

        data = _load_input(args.input)
        polygon = _exactify(data) if args.exact else data
        body: dict = {"polygon": polygon}
        if getattr(args, "degeneracy_tol", None) is not None:
            body["degeneracy_tol"] = args.degeneracy_tol

        endpoint = "/" + args.command
        if args.command == "lift":
            if args.base:
                body["base"] = [c.strip() for c in args.base.split(",")]
            if args.closure_tol is not None:
                body["closure_tol"] = args.closure_tol
        elif args.command in ("area", "mobius"):
            if args.planar_tol is not None:
                body["planar_tol"] = args.planar_tol
        elif args.command == "tennis-ball":
            if args.planar_tol is not None:
                body["planar_tol"] = args.planar_tol
            if args.equal_area_tol is not None:
                body["equal_area_tol"] = args.equal_area_tol
        elif args.command == "perturb":
            body.update(seed=args.seed, magnitude=args.magnitude,
                        max_retries=args.max_retries)

        payload = _post(client, endpoint, body)
        _emit(payload, args.output, args.csv)
        _say(_summarize(args.command, payload), args.output)

        if getattr(args, "plot_data", None):
            target = polygon
            if args.command in ("indicatrix", "lift", "perturb"):
                target = payload["polygon"]
            plot = _post(client, "/plot-data", {"polygon": target})
            Path(args.plot_data).write_text(json.dumps(plot["polylines"]))
            _say(f"wrote plot polylines to {args.plot_data}", args.output)
    return EXIT_OK


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except SystemExit2 as exc:
        print(f"error: {exc.message}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
