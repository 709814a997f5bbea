"""Command-line front end: ``hypspin {decide,lift,verify,selftest,demo}``."""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field as dc_field
from pathlib import Path
from typing import Optional, Sequence

from .certificates import IN_IMAGE, OBSTRUCTION, RANK2_FORWARD_ONLY, SpinLiftCertificate
from .errors import HypSpinError, ParseError, RankBoundExceeded
from .field_core import QQ, Field, parse_field
from .image_decision import levi_decide, split_line_decide, verify_certificate
from .levi_lifts import assemble_lift, transvection_lift
from .selftest import run_selftest

COMMANDS = ("decide", "lift", "verify", "selftest", "demo")
DEFAULT_RANK_BOUND = 6
DEFAULT_SELFTEST_RANK = 3

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_ERROR = 2
VERDICT_EXIT = {IN_IMAGE: 0, OBSTRUCTION: 3, RANK2_FORWARD_ONLY: 4}


@dataclass
class JobSpec:
    command: str
    field: Field = QQ
    rank: int = 0
    matrix: Optional[list] = None
    params: dict = dc_field(default_factory=dict)
    seed: int = 0
    rank_max: Optional[int] = None
    pretty: bool = False


def parse_matrix(field: Field, raw) -> list:
    if isinstance(raw, str):
        try:
            raw = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ParseError(f"matrix is not valid JSON: {exc.msg}", exc.pos) from None
    if not isinstance(raw, list) or not raw or not all(isinstance(row, list) for row in raw):
        raise ParseError("matrix must be a non-empty list of rows", "matrix")
    n = len(raw)
    out = []
    for r, row in enumerate(raw):
        if len(row) != n:
            raise ParseError(f"row {r} has {len(row)} entries, expected {n}", f"row {r}")
        parsed = []
        for c, x in enumerate(row):
            try:
                parsed.append(field.parse(str(x)))
            except ParseError as exc:
                raise ParseError(str(exc), f"row {r}, column {c}") from None
        out.append(parsed)
    return out


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hypspin", description="Spin lifts and square-class decisions for split Levi elements.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--field", default=None, help="Q or GF:p (default Q)")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--rank-max", type=int, default=None)
        p.add_argument("--job", type=Path, default=None, help="JSON job file; flags override its keys")
        fmt = p.add_mutually_exclusive_group()
        fmt.add_argument("--json", dest="pretty", action="store_false", default=None, help="compact JSON (default)")
        fmt.add_argument("--pretty", dest="pretty", action="store_true", help="indented JSON")

    for name in ("decide", "lift"):
        p = sub.add_parser(name)
        common(p)
        p.add_argument("--matrix", default=None, help="JSON list of rows of scalar strings")
        p.add_argument("--via", choices=("transvection", "pair"), default=None)
    p = sub.add_parser("verify")
    common(p)
    p.add_argument("certificate", nargs="?", default="-", help="certificate file, or - for stdin")
    for name in ("selftest", "demo"):
        common(sub.add_parser(name))
    return parser


def parse_job(argv: Sequence[str], job_file: Optional[Path] = None) -> JobSpec:
    args = build_parser().parse_args(list(argv))
    data: dict = {}
    path = job_file or args.job
    if path is not None:
        try:
            data = json.loads(Path(path).read_text())
        except json.JSONDecodeError as exc:
            raise ParseError(f"job file is not valid JSON: {exc.msg}", exc.pos) from None
    field = parse_field(args.field or data.get("field", "Q"))
    job = JobSpec(
        command=args.command,
        field=field,
        seed=args.seed if args.seed is not None else int(data.get("seed", 0)),
        rank_max=args.rank_max if args.rank_max is not None else data.get("rank_max"),
        pretty=bool(args.pretty if args.pretty is not None else data.get("pretty", False)),
        params=dict(data.get("params", {})),
    )
    if getattr(args, "via", None):
        job.params["via"] = args.via
    if args.command == "verify":
        job.params["certificate"] = args.certificate
    if args.command in ("decide", "lift"):
        raw = args.matrix if args.matrix is not None else data.get("matrix")
        if raw is None:
            raise ParseError(f"{args.command} needs --matrix", "matrix")
        job.matrix = parse_matrix(field, raw)
        job.rank = len(job.matrix)
        bound = job.rank_max if job.rank_max is not None else DEFAULT_RANK_BOUND
        if job.rank > bound:
            raise RankBoundExceeded(f"rank {job.rank} exceeds the bound {bound}")
    return job


def _dump(obj, pretty: bool) -> str:
    return json.dumps(obj, sort_keys=True, indent=2 if pretty else None, ensure_ascii=False)


def _demo() -> dict:
    cert_line = split_line_decide(QQ, QQ(1) / 2)
    cert_levi = levi_decide(QQ, [[2, 0, 0], [0, 1, 0], [0, 0, 1]])
    shear = transvection_lift(QQ, (0, 1), (1, 0))
    return {
        "nonsquare_obstruction": {
            "split_line_scaling_(2x, y/2)": cert_line.to_json(),
            "levi_diag(2,1,1)": cert_levi.to_json(),
        },
        "rank2_shear": {
            "delta": "e^2",
            "w": "e_1",
            "orthogonal_map": shear.ortho.to_json(),
            "clifford_lift": shear.element.to_json(),
            "rule": "(d1, d2, u1, u2) -> (d1, d2 + d1, u1 - u2, u2)",
        },
    }


def run_job(job: JobSpec) -> tuple[int, str]:
    if job.command in ("decide", "lift"):
        via = job.params.get("via", "transvection")
        if job.command == "decide" or job.rank == 1:
            cert = levi_decide(job.field, job.matrix, via=via)
        else:
            cert = assemble_lift(job.field, job.matrix, via=via)
        return VERDICT_EXIT[cert.verdict], _dump(cert.to_json(), job.pretty)
    if job.command == "verify":
        src = job.params["certificate"]
        text = sys.stdin.read() if src == "-" else Path(src).read_text()
        try:
            cert = SpinLiftCertificate.from_json(json.loads(text))
        except (KeyError, TypeError, json.JSONDecodeError) as exc:
            raise ParseError(f"malformed certificate: {exc}", "certificate") from None
        ok, problems = verify_certificate(cert)
        report = {"valid": ok, "verdict": cert.verdict, "problems": problems}
        return (EXIT_OK if ok else EXIT_INVALID), _dump(report, job.pretty)
    if job.command == "selftest":
        rank_max = job.rank_max if job.rank_max is not None else DEFAULT_SELFTEST_RANK
        results = run_selftest(rank_max, job.seed)
        ok = all(r.passed for r in results)
        report = {
            "passed": ok,
            "seed": job.seed,
            "rank_max": rank_max,
            "results": [r.to_json() for r in results],
        }
        return (EXIT_OK if ok else EXIT_INVALID), _dump(report, job.pretty)
    if job.command == "demo":
        return EXIT_OK, _dump(_demo(), job.pretty)
    raise ParseError(f"unknown command {job.command!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        job = parse_job(argv)
        code, out = run_job(job)
    except HypSpinError as exc:
        print(json.dumps(exc.to_dict(), sort_keys=True), file=sys.stderr)
        return EXIT_ERROR
    except OSError as exc:
        print(json.dumps({"error": "io_error", "message": str(exc)}, sort_keys=True), file=sys.stderr)
        return EXIT_ERROR
    print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
