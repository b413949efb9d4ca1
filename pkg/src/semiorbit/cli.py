"""Command-line front end: ``semiorbit <command> <input> [options]``.

Inputs are catalog fixture names (``se3``, ``galilei``, ``bargmann``) or
paths to ``.lie`` files.  Exit status is 0 when no verdict fails, 1 when
some verdict fails and 2 on input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__, catalog, specdsl
from .checks import Session, Settings, load_problem, overall, sort_checks
from .report import SCHEMA_ID, Check, Verdict

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def _tol(text: str) -> float:
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError("tolerance must be positive")
    return value


def _samples(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("sample count must be non-negative")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--seed", type=_seed, default=0, help="seed for sampled checks (default 0)")
    common.add_argument("--tol", type=_tol, default=1e-9, help="residual tolerance (default 1e-9)")
    common.add_argument("--samples", type=_samples, default=100, help="samples per sampled check; 0 disables them")

    parser = argparse.ArgumentParser(
        prog="semiorbit",
        description="Coadjoint orbits, polarizations and symplectic induction for semidirect products.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")
    source = "fixture name (se3, galilei, bargmann) or .lie file"

    p = sub.add_parser("analyze", parents=[common], help="orbit geometry at a point")
    p.add_argument("input", help=source)
    p.add_argument("--point", required=True)

    p = sub.add_parser("check-polarization", parents=[common], help="polarization axioms and reduction to k_p")
    p.add_argument("input", help=source)
    p.add_argument("--pol", required=True)

    p = sub.add_parser("check-pukanszky", parents=[common], help="Pukanszky's condition and the bundle dimensions")
    p.add_argument("input", help=source)
    p.add_argument("--pol", required=True)

    p = sub.add_parser("induce", parents=[common], help="symplectic induction and the canonical connection")
    p.add_argument("input", help=source)
    p.add_argument("--point", required=True)

    p = sub.add_parser("examples", parents=[common], help="reproduce the expected values of a fixture")
    p.add_argument("name", choices=catalog.FIXTURE_NAMES)
    p.add_argument("--all", action="store_true", help="also run every check on every point and polarization")

    p = sub.add_parser("validate", parents=[common], help="parse and elaborate a .lie file")
    p.add_argument("file")
    return parser


def _checks(args, settings: Settings) -> tuple[str, str, list[Check]]:
    if args.command == "validate":
        path = Path(args.file)
        try:
            text = path.read_bytes().decode("utf-8")
        except (OSError, UnicodeDecodeError) as exc:
            raise InputError(f"{args.file}: {exc}") from exc
        el = specdsl.load(text, str(path))
        values = {
            "algebras": sorted(el.algebras),
            "representations": sorted(el.reps),
            "products": sorted(el.products),
            "points": sorted(el.points),
            "polarizations": sorted(el.polarizations),
        }
        problem = load_problem(str(path))
        return path.name, problem.digest, [Check("validate", Verdict.HOLDS, values)]
    spec = args.name if args.command == "examples" else args.input
    try:
        problem = load_problem(spec)
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(f"{spec}: {exc}") from exc
    session = Session(problem, settings)
    if args.command == "analyze":
        checks = session.analyze(args.point)
    elif args.command == "check-polarization":
        checks = session.check_polarization(args.pol)
    elif args.command == "check-pukanszky":
        checks = session.check_pukanszky(args.pol)
    elif args.command == "induce":
        checks = session.induce(args.point)
    else:
        checks = session.everything() if args.all else session.expected()
    return problem.name, problem.digest, checks


def build_report(command: str, name: str, digest: str, settings: Settings, checks: list[Check]) -> dict:
    checks = sort_checks(checks)
    return {
        "schema": SCHEMA_ID,
        "tool_version": __version__,
        "command": command,
        "input": {"name": name, "digest": f"sha256:{digest}"},
        "seed": settings.seed,
        "tolerance": settings.tol,
        "samples": settings.samples,
        "verdict": overall(checks).value,
        "checks": [c.as_dict() for c in checks],
    }


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, ensure_ascii=True, allow_nan=False) + "\n"


def _short(value) -> str:
    if isinstance(value, list):
        return "(" + ", ".join(_short(v) for v in value) + ")"
    return str(value).lower() if isinstance(value, bool) else str(value)


def render_text(report: dict) -> str:
    lines = [f"{report['command']} {report['input']['name']}: {report['verdict']}"]
    width = max((len(c["name"]) for c in report["checks"]), default=0)
    for c in report["checks"]:
        extra = []
        res = {k: v for k, v in c["residuals"].items() if v is not None}
        if res:
            extra.append(" ".join(f"{k}={v:.1e}" for k, v in res.items()))
        if c["name"].startswith("expected."):
            extra.append(f"expected={_short(c['values']['expected'])} computed={_short(c['values']['computed'])}")
        elif "orbit_dim" in c["values"]:
            extra.append(f"orbit_dim={c['values']['orbit_dim']}")
        flags = [f for f in c["caveats"] if f != "connectedness"]
        if flags:
            extra.append("[" + ", ".join(flags) + "]")
        lines.append(f"  {c['verdict']:<14} {c['name']:<{width}}  {'  '.join(extra)}".rstrip())
    return "\n".join(lines) + "\n"


def run(argv: list[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    settings = Settings(args.seed, args.tol, args.samples)
    try:
        name, digest, checks = _checks(args, settings)
    except specdsl.SpecError as exc:
        print(str(exc), file=stderr)
        return EXIT_INPUT
    except (InputError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        print(f"semiorbit: error: {msg}", file=stderr)
        return EXIT_INPUT
    report = build_report(args.command, name, digest, settings, checks)
    stdout.write(render_json(report) if args.json else render_text(report))
    return EXIT_FAIL if report["verdict"] == Verdict.FAILS.value else EXIT_OK


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
