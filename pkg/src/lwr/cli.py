"""``lwr``: validate, build, embed and certify Lie algebra extensions from JSON presentations.

Exit status: 0 when everything passes, 1 on a validation or certificate
failure, 2 on a usage or schema error.  A machine-readable report is
produced for exit statuses 0 and 1.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path
from typing import List, Optional

from . import io
from .catalog import CATALOG, catalog
from .embedding import build_tables, check_tables, verify_all
from .extension import build_extension, validate_extension_data
from .scalars import CharacteristicTwo, FieldSpec

DEFAULT_DEGREE = 3


class UsageError(Exception):
    pass


def _read(path: str):
    p = Path(path)
    try:
        raw = p.read_bytes()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    return io.parse_presentation(p), io.digest(raw)


def _write(path: Optional[str], text: str) -> None:
    if path:
        Path(path).write_text(text)


def _base_report(command: str, digest: str | None, degree: int | None) -> dict:
    return {"command": command, "input_digest": digest, "degree": degree}


def cmd_validate(args) -> tuple[int, dict]:
    data, digest = _read(args.file)
    report = validate_extension_data(data)
    out = _base_report("validate", digest, None)
    out["validation"] = io.validation_to_json(report, data)
    return (0 if report.ok else 1), out


def cmd_build(args) -> tuple[int, dict]:
    data, digest = _read(args.file)
    report = validate_extension_data(data)
    out = _base_report("build", digest, None)
    out["validation"] = io.validation_to_json(report, data)
    if not report.ok:
        return 1, out
    ext = build_extension(data)
    out["extension"] = io.extension_to_json(ext)
    _write(args.out, io.dumps(out["extension"]))
    return 0, out


def cmd_embed(args) -> tuple[int, dict]:
    data, digest = _read(args.file)
    report = validate_extension_data(data)
    out = _base_report("embed", digest, args.degree)
    out["validation"] = io.validation_to_json(report, data)
    if not report.ok:
        return 1, out
    tables = build_tables(data, args.degree, check=False)
    dump = io.tables_to_json(tables)
    out["tables"] = {"fo_entries": len(dump["fo"]), "fx_entries": len(dump["fx"]), "path": args.out}
    if args.out:
        _write(args.out, io.dumps(dump))
    else:
        out["tables"]["data"] = dump
    return 0, out


def cmd_verify(args) -> tuple[int, dict]:
    data, digest = _read(args.file)
    t0 = time.perf_counter()
    report = validate_extension_data(data)
    out = _base_report("verify", digest, args.degree)
    out["validation"] = io.validation_to_json(report, data)
    if not report.ok:
        out["timing_s"] = round(time.perf_counter() - t0, 4)
        return 1, out
    tables = build_tables(data, args.degree, check=False)
    table_check = check_tables(tables)
    out["table_check"] = io.validation_to_json(table_check, data)
    certs = verify_all(tables, trials=args.trials, seed=args.seed)
    summary = {}
    listing = []
    failures = []
    for rel, cs in certs.items():
        n_fail = sum(not c.passed for c in cs)
        summary[rel] = {"pass": len(cs) - n_fail, "fail": n_fail}
        for c in cs:
            entry = io.certificate_to_json(c, data)
            listing.append(entry)
            if not c.passed:
                failures.append(entry)
    summary["total"] = {"pass": sum(s["pass"] for s in summary.values()),
                        "fail": sum(s["fail"] for s in summary.values())}
    out["summary"] = summary
    out["failures"] = failures
    out["certificates"] = listing
    out["timing_s"] = round(time.perf_counter() - t0, 4)
    _write(args.out, io.dumps(out))
    ok = not failures and table_check.ok
    return (0 if ok else 1), out


def cmd_catalog(args) -> tuple[int, dict]:
    field = FieldSpec("prime", args.prime) if args.prime else FieldSpec("rational")
    try:
        data = catalog(args.name, field)
    except KeyError as exc:
        raise UsageError(exc.args[0])
    text = io.dump_presentation(data)
    out = _base_report("catalog", io.digest(text), None)
    out["name"] = args.name
    if args.out:
        _write(args.out, text)
        out["path"] = args.out
    else:
        out["presentation"] = json.loads(text)
    return 0, out


def _human(code: int, report: dict) -> str:
    lines = [f"{report['command']}: {'ok' if code == 0 else 'FAILED'}"]
    val = report.get("validation")
    if val is not None:
        lines.append(f"  validation: {val['checked']} checks, {len(val['violations'])} violations")
        for v in val["violations"]:
            lines.append(f"    condition ({v['condition']}) at ({', '.join(map(str, v['instance']))}): "
                         f"residual {v['residual']}")
    tc = report.get("table_check")
    if tc is not None and not tc["ok"]:
        lines.append(f"  table check: {len(tc['violations'])} entries disagree with their recursion")
    for rel, s in report.get("summary", {}).items():
        lines.append(f"  {rel}: {s['pass']} pass, {s['fail']} fail")
    for f in report.get("failures", [])[:20]:
        lines.append(f"    {f['relation']} {f['instance']} at {f['monomial']}: {f.get('residual')}")
    if "tables" in report:
        lines.append(f"  tables: {report['tables']['fo_entries']} fo, {report['tables']['fx_entries']} fx entries")
    if "path" in report:
        lines.append(f"  wrote {report['path']}")
    if "presentation" in report:
        lines.append(json.dumps(report["presentation"], indent=2, sort_keys=True))
    return "\n".join(lines)


def make_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lwr", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, degree=False):
        p.add_argument("file", help="presentation JSON file")
        p.add_argument("--out", help="write the command's artifact here")
        p.add_argument("--json", action="store_true", help="print the report as JSON")
        if degree:
            p.add_argument("--degree", type=int, default=DEFAULT_DEGREE, help="truncation degree D (default 3)")

    common(sub.add_parser("validate", help="check Jacobi, the derivation law and conditions (b), (c)"))
    common(sub.add_parser("build", help="emit the structure constants of the extension N"))
    common(sub.add_parser("embed", help="compute the embedding tables up to --degree"), degree=True)
    p = sub.add_parser("verify", help="run the full certificate suite")
    common(p, degree=True)
    p.add_argument("--seed", type=int, default=0, help="seed for the randomized injectivity trials")
    p.add_argument("--trials", type=int, default=100)
    p = sub.add_parser("catalog", help="write a named fixture as a presentation file")
    p.add_argument("name", choices=sorted(CATALOG))
    p.add_argument("--out")
    p.add_argument("--json", action="store_true")
    p.add_argument("--prime", type=int, help="build the fixture over F_p instead of Q")
    return parser


COMMANDS = {"validate": cmd_validate, "build": cmd_build, "embed": cmd_embed,
            "verify": cmd_verify, "catalog": cmd_catalog}


def run_command(argv: List[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if getattr(args, "degree", 1) < 1:
        print("lwr: --degree must be at least 1", file=stderr)
        return 2
    try:
        code, report = COMMANDS[args.command](args)
    except (io.PresentationError, CharacteristicTwo, UsageError, ValueError) as exc:
        print(f"lwr: error: {exc}", file=stderr)
        return 2
    if args.json:
        stdout.write(io.dumps(report))
    else:
        print(_human(code, report), file=stdout)
    return code


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
