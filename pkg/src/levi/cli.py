"""Command-line front end.

Exit codes: 0 ok, 1 validation failure, 2 oracle discrepancy, 3 error
(including usage errors).
"""

from __future__ import annotations

import argparse
import enum
import json
import sys
from dataclasses import dataclass, field
from pathlib import Path

from .classify import InternalCaseExhaustion, NotASolution, classify
from .families import Family, classification_from_json, classification_to_json
from .funcspace import DEFAULT_BUDGET, enumerate_multiplicative
from .monoid import FiniteMonoid, MonoidError, _check_shape, build_catalog, first_violation, is_abelian
from .oracle import OracleReport, compare
from .problem import ProblemSpec, SolutionTuple, residual
from .scalar import Field, FieldError
from .sweep import sweep_by_family

COMPLETE_LINE = "COMPLETE: all oracle solutions covered by Theorem families"


class Status(enum.IntEnum):
    OK = 0
    VALIDATION_FAILURE = 1
    DISCREPANCY = 2
    ERROR = 3


@dataclass
class CommandResult:
    status: Status
    payload: dict = field(default_factory=dict)
    diagnostics: list[str] = field(default_factory=list)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _read_json(path: str):
    return json.loads(Path(path).read_text())


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def emit_report(report: OracleReport, fmt: str = "json", *, include_timing: bool = False) -> bytes:
    """Deterministic serialisation of an oracle report."""
    data = report.to_json(include_timing=include_timing)
    if fmt == "json":
        return (_dumps(data) + "\n").encode()
    lines = [
        f"spec digest:  {data['spec_digest']}",
        f"oracle count: {data['oracle_count']}",
        f"family count: {data['family_count']}",
    ]
    for fam, cnt in data["per_family"].items():
        lines.append(f"  {fam:<20} {cnt}")
    lines.append(f"missing: {len(data['missing'])}")
    for t in data["missing"]:
        lines.append(f"  {json.dumps(t, sort_keys=True)}")
    lines.append(f"extra: {len(data['extra'])}")
    for t in data["extra"]:
        lines.append(f"  {json.dumps(t, sort_keys=True)}")
    for msg in data["unclassified"]:
        lines.append(f"unclassified: {msg}")
    if include_timing:
        lines.append(f"wall time: {data['wall_time']} s")
    if report.clean:
        lines.append(COMPLETE_LINE)
    else:
        lines.append("DISCREPANCY: oracle and families disagree")
    return ("\n".join(lines) + "\n").encode()


# commands ---------------------------------------------------------------------


def _monoid_validate(args) -> CommandResult:
    obj = _read_json(args.file)
    try:
        size, identity, table = obj["size"], obj["identity"], obj["table"]
        rows = _check_shape(size, identity, table)
        err = first_violation(size, identity, rows)
    except MonoidError as exc:
        err = exc
    if err is None:
        return CommandResult(Status.OK, {"valid": True, "size": size}, ["valid monoid"])
    payload = {"valid": False, "violation": str(err)}
    if hasattr(err, "witness"):
        payload["witness"] = list(err.witness)
    return CommandResult(Status.VALIDATION_FAILURE, payload, [f"invalid: {err}"])


def _parse_catalog(text: str) -> FiniteMonoid:
    name, _, arg = text.partition(":")
    return build_catalog(name, int(arg)) if arg else build_catalog(name)


def _monoid_build(args) -> CommandResult:
    if args.name == "direct_product":
        if len(args.factor or []) != 2:
            raise UsageError("direct_product needs exactly two --factor NAME[:ARG] options")
        M = build_catalog("direct_product", *(_parse_catalog(f) for f in args.factor))
    elif args.name == "meet_semilattice":
        M = build_catalog("meet_semilattice", args.k)
    elif args.name == "cyclic":
        M = build_catalog("cyclic", args.n)
    else:
        M = build_catalog(args.name)
    payload = M.to_json()
    return CommandResult(
        Status.OK, payload, [f"{M.name}: size {M.size}, identity {M.identity}, abelian {is_abelian(M)}"]
    )


def _muls_enumerate(args) -> CommandResult:
    M = FiniteMonoid.from_json(_read_json(args.file))
    F = Field.parse(args.field)
    funcs = enumerate_multiplicative(M, F, args.budget)
    payload = {"field": F.to_json(), "count": len(funcs), "functions": [fn.to_json() for fn in funcs]}
    diag = [f"{len(funcs)} nonzero multiplicative functions over {F}"]
    diag += ["  " + " ".join(str(v) for v in fn.to_json()["values"]) for fn in funcs]
    return CommandResult(Status.OK, payload, diag)


def _load_spec(path: str) -> ProblemSpec:
    return ProblemSpec.from_json(_read_json(path))


def _spec_check(args) -> CommandResult:
    try:
        spec = _load_spec(args.spec)
    except (ValueError, KeyError, MonoidError) as exc:
        return CommandResult(Status.VALIDATION_FAILURE, {"valid": False, "error": str(exc)}, [f"invalid: {exc}"])
    payload = {
        "valid": True,
        "n": spec.n,
        "m": spec.m,
        "field": spec.field.to_json(),
        "monoid_size": spec.monoid.size,
        "abelian": is_abelian(spec.monoid),
        "digest": spec.digest(),
    }
    return CommandResult(Status.OK, payload, [f"valid spec: n={spec.n}, m={spec.m}, over {spec.field}"])


def _verify(args) -> CommandResult:
    spec = _load_spec(args.spec)
    t = SolutionTuple.from_json(_read_json(args.tuple), spec)
    bad = residual(spec, t)
    enc = spec.field.encode
    payload = {"violations": len(bad), "defects": [[x, y, enc(d)] for x, y, d in bad]}
    status = Status.OK if not bad else Status.VALIDATION_FAILURE
    diag = [f"residual: {len(bad)} violations"]
    diag += [f"  x={x} y={y} defect={enc(d)}" for x, y, d in bad[:20]]
    return CommandResult(status, payload, diag)


def _generate(args) -> CommandResult:
    spec = _load_spec(args.spec)
    cl = classification_from_json(_read_json(args.params), spec)
    t = cl.generate(spec)
    return CommandResult(Status.OK, t.to_json(), [f"generated {cl.family.value} tuple", json.dumps(t.to_json())])


def _classify(args) -> CommandResult:
    spec = _load_spec(args.spec)
    t = SolutionTuple.from_json(_read_json(args.tuple), spec)
    try:
        cl = classify(spec, t)
    except NotASolution as exc:
        return CommandResult(Status.VALIDATION_FAILURE, {"error": str(exc)}, [f"not a solution: {exc}"])
    payload = classification_to_json(cl, spec)
    return CommandResult(Status.OK, payload, [f"family: {cl.family.value}", _dumps(payload)])


def _sweep(args) -> CommandResult:
    spec = _load_spec(args.spec)
    by_family = sweep_by_family(spec, budget=args.budget)
    union = set().union(*by_family.values())
    payload = {
        "count": len(union),
        "per_family": {fam.value: len(ts) for fam, ts in by_family.items()},
    }
    if args.tuples:
        payload["tuples"] = [t.to_json() for t in sorted(union, key=SolutionTuple.key)]
    diag = [f"{len(union)} distinct tuples"]
    diag += [f"  {fam:<20} {cnt}" for fam, cnt in payload["per_family"].items()]
    return CommandResult(Status.OK, payload, diag)


def _oracle_compare(args) -> CommandResult:
    spec = _load_spec(args.spec)
    families = [f for f in Family if f.value not in set(args.skip_family or [])]
    report = compare(spec, workers=args.workers, families=families)
    status = Status.OK if report.clean else Status.DISCREPANCY
    text = emit_report(report, "text", include_timing=args.timing).decode().rstrip("\n").split("\n")
    return CommandResult(status, report.to_json(include_timing=args.timing), text)


# parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="print JSON instead of text")
    common.add_argument("--out", metavar="FILE", help="also write the JSON payload to FILE")

    p = _Parser(prog="levi", description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    mon = sub.add_parser("monoid", help="validate or build Cayley tables")
    msub = mon.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    v = msub.add_parser("validate", parents=[common])
    v.add_argument("file")
    v.set_defaults(func=_monoid_validate)
    b = msub.add_parser("build", parents=[common])
    b.add_argument("name", choices=["cyclic", "symmetric3", "meet_semilattice", "direct_product"])
    b.add_argument("--k", type=int, default=2)
    b.add_argument("--n", type=int, default=3)
    b.add_argument("--factor", action="append", metavar="NAME[:ARG]")
    b.set_defaults(func=_monoid_build)

    muls = sub.add_parser("muls", help="multiplicative functions")
    usub = muls.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    e = usub.add_parser("enumerate", parents=[common])
    e.add_argument("file")
    e.add_argument("--field", required=True, help="gf:P or rational")
    e.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    e.set_defaults(func=_muls_enumerate)

    spec = sub.add_parser("spec", help="problem specs")
    ssub = spec.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    c = ssub.add_parser("check", parents=[common])
    c.add_argument("spec")
    c.set_defaults(func=_spec_check)

    v = sub.add_parser("verify", parents=[common], help="residual of a tuple")
    v.add_argument("spec")
    v.add_argument("tuple")
    v.set_defaults(func=_verify)

    g = sub.add_parser("generate", parents=[common], help="tuple from a classification record")
    g.add_argument("spec")
    g.add_argument("params")
    g.set_defaults(func=_generate)

    c = sub.add_parser("classify", parents=[common], help="family and parameters of a solution")
    c.add_argument("spec")
    c.add_argument("tuple")
    c.set_defaults(func=_classify)

    s = sub.add_parser("sweep", parents=[common], help="all tuples of all families")
    s.add_argument("spec")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--tuples", action="store_true", help="include the tuples in the payload")
    s.set_defaults(func=_sweep)

    o = sub.add_parser("oracle", help="exhaustive completeness check")
    osub = o.add_subparsers(dest="cmd", required=True, parser_class=_Parser)
    oc = osub.add_parser("compare", parents=[common])
    oc.add_argument("spec")
    oc.add_argument("--workers", type=int, default=None, help="default: $LEVI_WORKERS or 1")
    oc.add_argument("--skip-family", action="append", choices=[f.value for f in Family], help=argparse.SUPPRESS)
    oc.add_argument("--timing", action="store_true", help="report wall time (breaks byte-identical output)")
    oc.set_defaults(func=_oracle_compare)
    return p


def run(argv: list[str] | None = None) -> tuple[CommandResult, argparse.Namespace | None]:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return CommandResult(Status.ERROR, {"error": "usage"}, [str(exc)]), None
    try:
        result = args.func(args)
    except UsageError as exc:
        result = CommandResult(Status.ERROR, {"error": str(exc)}, [str(exc)])
    except InternalCaseExhaustion as exc:
        result = CommandResult(Status.DISCREPANCY, {"error": str(exc)}, [str(exc)])
    except (OSError, ValueError, KeyError, RuntimeError, ArithmeticError, MonoidError, FieldError) as exc:
        result = CommandResult(Status.ERROR, {"error": f"{type(exc).__name__}: {exc}"}, [f"error: {exc}"])
    return result, args


def main(argv: list[str] | None = None) -> int:
    result, args = run(argv)
    as_json = bool(args and args.json)
    if args is not None and getattr(args, "out", None) and result.status != Status.ERROR:
        Path(args.out).write_text(_dumps(result.payload) + "\n")
    if as_json:
        sys.stdout.write(_dumps({"status": result.status.name.lower().replace("_", "-"), **result.payload}) + "\n")
    else:
        stream = sys.stderr if result.status == Status.ERROR else sys.stdout
        stream.write("\n".join(result.diagnostics) + "\n")
    return int(result.status)


if __name__ == "__main__":
    sys.exit(main())
