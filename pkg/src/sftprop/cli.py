"""Command-line entry point (``sftprop``)."""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .algebra import (
    ZPLUS,
    DimensionError,
    InternalConsistencyError,
    SemiringMatrix,
    by_name,
    render_matrix,
)
from .certificate import SearchStats, verify_certificate
from .invariants import (
    EXIT_CODES,
    bowen_franks,
    compare,
    invariant_report,
    verdict_to_json,
    zeta_poly,
)
from .io import MatrixParseError, read_matrix
from .prop import (
    ArityError,
    DiagramParseError,
    ModelValidationError,
    TracedMorphism,
    eval_diagram,
    honest_value,
    matrix_model,
    parse_diagram,
)
from .shift import (
    SearchBudget,
    certificate_from_json,
    certificate_to_json,
    flow_search,
    sse_search,
)
from .weighted import (
    STANDARD_MONOIDS,
    EnumerationBudgetExceeded,
    FiniteMonoid,
    MonoidError,
    MonoidHom,
    WeightedModel,
    count_fixed_points,
    interpret_matrix,
    load_monoid,
)

EXIT_INPUT_ERROR = 3
EXIT_USAGE = 64


class CliError(Exception):
    """Bad input; reported on stderr with exit code 3."""


class _Parser(argparse.ArgumentParser):
    # exit code 2 is taken by the "unknown" verdict
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def _add_common(p: argparse.ArgumentParser, suppress: bool) -> None:
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--format", choices=("text", "json"), default=d("text"))
    p.add_argument("--ring", default=d(None), help="zplus, z, zplus_t, z_t or fp:<p>")
    p.add_argument("--max-inner-dim", type=_positive, default=d(4))
    p.add_argument("--max-entry", type=_positive, default=d(3))
    p.add_argument("--max-size", type=_positive, default=d(6))
    p.add_argument("--max-steps", type=_nonnegative, default=d(4))
    p.add_argument("--max-states", type=_positive, default=d(20_000))
    p.add_argument("--series-order", type=_positive, default=d(8))


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sftprop", description="Invariants and equivalence search for nonnegative integer matrices.")
    _add_common(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _add_common(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("invariants", parents=[common], help="full invariant report for one matrix")
    p.add_argument("matrix")
    p.add_argument("--monoid", action="append", default=[], help="monoid JSON file or a standard name; repeatable")
    p.add_argument("--modulus", type=int)
    p.add_argument("--lambda", dest="lam", type=int)

    for name, helptext in (
        ("compare", "decide equivalence by invariants, then search"),
        ("sse-search", "search for a strong shift equivalence"),
        ("flow-search", "search for a flow equivalence"),
    ):
        p = sub.add_parser(name, parents=[common], help=helptext)
        p.add_argument("m")
        p.add_argument("n")
        p.add_argument("--certificate", help="write the certificate here when one is found")
        if name == "compare":
            p.add_argument("--relation", choices=("sse", "flow"), default="sse")

    p = sub.add_parser("zeta", parents=[common], help="denominator of the zeta function")
    p.add_argument("matrix")
    p = sub.add_parser("bf", parents=[common], help="Bowen-Franks group")
    p.add_argument("matrix")

    p = sub.add_parser("eval-diagram", parents=[common], help="evaluate a string-diagram term")
    p.add_argument("diagram", help="term file, or - for stdin")

    p = sub.add_parser("fixed-count", parents=[common], help="fixed points of x -> h(Mx) over a finite monoid")
    p.add_argument("matrix")
    p.add_argument("--monoid", required=True, help="monoid JSON file or a standard name")
    p.add_argument("--hom", help="comma-separated images of the elements (default: identity)")
    p.add_argument("--budget", type=_positive, default=10 ** 7, help="largest |X|^n to enumerate")

    p = sub.add_parser("verify", parents=[common], help="replay a certificate")
    p.add_argument("certificate")
    p.add_argument("--source", help="matrix file the certificate must start from")
    p.add_argument("--target", help="matrix file the certificate must end at")
    return parser


# -- helpers -----------------------------------------------------------------


def _budget(args) -> SearchBudget:
    return SearchBudget(args.max_inner_dim, args.max_entry, args.max_size, args.max_steps, args.max_states)


def _read(path: str, ring: Optional[str], allowed: Sequence[str] = ("zplus",)) -> SemiringMatrix:
    sr = by_name(ring) if ring else ZPLUS
    if sr.name not in allowed:
        raise CliError(f"this command needs a matrix over {' or '.join(allowed)}, not {sr.name}")
    try:
        m = read_matrix(path, sr)
    except OSError as exc:
        raise CliError(f"{path}: {exc.strerror}") from None
    except MatrixParseError as exc:
        raise CliError(str(exc)) from None
    if not m.is_square:
        raise CliError(f"{path}: matrix is {m.rows}x{m.cols}, expected square")
    return m


def _load_monoid(spec: str, hom_text: Optional[str] = None) -> tuple[str, FiniteMonoid, MonoidHom]:
    try:
        if spec in STANDARD_MONOIDS and not os.path.exists(spec):
            mon = STANDARD_MONOIDS[spec]()
            hom = MonoidHom.identity(mon)
        else:
            mon, hom = load_monoid(spec)
        if hom_text:
            hom = MonoidHom(mon, [int(x) for x in hom_text.split(",")])
    except OSError as exc:
        raise CliError(f"{spec}: {exc.strerror}") from None
    except (MonoidError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise CliError(f"{spec}: {exc}") from None
    return spec, mon, hom


def _emit(args, obj: dict, text: str) -> None:
    if args.format == "json":
        sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _write_certificate(path: Optional[str], cert) -> None:
    if path and cert is not None:
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(certificate_to_json(cert), fh, indent=2, sort_keys=True, ensure_ascii=False)
            fh.write("\n")


def _render_cert_text(cert) -> str:
    lines = [f"certificate ({cert.relation}, {len(cert.steps)} steps)"]
    for i, s in enumerate(cert.steps):
        lines.append(f"  {i}: {s.tag}")
    return "\n".join(lines)


# -- commands ------------------------------------------------------------------


def cmd_invariants(args) -> int:
    m = _read(args.matrix, args.ring)
    monoids = [_load_monoid(s) for s in args.monoid]
    if args.lam is not None and args.modulus is None:
        raise CliError("--lambda needs --modulus")
    try:
        report = invariant_report(m, monoids, args.modulus, args.lam, args.series_order)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    lines = [
        f"bowen_franks: {report['bowen_franks']['text']}",
        f"zeta: {report['zeta']}",
        f"spectrum: {report['spectrum']}",
        f"fitting: {report['fitting']}",
        f"semimodule: {report['semimodule']}",
        "periodic_points: " + " ".join(map(str, report["periodic_points"])),
    ]
    for fc in report["fixed_counts"]:
        lines.append(f"fixed_count[{fc['monoid']}]: {fc['count']}")
    for ff in report.get("finite_field", []):
        lines.append(f"finite_field[p={ff['p']},lambda={ff['lambda']}]: {ff['count']}")
    _emit(args, report, "\n".join(lines))
    return 0


def cmd_compare(args) -> int:
    m, n = _read(args.m, args.ring), _read(args.n, args.ring)
    stats = SearchStats()
    verdict = compare(m, n, args.relation, _budget(args), stats)
    obj = verdict_to_json(verdict)
    if verdict.outcome == "equivalent":
        _write_certificate(args.certificate, verdict.certificate)
        text = "equivalent\n" + _render_cert_text(verdict.certificate)
    elif verdict.outcome == "distinguished":
        text = f"distinguished by {verdict.invariant}: {verdict.value_m} vs {verdict.value_n}"
    else:
        text = "unknown within budget\n" + "\n".join(f"  {a}: {b}" for a, b, _ in verdict.table)
    _emit(args, obj, text)
    return EXIT_CODES[verdict.outcome]


def _cmd_search(args, fn, relation: str) -> int:
    m, n = _read(args.m, args.ring), _read(args.n, args.ring)
    stats = SearchStats()
    cert = fn(m, n, _budget(args), stats)
    search = {"states": stats.states, "levels": stats.levels, "exhausted": stats.exhausted, "truncated": stats.truncated}
    if cert is None:
        _emit(args, {"schema": 1, "relation": relation, "found": False, "search": search}, "not found within budget")
        return EXIT_CODES["unknown"]
    _write_certificate(args.certificate, cert)
    _emit(args, {"schema": 1, "relation": relation, "found": True, "certificate": certificate_to_json(cert)},
          _render_cert_text(cert))
    return 0


def cmd_zeta(args) -> int:
    m = _read(args.matrix, args.ring, ("zplus", "z"))
    z = zeta_poly(m).render()
    _emit(args, {"schema": 1, "zeta": z}, z)
    return 0


def cmd_bf(args) -> int:
    m = _read(args.matrix, args.ring, ("zplus", "z"))
    g = bowen_franks(m)
    _emit(args, {"schema": 1, "bowen_franks": g.to_json()}, g.render())
    return 0


def _pair_note(pair: TracedMorphism) -> str:
    """Describe the honest value of a pair in the model over Z/2."""
    if pair.semiring.name not in ("zplus", "zplus_t"):
        return "model value: not available over this ring"
    model = WeightedModel(STANDARD_MONOIDS["z2"](), validate=False)
    v = honest_value(pair, model)
    if v == model.identity(v.n_in) and v.n_in == v.n_out:
        return "model value: id" if v.n_in == 1 else f"model value: id_{v.n_in}"
    return "model value over z2:\n" + render_matrix(v.to_matrix())


def cmd_eval_diagram(args) -> int:
    try:
        text = sys.stdin.read() if args.diagram == "-" else open(args.diagram, encoding="utf-8").read()
    except OSError as exc:
        raise CliError(f"{args.diagram}: {exc.strerror}") from None
    sr = by_name(args.ring or "zplus_t")
    try:
        term = parse_diagram(text)
        value = eval_diagram(term, matrix_model(sr))
    except (DiagramParseError, ArityError, ModelValidationError) as exc:
        raise CliError(str(exc)) from None
    if isinstance(value, TracedMorphism):
        note = _pair_note(value)
        obj = {"schema": 1, "kind": "pair", "dashed": value.dashed, "rows": value.underlying.rows,
               "cols": value.underlying.cols, "text": render_matrix(value.underlying), "note": note}
        body = render_matrix(value.underlying)
        _emit(args, obj, f"pair with {value.dashed} dashed wires\n{body}\n{note}")
    else:
        obj = {"schema": 1, "kind": "matrix", "rows": value.rows, "cols": value.cols, "text": render_matrix(value)}
        _emit(args, obj, render_matrix(value) if value.rows and value.cols else f"empty {value.rows}x{value.cols}")
    return 0


def cmd_fixed_count(args) -> int:
    m = _read(args.matrix, args.ring)
    name, mon, hom = _load_monoid(args.monoid, args.hom)
    try:
        a = interpret_matrix(m, mon, hom, budget=args.budget)
        b = count_fixed_points(m, mon, hom, budget=args.budget)
    except EnumerationBudgetExceeded as exc:
        raise CliError(f"enumeration budget exceeded: {exc}") from None
    if a != b:
        raise InternalConsistencyError(f"diagram count {a} differs from direct count {b}")
    _emit(args, {"schema": 1, "monoid": name, "hom": list(hom.map), "interpret_matrix": str(a),
                 "count_fixed_points": str(b), "count": str(b)},
          f"interpret_matrix: {a}\ncount_fixed_points: {b}\ncount: {b}")
    return 0


def cmd_verify(args) -> int:
    try:
        with open(args.certificate, encoding="utf-8") as fh:
            cert = certificate_from_json(json.load(fh))
    except OSError as exc:
        raise CliError(f"{args.certificate}: {exc.strerror}") from None
    except (ValueError, KeyError, TypeError, MatrixParseError) as exc:
        raise CliError(f"{args.certificate}: malformed certificate: {exc}") from None
    result = verify_certificate(cert)
    message = result.message
    ok = result.ok
    for flag, endpoint, label in ((args.source, cert.source, "source"), (args.target, cert.target, "target")):
        if ok and flag:
            ring = args.ring or getattr(endpoint, "semiring", ZPLUS).name
            if _read(flag, ring, (ring,)) != endpoint:
                ok, message = False, f"certificate {label} does not match {flag}"
    obj = {"schema": 1, "ok": ok, "failed_step": result.failed_step, "message": message, "steps": len(cert.steps)}
    if ok:
        text = f"ok: {len(cert.steps)} steps replayed"
    elif result.failed_step is not None and not result.ok:
        text = f"failed at step {result.failed_step}: {message}"
    else:
        text = f"failed: {message}"
    _emit(args, obj, text)
    return 0 if ok else 1


COMMANDS = {
    "invariants": cmd_invariants,
    "compare": cmd_compare,
    "sse-search": lambda a: _cmd_search(a, sse_search, "sse"),
    "flow-search": lambda a: _cmd_search(a, flow_search, "flow"),
    "zeta": cmd_zeta,
    "bf": cmd_bf,
    "eval-diagram": cmd_eval_diagram,
    "fixed-count": cmd_fixed_count,
    "verify": cmd_verify,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return COMMANDS[args.command](args)
    except (CliError, DimensionError) as exc:
        print(f"sftprop: error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
