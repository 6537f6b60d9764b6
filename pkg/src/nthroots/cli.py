"""Command-line interface.

Exit status: 0 success, 1 a verification failed, 2 bad usage or input.
Every output starts with the tool version and the full run configuration, so a
run can be repeated from its own output.
"""

from __future__ import annotations

import argparse
import ast
import json
import os
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

from . import __version__, exact, roots, search
from .canon import Order, TooLarge, canonicalize, equivalent, orbit
from .cyclotomic import CycNumber, cyc_field, imag_unit, matrix_as_rational, sqrt3

EXIT_OK, EXIT_VERIFY, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    matrix: Optional[str] = None
    matrix_file: Optional[str] = None
    n: Optional[int] = None
    real_only: bool = False
    c_matrix: bool = False
    u: Optional[str] = None
    v: Optional[str] = None
    problem: Optional[str] = None
    dim: Optional[int] = None
    b_max: Optional[int] = None
    lam: Optional[list] = None
    m_bound: Optional[int] = None
    classes: bool = False
    order: Optional[str] = None
    equivalent: Optional[list] = None
    orbit: bool = False
    seed: Optional[int] = None
    budget: Optional[int] = None
    target_norm: Optional[int] = None
    steps: Optional[int] = None
    descent: bool = True
    checkpoint: Optional[str] = None
    resume: bool = False
    slow: bool = False
    fixtures: Optional[str] = None
    workers: Optional[int] = None
    output: Optional[str] = None
    format: str = "text"
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        d = asdict(self)
        keys = d.pop("extra").get("keys")
        return {k: v for k, v in d.items() if k == "command" or (keys is None or k in keys) and v is not None}


def _header(cfg: RunConfig) -> dict:
    return {"tool": "nthroots", "version": __version__, "config": cfg.to_json()}


class Writer:
    """Single writer for stdout or the ``--output`` file."""

    def __init__(self, path: Optional[str]):
        self.path = path
        self.fh = open(path, "w") if path else sys.stdout

    def line(self, text: str = ""):
        self.fh.write(text + "\n")

    def record(self, obj: dict):
        self.line(json.dumps(obj, sort_keys=False))

    def close(self):
        if self.path:
            self.fh.close()


# -- parsing helpers ------------------------------------------------------------------

def _read_matrix(cfg: RunConfig, text: Optional[str] = None):
    if text is None:
        if cfg.matrix_file:
            with open(cfg.matrix_file) as fh:
                text = fh.read()
        elif cfg.matrix is not None:
            text = cfg.matrix
        else:
            raise UsageError("a matrix is required (--matrix or --matrix-file)")
    try:
        return exact.parse_matrix(text)
    except exact.MatrixParseError as exc:
        raise UsageError(f"cannot parse matrix: {exc}") from None


def parse_cyclotomic(text: str) -> CycNumber:
    """Evaluate an expression in ``i``, ``sqrt3``, integers and + - * / ** over Q(zeta_12)."""
    K = cyc_field(12)
    names = {"i": imag_unit(K), "sqrt3": sqrt3(K)}

    def ev(node):
        if isinstance(node, ast.Expression):
            return ev(node.body)
        if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
            return K.rational(node.value)
        if isinstance(node, ast.Name) and node.id in names:
            return names[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
            x = ev(node.operand)
            return -x if isinstance(node.op, ast.USub) else x
        if isinstance(node, ast.BinOp):
            if isinstance(node.op, ast.Pow):
                if not (isinstance(node.right, ast.Constant) and isinstance(node.right.value, int)):
                    raise UsageError("exponent must be an integer literal")
                return ev(node.left) ** node.right.value
            a, b = ev(node.left), ev(node.right)
            ops = {ast.Add: lambda: a + b, ast.Sub: lambda: a - b, ast.Mult: lambda: a * b,
                   ast.Div: lambda: a / b}
            if type(node.op) in ops:
                return ops[type(node.op)]()
        raise UsageError(f"unsupported expression {ast.dump(node)}")

    try:
        return ev(ast.parse(text.strip(), mode="eval"))
    except SyntaxError:
        raise UsageError(f"cannot parse number {text!r}") from None
    except ZeroDivisionError:
        raise UsageError(f"division by zero in {text!r}") from None


def _fmt_number(e) -> str:
    if isinstance(e, CycNumber):
        q = e.as_rational()
        if q is not None:
            return str(q)
        z = e.approx()
        return f"{z.real:.12g}{z.imag:+.12g}i"
    return str(e)


def _text_matrix(x, indent="  ") -> list[str]:
    cells = [[_fmt_number(e) for e in row] for row in x]
    width = max(len(c) for row in cells for c in row)
    return [indent + "[" + "  ".join(c.rjust(width) for c in row) + "]" for row in cells]


def _cyc_json(x) -> dict:
    q = matrix_as_rational(x)
    rec = {"entries": [[e.to_json() for e in row] for row in x],
           "approx": [[[round(e.approx().real, 12), round(e.approx().imag, 12)] for e in row] for row in x]}
    if q is not None:
        rec["real_entries"] = exact.matrix_to_json(q)
    return rec


# -- commands ---------------------------------------------------------------------------

def cmd_roots(cfg: RunConfig, out: Writer) -> int:
    if cfg.n is None or cfg.n < 1:
        raise UsageError("--n must be a positive integer")
    n = cfg.n
    if cfg.c_matrix and n % 2 == 0:
        if cfg.u is None or cfg.v is None:
            raise UsageError("even n with --c-matrix needs --u and --v")
        u, v = parse_cyclotomic(cfg.u), parse_cyclotomic(cfg.v)
        try:
            y = roots.even_family(n, u, v)
        except roots.ZeroV as exc:
            raise UsageError(str(exc)) from None
        if cfg.format == "text":
            out.line("# " + json.dumps(_header(cfg)))
            out.line(f"Y({n}, {cfg.u}, {cfg.v}) with Y^{n} = C^{n} = {(-3) ** (n // 2)} I:")
            for s in _text_matrix(y):
                out.line(s)
        else:
            rec = {"type": "root", "family": "even", "n": n, "u": cfg.u, "v": cfg.v,
                   "conductor": y[0][0].field.N, **_cyc_json(y)}
            _emit(cfg, out, {"type": "summary", "count": 1}, [rec])
        return EXIT_OK
    if cfg.c_matrix:
        rs = roots.odd_c_roots(n)
    else:
        a = _read_matrix(cfg)
        rs = roots.roots_of_power(a, n)
    items = [(pos, idx, x) for pos, (idx, x) in enumerate(rs.roots)]
    real = set(rs.real_subset)
    if cfg.real_only:
        items = [t for t in items if t[0] in real]
    summary = {"type": "summary", "base": exact.matrix_to_json(rs.base), "n": n,
               "conductor": rs.field.N, "count": len(rs), "real_count": len(real),
               "listed": len(items), "verified": True}
    if cfg.format == "text":
        out.line("# " + json.dumps(_header(cfg)))
        out.line(f"{len(rs)} roots of X^{n} = A^{n} for A = {exact.format_matrix(rs.base)}; "
                 f"{len(real)} real; all verified exactly")
        for pos, idx, x in items:
            tag = "real" if pos in real else "complex"
            out.line(f"X{idx} ({tag}):")
            for s in _text_matrix(x):
                out.line(s)
        return EXIT_OK
    recs = [{"type": "root", "indices": list(idx), "is_real": pos in real, **_cyc_json(x)}
            for pos, idx, x in items]
    _emit(cfg, out, summary, recs)
    return EXIT_OK


def _emit(cfg: RunConfig, out: Writer, summary: dict, records: list):
    if cfg.format == "jsonl":
        out.record({**summary, **_header(cfg)})
        for r in records:
            out.record(r)
    else:
        out.line(json.dumps({**_header(cfg), "summary": summary, "records": records}, indent=1))


def cmd_search(cfg: RunConfig, out: Writer) -> int:
    order = Order.parse(cfg.order or "structural")
    try:
        if cfg.problem == "i":
            if cfg.dim is None:
                raise UsageError("problem i needs --dim")
            report = search.exhaustive_problem_i(cfg.dim, cfg.b_max or 3, order, cfg.workers,
                                                 classes=cfg.classes)
        elif cfg.problem in ("ii", "iii"):
            if not cfg.lam:
                raise UsageError("problems ii/iii need --lambda")
            report = search.exhaustive_problem_ii(cfg.lam, cfg.m_bound or 3, cfg.problem == "iii",
                                                  order, cfg.workers)
        else:
            raise UsageError("--problem must be i, ii or iii")
    except search.NoSolutionWithinBound as exc:
        summary = {"type": "summary", **exc.report.summary(), "message": str(exc)}
        summary["runtime"] = round(exc.report.runtime, 3)
        if cfg.format == "text":
            out.line("# " + json.dumps(_header(cfg)))
            out.line(f"NoSolutionWithinBound: {exc}")
            out.line(f"complete={str(exc.report.complete).lower()} explored={exc.report.explored}")
        else:
            _emit(cfg, out, summary, [])
        return EXIT_OK
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    summary = {"type": "summary", **report.summary()}
    class_ids = {c: k for k, (c, _) in enumerate(report.classes)}
    if cfg.format == "text":
        out.line("# " + json.dumps(_header(cfg)))
        _search_text(report, out)
        return EXIT_OK
    if cfg.format == "jsonl":
        out.record({**summary, **_header(cfg)})
        for rec in _solution_records(report, class_ids, cfg.classes):
            out.record(rec)
    else:
        _emit(cfg, out, summary, list(_solution_records(report, class_ids, cfg.classes)))
    return EXIT_OK


def _solution_records(report: search.SearchReport, class_ids: dict, with_classes: bool):
    order = report.order
    if report.spec.kind == "i":
        for rep in report.representatives:
            canon = canonicalize(rep, order) if with_classes else None
            for m in search.expand_left(rep):
                inv = exact.integer_inverse(m)
                yield {"type": "solution", "matrix": exact.matrix_to_json(m),
                       "inverse": exact.matrix_to_json(inv),
                       "norm": max(exact.norm(m), exact.norm(inv)),
                       "canonical_form": exact.matrix_to_json(canon) if canon else None,
                       "class_id": class_ids.get(canon) if canon else None}
    else:
        canon_of: dict = {}
        for m in report.solutions:
            inv = exact.integer_inverse(m)
            a = search.conjugate_diagonal(m, report.spec.lam, inv)
            if a not in canon_of:
                canon_of[a] = canonicalize(a, order)
            canon = canon_of[a]
            yield {"type": "solution", "matrix": exact.matrix_to_json(m),
                   "inverse": exact.matrix_to_json(inv), "product": exact.matrix_to_json(a),
                   "norm": exact.norm(a),
                   "canonical_form": exact.matrix_to_json(canon),
                   "class_id": class_ids.get(canon)}


def _search_text(report: search.SearchReport, out: Writer):
    s = report.spec
    if s.kind == "i":
        out.line(f"problem (i), n={s.n}: minimal ||(M M^-1)|| = {report.minimal_norm}, "
                 f"{report.count} solutions")
    else:
        out.line(f"problem ({s.kind}), lambda={list(s.lam)}, m_bound={s.m_bound}: minimal product norm "
                 f"{report.minimal_norm}, {report.count} distinct products from {report.optimal_m} optimal M")
    out.line(f"explored={report.explored} complete={str(report.complete).lower()} "
             f"order={report.order.value}")
    for k, (c, cnt) in enumerate(report.classes):
        out.line(f"class {k}: {cnt} {'products' if s.kind != 'i' else 'members'}, "
                 f"canonical form {exact.format_matrix(c)}")
    shown = report.products if report.products else report.representatives[:5]
    if shown:
        out.line("products:" if report.products else "representatives:")
        for m in shown:
            out.line("  " + exact.format_matrix(m))


def cmd_canon(cfg: RunConfig, out: Writer) -> int:
    if not cfg.order:
        raise UsageError("--order is required (row-major or structural)")
    try:
        order = Order.parse(cfg.order)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        if cfg.equivalent:
            a, b = (_read_matrix(cfg, t) for t in cfg.equivalent)
            try:
                same = equivalent(a, b, order)
            except exact.DimensionMismatch as exc:
                raise UsageError(str(exc)) from None
            ca, cb = canonicalize(a, order), canonicalize(b, order)
            if cfg.format == "text":
                out.line("true" if same else "false")
            else:
                _emit(cfg, out, {"type": "summary", "order": order.value, "equivalent": same},
                      [{"type": "canonical", "order": order.value, "matrix": exact.matrix_to_json(x),
                        "canonical_form": exact.matrix_to_json(c)} for x, c in ((a, ca), (b, cb))])
            return EXIT_OK
        m = _read_matrix(cfg)
        c = canonicalize(m, order)
        orb = sorted(orbit(m)) if cfg.orbit else None
    except TooLarge as exc:
        raise UsageError(str(exc)) from None
    if cfg.format == "text":
        out.line(f"canonical form ({order.value}): {exact.format_matrix(c)}")
        if orb is not None:
            out.line(f"orbit size: {len(orb)}")
            for x in orb:
                out.line("  " + exact.format_matrix(x))
        return EXIT_OK
    recs = [{"type": "canonical", "order": order.value, "matrix": exact.matrix_to_json(m),
             "canonical_form": exact.matrix_to_json(c)}]
    if orb is not None:
        recs += [{"type": "orbit_member", "matrix": exact.matrix_to_json(x)} for x in orb]
    _emit(cfg, out, {"type": "summary", "order": order.value,
                     "canonical_form": exact.matrix_to_json(c),
                     **({"orbit_size": len(orb)} if orb is not None else {})}, recs)
    return EXIT_OK


def _write_checkpoint(path: str, state: dict):
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        json.dump(state, fh)
    os.replace(tmp, path)


def cmd_random_search(cfg: RunConfig, out: Writer) -> int:
    if cfg.dim is None or cfg.dim < 2:
        raise UsageError("--dim must be at least 2")
    if not cfg.budget or cfg.budget < 1:
        raise UsageError("--budget must be positive")
    seed = cfg.seed if cfg.seed is not None else 0
    state = None
    if cfg.resume:
        if not cfg.checkpoint or not os.path.exists(cfg.checkpoint):
            raise UsageError("--resume needs an existing --checkpoint file")
        with open(cfg.checkpoint) as fh:
            state = json.load(fh)
    save = (lambda st: _write_checkpoint(cfg.checkpoint, st)) if cfg.checkpoint else None
    try:
        report = search.randomized_zerofree_search(
            cfg.dim, cfg.budget, seed, cfg.target_norm, cfg.steps, cfg.descent, state=state, checkpoint=save)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    summary = {"type": "summary", **report.summary(),
               "iterations_done": (state["iterations_done"] if state else 0) + report.explored}
    summary["spec"]["kind"] = "random"
    if cfg.format == "text":
        out.line("# " + json.dumps(_header(cfg)))
        best = "none found" if report.minimal_norm is None else report.minimal_norm
        out.line(f"n={cfg.dim}: best ||(M M^-1)|| = {best} after {summary['iterations_done']} iterations")
        for w in report.solutions:
            out.line("  " + exact.format_matrix(w))
        return EXIT_OK
    recs = [{"type": "solution", "matrix": exact.matrix_to_json(w),
             "inverse": exact.matrix_to_json(exact.integer_inverse(w)),
             "norm": report.minimal_norm, "canonical_form": None, "class_id": None}
            for w in report.solutions]
    _emit(cfg, out, summary, recs)
    return EXIT_OK


def cmd_verify_paper(cfg: RunConfig, out: Writer) -> int:
    from .reproduce import load_fixtures, run_checks

    try:
        fx = load_fixtures(cfg.fixtures)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot load fixtures: {exc}") from None
    results = run_checks(fx, slow=cfg.slow)
    ok = all(r.passed for r in results)
    if cfg.format == "text":
        for r in results:
            out.line(f"{'PASS' if r.passed else 'FAIL'}  {r.name}: {r.detail} ({r.seconds:.2f}s)")
        out.line(f"{sum(r.passed for r in results)}/{len(results)} checks passed")
    else:
        _emit(cfg, out, {"type": "summary", "passed": ok, "total": len(results)},
              [{"type": "check", "name": r.name, "passed": r.passed, "detail": r.detail} for r in results])
    return EXIT_OK if ok else EXIT_VERIFY


COMMANDS = {
    "roots": cmd_roots,
    "search": cmd_search,
    "canon": cmd_canon,
    "random-search": cmd_random_search,
    "verify-paper": cmd_verify_paper,
}


# -- argument parsing ----------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(" ", "").split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nthroots", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"nthroots {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--format", choices=("text", "json", "jsonl"), default="text")
        sp.add_argument("--output", "-o")

    r = sub.add_parser("roots", help="all n-th roots of A^n")
    r.add_argument("--matrix")
    r.add_argument("--matrix-file")
    r.add_argument("--n", type=int, required=True)
    r.add_argument("--real-only", action="store_true")
    r.add_argument("--c-matrix", action="store_true", help="use C = (1 -2; 2 -1)")
    r.add_argument("--u", help="even family parameter, e.g. '-i*sqrt3'")
    r.add_argument("--v", help="even family parameter, nonzero")
    common(r)

    s = sub.add_parser("search", help="exhaustive search for problems i, ii, iii")
    s.add_argument("--problem", choices=("i", "ii", "iii"), required=True)
    s.add_argument("--dim", type=int)
    s.add_argument("--b-max", type=int, default=3)
    s.add_argument("--lambda", dest="lam", type=_int_list)
    s.add_argument("--m-bound", type=int, default=3)
    s.add_argument("--classes", action="store_true", help="partition optima into equivalence classes")
    s.add_argument("--order", choices=("row-major", "structural"), default="structural")
    s.add_argument("--workers", type=int)
    common(s)

    c = sub.add_parser("canon", help="canonical form under signed permutations")
    c.add_argument("--order", choices=("row-major", "structural"))
    c.add_argument("--matrix")
    c.add_argument("--matrix-file")
    c.add_argument("--equivalent", nargs=2, metavar=("A", "B"))
    c.add_argument("--orbit", action="store_true")
    common(c)

    q = sub.add_parser("random-search", help="randomized search for zerofree unimodular matrices")
    q.add_argument("--dim", type=int, required=True)
    q.add_argument("--budget", type=int, required=True)
    q.add_argument("--seed", type=int, default=0)
    q.add_argument("--target-norm", type=int)
    q.add_argument("--steps", type=int)
    q.add_argument("--no-descent", dest="descent", action="store_false")
    q.add_argument("--checkpoint")
    q.add_argument("--resume", action="store_true")
    common(q)

    v = sub.add_parser("verify-paper", help="recompute every published value")
    v.add_argument("--slow", action="store_true", help="include the 4x4 exhaustive count")
    v.add_argument("--fixtures")
    common(v)
    return p


def parse_config(argv) -> RunConfig:
    ns = vars(build_parser().parse_args(argv))
    known = {f for f in RunConfig.__dataclass_fields__}
    cfg = RunConfig(**{k: v for k, v in ns.items() if k in known})
    cfg.extra["keys"] = sorted(k for k in ns if k in known)
    if cfg.workers is None and cfg.command == "search":
        cfg.workers = search.default_workers()
    return cfg


def main(argv=None) -> int:
    try:
        cfg = parse_config(sys.argv[1:] if argv is None else argv)
    except UsageError as exc:
        print(f"nthroots: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    out = Writer(cfg.output)
    try:
        return COMMANDS[cfg.command](cfg, out)
    except UsageError as exc:
        print(f"nthroots: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (roots.NonIntegerSpectrum, roots.RepeatedEigenvalue, roots.NonSimpleKernel,
            roots.BadParity, roots.ZeroV) as exc:
        print(f"nthroots: error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except roots.VerificationFailed as exc:
        print(f"nthroots: verification failed: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    finally:
        out.close()
