"""``proframe`` command-line front end.

Usage::

    proframe <command> <document.json> [--frame NAME] [--other NAME]
             [--seed N] [--tol X] [--rtol X] [--json] [--out PATH]

Exit status is 0 when every check passes, 1 when a mathematical check
fails and 2 on input errors.
"""

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from .document import FrameDocument, dumps_document, emit_document, parse_document
from .errors import DocumentError, IncompatibleSignatureError, ProframeError
from .frames import (
    OperatorFrame,
    canonical_dual,
    classify,
    compose_right,
    dual_residual,
    frame_energy,
    frame_operator,
    gen_frame,
    optimal_bounds,
    reconstruct,
    transform,
    transport_residual,
)
from .fusion import (
    FusionSystem,
    frame_operator_conjugation_check,
    fusion_dual_pair,
    fusion_to_operator_frame,
    parseval_self_dual_check,
)
from .module import ModuleOperator, op_is_positive, surjectivity_bounds
from .perturbation import deviation_constants, deviation_witnesses, difference_family, perturb_check
from .sampling import random_module_element
from .selftest import DEFAULT_SIGNATURES, run_selftest
from .tensor import tensor_family, tensor_frame, tensor_operator

COMMANDS = (
    "bounds", "dual", "verify-dual", "reconstruct", "compose", "transform",
    "perturb", "deviation", "tensor", "fusion", "gen", "selftest",
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _fmt(v):
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return f"{v:.6e}" if (v != 0 and (abs(v) < 1e-3 or abs(v) >= 1e6)) else f"{v:.10g}"
    return str(v)


@dataclass
class Report:
    command: str
    args: list
    checks: list = field(default_factory=list)
    tables: list = field(default_factory=list)
    document: dict = None

    def check(self, name, passed, value=None):
        self.checks.append({"name": name, "passed": bool(passed), "value": value})

    def table(self, title, columns, rows):
        self.tables.append({"title": title, "columns": list(columns), "rows": [list(r) for r in rows]})

    @property
    def passed(self):
        return all(c["passed"] for c in self.checks)

    def to_json(self):
        return json.dumps(
            {
                "command": self.command,
                "args": self.args,
                "checks": self.checks,
                "tables": self.tables,
                "status": "pass" if self.passed else "fail",
                **({"document": self.document} if self.document is not None else {}),
            },
            indent=2,
        ) + "\n"

    def to_markdown(self):
        lines = [f"# proframe {self.command}", "", "`" + " ".join(self.args) + "`", ""]
        for t in self.tables:
            lines += [f"## {t['title']}", ""]
            lines.append("| " + " | ".join(t["columns"]) + " |")
            lines.append("|" + "---|" * len(t["columns"]))
            for r in t["rows"]:
                lines.append("| " + " | ".join(_fmt(v) for v in r) + " |")
            lines.append("")
        if self.checks:
            lines += ["## checks", "", "| check | result | value |", "|---|---|---|"]
            for c in self.checks:
                lines.append(f"| {c['name']} | {'pass' if c['passed'] else 'FAIL'} | {_fmt(c['value'])} |")
            lines.append("")
        if self.document is not None:
            lines += ["## document", "", "```json", json.dumps(self.document), "```", ""]
        lines.append(f"status: {'PASS' if self.passed else 'FAIL'}")
        return "\n".join(lines) + "\n"


def _frame(doc, name, flag="--frame"):
    if name is None:
        if not doc.frames:
            raise InputError("document has no frames")
        name = next(iter(doc.frames))
    if name not in doc.frames:
        raise InputError(f"unknown frame '{name}' (given by {flag})")
    return name, doc.frames[name]


def _require_other(args, kind):
    if args.other is None:
        raise InputError(f"this command needs --other naming {kind}")
    return args.other


def _bounds_row(name, F, tol):
    b = optimal_bounds(F, tol)
    return [name, len(F), b.lower, b.upper, str(classify(F, tol))]


BOUNDS_COLUMNS = ("frame", "|J|", "A", "B", "class")


def cmd_bounds(doc, args, rep):
    name, F = _frame(doc, args.frame)
    rep.table("optimal bounds", BOUNDS_COLUMNS, [_bounds_row(name, F, args.tol)])
    b = optimal_bounds(F, args.tol)
    rep.table(
        "per block",
        ("block", "lambda_min", "lambda_max"),
        [[k, lo, hi] for k, (lo, hi) in enumerate(b.per_block)],
    )
    s = frame_operator(F)
    eye = ModuleOperator.identity(F.space)
    rep.check("A I <= S", op_is_positive(s - b.lower * eye, args.tol))
    rep.check("S <= B I", op_is_positive(b.upper * eye - s, args.tol))


def cmd_dual(doc, args, rep):
    name, F = _frame(doc, args.frame)
    D = canonical_dual(F, args.tol)
    res = dual_residual(F, D)
    rep.table("bounds", BOUNDS_COLUMNS, [_bounds_row(name, F, args.tol), _bounds_row(name + "_dual", D, args.tol)])
    rep.check("dual residual", res <= args.rtol, res)
    out = FrameDocument(doc.signature, doc.rank, frames={name: F, name + "_dual": D})
    _emit(out, args, rep)


def cmd_verify_dual(doc, args, rep):
    name, F = _frame(doc, args.frame)
    oname, G = _frame(doc, _require_other(args, "a candidate dual frame"), "--other")
    res = dual_residual(F, G)
    rep.table("pair", ("frame", "dual", "residual"), [[name, oname, res]])
    rep.check("sum T_i^* G_i = I", res <= args.rtol, res)


def cmd_reconstruct(doc, args, rep):
    name, F = _frame(doc, args.frame)
    if doc.elements:
        xs = list(doc.elements.items())
    else:
        rng = np.random.default_rng(args.seed)
        xs = [(f"random[{i}]", random_module_element(rng, F.space)) for i in range(5)]
    rows, worst = [], 0.0
    for xname, x in xs:
        r = reconstruct(F, x, args.tol)
        err = max(
            float(np.linalg.norm(a - b, 2)) / max(1.0, float(np.linalg.norm(b, 2)))
            for a, b in zip(r.blocks, x.blocks)
        )
        worst = max(worst, err)
        rows.append([xname, err])
    rep.table("reconstruction", ("element", "relative residual"), rows)
    rep.check("x = sum S^-1 T_i^* T_i x", worst <= args.rtol, worst)


def cmd_compose(doc, args, rep):
    name, F = _frame(doc, args.frame)
    qname = _require_other(args, "an operator in 'operators'")
    if qname not in doc.operators:
        raise InputError(f"unknown operator '{qname}'")
    Q = doc.operators[qname]
    G, b = compose_right(F, Q, args.tol)
    A, B = optimal_bounds(F, args.tol)
    lo, hi = surjectivity_bounds(Q, args.tol)
    rep.table(
        "composition",
        ("family", "A", "B", "A m'", "B M'"),
        [[name, A, B, None, None], [f"{name} o {qname}", b.lower, b.upper, A * lo, B * hi]],
    )
    rep.check("lower >= A m'", b.lower >= A * lo - args.rtol, b.lower - A * lo)
    rep.check("upper <= B M'", b.upper <= B * hi + args.rtol, B * hi - b.upper)


def cmd_transform(doc, args, rep):
    name, F = _frame(doc, args.frame)
    tname = _require_other(args, "a theta map in 'thetas'")
    if tname not in doc.thetas:
        raise InputError(f"unknown theta map '{tname}'")
    theta = doc.thetas[tname]
    G, b = transform(F, theta, args.tol, seed=args.seed)
    src = optimal_bounds(F, args.tol)
    rng = np.random.default_rng(args.seed)
    worst = 0.0
    for _ in range(8):
        x, y = random_module_element(rng, F.space), random_module_element(rng, F.space)
        worst = max(worst, transport_residual(F, theta, x, y))
    rows = [["source", src.lower, src.upper], ["target", b.lower, b.upper]]
    rep.table("transport", ("module", "A", "B"), rows)
    image = sorted(set(theta.hom.block_map))
    exp_lo = min(src.per_block[k][0] for k in image)
    exp_hi = max(src.per_block[k][1] for k in image)
    scale = max(1.0, src.upper)
    rep.check("phi(<S_A x,y>) = <S_B tx,ty>", worst <= args.rtol * scale, worst)
    rep.check(
        "bounds preserved on image",
        abs(b.lower - exp_lo) <= args.rtol * scale and abs(b.upper - exp_hi) <= args.rtol * scale,
    )


def cmd_perturb(doc, args, rep):
    name, F = _frame(doc, args.frame)
    rname, R = _frame(doc, _require_other(args, "the perturbing family"), "--other")
    r = perturb_check(F, R, args.tol)
    rep.table(
        "perturbation",
        ("A", "B", "M", "diff A", "diff B", "(sqrtA-sqrtM)^2", "(sqrtB+sqrtM)^2"),
        [[r.bounds_T.lower, r.bounds_T.upper, r.bessel_R, r.frame_diff.lower, r.frame_diff.upper,
          r.guaranteed_lower, r.guaranteed_upper]],
    )
    rep.check("M < A implies difference is a frame", r.satisfied)
    if r.bessel_R < r.bounds_T.lower:
        rep.check("difference lower bound", r.frame_diff.lower >= r.guaranteed_lower - args.rtol,
                  r.frame_diff.lower - r.guaranteed_lower)
    rep.check("difference upper bound", r.frame_diff.upper <= r.guaranteed_upper + args.rtol,
              r.guaranteed_upper - r.frame_diff.upper)


def cmd_deviation(doc, args, rep):
    name, F = _frame(doc, args.frame)
    rname, R = _frame(doc, _require_other(args, "the compared family"), "--other")
    dc = deviation_constants(F, R, args.tol)
    rep.table("deviation constants", ("against T", "against R", "M"), [[dc.M_against_T, dc.M_against_R, dc.M]])
    if dc.M_against_T is not None:
        rng = np.random.default_rng(args.seed)
        D = difference_family(F, R)
        worst = 0.0
        for _ in range(200):
            x = random_module_element(rng, F.space)
            d, g = frame_energy(D, x), frame_energy(F, x)
            for k in range(F.space.n_blocks):
                worst = max(worst, np.linalg.norm(d.blocks[k], 2) / np.linalg.norm(g.blocks[k], 2))
        rep.check("sampled ratio <= M_T", worst <= dc.M_against_T + args.rtol, dc.M_against_T - worst)
        best = max(lam for lam, _ in deviation_witnesses(F, R, args.tol))
        rep.check("witness attains M_T", abs(best - dc.M_against_T) <= 1e-6, abs(best - dc.M_against_T))
    if dc.finite:
        A, B = optimal_bounds(F, args.tol)
        a, b = optimal_bounds(R, args.tol)
        s = (np.sqrt(dc.M) + 1.0) ** 2
        rep.check("A/(sqrtM+1)^2 <= A_R", A / s <= a + args.rtol)
        rep.check("B_R <= B(sqrtM+1)^2", b <= B * s + args.rtol)


def cmd_tensor(doc, args, rep):
    name, F = _frame(doc, args.frame)
    gname, G = _frame(doc, args.other if args.other is not None else name, "--other")
    H, b = tensor_frame(F, G, args.tol)
    (a1, b1), (a2, b2) = optimal_bounds(F, args.tol), optimal_bounds(G, args.tol)
    rep.table(
        "tensor bounds",
        ("family", "A", "B"),
        [[name, a1, b1], [gname, a2, b2], [f"{name} x {gname}", b.lower, b.upper]],
    )
    err = frame_operator(H).max_abs_diff(tensor_operator(frame_operator(F), frame_operator(G)))
    scale = max(1.0, b.upper)
    rep.check("S_(TxL) = S_T x S_L", err <= args.rtol * scale, err)
    rep.check("bounds multiply", abs(b.lower - a1 * a2) <= args.rtol * scale and abs(b.upper - b1 * b2) <= args.rtol * scale)
    if a1 > args.tol and a2 > args.tol:
        res = dual_residual(H, tensor_family(canonical_dual(F, args.tol), canonical_dual(G, args.tol)))
        rep.check("tensor of duals is dual", res <= args.rtol, res)


def _fusion_system(doc, name, tol):
    if name is None:
        if not doc.projections:
            raise InputError("document has no projections")
        name = next(iter(doc.projections))
    if name not in doc.projections:
        raise InputError(f"unknown projection system '{name}'")
    weights = doc.weights.get(name, [[1.0] * doc.signature.n_blocks] * len(doc.projections[name]))
    try:
        return name, FusionSystem.build(doc.projections[name], weights, tol)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_fusion(doc, args, rep):
    name, sysw = _fusion_system(doc, args.frame, args.tol)
    F = fusion_to_operator_frame(sysw)
    rep.table("fusion bounds", BOUNDS_COLUMNS, [_bounds_row(name, F, args.tol)])
    T, Q = fusion_dual_pair(sysw, args.tol)
    res = dual_residual(T, Q)
    rep.table("dual pair", ("family", "A", "B"), [["T", *optimal_bounds(T, args.tol)], ["Q", *optimal_bounds(Q, args.tol)]])
    rep.check("Q dual to T", res <= args.rtol, res)
    rep.check("T and Q are frames", classify(T, args.tol).is_frame and classify(Q, args.tol).is_frame)
    rep.check("conjugation leaves S fixed", frame_operator_conjugation_check(sysw, args.rtol))
    rep.table("parseval", ("self dual",), [[parseval_self_dual_check(sysw, args.rtol)]])


def cmd_gen(doc, args, rep):
    name = args.frame or "G"
    F = gen_frame(args.seed, doc.space, args.count, args.mode)
    rep.table("generated", BOUNDS_COLUMNS, [_bounds_row(name, F, args.tol)])
    out = FrameDocument(doc.signature, doc.rank, frames={name: F}, seeds={name: args.seed})
    _emit(out, args, rep)


def cmd_selftest(doc, args, rep):
    sigs = [doc.signature.block_dims] if doc is not None else list(DEFAULT_SIGNATURES)
    rank = doc.rank if doc is not None else 2
    rows = run_selftest(args.seed, sigs, rank)
    rep.table("selftest", ("check", "signature", "result", "value"),
              [[n, str(list(s)), "pass" if ok else "FAIL", v] for n, s, ok, v in rows])
    for n, s, ok, v in rows:
        rep.check(f"{n} {list(s)}", ok)


def _emit(out, args, rep):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps_document(out))
    else:
        rep.document = emit_document(out)


HANDLERS = {
    "bounds": cmd_bounds,
    "dual": cmd_dual,
    "verify-dual": cmd_verify_dual,
    "reconstruct": cmd_reconstruct,
    "compose": cmd_compose,
    "transform": cmd_transform,
    "perturb": cmd_perturb,
    "deviation": cmd_deviation,
    "tensor": cmd_tensor,
    "fusion": cmd_fusion,
    "gen": cmd_gen,
    "selftest": cmd_selftest,
}


def build_parser():
    p = argparse.ArgumentParser(prog="proframe", description="Operator frames on Hilbert modules over block algebras.")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("document", nargs="?", help="frame document (JSON); optional for selftest")
    p.add_argument("--frame", help="name of the primary frame (or projection system for fusion)")
    p.add_argument("--other", help="name of the secondary object")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-9, help="structural tolerance")
    p.add_argument("--rtol", type=float, default=1e-8, help="residual tolerance")
    p.add_argument("--json", action="store_true", help="print a JSON report instead of markdown")
    p.add_argument("--out", help="write emitted documents here")
    p.add_argument("--count", type=int, default=3, help="family size for gen")
    p.add_argument("--mode", default="generic", help="gen mode: generic, parseval, tight(L), near_singular")
    return p


def run_command(cmd, doc, args, argv=()):
    """Run one command against a parsed document and return its Report."""
    rep = Report(cmd, list(argv))
    HANDLERS[cmd](doc, args, rep)
    return rep


def main(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        if args.document is None:
            if args.command != "selftest":
                raise InputError(f"'{args.command}' needs a document")
            doc = None
        else:
            doc = parse_document(args.document)
        rep = run_command(args.command, doc, args, ["proframe", *argv])
    except (InputError, DocumentError, IncompatibleSignatureError) as exc:
        print(f"proframe: input error: {exc}", file=stderr)
        return EXIT_INPUT
    except ValueError as exc:
        if isinstance(exc, ProframeError):
            print(f"proframe: check failed: {exc}", file=stderr)
            return EXIT_FAIL
        print(f"proframe: input error: {exc}", file=stderr)
        return EXIT_INPUT
    except ProframeError as exc:
        print(f"proframe: check failed: {exc}", file=stderr)
        return EXIT_FAIL
    stdout.write(rep.to_json() if args.json else rep.to_markdown())
    return EXIT_OK if rep.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
