"""Command-line front end.

Exit codes: 0 proved/consistent/success, 1 refuted/violated, 2 unknown or
budget exhausted, 3 input error.  --json renders the result as a report
document (canonical JSON) that parses back through the document layer.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import documents as docs
from .algebras import tensor_extension
from .corpus import CASE_NAMES, corpus_root, export_corpus
from .descent import galois_decompose, induce, mu_split, restrict, twist
from .errors import BudgetExceeded, DocumentError, ModdegError
from .modrep import Module, end_algebra, hom_space, is_division, is_local, iso_test
from .orders import (
    deg_obstruct,
    enumerate_modules,
    f_invariant,
    generated_submodule,
    hom_order_cmp,
    riedtmann_search,
    riedtmann_verify,
    twist_closure_experiment,
    verify_ses,
    verify_vdeg_chain,
    RiedtmannWitness,
    ShortExactSequence,
    VdegChain,
)
from .suite import run_paper_suite
from .verdict import Verdict


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="emit a canonical JSON report document")
    common.add_argument("--seed", type=int, default=0,
                        help="64-bit seed for randomized strategies")
    common.add_argument("--trials", type=int, default=400,
                        help="trial budget for randomized strategies")
    common.add_argument("--strategy", default="auto",
                        choices=["exhaustive", "randomized", "symbolic",
                                 "auto"])
    p = argparse.ArgumentParser(
        prog="moddeg",
        description="Exact module degeneration / Hom-order / descent toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def cmd(name, **kw):
        return sub.add_parser(name, parents=[common], **kw)

    c = cmd("validate", help="parse and validate a document")
    c.add_argument("doc")

    for name in ("hom", "iso"):
        c = cmd(name, help=f"{name} of two modules")
        c.add_argument("left")
        c.add_argument("right")
        c.add_argument("--over", choices=["lambda", "gamma"], default="gamma")

    c = cmd("endo", help="endomorphism algebra of a module")
    c.add_argument("module")

    c = cmd("induce", help="scalar induction K (x) M")
    c.add_argument("module")
    c.add_argument("--tower", required=True)
    c.add_argument("-o", "--output")

    c = cmd("restrict", help="restriction of a Gamma-module")
    c.add_argument("module")
    c.add_argument("-o", "--output")

    c = cmd("twist", help="Galois twist of a Gamma-module")
    c.add_argument("module")
    c.add_argument("--phi", type=int, required=True)
    c.add_argument("-o", "--output")

    c = cmd("mu-split", help="multiplication map and its splitting")
    c.add_argument("module")

    c = cmd("galois-decompose", help="decompose K (x) M into twists")
    c.add_argument("module")

    c = cmd("f-inv", help="largest i-generated submodule dimension")
    c.add_argument("module")
    c.add_argument("--i", type=int, required=True)

    c = cmd("submodule", help="span of a generator tuple")
    c.add_argument("module")
    c.add_argument("--tuple", required=True, dest="tuple_",
                   help="vectors 'a,b,...;c,d,...'; entries 'c0' or 'c0|c1'")

    c = cmd("riedtmann-verify", help="verify a degeneration witness")
    c.add_argument("sequence")

    c = cmd("riedtmann-search", help="search for a degeneration witness")
    c.add_argument("left")
    c.add_argument("right")
    c.add_argument("--family", nargs="+", required=True)
    c.add_argument("--budget", type=int, default=10000)
    c.add_argument("-o", "--output")

    c = cmd("hom-cmp", help="Hom-order comparison against a family")
    c.add_argument("left")
    c.add_argument("right")
    c.add_argument("--family", nargs="+", required=True)

    c = cmd("deg-obstruct", help="degeneration obstruction battery")
    c.add_argument("left")
    c.add_argument("right")
    c.add_argument("--family", nargs="*", default=[])
    c.add_argument("--ext", nargs="*", default=[],
                   help="field documents for base-change f_i checks")
    c.add_argument("--f-range", default="1",
                   help="single i or inclusive range 'a:b'")

    c = cmd("enumerate", help="enumerate module structures over F_q")
    c.add_argument("algebra")
    c.add_argument("--dim", type=int, required=True)
    c.add_argument("--report-dir")

    c = cmd("twist-closure", help="twist stability experiment")
    c.add_argument("algebra")
    c.add_argument("--tower", required=True)
    c.add_argument("--dmax", type=int, required=True)
    c.add_argument("--report-dir")

    c = cmd("vdeg-chain", help="verify a virtual degeneration chain")
    c.add_argument("chain")

    c = cmd("paper-suite", help="run the bundled case suite")
    c.add_argument("--case", default="all",
                   choices=list(CASE_NAMES) + ["all"])
    c.add_argument("--corpus", help="corpus directory (default: bundled)")
    c.add_argument("--report-dir")

    c = cmd("export-corpus", help="materialize the bundled corpus")
    c.add_argument("directory")
    return p


class _Ctx:
    def __init__(self, args):
        self.args = args
        self.loader = docs.DocumentLoader()
        self.lines = []
        self.body = {}

    def load(self, path, want=None):
        obj = self.loader.load(path)
        if want is not None and not isinstance(obj, want):
            raise DocumentError(
                f"{path} holds {type(obj).__name__}, expected {want.__name__}")
        return obj

    def say(self, line):
        self.lines.append(line)

    def emit(self, code):
        self.body["exit_code"] = code
        if self.args.json:
            print(docs.canonical_dumps(docs.report_to_json(self.body)),
                  end="")
        else:
            for line in self.lines:
                print(line)
        return code


def _verdict_code(v):
    return {"proved": 0, "refuted": 1, "unknown": 2}[v.status]


def _verdict_body(v):
    out = {"status": v.status}
    if v.certificate is not None:
        out["certificate"] = _plain(v.certificate)
    if v.log:
        out["log"] = _plain(v.log)
    return out


def _plain(value):
    """Reduce arbitrary payloads to JSON-safe structures."""
    from .fields import FieldElem
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, FieldElem):
        return docs.elem_to_json(value)
    if isinstance(value, (int, bool, str)) or value is None:
        return value
    return repr(value)


def _maybe_restrict(ctx, mod, over):
    if over == "lambda":
        return restrict(mod)
    return mod


def _write_module(ctx, mod, output):
    doc = docs.module_to_json(mod)
    if output:
        docs.write_document(output, doc)
        ctx.say(f"wrote {output}")
    elif not ctx.args.json:
        print(docs.canonical_dumps(doc), end="")
    ctx.body["module"] = {"dim": mod.dim, "name": mod.name}


def run(args):
    ctx = _Ctx(args)
    cmd = args.command

    if cmd == "validate":
        obj = ctx.load(args.doc)
        ctx.say(f"valid {type(obj).__name__}")
        ctx.body["valid"] = True
        ctx.body["type"] = type(obj).__name__
        return ctx.emit(0)

    if cmd == "hom":
        left = _maybe_restrict(ctx, ctx.load(args.left, Module), args.over)
        right = _maybe_restrict(ctx, ctx.load(args.right, Module), args.over)
        h = hom_space(left, right)
        ctx.say(f"k_dim {h.k_dim}" + (
            f", K_dim {h.K_dim}" if h.K_dim is not None else ""))
        ctx.body.update({"k_dim": h.k_dim, "K_dim": h.K_dim})
        return ctx.emit(0)

    if cmd == "iso":
        left = _maybe_restrict(ctx, ctx.load(args.left, Module), args.over)
        right = _maybe_restrict(ctx, ctx.load(args.right, Module), args.over)
        v = iso_test(left, right, strategy=args.strategy, seed=args.seed,
                     trials=args.trials)
        ctx.say(v.describe())
        ctx.body["verdict"] = _verdict_body(v)
        return ctx.emit(_verdict_code(v))

    if cmd == "endo":
        mod = ctx.load(args.module, Module)
        e, homs = end_algebra(mod)
        div = is_division(e, strategy=args.strategy, seed=args.seed)
        loc = is_local(e, strategy=args.strategy, seed=args.seed)
        ctx.say(f"End dimension {e.dim}")
        ctx.say(f"division: {div.describe()}")
        ctx.say(f"local: {loc.describe()}")
        ctx.body.update({"dim": e.dim, "division": _verdict_body(div),
                         "local": _verdict_body(loc)})
        return ctx.emit(0)

    if cmd == "induce":
        mod = ctx.load(args.module, Module)
        tower = ctx.load(args.tower)
        out = induce(tower, mod)
        ctx.say(f"induced module of dimension {out.dim}")
        _write_module(ctx, out, args.output)
        return ctx.emit(0)

    if cmd == "restrict":
        mod = ctx.load(args.module, Module)
        out = restrict(mod)
        ctx.say(f"restricted module of dimension {out.dim}")
        _write_module(ctx, out, args.output)
        return ctx.emit(0)

    if cmd == "twist":
        mod = ctx.load(args.module, Module)
        out, _ = twist(mod, args.phi)
        ctx.say(f"twisted module of dimension {out.dim}")
        _write_module(ctx, out, args.output)
        return ctx.emit(0)

    if cmd == "mu-split":
        mod = ctx.load(args.module, Module)
        w = mu_split(mod)
        ctx.say(f"mu is surjective onto dimension {mod.dim}; "
                f"nu splits it (mu . nu = id)")
        ctx.body.update({"dim": mod.dim, "induced_dim": w.induced.dim,
                         "verified": True})
        return ctx.emit(0)

    if cmd == "galois-decompose":
        mod = ctx.load(args.module, Module)
        dec = galois_decompose(mod)
        ctx.say(f"K (x) M splits into {len(dec.summands)} twists, "
                f"assembled map invertible")
        ctx.body.update({
            "summands": [s.name or f"twist{i}"
                         for i, s in enumerate(dec.summands)],
            "induced_dim": dec.induced.dim,
        })
        return ctx.emit(0)

    if cmd == "f-inv":
        mod = ctx.load(args.module, Module)
        strategy = args.strategy if args.strategy != "auto" else "auto"
        r = f_invariant(mod, args.i, strategy=strategy, seed=args.seed,
                        trials=args.trials)
        note = f" ({r.note})" if r.note else ""
        ctx.say(f"f_{args.i} = {r.value} [{r.certainty}, {r.strategy}]{note}")
        ctx.body.update({"i": args.i, "value": r.value,
                         "certainty": r.certainty, "strategy": r.strategy,
                         "note": r.note})
        return ctx.emit(0)

    if cmd == "submodule":
        mod = ctx.load(args.module, Module)
        vectors = _parse_tuple(mod, args.tuple_)
        span = generated_submodule(mod, vectors)
        ctx.say(f"span dimension {span.span_dim} "
                f"(matrix {span.phi_matrix.rows}x{span.phi_matrix.cols})")
        ctx.body.update({"span_dim": span.span_dim,
                         "generators": len(vectors)})
        return ctx.emit(0)

    if cmd == "riedtmann-verify":
        seq = ctx.load(args.sequence)
        if isinstance(seq, RiedtmannWitness):
            v = riedtmann_verify(seq)
        elif isinstance(seq, ShortExactSequence):
            v = verify_ses(seq)
        else:
            raise DocumentError("expected a riedtmann or ses sequence")
        ctx.say(v.describe())
        ctx.body["verdict"] = _verdict_body(v)
        return ctx.emit(_verdict_code(v))

    if cmd == "riedtmann-search":
        left = ctx.load(args.left, Module)
        right = ctx.load(args.right, Module)
        family = _family(ctx, args.family)
        v = riedtmann_search(left, right, family, budget=args.budget,
                             seed=args.seed)
        ctx.say(v.describe())
        ctx.body["verdict"] = _verdict_body(v)
        if v.is_proved and args.output:
            docs.write_document(args.output,
                                docs.riedtmann_to_json(v.witness))
            ctx.say(f"wrote {args.output}")
        return ctx.emit(_verdict_code(v))

    if cmd == "hom-cmp":
        left = ctx.load(args.left, Module)
        right = ctx.load(args.right, Module)
        family = _family(ctx, args.family)
        rep = hom_order_cmp(left, right, family)
        for row in rep.rows:
            ctx.say(f"{row.probe_name}: [X,M]={row.into_m} [X,N]={row.into_n}"
                    f" [M,X]={row.from_m} [N,X]={row.from_n}"
                    + ("  <- violated" if row.violated else ""))
        ctx.say(rep.verdict)
        ctx.body.update({
            "verdict": rep.verdict,
            "witness_probe": rep.witness_probe,
            "rows": [{"probe": r.probe_name, "into": [r.into_m, r.into_n],
                      "from": [r.from_m, r.from_n]} for r in rep.rows],
        })
        return ctx.emit(1 if rep.is_violated else 0)

    if cmd == "deg-obstruct":
        left = ctx.load(args.left, Module)
        right = ctx.load(args.right, Module)
        family = _family(ctx, args.family) if args.family else []
        towers = [ctx.load(t) for t in args.ext]
        f_range = _parse_range(args.f_range)
        rep = deg_obstruct(left, right, family=family, f_range=f_range,
                           extensions=towers, seed=args.seed)
        for check in rep.checks:
            ctx.say(f"{check.name}: {check.status} {_plain(check.data)}")
        ctx.say(rep.overall)
        ctx.body.update({
            "overall": rep.overall,
            "certificate": _plain(rep.certificate),
            "checks": [{"name": c.name, "status": c.status,
                        "data": _plain(c.data)} for c in rep.checks],
        })
        return ctx.emit(1 if rep.is_refuted else 0)

    if cmd == "enumerate":
        alg = ctx.load(args.algebra)
        space = enumerate_modules(alg, args.dim)
        ctx.say(f"{space.total_structures} structures, "
                f"{len(space.classes)} classes")
        for idx, cls in enumerate(space.classes):
            ctx.say(f"  class {idx}: size {cls.size}")
        ctx.body.update({
            "dim": args.dim,
            "total_structures": space.total_structures,
            "classes": [{"size": c.size, "dim": c.module.dim}
                        for c in space.classes],
        })
        if args.report_dir:
            from .viz import enumeration_report
            for path in enumeration_report(space, args.report_dir):
                ctx.say(f"wrote {path}")
        return ctx.emit(0)

    if cmd == "twist-closure":
        alg = ctx.load(args.algebra)
        tower = ctx.load(args.tower)
        rep = twist_closure_experiment(tower, alg, args.dmax)
        ctx.say(f"twist stable: {rep.twist_stable}"
                + (f" (unstable: {rep.unstable_class})"
                   if not rep.twist_stable else ""))
        ctx.say(f"base iso classes match: {rep.lambda_iso_equals_gamma_iso}")
        ctx.say(f"hypothesis consistent: {rep.hypothesis_consistent}")
        ctx.say(f"hom orders match: {rep.hom_order_match}")
        ctx.say(f"hom identity (restriction): {rep.hom_identity_lambda_gamma}")
        ctx.say(f"hom identity (base change): {rep.hom_identity_base_change}")
        ctx.body.update({
            "twist_stable": rep.twist_stable,
            "unstable_class": rep.unstable_class,
            "iso_classes_match": rep.lambda_iso_equals_gamma_iso,
            "hypothesis_consistent": rep.hypothesis_consistent,
            "hom_order_match": rep.hom_order_match,
            "hom_identity_lambda_gamma": rep.hom_identity_lambda_gamma,
            "hom_identity_base_change": rep.hom_identity_base_change,
            "spaces": [{"dim": s.dim, "classes": len(s.classes),
                        "structures": s.total_structures}
                       for s in rep.spaces],
        })
        if args.report_dir:
            from .viz import twist_closure_report
            for path in twist_closure_report(rep, args.report_dir):
                ctx.say(f"wrote {path}")
        return ctx.emit(0)

    if cmd == "vdeg-chain":
        chain = ctx.load(args.chain)
        if not isinstance(chain, VdegChain):
            raise DocumentError("expected a vdeg_chain sequence document")
        v = verify_vdeg_chain(chain)
        ctx.say(v.describe())
        ctx.body["verdict"] = _verdict_body(v)
        return ctx.emit(_verdict_code(v))

    if cmd == "paper-suite":
        rep = run_paper_suite(case=args.case, root=args.corpus,
                              seed=args.seed)
        for case, checks in rep.cases.items():
            for c in checks:
                mark = "PASS" if c.passed else "FAIL"
                ctx.say(f"{mark} {case}.{c.name} "
                        f"[{c.basis}] expected {c.expected}, got {c.actual}")
        ctx.say("all passed" if rep.all_passed else "failures present")
        ctx.body.update(rep.to_body())
        if args.report_dir:
            from .viz import suite_report
            for path in suite_report(rep, args.report_dir):
                ctx.say(f"wrote {path}")
        return ctx.emit(0 if rep.all_passed else 1)

    if cmd == "export-corpus":
        paths = export_corpus(args.directory)
        for path in paths:
            ctx.say(f"wrote {path}")
        ctx.body["cases"] = paths
        return ctx.emit(0)

    raise DocumentError(f"unknown command {cmd}")  # pragma: no cover


def _family(ctx, paths):
    return [ctx.load(p, Module) for p in paths]


def _parse_tuple(mod, text):
    field = mod.algebra.field
    vectors = []
    for part in text.split(";"):
        entries = []
        for token in part.split(","):
            token = token.strip()
            entries.append(field.from_coeffs(token.split("|")))
        if len(entries) != mod.dim:
            raise DocumentError(
                f"tuple vector needs {mod.dim} entries, got {len(entries)}")
        vectors.append(entries)
    return vectors


def _parse_range(text):
    if ":" in text:
        lo, hi = text.split(":", 1)
        return tuple(range(int(lo), int(hi) + 1))
    return (int(text),)


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors; the exit contract reserves
        # 2 for unknown/budget, so usage problems map to input error 3
        return 0 if exc.code == 0 else 3
    try:
        return run(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 2
    except ModdegError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
