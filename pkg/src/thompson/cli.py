"""Command-line front end: ``thompson <subcommand> ...``.

Exit status is 0 on success, 1 when the computation fails on valid input
(for instance no balanced form within the caret cap), and 2 on usage or
parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter

from . import diagram as dg
from . import metric, rewrite, torsion
from .dyadic import Dyadic, evaluate, parse_dyadic
from .rewrite import Word, WordSyntaxError, parse_word
from .tree import TreeSyntaxError

DEFAULT_RADIUS = 8
DEFAULT_CAP = 4096
DEFAULT_MAX_ORDER = 64


class UsageError(Exception):
    pass


class DomainError(Exception):
    pass


def _word(text: str) -> Word:
    return parse_word(text)


def _element(text: str) -> dg.MarkedPair:
    """A word, or a diagram given as JSON ``{"source": .., "target": .., "mark": ..}``."""
    if text.lstrip().startswith("{"):
        try:
            return dg.reduce(dg.from_json(text))
        except TreeSyntaxError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"bad diagram JSON: {exc}") from None
    return dg.word_to_diagram(_word(text))


def _nf_text(f) -> str:
    return str(f) or "1"


def _frac(d: Dyadic) -> str:
    return str(d.num) if d.exp == 0 else f"{d.num}/{1 << d.exp}"


def _emit_element(g: dg.MarkedPair, fmt: str) -> str:
    f = dg.pcq_factorization(g)
    if fmt == "dot":
        return dg.to_dot(g)
    if fmt == "json":
        return json.dumps({"normal_form": str(f), "diagram": json.loads(dg.to_json(g))})
    return _nf_text(f)


# ---------------------------------------------------------------- subcommands


def cmd_nf(args) -> str:
    w = _word(args.word)
    if not args.verify:
        return _emit_element(dg.word_to_diagram(w), args.format)
    rep = rewrite.verify_normal_form(w)
    if args.format == "json":
        out = json.dumps(
            {
                "normal_form": str(rep.geometric),
                "algebraic": str(rep.algebraic),
                "algebraic_fell_back": rep.algebraic_fell_back,
                "plmap_agree": rep.plmap_agree,
                "agree": rep.agree,
            }
        )
    else:
        out = "\n".join(
            [
                _nf_text(rep.geometric),
                f"algebraic: {_nf_text(rep.algebraic)}" + (" (fell back)" if rep.algebraic_fell_back else ""),
                f"plmap: {'agree' if rep.plmap_agree else 'DISAGREE'}",
                "verified" if rep.agree else "MISMATCH",
            ]
        )
    if not rep.agree:
        print(out)
        raise DomainError("normal form pipelines disagree")
    return out


def cmd_mul(args) -> str:
    g = dg.identity()
    for text in args.words:
        g = dg.multiply(g, _element(text))
    return _emit_element(g, args.format)


def cmd_inv(args) -> str:
    return _emit_element(dg.invert(_element(args.word)), args.format)


def cmd_eq(args) -> str:
    same = dg.equals(_element(args.left), _element(args.right))
    return json.dumps(same) if args.format == "json" else ("true" if same else "false")


def cmd_len(args) -> str:
    gens = _gens(args.gens)
    g = _element(args.word)
    n = g.n_carets
    d = metric.D(g)
    length = metric.bfs_length(g, gens, args.radius, jobs=args.jobs)
    if args.format == "json":
        return json.dumps({"N": n, "D": d, "length": length, "radius": args.radius, "gens": gens.name})
    shown = f">{args.radius}" if length is None else str(length)
    return f"N={n} D={d} length={shown}"


def _gens(name) -> metric.GenSet:
    try:
        return metric.gen_set(name)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_distortion(args) -> str:
    tg = _gens(args.tgens)
    try:
        rep = metric.distortion_report(args.radius, tg, jobs=args.jobs)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    if args.format == "csv":
        return rep.to_csv().rstrip("\n")
    summary = {"radius": rep.radius, "tgens": rep.tgens, "elements": len(rep.rows),
               "violations": rep.violations(), "max_ratios": rep.max_ratios()}
    if args.format == "json":
        summary["rows"] = [dict(zip(("word", "lenF", "lenT", "N", "D"), r)) for r in rep.rows]
        return json.dumps(summary)
    lines = [f"F-ball of radius {rep.radius}: {len(rep.rows)} elements, T-length over {rep.tgens}"]
    lines += [f"violations {k}: {v}" for k, v in summary["violations"].items()]
    lines += [f"max {k}: {v:.4g}" for k, v in summary["max_ratios"].items()]
    return "\n".join(lines)


def cmd_rotation(args) -> str:
    try:
        rep = metric.rotation_qie_report(args.max_n, args.radius, _gens(args.gens), jobs=args.jobs)
    except ValueError as exc:
        raise DomainError(str(exc)) from None
    if args.format == "json":
        keys = ("a", "n", "two_adic", "carets", "bfs_len")
        return json.dumps({"carets_match": rep.carets_match, "rows": [dict(zip(keys, r)) for r in rep.rows]})
    if args.format == "text":
        return "\n".join(
            f"{a}/2^{n}: two_adic={d} carets={c} length={'>' + str(rep.radius) if b is None else b}"
            for a, n, d, c, b in rep.rows
        )
    return rep.to_csv().rstrip("\n")


def cmd_order(args) -> str:
    m = torsion.order(_element(args.word), args.max_order)
    if args.format == "json":
        return json.dumps({"order": m, "bound": args.max_order})
    return f">{args.max_order}" if m is None else str(m)


def cmd_balanced(args) -> str:
    bal = torsion.balanced_form(_element(args.word), args.cap)
    if bal is None:
        raise DomainError(f"no balanced diagram within {args.cap} carets")
    if args.format == "dot":
        return dg.to_dot(bal.diagram())
    if args.format == "json":
        return json.dumps({"tree": str(bal.tree), "shift": bal.shift, "order": bal.order})
    return f"tree={bal.tree} shift={bal.shift} order={bal.order}"


def cmd_conjugator(args) -> str:
    hit = torsion.conjugator(_element(args.word), args.cap)
    if hit is None:
        raise DomainError(f"no balanced diagram within {args.cap} carets")
    p, i, j = hit
    if args.format == "json":
        return json.dumps({"p": str(p), "i": i, "j": j})
    if j == 0:
        return "1"
    c = Word([("c", i, j)])
    return " ".join(s for s in (str(p), str(c), str(p.inverse())) if s)


def cmd_eval(args) -> str:
    try:
        t = parse_dyadic(args.point)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    y = evaluate(dg.to_plmap(_element(args.word)), t)
    return json.dumps(_frac(y)) if args.format == "json" else _frac(y)


def cmd_render(args) -> str:
    g = _element(args.word)
    if args.format == "json":
        return dg.to_json(g)
    if args.format == "text":
        return str(g)
    return dg.to_dot(g)


def cmd_selfcheck(args) -> str:
    results = rewrite.check_relators(rewrite.finite_relators() + rewrite.infinite_relators(args.max_index))
    total, passed = Counter(), Counter()
    for r in results:
        family = "finite" if r.name.startswith("F") else r.name.split()[0]
        total[family] += 1
        passed[family] += r.ok
    failed = [r for r in results if not r.ok]
    if args.format == "json":
        out = json.dumps({"families": {k: [passed[k], total[k]] for k in total},
                          "failed": [r.name for r in failed]})
    else:
        lines = [f"{k}: {passed[k]}/{total[k]} pass" for k in total]
        lines += [f"FAIL {r.name}: {r.lhs} = {r.rhs or '1'}" for r in failed]
        lines.append("all relators pass" if not failed else f"{len(failed)} relators fail")
        out = "\n".join(lines)
    if failed:
        print(out)
        raise DomainError("presentation self-check failed")
    return out


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="thompson", description="Normal forms, metrics and torsion in Thompson's groups F and T.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add(name, func, help, formats=("text", "json"), default=None):
        p = sub.add_parser(name, help=help)
        p.add_argument("--format", choices=formats, default=default or formats[0])
        p.set_defaults(func=func)
        return p

    p = add("nf", cmd_nf, "normal form of a word", ("text", "json", "dot"))
    p.add_argument("word")
    p.add_argument("--verify", action="store_true", help="also run the algebraic pipeline and the PL-map oracle")

    p = add("mul", cmd_mul, "normal form of a product", ("text", "json", "dot"))
    p.add_argument("words", nargs="+")

    p = add("inv", cmd_inv, "normal form of an inverse", ("text", "json", "dot"))
    p.add_argument("word")

    p = add("eq", cmd_eq, "do two words give the same element")
    p.add_argument("left")
    p.add_argument("right")

    def add_bfs(p):
        p.add_argument("--radius", type=int, default=DEFAULT_RADIUS)
        p.add_argument("--jobs", type=int, default=1, help="BFS worker processes (output does not depend on it)")

    p = add("len", cmd_len, "caret count, D and exact word length")
    p.add_argument("word")
    p.add_argument("--gens", default="x0x1c1", help="x0x1, x0x1c1 or x0x1c0")
    add_bfs(p)

    p = add("distortion", cmd_distortion, "F-length against T-length on an F-ball", ("csv", "text", "json"))
    p.add_argument("--tgens", default="x0x1c1")
    add_bfs(p)

    p = add("rotation", cmd_rotation, "carets, 2-adic size and length of pure rotations", ("csv", "text", "json"))
    p.add_argument("--max-n", type=int, default=6)
    p.add_argument("--gens", default="x0x1c0")
    add_bfs(p)

    p = add("order", cmd_order, "order of an element")
    p.add_argument("word")
    p.add_argument("--max-order", type=int, default=DEFAULT_MAX_ORDER)

    p = add("balanced", cmd_balanced, "diagram with equal source and target trees", ("text", "json", "dot"))
    p.add_argument("word")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)

    p = add("conjugator", cmd_conjugator, "write a torsion element as p c_i^j p^-1")
    p.add_argument("word")
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)

    p = add("eval", cmd_eval, "image of a dyadic point")
    p.add_argument("word")
    p.add_argument("point")

    p = add("render", cmd_render, "draw the reduced diagram", ("dot", "json", "text"))
    p.add_argument("word")

    p = add("selfcheck", cmd_selfcheck, "check the relators of both presentations")
    p.add_argument("--max-index", type=int, default=8)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    if getattr(args, "max_order", 1) < 1 or getattr(args, "radius", 0) < 0 or getattr(args, "jobs", 1) < 1:
        ap.error("--max-order and --jobs must be positive and --radius non-negative")
    try:
        out = args.func(args)
    except (WordSyntaxError, TreeSyntaxError, UsageError) as exc:
        print(f"thompson {args.command}: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"thompson {args.command}: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
