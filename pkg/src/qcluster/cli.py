"""Command-line front end.

    qcluster gr init -k 3 -n 6 [--xi 1] [-o seed.json]
    qcluster mutate seed.json 0 D(1,3,5) ... [-o out.json]
    qcluster enumerate -k 3 -n 6
    qcluster check compat|scott|relations|quasihom|braid -k 3 -n 6 [--sigma 1]
    qcluster braid apply "s1 s2 s1" "D(1,4,5)" -k 3 -n 6
    qcluster braid table -k 3 -n 6 --sigma 1 [--inverse]
    qcluster accept [--only scott sigma-tables] [--optional]

Every command that checks something exits with status 0 iff all checks pass.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Sequence

from .errors import QClusterError
from .report import Report

__all__ = ["main", "build_parser"]


def _fmt(args) -> str:
    return getattr(args, "format", "table")


def _emit_report(rep: Report, args) -> int:
    print(rep.to_json() if _fmt(args) == "json" else rep.to_table())
    return 0 if rep.passed else 1


def _add_kn(p: argparse.ArgumentParser, required: bool = True) -> None:
    p.add_argument("-k", type=int, required=required)
    p.add_argument("-n", type=int, required=required)


def _add_common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["table", "json"], default="table")
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--jobs", type=int, default=1)


# ---------------------------------------------------------------------------
# commands


def cmd_gr_init(args) -> int:
    from .grassmann import rectangles_seed, x_i_seed
    from .qseed import dump_seed, seed_to_dict

    seed = x_i_seed(args.k, args.n, args.xi) if args.xi else rectangles_seed(args.k, args.n)
    if args.output:
        dump_seed(seed, args.output)
    else:
        print(json.dumps(seed_to_dict(seed), indent=1))
    return 0


def _direction(seed, token: str) -> int:
    if token.lstrip("-").isdigit():
        return int(token)
    try:
        return seed.index(token)
    except ValueError:
        raise QClusterError(f"no variable labeled {token!r} in the seed") from None


def cmd_mutate(args) -> int:
    from .grassmann import label_by_values, plucker_values, random_sample, rectangles_seed, subset_str
    from .qseed import dump_seed, load_seed, mutate, seed_to_dict

    seed = load_seed(args.seed)
    k, n = seed.meta.get("k"), seed.meta.get("n")
    labeler = None
    if k and n and "cells" in seed.meta:
        # frames of Grassmannian seeds are written over the rectangles cluster
        root = rectangles_seed(k, n).meta["subsets"]
        values = plucker_values(random_sample(random.Random(args.rng_seed), k, n, -1000, 1000, True), k, n)
        frame_values = [values[I] for I in root]
        labeler = lambda x: label_by_values(x, frame_values, values)  # noqa: E731
    for tok in args.directions:
        r = _direction(seed, tok)
        new = mutate(seed, r)
        J = labeler(new.frame[r]) if labeler else None
        if J is not None:
            new = mutate(seed, r, label=subset_str(J))
            if "subsets" in new.meta:
                subs = list(new.meta["subsets"])
                subs[r] = J
                new.meta["subsets"] = tuple(subs)
        print(f"mutate at {r} ({seed.labels[r]}): new variable {new.labels[r]} = {new.frame[r]}")
        seed = new
    if args.output:
        dump_seed(seed, args.output)
    elif not args.quiet:
        print(json.dumps(seed_to_dict(seed), indent=1))
    return 0


def cmd_enumerate(args) -> int:
    from .atlas import GrassmannAtlas, symbol_str

    atlas = GrassmannAtlas(args.k, args.n, max_seeds=args.bound)
    out = {
        "k": args.k,
        "n": args.n,
        "clusters": atlas.n_clusters,
        "mutable_variables": sorted(symbol_str(s) for s in atlas.mutable_labels()),
    }
    if args.verbose:
        out["torus_forms"] = {symbol_str(s): str(x) for s, x in atlas.var.items()}
    if _fmt(args) == "json":
        print(json.dumps(out, indent=2))
    else:
        print(f"Gr({args.k},{args.n}): {out['clusters']} clusters, {len(out['mutable_variables'])} mutable variables")
        for s in out["mutable_variables"]:
            line = s
            if args.verbose:
                line += "\t" + out["torus_forms"][s]
            print(line)
    return 0


def cmd_check(args) -> int:
    what = args.what
    if what == "compat":
        return _check_compat(args)
    if what == "scott":
        return _emit_report(_check_scott(args.k, args.n), args)
    if what == "relations":
        return _emit_report(_check_relations(args), args)
    if what == "quasihom":
        from .braid import check_sigma_quasi_hom

        return _emit_report(check_sigma_quasi_hom(args.k, args.n, args.sigma or 1), args)
    if what == "braid":
        from .braid import verify_braid_relations

        return _emit_report(verify_braid_relations(args.k, args.n, jobs=args.jobs), args)
    raise QClusterError(f"unknown check {what!r}")


def _check_compat(args) -> int:
    from .qseed import compatibility_diagonal, load_seed

    rep = Report("compatible pair")
    if args.seed:
        seed = load_seed(args.seed)
        try:
            d = compatibility_diagonal(seed.btilde, seed.lam.rows)
            rep.add(args.seed, True, {"D": list(d)})
        except QClusterError as exc:
            rep.add(args.seed, False, str(exc))
    else:
        from .atlas import GrassmannAtlas

        atlas = GrassmannAtlas(args.k, args.n, max_seeds=args.bound)
        bad = []
        for s in atlas.graph.seeds.values():
            try:
                compatibility_diagonal(s.btilde, s.lam.rows)
            except QClusterError as exc:
                bad.append(str(exc))
        rep.add(f"all {atlas.n_clusters} seeds of Gr({args.k},{args.n})", not bad, bad[:5] or None)
    return _emit_report(rep, args)


def _check_scott(k: int, n: int) -> Report:
    from .atlas import symbol_str
    from .grassmann import ksubsets, scott_lambda, weakly_separated
    from .qmatrix import algebra

    rep = Report(f"weak separation vs quantum-matrix commutation in Gr({k},{n})")
    alg = algebra(k, n)
    for I in ksubsets(k, n):
        for J in ksubsets(k, n):
            if I >= J:
                continue
            c = alg.quasi_commutation_exponent(I, J)
            ws = weakly_separated(I, J)
            ok = (c is not None) == ws and (not ws or c == scott_lambda(I, J))
            rep.add(f"{symbol_str(I)},{symbol_str(J)}", ok, {"oracle": c, "weakly_separated": ws}, "scott")
    return rep


def _check_relations(args) -> Report:
    from .atlas import get_atlas
    from .braid import verify_preservation

    atlas = get_atlas(args.k, args.n)
    rels = atlas.exchange_relations() + atlas.scott_relations() + atlas.quasi_commutation_relations()
    if not args.sigma:
        return atlas.verify_relations(rels)
    sign = -1 if args.inverse else 1
    return verify_preservation(args.k, args.n, args.sigma, rels, sign=sign, jobs=args.jobs)


def cmd_braid_apply(args) -> int:
    from .braid import apply_sigma

    print(apply_sigma(args.word, args.expression, args.k, args.n))
    return 0


def cmd_braid_table(args) -> int:
    from .braid import sigma_table

    table = sigma_table(args.k, args.n, args.sigma, -1 if args.inverse else 1)
    name = f"s{args.sigma}" + ("^-1" if args.inverse else "")
    if _fmt(args) == "json":
        print(json.dumps({"generator": name, "images": dict(table.rows()), "stats": table.stats}, indent=2))
    else:
        print(f"x\t{name}(x)")
        for a, b in table.rows():
            print(f"{a}\t{b}")
    return 0


def cmd_accept(args) -> int:
    from .acceptance import run_all

    results = run_all(args.only, include_optional=args.optional)
    if _fmt(args) == "json":
        print(json.dumps([r.to_dict() for r in results], indent=2))
    else:
        for r in results:
            print(r.line())
        print(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    return 0 if all(r.passed for r in results) else 1


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qcluster", description="Quantum cluster algebra toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    gr = sub.add_parser("gr", help="Grassmannian seeds")
    gr_sub = gr.add_subparsers(dest="gr_command", required=True)
    init = gr_sub.add_parser("init", help="write the rectangles seed or x(i)")
    _add_kn(init)
    init.add_argument("--xi", type=int, default=0, help="build x(i) instead of the rectangles seed")
    init.add_argument("-o", "--output")
    init.set_defaults(func=cmd_gr_init)

    mut = sub.add_parser("mutate", help="mutate a seed file")
    mut.add_argument("seed")
    mut.add_argument("directions", nargs="*", help="0-based indices or variable labels")
    mut.add_argument("-o", "--output")
    mut.add_argument("-q", "--quiet", action="store_true")
    _add_common(mut)
    mut.set_defaults(func=cmd_mutate)

    en = sub.add_parser("enumerate", help="enumerate the exchange graph of Gr(k,n)")
    _add_kn(en)
    en.add_argument("--bound", type=int, default=10_000)
    en.add_argument("-v", "--verbose", action="store_true")
    _add_common(en)
    en.set_defaults(func=cmd_enumerate)

    ch = sub.add_parser("check", help="run a verification")
    ch.add_argument("what", choices=["compat", "scott", "relations", "quasihom", "braid"])
    _add_kn(ch, required=False)
    ch.add_argument("--seed", help="seed file (compat)")
    ch.add_argument("--sigma", type=int, default=0, help="braid generator index")
    ch.add_argument("--inverse", action="store_true")
    ch.add_argument("--bound", type=int, default=10_000)
    _add_common(ch)
    ch.set_defaults(func=cmd_check)

    br = sub.add_parser("braid", help="braid group action")
    br_sub = br.add_subparsers(dest="braid_command", required=True)
    ap = br_sub.add_parser("apply", help="apply a braid word to an expression")
    ap.add_argument("word", help='e.g. "s1 s2 s1^-1"; the rightmost generator acts first')
    ap.add_argument("expression", help='e.g. "D(1,4,5)" or "q*[D(1,2,3) D(2,3,4)^-1]"')
    _add_kn(ap)
    ap.set_defaults(func=cmd_braid_apply)
    tb = br_sub.add_parser("table", help="print the images of all cluster variables")
    _add_kn(tb)
    tb.add_argument("--sigma", type=int, required=True)
    tb.add_argument("--inverse", action="store_true")
    _add_common(tb)
    tb.set_defaults(func=cmd_braid_table)

    ac = sub.add_parser("accept", help="run the acceptance suite")
    ac.add_argument("--only", nargs="*", help="criterion keys or numbers")
    ac.add_argument("--optional", action="store_true", help="include long-running optional criteria")
    _add_common(ac)
    ac.set_defaults(func=cmd_accept)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "check" and args.what != "compat" and (args.k is None or args.n is None):
        parser.error("check needs -k and -n")
    if args.command == "check" and args.what == "compat" and not args.seed and (args.k is None or args.n is None):
        parser.error("check compat needs --seed or -k and -n")
    try:
        return args.func(args)
    except QClusterError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
