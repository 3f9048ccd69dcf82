"""Command-line front end.

Exit codes: 0 success, 1 a verification failed, 2 bad input or usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from typing import List, Optional

from . import artheory, tquiver
from .algebra import AlgebraError, load_algebra, simple
from .catalog import local_frobenius
from .exactcore import FieldError
from .grothform import GrothError, IsoRegistry, dual_matrix
from .lengthsolver import LengthError, ProfileProblem, named_boundary, solution_ls, solve_profile
from .rep import DecompositionError, Representation, RepresentationError, decompose, structure_ops, syzygy
from .smash import SmashError, load_action, smash_construct

MAX_DEPTH = artheory.MAX_DEPTH
MAX_DIM = artheory.MAX_NODE_DIM
MAX_WINDOW = 12
MAX_LMAX = 4096


class InputError(Exception):
    pass


class VerificationFailure(Exception):
    pass


INPUT_ERRORS = (
    InputError,
    AlgebraError,
    FieldError,
    RepresentationError,
    SmashError,
    LengthError,
    tquiver.TQError,
    GrothError,
    FileNotFoundError,
    json.JSONDecodeError,
    KeyError,
)


# -- helpers --------------------------------------------------------------------


def _default_seed() -> int:
    raw = os.environ.get("ARQ_SEED")
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"ARQ_SEED must be an integer, got {raw!r}") from None


def _frobenius(alg, frob):
    if frob is not None:
        return frob
    if len(alg.quiver.vertices) == 1:
        return local_frobenius(alg)
    raise InputError("algebra file has no \"frobenius\" functional and the algebra is not local")


def _load_rep(path: str, params: List[str]):
    with open(path) as fh:
        data = json.load(fh)
    if "algebra" not in data:
        raise InputError(f"{path}: representation file names no algebra")
    alg_path = os.path.join(os.path.dirname(os.path.abspath(path)), data["algebra"])
    alg, frob = load_algebra(alg_path)
    values = {}
    for item in params or []:
        if "=" not in item:
            raise InputError(f"parameter {item!r} is not NAME=VALUE")
        k, v = item.split("=", 1)
        values[k] = v
    return Representation.from_json(alg, data, values), frob


def _emit(args, text: str, payload=None, rows=None, header=None) -> None:
    fmt = args.format
    if fmt == "json" and payload is not None:
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif fmt == "csv" and rows is not None:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        if header:
            w.writerow(header)
        w.writerows(rows)
        sys.stdout.write(buf.getvalue())
    else:
        print(text)


def _dims(m: Representation) -> str:
    return "(" + ",".join(str(d) for d in m.dim_vector) + ")"


def _check_caps(args) -> None:
    if getattr(args, "depth", None) is not None and not 0 <= args.depth <= MAX_DEPTH:
        raise InputError(f"--depth must be in 0..{MAX_DEPTH}")
    if getattr(args, "max_dim", None) is not None and not 1 <= args.max_dim <= MAX_DIM:
        raise InputError(f"--max-dim must be in 1..{MAX_DIM}")


# -- subcommands ----------------------------------------------------------------


def cmd_algebra_check(args) -> int:
    alg, frob = load_algebra(args.file)
    info = {
        "field": str(alg.field),
        "vertices": list(alg.quiver.vertices),
        "arrows": [a.name for a in alg.quiver.arrows],
        "dimension": alg.dim,
        "relations": len(alg.relations),
        "frobenius": frob is not None,
    }
    if frob is not None:
        ident = alg.field.equal(frob.nu.matrix, alg.field.eye(alg.dim))
        info["symmetric_form"] = bool(ident)
    lines = [f"{k}: {v}" for k, v in info.items()]
    _emit(args, "\n".join(lines), info)
    return 0


def cmd_rep_ops(args) -> int:
    m, _ = _load_rep(args.file, args.param)
    ops = structure_ops(m)
    wanted = [s.strip() for s in args.show.split(",") if s.strip()]
    names = {"rad": "radical", "soc": "socle", "top": "top", "len": "length"}
    out = {}
    for w in wanted:
        if w not in names:
            raise InputError(f"unknown --show item {w!r}; use rad,soc,top,len")
        val = ops[names[w]]
        out[w] = val if isinstance(val, int) else list(val.dim_vector)
    text = "\n".join(f"{k}: {v}" for k, v in out.items())
    _emit(args, text, out, [[k, v] for k, v in out.items()], ["op", "value"])
    return 0


def cmd_rep_syzygy(args) -> int:
    m, _ = _load_rep(args.file, args.param)
    if args.n < 0:
        raise InputError("-n must be non-negative")
    rows, cur = [], m
    for k in range(args.n + 1):
        rows.append([k, _dims(cur)])
        if k < args.n:
            cur = syzygy(cur)
    payload = {"steps": [{"k": k, "dim_vector": d} for k, d in rows], "module": cur.to_json()}
    _emit(args, "\n".join(f"Omega^{k}: {d}" for k, d in rows), payload, rows, ["k", "dim_vector"])
    return 0


def cmd_ar_tau(args) -> int:
    m, frob = _load_rep(args.file, args.param)
    t = artheory.tau(m, _frobenius(m.alg, frob))
    _emit(args, f"tau M: {_dims(t)}", {"dim_vector": list(t.dim_vector), "module": t.to_json()})
    return 0


def cmd_ar_sequence(args) -> int:
    m, frob = _load_rep(args.file, args.param)
    seq = artheory.almost_split_sequence(m, _frobenius(m.alg, frob), args.seed)
    parts = [(_dims(r), k) for r, k in decompose(seq.middle, args.seed).multiplicities()]
    exact, nonsplit = seq.is_exact(), seq.is_nonsplit()
    mid = " + ".join(f"{k}x{d}" if k > 1 else d for d, k in parts)
    text = f"0 -> {_dims(seq.left)} -> {mid} -> {_dims(seq.right)} -> 0\nexact: {exact}, non-split: {nonsplit}"
    payload = {
        "left": list(seq.left.dim_vector),
        "middle": [{"dim_vector": d, "multiplicity": k} for d, k in parts],
        "right": list(seq.right.dim_vector),
        "exact": exact,
        "nonsplit": nonsplit,
    }
    _emit(args, text, payload)
    return 0 if exact and nonsplit else 1


def cmd_ar_knit(args) -> int:
    _check_caps(args)
    m, frob = _load_rep(args.file, args.param)
    win = artheory.knit(m, _frobenius(m.alg, frob), args.depth, seed=args.seed, max_dim=args.max_dim, probe=args.probe)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(win.to_dot())
    if args.format == "dot":
        sys.stdout.write(win.to_dot())
        return 0
    report = artheory.tree_class_report(win)
    vals = sorted({v for v in win.arrows().values() if None not in v})
    lines = [
        f"nodes: {len(win.nodes)} ({len(win.projective)} projective, {len(win.uncertified)} uncertified)",
        f"meshes: {len(win.meshes)}",
        f"valuations: {vals}",
        f"tree classes: {report['classes']} ({report['note']})",
    ]
    payload = win.to_json()
    payload["tree_classes"] = report
    rows = [[n["id"], n["label"], " ".join(map(str, n["dim_vector"])), n["projective"], n["distance"]] for n in payload["nodes"]]
    _emit(args, "\n".join(lines), payload, rows, ["id", "label", "dim_vector", "projective", "distance"])
    return 1 if win.uncertified else 0


def cmd_smash_build(args) -> int:
    gamma, _ = load_algebra(args.algebra)
    action = load_action(gamma, args.action)
    sp = smash_construct(gamma, action)
    data = sp.to_json()
    if args.output:
        with open(args.output, "w") as fh:
            json.dump(data, fh, indent=2, sort_keys=True)
    q = sp.alg.quiver
    lines = [f"vertices: {list(q.vertices)}", f"dimension: {sp.alg.dim}"]
    lines += [f"  {a.name}: {a.src} -> {a.tgt}" for a in q.arrows]
    _emit(args, "\n".join(lines), data)
    return 0


def _parse_boundary(tree, text: Optional[str]):
    if not text:
        return {}
    if "=" not in text:
        raise InputError("--boundary must look like NAME=v1,v2 (NAME is tips or vertex indices joined by +)")
    name, vals = text.split("=", 1)
    try:
        values = [int(v) for v in vals.split(",")]
    except ValueError:
        raise InputError(f"bad boundary values {vals!r}") from None
    return named_boundary(tree, name, values)


def cmd_lengths_solve(args) -> int:
    if not 1 <= args.lmax <= MAX_LMAX:
        raise InputError(f"--lmax must be in 1..{MAX_LMAX}")
    tree = tquiver.tree_by_name(args.tree)
    p = ProfileProblem(tree, _parse_boundary(tree, args.boundary), 1, args.lmax)
    sols = solve_profile(p)
    keep = set(solution_ls(sols, args.require_l_min))
    rows = []
    for s in sols:
        if s.l not in keep:
            continue
        rows.append([s.l, s.count, " ".join(str(x) for x in s.particular)])
    text = "\n".join([f"{'l':>5}  {'count':>8}  profile"] + [f"{l:>5}  {c:>8}  {prof}" for l, c, prof in rows])
    payload = {"tree": tree.name, "boundary": {str(k): v for k, v in sorted(p.boundary.items())}, "solutions": [
        {"l": l, "count": c, "profile": [int(x) for x in prof.split()]} for l, c, prof in rows
    ]}
    _emit(args, text, payload, rows, ["l", "count", "profile"])
    return 0


def _dn_from_name(name: str) -> int:
    if not name.startswith("D~"):
        raise InputError("automorphism windows are implemented for D~n trees")
    try:
        n = int(name[2:])
    except ValueError:
        raise InputError(f"bad tree name {name!r}") from None
    if n < 4:
        raise InputError("D~n needs n >= 4")
    return n


def cmd_tq_aut(args) -> int:
    n = _dn_from_name(args.tree)
    if not 0 <= args.window <= MAX_WINDOW:
        raise InputError(f"--window must be in 0..{MAX_WINDOW}")
    c = tquiver.window_census(n, args.window)
    words = [w.word() for w in c["words"]]
    text = "\n".join(
        [f"D~{n}, |k| <= {args.window}: {c['found']} automorphisms, exact match with normal forms: {c['exact']}"]
        + [f"  {w}" for w in words]
    )
    payload = {"n": n, "K": args.window, "found": c["found"], "words": words, "exact": c["exact"],
               "missing": [w.word() for w in c["missing"]], "unmatched": len(c["unmatched"])}
    _emit(args, text, payload, [[w] for w in words], ["word"])
    return 0 if c["exact"] else 1


def cmd_tq_fpf(args) -> int:
    if args.catalog not in ("euclidean", "dynkin", "all"):
        raise InputError("--catalog must be euclidean, dynkin or all")
    names = tquiver.fixed_point_free_scan(args.catalog, args.max_n)
    _emit(args, "\n".join(names), {"catalog": args.catalog, "trees": names}, [[x] for x in names], ["tree"])
    return 0


def cmd_groth_dual_check(args) -> int:
    _check_caps(args)
    alg, frob = load_algebra(args.algebra)
    frob = _frobenius(alg, frob)
    reg = IsoRegistry(alg)
    nodes = []
    for v in alg.quiver.vertices:
        win = artheory.knit(simple(alg, v), frob, args.depth, registry=reg, seed=args.seed, max_dim=args.max_dim)
        if any(not win.backward_closed(x) for x in win.stable_nodes()):
            raise InputError("the component is not finite within --depth; cannot list all indecomposables")
        for x in win.nodes:
            if x not in nodes:
                nodes.append(x)
    mods = [reg.reps[x] for x in nodes]
    mat = dual_matrix(mods, frob, reg, args.seed)
    ok = all(mat[i, j] == (1 if i == j else 0) for i in range(len(mods)) for j in range(len(mods)))
    labels = [_dims(m) for m in mods]
    rows = [[labels[i]] + [int(x) for x in mat[i]] for i in range(len(mods))]
    text = "\n".join(["pair([V_i], X_j):"] + [" ".join(f"{x:>3}" for x in r[1:]) + f"   {r[0]}" for r in rows]
                     + [f"identity: {ok}"])
    _emit(args, text, {"modules": labels, "matrix": mat.tolist(), "identity": ok}, rows, ["module"] + labels)
    return 0 if ok else 1


def cmd_paper_repro(args) -> int:
    from .repro import CASES

    names = list(CASES) if args.case == "all" else [args.case]
    for n in names:
        if n not in CASES:
            raise InputError(f"unknown case {n!r}; choose from {', '.join(CASES)} or all")
    ok = True
    results = []
    for n in names:
        r = CASES[n](seed=args.seed)
        ok &= r.ok
        results.append(r)
    if args.format == "json":
        print(json.dumps([{"case": r.name, "criterion": r.criterion, "pass": r.ok, "lines": r.lines} for r in results], indent=2))
    else:
        print("\n".join(r.summary() for r in results))
    return 0 if ok else 1


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None, help="seed for randomized searches (default: ARQ_SEED or 0)")
    common.add_argument("--depth", type=int, default=artheory.DEFAULT_DEPTH, help=f"knitting depth (0..{MAX_DEPTH})")
    common.add_argument("--max-dim", type=int, default=MAX_DIM, help=f"module dimension cap (1..{MAX_DIM})")
    common.add_argument("--format", choices=["text", "csv", "json", "dot"], default="text")
    rep_params = argparse.ArgumentParser(add_help=False)
    rep_params.add_argument("--param", action="append", default=[], metavar="NAME=VALUE", help="value for a symbolic matrix entry")

    ap = argparse.ArgumentParser(prog="arquiver", description="Frobenius algebras, AR theory and smash products")
    top = ap.add_subparsers(dest="group", required=True)

    g = top.add_parser("algebra").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("check", parents=[common], help="load and validate an algebra file")
    p.add_argument("file")
    p.set_defaults(func=cmd_algebra_check)

    g = top.add_parser("rep").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("ops", parents=[common, rep_params], help="radical, socle, top, length")
    p.add_argument("file")
    p.add_argument("--show", default="rad,soc,top,len")
    p.set_defaults(func=cmd_rep_ops)
    p = g.add_parser("syzygy", parents=[common, rep_params], help="iterate Omega")
    p.add_argument("file")
    p.add_argument("-n", type=int, default=1)
    p.set_defaults(func=cmd_rep_syzygy)

    g = top.add_parser("ar").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("tau", parents=[common, rep_params], help="AR translate")
    p.add_argument("file")
    p.set_defaults(func=cmd_ar_tau)
    p = g.add_parser("sequence", parents=[common, rep_params], help="almost split sequence ending at the module")
    p.add_argument("file")
    p.set_defaults(func=cmd_ar_sequence)
    p = g.add_parser("knit", parents=[common, rep_params], help="knit a window of the component")
    p.add_argument("file")
    p.add_argument("--dot", help="write the window as DOT to this path")
    p.add_argument("--probe", type=int, default=0, help="tau-steps used to detect closing orbits")
    p.set_defaults(func=cmd_ar_knit)

    g = top.add_parser("smash").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("build", parents=[common], help="quiver and relations of the smash product")
    p.add_argument("algebra")
    p.add_argument("action")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_smash_build)

    g = top.add_parser("lengths").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("solve", parents=[common], help="length profiles modulo l")
    p.add_argument("--tree", required=True)
    p.add_argument("--lmax", type=int, default=64)
    p.add_argument("--boundary", help="e.g. tips=1,-1 or 0+4=1,2")
    p.add_argument("--require-l-min", type=int, default=1)
    p.set_defaults(func=cmd_lengths_solve)

    g = top.add_parser("tq").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("aut", parents=[common], help="automorphisms of Z[D~n] on a window")
    p.add_argument("--tree", required=True)
    p.add_argument("--window", type=int, default=6)
    p.set_defaults(func=cmd_tq_aut)
    p = g.add_parser("fpf", parents=[common], help="trees with fixed-point-free automorphisms")
    p.add_argument("--catalog", default="euclidean")
    p.add_argument("--max-n", type=int, default=11)
    p.set_defaults(func=cmd_tq_fpf)

    g = top.add_parser("groth").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("dual-check", parents=[common], help="pair([V_i], X_j) over a representation-finite algebra")
    p.add_argument("algebra")
    p.set_defaults(func=cmd_groth_dual_check)

    g = top.add_parser("paper").add_subparsers(dest="cmd", required=True)
    p = g.add_parser("repro", parents=[common], help="run an acceptance case")
    p.add_argument("--case", required=True)
    p.set_defaults(func=cmd_paper_repro)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.seed is None:
            args.seed = _default_seed()
        return args.func(args)
    except INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (DecompositionError, artheory.ARError, VerificationFailure) as exc:
        print(f"verification failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
