"""Command line entry point: ``rauzy <command> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 for usage or
parse errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from . import dynamics as dyn
from .gen_construct import self_inverse_gen_for
from .gen_perm import (
    GenPerm,
    enumerate_gen_class,
    gen_genus,
    gen_perms,
    gen_signature,
    is_irreducible_gen,
    is_proper,
    is_self_inverse_gen,
    parse_gen_signature,
    self_inverse_exists,
)
from .invariants import (
    ClassKey,
    class_key,
    genus,
    is_hyperelliptic_class,
    normalize_type,
    parse_signature,
    signature,
    spin_parity,
)
from .lagrangian import report as lagrangian_report
from .perm_core import (
    Permutation,
    canonicalize,
    inverse,
    irreducibles,
    is_irreducible,
    is_self_inverse,
    rauzy_move,
)
from .rauzy_class import ClassTooLarge, DEFAULT_CAP, all_classes, enumerate_class, export_graph
from .selfinverse_construct import UnsupportedKey, self_inverse_for, self_inverse_for_signature

MAX_ATLAS_D = 9


class UsageError(Exception):
    pass


def parse_host(text: str) -> Permutation | GenPerm:
    """A true permutation (one-line or two rows) or a generalized one."""
    if "/" in text:
        rows = text.split("/")
        if len(rows) != 2:
            raise UsageError(f"expected one '/', found {len(rows) - 1}")
        top, bottom = rows[0].split(), rows[1].split()
        if not top or not bottom:
            raise UsageError("empty row")
        if len(set(top)) == len(top) == len(bottom) == len(set(bottom)) and set(top) == set(bottom):
            return canonicalize(top, bottom)
        try:
            return GenPerm.from_rows(top, bottom)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    tokens = text.replace(",", " ").replace("(", " ").replace(")", " ").split()
    line = []
    for k, tok in enumerate(tokens, 1):
        try:
            line.append(int(tok))
        except ValueError:
            raise UsageError(f"token {k} ({tok!r}) is not an integer") from None
    for k, a in enumerate(line, 1):
        if not 1 <= a <= len(line) or a in line[:k - 1]:
            raise UsageError(f"token {k} ({a}) breaks the permutation of 1..{len(line)}")
    try:
        return Permutation(tuple(line))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _true(text: str) -> Permutation:
    p = parse_host(text)
    if not isinstance(p, Permutation):
        raise UsageError("this command needs a true permutation")
    return p


def class_id(vertices) -> str:
    blob = "\n".join(sorted(str(v) for v in vertices)).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


# --- commands -------------------------------------------------------------

def cmd_invariants(args, out) -> int:
    p = parse_host(args.perm)
    if isinstance(p, GenPerm):
        if not is_proper(p):
            raise UsageError(f"{p} is not proper")
        sig = gen_signature(p)
        out.write(f"generalized: {p}\n")
        out.write(f"orders: {sig}\n")
        out.write(f"genus: {gen_genus(p)}\n")
        out.write(f"irreducible: {is_irreducible_gen(p)}\n")
        out.write(f"self-inverse: {is_self_inverse_gen(p)}\n")
        out.write(f"self-inverse in some class with these orders: {self_inverse_exists(sig)}\n")
        return 0
    if not is_irreducible(p):
        raise UsageError(f"{p} is reducible")
    sig = signature(p)
    spin = spin_parity(p)
    out.write(f"permutation: {p}\n")
    out.write(f"signature: {sig}\n")
    out.write(f"genus: {genus(p)}\n")
    out.write(f"spin: {'-' if spin is None else spin}\n")
    out.write(f"hyperelliptic: {is_hyperelliptic_class(p)}\n")
    key = class_key(p)
    out.write(f"type: {key.type}\n")
    out.write(f"class key: {key}\n")
    return 0


def cmd_class(args, out) -> int:
    p = parse_host(args.perm)
    if isinstance(p, GenPerm):
        g = enumerate_gen_class(p, cap=args.cap)
        if args.format == "summary":
            out.write(f"size: {len(g)}\nid: {class_id(g.vertices)}\n")
            return 0
        lines = []
        if args.format == "dot":
            lines = ["digraph rauzy {"] + [f'  "{v}";' for v in g.vertices]
            lines += [f'  "{s}" -> "{t}" [label="{k}"];' for s, t, k in g.edges] + ["}"]
        else:
            for v in g.vertices:
                succ = g.successors(v)
                lines.append(json.dumps({"perm": str(v), "edges": {str(k): str(succ[k]) for k in sorted(succ)}}))
        _write(args.out, "\n".join(lines) + "\n", out)
        return 0
    g = enumerate_class(p, cap=args.cap)
    if args.format == "summary":
        out.write(f"size: {len(g.vertices)}\nedges: {len(g.edges)}\nid: {class_id(g.vertices)}\n")
        out.write(f"key: {class_key(p)}\n")
        return 0
    _write(args.out, export_graph(g, args.format), out)
    return 0


def _write(path, data, out) -> None:
    if path:
        Path(path).write_bytes(data if isinstance(data, bytes) else data.encode())
    else:
        out.write(data.decode() if isinstance(data, bytes) else data)


def cmd_construct(args, out) -> int:
    try:
        sig = parse_signature(args.signature)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        if args.type:
            p = self_inverse_for(ClassKey(sig, normalize_type(args.type)))
        else:
            p = self_inverse_for_signature(sig)
    except UnsupportedKey as exc:
        out.write(f"{exc}\n")
        return 1
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out.write(f"{p}\n")
    if args.verify:
        g = enumerate_class(p, cap=args.cap)
        out.write(f"class size: {len(g.vertices)}\nkey: {class_key(p)}\n")
    return 0


def cmd_construct_gen(args, out) -> int:
    try:
        sig = parse_gen_signature(args.signature)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        p = self_inverse_gen_for(sig, args.component)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if p is None:
        out.write(f"no self-inverse generalized permutation has orders {sig}\n")
        return 1
    out.write(f"{p}\n")
    return 0


def cmd_induct(args, out) -> int:
    p = parse_host(args.perm)
    try:
        lam = dyn.lengths(args.lengths)
        tau = dyn.lengths(args.tau) if args.tau else None
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad vector: {exc}") from None
    fmt = lambda v: ",".join(str(x) for x in v)
    try:
        if tau is not None:
            dyn.cone_violation(p, tau, raise_=True)
        for n in range(args.steps + 1):
            line = f"{n}\t{p}\t{fmt(lam)}" + (f"\t{fmt(tau)}" if tau is not None else "")
            out.write(line + "\n")
            if n == args.steps:
                break
            p, lam, tau = dyn.induct_once(p, lam, tau)
    except dyn.InductionUndefined as exc:
        out.write(f"halt: {exc}\n")
    except (dyn.ConeError, ValueError) as exc:
        raise UsageError(str(exc)) from None
    return 0


def cmd_polygon(args, out) -> int:
    p = parse_host(args.perm)
    try:
        if args.tau is None and isinstance(p, Permutation):
            s = dyn.unit_suspension(p)
            lam, tau = (dyn.lengths(args.lengths) if args.lengths else s.lam), s.tau
        else:
            if args.tau is None:
                raise UsageError("--tau is required for generalized permutations")
            lam = dyn.lengths(args.lengths) if args.lengths else (1,) * p.d
            tau = dyn.lengths(args.tau)
        poly = dyn.suspension_polygon(p, lam, tau)
    except dyn.ConeError as exc:
        out.write(f"{exc}\n")
        return 1
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    fmt = lambda pts: " ".join(f"({x},{y})" for x, y in pts)
    out.write(f"top: {fmt(poly.top)}\nbottom: {fmt(poly.bottom)}\narea: {poly.area()}\n")
    if args.out:
        Path(args.out).write_bytes(dyn.export_svg(poly))
    return 0


def cmd_lagrangian(args, out) -> int:
    p = _true(args.perm)
    if not is_irreducible(p):
        raise UsageError(f"{p} is reducible")
    r = lagrangian_report(p)
    out.write("orbits: " + " ".join("{" + ",".join(map(str, b)) + "}" for b in r["orbits"]) + "\n")
    for b, v in zip(r["orbits"], r["span"]):
        out.write(f"  v{{{','.join(map(str, b))}}} = ({', '.join(map(str, v))})\n")
    out.write(f"rank: {r['rank']}\ngenus: {r['genus']}\n")
    out.write(f"isotropic: {r['isotropic']}\nlagrangian: {r['lagrangian']}\n")
    if "transposition_rank" in r:
        out.write(f"transposition rank: {r['transposition_rank']}\n")
        out.write(f"transposition lagrangian: {r['transposition_lagrangian']}\n")
    return 0


# --- atlas ----------------------------------------------------------------

def _class_summary(vertices: tuple[Permutation, ...]) -> dict:
    rep = vertices[0]
    key = class_key(rep)
    spin = spin_parity(rep)
    try:
        si = str(self_inverse_for(key))
    except UnsupportedKey:
        si = None
    return {"kind": "class", "class": class_id(vertices), "size": len(vertices),
            "d": rep.d, "signature": str(key.signature), "type": key.type,
            "genus": key.signature.genus, "spin": spin, "self_inverse": si}


def _gen_class_summary(vertices: tuple[GenPerm, ...]) -> dict:
    sig = gen_signature(vertices[0])
    si = next((str(v) for v in vertices if is_self_inverse_gen(v)), None)
    return {"kind": "class", "class": class_id(vertices), "size": len(vertices),
            "d": vertices[0].d, "signature": str(sig), "type": "-",
            "genus": sig.genus, "spin": None, "self_inverse": si}


def atlas_lines(d: int, jobs: int = 1, generalized: bool = False) -> list[str]:
    if generalized:
        classes, seen = [], set()
        for p in gen_perms(d):
            if p in seen or not is_proper(p) or not is_irreducible_gen(p):
                continue
            g = enumerate_gen_class(p)
            seen.update(g.vertices)
            classes.append(tuple(sorted(g.vertices, key=str)))
        summarize = _gen_class_summary
    else:
        classes = [g.vertices for g in all_classes(d)]
        summarize = _class_summary
    if jobs > 1:
        with ProcessPoolExecutor(jobs) as ex:
            summaries = list(ex.map(summarize, classes))
    else:
        summaries = [summarize(c) for c in classes]
    summaries.sort(key=lambda s: s["class"])
    records = []
    for verts, s in zip(classes, _align(classes, summaries)):
        for v in verts:
            records.append({"kind": "perm", "perm": str(v), "d": s["d"], "signature": s["signature"],
                            "type": s["type"], "genus": s["genus"], "spin": s["spin"],
                            "class": s["class"], "self_inverse": s["self_inverse"]})
    records.sort(key=lambda r: (r["class"], r["perm"]))
    return [json.dumps(r, sort_keys=True) for r in summaries + records]


def _align(classes, summaries):
    by_id = {s["class"]: s for s in summaries}
    return [by_id[class_id(c)] for c in classes]


def cmd_atlas(args, out) -> int:
    if args.d > MAX_ATLAS_D or args.d < 2:
        raise UsageError(f"d must lie in 2..{MAX_ATLAS_D}")
    text = "\n".join(atlas_lines(args.d, args.jobs, args.generalized)) + "\n"
    _write(args.out, text, out)
    return 0


# --- verification suites ----------------------------------------------------

def _suite_inverse_conjugation(args):
    n = 0
    for d in range(2, args.d + 1):
        for p in irreducibles(d):
            for e in (0, 1):
                n += 1
                if rauzy_move(inverse(p), e) != inverse(rauzy_move(p, 1 - e)):
                    return n, {"perm": str(p), "type": e}
    return n, None


def _suite_class_invariants(args):
    n, seen = 0, {}
    for d in range(2, args.d + 1):
        for g in all_classes(d):
            keys = {class_key(v) for v in g.vertices}
            n += len(g.vertices)
            if len(keys) != 1:
                return n, {"class": str(g.vertices[0]), "keys": sorted(map(str, keys))}
            (k,) = keys
            if k in seen:
                return n, {"key": str(k), "classes": [seen[k], str(g.vertices[0])]}
            seen[k] = str(g.vertices[0])
    return n, None


def _suite_self_inverse_membership(args):
    n = 0
    for d in range(2, args.d + 1):
        for g in all_classes(d):
            n += 1
            key = class_key(g.vertices[0])
            q = self_inverse_for(key)
            if not is_self_inverse(q) or q not in set(g.vertices):
                return n, {"key": str(key), "constructed": str(q)}
    return n, None


def _suite_gen_existence(args):
    n, seen = 0, set()
    for d in range(2, args.letters // 2 + 1):
        for p in gen_perms(d):
            if p in seen or not is_proper(p) or not is_irreducible_gen(p):
                continue
            g = enumerate_gen_class(p)
            seen.update(g.vertices)
            n += 1
            has = any(is_self_inverse_gen(v) for v in g.vertices)
            if has != self_inverse_exists(gen_signature(p)):
                return n, {"class": str(p), "signature": str(gen_signature(p)), "has_self_inverse": has}
    return n, None


def _suite_lagrangian(args):
    from .lagrangian import is_isotropic, is_lagrangian
    n = 0
    for d in range(2, args.d + 1):
        for p in irreducibles(d):
            n += 1
            if not is_isotropic(p):
                return n, {"perm": str(p), "failed": "isotropic"}
            if is_self_inverse(p) and not is_lagrangian(p):
                return n, {"perm": str(p), "failed": "lagrangian"}
    return n, None


SUITES = {
    "inverse-conjugation": _suite_inverse_conjugation,
    "class-invariants": _suite_class_invariants,
    "self-inverse-membership": _suite_self_inverse_membership,
    "gen-existence": _suite_gen_existence,
    "lagrangian": _suite_lagrangian,
}


def cmd_verify(args, out) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    checked, bad = SUITES[args.suite](args)
    out.write(json.dumps({"suite": args.suite, "status": "fail" if bad else "pass",
                          "checked": checked, "counterexample": bad}) + "\n")
    return 1 if bad else 0


# --- argument parsing -------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="rauzy", description="Rauzy classes, self-inverse representatives and induction.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("invariants", help="signature, genus, spin and class key")
    s.add_argument("perm")
    s.set_defaults(func=cmd_invariants)

    s = sub.add_parser("class", help="enumerate the Rauzy class")
    s.add_argument("perm")
    s.add_argument("--format", choices=("dot", "jsonl", "summary"), default="summary")
    s.add_argument("--cap", type=int, default=DEFAULT_CAP)
    s.add_argument("--out")
    s.set_defaults(func=cmd_class)

    s = sub.add_parser("construct", help="self-inverse permutation for a signature and type")
    s.add_argument("signature", help='e.g. "4;0" or "(1; 2, 1)"')
    s.add_argument("--type", help="hyp, odd, even, nonhyp or none")
    s.add_argument("--verify", action="store_true", help="also enumerate its class")
    s.add_argument("--cap", type=int, default=DEFAULT_CAP)
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("construct-gen", help="self-inverse generalized permutation for given orders")
    s.add_argument("signature", help='marked order first, e.g. "2,-1^2"')
    s.add_argument("--component", choices=("hyp", "nonhyp", "reg", "irr"))
    s.set_defaults(func=cmd_construct_gen)

    s = sub.add_parser("induct", help="run Rauzy-Veech induction on length (and height) data")
    s.add_argument("perm")
    s.add_argument("--lengths", required=True)
    s.add_argument("--tau")
    s.add_argument("--steps", type=int, default=10)
    s.set_defaults(func=cmd_induct)

    s = sub.add_parser("polygon", help="suspension polygon, optionally as SVG")
    s.add_argument("perm")
    s.add_argument("--lengths")
    s.add_argument("--tau")
    s.add_argument("--out")
    s.set_defaults(func=cmd_polygon)

    s = sub.add_parser("lagrangian", help="vertical cycles and their span")
    s.add_argument("perm")
    s.set_defaults(func=cmd_lagrangian)

    s = sub.add_parser("atlas", help="JSONL atlas of all classes on d letters")
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--out")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--generalized", action="store_true")
    s.set_defaults(func=cmd_atlas)

    s = sub.add_parser("verify", help="run a verification suite")
    s.add_argument("suite")
    s.add_argument("--d", type=int, default=5)
    s.add_argument("--letters", type=int, default=8, help="bound on 2d for generalized suites")
    s.set_defaults(func=cmd_verify)
    return ap


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ClassTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
