"""Command line front end.  Every subcommand prints one JSON document.

Exit codes: 0 success, 2 bad arguments, 3 enumeration budget exceeded,
4 ``reduce`` called on a form that is not closed.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import building, derham, dl, koszul, torseur
from .arith import CharacterIndex, cuspidal_dimension, default_budget, green_orbit, is_primitive
from .errors import BudgetExceeded, NotClosed, ValidationError

EXIT_OK, EXIT_VALIDATION, EXIT_BUDGET, EXIT_NOT_CLOSED = 0, 2, 3, 4


def _ints(text):
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma separated integers, got {text!r}") from None


def _window(text):
    if text == "auto":
        return None
    out = []
    for part in text.split(","):
        lo, _, hi = part.partition(":")
        try:
            out.append((int(lo), int(hi)))
        except ValueError:
            raise argparse.ArgumentTypeError(f"window entries look like lo:hi, got {part!r}") from None
    return out


def _matrix(text):
    return [_ints(row) for row in text.split(";")]


def _cover(args, beta=None):
    beta = args.beta if beta is None else beta
    d = args.d if getattr(args, "d", None) is not None else len(beta)
    if len(beta) != d:
        raise ValidationError(f"beta has {len(beta)} entries but d={d}", "beta-length")
    return derham.make_cover(d, args.n, beta, args.p)


def _budget(args):
    return args.budget if getattr(args, "budget", None) is not None else default_budget()


def _read_json(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"invalid JSON in {path}: {exc}", "json") from None
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}", "io") from None


# handlers ------------------------------------------------------------------------

def cmd_reduce(args):
    w = derham.isoform_from_json(_read_json(args.input))
    cls, prim = derham.reduce_to_class(w)
    return {"class": derham.cohomclass_to_json(cls), "primitive": derham.isoform_to_json(prim)}


def cmd_cover_dims(args):
    cover = _cover(args)
    out = {"dim": derham.cohomology_dimension(cover, args.deg)}
    if args.iso is not None:
        if not 0 <= args.iso < cover.n:
            raise ValidationError(f"iso must lie in [0, {cover.n})", "iso-range")
        out["iso"] = args.iso
        out["iso_dim"] = derham.isotypic_dimension(cover, args.deg, args.iso)
    return out


def cmd_oracle(args):
    cover = _cover(args)
    window = args.window if args.window is not None else koszul.sufficient_window(cover)
    value = koszul.koszul_oracle(cover, args.deg, window, args.iso)
    expected = (derham.cohomology_dimension(cover, args.deg) if args.iso is None
                else derham.isotypic_dimension(cover, args.deg, args.iso))
    return {"oracle": value, "expected": expected, "agree": value == expected,
            "window": [list(w) for w in window]}


def cmd_kunneth(args):
    a = derham.make_cover(len(args.beta_a), args.n, args.beta_a, args.p)
    b = derham.make_cover(len(args.beta_b), args.n, args.beta_b, args.p)
    if not 0 <= args.iso < args.n:
        raise ValidationError(f"iso must lie in [0, {args.n})", "iso-range")
    return {"dim": derham.kunneth_dimension(a, b, args.iso, args.deg)}


def cmd_torseur(args):
    if args.action == "add":
        c1 = torseur.TorseurClass(args.n, args.a1, tuple(args.beta1))
        c2 = torseur.TorseurClass(args.n, args.a2, tuple(args.beta2))
        return torseur.add_classes(c1, c2).to_json()
    if args.action == "pi0":
        return {"pi0": torseur.pi0_of_class(torseur.TorseurClass(args.n, args.a, tuple(args.beta)))}
    c = torseur.TorseurClass(args.n, args.a, tuple(args.beta))
    s_axes = set(args.s_axes)
    c_axes = set(range(1, c.d + 1)) - s_axes
    cs, cc = torseur.split_product_class(c, s_axes, c_axes)
    return {"S": cs.to_json(), "C": cc.to_json()}


def cmd_dl(args):
    params = dl.DLParams(args.q, args.d, args.m)
    budget = _budget(args)
    if args.action == "count":
        return dl.dl_report(params, budget)
    if args.action == "free-action":
        rep = dl.scaling_action_report(params, budget)
        rep.update(q=args.q, d=args.d, m=args.m, ok=dl.check_free_scaling_action(params, budget))
        return rep
    count = params.field.order ** (params.d + 1)
    if count > budget:
        raise BudgetExceeded(count, budget)
    mats = [args.g] if args.g is not None else dl.gl_group(args.q, args.d)
    checked = 0
    ok = True
    for g in mats:
        for z in dl.iter_points(params):
            ok &= dl.check_gl_invariance(params, g, z)
            checked += 1
    return {"q": args.q, "d": args.d, "m": args.m, "checked": checked, "all_invariant": ok}


def cmd_char(args):
    chi = CharacterIndex(args.q, args.d, args.j)
    if args.action == "primitive":
        return {"primitive": is_primitive(chi)}
    if args.action == "orbit":
        return {"orbit": sorted(green_orbit(chi))}
    return {"cusp_dim": cuspidal_dimension(args.q, args.d), "primitive": is_primitive(chi)}


def cmd_bt(args):
    budget = _budget(args)
    if args.action == "star":
        census = building.star_census(args.q, args.d, budget)
        return {"census": [{"type": list(t.composition), "count": c} for t, c in census.items()]}
    if args.action == "bfs":
        count, b = building.bfs_vertices(args.q, args.d, args.R, budget)
        out = {"vertices": count, "edges": len(b.edges) // 2}
        if args.dump:
            out["adjacency"] = b.adjacency()
        return out
    if args.action == "beta":
        t = building.SimplexType(tuple(args.type))
        return {"beta": list(building.beta_values(args.q, t)),
                "variant_beta": list(building.variant_beta_values(args.q, t)),
                "gcd": building.gcd_list([args.q ** (t.d + 1) - 1, *building.beta_values(args.q, t)])
                if t.k else None}
    if args.action == "vanish":
        t = building.SimplexType(tuple(args.type))
        chi = CharacterIndex(args.q, t.d, args.j)
        m, v = building.m_and_vanishing(chi, t)
        return {"m": m, "vanishes": v}
    chi = CharacterIndex(args.q, args.d, args.j)
    return building.cech_e1(args.q, args.d, args.R, chi, budget).to_json()


def cmd_jl(args):
    return {"multiplicity": building.jl_multiplicity(args.d)}


# parser ----------------------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="drtower", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=["json", "table"], default="json")
    sub = p.add_subparsers(dest="command", required=True)

    def cover_args(sp, need_d=True):
        sp.add_argument("--d", type=int, required=need_d)
        sp.add_argument("--n", type=int, default=1)
        sp.add_argument("--beta", type=_ints, default=[])
        sp.add_argument("--p", type=int, default=None, help="residue characteristic; n must be prime to it")

    sp = sub.add_parser("reduce", help="reduce a closed IsoForm to its class")
    sp.add_argument("input", help="IsoForm JSON file, or - for stdin")
    sp.add_argument("-o", "--output", default=None)
    sp.set_defaults(func=cmd_reduce)

    sp = sub.add_parser("cover-dims", help="de Rham dimensions of a Kummer cover")
    cover_args(sp)
    sp.add_argument("--deg", type=int, required=True)
    sp.add_argument("--iso", type=int, default=None)
    sp.set_defaults(func=cmd_cover_dims)

    sp = sub.add_parser("oracle", help="Koszul brute force on a window")
    cover_args(sp)
    sp.add_argument("--deg", type=int, required=True)
    sp.add_argument("--window", type=_window, default=None, help="lo:hi,lo:hi,... or auto")
    sp.add_argument("--iso", type=int, default=None)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("kunneth", help="isotypic Kunneth dimension")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--beta-a", type=_ints, required=True)
    sp.add_argument("--beta-b", type=_ints, required=True)
    sp.add_argument("--iso", type=int, default=0)
    sp.add_argument("--deg", type=int, required=True)
    sp.add_argument("--p", type=int, default=None)
    sp.set_defaults(func=cmd_kunneth)

    sp = sub.add_parser("torseur", help="torsor class arithmetic")
    tsub = sp.add_subparsers(dest="action", required=True)
    t = tsub.add_parser("add")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--a1", type=int, default=0)
    t.add_argument("--beta1", type=_ints, required=True)
    t.add_argument("--a2", type=int, default=0)
    t.add_argument("--beta2", type=_ints, required=True)
    t = tsub.add_parser("pi0")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--a", type=int, default=0)
    t.add_argument("--beta", type=_ints, required=True)
    t = tsub.add_parser("split")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--a", type=int, default=0)
    t.add_argument("--beta", type=_ints, required=True)
    t.add_argument("--s-axes", type=_ints, required=True, help="1-based axes owned by the S factor")
    sp.set_defaults(func=cmd_torseur)

    sp = sub.add_parser("dl", help="Deligne-Lusztig point counts and checks")
    dsub = sp.add_subparsers(dest="action", required=True)
    for name in ("count", "invariance", "free-action"):
        t = dsub.add_parser(name)
        t.add_argument("--q", type=int, required=True)
        t.add_argument("--d", type=int, required=True)
        t.add_argument("--m", type=int, default=1)
        t.add_argument("--budget", type=int, default=None)
        if name == "invariance":
            t.add_argument("--g", type=_matrix, default=None,
                           help="rows separated by ';', entries as F_q encodings; default: all of GL")
    sp.set_defaults(func=cmd_dl)

    sp = sub.add_parser("char", help="characters of F_{q^{d+1}}^*")
    csub = sp.add_subparsers(dest="action", required=True)
    for name in ("primitive", "orbit", "cusp-dim"):
        t = csub.add_parser(name)
        t.add_argument("--q", type=int, required=True)
        t.add_argument("--d", type=int, required=True)
        t.add_argument("--j", type=int, default=0)
    sp.set_defaults(func=cmd_char)

    sp = sub.add_parser("bt", help="building combinatorics")
    bsub = sp.add_subparsers(dest="action", required=True)
    t = bsub.add_parser("star")
    t.add_argument("--q", type=int, required=True)
    t.add_argument("--d", type=int, required=True)
    t.add_argument("--budget", type=int, default=None)
    t = bsub.add_parser("bfs")
    t.add_argument("--q", type=int, required=True)
    t.add_argument("--d", type=int, required=True)
    t.add_argument("--R", type=int, required=True)
    t.add_argument("--dump", action="store_true", help="include the adjacency list")
    t.add_argument("--budget", type=int, default=None)
    t = bsub.add_parser("beta")
    t.add_argument("--q", type=int, required=True)
    t.add_argument("--type", type=_ints, required=True)
    t = bsub.add_parser("vanish")
    t.add_argument("--q", type=int, required=True)
    t.add_argument("--type", type=_ints, required=True)
    t.add_argument("--j", type=int, required=True)
    t = bsub.add_parser("cech")
    t.add_argument("--q", type=int, required=True)
    t.add_argument("--d", type=int, required=True)
    t.add_argument("--R", type=int, required=True)
    t.add_argument("--j", type=int, required=True)
    t.add_argument("--budget", type=int, default=None)
    sp.set_defaults(func=cmd_bt)

    sp = sub.add_parser("jl-mult", help="multiplicity d+1")
    sp.add_argument("--d", type=int, required=True)
    sp.set_defaults(func=cmd_jl)
    return p


def _table(obj, prefix=""):
    lines = []
    if isinstance(obj, dict):
        for k in sorted(obj):
            lines.extend(_table(obj[k], f"{prefix}{k}."))
    elif isinstance(obj, list) and obj and isinstance(obj[0], (dict, list)):
        for i, v in enumerate(obj):
            lines.extend(_table(v, f"{prefix}{i}."))
    else:
        lines.append(f"{prefix[:-1]}\t{json.dumps(obj)}")
    return lines


def render(obj, fmt="json") -> str:
    if fmt == "table":
        return "\n".join(_table(obj))
    return json.dumps(obj, sort_keys=True)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_VALIDATION
    try:
        result = args.func(args)
        code = EXIT_OK
    except ValidationError as exc:
        result, code = {"error": str(exc), "code": exc.code}, EXIT_VALIDATION
    except BudgetExceeded as exc:
        result = {"error": str(exc), "code": "budget", "required": exc.required, "budget": exc.budget}
        code = EXIT_BUDGET
    except NotClosed as exc:
        result, code = {"error": str(exc), "code": "not-closed"}, EXIT_NOT_CLOSED
    text = render(result, args.format)
    out_path = getattr(args, "output", None)
    if out_path and code == EXIT_OK:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=sys.stdout if code == EXIT_OK else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
