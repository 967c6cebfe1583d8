"""Command line interface: ``ncq <noun> <verb> [flags]``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 for bad
input (an error object is printed as JSON). Output is JSON and, unless
``--timings`` is given, identical across runs with the same arguments.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import crossed as cr
from . import io
from . import nilpotent as nil
from .groups import CATALOG, make_group, tau_e, tau_id, tau_inv, tau_random, validate_dual
from .harmonic import identity_symbol, random_symbol
from .quantize import op_from_symbol, operator_metrics
from .report import Report
from .suite import CRITERIA, run_suite, symmetry_witness
from .symbolalg import (
    adjoint_symbol,
    convert_tau,
    is_symmetry_function,
    symmetry_odd_power,
    symmetry_search,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise io.InputError(message)


# -- loading -----------------------------------------------------------------------------------

def load_group(args):
    """Returns ``(tag, G, D)`` from ``--group-file`` or a catalog ``--group`` spec."""
    if getattr(args, "group_file", None):
        d = io.read_json(args.group_file)
        io._require(d, "group", "dual")
        G = io.group_from_json(d["group"])
        return d.get("name", args.group_file), G, io.dual_from_json(d["dual"])
    try:
        G, D = make_group(args.group)
    except ValueError as exc:
        raise io.InputError(str(exc)) from None
    return args.group, G, D


def parse_tau(G, spec: str, tag: str = "", side: str = "R") -> np.ndarray:
    if spec == "e":
        return tau_e(G)
    if spec == "id":
        return tau_id(G)
    if spec == "inv":
        return tau_inv(G)
    if spec.startswith("random:"):
        try:
            seed = int(spec.split(":", 1)[1])
        except ValueError:
            raise io.InputError(f"bad tau seed in {spec!r}") from None
        return tau_random(G, np.random.default_rng(seed))
    if spec == "sigma":
        if G.order % 2 == 0:
            raise io.InputError(f"no symmetry function exists on a group of even order {G.order}")
        return symmetry_witness(G, tag, side)
    raise io.InputError(f"unknown tau {spec!r}; use e, id, inv, random:<seed> or sigma")


def _side(s: str) -> str:
    return {"left": "L", "right": "R"}[s]


def _emit(obj, out: str | None = None, echo: bool = False) -> None:
    text = io.dumps(obj)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    if echo or not out:
        sys.stdout.write(text)


def _report_exit(report) -> int:
    return EXIT_OK if report.passed else EXIT_FAIL


# -- group --------------------------------------------------------------------------------------

def cmd_group_info(args) -> int:
    tag, G, D = load_group(args)
    rep = validate_dual(G, D)
    _emit(
        {
            "group": tag,
            "order": G.order,
            "abelian": G.is_abelian(),
            "irreps": [{"label": r.label, "dim": r.dim} for r in D],
            "validation": rep.as_dict(),
        },
        args.out,
        args.json,
    )
    return _report_exit(rep)


def cmd_group_export(args) -> int:
    tag, G, D = load_group(args)
    _emit({"name": tag, "group": io.group_to_json(G), "dual": io.dual_to_json(D)}, args.out, args.json)
    return EXIT_OK


def cmd_group_list(args) -> int:
    _emit({"catalog": list(CATALOG)}, args.out, args.json)
    return EXIT_OK


# -- symbols and quantization -------------------------------------------------------------

def cmd_symbol_random(args) -> int:
    _, G, D = load_group(args)
    rng = np.random.default_rng(args.seed)
    if args.omega is not None:
        _emit(io.symbol_to_json(D, random_symbol(D, rng, args.omega), "omega"), args.out, args.json)
    else:
        _emit(io.symbol_to_json(D, random_symbol(D, rng, G.order)), args.out, args.json)
    return EXIT_OK


def cmd_symbol_identity(args) -> int:
    _, _, D = load_group(args)
    _emit(io.symbol_to_json(D, identity_symbol(D)), args.out, args.json)
    return EXIT_OK


def _load_symbol(args, D, size):
    return io.symbol_from_json(D, io.read_json(args.symbol), size)


def cmd_quantize(args) -> int:
    tag, G, D = load_group(args)
    side = _side(args.side)
    tau = parse_tau(G, args.tau, tag, side)
    a = _load_symbol(args, D, G.order)
    if args.mode == "op":
        T = op_from_symbol(G, D, tau, a, side)
        _emit(io.operator_to_json(T, operator_metrics(T)), args.out, args.json)
    elif args.mode == "adjoint":
        tau2, astar = adjoint_symbol(G, tau, a, side)
        _emit({"tau": tau2.tolist(), **io.symbol_to_json(D, astar)}, args.out, args.json)
    else:
        target = parse_tau(G, args.to_tau, tag, side)
        _emit(io.symbol_to_json(D, convert_tau(G, D, tau, target, a, side)), args.out, args.json)
    return EXIT_OK


# -- covariant families ----------------------------------------------------------------------

def _load_system(args, G):
    name = args.system
    if name == "translation":
        return cr.translation_system(G)
    if name == "trivial":
        return cr.trivial_system(G)
    if name == "coset":
        return cr.coset_system(G, cr.normal_subgroup(G))
    if name.startswith("seeded"):
        seed = int(name.split(":", 1)[1]) if ":" in name else args.seed
        return cr.seeded_permutation_system(G, np.random.default_rng(seed), cr.normal_subgroup(G))
    return io.system_from_json(G, io.read_json(name))


def cmd_covariant(args) -> int:
    tag, G, D = load_group(args)
    tau = parse_tau(G, args.tau, tag, "L")
    system = _load_system(args, G)
    if args.symbol:
        h = _load_symbol(args, D, system.omega_size)
    else:
        h = cr.random_omega_symbol(D, system.omega_size, np.random.default_rng(args.seed))
    out = {"omega": system.omega_size, "orbits": cr.orbits(system)}
    rep = Report()
    if args.omega_point is not None:
        if not 0 <= args.omega_point < system.omega_size:
            raise io.InputError(f"omega point out of range 0..{system.omega_size - 1}")
        T = cr.op_omega(G, D, tau, system, args.omega_point, h)
        out["operator"] = io.operator_to_json(T, operator_metrics(T))
    if args.check_spectra or args.noun == "spectra":
        spectra = cr.orbit_spectra(G, D, tau, system, h)
        for i, o in enumerate(spectra):
            rep.add(f"orbit[{i}].spectral_invariance", o["max_distance"], args.tol)
        out["spectra"] = [
            {"orbit": o["orbit"], "max_distance": o["max_distance"], "spectrum": io.encode(np.sort_complex(o["spectra"][0]))}
            for o in spectra
        ]
        out["validation"] = rep.as_dict()
    _emit(out, args.out, args.json)
    return _report_exit(rep)


# -- symmetry functions ---------------------------------------------------------------------

def cmd_symmetry(args) -> int:
    tag, G, _ = load_group(args)
    side = _side(args.side)
    if args.strategy == "search":
        res = symmetry_search(G, side, limit=args.limit)
        out = {"exists": res.exists, "count": res.count, "witnesses": [w.tolist() for w in res.witnesses[: args.show]]}
    else:
        if G.order % 2 == 0:
            out = {"exists": False, "count": 0, "witnesses": []}
        else:
            sigma = symmetry_odd_power(G) if args.strategy == "odd-power" else symmetry_witness(G, tag, side)
            out = {"exists": True, "witnesses": [sigma.tolist()], "valid": is_symmetry_function(G, sigma, side)}
    _emit({"group": tag, "side": args.side, "strategy": args.strategy, **out}, args.out, args.json)
    return EXIT_OK if out.get("valid", True) else EXIT_FAIL


# -- suite ---------------------------------------------------------------------------------------

def cmd_suite(args) -> int:
    criteria = None
    if args.criteria:
        try:
            criteria = [int(c) for c in args.criteria.split(",")]
        except ValueError:
            raise io.InputError(f"bad criteria list {args.criteria!r}") from None
        unknown = sorted(set(criteria) - set(CRITERIA))
        if unknown:
            raise io.InputError(f"unknown criteria {unknown}; valid: 1..{len(CRITERIA)}")
    groups = None
    if args.group_file:
        groups = [load_group(args)]
    specs = args.groups.split(",") if args.groups else None
    if specs:
        for s in specs:
            try:
                make_group(s)
            except ValueError as exc:
                raise io.InputError(str(exc)) from None
    rep = run_suite(specs, seed=args.seed, tol=args.tol, criteria=criteria, groups=groups, nilpotent=not args.no_nilpotent)
    _emit(rep.as_dict(args.timings), args.out, args.json)
    if not args.out and not args.quiet:
        for c in rep.checks:
            if not c.passed:
                print(f"FAIL {c.name} residual={c.residual:.3e} tol={c.tol:.1e} {c.detail}".rstrip(), file=sys.stderr)
    return _report_exit(rep)


# -- nilpotent ------------------------------------------------------------------------------------

BUILTIN_SCALAR = {
    "one": lambda x, X: np.ones(np.broadcast_shapes(x.shape[:-1], X.shape[:-1])),
    "gaussian": lambda x, X: np.exp(-(np.sum(x**2, -1) + np.sum(X**2, -1)) / 2),
    "multiplier": lambda x, X: 1.0 / (1.0 + np.sum(X**2, -1)) + 0 * x[..., 0],
    "position": lambda x, X: np.sum(x, -1) + 0 * X[..., 0],
}


def _nil_setup(args):
    try:
        alg = nil.make_algebra(args.algebra)
        grid = nil.Grid(alg.dim, args.half_width, args.points)
    except ValueError as exc:
        raise io.InputError(str(exc)) from None
    if args.tau not in nil.TAUS + ("e", "sigma_half", "sigma_matrix"):
        raise io.InputError(f"unknown nilpotent tau {args.tau!r}")
    if args.symbol in BUILTIN_SCALAR:
        s = nil.ScalarSymbol(grid, func=BUILTIN_SCALAR[args.symbol])
    else:
        s = io.scalar_symbol_from_json(io.read_json(args.symbol))
        if s.grid != grid:
            raise io.InputError("symbol grid does not match --points/--half-width/algebra dimension")
    return alg, grid, s


def cmd_nilpotent(args) -> int:
    if args.verb == "rn-check":
        try:
            rep = nil.rn_consistency(args.dim, args.tau, nil.Grid(args.dim, args.half_width, args.points), args.seed)
        except ValueError as exc:
            raise io.InputError(str(exc)) from None
        if args.tol is not None:
            rep = Report([type(c)(c.name, c.residual <= args.tol, c.residual, args.tol) for c in rep.checks])
        _emit(rep.as_dict(), args.out, args.json)
        return _report_exit(rep)
    if args.verb == "cocycle-check":
        try:
            alg = nil.make_algebra(args.algebra)
        except ValueError as exc:
            raise io.InputError(str(exc)) from None
        rng = np.random.default_rng(args.seed)
        rep = Report()
        for tau in nil.TAUS:
            worst = 0.0
            for _ in range(args.samples):
                x, X, y, Y, z = (rng.standard_normal(alg.dim) for _ in range(5))
                worst = max(worst, nil.cocycle_residual(alg, tau, x, X, y, Y, z))
            rep.add(f"cocycle[{tau}]", worst, 1e-12 if args.tol is None else args.tol)
        _emit(rep.as_dict(), args.out, args.json)
        return _report_exit(rep)
    alg, grid, s = _nil_setup(args)
    side = _side(args.side)
    if args.verb == "kernel":
        K = nil.scalar_kernel(alg, grid, side, args.tau, s)
        _emit({"grid": io.grid_to_json(grid), "kernel": io.encode(K)}, args.out, args.json)
    else:
        T = nil.scalar_op(alg, grid, side, args.tau, s)
        _emit({"grid": io.grid_to_json(grid), **io.operator_to_json(T, operator_metrics(T))}, args.out, args.json)
    return EXIT_OK


# -- parser ----------------------------------------------------------------------------------------

def _group_flags(p, required=True):
    g = p.add_mutually_exclusive_group(required=required)
    g.add_argument("--group", help="catalog spec such as symmetric:3 or cyclic:2xcyclic:3")
    g.add_argument("--group-file", help="JSON file with 'group' and 'dual' objects")


def _common(p):
    p.add_argument("--out", help="write JSON here instead of stdout")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true", help="also print JSON to stdout when --out is given")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ncq", description="tau-quantization on finite groups and nilpotent Lie groups")
    nouns = parser.add_subparsers(dest="noun", required=True, parser_class=_Parser)

    group = nouns.add_parser("group").add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb, fn in (("info", cmd_group_info), ("export", cmd_group_export)):
        p = group.add_parser(verb)
        _group_flags(p)
        _common(p)
        p.set_defaults(func=fn)
    p = group.add_parser("list")
    _common(p)
    p.set_defaults(func=cmd_group_list)

    symbol = nouns.add_parser("symbol").add_subparsers(dest="verb", required=True, parser_class=_Parser)
    p = symbol.add_parser("random")
    _group_flags(p)
    _common(p)
    p.add_argument("--omega", type=int, help="size of Ω for a covariant-family symbol")
    p.set_defaults(func=cmd_symbol_random)
    p = symbol.add_parser("identity")
    _group_flags(p)
    _common(p)
    p.set_defaults(func=cmd_symbol_identity)

    p = nouns.add_parser("quantize")
    _group_flags(p)
    _common(p)
    p.add_argument("--tau", default="e")
    p.add_argument("--side", choices=("left", "right"), default="right")
    p.add_argument("--symbol", required=True)
    p.add_argument("--mode", choices=("op", "adjoint", "convert"), default="op")
    p.add_argument("--to-tau", default="id", help="target tau for --mode convert")
    p.set_defaults(func=cmd_quantize)

    p = nouns.add_parser("covariant", aliases=["spectra"], help="covariant families; 'spectra' implies --check-spectra")
    _group_flags(p)
    _common(p)
    p.add_argument("--tau", default="e")
    p.add_argument("--system", default="translation", help="translation, trivial, coset, seeded[:seed] or a JSON file")
    p.add_argument("--symbol", help="Ω x Ĝ symbol file; random when omitted")
    p.add_argument("--omega-point", type=int)
    p.add_argument("--check-spectra", action="store_true")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_covariant)

    p = nouns.add_parser("symmetry")
    _group_flags(p)
    _common(p)
    p.add_argument("--side", choices=("left", "right"), default="right")
    p.add_argument("--strategy", choices=("search", "odd-power", "construct"), default="search")
    p.add_argument("--limit", type=int, default=1000)
    p.add_argument("--show", type=int, default=3, help="number of witnesses to print")
    p.set_defaults(func=cmd_symmetry)

    p = nouns.add_parser("suite")
    _group_flags(p, required=False)
    _common(p)
    p.add_argument("--all", action="store_true", help="whole catalog (the default)")
    p.add_argument("--groups", help="comma-separated catalog specs (default: whole catalog)")
    p.add_argument("--criteria", help="comma-separated criterion numbers")
    p.add_argument("--tol", type=float, help="override every tolerance")
    p.add_argument("--no-nilpotent", action="store_true")
    p.add_argument("--timings", action="store_true")
    p.add_argument("--quiet", action="store_true")
    p.set_defaults(func=cmd_suite)

    nilp = nouns.add_parser("nilpotent").add_subparsers(dest="verb", required=True, parser_class=_Parser)
    for verb in ("kernel", "op", "cocycle-check", "rn-check"):
        p = nilp.add_parser(verb)
        _common(p)
        p.add_argument("--tau", default="sigma")
        p.add_argument("--tol", type=float)
        if verb == "rn-check":
            p.add_argument("--dim", type=int, default=1)
        else:
            p.add_argument("--algebra", default="heisenberg:1")
        if verb in ("kernel", "op", "rn-check"):
            p.add_argument("--points", type=int, default=8)
            p.add_argument("--half-width", type=float, default=4.0)
        if verb in ("kernel", "op"):
            p.add_argument("--side", choices=("left", "right"), default="right")
            p.add_argument("--symbol", default="gaussian", help=f"file or one of {sorted(BUILTIN_SCALAR)}")
        if verb == "cocycle-check":
            p.add_argument("--samples", type=int, default=100)
        p.set_defaults(func=cmd_nilpotent)
    return parser


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except io.InputError as exc:
        sys.stdout.write(io.dumps({"error": {"kind": "input", "message": str(exc)}}))
        return EXIT_INPUT
    except (OSError, KeyError, TypeError, ValueError) as exc:
        sys.stdout.write(io.dumps({"error": {"kind": type(exc).__name__, "message": str(exc)}}))
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
