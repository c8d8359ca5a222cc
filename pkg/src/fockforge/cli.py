"""Command-line front end.

Exit status: 0 success, 1 a requested check failed, 2 malformed input or
usage error, 3 unsupported input, 4 truncation shortfall.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import checks
from .errors import FockForgeError, TruncationError, UnsupportedInputError, UsageError
from .fock import (
    FockState,
    OperatorSymbol,
    PairingSpec,
    apply,
    hh_pairing_series,
    hh_table,
    inner_product,
)
from .hilbgen import HodgeDiamond, central_charge_check, corner_excess_report, hilb_hodge_series, u0_series
from .lattice import Lattice
from .partitions import (
    component_census,
    enumerate_partitions,
    punctual_fiber_dim,
    stratum_dim_hilb,
    stratum_dim_sym,
    strict_partitions,
)
from .series import LaurentPoly, TruncatedSeries, binomial_power, format_coeff, parse_coeff
from .vertex import character, weight_one_algebra

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2
EXIT_UNSUPPORTED = 3
EXIT_TRUNCATION = 4

DEFAULT_MAX_ORDER = 64


def max_order() -> int:
    raw = os.environ.get("FOCKFORGE_MAX_ORDER")
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"FOCKFORGE_MAX_ORDER must be an integer, got {raw!r}") from None


def _load_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: malformed JSON ({exc})") from None
    except OSError as exc:
        raise UsageError(f"{path}: {exc.strerror}") from None


def _lattice(path) -> Lattice:
    if path is None:
        raise UsageError("--lattice is required")
    try:
        return Lattice.from_json(_load_json(path))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FockForgeError):
            raise
        raise UsageError(f"{path}: bad lattice ({exc})") from None


def _state(path, L):
    if path is None:
        return FockState.vacuum(L)
    obj = _load_json(path)
    try:
        palette = L if L is not None or "palette" not in obj else None
        return FockState.from_json(obj, palette)
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FockForgeError):
            raise
        raise UsageError(f"{path}: bad Fock state ({exc})") from None


def _vector(text, L):
    try:
        return L.vector(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"bad vector {text!r}; expected comma-separated integers") from None


def _order(args) -> int:
    n = args.order
    if n < 0:
        raise UsageError("--order must be >= 0")
    cap = max_order()
    if n > cap:
        raise UsageError(f"--order {n} exceeds FOCKFORGE_MAX_ORDER={cap}")
    return n


def _level(args) -> int:
    if args.level < 1:
        raise UsageError("--level must be >= 1")
    return args.level


def _q(args):
    if args.q is None:
        return None
    try:
        q = parse_coeff(args.q)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad --q value {args.q!r}") from None
    if q == 0:
        raise UsageError("--q must be nonzero")
    return q


def _pairing(args, L) -> PairingSpec:
    return PairingSpec.make(L, args.pairing, _level(args))


def _coeff_json(c):
    return c.to_json() if isinstance(c, LaurentPoly) else format_coeff(c)


def _maybe_eval(value, q):
    if q is not None and isinstance(value, LaurentPoly):
        return value.evaluate(q)
    return value


def series_tsv(S: TruncatedSeries) -> str:
    """Rows are degrees; a two-variable series gets one column per second exponent."""
    if len(S.variables) == 1:
        lines = [f"{S.variables[0]}\tcoeff"]
        lines += [f"{n}\t{format_coeff(c)}" for n, c in enumerate(S.coefficients())]
    else:
        a, b = S.variables
        N = S.order
        lines = [a + "\\" + b + "\t" + "\t".join(str(m) for m in range(N + 1))]
        for n in range(N + 1):
            lines.append(f"{n}\t" + "\t".join(format_coeff(S.coefficient(n, m)) for m in range(N + 1)))
    return "\n".join(lines) + "\n"


def _report(command, args, results, **extra):
    doc = {
        "command": command,
        "seed": args.seed,
        "checks": [r.to_json() for r in results],
        "passed": all(r.passed for r in results),
    }
    doc.update(extra)
    return doc, EXIT_OK if doc["passed"] else EXIT_FAILED


# ---------------------------------------------------------------------------
# subcommands; each returns (document or text, exit status)


def cmd_check_all(args):
    L = _lattice(args.lattice)
    order = _order(args)
    level = _level(args)
    results = checks.run_all(L, order, args.seed, level)
    return _report("check-all", args, results, lattice=L.to_json(), order=order, level=level)


def cmd_fock_apply(args):
    L = _lattice(args.lattice) if args.lattice else None
    x = _state(args.state, L)
    L = x.lattice
    pairing = _pairing(args, L)
    ops = [OperatorSymbol.parse(t) for t in args.op]
    for op in ops:
        if op.color >= L.rank:
            raise UsageError(f"operator color {op.color} out of range for rank {L.rank}")
        x = apply(op, x, pairing)
    q = _q(args)
    if q is not None:
        x = x.evaluate_q(q)
    doc = {
        "command": "fock apply",
        "seed": args.seed,
        "pairing": args.pairing,
        "ops": [f"{o.color}:{o.mode}" for o in ops],
        "result": x.to_json(),
    }
    return doc, EXIT_OK


def cmd_fock_pair(args):
    L = _lattice(args.lattice) if args.lattice else None
    x = _state(args.left, L)
    y = _state(args.right, L if L is not None else x.lattice)
    value = _maybe_eval(inner_product(x, y, _pairing(args, x.lattice)), _q(args))
    doc = {"command": "fock pair", "seed": args.seed, "pairing": args.pairing, "value": _coeff_json(value)}
    return doc, EXIT_OK


def cmd_fock_hh_series(args):
    order = _order(args)
    level = _level(args)
    if args.k is not None:
        k = args.k
        S = hh_pairing_series(k, order, args.pairing, level)
    else:
        L = _lattice(args.lattice)
        if args.v is None or args.w is None:
            raise UsageError("give --k, or --lattice with --v and --w")
        v, w = _vector(args.v, L), _vector(args.w, L)
        k = L.inner(v, w)
        S = hh_table(L, v, w, order, PairingSpec.make(L, args.pairing, level))
    q = _q(args)
    if q is not None:
        S = S.evaluate_q(q)
    if args.format == "tsv":
        return series_tsv(S), EXIT_OK
    doc = {"command": "fock hh-series", "seed": args.seed, "pairing": args.pairing, "k": k, "series": S.to_json()}
    if args.pairing == "classical":
        doc["matches_binomial"] = S == binomial_power(k, order)
    return doc, EXIT_OK


def cmd_fock_check_axioms(args):
    L = _lattice(args.lattice)
    order = _order(args)
    level = _level(args)
    seed = args.seed
    results = [
        checks.heisenberg_suite(L, max_mode=order, n_states=10, max_degree=order, seed=seed),
        checks.heisenberg_suite(L, max_mode=order, n_states=5, max_degree=order, seed=seed,
                                pairing=PairingSpec.level_c(L, level)),
        checks.heisenberg_suite(L, max_mode=min(order, 3), n_states=5, max_degree=order, seed=seed,
                                pairing=PairingSpec.q_deformed(L, level)),
        checks.adjointness_suite(L, n_triples=30, max_degree=order, seed=seed),
        checks.grouplike_suite(L, order=order, seed=seed),
        checks.hh_series_suite(order=order),
        checks.q_specialization_suite(max_level=max(3, level)),
        checks.free_generation_suite(L, order=order),
        checks.primitive_suite(L, order=min(order, 4)),
    ]
    results[1].name = f"heisenberg.c{level}"
    results[2].name = "heisenberg.q"
    if not L.odd_colors:
        results.append(checks.cocycle_suite(L, seed=seed))
    return _report("fock check-axioms", args, results, order=order, level=level)


def cmd_vertex_weight_one(args):
    L = _lattice(args.lattice)
    W = weight_one_algebra(L, _order(args))
    doc = {"command": "vertex weight-one", "seed": args.seed, "dimension": W.dimension}
    doc.update(W.to_json())
    return doc, EXIT_OK


def cmd_vertex_character(args):
    L = _lattice(args.lattice)
    S = character(L, _order(args))
    if args.format == "tsv":
        return series_tsv(S), EXIT_OK
    return {"command": "vertex character", "seed": args.seed, "series": S.to_json()}, EXIT_OK


def cmd_hilb_hodge(args):
    if args.surface is None:
        raise UsageError("--surface is required")
    try:
        X = HodgeDiamond.from_json(_load_json(args.surface))
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FockForgeError):
            raise
        raise UsageError(f"{args.surface}: bad Hodge diamond ({exc})") from None
    B = hilb_hodge_series(X, _order(args))
    if args.format == "tsv":
        return B.to_tsv(), EXIT_OK
    doc = {"command": "hilb hodge", "seed": args.seed, "surface": X.to_json(), "series": B.to_json(),
           "totals": B.totals()}
    return doc, EXIT_OK


def cmd_hilb_u0(args):
    if args.h20 < 0 or args.h11 < 0:
        raise UsageError("Hodge numbers must be nonnegative")
    S = u0_series(args.h20, args.h11, _order(args))
    if args.format == "tsv":
        return series_tsv(S), EXIT_OK
    return {"command": "hilb u0", "seed": args.seed, "h20": args.h20, "h11": args.h11, "series": S.to_json()}, EXIT_OK


def cmd_hilb_charge_check(args):
    L = _lattice(args.gram)
    level = _level(args)
    results = central_charge_check(level, L, order=_order(args), seed=args.seed)
    results.append(checks.q_specialization_suite(max_level=level))
    return _report("hilb charge-check", args, results, level=level)


def cmd_hilb_corners(args):
    if args.max < 0:
        raise UsageError("--max must be >= 0")
    if args.colors < 1:
        raise UsageError("--colors must be >= 1")
    return _report("hilb corners", args, [corner_excess_report(args.max, args.colors)])


def cmd_partition_enumerate(args):
    if args.n < 0:
        raise UsageError("--n must be >= 0")
    parts = strict_partitions(args.n) if args.strict else enumerate_partitions(args.n)
    if args.format == "tsv":
        return "".join(" ".join(str(p) for p in lam) + "\n" for lam in parts), EXIT_OK
    doc = {"command": "partition enumerate", "seed": args.seed, "n": args.n, "strict": args.strict,
           "count": len(parts), "partitions": [list(lam) for lam in parts]}
    return doc, EXIT_OK


def cmd_partition_strata(args):
    n = args.n
    if n < 1:
        raise UsageError("--n must be >= 1")
    rows = [
        {"partition": list(a), "dim_sym": stratum_dim_sym(a), "dim_hilb": stratum_dim_hilb(a)}
        for a in enumerate_partitions(n)
    ]
    census = component_census(n)
    if args.format == "tsv":
        lines = ["partition\tdim_sym\tdim_hilb"]
        lines += [f"{' '.join(map(str, r['partition']))}\t{r['dim_sym']}\t{r['dim_hilb']}" for r in rows]
        return "\n".join(lines) + "\n", EXIT_OK
    doc = {
        "command": "partition strata",
        "seed": args.seed,
        "n": n,
        "strata": rows,
        "punctual_fiber_dim": punctual_fiber_dim(n),
        "curve_components": census.components,
        "curve_component_dim": census.dimension,
    }
    return doc, EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--order", type=int, default=6, help="truncation order N (default 6)")
    common.add_argument("--level", type=int, default=1, help="level / central charge c (default 1)")
    common.add_argument("--q", default=None, help="evaluate Laurent results at this rational q")
    common.add_argument("--format", choices=("json", "tsv"), default="json")
    common.add_argument("--seed", type=int, default=0, help="seed for random property suites")

    parser = argparse.ArgumentParser(prog="fockforge", description="Exact lattice Fock space engine.")
    top = parser.add_subparsers(dest="group", required=True)

    p = top.add_parser("check-all", parents=[common], help="run every property suite on a lattice")
    p.add_argument("--lattice")
    p.set_defaults(func=cmd_check_all)

    fock = top.add_parser("fock").add_subparsers(dest="cmd", required=True)
    pairing_kinds = ("classical", "level_c", "q_deformed")
    p = fock.add_parser("apply", parents=[common], help="apply Heisenberg modes to a state")
    p.add_argument("--lattice")
    p.add_argument("--state", help="FockState JSON (default: vacuum)")
    p.add_argument("--op", action="append", default=[], help="color:mode, applied in the order given")
    p.add_argument("--pairing", choices=pairing_kinds, default="classical")
    p.set_defaults(func=cmd_fock_apply)
    p = fock.add_parser("pair", parents=[common], help="inner product of two states")
    p.add_argument("--lattice")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--pairing", choices=pairing_kinds, default="classical")
    p.set_defaults(func=cmd_fock_pair)
    p = fock.add_parser("hh-series", parents=[common], help="generating function of (h^v_n, h^w_m)")
    p.add_argument("--k", type=int, help="use a witness pair with (v, w) = k")
    p.add_argument("--lattice")
    p.add_argument("--v")
    p.add_argument("--w")
    p.add_argument("--pairing", choices=pairing_kinds, default="classical")
    p.set_defaults(func=cmd_fock_hh_series)
    p = fock.add_parser("check-axioms", parents=[common], help="Heisenberg and Hopf suites")
    p.add_argument("--lattice")
    p.set_defaults(func=cmd_fock_check_axioms)

    vertex = top.add_parser("vertex").add_subparsers(dest="cmd", required=True)
    p = vertex.add_parser("weight-one", parents=[common], help="bracket table of the weight-1 space")
    p.add_argument("--lattice")
    p.set_defaults(func=cmd_vertex_weight_one)
    p = vertex.add_parser("character", parents=[common], help="theta/eta character")
    p.add_argument("--lattice")
    p.set_defaults(func=cmd_vertex_character)

    hilb = top.add_parser("hilb").add_subparsers(dest="cmd", required=True)
    p = hilb.add_parser("hodge", parents=[common], help="bigraded Hodge series")
    p.add_argument("--surface")
    p.set_defaults(func=cmd_hilb_hodge)
    p = hilb.add_parser("u0", parents=[common], help="u^0 coefficient series")
    p.add_argument("--h20", type=int, required=True)
    p.add_argument("--h11", type=int, required=True)
    p.set_defaults(func=cmd_hilb_u0)
    p = hilb.add_parser("charge-check", parents=[common], help="level-c Heisenberg relations")
    p.add_argument("--gram", required=True, help="lattice JSON file")
    p.set_defaults(func=cmd_hilb_charge_check, order=4)
    p = hilb.add_parser("corners", parents=[common], help="addable minus removable corners")
    p.add_argument("--max", type=int, default=25)
    p.add_argument("--colors", type=int, default=1)
    p.set_defaults(func=cmd_hilb_corners)

    part = top.add_parser("partition").add_subparsers(dest="cmd", required=True)
    p = part.add_parser("enumerate", parents=[common], help="list partitions of n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--strict", action="store_true")
    p.set_defaults(func=cmd_partition_enumerate)
    p = part.add_parser("strata", parents=[common], help="stratum dimensions by partition")
    p.add_argument("--n", type=int, required=True)
    p.set_defaults(func=cmd_partition_strata)
    return parser


def render(doc) -> str:
    if isinstance(doc, str):
        return doc
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        doc, status = args.func(args)
    except UnsupportedInputError as exc:
        print(f"fockforge: unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except TruncationError as exc:
        print(f"fockforge: truncation: {exc}", file=sys.stderr)
        return EXIT_TRUNCATION
    except (UsageError, FockForgeError) as exc:
        print(f"fockforge: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    sys.stdout.write(render(doc))
    return status


if __name__ == "__main__":
    sys.exit(main())
