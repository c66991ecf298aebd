"""Command-line front end.

Exit codes: 0 success, 1 a size guard refused the job, 2 invalid input,
3 a computed result contradicts a proven property.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

import numpy as np

from frobstab import __version__
from frobstab.code import Code, dual_standard_form, standard_form
from frobstab.codefile import emit_code_file, legend, read_code
from frobstab.errors import CodeFormatError, ConsistencyError, GuardError
from frobstab.isometry import (CodeMap, classify_ambient_isometries, enumerate_monomial_group,
                               enumerate_symp_group, extension_search)
from frobstab.metrics import ENUMERATION_LIMIT, relative_distance
from frobstab.pauli import REALIZE_LIMIT, quantum_code, realize_matrix, stabilizer_lift
from frobstab.reduction import distance_chain_report, reduce_code
from frobstab.ring import build_ring, verify_frobenius
from frobstab import search as search_mod


def _rows(a) -> list:
    return np.asarray(a).astype(int).tolist()


def _need_code(args) -> Code:
    if not args.code:
        raise CodeFormatError("this command needs --code <file>")
    return read_code(args.code)


def _ring_of(args):
    if args.ring:
        return build_ring(args.ring)
    if args.code:
        return read_code(args.code).ring
    raise CodeFormatError("this command needs --ring <spec> or --code <file>")


def cmd_ring_info(args):
    ring = _ring_of(args)
    report = verify_frobenius(ring)
    out = {"q": ring.q, "char": ring.char, "N": ring.N, "alpha": ring.alpha,
           "maximal_ideal_gens": list(ring.maximal_ideal_gens), "units": len(ring.units),
           "field": ring.field.spec, "char_exp": ring.char_exp_table.astype(int).tolist(),
           "verification": report}
    if legend(ring):
        out["legend"] = legend(ring)
    return ring.spec, out


def cmd_check(args):
    C = _need_code(args)
    so = C.is_self_orthogonal()
    out = {"cardinality": C.cardinality, "self_orthogonal": so, "free": C.is_free(),
           "mu": C.mu, "rank": C.rank, "self_dual": C.is_self_dual()}
    if not so:
        out["gram"] = _rows(C.gram())
    return C.ring.spec, out


def cmd_dual(args):
    C = _need_code(args)
    D = C.dual()
    return C.ring.spec, {"cardinality": D.cardinality, "generators": _rows(D.generators),
                         "code_file": emit_code_file(D)}


def cmd_distance(args):
    C = _need_code(args)
    return C.ring.spec, relative_distance(C, force=args.force).as_dict()


def cmd_reduce(args):
    C = _need_code(args)
    rep = distance_chain_report(C, force=args.force)
    if rep.violations:
        raise ConsistencyError("; ".join(rep.violations))
    out = rep.as_dict()
    out["reduced_generators"] = _rows(reduce_code(C).generators)
    return C.ring.spec, out


def cmd_standard_form(args):
    C = _need_code(args)
    sf = standard_form(C)
    H = dual_standard_form(C.ring, sf.k, sf.M, sf.N1, sf.N2)
    trail = [{"step": kind, "arg": (arg + 1 if kind == "tau_i" else [p + 1 for p in arg])}
             for kind, arg in sf.trail]
    return C.ring.spec, {"k": sf.k, "M": _rows(sf.M), "N1": _rows(sf.N1), "N2": _rows(sf.N2),
                         "trail": trail, "matrix": _rows(sf.matrix), "dual_matrix": _rows(H)}


def _lift(args):
    C = _need_code(args)
    S = stabilizer_lift(C)
    gens = [{"phase": g.phase, "a": list(g.a), "b": list(g.b), "order": m}
            for g, m in zip(S.generators, S.orders)]
    return C, S, gens


def cmd_lift(args):
    C, S, gens = _lift(args)
    out = {"N": C.ring.N, "size": len(S), "generators": gens}
    if len(S) <= 4096:
        out["validity"] = S.validity()
    return C.ring.spec, out


def cmd_realize(args):
    C, S, gens = _lift(args)
    if C.ring.q ** C.n > REALIZE_LIMIT and not args.force:
        raise GuardError(f"q^n = {C.ring.q ** C.n} exceeds the realization limit {REALIZE_LIMIT}")
    mats = []
    for g in S.generators:
        M = realize_matrix(g)
        mats.append({"real": np.round(M.real, 12).tolist(), "imag": np.round(M.imag, 12).tolist()})
    dim, basis = quantum_code(S)
    return C.ring.spec, {"generators": gens, "matrices": mats, "dimension": dim,
                         "basis": {"real": np.round(basis.real, 12).tolist(),
                                   "imag": np.round(basis.imag, 12).tolist()}}


def cmd_isometry_group(args):
    C = _need_code(args)
    mode = args.mode or "mon"
    if mode in ("mon", "mon-dual"):
        listing = enumerate_monomial_group(C, "dual" if mode == "mon-dual" else "code", force=args.force)
    elif mode in ("symp", "symp-dual"):
        listing = enumerate_symp_group(C, "dual" if mode == "symp-dual" else "code", force=args.force)
    else:
        raise CodeFormatError(f"unknown isometry-group mode {mode!r} (mon, mon-dual, symp, symp-dual)")
    return C.ring.spec, listing.as_dict()


def cmd_extend(args):
    C = _need_code(args)
    if not args.image:
        raise CodeFormatError("extend needs --image <file> listing the images of the generator rows")
    image = read_code(args.image)
    if image.ring is not C.ring or image.n != C.n or image.generators.shape != C.generators.shape:
        raise CodeFormatError("image file must match the code's ring, n and number of rows")
    f = CodeMap(C.ring, C.n, C.generators, image.generators)
    res = extension_search(f, force=args.force)
    out = res.as_dict()
    out["well_defined"] = f.is_well_defined()
    out["isometry"] = f.is_isometry()
    out["maps_into_code"] = bool(C.contains_many(image.generators).all())
    return C.ring.spec, out


def cmd_classify(args):
    ring = _ring_of(args)
    return ring.spec, classify_ambient_isometries(ring, args.n or 1, force=args.force)


def cmd_search(args):
    ring = _ring_of(args)
    n = args.n or 2
    k = args.k or 1
    if args.mode == "exhaustive":
        log = search_mod.exhaustive_search(ring, n, k)
    else:
        log = search_mod.conjecture_search(ring, n, k, args.trials, args.seed)
    if args.log:
        with open(args.log, "w") as fh:
            fh.write(log.jsonl())
    for rec in log.strict:
        print(f"STRICT: dist_ring={rec['dist_ring']} < dist_field={rec['dist_field']} "
              f"(counterexample candidate) {json.dumps(rec)}", file=sys.stderr)
    summary = log.summary()
    if summary["violations"]:
        raise ConsistencyError(f"{len(summary['violations'])} records with dist_ring > dist_field")
    return ring.spec, summary


COMMANDS = {
    "ring-info": cmd_ring_info, "check": cmd_check, "dual": cmd_dual, "distance": cmd_distance,
    "reduce": cmd_reduce, "standard-form": cmd_standard_form, "lift": cmd_lift,
    "realize": cmd_realize, "isometry-group": cmd_isometry_group, "extend": cmd_extend,
    "classify": cmd_classify, "search": cmd_search,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="frobstab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("command", choices=sorted(COMMANDS))
    parser.add_argument("--code", help="code file (or the name of a bundled example)")
    parser.add_argument("--image", help="code file whose rows are the images (extend)")
    parser.add_argument("--ring", help="ring spec, e.g. Z4, GF4:x^2+x+1, F2u2, F2XY")
    parser.add_argument("--n", type=int, help="number of qudits (classify, search)")
    parser.add_argument("--k", type=int, help="free rank (search)")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--trials", type=int, default=100)
    parser.add_argument("--force", action="store_true", help="lift size guards")
    parser.add_argument("--json", help="write the JSON report here ('-' for stdout)")
    parser.add_argument("--mode", help="command-specific mode")
    parser.add_argument("--log", help="JSON-lines log path (search)")
    return parser


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    t0 = time.perf_counter()
    try:
        ring_spec, outputs = COMMANDS[args.command](args)
        status = 0
    except GuardError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 1
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return 3
    except (CodeFormatError, ValueError, OSError) as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return 2
    report = {
        "command": args.command, "ring": ring_spec,
        "inputs": {k: v for k, v in vars(args).items() if k not in ("command", "json") and v is not None},
        "outputs": outputs, "seed": args.seed,
        "guards": {"enumeration": ENUMERATION_LIMIT, "realize": REALIZE_LIMIT, "force": args.force},
        "version": __version__, "elapsed_ms": round(1000 * (time.perf_counter() - t0), 3),
    }
    text = json.dumps(report, indent=2, default=_jsonable)
    if args.json == "-":
        print(text)
    else:
        if args.json:
            with open(args.json, "w") as fh:
                fh.write(text + "\n")
        print(json.dumps(outputs, indent=2, default=_jsonable))
    return status


def _jsonable(obj):
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    if isinstance(obj, (set, frozenset)):
        return sorted(obj)
    raise TypeError(f"{type(obj).__name__} is not JSON serializable")


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
