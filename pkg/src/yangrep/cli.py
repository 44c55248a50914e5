"""yangrep command line.

Exit codes: 0 success, 1 a verification check failed (or a sweep disagreed),
2 malformed input, 3 a construction-time invariant failed.
stdout carries only JSON or CSV; logs go to stderr.
"""

import argparse
import csv
import itertools
import json
import logging
import sys

from . import classify as C
from . import verify as V
from .exactlin import rat, rat_str
from .repanalysis import analyze
from .serialize import SpecError, build_from_spec, dumps, module_from_json, module_to_json
from .twistact import SAction, symmetry_defects
from .yangact import eigenvalue_at_infinity_ok

log = logging.getLogger("yangrep")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INVARIANT = 0, 1, 2, 3


class InputError(Exception):
    pass


class InvariantError(Exception):
    pass


def _read_json(path):
    try:
        if path in (None, "-"):
            return json.load(sys.stdin)
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as e:
        raise InputError(f"cannot read JSON from {path or 'stdin'}: {e}") from None


def _emit(obj, out=None):
    text = dumps(obj)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


# ------------------------------------------------------------------ build / analyze


def construction_invariants(x):
    bad = []
    if not eigenvalue_at_infinity_ok(x):
        bad.append("generator matrix is not the identity at u = infinity")
    if isinstance(x, SAction):
        d = symmetry_defects(x)
        if d:
            bad.append(f"symmetry relation fails at positions {d}")
    return bad


def build_module(spec):
    try:
        x = build_from_spec(spec)
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(str(e)) from None
    bad = construction_invariants(x)
    if bad:
        raise InvariantError("; ".join(bad))
    return x


def cmd_build(spec_path, out_path):
    x = build_module(_read_json(spec_path))
    log.info("built %s module of dimension %d", module_to_json(x)["family"], x.dim)
    _emit(module_to_json(x), out_path)
    return EXIT_OK


def load_module(path):
    try:
        return module_from_json(_read_json(path))
    except SpecError as e:
        raise InputError(str(e)) from None


def cmd_analyze(module_path, out_path=None):
    _emit(analyze(load_module(module_path)).to_json(), out_path)
    return EXIT_OK


# ------------------------------------------------------------------ classify


def _series(d):
    if isinstance(d, str):
        d = {"factors": []} if d.strip() == "1" else None
    if not isinstance(d, (dict, list)):
        raise InputError(f"expected a factored series, got {d!r}")
    return C.FactoredSeries.from_json(d)


def _series_list(req, key):
    v = req.get(key)
    if not isinstance(v, list):
        raise InputError(f"predicate needs a list {key!r}")
    return [_series(s) for s in v]


def _check_n(req, hw, extra=0):
    if "n" in req and int(req["n"]) + extra != len(hw):
        raise InputError(f"n = {req['n']} does not match {len(hw)} highest-weight components")


def _recheck(res, hw, kind):
    """Re-derive every witness identity P(u+1)/P(u) = ratio from scratch."""
    if not res.finite_dim:
        return
    ws = res.witnesses
    chain = ws if kind == "Y" else ws[1:]
    ok = all(C.shift_ratio(P) == a.ratfunc() / b.ratfunc() for P, a, b in zip(chain, hw, hw[1:]))
    if kind == "Y-":
        mu = hw[0]
        ok = ok and C.is_symmetric(ws[0]) and C.shift_ratio(ws[0]) == mu.neg_var().ratfunc() / mu.ratfunc()
    if not ok:
        raise InvariantError("witness re-verification failed")


def _solver_json(P):
    return {"exists": P is not None, "P": [] if P is None else [P.to_json()]}


def run_predicate(req):
    if not isinstance(req, dict) or "predicate" not in req:
        raise InputError("predicate request must be an object with a 'predicate' key")
    name = req["predicate"]
    try:
        if name == "fd_Y":
            hw = _series_list(req, "lambda")
            _check_n(req, hw)
            res = C.fd_Y(hw)
            _recheck(res, hw, "Y")
            return res.to_json()
        if name in ("fd_Y-", "fd_Yminus"):
            hw = _series_list(req, "mu")
            _check_n(req, hw)
            res = C.fd_Yminus(hw)
            _recheck(res, hw, "Y-")
            return res.to_json()
        if name in ("fd_Y+", "fd_Yplus_even"):
            hw = _series_list(req, "mu")
            _check_n(req, hw)
            return C.fd_Yplus_even(hw).to_json()
        if name == "fd_Yplus_odd":
            hw = _series_list(req, "mu")
            _check_n(req, hw, 1)
            return C.fd_Yplus_odd(hw).to_json()
        if name in ("fd_Yplus3", "fd_Y+3"):
            al, be = [rat(a) for a in req["alphas"]], [rat(b) for b in req["betas"]]
            if len(al) != len(be):
                raise InputError("alphas and betas must have equal length")
            res, pairs = C.fd_Yplus3(al, be)
            out = res.to_json()
            if pairs:
                out["pairs"] = [[rat_str(a), rat_str(b)] for a, b in pairs]
            return out
        if name == "arrow":
            return _solver_json(C.arrow(_series(req["l1"]), _series(req["l2"])))
        if name == "sym_arrow":
            return _solver_json(C.sym_arrow(_series(req["mu"])))
        if name == "gamma_solver":
            sol = C.gamma_solver(_series(req["mu"]))
            if sol is None:
                return {"exists": False, "P": []}
            return {"exists": True, "P": [sol[0].to_json()], "gamma": rat_str(sol[1])}
        if name == "crit_strings":
            return {"irreducible": C.crit_strings(req["variant"], _crit_data(req["variant"], req["data"]))}
    except (KeyError, TypeError) as e:
        raise InputError(f"malformed predicate request: missing or bad field {e}") from None
    except ValueError as e:
        raise InputError(str(e)) from None
    raise InputError(f"unknown predicate {name!r}")


def _crit_data(variant, data):
    if variant == "2.11":
        return [(rat(a), rat(b)) for a, b in data]
    if variant == "4.7":
        return [rat(g) for g in data]
    if variant == "5.6":
        return ([rat(g) for g in data["gammas"]], rat(data["gamma"]))
    raise InputError(f"unknown string criterion {variant!r}")


def cmd_classify(spec_path, out_path=None):
    _emit(run_predicate(_read_json(spec_path)), out_path)
    return EXIT_OK


# ------------------------------------------------------------------ verify

SUITES = ("defining", "qdet_sdet", "star_hw", "prop62", "prop63_64", "example57", "oracle_sweep", "hw_products", "sharp", "predicates")


def _rats(s):
    return [rat(v) for v in str(s).split(",") if v.strip()]


def _want(args, n, usage):
    if len(args) not in n:
        raise InputError(f"usage: {usage}")


def run_suite(suite, args=(), module=None):
    args = list(args)
    try:
        if suite == "defining":
            if module is not None:
                return V.verify_defining(load_module(module))
            return V.verify_catalog_defining()
        if suite == "qdet_sdet":
            if module is not None:
                return V.verify_qdet_sdet(load_module(module))
            return V.verify_catalog_qdet_sdet()
        if suite == "hw_products":
            return V.verify_hw_products()
        if suite == "star_hw":
            _want(args, (0, 2), "verify star_hw [ALPHAS BETAS]")
            al, be = (_rats(args[0]), _rats(args[1])) if args else ([rat(2)], [rat(0)])
            return V.verify_star_hw(al, be)
        if suite == "prop62":
            _want(args, (2, 3), "verify prop62 ALPHA BETA [PMAX]")
            return V.verify_prop62(rat(args[0]), rat(args[1]), int(args[2]) if len(args) > 2 else 3)
        if suite == "prop63_64":
            _want(args, (0, 2), "verify prop63_64 [ALPHAS BETAS]")
            al, be = (_rats(args[0]), _rats(args[1])) if args else ([rat(2), rat(1)], [rat(0), rat(0)])
            return V.verify_prop63_64(al, be)
        if suite == "example57":
            _want(args, (2,), "verify example57 GAMMA1 GAMMA2")
            return V.verify_example57(rat(args[0]), rat(args[1]))
        if suite == "oracle_sweep":
            _want(args, (1,), "verify oracle_sweep {2.11|4.7|5.6}")
            return V.oracle_sweep(args[0])
        if suite == "sharp":
            return V.verify_sharp()
        if suite == "predicates":
            return V.verify_predicates()
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(str(e)) from None
    raise InputError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")


def cmd_verify(suite, args=(), module=None, out_path=None):
    rep = run_suite(suite, args, module)
    _emit(rep.to_json(), out_path)
    for f in rep.failures():
        log.error("FAILED %s: %s", f["check"], f["counterexample"])
    log.info("%s: %d checks, %d failed", rep.suite, len(rep.checks), len(rep.failures()))
    return EXIT_OK if rep.passed else EXIT_FAIL


# ------------------------------------------------------------------ sweep


def _params_211(p):
    k = sum(1 for n in p if n.startswith("alpha"))
    inst = tuple((p[f"alpha{i}"], p[f"beta{i}"]) for i in range(1, k + 1))
    if not all(C.is_nonneg_int(a - b) for a, b in inst):
        return None
    return inst


def _pairs_ok(gs):
    return all(C.is_nonneg_int(gs[i] + gs[i + 1]) for i in range(0, len(gs), 2))


def _params_47(p):
    k2 = sum(1 for n in p if n.startswith("gamma"))
    gs = tuple(p[f"gamma{i}"] for i in range(1, k2 + 1))
    if k2 != 4 or not _pairs_ok(gs):
        return None
    # the oracle construction needs each pair's Y(2)-tensor to be irreducible
    if not C.crit_strings("2.11", [(gs[0], -gs[1]), (gs[2], -gs[3])]):
        return None
    return gs


def _params_56(p):
    gs = (p["gamma1"], p["gamma2"])
    if not _pairs_ok(gs):
        return None
    return (gs, p["v"])


SWEEPS = {
    "crit_strings:2.11": ("2.11", _params_211),
    "crit_strings:4.7": ("4.7", _params_47),
    "crit_strings:5.6": ("5.6", _params_56),
}


def _grid_points(grid):
    names = list(grid)
    axes = [[rat(v) for v in grid[n]] for n in names]
    for combo in itertools.product(*axes):
        yield names, dict(zip(names, combo))


def _check_grid(grid):
    if not isinstance(grid, dict) or not all(isinstance(v, list) for v in grid.values()):
        raise InputError("grid must map parameter names to lists of rationals")


def _fd_pair(p):
    k = sum(1 for n in p if n.startswith("alpha"))
    al = [p[f"alpha{i}"] for i in range(1, k + 1)]
    be = [p[f"beta{i}"] for i in range(1, k + 1)]
    r3, _ = C.fd_Yplus3(al, be)
    r7 = C.fd_Yplus_odd(list(C.plus3_weights(al, be)))
    return r3.finite_dim, r7.finite_dim


def _bool(b):
    return "true" if b else "false"


def run_sweep_config(cfg, grid_override=None):
    """Returns (header, rows, all_agree)."""
    if not isinstance(cfg, dict) or "predicate" not in cfg:
        raise InputError("sweep config needs a 'predicate'")
    pred = cfg["predicate"]
    grid = grid_override if grid_override is not None else cfg.get("grid")
    _check_grid(grid)
    oracle = bool(cfg.get("oracle", True))
    names = list(grid)
    try:
        points = [p for _, p in _grid_points(grid)]
    except ValueError as e:
        raise InputError(str(e)) from None
    rows, agree_all = [], True
    try:
        if pred == "fd_Yplus3-vs-fd_Yplus_odd":
            header = names + ["fd_Yplus3", "fd_Yplus_odd", "agree"]
            for p in points:
                a, b = _fd_pair(p)
                agree_all &= a == b
                rows.append([rat_str(p[n]) for n in names] + [_bool(a), _bool(b), _bool(a == b)])
        elif pred in SWEEPS:
            kind, conv = SWEEPS[pred]
            insts, kept = [], []
            for p in points:
                inst = conv(p)
                if inst is not None:
                    insts.append(inst)
                    kept.append(p)
                else:
                    log.info("skipping grid point %s (outside the criterion's domain)", {n: rat_str(v) for n, v in p.items()})
            header = names + ["criterion"] + (["oracle", "agree"] if oracle else [])
            if oracle:
                results = [r for _, r in V.run_sweep(kind, insts)]
            else:
                results = [(V.sweep_point_criterion(kind, i), None) for i in insts]
            for p, (crit, orc) in zip(kept, results):
                row = [rat_str(p[n]) for n in names] + [_bool(crit)]
                if oracle:
                    agree_all &= crit == orc
                    row += [_bool(orc), _bool(crit == orc)]
                rows.append(row)
        else:
            raise InputError(f"unknown sweep predicate {pred!r}")
    except KeyError as e:
        raise InputError(f"grid is missing parameter {e}") from None
    return header, rows, agree_all


def cmd_sweep(config_path, out_csv=None, grid=None):
    cfg = _read_json(config_path)
    override = None
    if grid is not None:
        try:
            override = json.loads(grid)
        except json.JSONDecodeError as e:
            raise InputError(f"--grid is not JSON: {e}") from None
    header, rows, ok = run_sweep_config(cfg, override)
    fh = open(out_csv, "w", newline="") if out_csv else sys.stdout
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)
        if rows:
            n_agree = sum(1 for r in rows if r[-1] == "true") if header[-1] == "agree" else len(rows)
            w.writerow(["SUMMARY"] + [""] * (len(header) - 2) + [f"{n_agree}/{len(rows)}"])
    finally:
        if out_csv:
            fh.close()
    log.info("%d grid points evaluated", len(rows))
    return EXIT_OK if ok else EXIT_FAIL


# ------------------------------------------------------------------ entry point


def make_parser():
    ap = argparse.ArgumentParser(prog="yangrep", description="Exact representations of Yangians and twisted Yangians.")
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct a module from a ModuleSpec JSON file")
    b.add_argument("--spec", required=True)
    b.add_argument("--out")

    a = sub.add_parser("analyze", help="structural analysis of a module file")
    a.add_argument("module", nargs="?")
    a.add_argument("--spec", dest="module_opt", help="module file (alternative to the positional)")
    a.add_argument("--out")

    c = sub.add_parser("classify", help="evaluate a finite-dimensionality predicate or solver")
    c.add_argument("--spec", default="-", help="predicate JSON file ('-' for stdin)")
    c.add_argument("--out")

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("suite", nargs="?")
    v.add_argument("args", nargs="*")
    v.add_argument("--suite", dest="suite_opt")
    v.add_argument("--module", help="module file for the defining/qdet_sdet suites")
    v.add_argument("--out")

    s = sub.add_parser("sweep", help="evaluate a predicate (and its oracle) over a grid, writing CSV")
    s.add_argument("--spec", required=True, help="SweepConfig JSON")
    s.add_argument("--grid", help="inline JSON grid overriding the config's grid")
    s.add_argument("--out")
    return ap


def _setup_logging(verbose):
    h = logging.StreamHandler(sys.stderr)
    h.setFormatter(logging.Formatter("%(levelname)s %(message)s"))
    log.handlers[:] = [h]
    log.propagate = False
    log.setLevel(logging.INFO if verbose else logging.WARNING)


def main(argv=None):
    ap = make_parser()
    try:
        ns = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    _setup_logging(ns.verbose)
    try:
        if ns.command == "build":
            return cmd_build(ns.spec, ns.out)
        if ns.command == "analyze":
            path = ns.module or ns.module_opt
            if path is None:
                raise InputError("analyze needs a module file")
            return cmd_analyze(path, ns.out)
        if ns.command == "classify":
            return cmd_classify(ns.spec, ns.out)
        if ns.command == "verify":
            suite = ns.suite_opt or ns.suite
            args = ([ns.suite] if ns.suite_opt and ns.suite else []) + ns.args
            if suite is None:
                raise InputError("verify needs a suite name")
            return cmd_verify(suite, args, ns.module, ns.out)
        if ns.command == "sweep":
            return cmd_sweep(ns.spec, ns.out, ns.grid)
    except InputError as e:
        log.error("%s", e)
        return EXIT_INPUT
    except InvariantError as e:
        log.error("invariant failure: %s", e)
        return EXIT_INVARIANT
    return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
