"""Module expressions (ModuleSpec) and versioned module files."""

import json

from .classify import FactoredSeries
from .exactlin import RatFuncMat, rat
from .liealg import IndexScheme, build_g_rank1, build_gl2, build_glN, build_spin
from .twistact import (
    MINUS,
    PLUS,
    SAction,
    family_of,
    onedim_plus,
    restrict_S,
    tensor_mixed,
    trivial_S,
    twist_even,
    twisted_eval,
)
from .yangact import YAction, eval_module, shift, tensor_action, trivial, twist_series

FORMAT = 1


class SpecError(ValueError):
    """Malformed module expression or module file."""


def _family(name):
    if name == "Y":
        return "Y"
    try:
        return family_of(name)
    except ValueError as e:
        raise SpecError(str(e)) from None


def _node(expr):
    if not isinstance(expr, dict) or len(expr) != 1:
        raise SpecError(f"expression node must be a one-key object, got {expr!r}")
    return next(iter(expr.items()))


def _eval_y(expr, N, symmetric):
    kind, arg = _node(expr)
    if kind == "eval":
        hw = [rat(a) for a in arg["hw"]]
        if len(hw) != N:
            raise SpecError(f"eval hw has {len(hw)} entries, expected {N}")
        m = build_gl2(*hw) if N == 2 else build_glN(hw)
        return eval_module(m, symmetric=symmetric)
    if kind == "trivial":
        return trivial(N, symmetric)
    if kind == "tensor":
        if not isinstance(arg, list) or not arg:
            raise SpecError("tensor needs a nonempty list")
        return tensor_action([_eval_y(e, N, symmetric) for e in arg])
    if kind == "shift":
        return shift(rat(arg["a"]), _eval_y(arg["of"], N, symmetric))
    if kind == "twist":
        return twist_series(FactoredSeries.from_json(arg["phi"]), _eval_y(arg["of"], N, symmetric))
    raise SpecError(f"unknown Y(N) expression {kind!r}")


def _eval_s(expr, fam, N):
    kind, arg = _node(expr)
    if kind in ("eval", "tensor", "shift"):
        return restrict_S(_eval_y(expr, N, True), fam)
    if kind == "restrict":
        return restrict_S(_eval_y(arg["of"], N, True), fam)
    if kind == "trivial":
        return trivial_S(fam, N)
    if kind == "onedim":
        if fam != PLUS or N != 2:
            raise SpecError("onedim is a Y+(2) module")
        return onedim_plus(rat(arg["gamma"]))
    if kind == "twisted_eval":
        alg = arg["algebra"]
        return twisted_eval(build_g_rank1(alg, rat(arg["mu"])), fam)
    if kind == "spin":
        if fam != PLUS:
            raise SpecError("spin modules belong to the orthogonal family")
        return twisted_eval(build_spin(N), fam)
    if kind == "tensor_mixed":
        return tensor_mixed(_eval_y(arg["left"], N, True), _eval_s(arg["right"], fam, N))
    if kind == "twist":
        return twist_even(FactoredSeries.from_json(arg["phi"]), _eval_s(arg["of"], fam, N))
    raise SpecError(f"unknown twisted expression {kind!r}")


def build_from_spec(spec):
    """Evaluate a ModuleSpec: {"family": "Y"|"Y+"|"Y-", "N": n, "expr": {...}}."""
    try:
        fam = _family(spec["family"])
        N = int(spec["N"])
        expr = spec["expr"]
    except (KeyError, TypeError) as e:
        raise SpecError(f"module spec needs family, N and expr: {e}") from None
    if N < 1:
        raise SpecError("N must be positive")
    try:
        if fam == "Y":
            return _eval_y(expr, N, bool(spec.get("symmetric", False)))
        return _eval_s(expr, fam, N)
    except (KeyError, TypeError) as e:
        raise SpecError(f"malformed expression: {e}") from None


def module_to_json(x):
    d = {
        "format": FORMAT,
        "family": "Y" if isinstance(x, YAction) else ("Y+" if x.family == PLUS else "Y-"),
        "N": x.N,
        "dim": x.dim,
        "hw_index": x.hw_index,
        "provenance": x.provenance,
        "entries": [[m.to_json() for m in row] for row in (x.t if isinstance(x, YAction) else x.s)],
    }
    if isinstance(x, YAction):
        d["symmetric"] = x.scheme.symmetric
    elif x.underlying is not None:
        d["underlying"] = module_to_json(x.underlying)
    return d


def module_from_json(d):
    if not isinstance(d, dict) or d.get("format") != FORMAT:
        raise SpecError("not a version-1 module file")
    try:
        ent = [[RatFuncMat.from_json(m) for m in row] for row in d["entries"]]
        N = int(d["N"])
        if d["family"] == "Y":
            return YAction(N, IndexScheme(N, bool(d.get("symmetric", False))), ent, d.get("provenance"), d.get("hw_index", 0))
        under = module_from_json(d["underlying"]) if "underlying" in d else None
        return SAction(_family(d["family"]), N, ent, d.get("provenance"), under, d.get("hw_index", 0))
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
        raise SpecError(f"malformed module file: {e}") from None


def dumps(obj):
    return json.dumps(obj, sort_keys=True)


__all__ = ["FORMAT", "SpecError", "build_from_spec", "dumps", "module_from_json", "module_to_json"]
