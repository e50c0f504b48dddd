"""padic-sen: JSON front end to the library.

Every command prints one envelope ``{"config", "result", "certified_error_exp"}``
with sorted keys.  Scalar arguments accept either a JSON encoding or a small
arithmetic expression in ``p`` and ``z`` (a primitive p^m-th root of unity,
m taken from ``--m``), e.g. ``"p"``, ``"1+p^2"``, ``"2/3"``, ``"z-1"``.
Structured arguments take JSON text or ``@path`` to read it from a file.
"""

import argparse
import ast
import json
import operator
import sys
from fractions import Fraction

from . import distributions as dist
from . import errors
from . import fourier as four
from . import galois as gal
from . import tate_series as ts
from ._series import NEG_INF
from .errors import DomainError
from .padic_fields import (FieldDesc, PadicElement, angle, binom_pow, exp, ext_automorphism, log1p,
                           teichmuller, val)
from .weight_space import (QuotientPoint, WeightPoint, classify, eval_char, inverse_theta,
                           mul_points, parse_gamma, theta)

DEFAULTS = {"p": 3, "N": 24, "D": 64, "M": 64, "gamma": "1+p", "m_max": 3, "seed": 0}


class InputError(Exception):
    """Malformed command-line input (exit status 1)."""


# ---------------------------------------------------------------------------
# decoding

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul,
           ast.Div: operator.truediv, ast.Pow: operator.pow}


def _eval_expr(node, field):
    if isinstance(node, ast.Expression):
        return _eval_expr(node.body, field)
    if isinstance(node, ast.Constant) and isinstance(node.value, int):
        return Fraction(node.value)
    if isinstance(node, ast.Name) and node.id == "p":
        return Fraction(field.p)
    if isinstance(node, ast.Name) and node.id == "z":
        if field.m == 0:
            raise InputError("'z' needs a cyclotomic level, pass --m")
        return field.zeta()
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_expr(node.operand, field)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        a, b = _eval_expr(node.left, field), _eval_expr(node.right, field)
        if isinstance(node.op, ast.Pow):
            if not (isinstance(b, Fraction) and b.denominator == 1):
                raise InputError("exponents must be integers")
            b = int(b)
            if isinstance(a, Fraction) and b < 0:
                return a ** b
        return _BINOPS[type(node.op)](a, b)
    raise InputError(f"unsupported expression element {ast.dump(node)}")


def _load_json(text):
    if text is None:
        raise InputError("a required argument is missing")
    if text.startswith("@"):
        try:
            with open(text[1:], encoding="utf-8") as fh:
                text = fh.read()
        except OSError as err:
            raise InputError(str(err)) from err
    try:
        return json.loads(text)
    except json.JSONDecodeError as err:
        raise InputError(f"invalid JSON: {err}") from err


def _is_json(text):
    return text.startswith(("@", "{", "["))


def parse_scalar(text, cfg, m=0):
    """A PadicElement from JSON or an expression in p and z."""
    if text is None:
        raise InputError("a required argument is missing")
    if isinstance(text, dict):
        return _element_from_dict(text, cfg)
    if isinstance(text, (int, float)) and not isinstance(text, bool):
        text = str(text)
    if not isinstance(text, str):
        raise InputError(f"expected a p-adic number, got {text!r}")
    if _is_json(text):
        return parse_scalar(_load_json(text), cfg, m)
    if m > cfg["m_max"]:
        raise DomainError(errors.OUT_OF_SCOPE, f"level {m} exceeds m_max = {cfg['m_max']}")
    field = FieldDesc(cfg["p"], m, cfg["N"])
    try:
        tree = ast.parse(text.replace("^", "**"), mode="eval")
    except SyntaxError as err:
        raise InputError(f"cannot parse {text!r}") from err
    try:
        v = _eval_expr(tree, field)
    except ZeroDivisionError as err:
        raise InputError(f"division by zero in {text!r}") from err
    return v if isinstance(v, PadicElement) else field(v)


def _element_from_dict(d, cfg):
    try:
        x = PadicElement.from_dict(d)
    except (KeyError, TypeError, ValueError) as err:
        raise InputError(f"bad p-adic encoding: {err}") from err
    if x.field.p != cfg["p"]:
        raise DomainError(errors.FIELD_MISMATCH, f"input has p = {x.field.p}, config has p = {cfg['p']}")
    return x


def _decode(text, cls, cfg):
    d = _load_json(text) if isinstance(text, str) else text
    try:
        obj = cls.from_dict(d)
    except (KeyError, TypeError, ValueError, AttributeError) as err:
        raise InputError(f"bad {cls.__name__} encoding: {err}") from err
    return obj


def parse_point(args, cfg, name="t", index="i"):
    """A WeightPoint from --psi JSON or --t expression (+ --i)."""
    raw = getattr(args, name)
    if raw is None:
        raise InputError(f"--{name} is required")
    if _is_json(raw):
        d = _load_json(raw)
        if isinstance(d, dict) and "t" in d:
            return _decode(d, WeightPoint, cfg)
        t = parse_scalar(d, cfg)
    else:
        t = parse_scalar(raw, cfg, args.m)
    gamma = parse_gamma(cfg["gamma"], cfg["p"], cfg["N"])
    return WeightPoint(getattr(args, index, 0) or 0, t, gamma)


def parse_series(text, cfg, level):
    """A TateSeries from its encoding, or a JSON list of coefficients at the given level."""
    d = _load_json(text) if text is None or _is_json(text) else [text]
    if isinstance(d, list):
        coeffs = [parse_scalar(c, cfg) for c in d]
        field = coeffs[0].field
        for c in coeffs[1:]:
            field = field.join(c.field)
        return ts.polynomial([field(c) for c in coeffs], level)
    return _decode(d, ts.TateSeries, cfg)


def parse_dist(text, cfg):
    return _decode(text, dist.BoundedDistribution, cfg)


def parse_bsen(text, cfg):
    return _decode(text, four.BSenElement, cfg)


def parse_galois(text, cfg):
    if text is None or _is_json(text):
        d = _load_json(text)
        if isinstance(d, dict) and "chi" in d:
            return _decode(d, gal.GaloisElement, cfg)
        chi = parse_scalar(d, cfg)
    else:
        chi = parse_scalar(text, cfg)
    return gal.GaloisElement(chi, cfg["m_max"])


# ---------------------------------------------------------------------------
# encoding


def _frac(q):
    if q is None or q == NEG_INF:
        return None
    return str(Fraction(q))


def encode(obj):
    if isinstance(obj, PadicElement):
        return obj.to_dict()
    if hasattr(obj, "to_dict"):
        return obj.to_dict()
    if isinstance(obj, Fraction):
        return str(obj)
    return obj


def _error_of(obj):
    """log_p of the certified absolute error of a result (None when exact)."""
    if isinstance(obj, PadicElement):
        return -obj.prec
    items = None
    if isinstance(obj, dist.BoundedDistribution):
        items = obj.moments
    elif isinstance(obj, (ts.TateSeries, four.BSenElement)):
        items = obj.coeffs
    elif isinstance(obj, WeightPoint):
        return -obj.t.prec
    if items:
        return -min(x.prec for x in items)
    return None


# ---------------------------------------------------------------------------
# commands


def cmd_padic(args, cfg):
    verb = args.verb
    x = parse_scalar(args.x, cfg, args.m) if verb != "binom" else None
    if verb == "val":
        v = val(x)
        return {"valuation": str(v) if isinstance(v, Fraction) else None,
                "zero_at_precision": not isinstance(v, Fraction),
                "floor": str(x.prec) if not isinstance(v, Fraction) else None}, None
    if verb == "teichmuller":
        return teichmuller(x), None
    if verb == "angle":
        return angle(x), None
    if verb == "log":
        return log1p(x, accelerate=not args.direct), None
    if verb == "exp":
        return exp(x), None
    if verb == "binom":
        t = parse_scalar(args.t, cfg, args.m)
        return binom_pow(t, parse_scalar(args.s, cfg)), None
    if verb == "aut":
        return ext_automorphism(x, args.a), None
    raise InputError(f"unknown verb {verb}")


def cmd_weight(args, cfg):
    verb = args.verb
    if verb == "inverse-theta":
        x = parse_scalar(args.x, cfg, args.m)
        return inverse_theta(x, args.n, cfg["gamma"]), None
    psi = parse_point(args, cfg)
    if verb == "classify":
        c = classify(psi)
        return {"level": c.level, "torsion": c.torsion}, None
    if verb == "theta":
        return theta(psi), None
    if verb == "eval":
        return eval_char(psi, parse_scalar(args.x, cfg)), None
    if verb == "mul":
        return mul_points(psi, parse_point(args, cfg, "t2", "i2")), None
    raise InputError(f"unknown verb {verb}")


def cmd_series(args, cfg):
    verb = args.verb
    if verb == "exp-theta":
        return ts.exp_theta_series(parse_scalar(args.c, cfg, args.m), args.n, cfg["D"]), None
    f = parse_series(args.f, cfg, args.n)
    if verb == "norm":
        return {"sup_norm_exp": _frac(ts.sup_norm(f))}, None
    if verb == "mul":
        return ts.mul(f, parse_series(args.g, cfg, args.n), cfg["D"]), None
    if verb == "translate":
        x = parse_scalar(args.x, cfg, args.m)
        return ts.translate(f, QuotientPoint.from_value(x, f.level)), None
    if verb == "eval":
        x = parse_scalar(args.x, cfg, args.m)
        return ts.evaluate(f, QuotientPoint.from_value(x, f.level)), None
    raise InputError(f"unknown verb {verb}")


def cmd_dist(args, cfg):
    verb = args.verb
    M = cfg["M"]
    if verb == "from-moments":
        xs = _load_json(args.moments) if _is_json(args.moments) else None
        if not isinstance(xs, list):
            raise InputError("--moments expects a JSON list")
        xs = [parse_scalar(x, cfg) for x in xs]
        c = None if args.C is None else Fraction(args.C)
        return dist.from_moments(xs, args.n, c), None
    if verb == "dirac":
        if args.x is not None:
            x = parse_scalar(args.x, cfg, args.m)
            return dist.dirac(QuotientPoint.from_value(x, args.n), args.n, M), None
        return dist.dirac(parse_point(args, cfg), args.n, M), None
    mu = parse_dist(args.mu, cfg)
    if verb == "eval":
        f = parse_series(args.f, cfg, mu.level)
        return dist.eval(mu, f), None
    if verb == "convolve":
        return dist.convolve(mu, parse_dist(args.nu, cfg)), None
    if verb == "theta-op":
        return dist.theta_op(mu), None
    if verb == "include":
        return dist.include_level(mu, args.n), None
    raise InputError(f"unknown verb {verb}")


def cmd_galois(args, cfg):
    g = parse_galois(args.chi, cfg)
    verb = args.verb
    if verb == "act-point":
        return gal.act_on_point(g, parse_point(args, cfg)), None
    if verb == "act-series":
        return gal.act_on_function(g, parse_series(args.f, cfg, args.n)), None
    if verb == "act-dist":
        return gal.act_on_distribution(g, parse_dist(args.mu, cfg)), None
    raise InputError(f"unknown verb {verb}")


def cmd_fourier(args, cfg):
    verb = args.verb
    if verb == "forward":
        return four.fourier(parse_dist(args.mu, cfg)), None
    P = parse_bsen(args.P, cfg)
    if verb == "inverse":
        return four.inverse_fourier(P), None
    if verb == "multiply":
        return four.multiply(P, parse_bsen(args.Q, cfg)), None
    if verb == "galois":
        return four.colmez_action(parse_galois(args.chi, cfg), P), None
    if verb == "derive":
        return four.derivative(P), None
    raise InputError(f"unknown verb {verb}")


VERBS = {
    "padic": (cmd_padic, ["val", "teichmuller", "angle", "log", "exp", "binom", "aut"]),
    "weight": (cmd_weight, ["classify", "theta", "eval", "mul", "inverse-theta"]),
    "series": (cmd_series, ["norm", "mul", "translate", "eval", "exp-theta"]),
    "dist": (cmd_dist, ["from-moments", "dirac", "eval", "convolve", "theta-op", "include"]),
    "galois": (cmd_galois, ["act-point", "act-series", "act-dist"]),
    "fourier": (cmd_fourier, ["forward", "inverse", "multiply", "galois", "derive"]),
}


def _config_parser():
    sup = argparse.SUPPRESS
    parent = argparse.ArgumentParser(add_help=False)
    parent.add_argument("--p", type=int, default=sup, help="odd prime (default 3)")
    parent.add_argument("--N", type=int, default=sup, help="precision (default 24)")
    parent.add_argument("--D", type=int, default=sup, help="series truncation (default 64)")
    parent.add_argument("--M", type=int, default=sup, help="moment truncation (default 64)")
    parent.add_argument("--gamma", default=sup, help='generator of 1 + pZ_p (default "1+p")')
    parent.add_argument("--m-max", dest="m_max", type=int, default=sup, help="maximal cyclotomic level (default 3)")
    parent.add_argument("--seed", type=int, default=sup, help="seed for sampling commands")
    return parent


def build_parser():
    common = _config_parser()
    parser = argparse.ArgumentParser(prog="padic-sen", parents=[common],
                                     description="p-adic weight space, distributions and B_Sen.")
    sub = parser.add_subparsers(dest="command", required=True)
    for name, (_, verbs) in VERBS.items():
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("verb", choices=verbs)
        sp.add_argument("--m", type=int, default=0, help="cyclotomic level for expression inputs")
        for opt in ("--x", "--t", "--t2", "--s", "--c", "--f", "--g", "--mu", "--nu",
                    "--P", "--Q", "--chi", "--moments", "--C"):
            sp.add_argument(opt, default=None)
        sp.add_argument("--i", type=int, default=0)
        sp.add_argument("--i2", type=int, default=0)
        sp.add_argument("--a", type=int, default=1, help="exponent of zeta -> zeta^a")
        sp.add_argument("--n", type=int, default=None, help="level")
        sp.add_argument("--direct", action="store_true", help="sum the log series without acceleration")
    st = sub.add_parser("selftest", parents=[common], help="run the property checks")
    st.add_argument("--scale", type=int, default=100, help="percentage of the full sample counts")
    st.add_argument("--only", nargs="*", default=None, help="criterion numbers to run")
    return parser


def _config(ns):
    cfg = {k: getattr(ns, k, v) for k, v in DEFAULTS.items()}
    for k in ("p", "N", "D", "M", "m_max"):
        if cfg[k] <= 0:
            raise InputError(f"--{k} must be positive")
    FieldDesc(cfg["p"], 0, cfg["N"])
    parse_gamma(cfg["gamma"], cfg["p"], cfg["N"])
    return cfg


def dumps(obj):
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def execute(argv):
    """Run a command; returns (exit status, output text)."""
    parser = build_parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as err:
        return (1 if err.code else 0), ""
    try:
        cfg = _config(ns)
        if ns.command == "selftest":
            from .selftest import run_all
            lines = []
            ok = run_all(seed=cfg["seed"], scale=ns.scale, only=ns.only, out=lines.append)
            lines.append("selftest: " + ("all checks passed" if ok else "FAILED"))
            return (0 if ok else 3), "\n".join(lines)
        handler = VERBS[ns.command][0]
        if ns.command in ("dist",) and ns.verb in ("from-moments", "include") and ns.n is None:
            raise InputError("--n is required")
        if ns.command == "series" and ns.n is None:
            ns.n = 0
        if ns.command == "weight" and ns.verb == "inverse-theta" and ns.n is None:
            raise InputError("--n is required")
        if ns.command == "series" and ns.verb == "exp-theta" and ns.c is None:
            raise InputError("--c is required")
        result, err = handler(ns, cfg)
        if err is None:
            err = _error_of(result)
        envelope = {"config": cfg, "result": encode(result), "certified_error_exp": _frac(err)}
        return 0, dumps(envelope)
    except DomainError as err:
        return 2, dumps({"error": err.code, "message": str(err)})
    except (InputError, ValueError, TypeError, KeyError) as err:
        return 1, dumps({"error": "MALFORMED_INPUT", "message": str(err)})


def run(argv=None):
    status, text = execute(sys.argv[1:] if argv is None else argv)
    if text:
        print(text)
    return status


def main():
    sys.exit(run())


# ---------------------------------------------------------------------------
# golden transcripts

GOLDEN_COMMANDS = {
    "padic_val_zeta9": ["padic", "val", "--x", "z-1", "--m", "2"],
    "padic_log_1p3": ["padic", "log", "--x", "p", "--N", "12"],
    "padic_exp_diverges": ["padic", "exp", "--x", "z-1", "--m", "1"],
    "padic_teichmuller_2_p5": ["padic", "teichmuller", "--x", "2", "--p", "5", "--N", "8"],
    "weight_theta_gamma": ["weight", "theta", "--t", "p"],
    "weight_classify_torsion": ["weight", "classify", "--t", "z-1", "--m", "2"],
    "series_norm": ["series", "norm", "--f", '["3", "1"]', "--n", "0"],
    "dist_convolve_dirac": None,
    "fourier_forward_identity": None,
    "galois_act_point": ["galois", "act-point", "--chi", "2", "--t", "z-1", "--m", "1", "--N", "10"],
}


def _golden_argv(name):
    argv = GOLDEN_COMMANDS[name]
    if argv is not None:
        return argv
    if name == "dist_convolve_dirac":
        a = execute(["dist", "dirac", "--t", "p", "--n", "1", "--M", "8", "--N", "12"])[1]
        b = execute(["dist", "dirac", "--t", "p^2", "--n", "1", "--M", "8", "--N", "12"])[1]
        return ["dist", "convolve", "--mu", dumps(json.loads(a)["result"]),
                "--nu", dumps(json.loads(b)["result"]), "--M", "8", "--N", "12"]
    if name == "fourier_forward_identity":
        mu = execute(["dist", "dirac", "--x", "0", "--n", "0", "--M", "8", "--N", "8"])[1]
        return ["fourier", "forward", "--mu", dumps(json.loads(mu)["result"]), "--N", "8"]
    raise KeyError(name)


def golden_transcripts():
    """name -> (exit status, output) for the fixed golden command set."""
    return {name: execute(_golden_argv(name)) for name in GOLDEN_COMMANDS}


if __name__ == "__main__":
    main()
