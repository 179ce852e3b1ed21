"""Command-line front end.

Exit status: 0 accept (or selftest passed), 1 reject (or selftest failed),
2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Optional

from .decide import decide_equiv, decide_full_slices
from .exactla import FieldMode
from .minvars import decide_waring
from .oracle import from_poly
from .parsing import ParseError, load_polynomial, parse, serialize
from .randcheck import DEFAULT_SET_SIZE, SampleConfig
from .reconstruct import Decomposition, ReconstructionFailed, reconstruct
from .scalarpoly import Poly

EXIT_ACCEPT, EXIT_REJECT, EXIT_USAGE = 0, 1, 2

# every structured report carries exactly these keys (null when not applicable)
REPORT_FIELDS = (
    "command", "input", "n", "d", "mode", "seed", "set_size", "trials",
    "verdict", "stage", "error_bound_positive", "error_bound_negative",
    "oracle_calls", "trial_stages", "max_bits", "note",
    "essential_count", "error_bound_rank", "terms", "residual", "real",
)


@dataclass
class RunConfig:
    command: str
    expression: Optional[str] = None
    input_path: Optional[str] = None
    mode: FieldMode = FieldMode.COMPLEX
    set_size: int = DEFAULT_SET_SIZE
    seed: int = 0
    trials: int = 1
    fmt: str = "human"
    nvars: Optional[int] = None
    degree: Optional[int] = None

    def sample_config(self) -> SampleConfig:
        return SampleConfig(set_size=self.set_size, seed=self.seed, trials=self.trials)


class InputError(ValueError):
    pass


def _read_polynomial(cfg: RunConfig) -> tuple[Poly, int]:
    if (cfg.expression is None) == (cfg.input_path is None):
        raise InputError("give exactly one of an inline expression or --input FILE")
    if cfg.input_path is not None:
        if cfg.input_path == "-":
            text = sys.stdin.read()
        else:
            with open(cfg.input_path, encoding="utf-8") as fh:
                text = fh.read()
    else:
        text = cfg.expression
    try:
        p = load_polynomial(text)
    except ParseError as exc:
        raise InputError(f"parse error: {exc}") from exc
    except (ValueError, json.JSONDecodeError) as exc:
        raise InputError(str(exc)) from exc
    if cfg.nvars is not None:
        if cfg.nvars < p.n:
            raise InputError(f"input uses {p.n} variables but --nvars is {cfg.nvars}")
        p = Poly(cfg.nvars, {e + (0,) * (cfg.nvars - p.n): c for e, c in p.items()})
    d = p.homogeneous_degree()
    if p.is_zero():
        if cfg.degree is None:
            raise InputError("the zero polynomial needs --degree")
        d = cfg.degree
    elif d is None:
        raise InputError("input is not homogeneous")
    elif cfg.degree is not None and cfg.degree != d:
        raise InputError(f"input has degree {d}, not {cfg.degree}")
    if d < 3:
        raise InputError(f"degree must be at least 3, got {d}")
    if p.n < 1:
        raise InputError("input has no variables")
    return p, d


def _blank(command: str, p: Poly) -> dict:
    out = dict.fromkeys(REPORT_FIELDS)
    out["command"] = command
    out["input"] = serialize(p)
    return out


def _fill_decision(out: dict, rep) -> None:
    doc = rep.to_dict()
    for key in doc:
        if key in out and key not in ("n", "command", "input"):
            out[key] = doc[key]


def run(cfg: RunConfig) -> tuple[int, dict]:
    """Execute one command; returns the exit status and the structured report."""
    p, d = _read_polynomial(cfg)
    sc = cfg.sample_config()
    o = from_poly(p, degree=d)
    out = _blank(cfg.command, p)
    out["n"], out["d"] = p.n, d
    if cfg.command == "decide":
        rep = decide_equiv(o, cfg.mode, sc)
        _fill_decision(out, rep)
        return (EXIT_ACCEPT if rep.accepted else EXIT_REJECT), out
    if cfg.command == "minvars":
        rep = decide_waring(o, cfg.mode, sc)
        _fill_decision(out, rep.inner)
        out["n"], out["d"] = p.n, d
        out["essential_count"] = rep.essential_count
        out["error_bound_rank"] = rep.error_bound_rank
        out["oracle_calls"] = o.calls
        return (EXIT_ACCEPT if rep.accepted else EXIT_REJECT), out
    if cfg.command == "reconstruct":
        try:
            rep = reconstruct(o, cfg.mode, sc)
        except ReconstructionFailed as exc:
            out["verdict"] = "accept"
            out["stage"] = "accepted"
            out["note"] = f"reconstruction failed: {exc}"
            out["oracle_calls"] = o.calls
            return EXIT_REJECT, out
        if isinstance(rep, Decomposition):
            _fill_decision(out, rep.decision)
            doc = rep.to_dict()
            out["terms"] = doc["terms"]
            out["residual"] = doc["residual"]
            out["real"] = doc["real"]
            out["oracle_calls"] = o.calls
            return EXIT_ACCEPT, out
        _fill_decision(out, rep)
        return EXIT_REJECT, out
    raise InputError(f"unknown command {cfg.command!r}")


# ---------------------------------------------------------------------------
# rendering


def _fmt_num(x: float) -> str:
    return f"{x:.10g}"


def _fmt_complex(re_im) -> str:
    re, im = re_im
    if abs(im) <= 1e-12 * max(1.0, abs(re)):
        return _fmt_num(re)
    if abs(re) <= 1e-12 * abs(im):
        return f"{_fmt_num(im)}j"
    return f"({_fmt_num(re)}{'+' if im >= 0 else '-'}{_fmt_num(abs(im))}j)"


def format_term(term: dict, d: int) -> str:
    body = ""
    top = max((abs(complex(*c)) for c in term["form"]), default=0.0)
    for j, (re, im) in enumerate(term["form"]):
        # drop rounding noise before printing
        re = 0.0 if abs(re) <= 1e-12 * top else float(_fmt_num(re))
        im = 0.0 if abs(im) <= 1e-12 * top else float(_fmt_num(im))
        if re == 0 and im == 0:
            continue
        real = abs(im) <= 1e-12 * max(1.0, abs(re))
        if real:
            sign = "-" if re < 0 else "+"
            mag = "" if abs(re) == 1 else f"{_fmt_num(abs(re))}*"
            piece = f"{mag}x{j + 1}"
        else:
            sign, piece = "+", f"{_fmt_complex((re, im))}*x{j + 1}"
        if body:
            body += f" {sign} {piece}"
        else:
            body = piece if sign == "+" else f"-{piece}"
    return f"{_fmt_complex(term['alpha'])} * ({body or '0'})^{d}"


def render_human(out: dict) -> str:
    lines = [f"input: {out['input']}", f"n = {out['n']}, d = {out['d']}, mode = {out['mode']}"]
    if out.get("essential_count") is not None:
        lines.append(f"essential variables: {out['essential_count']}")
    lines.append(f"verdict: {out['verdict']} (stage {out['stage']})")
    if out.get("trial_stages") and len(out["trial_stages"]) > 1:
        lines.append("trial stages: " + ", ".join(out["trial_stages"]))
    if out.get("error_bound_positive") is not None:
        lines.append(
            f"single-trial error bounds: positive <= {out['error_bound_positive']:.3g}, "
            f"negative <= {out['error_bound_negative']:.3g}"
        )
    if out.get("error_bound_rank") is not None:
        lines.append(f"essential-count error bound: {out['error_bound_rank']:.3g}")
    lines.append(f"oracle calls: {out['oracle_calls']}, seed: {out['seed']}, |S| = {out['set_size']}")
    if out.get("terms"):
        lines.append("decomposition:")
        for term in out["terms"]:
            lines.append("  " + format_term(term, out["d"]))
        lines.append(f"residual: {out['residual']:.3g}" + (" (real)" if out["real"] else ""))
    if out.get("note"):
        lines.append(f"note: {out['note']}")
    return "\n".join(lines)


def render(out: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(out, sort_keys=True, indent=2)
    return render_human(out)


# ---------------------------------------------------------------------------
# selftest

_SELFTEST = [
    # (expression, nvars, mode, expected verdict of decide)
    ("2*x1^3 + 12*x1*x2^2", None, "real", "accept"),
    ("2*x1^3 + 12*x1*x2^2", None, "complex", "accept"),
    ("x1^3 + x2^3 + x3^3", None, "complex", "accept"),
    ("x1^2*x2", None, "complex", "reject"),
    ("x1^3", 2, "complex", "reject"),
    ("x1^3 - 3*x1*x2^2", None, "complex", "accept"),
    ("x1^3 - 3*x1*x2^2", None, "real", "reject"),
    ("x1^4 + x2^4 + x1^2*x2^2", None, "complex", "reject"),
    ("x1^3 + x2^3 + x3^3 + x1*x2*x3", None, "complex", "reject"),
]


def selftest(stream=None) -> int:
    stream = stream or sys.stdout
    failures = 0
    for expr, nvars, mode, want in _SELFTEST:
        p = parse(expr, n=nvars)
        got = decide_equiv(p, mode).verdict
        ref = decide_full_slices(p, mode).verdict
        ok = got == want == ref
        failures += not ok
        print(f"{'ok  ' if ok else 'FAIL'} decide {mode:7s} {expr}: {got} (reference {ref})", file=stream)
    rec = reconstruct(parse("2*x1^3 + 12*x1*x2^2"), "real")
    ok = isinstance(rec, Decomposition) and rec.residual < 1e-9
    failures += not ok
    print(f"{'ok  ' if ok else 'FAIL'} reconstruct 2*x1^3 + 12*x1*x2^2", file=stream)
    rep = decide_waring(parse("x1^3", n=5))
    ok = rep.essential_count == 1 and rep.accepted
    failures += not ok
    print(f"{'ok  ' if ok else 'FAIL'} minvars x1^3 in 5 variables: t = {rep.essential_count}", file=stream)
    print(f"{failures} failure(s)", file=stream)
    return EXIT_ACCEPT if failures == 0 else EXIT_REJECT


# ---------------------------------------------------------------------------
# argument parsing


def _positive_int(minimum: int):
    def conv(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
        if v < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}")
        return v

    return conv


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="waringeq",
        description="Test whether a homogeneous polynomial is a combination of d-th powers of independent linear forms.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("expression", nargs="?", help='polynomial, e.g. "x1^3 + x2^3"')
    common.add_argument("--input", metavar="FILE", help="read the polynomial (expression or JSON map) from FILE, '-' for stdin")
    common.add_argument("--mode", choices=["real", "complex"], default="complex")
    common.add_argument("--set-size", type=_positive_int(2), default=DEFAULT_SET_SIZE, help="size of the sample set {1..N}")
    common.add_argument("--seed", type=_positive_int(0), default=0)
    common.add_argument("--trials", type=_positive_int(1), default=1)
    common.add_argument("--format", choices=["human", "json"], default="human")
    common.add_argument("--nvars", type=_positive_int(1), help="pad the input to this many variables")
    common.add_argument("--degree", type=_positive_int(0), help="expected degree (required for the zero polynomial)")
    sub.add_parser("decide", parents=[common], help="equivalence test")
    sub.add_parser("minvars", parents=[common], help="essential variables, then the equivalence test")
    sub.add_parser("reconstruct", parents=[common], help="recover the linear forms and coefficients")
    sub.add_parser("selftest", help="run a small built-in regression corpus")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "selftest":
        return selftest()
    cfg = RunConfig(
        command=args.command,
        expression=args.expression,
        input_path=args.input,
        mode=FieldMode(args.mode),
        set_size=args.set_size,
        seed=args.seed,
        trials=args.trials,
        fmt=args.format,
        nvars=args.nvars,
        degree=args.degree,
    )
    try:
        cfg.sample_config()
        status, out = run(cfg)
    except (InputError, ValueError, OSError) as exc:
        print(f"waringeq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    print(render(out, cfg.fmt))
    return status


if __name__ == "__main__":
    sys.exit(main())
