"""``symqent`` command line.

Exit codes: 0 success, 1 a verify suite failed, 2 bad input, 3 numerical
failure, 4 state outside the supported domain.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import dicke, entanglement, husimi, majorana, reduced, spin, verify
from .errors import InputError, SymqentError

TOL_ENV = "SYMQENT_TOL"


@dataclass(frozen=True)
class RunConfig:
    mes_tol: float = reduced.MES_TOL
    anticoh_tol: float = reduced.ANTICOHERENCE_TOL
    full_guard: int = dicke.DEFAULT_MAX_QUBITS
    seed: int = 42

    def __post_init__(self):
        if not (self.mes_tol > 0 and self.anticoh_tol > 0):
            raise InputError("tolerances must be positive")

    @classmethod
    def from_env(cls, env=None) -> "RunConfig":
        env = os.environ if env is None else env
        raw = env.get(TOL_ENV)
        if raw is None or raw.strip() == "":
            return cls()
        try:
            tol = float(raw)
        except ValueError:
            raise InputError(f"{TOL_ENV}={raw!r} is not a number") from None
        if not math.isfinite(tol):
            raise InputError(f"{TOL_ENV} must be finite")
        return cls(mes_tol=tol, anticoh_tol=tol)


# -- output ------------------------------------------------------------------


class Digits(float):
    """A float that should be printed with a specific number of digits."""

    def __new__(cls, value, digits):
        obj = super().__new__(cls, value)
        obj.digits = digits
        return obj


def _fmt_float(x: float, digits: int = 17) -> str:
    if math.isnan(x) or math.isinf(x):
        raise ValueError("non-finite number in output")
    if x == 0:
        return "0.0"
    s = format(x, f".{digits}g")
    if not any(ch in s for ch in ".en"):
        s += ".0"
    return s


def dumps(obj, indent: int = 0) -> str:
    """JSON with every float written to 17 significant digits."""
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, Digits):
        return _fmt_float(float(obj), obj.digits)
    if isinstance(obj, (float, np.floating)):
        return _fmt_float(float(obj))
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return dumps([float(obj.real), float(obj.imag)], indent)
    if isinstance(obj, np.ndarray):
        return dumps(obj.tolist(), indent)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(str(k))}: {dumps(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple, np.ndarray, complex, np.complexfloating)) for v in obj):
            return "[" + ", ".join(dumps(v, indent + 1) for v in obj) + "]"
        return "[\n" + ",\n".join(inner + dumps(v, indent + 1) for v in obj) + "\n" + pad + "]"
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def _emit(obj, out) -> None:
    out.write(dumps(obj) + "\n")


# -- input -------------------------------------------------------------------


def load_state(path: str) -> dicke.SymState:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None
    return dicke.state_from_json(obj)


def parse_complex(text: str) -> complex:
    parts = text.split(",")
    try:
        vals = [float(p) for p in parts]
    except ValueError:
        raise InputError(f"cannot parse {text!r} as re[,im]") from None
    if len(vals) == 1:
        return complex(vals[0], 0.0)
    if len(vals) == 2:
        return complex(vals[0], vals[1])
    raise InputError(f"cannot parse {text!r} as re[,im]")


def _root_json(z: complex):
    return "inf" if majorana.is_inf(z) else [float(z.real), float(z.imag)]


# -- subcommands ---------------------------------------------------------------


def cmd_analyze(args, cfg: RunConfig, out) -> int:
    s = load_state(args.state)
    mes = reduced.is_mes(s, cfg.mes_tol)
    ac = reduced.anticoherence_order(s, cfg.anticoh_tol)
    mom = husimi.moments(s)
    _emit({
        "n": s.n,
        "mes": {"is_mes": mes.is_mes, "residuals": list(mes.residuals)},
        "anticoherence_order": ac.order,
        "anticoherence_deviations": list(ac.deviations),
        "mean_spin": spin.mean_spin(s),
        "husimi": {
            "norm": mom.norm,
            "dipole_norm": float(np.linalg.norm(mom.dipole)),
            "quadrupole_norm": float(np.linalg.norm(mom.quadrupole)),
        },
        "configuration": majorana.roots(s).configuration,
    }, out)
    return 0


def cmd_reduce(args, cfg: RunConfig, out) -> int:
    s = load_state(args.state)
    r = reduced.rho_t(s, args.t)
    _emit({
        "n": s.n,
        "t": r.t,
        "rho": [[complex(v) for v in row] for row in r.mat],
        "eigenvalues": r.eigenvalues,
        "rank": r.rank,
        "deviation_from_mixed": r.deviation_from_mixed(),
    }, out)
    return 0


def cmd_husimi(args, cfg: RunConfig, out) -> int:
    if args.ntheta < 2 or args.nphi < 1:
        raise InputError("need ntheta >= 2 and nphi >= 1")
    s = load_state(args.state)
    th, ph, h = husimi.husimi_grid(s, args.ntheta, args.nphi)
    lines = ["theta,phi,H"]
    lines += [f"{a:.17g},{b:.17g},{c:.17g}" for a, b, c in zip(th.ravel(), ph.ravel(), h.ravel())]
    text = "\n".join(lines) + "\n"
    if args.out in (None, "-"):
        out.write(text)
        return 0
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {args.out}: {exc.strerror}") from None
    _emit({"out": args.out, "rows": int(h.size), "max": float(h.max()), "min": float(h.min())}, out)
    return 0


def cmd_majorana(args, cfg: RunConfig, out) -> int:
    s = load_state(args.state)
    m = majorana.roots(s)
    _emit({
        "n": s.n,
        "roots": [_root_json(complex(z)) for z in m.roots],
        "bloch": [[Digits(t, 15), Digits(p, 15)] for t, p in m.bloch],
        "clusters": list(m.clusters),
        "diversity": m.diversity,
        "configuration": m.configuration,
    }, out)
    return 0


def cmd_canonicalize4(args, cfg: RunConfig, out) -> int:
    s = load_state(args.state)
    c = majorana.canonicalize4(s)
    _emit({"mu": c.mu, "in_S": c.in_S, "transform_log": [list(step) for step in c.transform_log]}, out)
    return 0


def cmd_measures(args, cfg: RunConfig, out) -> int:
    s = load_state(args.state)
    g = entanglement.geometric_measure(s)
    tau = entanglement.n_tangle(s).value if s.n % 2 == 0 else None
    _emit({
        "E_G": g.value,
        "argmax": list(g.argmax),
        "E_B": entanglement.barycentric_measure(s),
        "tau_N": tau,
        "mes": reduced.is_mes(s, cfg.mes_tol).is_mes,
        "anticoherence_order": reduced.anticoherence_order(s, cfg.anticoh_tol).order,
    }, out)
    return 0


def cmd_catalog(args, cfg: RunConfig, out) -> int:
    params = [parse_complex(p) for p in (args.param or [])]
    s = dicke.catalog(args.name, args.n, params)
    obj = dicke.state_to_json(s)
    obj["source"] = dicke.named_to_json(args.name.lower(), args.n, params)
    _emit(obj, out)
    return 0


def cmd_verify(args, cfg: RunConfig, out) -> int:
    results = verify.run_all(args.nmin, args.nmax, args.seed, args.samples)
    ok = all(r.passed for r in results)
    _emit({
        "seed": args.seed,
        "n_range": [args.nmin, args.nmax],
        "suites": [{"name": r.name, "max_residual": r.max_residual, "tolerance": r.tolerance,
                    "cases": r.cases, "passed": r.passed} for r in results],
        "passed": ok,
    }, out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="symqent", description="Symmetric multiqubit state analysis.")
    sub = p.add_subparsers(dest="command", required=True)

    def with_state(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("state", help="state JSON file, or - for stdin")
        sp.set_defaults(func=func)
        return sp

    with_state("analyze", cmd_analyze, "MES test, anticoherence, spin and Husimi moments")
    sp = with_state("reduce", cmd_reduce, "t-qubit reduced density matrix")
    sp.add_argument("--t", type=int, required=True)
    sp = with_state("husimi", cmd_husimi, "Husimi function on a theta/phi grid (CSV)")
    sp.add_argument("--ntheta", type=int, default=50)
    sp.add_argument("--nphi", type=int, default=100)
    sp.add_argument("--out", default=None, help="CSV path (default stdout)")
    with_state("majorana", cmd_majorana, "Majorana roots, Bloch angles, configuration")
    with_state("canonicalize4", cmd_canonicalize4, "SLOCC normal form mu of a 4-qubit state")
    with_state("measures", cmd_measures, "geometric, barycentric and N-tangle measures")

    sp = sub.add_parser("catalog", help="emit a named state as JSON")
    sp.add_argument("name", choices=sorted(dicke.CATALOG_ARITY))
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--param", action="append", help="re[,im]; repeat for several")
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("verify", help="run the oracle-equivalence suites")
    sp.add_argument("--nmin", type=int, default=2)
    sp.add_argument("--nmax", type=int, default=6)
    sp.add_argument("--seed", type=int, default=42)
    sp.add_argument("--samples", type=int, default=verify.SAMPLES_PER_N)
    sp.set_defaults(func=cmd_verify)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = RunConfig.from_env()
        return args.func(args, cfg, out)
    except SymqentError as exc:
        print(f"symqent: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
