"""Command-line front end.

Every subcommand produces a list of flat rows, written as CSV (header plus
rows) or JSON ``{"command": ..., "rows": [...]}``. Exit status is 2 for
invalid input, 1 when an internal consistency check fails, 0 otherwise.
"""
import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass

from . import classgroup, conic, pell, sieve, sweeps
from .ntheory import factor, jacobi
from .resultant import IntPoly, QuadTriple, resultant


@dataclass
class RunConfig:
    command: str
    poly: IntPoly = None
    quad: QuadTriple = None
    disc: int = None
    degree: tuple = (3,)
    bound: int = None
    height: int = None
    grid: tuple = ()
    primes: tuple = ()
    samples: int = 10_000
    torsion: int = 3
    mode: str = "odd"
    jobs: int = 1
    seed: int = 0
    out: str = None
    format: str = "csv"

    def validate(self):
        if self.jobs < 1:
            raise ValueError("--jobs must be >= 1")
        for name in ("bound", "height"):
            v = getattr(self, name)
            if v is not None and v < 1:
                raise ValueError(f"--{name} must be positive")
        if any(g < 1 for g in self.grid):
            raise ValueError("--grid entries must be positive")
        if list(self.grid) != sorted(set(self.grid)):
            raise ValueError("--grid must be strictly ascending")
        if self.format not in ("csv", "json"):
            raise ValueError("--format must be csv or json")


def _ints(text):
    return tuple(int(t) for t in text.split(","))


# --- subcommands ------------------------------------------------------------


def cmd_res(cfg):
    R, Q = cfg.poly, cfg.quad
    return [{"R": str(R), "a": Q.a, "b": Q.b, "c": Q.c, "resultant": resultant(R, Q)}]


def cmd_verify(cfg):
    scfg = sweeps.SweepConfig(
        samples=cfg.samples, degrees=cfg.degree, box=cfg.bound or 9, seed=cfg.seed, jobs=cfg.jobs
    )
    rows = []
    for r in sweeps.run_all(scfg):
        rows.append({"check": r.name, "passed": r.passed, "failed": r.failed, "singular": r.singular})
    return rows


def cmd_conic(cfg):
    Q = cfg.quad
    C = conic.conic_C(Q)
    soluble = conic.has_rational_point(C)
    point = conic.find_point(C, cfg.height) if soluble else None
    return [{
        "a": Q.a, "b": Q.b, "c": Q.c, "D": Q.disc,
        "conic": f"X^2 - ({Q.disc})*Y^2 = ({Q.c})*Z^2",
        "soluble": soluble,
        "point": "" if point is None else ",".join(map(str, point)),
    }]


def cmd_omega(cfg):
    Q = cfg.quad
    D = Q.disc
    if D == 0:
        fact, symbols = "0", ""
    else:
        f = factor(D)
        fact = str(f)
        symbols = ";".join(f"({Q.c}/{p})={jacobi(Q.c, p)}" for p, e in f.factors if e == 1)
    return [{
        "a": Q.a, "b": Q.b, "c": Q.c, "D": D, "factorization": fact,
        "symbols": symbols, "member": conic.omega_member(Q),
    }]


def cmd_count(cfg):
    rows = sieve.density_report(cfg.grid or (5, 10, 20), cfg.jobs)
    return sieve.density_rows_as_dicts(rows)


def cmd_localdensity(cfg):
    rows = []
    for p in cfg.primes or (3, 5, 7, 11, 13):
        d = sieve.local_density(p)
        rows.append({
            "p": p, "S_p": d.S_p, "omega_count": d.omega_count,
            "omega_p": str(d.omega_p), "two_p_omega_p": f"{float(2 * p * d.omega_p):.6f}",
        })
    for Qmax in cfg.grid:
        L = sieve.L_sum(Qmax)
        rows.append({
            "p": "", "S_p": "", "omega_count": "", "omega_p": "",
            "two_p_omega_p": "", "Q": Qmax, "L": f"{float(L.value):.6f}",
            "L_ratio": f"{float(L.value) / math.sqrt(math.log(Qmax)):.6f}" if Qmax > 1 else "",
            "main_term_used": L.uses_main_term,
        })
    return rows


def cmd_pell(cfg):
    H = cfg.height or 10
    rows = []
    for idx, E in enumerate(pell.cubic_conics(cfg.quad), start=2):
        sols = pell.solve_bqf_diophantine(E, H)
        rows.append({
            "equation": idx, "q1": E.q1, "q2": E.q2, "q3": E.q3, "N": E.N,
            "solutions": ";".join(f"{x},{y}" for x, y in sols),
        })
    return rows


def cmd_searchr(cfg):
    n = cfg.degree[0]
    H = cfg.height or 2
    R = pell.find_R(cfg.quad, n, H, jobs=cfg.jobs)
    Q = cfg.quad
    row = {"a": Q.a, "b": Q.b, "c": Q.c, "degree": n, "height": H, "found": R is not None,
           "R": "", "coeffs": "", "resultant": ""}
    if R is not None:
        row.update(R=str(R), coeffs=",".join(map(str, R.coeffs)), resultant=resultant(R, Q))
    return [row]


def cmd_classgroup(cfg):
    d = cfg.disc
    G = classgroup.group_structure(d)
    h, h_odd, h_n = classgroup.h_parts(d, cfg.torsion)
    return [{
        "d": d, "h": h, "h_odd": h_odd, "n": cfg.torsion, "h_n": h_n,
        "structure": "x".join(f"Z/{k}" for k in G.invariant_factors) or "1",
        "reduced_forms": ";".join(f"{f.a},{f.b},{f.c}" for f in G.reduced_forms),
    }]


def cmd_sminus(cfg):
    grid = cfg.grid or (100, 1000)
    if cfg.mode == "odd":
        rows = classgroup.sminus_rows(grid, cfg.jobs)
        return [{**r, "ratio": f"{r['ratio']:.6f}"} for r in rows]
    return [{"X": X, "n": cfg.torsion,
             "S_minus_torsion": classgroup.S_minus(X, "torsion", cfg.torsion, cfg.jobs)} for X in grid]


COMMANDS = {
    "res": cmd_res, "verify": cmd_verify, "conic": cmd_conic, "omega": cmd_omega,
    "count": cmd_count, "localdensity": cmd_localdensity, "pell": cmd_pell,
    "searchr": cmd_searchr, "classgroup": cmd_classgroup, "sminus": cmd_sminus,
}

REQUIRED = {"res": ("poly", "quad"), "conic": ("quad",), "omega": ("quad",), "pell": ("quad",),
            "searchr": ("quad",), "classgroup": ("disc",)}


def _row_schema(props, required=None):
    return {
        "type": "object",
        "required": ["command", "rows"],
        "properties": {
            "command": {"type": "string"},
            "rows": {"type": "array", "items": {
                "type": "object", "properties": props, "required": required or list(props),
            }},
        },
    }


_I = {"type": "integer"}
_S = {"type": "string"}
_B = {"type": "boolean"}
_IS = {"type": ["integer", "string"]}

SCHEMAS = {
    "res": _row_schema({"R": _S, "a": _I, "b": _I, "c": _I, "resultant": _I}),
    "verify": _row_schema({"check": _S, "passed": _I, "failed": _I, "singular": _I}),
    "conic": _row_schema({"a": _I, "b": _I, "c": _I, "D": _I, "conic": _S, "soluble": _B, "point": _S}),
    "omega": _row_schema({"a": _I, "b": _I, "c": _I, "D": _I, "factorization": _S, "symbols": _S, "member": _B}),
    "count": _row_schema({"B": _I, "T": _I, "Nplus": _I, "ratio_T": _S, "ratio_N": _S}),
    "localdensity": _row_schema(
        {"p": _IS, "S_p": _IS, "omega_count": _IS, "omega_p": _S, "two_p_omega_p": _S,
         "Q": _I, "L": _S, "L_ratio": _S, "main_term_used": _B},
        ["p", "S_p", "omega_count", "omega_p", "two_p_omega_p"],
    ),
    "pell": _row_schema({"equation": _I, "q1": _I, "q2": _I, "q3": _I, "N": _I, "solutions": _S}),
    "searchr": _row_schema({"a": _I, "b": _I, "c": _I, "degree": _I, "height": _I, "found": _B,
                            "R": _S, "coeffs": _S, "resultant": _IS}),
    "classgroup": _row_schema({"d": _I, "h": _I, "h_odd": _I, "n": _I, "h_n": _I, "structure": _S,
                               "reduced_forms": _S}),
    "sminus": _row_schema({"X": _I, "S_minus_odd": _I, "ratio": _S, "n": _I, "S_minus_torsion": _I}, ["X"]),
}


def render(command, rows, fmt):
    if fmt == "json":
        return json.dumps({"command": command, "rows": rows}, indent=2, sort_keys=False) + "\n"
    fields = []
    for r in rows:
        for k in r:
            if k not in fields:
                fields.append(k)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n", restval="")
    w.writeheader()
    for r in rows:
        w.writerow({k: (str(v).lower() if isinstance(v, bool) else v) for k, v in r.items()})
    return buf.getvalue()


def run(cfg):
    """Execute one configured command; returns (exit status, rendered report)."""
    cfg.validate()
    for name in REQUIRED.get(cfg.command, ()):
        if getattr(cfg, name) is None:
            raise ValueError(f"{cfg.command} needs --{name}")
    rows = COMMANDS[cfg.command](cfg)
    return 0, render(cfg.command, rows, cfg.format)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    parser = argparse.ArgumentParser(prog="resultant-sieve", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_, *opts):
        p = sub.add_parser(name, help=help_, parents=[common])
        for o in opts:
            o(p)
        return p

    poly = lambda p: p.add_argument("--poly", type=IntPoly.parse, help="descending coefficients, e.g. 1,0,0,-2")
    quad = lambda p: p.add_argument("--quad", type=QuadTriple.parse, help="a,b,c")
    degree = lambda p: p.add_argument("--degree", type=_ints, default=None)
    bound = lambda p: p.add_argument("--bound", type=int)
    height = lambda p: p.add_argument("--height", type=int)
    grid = lambda p: p.add_argument("--grid", type=_ints, default=())

    add("res", "resultant of R and Q", poly, quad)
    add("verify", "identity sweeps", degree, bound,
        lambda p: p.add_argument("--samples", type=int, default=10_000))
    add("conic", "solubility of X^2 - D Y^2 = c Z^2", quad, height)
    add("omega", "membership in Omega", quad)
    add("count", "T and N+ over a B grid", grid)
    add("localdensity", "S_p and omega_p; L(Q) for --grid values", grid,
        lambda p: p.add_argument("--primes", type=_ints, default=()))
    add("pell", "the three cubic-case equations with bounded solutions", quad, height)
    add("searchr", "search for R with Res(R, Q) = +-1", quad, degree, height)
    add("classgroup", "class group of a negative fundamental discriminant",
        lambda p: p.add_argument("--disc", type=int),
        lambda p: p.add_argument("--torsion", type=int, default=3))
    add("sminus", "S^-(X) sweep", grid,
        lambda p: p.add_argument("--mode", choices=("odd", "torsion"), default="odd"),
        lambda p: p.add_argument("--torsion", type=int, default=3))
    return parser


def config_from_args(ns):
    kw = {k: v for k, v in vars(ns).items() if v is not None}
    if kw.get("degree") is None:
        kw["degree"] = (3, 5) if ns.command == "verify" else (3,)
    return RunConfig(**kw)


def main(argv=None):
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
        status, text = run(cfg)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except AssertionError as e:
        print(f"internal check failed: {e}", file=sys.stderr)
        return 1
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
