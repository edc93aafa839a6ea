"""Command-line frontend: ``valtop <command> [options] problem.vt``.

Every subcommand maps onto one library operation.  Reports are printed as
text, and can also be written as JSON (``--json``) or, for tables, CSV
(``--csv``).  Exit codes: 0 success, 2 parse error, 3 precondition error,
4 budget exceeded.
"""

import argparse
import json
import os
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from . import graded, newton, symbolic, valuation
from .errors import BudgetExceeded, ParseError, PreconditionError
from .monomial import (
    INFINITY, MonomialIdeal, Polynomial, adic_order, format_monomial, ideal_power,
    m_adic_order, monomial_order,
)
from .problem import ProblemFile, parse, parse_expression

SCHEMA = 1
DEFAULT_BUDGETS = {"max_degree": 12, "max_power": 8, "max_dim": 4}
EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_BUDGET = 0, 2, 3, 4


@dataclass
class Report:
    command: str
    operation: str
    inputs: Dict[str, Any]
    result: Dict[str, Any]
    witnesses: Dict[str, Any] = field(default_factory=dict)
    predictor: Optional[Dict[str, Any]] = None
    budgets: Dict[str, Any] = field(default_factory=dict)
    timing: float = 0.0
    table: Optional[Tuple[Tuple[str, ...], List[tuple]]] = None
    decimal: Optional[int] = None

    def to_dict(self, timing: bool = True) -> dict:
        out = {
            "schema": SCHEMA,
            "command": self.command,
            "operation": self.operation,
            "inputs": self.inputs,
            "result": self.result,
            "witnesses": self.witnesses,
            "predictor": self.predictor,
            "budgets": self.budgets,
        }
        if self.decimal is not None:
            out["approximate"] = {"digits": self.decimal,
                                  "values": _approximations(self.result, self.decimal)}
        if timing:
            out["timing"] = {"seconds": round(self.timing, 6)}
        return _jsonable(out)

    def to_json(self, timing: bool = True) -> str:
        return json.dumps(self.to_dict(timing), sort_keys=True, indent=2) + "\n"

    def to_csv(self) -> str:
        if self.table is None:
            raise PreconditionError(f"{self.command} has no tabular output for CSV")
        header, rows = self.table
        lines = [",".join(header)]
        lines += [",".join(_render(c) for c in row) for row in rows]
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        lines = [f"{self.command} ({self.operation})"]
        for title, block in (("inputs", self.inputs), ("result", self.result),
                             ("witnesses", self.witnesses), ("predictor", self.predictor)):
            if block:
                lines.append(f"{title}:")
                lines += [f"  {k} = {_render_text(v)}" for k, v in block.items()]
        if self.decimal is not None:
            approx = _approximations(self.result, self.decimal)
            if approx:
                lines.append(f"approximate ({self.decimal} digits, not exact):")
                lines += [f"  {k} ~ {v}" for k, v in approx.items()]
        lines.append("budgets: " + " ".join(f"{k.replace('_', '-')}={v}"
                                            for k, v in self.budgets.items()))
        lines.append(f"timing: {self.timing:.3f}s")
        return "\n".join(lines) + "\n"


def _render(v) -> str:
    if v is INFINITY:
        return "infinity"
    return str(v)


def _jsonable(v):
    if isinstance(v, bool) or v is None or isinstance(v, (int, str, float)):
        return v
    if isinstance(v, Fraction):
        return str(v)
    if v is INFINITY:
        return "infinity"
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    raise TypeError(f"cannot serialize {type(v).__name__}")


def _render_text(v) -> str:
    v = _jsonable(v)
    if isinstance(v, (list, dict)):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _decimal(q: Fraction, digits: int) -> str:
    # round half away from zero at the requested digit, no floats involved
    scaled = abs(q) * 10 ** digits
    n = int(scaled + Fraction(1, 2))
    sign = "-" if q < 0 and n else ""
    whole, frac = divmod(n, 10 ** digits)
    return f"{sign}{whole}" + (f".{frac:0{digits}d}" if digits else "")


def _approximations(result: dict, digits: int) -> Dict[str, str]:
    return {k: _decimal(v, digits) for k, v in result.items()
            if isinstance(v, Fraction) and v.denominator != 1}


# argument resolution

class Context:
    def __init__(self, problem: ProblemFile, opts: Dict[str, Any]):
        self.problem = problem
        self.opts = opts
        self.budgets = {k: opts.get(k) if opts.get(k) is not None else v
                        for k, v in DEFAULT_BUDGETS.items()}
        for k, v in self.budgets.items():
            if v < 1:
                raise PreconditionError(f"--{k.replace('_', '-')} must be positive")
        self.budgets["threads"] = read_threads()

    @property
    def names(self):
        return self.problem.vars

    def need(self, key: str, flag: str):
        v = self.opts.get(key)
        if v is None:
            raise PreconditionError(f"this command needs {flag}")
        return v

    def ideal(self, key="ideal", flag="-I") -> Tuple[str, MonomialIdeal]:
        name = self.need(key, flag)
        if name in self.problem.ideals:
            return name, self.problem.ideals[name]
        if name == "m":
            return name, MonomialIdeal.maximal(self.problem.dim)
        raise PreconditionError(f"unknown ideal {name!r}")

    def valuation(self, key="valuation", flag="-v") -> Tuple[str, valuation.MonomialValuation]:
        name = self.need(key, flag)
        if name not in self.problem.valuations:
            raise PreconditionError(f"unknown valuation {name!r}")
        return name, self.problem.valuations[name]

    def poly(self, key="f", flag="-f") -> Polynomial:
        return parse_expression(self.need(key, flag), self.problem)

    def monomial(self, key, flag) -> tuple:
        f = self.poly(key, flag)
        if not f.is_monomial():
            raise PreconditionError(f"{flag} must be a single monomial")
        return f.support()[0]

    def mono(self, alpha) -> str:
        return format_monomial(tuple(alpha), self.names)

    def ideal_text(self, I: MonomialIdeal) -> str:
        return I.format(self.names)

    def gens(self, I: MonomialIdeal) -> List[str]:
        return [self.mono(g) for g in I.gens]

    def int_opt(self, key, default):
        v = self.opts.get(key)
        return default if v is None else v

    def degree_bound(self, key="bound") -> int:
        b = self.int_opt(key, self.budgets["max_degree"])
        if b > self.budgets["max_degree"]:
            raise BudgetExceeded(f"degree bound {b} exceeds --max-degree {self.budgets['max_degree']}")
        if b < 0:
            raise PreconditionError("degree bound must be non-negative")
        return b

    def power(self, n, what) -> int:
        if n > self.budgets["max_power"]:
            raise BudgetExceeded(f"{what} = {n} exceeds --max-power {self.budgets['max_power']}")
        return n


def read_threads() -> int:
    raw = os.environ.get("VALTOP_THREADS")
    if raw is None or raw == "":
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise PreconditionError(f"VALTOP_THREADS must be a positive integer, got {raw!r}")
    if n < 1:
        raise PreconditionError(f"VALTOP_THREADS must be a positive integer, got {raw!r}")
    return n


def facet_text(fc: newton.Facet) -> str:
    return "(" + ",".join(str(c) for c in fc.normal) + f")/{fc.offset}"


# subcommands; each returns (operation, inputs, result, witnesses, predictor, table)

def cmd_order(ctx: Context):
    f = ctx.poly()
    if ctx.opts.get("ideal") is None:
        return ("monomial_core.m_adic_order", {"f": f.format(ctx.names), "ideal": "m"},
                {"order": m_adic_order(f)}, {}, None, None)
    name, I = ctx.ideal()
    inputs = {"f": f.format(ctx.names), "ideal": name, "generators": ctx.gens(I)}
    order = adic_order(f, I)
    witnesses = {}
    if order is not INFINITY:
        witnesses["attained_at"] = ctx.mono(min(a for a in f.support() if monomial_order(a, I) == order))
    return "monomial_core.adic_order", inputs, {"order": order}, witnesses, None, None


def cmd_reduced_order(ctx: Context):
    f = ctx.poly()
    name, I = ctx.ideal()
    md = ctx.budgets["max_dim"]
    value = newton.reduced_order(f, I, md)
    inputs = {"f": f.format(ctx.names), "ideal": name, "generators": ctx.gens(I)}
    witnesses = {}
    if value is not INFINITY:
        alpha = min((a for a in f.support() if newton.reduced_order(a, I, md) == value))
        witnesses["monomial"] = ctx.mono(alpha)
        witnesses["facets"] = [facet_text(fc) for fc in newton.minimizing_facets(alpha, I, md)]
    return "newton.reduced_order", inputs, {"reduced_order": value}, witnesses, None, None


def cmd_rees(ctx: Context):
    name, I = ctx.ideal()
    md = ctx.budgets["max_dim"]
    P = newton.newton_polyhedron(I, md)
    newton.rees_valuations(I, md)
    bound = ctx.degree_bound()
    wit = newton.irredundancy_witnesses(I, bound, md)
    result = {"valuations": [facet_text(fc) for fc in P.compact_facets],
              "count": len(P.compact_facets),
              "coordinate_facets": [facet_text(fc) for fc in P.coordinate_facets]}
    witnesses = {"irredundancy": {facet_text(fc): (None if a is None else ctx.mono(a))
                                  for fc, a in wit.items()},
                 "degree_bound": bound}
    return ("newton.rees_valuations", {"ideal": name, "generators": ctx.gens(I)},
            result, witnesses, None, None)


def cmd_rees_constant(ctx: Context):
    name, I = ctx.ideal()
    bound = ctx.degree_bound()
    est = newton.rees_constant_estimate(I, bound, ctx.budgets["max_dim"])
    result = {"value": est.value, "witness": ctx.mono(est.witness)}
    witnesses = {"degree_bound": bound, "scanned": est.scanned,
                 "reduced_order": newton.reduced_order(est.witness, I, ctx.budgets["max_dim"]),
                 "order": monomial_order(est.witness, I)}
    return ("newton.rees_constant_estimate", {"ideal": name, "generators": ctx.gens(I)},
            result, witnesses, None, None)


def cmd_q_ideal(ctx: Context):
    name, nu = ctx.valuation()
    level = Fraction(ctx.opts.get("level") or 1)
    Q = valuation.q_ideal(nu, level)
    bound = ctx.degree_bound()
    check = valuation.is_nu_ideal(Q.ideal, nu, bound)
    witnesses = {"nu_ideal_check": check.holds, "degree_bound": bound}
    if check.counterexample:
        witnesses["counterexample"] = [ctx.mono(a) for a in check.counterexample]
    result = {"threshold": Q.threshold, "generators": ctx.gens(Q.ideal)}
    return ("valuation.q_ideal", {"valuation": name, "weights": list(nu.weights), "l": level},
            result, witnesses, None, None)


def cmd_lin_equiv(ctx: Context):
    name, nu = ctx.valuation()
    l_max = ctx.int_opt("lmax", 12)
    res = valuation.lin_equiv_constant(nu)
    failures = valuation.sandwich_failures(nu, res.r, l_max)
    witnesses = {f"r'={rp}": {"level": l, "monomial": ctx.mono(a)}
                 for rp, (l, a) in sorted(res.witnesses.items())}
    result = {"r": res.r, "sandwich_l_max": l_max, "sandwich_failures": failures}
    return ("valuation.lin_equiv_constant", {"valuation": name, "weights": list(nu.weights)},
            result, witnesses, None, None)


def cmd_izumi(ctx: Context):
    n1, nu = ctx.valuation()
    n2, nu2 = ctx.valuation("valuation2", "-w")
    k = valuation.izumi_constant(nu, nu2)
    bound = ctx.degree_bound()
    best, arg = valuation.izumi_oracle(nu, nu2, bound)
    coord = next(i for i, (a, b) in enumerate(zip(nu.weights, nu2.weights)) if a / b == k)
    witnesses = {"coordinate": ctx.names[coord], "oracle_max": best,
                 "oracle_argmax": ctx.mono(arg), "degree_bound": bound}
    return ("valuation.izumi_constant",
            {"valuation": n1, "weights": list(nu.weights), "other": n2, "other_weights": list(nu2.weights)},
            {"k": k}, witnesses, None, None)


def cmd_invariants(ctx: Context):
    name, nu = ctx.valuation()
    rr, trd, d = valuation.abhyankar_invariants(nu)
    result = {"rat_rank": rr, "residue_trdeg": trd, "dim": d,
              "abhyankar": rr + trd == d, "unit_value": nu.unit_value}
    return ("valuation.abhyankar_invariants", {"valuation": name, "weights": list(nu.weights)},
            result, {}, None, None)


def cmd_growth(ctx: Context):
    name, nu = ctx.valuation()
    l_max = ctx.int_opt("lmax", 10)
    t = graded.growth_table(nu, l_max)
    predictor = {"volume_coefficient": graded.volume_coefficient(nu), "degree": nu.dim}
    return ("graded.growth_table", {"valuation": name, "weights": list(nu.weights), "l_max": l_max},
            {"F": [list(e) for e in t.entries]}, {}, predictor, (("l", "F"), list(t.entries)))


def cmd_weak_noetherian(ctx: Context):
    name, nu = ctx.valuation()
    l_max = ctx.int_opt("lmax", max(30, 2 * nu.dim))
    rep = graded.weak_noetherian_check(nu, l_max)
    table = graded.growth_table(nu, l_max)
    rows = [(l, table[l], q) for l, q in rep.ratios]
    result = {"holds": rep.holds, "violations": list(rep.violations),
              "exact_bounds_hold": rep.exact_bounds_hold, "guaranteed_from": rep.guaranteed_from,
              "c_low": rep.c_low, "c_high": rep.c_high, "final_ratio": rep.ratios[-1][1]}
    predictor = {"volume_coefficient": rep.predicted, "degree": rep.dim}
    return ("graded.weak_noetherian_check",
            {"valuation": name, "weights": list(nu.weights), "l_max": l_max},
            result, {"ratios": [list(r) for r in rows]}, predictor, (("l", "F", "ratio"), rows))


def _squarefree(ctx: Context):
    name, I = ctx.ideal()
    return name, I, {"ideal": name, "generators": ctx.gens(I)}


def _prime_text(ctx: Context, p) -> str:
    return "(" + ", ".join(ctx.names[j] for j in p) + ")"


def cmd_symbolic(ctx: Context):
    name, I, inputs = _squarefree(ctx)
    n = ctx.power(ctx.need("n", "-n"), "n")
    inputs["n"] = n
    S = symbolic.symbolic_power(I, n)
    ordinary = ideal_power(I, n)
    extra = [ctx.mono(g) for g in S.gens if not ordinary.contains_monomial(g)]
    result = {"generators": ctx.gens(S), "equals_ordinary_power": not extra}
    witnesses = {"minimal_primes": [_prime_text(ctx, p) for p in symbolic.minimal_primes(I)],
                 "not_in_ordinary_power": extra}
    return "symbolic.symbolic_power", inputs, result, witnesses, None, None


def cmd_min_primes(ctx: Context):
    name, I, inputs = _squarefree(ctx)
    primes = symbolic.minimal_primes(I)
    return ("symbolic.minimal_primes", inputs,
            {"primes": [_prime_text(ctx, p) for p in primes], "count": len(primes)}, {}, None, None)


def cmd_contain_m(ctx: Context):
    name, I, inputs = _squarefree(ctx)
    c_max = ctx.int_opt("cmax", 4)
    inputs["c_max"] = c_max
    res = symbolic.uniform_m_containment(I, c_max, ctx.budgets["max_power"])
    witnesses = {}
    if res.refutation:
        c, deg = res.refutation
        witnesses["refutation"] = {"c": c, "a": res.a - 1, "min_degree": deg}
    return ("symbolic.uniform_m_containment", inputs,
            {"a": res.a, "min_degrees": list(res.min_degrees)}, witnesses, None, None)


def cmd_els_check(ctx: Context):
    name, I, inputs = _squarefree(ctx)
    c_max = ctx.int_opt("cmax", 2)
    inputs["c_max"] = c_max
    rep = symbolic.els_containment_check(I, c_max, ctx.budgets["max_power"])
    rows = [{"c": r.c, "symbolic_exponent": r.power, "holds": r.holds, "least_h": r.least_h}
            for r in rep.rows]
    return ("symbolic.els_containment_check", inputs, {"holds": rep.holds, "rows": rows},
            {}, None, None)


def cmd_colon_bound(ctx: Context):
    name, I = ctx.ideal()
    x = ctx.monomial("x", "-x")
    k_max = ctx.power(ctx.int_opt("kmax", 6), "k_max")
    n_max = ctx.int_opt("nmax", 3)
    bound = ctx.degree_bound()
    res = symbolic.colon_bound(I, x, k_max, n_max, bound, ctx.budgets["max_power"])
    inputs = {"ideal": name, "generators": ctx.gens(I), "x": ctx.mono(x),
              "k_max": k_max, "n_max": n_max}
    result = {"r": res.r, "cells_verified": len(res.cells),
              "within_predicted_bound": res.r <= res.predicted_bound}
    witnesses = {}
    if res.refutation:
        witnesses["refutation"] = {"r": res.r - 1, "k": res.refutation[0], "n": res.refutation[1]}
    predictor = {"max_ratio": res.max_ratio, "rees_constant": res.rees_constant,
                 "value": res.predictor, "bound": res.predicted_bound, "degree_bound": bound}
    return "symbolic.colon_bound", inputs, result, witnesses, predictor, None


def cmd_mon_of(ctx: Context):
    f = ctx.poly()
    J = valuation.mon_of(f)
    return ("valuation.mon_of", {"f": f.format(ctx.names)},
            {"generators": ctx.gens(J)}, {}, None, None)


def cmd_nu_value(ctx: Context):
    f = ctx.poly()
    name, nu = ctx.valuation()
    value = valuation.nu_value(f, nu)
    witnesses = {}
    if value is not INFINITY:
        witnesses["attained_at"] = ctx.mono(min(a for a in f.support() if nu.value(a) == value))
    return ("valuation.nu_value", {"f": f.format(ctx.names), "valuation": name,
                                   "weights": list(nu.weights)},
            {"value": value}, witnesses, None, None)


COMMANDS: Dict[str, Tuple[Callable, str]] = {
    "order": (cmd_order, "I-adic order of f (m-adic without -I)"),
    "reduced-order": (cmd_reduced_order, "reduced order of f along I from Rees facets"),
    "rees": (cmd_rees, "Rees valuations of an m-primary ideal"),
    "rees-constant": (cmd_rees_constant, "scanned gap between reduced order and order"),
    "q-ideal": (cmd_q_ideal, "generators of Q_l for a monomial valuation"),
    "lin-equiv": (cmd_lin_equiv, "linear-equivalence constant of Q-adic and m-adic topologies"),
    "izumi": (cmd_izumi, "least k with v(f) <= k w(f)"),
    "invariants": (cmd_invariants, "rational rank and residue transcendence degree"),
    "growth": (cmd_growth, "cumulative growth function F(l)"),
    "weak-noetherian": (cmd_weak_noetherian, "polynomial sandwich for F(l)"),
    "symbolic": (cmd_symbolic, "symbolic power of a squarefree ideal"),
    "min-primes": (cmd_min_primes, "minimal primes of a squarefree ideal"),
    "contain-m": (cmd_contain_m, "least a with I^(ac) in m^c"),
    "els-check": (cmd_els_check, "check I^(dc) in I^c"),
    "colon-bound": (cmd_colon_bound, "least r with I^k : x^n in I^(k-rn) on a grid"),
    "mon-of": (cmd_mon_of, "monomial ideal generated by the support of f"),
    "nu-value": (cmd_nu_value, "value of f under a monomial valuation"),
}


def run(command: str, options: Dict[str, Any], problem: ProblemFile) -> Report:
    if command not in COMMANDS:
        raise PreconditionError(f"unknown command {command!r}")
    start = time.perf_counter()
    ctx = Context(problem, options)
    op, inputs, result, witnesses, predictor, table = COMMANDS[command][0](ctx)
    elapsed = time.perf_counter() - start
    return Report(command, op, inputs, result, witnesses, predictor, dict(ctx.budgets),
                  elapsed, table, options.get("decimal"))


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="valtop", description="Exact valuation computations on monomial data.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("problem", help="problem file (.vt)")
    common.add_argument("-f", dest="f", help="polynomial: a poly name or an inline expression")
    common.add_argument("-I", dest="ideal", help="ideal name (m for the maximal ideal)")
    common.add_argument("-v", dest="valuation", help="valuation name")
    common.add_argument("-w", dest="valuation2", help="second valuation name")
    common.add_argument("-n", dest="n", type=int, help="power")
    common.add_argument("-l", dest="level", type=Fraction, help="level of Q_l")
    common.add_argument("-x", dest="x", help="monomial for colon-bound")
    common.add_argument("--lmax", type=int)
    common.add_argument("--cmax", type=int)
    common.add_argument("--kmax", type=int)
    common.add_argument("--nmax", type=int)
    common.add_argument("--bound", type=int, help="degree bound for scans (default --max-degree)")
    common.add_argument("--max-degree", dest="max_degree", type=int)
    common.add_argument("--max-power", dest="max_power", type=int)
    common.add_argument("--max-dim", dest="max_dim", type=int)
    common.add_argument("--decimal", type=int, metavar="K", help="also show K-digit approximations")
    common.add_argument("--json", metavar="PATH", help="write the JSON report ('-' for stdout)")
    common.add_argument("--csv", metavar="PATH", help="write the table as CSV ('-' for stdout)")
    sub = top.add_subparsers(dest="command", required=True, metavar="command")
    for name, (_, help_text) in COMMANDS.items():
        sub.add_parser(name, parents=[common], help=help_text, description=help_text)
    return top


def _write(path: str, text: str):
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    opts = vars(args)
    try:
        with open(args.problem, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as e:
        print(f"valtop: error: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    try:
        problem = parse(text)
        report = run(args.command, opts, problem)
        if report.decimal is not None and report.decimal < 0:
            raise PreconditionError("--decimal must be non-negative")
        csv_text = report.to_csv() if args.csv else None
    except ParseError as e:
        print(f"valtop: parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as e:
        print(f"valtop: budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except PreconditionError as e:
        print(f"valtop: error: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    if args.json != "-" and args.csv != "-":
        sys.stdout.write(report.to_text())
    if args.json:
        _write(args.json, report.to_json())
    if csv_text is not None:
        _write(args.csv, csv_text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
