"""Command-line interface.

Exit codes: 0 success or membership, 1 negative verdict or failed check,
2 bad input, 3 resource cap or timeout.
"""

from __future__ import annotations

import argparse
import json
import platform
import signal
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import __version__, acceptance, kernels
from .ehrhart import (candidate_periods, count_table, fit_quasipolynomial,
                      fit_with_period_search, is_palindromic, series_numerator)
from .errors import CapExceeded
from .forms import cone_inequalities, degree1_form, verify_gorenstein
from .hilbert import construct_A, construct_B, decompose, hb_count_formulas, resum
from .polyhedra import extreme_rays, hilbert_basis_bounded, irredundant_facets, multiplicity
from .reference import LIMITS
from .sheets import (MonoidFamily, ScoreSheet, first_violation, format_text, from_json, is_member,
                     parse_text_many, violating_pair)
from .stats import asymptotic_ratio, probability_csv, probability_rows

EXIT_OK, EXIT_NO, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3
REPORT_SCHEMA = 1


class InputError(ValueError):
    pass


@dataclass
class RunReport:
    command: str
    inputs: dict
    versions: dict
    timings: dict = field(default_factory=dict)
    results: dict = field(default_factory=dict)
    checks: dict = field(default_factory=dict)
    schema: int = REPORT_SCHEMA

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2, sort_keys=True, default=str)

    @classmethod
    def from_json(cls, text: str) -> "RunReport":
        obj = json.loads(text)
        if obj.get("schema") != REPORT_SCHEMA:
            raise ValueError(f"unsupported report schema {obj.get('schema')!r}")
        return cls(**obj)


def _versions() -> dict:
    import scipy
    import sympy
    return {
        "scoresheets": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "scipy": scipy.__version__,
        "sympy": sympy.__version__,
        "backend": kernels.BACKEND,
    }


def _read_sheets(path: str) -> list[ScoreSheet]:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise InputError(str(exc)) from exc
    try:
        if text.lstrip().startswith(("{", "[")):
            obj = json.loads(text)
            return [from_json(o) for o in (obj if isinstance(obj, list) else [obj])]
        sheets = parse_text_many(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise InputError(f"cannot parse {path}: {exc}") from exc
    if not sheets:
        raise InputError(f"no sheet in {path}")
    return sheets


def _family(name: str) -> MonoidFamily:
    try:
        return MonoidFamily.parse(name)
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _write(out: str | None, text: str) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


# -- commands --------------------------------------------------------------

def cmd_check(a, rep: RunReport) -> int:
    fam = _family(a.family)
    verdicts = []
    for k, S in enumerate(_read_sheets(a.file)):
        flags = {f.value: is_member(S, f) for f in (MonoidFamily.ORDERED, MonoidFamily.RUNNER_UP,
                                                      MonoidFamily.CONSISTENT)}
        print(" ".join(f"{name}={str(v).lower()}" for name, v in flags.items()))
        if not is_member(S, fam):
            P = first_violation(S, fam)
            pair = violating_pair(S, P)
            teams = ",".join(str(t + 1) for t in P)
            if pair:
                a_, b_, sa, sb = pair
                print(f"not {fam.value}: on teams {{{teams}}} team {a_ + 1} has {sa} goals "
                      f"but team {b_ + 1} has {sb}")
            else:
                print(f"not {fam.value}: teams {{{teams}}} are out of order")
        verdicts.append(is_member(S, fam))
        rep.results[f"sheet{k}"] = flags
    rep.checks["member"] = all(verdicts)
    return EXIT_OK if all(verdicts) else EXIT_NO


def cmd_hb(a, rep: RunReport) -> int:
    fam = _family(a.family)
    if fam is MonoidFamily.RUNNER_UP:
        A, B = construct_A(a.n), construct_B(a.n)
        fa, fb, ft = hb_count_formulas(a.n)
        sheets = sorted(set(A) | set(B), key=lambda s: (sum(s.entries), s.entries))
        ok = (len(A), len(B), len(sheets)) == (fa, fb, ft)
        print(f"#A={len(A)} #B={len(B)} #HB={len(sheets)} formulas=({fa}, {fb}, {ft}) agree={str(ok).lower()}")
        rep.results.update({"A": len(A), "B": len(B), "HB": len(sheets)})
    elif fam is MonoidFamily.CONSISTENT or fam is MonoidFamily.ORDERED:
        res = hilbert_basis_bounded(cone_inequalities(fam, a.n), D=a.degree_cap, max_candidates=a.max_candidates)
        sheets = res.elements
        ok = res.complete
        print(f"#HB={len(sheets)} degree_cap={res.degree_cap} certified={str(res.certified).lower()} "
              f"generates={str(res.complete).lower()} enumerated={res.enumerated}")
        rep.results.update({"HB": len(sheets), "degree_cap": res.degree_cap, "certified": res.certified})
    else:
        raise InputError("the free monoid of all sheets has the cell units as its basis")
    rep.checks["hb"] = ok
    if a.out:
        Path(a.out).write_text("\n".join(format_text(s) for s in sheets))
    elif a.list:
        print("\n".join(format_text(s) for s in sheets))
    return EXIT_OK if ok else EXIT_NO


def cmd_decompose(a, rep: RunReport) -> int:
    code = EXIT_OK
    for k, S in enumerate(_read_sheets(a.file)):
        try:
            parts = decompose(S)
        except ValueError as exc:
            print(f"sheet {k + 1}: {exc}")
            code = EXIT_NO
            continue
        ok = resum(parts, S.n) == S
        print(f"sheet {k + 1}: {len(parts)} parts, re-sums={str(ok).lower()}")
        for p in parts:
            print("  " + p.describe())
        rep.results[f"sheet{k}"] = [p.describe() for p in parts]
        if not ok:
            code = EXIT_NO
    return code


def cmd_count(a, rep: RunReport) -> int:
    table = count_table(_family(a.family), a.n, a.upto, engine=a.engine, max_candidates=a.max_candidates,
                        use_cache=not a.no_cache)
    _write(a.out, table.to_csv())
    rep.results["counts"] = table.counts
    return EXIT_OK


def _fit(a):
    fam = _family(a.family)
    table = count_table(fam, a.n, a.upto, engine=a.engine, max_candidates=a.max_candidates, use_cache=not a.no_cache)
    degree = a.n * (a.n - 1) - 1
    if a.period:
        return fit_quasipolynomial(table, a.period, degree)
    rays = extreme_rays(cone_inequalities(fam, a.n), max_rays=a.max_rays)
    return fit_with_period_search(table, degree, candidate_periods([sum(r) for r in rays.rays]))


def cmd_fit(a, rep: RunReport) -> int:
    Q = _fit(a)
    _write(a.out, json.dumps(Q.to_json(), indent=2) + "\n")
    rep.results["quasipolynomial"] = Q.to_json()
    return EXIT_OK


def cmd_series(a, rep: RunReport) -> int:
    table = count_table(_family(a.family), a.n, a.upto, engine=a.engine, max_candidates=a.max_candidates,
                        use_cache=not a.no_cache)
    exps = [int(e) for e in a.exponents.split(",")]
    h = series_numerator(table, exps)
    print("numerator: " + " ".join(str(c) for c in h.numerator))
    print("denominator: " + " ".join(f"(1-t^{e})" for e in h.exponents))
    print(f"palindromic: {str(is_palindromic(h.numerator)).lower()}")
    rep.results.update({"numerator": list(h.numerator), "exponents": list(h.exponents)})
    return EXIT_OK


def cmd_multiplicity(a, rep: RunReport) -> int:
    spec = cone_inequalities(_family(a.family), a.n)
    grading = degree1_form(a.n) if a.grading == "first-row" else None
    e = multiplicity(spec, grading=grading, rays=extreme_rays(spec, max_rays=a.max_rays))
    print(_frac(e))
    print(f"{float(e):.12g}")
    rep.results["multiplicity"] = _frac(e)
    return EXIT_OK


def cmd_rays(a, rep: RunReport) -> int:
    rays = extreme_rays(cone_inequalities(_family(a.family), a.n), max_rays=a.max_rays)
    if a.format == "json":
        text = json.dumps(rays.to_json()) + "\n"
    elif a.format == "sheets":
        text = "\n".join(format_text(s) for s in rays.sheets())
    else:
        text = "".join(" ".join(str(v) for v in r) + "\n" for r in rays.rays)
    _write(a.out, text)
    print(f"{len(rays)} extreme rays", file=sys.stderr)
    rep.results["rays"] = len(rays)
    return EXIT_OK


def cmd_gorenstein(a, rep: RunReport) -> int:
    spec = irredundant_facets(cone_inequalities(_family(a.family), a.n))
    res = verify_gorenstein(spec)
    print(f"status: {res.status}")
    rep.results["status"] = res.status
    if res.witness is not None:
        print(format_text(res.witness), end="")
        vals = sorted({f(res.witness) for f in spec.inequalities})
        print(f"facet values: {vals}")
        rep.results["witness"] = list(res.witness.entries)
    rep.checks["gorenstein"] = bool(res)
    return EXIT_OK if res else EXIT_NO


def cmd_probability(a, rep: RunReport) -> int:
    limits = {}
    if a.with_limits:
        ordered = multiplicity(cone_inequalities("ordered", a.n))
        for name, fam in (("limit_runner_up", "runner-up"), ("limit_consistent", "consistent")):
            limits[name] = asymptotic_ratio(multiplicity(cone_inequalities(fam, a.n)), ordered)[0]
    rows = probability_rows(a.n, a.upto, limits, engine=a.engine, use_cache=not a.no_cache)
    _write(a.out, probability_csv(rows))
    rep.results["limits"] = {k: _frac(v) for k, v in limits.items()}
    if a.n in LIMITS:
        rep.results["printed_limits"] = LIMITS[a.n]
    return EXIT_OK


def cmd_report(a, rep: RunReport) -> int:
    if not a.paper:
        raise InputError("report needs --paper")
    select = set(a.only) if a.only else None
    results = acceptance.run(select=select, stretch=a.stretch, seed=a.seed, use_cache=not a.no_cache,
                             max_candidates=a.max_candidates, echo=lambda s: print(s, flush=True))
    summ = acceptance.summary(results)
    print(f"passed {summ['passed']}, failed {summ['failed']}, skipped {summ['skipped']}, "
          f"not finished {summ['not_finished']}")
    rep.results["criteria"] = [r.to_json() for r in results]
    rep.results["summary"] = summ
    for r in results:
        rep.checks[str(r.number)] = r.status
    return EXIT_OK if summ["failed"] == 0 else EXIT_NO


# -- parser ----------------------------------------------------------------

def _positive(s: str) -> int:
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="scoresheets", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-rays", type=_positive, default=100_000, help="cap on rays during double description")
    common.add_argument("--max-candidates", type=_positive, default=10**8, help="cap on enumerated candidate tuples")
    common.add_argument("--timeout", type=float, default=None, help="wall-clock limit in seconds (exit 3)")
    common.add_argument("--threads", type=_positive, default=1, help="worker threads; the kernels are sequential")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")
    common.add_argument("--report", default=None, help="write a JSON run report here")
    common.add_argument("--backend", choices=kernels.available_backends(), default=None)
    sub = p.add_subparsers(dest="command", required=True)

    def family_n(sp, default_family=None):
        sp.add_argument("--family", required=default_family is None, default=default_family)
        sp.add_argument("--n", type=int, required=True)

    def counting(sp):
        sp.add_argument("--upto", type=int, required=True)
        sp.add_argument("--engine", choices=["auto", "naive", "factorized"], default="auto")
        sp.add_argument("--no-cache", action="store_true")

    s = sub.add_parser("check", parents=[common], help="membership of sheets in a file")
    s.add_argument("file")
    s.add_argument("--family", default="consistent")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("hb", parents=[common], help="Hilbert basis")
    family_n(s)
    s.add_argument("--degree-cap", type=int, default=None)
    s.add_argument("--out", default=None)
    s.add_argument("--list", action="store_true", help="print the sheets")
    s.set_defaults(func=cmd_hb)

    s = sub.add_parser("decompose", parents=[common], help="runner-up sheets as sums of basis elements")
    s.add_argument("file")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("count", parents=[common], help="sheets by number of goals, as CSV")
    family_n(s)
    counting(s)
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_count)

    s = sub.add_parser("fit", parents=[common], help="Ehrhart quasipolynomial as JSON")
    family_n(s)
    counting(s)
    s.add_argument("--period", type=_positive, default=None, help="default: search divisors of the ray-degree lcm")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_fit)

    s = sub.add_parser("series", parents=[common], help="Hilbert series numerator")
    family_n(s)
    counting(s)
    s.add_argument("--exponents", required=True, help="comma-separated e_i of prod(1-t^e_i)")
    s.set_defaults(func=cmd_series)

    s = sub.add_parser("multiplicity", parents=[common], help="normalized volume")
    family_n(s)
    s.add_argument("--grading", choices=["total", "first-row"], default="total")
    s.set_defaults(func=cmd_multiplicity)

    s = sub.add_parser("rays", parents=[common], help="extreme rays")
    family_n(s)
    s.add_argument("--format", choices=["matrix", "json", "sheets"], default="matrix")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_rays)

    s = sub.add_parser("gorenstein", parents=[common], help="point with all facet values 1")
    family_n(s)
    s.set_defaults(func=cmd_gorenstein)

    s = sub.add_parser("probability", parents=[common], help="conditional probabilities as CSV")
    s.add_argument("--n", type=int, required=True)
    counting(s)
    s.add_argument("--with-limits", action="store_true", help="add the limits from multiplicities")
    s.add_argument("--out", default=None)
    s.set_defaults(func=cmd_probability)

    s = sub.add_parser("report", parents=[common], help="run the reproduction checks")
    s.add_argument("--paper", action="store_true", help="run every acceptance criterion")
    s.add_argument("--stretch", action="store_true", help="include opt-in criteria")
    s.add_argument("--only", type=int, nargs="+", default=None, help="criterion numbers")
    s.add_argument("--no-cache", action="store_true")
    s.set_defaults(func=cmd_report)
    return p


def _on_alarm(signum, frame):
    raise CapExceeded("timeout reached")


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    if a.backend:
        kernels.BACKEND = a.backend
    rep = RunReport(a.command, {k: v for k, v in vars(a).items() if k != "func"}, _versions())
    if a.timeout:
        signal.signal(signal.SIGALRM, _on_alarm)
        signal.setitimer(signal.ITIMER_REAL, a.timeout)
    t = time.monotonic()
    try:
        code = a.func(a, rep)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_INPUT
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        code = EXIT_CAP
    except (ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_INPUT
    finally:
        if a.timeout:
            signal.setitimer(signal.ITIMER_REAL, 0)
    rep.timings["total_seconds"] = round(time.monotonic() - t, 3)
    rep.results["exit_code"] = code
    if a.report:
        Path(a.report).write_text(rep.to_json())
    return code


if __name__ == "__main__":
    sys.exit(main())
