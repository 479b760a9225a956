"""The reproduction checks, one function per criterion.

Each check returns ``(passed, detail)``; :func:`run` times it against
its limit and collects :class:`CriterionResult` rows.  A check that runs
out of its resource cap is reported as not finished.
"""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass
from typing import Callable

from . import reference as ref
from .ehrhart import (candidate_periods, check_functional_equation, count_table, fit_quasipolynomial,
                      fit_with_period_search, is_palindromic, multiplicity_from_quasipolynomial,
                      series_numerator)
from .errors import CapExceeded
from .forms import cone_inequalities, gorenstein_witness
from .hilbert import construct_A, construct_B, decompose, hb_count_formulas, resum, sample_members
from .hilbert import verify_minimality
from .polyhedra import extreme_rays, hilbert_basis_bounded, irredundant_facets, multiplicity
from .sheets import is_member, sheets_of_degree
from .stats import asymptotic_ratio
from .triangulation import triangulate, triangulation_stats

PASS, FAIL, SKIP, UNFINISHED = "PASS", "FAIL", "SKIP", "NOT FINISHED"


@dataclass
class CriterionResult:
    number: int
    title: str
    status: str
    detail: str
    seconds: float
    limit: float | None

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def line(self) -> str:
        limit = f" / {self.limit:g}s" if self.limit is not None else ""
        return f"[{self.status}] #{self.number} {self.title} ({self.seconds:.1f}s{limit}): {self.detail}"

    def to_json(self) -> dict:
        return asdict(self)


def _brute(family: str, n: int, G: int) -> int:
    return sum(1 for S in sheets_of_degree(n, G) if is_member(S, family))


def c1_hb_runner_up_3(ctx):
    got = set(construct_A(3)) | set(construct_B(3))
    want = set(ref.hb_runner_up_3())
    return got == want and len(want) == 12, f"{len(got)} constructed, {len(want)} reference, equal={got == want}"


def c2_hb_consistent_3(ctx):
    res = hilbert_basis_bounded(cone_inequalities("c", 3), D=6)
    want = set(ref.hb_consistent_3())
    got = set(res.elements)
    minimal = verify_minimality(sorted(want, key=lambda s: s.entries), "c", 3)
    ok = got == want and len(want) == 10 and minimal and res.complete
    return ok, f"{len(got)} found, equal={got == want}, minimal={minimal}, generates={res.complete}"


def c3_count_formulas(ctx):
    bad = []
    for n in range(3, 7):
        a, b, total = hb_count_formulas(n)
        A, B = set(construct_A(n)), set(construct_B(n))
        if (len(A), len(B), len(A | B)) != (a, b, total):
            bad.append(f"n={n}: enumerated {(len(A), len(B), len(A | B))}, formula {(a, b, total)}")
    for n in range(7, 13):
        try:
            hb_count_formulas(n)
        except AssertionError as exc:
            bad.append(str(exc))
    return not bad, "; ".join(bad) or "enumeration n=3..6 and closed forms n=3..12 agree"


def c4_extreme_rays(ctx):
    parts = []
    ok = True
    for n in (3, 4, 5):
        rays = set(extreme_rays(cone_inequalities("r", n)).rays)
        hb = {s.entries for s in construct_A(n)} | {s.entries for s in construct_B(n)}
        ok &= rays == hb
        parts.append(f"n={n}: {len(rays)} rays{'' if rays == hb else ' MISMATCH'}")
    return ok, ", ".join(parts)


def c5_gorenstein(ctx):
    bad = []
    for n in range(3, 9):
        e = gorenstein_witness(n)
        spec = cone_inequalities("c", n)
        vals = {f(e) for f in spec.inequalities}
        if vals != {1}:
            bad.append(f"n={n}: values {sorted(vals)}")
    kept = []
    for n in (3, 4, 5):
        spec = cone_inequalities("c", n)
        red = irredundant_facets(spec)
        kept.append(f"{len(red.inequalities)}/{len(spec.inequalities)}")
        if len(red.inequalities) != len(spec.inequalities):
            bad.append(f"n={n}: reduction dropped {len(spec.inequalities) - len(red.inequalities)} forms")
    return not bad, "; ".join(bad) or f"all forms equal 1 on the witness for n=3..8; facets kept {', '.join(kept)}"


def _compare_table(Q, printed) -> list[str]:
    diffs = []
    for c, row in enumerate(printed):
        for j, want in enumerate(row):
            got = Q.coeffs[c][j]
            if got != want:
                diffs.append(f"residue {c} G^{j}: computed {got}, printed {want}")
    return diffs


def c6_q_runner_up(ctx):
    Q = fit_quasipolynomial(count_table("r", 3, 72, use_cache=ctx.get("use_cache", True)), 6, 5)
    ctx["Q_r"] = Q
    diffs = _compare_table(Q, ref.Q_RUNNER_UP_3)
    spots = (_brute("r", 3, 1), _brute("r", 3, 2))
    ok = not diffs and spots == (2, 7) and (Q(1), Q(2)) == (2, 7)
    return ok, (f"{36 - len(diffs)}/36 coefficients equal; brute force Q(1), Q(2) = {spots}"
                + ("; " + "; ".join(diffs) if diffs else ""))


def c7_q_consistent(ctx):
    table = count_table("c", 3, 110, engine="naive", use_cache=ctx.get("use_cache", True))
    Q = fit_quasipolynomial(table, 12, 5)
    ctx["Q_c"] = Q
    diffs = _compare_table(Q, ref.Q_CONSISTENT_3)
    spots = (_brute("c", 3, 1), _brute("c", 3, 2))
    ok = not diffs and spots == (2, 6) and (Q(1), Q(2)) == (2, 6)
    return ok, (f"{72 - len(diffs)}/72 coefficients equal; brute force Q(1), Q(2) = {spots}"
                + ("; " + "; ".join(diffs) if diffs else ""))


def c8_series(ctx):
    uc = ctx.get("use_cache", True)
    hr = series_numerator(count_table("r", 3, 72, use_cache=uc), ref.SERIES_RUNNER_UP_3_EXPONENTS)
    hc = series_numerator(count_table("c", 3, 110, engine="naive", use_cache=uc), ref.SERIES_CONSISTENT_3_EXPONENTS)
    ok_r = hr.numerator == ref.SERIES_RUNNER_UP_3
    ok_c = hc.numerator == ref.SERIES_CONSISTENT_3
    pal = is_palindromic(hc.numerator)
    return ok_r and ok_c and pal, (f"runner-up degree {len(hr.numerator) - 1} equal={ok_r}; "
                                   f"consistent degree {len(hc.numerator) - 1} equal={ok_c}, palindromic={pal}")


def c9_functional_equation(ctx):
    Q = ctx.get("Q_c")
    if Q is None:
        Q = fit_quasipolynomial(count_table("c", 3, 110, engine="naive", use_cache=ctx.get("use_cache", True)), 12, 5)
    t = time.monotonic()
    ok = check_functional_equation(Q, 9, range(-40, 41))
    return ok, f"Q(-k) = -Q(k-9) for k=-40..40: {ok} ({time.monotonic() - t:.3f}s for the check)"


def c10_multiplicities(ctx):
    uc = ctx.get("use_cache", True)
    vol = {fam: multiplicity(cone_inequalities(fam, 3)) for fam in "mrc"}
    m_rays = extreme_rays(cone_inequalities("m", 3))
    Qm = fit_with_period_search(count_table("m", 3, 90, use_cache=uc), 5,
                                candidate_periods([sum(r) for r in m_rays.rays]))
    Qr = ctx.get("Q_r") or fit_quasipolynomial(count_table("r", 3, 72, use_cache=uc), 6, 5)
    Qc = ctx.get("Q_c") or fit_quasipolynomial(count_table("c", 3, 110, engine="naive", use_cache=uc), 12, 5)
    ehr = {"m": multiplicity_from_quasipolynomial(Qm), "r": multiplicity_from_quasipolynomial(Qr),
           "c": multiplicity_from_quasipolynomial(Qc)}
    agree = vol == ehr
    r1, _ = asymptotic_ratio(vol["r"], vol["m"])
    r2, _ = asymptotic_ratio(vol["c"], vol["m"])
    ok = agree and r1 == ref.LIMIT_RUNNER_UP_3 and r2 == ref.LIMIT_CONSISTENT_3
    return ok, (f"volume {', '.join(f'{k}={v}' for k, v in vol.items())}; "
                f"Ehrhart {', '.join(f'{k}={v}' for k, v in ehr.items())}; ratios {r1}, {r2}")


def c11_table_n4(ctx):
    e = {fam: multiplicity(cone_inequalities(fam, 4)) for fam in "mrc"}
    _, s1 = asymptotic_ratio(e["r"], e["m"])
    _, s2 = asymptotic_ratio(e["c"], e["m"])
    want = ref.LIMITS[4]
    return (s1, s2) == want, f"ratios {s1}, {s2} (expected {want[0]}, {want[1]})"


def c12_membership(ctx):
    S = ref.ORDER_CHANGED_5
    example = is_member(S, "ordered") and not is_member(S, "runner-up")
    golden = all(is_member(s, "runner-up") for s in ref.hb_runner_up_3()) and \
        all(is_member(s, "consistent") for s in ref.hb_consistent_3())
    seed = ctx.get("seed", 0)
    bad = 0
    total = 0
    for n in (3, 4, 5):
        for M in sample_members("runner-up", n, 500, seed=seed + n):
            total += 1
            if resum(decompose(M), n) != M:
                bad += 1
    ok = example and golden and bad == 0
    return ok, (f"example ordered-not-runner-up={example}; golden sheets pass={golden}; "
                f"{total - bad}/{total} sampled decompositions re-sum")


def c13_consistent_5(ctx):
    spec = cone_inequalities("c", 5)
    rays = extreme_rays(spec)
    detail = f"{len(rays)} extreme rays (expected {ref.CONSISTENT_5_RAYS})"
    if len(rays) != ref.CONSISTENT_5_RAYS:
        return False, detail
    try:
        hb = hilbert_basis_bounded(spec, certify=False, max_candidates=ctx.get("max_candidates", 10**8))
    except CapExceeded as exc:
        raise CapExceeded(f"{detail}; Hilbert basis not finished: {exc}") from exc
    ok = len(hb) == ref.CONSISTENT_5_HB
    return ok, f"{detail}; {len(hb)} irreducibles up to degree {hb.degree_cap} (expected {ref.CONSISTENT_5_HB})"


def c14_unimodularity(ctx):
    start = time.monotonic()
    limit = ctx.get("limit", 600.0)
    parts = []
    ok = True
    for n in (3, 4):
        tri = triangulate(extreme_rays(cone_inequalities("r", n)))
        ok &= tri.is_unimodular()
        parts.append(f"R_{n}: {len(tri.simplices)} simplices, volumes {tri.volume_histogram()}")
    tri = triangulate(extreme_rays(cone_inequalities("c", 4)))
    non_uni = not tri.is_unimodular()
    ok &= non_uni
    parts.append(f"C_4: volumes {tri.volume_histogram()}")
    rays5 = extreme_rays(cone_inequalities("r", 5))
    budget = limit - (time.monotonic() - start)
    try:
        st = triangulation_stats(rays5, time_budget=max(budget, 1.0))
    except CapExceeded as exc:
        parts.append(f"R_5 ({len(rays5)} rays): {exc}")
        return False, "; ".join(parts)
    ok &= st.is_unimodular()
    parts.append(f"R_5: {st.count} simplices, volumes {st.volume_histogram()}")
    return ok, "; ".join(parts)


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    check: Callable
    limit: float | None
    stretch: bool = False


CRITERIA = (
    Criterion(1, "HB(R_3) equals the 12 reference sheets", c1_hb_runner_up_3, 1.0),
    Criterion(2, "HB(C_3) by the bounded oracle with D=6", c2_hb_consistent_3, 10.0),
    Criterion(3, "Hilbert basis counting formulas", c3_count_formulas, 30.0),
    Criterion(4, "extreme rays of R_n equal A_n and B_n for n=3,4,5", c4_extreme_rays, 300.0),
    Criterion(5, "Gorenstein witness and irredundant consistent forms", c5_gorenstein, 120.0),
    Criterion(6, "runner-up quasipolynomial for n=3", c6_q_runner_up, 120.0),
    Criterion(7, "consistent quasipolynomial for n=3", c7_q_consistent, 900.0),
    Criterion(8, "Hilbert series numerators for n=3", c8_series, 60.0),
    Criterion(9, "functional equation of the consistent quasipolynomial", c9_functional_equation, 1.0),
    Criterion(10, "multiplicities by volume and by Ehrhart fit for n=3", c10_multiplicities, 120.0),
    Criterion(11, "limit probabilities for n=4", c11_table_n4, 1800.0),
    Criterion(12, "membership regression and decomposition", c12_membership, 300.0),
    Criterion(13, "consistent cone for n=5 (stretch)", c13_consistent_5, None, stretch=True),
    Criterion(14, "unimodularity of placing triangulations", c14_unimodularity, 600.0),
)


def run_one(c: Criterion, ctx: dict, stretch: bool = False) -> CriterionResult:
    if c.stretch and not stretch:
        return CriterionResult(c.number, c.title, SKIP, "opt-in with --stretch", 0.0, c.limit)
    ctx["limit"] = c.limit
    t = time.monotonic()
    try:
        ok, detail = c.check(ctx)
        status = PASS if ok else FAIL
    except CapExceeded as exc:
        ok, detail, status = False, str(exc), UNFINISHED if c.stretch else FAIL
    except Exception as exc:  # a crashing check is a failing check
        ok, detail, status = False, f"{type(exc).__name__}: {exc}", FAIL
    secs = time.monotonic() - t
    if status == PASS and c.limit is not None and secs > c.limit:
        status = FAIL
        detail += f"; over the {c.limit:g}s limit"
    return CriterionResult(c.number, c.title, status, detail, secs, c.limit)


def run(select=None, stretch: bool = False, seed: int = 0, use_cache: bool = True,
        max_candidates: int = 10**8, echo: Callable[[str], None] | None = None) -> list[CriterionResult]:
    """Run the selected criteria (default: all) in order, sharing fitted objects."""
    ctx = {"seed": seed, "use_cache": use_cache, "max_candidates": max_candidates}
    out = []
    for c in CRITERIA:
        if select is not None and c.number not in select:
            continue
        res = run_one(c, ctx, stretch=stretch)
        out.append(res)
        if echo:
            echo(res.line())
    return out


def summary(results: list[CriterionResult]) -> dict:
    counted = [r for r in results if r.status in (PASS, FAIL)]
    return {
        "passed": sum(r.status == PASS for r in counted),
        "failed": sum(r.status == FAIL for r in counted),
        "skipped": sum(r.status == SKIP for r in results),
        "not_finished": sum(r.status == UNFINISHED for r in results),
    }


def get(number: int) -> Criterion:
    for c in CRITERIA:
        if c.number == number:
            return c
    raise KeyError(number)


__all__ = ["CRITERIA", "Criterion", "CriterionResult", "run", "run_one", "summary", "get",
           "PASS", "FAIL", "SKIP", "UNFINISHED"]
