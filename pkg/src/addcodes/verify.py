"""Tiered verification suite.

``quick`` checks catalog parameters, identities and bounds in seconds;
``standard`` adds the exhaustive searches (minutes); ``long`` adds the
PG(11,2) completions of the [7,1] configurations (hours, opt-in).
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import catalog
from .code import (
    AdditiveCode,
    bb_linearity_test,
    concatenate_322,
    concatenate_word,
    griesmer_bound,
    is_f4_linear_literal,
    is_symplectic_self_dual,
    min_distance,
    qweight,
    shorten,
    strength,
    symplectic_dual,
    weight_distribution,
)
from .geometry import ObjectFamily, code_from_family, family_from_code, family_strength, hyperplane_deficiency
from .search import complete_family, coverage_search, f4_systematic_completion, verify_coverage

log = logging.getLogger(__name__)

TIERS = ("quick", "standard", "long")

LINEAR_12_WD = {0: 1, 6: 330, 7: 396, 8: 495, 9: 1320, 10: 990, 11: 396, 12: 168}
QUANTUM_12_WD = {0: 1, 6: 396, 8: 1485, 10: 1980, 12: 234}

N_RANDOM_CODES = 1000
RANDOM_SEED = 20240601


@dataclass
class Outcome:
    number: int
    title: str
    passed: bool
    detail: str
    elapsed: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] criterion {self.number}: {self.title} ({self.detail}; {self.elapsed:.1f}s)"


def _wd_dict(c: AdditiveCode) -> dict[int, int]:
    return weight_distribution(c).nonzero()


# ------------------------------------------------------------- criteria


def check_catalog() -> tuple[bool, str]:
    bad = []
    hexa = catalog.hexacode()
    if (hexa.n, hexa.r, min_distance(hexa)) != (6, 6, 4):
        bad.append("hexacode")
    lin = catalog.linear_12_6_6()
    if min_distance(lin) != 6 or strength(lin) != 5 or _wd_dict(lin) != LINEAR_12_WD:
        bad.append("linear_12_6_6")
    pts = catalog.elliptic_quadric_points()
    if len(pts) != 17 or not catalog.is_cap(pts):
        bad.append("quadric points")
    q = catalog.quadric_code_17_4_12()
    if (q.n, q.r, min_distance(q)) != (17, 8, 12):
        bad.append("[17,4,12]")
    qd = catalog.quadric_dual_17_13_4()
    if (qd.n, qd.r, min_distance(qd, method="dual")) != (17, 26, 4):
        bad.append("[17,13,4]")
    c22 = catalog.code_22_4_5()
    if strength(c22) != 3:
        bad.append("code_22_4_5 strength")
    d22 = catalog.code_22_17_5()
    if (d22.n, d22.r, min_distance(d22, method="dual")) != (22, 35, 4):
        bad.append("[22,17.5,4]")
    return not bad, "all entries match" if not bad else "mismatch: " + ", ".join(bad)


def shortening_chain(times: int = 3) -> list[tuple[AdditiveCode, int]]:
    """Shorten the [22,17.5,4] code at its first coordinate, reporting d via the dual family."""
    c = catalog.code_22_17_5()
    out = []
    for _ in range(times):
        c = shorten(c, 0)
        d = family_strength(family_from_code(symplectic_dual(c))) + 1
        out.append((c, d))
    return out


def check_shortening() -> tuple[bool, str]:
    chain = shortening_chain()
    got = [f"[{c.n},{c.k_str()},{d}]" for c, d in chain]
    want = ["[21,16.5,4]", "[20,15.5,4]", "[19,14.5,4]"]
    return got == want, " ".join(got)


def random_code(rng: np.random.Generator, max_n: int = 8, max_r: int = 10) -> AdditiveCode:
    """A random additive code with ``1 <= r < 2n``."""
    while True:
        n = int(rng.integers(1, max_n + 1))
        r = int(rng.integers(1, min(max_r, 2 * n - 1) + 1)) if n > 1 else 1
        rows = [int(x) for x in rng.integers(0, 1 << (2 * n), size=r)]
        c = AdditiveCode.spanned_by(n, rows)
        if c.r == r:
            return c


def duality_identity_holds(c: AdditiveCode) -> bool:
    dual = symplectic_dual(c)
    if c.r + dual.r != 2 * c.n:
        return False
    d = min_distance(dual)
    return d == strength(c) + 1 and d == hyperplane_deficiency(family_from_code(dual))


def check_duality(count: int = N_RANDOM_CODES, seed: int = RANDOM_SEED) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    failures = sum(1 for _ in range(count) if not duality_identity_holds(random_code(rng)))
    return failures == 0, f"{count - failures}/{count} random codes satisfy d(dual) = t + 1"


def check_concatenation() -> tuple[bool, str]:
    q = catalog.quadric_code_17_4_12()
    b = concatenate_322(q)
    wd = b.weight_distribution()
    ok = (b.n2, b.dim, b.min_distance()) == (51, 8, 24)
    # Word by word: binary weight of the image is twice the quaternary weight.
    ok &= all(concatenate_word(x, q.n).bit_count() == 2 * qweight(x, 2 * q.n) for x in q.codewords())
    g = griesmer_bound(7, 24, 2)
    ok &= g == 49
    return ok, f"[{b.n2},{b.dim},{wd.d}]_2, griesmer(7,24,2) = {g}"


def nu4_solution_codes(sols) -> list[AdditiveCode]:
    fixed = catalog.nu4_completion().fixed_rows
    return [AdditiveCode.from_f4_rows(catalog.systematic_rows([*fixed, *sol])) for sol in sols]


def check_p_completions() -> tuple[bool, str]:
    r4 = f4_systematic_completion(catalog.nu4_completion(), mode="collect")
    r3 = f4_systematic_completion(catalog.nu3_completion(), mode="count")
    wds = {tuple(sorted(_wd_dict(c).items())) for c in nu4_solution_codes(r4.solutions)}
    same = wds == {tuple(sorted(LINEAR_12_WD.items()))}
    ok = r4.count == 12 and r3.count == 0 and same
    return ok, f"nu=4: {r4.count} completions, nu=3: {r3.count}, shared linear distribution: {same}"


def check_coverage() -> tuple[bool, str]:
    p = catalog.quadric_coverage()
    rep = coverage_search(p, mode="collect")
    verified = sum(1 for s in rep.solutions if verify_coverage(p, s))
    ok = rep.count == 246 and verified == rep.count
    return ok, f"{rep.count} solutions (expected 246), {verified} re-verified by incidence counting"


def check_no_extra_line(workers: int = 1) -> tuple[bool, str]:
    rep = complete_family(catalog.quadric_line_completion(), mode="count", workers=workers)
    return rep.count == 0, f"{rep.count} completing lines"


def classify_completion(base: ObjectFamily, sol) -> tuple[str, bool]:
    """Weight-distribution class of the [12,6,6] dual of a completed family, and self-duality."""
    fam = base.extended(sol)
    dual = symplectic_dual(code_from_family(fam))
    wd = _wd_dict(dual)
    kind = "linear" if wd == LINEAR_12_WD else "quantum" if wd == QUANTUM_12_WD else "other"
    return kind, is_symplectic_self_dual(dual)


def check_configuration_completions(workers: int = 1) -> tuple[bool, str]:
    ok = True
    parts = []
    for i in range(1, 6):
        prob = catalog.configuration_completion(i)
        log.info("configuration %d: searching", i)
        rep = complete_family(prob, mode="collect", workers=workers)
        tally = {"linear": 0, "quantum": 0, "other": 0}
        self_dual = 0
        for sol in rep.solutions:
            kind, sd = classify_completion(prob.base, sol)
            tally[kind] += 1
            self_dual += sd
        parts.append(f"config {i}: {rep.count} ({tally['linear']} linear, {tally['quantum']} quantum, "
                     f"{tally['other']} other)")
        log.info(parts[-1])
        ok &= tally["other"] == 0
        if i in (2, 3):
            ok &= rep.count == 0
        if i == 4:
            ok &= rep.count > 0 and tally["quantum"] == rep.count and self_dual == rep.count
    return ok, "; ".join(parts)


def check_linearity() -> tuple[bool, str]:
    linear = {
        "hexacode": catalog.hexacode(),
        "linear_12_6_6": catalog.linear_12_6_6(),
        "quadric_code_17_4_12": catalog.quadric_code_17_4_12(),
        "quadric_dual_17_13_4": catalog.quadric_dual_17_13_4(),
    }
    bad = [name for name, c in linear.items() if not (bb_linearity_test(c)[0] and is_f4_linear_literal(c))]
    verdict, witness = bb_linearity_test(catalog.code_22_4_5())
    ok = not bad and not verdict and witness is not None
    return ok, f"F4-built entries linear: {not bad}; code_22_4_5 witness {witness}"


@dataclass(frozen=True)
class Criterion:
    number: int
    title: str
    tier: str
    run: Callable[..., tuple[bool, str]]
    uses_workers: bool = False


CRITERIA = (
    Criterion(1, "catalog self-checks", "quick", check_catalog),
    Criterion(2, "shortening chain of the [22,17.5,4] code", "quick", check_shortening),
    Criterion(3, "duality / strength identity on random codes", "quick", check_duality),
    Criterion(4, "concatenation and Griesmer bound", "quick", check_concatenation),
    Criterion(5, "systematic P completions (12 and 0)", "standard", check_p_completions),
    Criterion(6, "PG(4,2) coverage count 246", "standard", check_coverage),
    Criterion(7, "no 18th line for the quadric family", "standard", check_no_extra_line, True),
    Criterion(8, "[12,6,6] completions: linear or quantum distribution", "long", check_configuration_completions, True),
    Criterion(9, "linearity tests", "quick", check_linearity),
)


def criteria_for(tier: str) -> list[Criterion]:
    if tier not in TIERS:
        raise ValueError(f"tier must be one of {TIERS}")
    upto = TIERS.index(tier)
    return [c for c in CRITERIA if TIERS.index(c.tier) <= upto]


def run_criterion(c: Criterion, workers: int = 1) -> Outcome:
    t0 = time.perf_counter()
    try:
        passed, detail = c.run(workers=workers) if c.uses_workers else c.run()
    except Exception as exc:  # a crash is a failure, reported like one
        passed, detail = False, f"error: {exc!r}"
    return Outcome(c.number, c.title, passed, detail, time.perf_counter() - t0)


def run_tier(tier: str, workers: int = 1, report: Callable[[Outcome], None] | None = None) -> list[Outcome]:
    out = []
    for c in criteria_for(tier):
        res = run_criterion(c, workers)
        if report:
            report(res)
        out.append(res)
    return out
