"""Exhaustive backtracking searches over line families and systematic GF(4) generators.

Three engines:

* :func:`complete_family` extends a family of objects by candidates taken in
  canonical non-decreasing order while keeping every ``t`` objects in general
  position.
* :func:`coverage_search` chooses lines so that each constrained point lies on
  an exact number of them.
* :func:`f4_systematic_completion` appends rows to a partial ``P`` so that the
  code generated by ``(I | P)`` keeps a minimum distance.

All three report solutions in a deterministic order that does not depend on
the number of worker processes.
"""

from __future__ import annotations

import copy
import logging
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, product
from typing import Iterable, Sequence

import numpy as np

from .geometry import (
    CodeObject,
    ObjectFamily,
    family_strength,
    format_family,
    iter_line_gens,
    lexkey,
    parse_family_lines,
    parse_object,
)
from .linalg2 import F4Elem, F4Vector, bits_to_string, f4_expand, pair_weight, reverse_string_bits, span_elements

log = logging.getLogger(__name__)

MODES = ("count", "collect", "exists")
PROGRESS_INTERVAL = 30.0  # seconds between progress log lines


@dataclass
class SearchReport:
    count: int
    solutions: list = field(default_factory=list)
    nodes_visited: int = 0
    elapsed: float = 0.0
    exhausted: bool = True
    note: str = ""

    def records(self) -> list[dict]:
        return [{"index": i, "solution": [str(x) for x in sol]} for i, sol in enumerate(self.solutions)]


def default_workers() -> int:
    return os.cpu_count() or 1


def _check_mode(mode: str) -> None:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")


# =================================================== family completion


@dataclass(frozen=True)
class CompletionProblem:
    base: ObjectFamily
    target_count: int
    min_strength: int
    candidate_pool: tuple[CodeObject, ...] | None = None  # None: every line of the ambient space

    def __post_init__(self) -> None:
        if self.target_count < len(self.base):
            raise ValueError("target_count is smaller than the base family")
        if self.min_strength < 1:
            raise ValueError("min_strength must be at least 1")
        if family_strength(self.base) < min(self.min_strength, len(self.base)):
            raise ValueError("base family does not have the required strength")


def _points(vecs: Iterable[int]) -> list[int]:
    return [x for x in span_elements(_reduce(vecs)) if x]


def _reduce(vecs: Iterable[int]) -> list[int]:
    basis: list[int] = []
    for v in vecs:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            basis.sort(reverse=True)
    return basis


class _SpanCache:
    """Bases of the small subfamilies that can still grow, plus the forbidden points.

    A new object keeps strength ``t`` iff it meets no span of at most ``t - 1``
    current objects, i.e. none of its points is flagged in ``forbidden``.
    """

    def __init__(self, t: int, m: int):
        self.t = t
        self.forbidden = np.zeros(1 << m, dtype=bool)
        self.growable: list[tuple[int, list[int]]] = [(0, [])]  # (subset size, basis)

    def add(self, gens: Sequence[int]) -> "_SpanCache":
        nxt = copy.copy(self)
        nxt.forbidden = self.forbidden.copy()
        nxt.growable = list(self.growable)
        for size, basis in self.growable:
            if size + 1 > self.t - 1:
                continue
            ext = _reduce([*basis, *gens])
            nxt.forbidden[_points(ext)] = True
            if size + 1 <= self.t - 2:
                nxt.growable.append((size + 1, ext))
        return nxt


def _pool(problem: CompletionProblem, forbidden: np.ndarray) -> tuple[list[tuple[int, ...]], np.ndarray]:
    """Candidates compatible with the base in canonical order, with their points.

    The point array has one row of three indices per candidate; a point object
    repeats its single vector.
    """
    m = problem.base.ambient
    if problem.candidate_pool is None:
        gens = list(iter_line_gens(m)) if m >= 2 else []
    else:
        objs = sorted(problem.candidate_pool)
        if any(o.m != m for o in objs):
            raise ValueError("candidate outside the ambient space")
        gens = [o.gens for o in objs if o.rank]
    pts = np.array([(g[0], g[-1], g[0] ^ g[-1] if len(g) == 2 else g[0]) for g in gens],
                   dtype=np.int64).reshape(-1, 3)
    keep = ~forbidden[pts].any(axis=1)
    idx = np.flatnonzero(keep)
    return [tuple(gens[i]) for i in idx], pts[keep]


def _complete_subtree(cache: _SpanCache, cands: list, pts: np.ndarray, need: int, mode: str,
                      repeats: bool, start: int = 0, stop: int | None = None) -> tuple[int, list, int, bool]:
    """DFS below a node. Returns (count, solutions as index tuples, nodes, finished)."""
    count = 0
    sols: list[tuple[int, ...]] = []
    nodes = 0
    stop = len(cands) if stop is None else stop
    last = [time.perf_counter()]

    def _checkpoint(done: int, total: int, found: int) -> None:
        now = time.perf_counter()
        if now - last[0] >= PROGRESS_INTERVAL:
            last[0] = now
            log.info("completion progress: %d/%d top-level branches, %d solutions so far", done, total, found)

    def dfs(cache: _SpanCache, avail: np.ndarray, need: int, chosen: list[int], lo: int, hi: int) -> bool:
        nonlocal count, nodes
        nodes += 1
        if need == 0:
            count += 1
            if mode != "count":
                sols.append(tuple(chosen))
            return mode == "exists"
        if not repeats and len(avail) - lo < need:
            return False
        for pos in range(lo, hi):
            if not chosen:
                _checkpoint(pos - start, stop - start, count)
            idx = int(avail[pos])
            chosen.append(idx)
            if need == 1:
                nxt, sub = cache, avail[:0]
            else:
                nxt = cache.add(cands[idx])
                rest = avail[pos if repeats else pos + 1:]
                sub = rest[~nxt.forbidden[pts[rest]].any(axis=1)]
            if dfs(nxt, sub, need - 1, chosen, 0, len(sub)):
                return True
            chosen.pop()
        return False

    avail = np.arange(len(cands))
    done = dfs(cache, avail, need, [], start, stop)
    return count, sols, nodes, not done


def _worker_complete(args):
    cache, cands, pts, need, mode, repeats, lo, hi = args
    return _complete_subtree(cache, cands, pts, need, mode, repeats, lo, hi)


def complete_family(problem: CompletionProblem, mode: str = "count", workers: int = 1) -> SearchReport:
    """All ways to add ``target_count - |base|`` objects keeping strength ``min_strength``.

    Added objects appear in non-decreasing canonical order, so each multiset is
    reported once. Solutions are tuples of the added :class:`CodeObject`.
    """
    _check_mode(mode)
    t0 = time.perf_counter()
    m = problem.base.ambient
    cache = _SpanCache(problem.min_strength, m)
    for obj in problem.base:
        cache = cache.add(obj.gens)
    cands, pts = _pool(problem, cache.forbidden)
    need = problem.target_count - len(problem.base)
    repeats = problem.min_strength <= 1
    log.info("completion: %d candidates after prefilter, %d objects to add", len(cands), need)

    if workers <= 1 or need == 0 or len(cands) < 2 or mode == "exists":
        count, sols, nodes, _ = _complete_subtree(cache, cands, pts, need, mode, repeats)
    else:
        # Top-level branches are split into contiguous chunks.
        chunks = np.array_split(np.arange(len(cands)), min(workers * 4, len(cands)))
        jobs = [(cache, cands, pts, need, mode, repeats, int(c[0]), int(c[-1]) + 1) for c in chunks if len(c)]
        count, sols, nodes = 0, [], 0
        with ProcessPoolExecutor(max_workers=workers) as ex:
            for c, s, nd, _ in ex.map(_worker_complete, jobs):
                count += c
                sols += s
                nodes += nd
    sols.sort()
    objs = [tuple(CodeObject(m, cands[i]) for i in sol) for sol in sols]
    if mode == "exists":
        objs = objs[:1]
        count = min(count, 1)
    return SearchReport(count, objs if mode != "count" else [], nodes, time.perf_counter() - t0,
                        exhausted=not (mode == "exists" and count))


# ===================================================== exact coverage


@dataclass(frozen=True)
class CoverageProblem:
    ambient: int
    total_lines: int
    required_multiplicity: dict = field(default_factory=dict)  # point vector -> exact count
    fixed: tuple[CodeObject, ...] = ()
    forbidden_points: frozenset = frozenset()
    allow_repeats: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "fixed", tuple(self.fixed))
        object.__setattr__(self, "forbidden_points", frozenset(self.forbidden_points))
        if any(v < 0 for v in self.required_multiplicity.values()):
            raise ValueError("multiplicities must be nonnegative")
        if any(o.rank != 2 or o.m != self.ambient for o in self.fixed):
            raise ValueError("fixed objects must be lines of the ambient space")
        if self.total_lines < len(self.fixed):
            raise ValueError("fewer total lines than fixed lines")

    def multiplicities(self) -> dict[int, int]:
        req = dict(self.required_multiplicity)
        for p in self.forbidden_points:
            if req.get(p, 0):
                raise ValueError(f"point {p} is both forbidden and required")
            req[p] = 0
        return req


def coverage_search(problem: CoverageProblem, mode: str = "collect") -> SearchReport:
    """All line multisets (fixed lines included) meeting the exact point multiplicities.

    Branching picks the open point with the fewest usable lines; branch ``j``
    takes the ``j``-th usable line through it and bans the earlier ones, so every
    multiset is produced exactly once.
    """
    _check_mode(mode)
    t0 = time.perf_counter()
    m = problem.ambient
    need = problem.multiplicities()
    for line in problem.fixed:
        for p in line.points():
            if p in need:
                need[p] -= 1
    fixed = tuple(sorted(problem.fixed))
    if any(v < 0 for v in need.values()):
        return SearchReport(0, [], 0, time.perf_counter() - t0)

    lines = [(u, v, u ^ v) for u, v in iter_line_gens(m)]
    cpts = [[p for p in pts if p in need] for pts in lines]
    through: dict[int, list[int]] = {p: [] for p in need}
    for i, pts in enumerate(cpts):
        for p in pts:
            through[p].append(i)
    free = [i for i, pts in enumerate(cpts) if not pts]
    # dead[i] counts the reasons line i is unusable: saturated points and bans.
    dead = [0] * len(lines)
    avail = {p: len(through[p]) for p in need}
    repeats = problem.allow_repeats

    def kill(i: int) -> None:
        dead[i] += 1
        if dead[i] == 1:
            for q in cpts[i]:
                avail[q] -= 1

    def revive(i: int) -> None:
        dead[i] -= 1
        if dead[i] == 0:
            for q in cpts[i]:
                avail[q] += 1

    for p, k in need.items():
        if k == 0:
            for i in through[p]:
                kill(i)

    state = {"left": problem.total_lines - len(fixed), "count": 0, "nodes": 0}
    sols: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def take(i: int) -> None:
        for p in cpts[i]:
            need[p] -= 1
            if need[p] == 0:
                for j in through[p]:
                    kill(j)
        if not repeats:
            kill(i)
        chosen.append(i)
        state["left"] -= 1

    def untake(i: int) -> None:
        state["left"] += 1
        chosen.pop()
        if not repeats:
            revive(i)
        for p in cpts[i]:
            if need[p] == 0:
                for j in through[p]:
                    revive(j)
            need[p] += 1

    def finish() -> bool:
        pool = [i for i in free if repeats or i not in chosen]
        pick = combinations_with_replacement if repeats else combinations
        for extra in pick(pool, state["left"]):
            state["count"] += 1
            if mode != "count":
                sols.append(tuple(sorted(chosen + list(extra))))
            if mode == "exists":
                return True
        return False

    def dfs() -> bool:
        state["nodes"] += 1
        best, best_n, total = None, 0, 0
        for p, k in need.items():
            if k > 0:
                total += k
                n = avail[p]
                if n == 0 or (not repeats and n < k):
                    return False
                if best is None or n < best_n:
                    best, best_n = p, n
        if best is None:
            return finish()
        if total > 3 * state["left"]:
            return False
        opts = [i for i in through[best] if dead[i] == 0]
        banned = []
        stop = False
        for i in opts:
            take(i)
            stop = dfs()
            untake(i)
            if stop:
                break
            kill(i)
            banned.append(i)
        for i in banned:
            revive(i)
        return stop

    dfs()
    count = state["count"]
    if mode == "count":
        out = []
    else:
        index = {(u, v): i for i, (u, v, _) in enumerate(lines)}
        fixed_idx = tuple(index[o.gens] for o in fixed)
        objs = [CodeObject(m, pts[:2]) for pts in lines]
        out = [tuple(objs[i] for i in sorted(fixed_idx + sol)) for sol in sorted(sols)]
    if mode == "exists":
        out = out[:1]
        count = min(count, 1)
    return SearchReport(count, out, state["nodes"], time.perf_counter() - t0,
                        exhausted=not (mode == "exists" and count))


def verify_coverage(problem: CoverageProblem, solution: Sequence[CodeObject]) -> bool:
    """Recount point-line incidences of a solution directly."""
    if len(solution) != problem.total_lines:
        return False
    if any(o.rank != 2 for o in solution):
        return False
    sol = list(solution)
    for f in problem.fixed:
        if f not in sol:
            return False
        sol.remove(f)
    for p, k in problem.multiplicities().items():
        hits = sum(1 for o in solution if p in o.points())
        if hits != k:
            return False
    return True


# ========================================= systematic GF(4) completion


@dataclass(frozen=True)
class F4CompletionProblem:
    fixed_rows: tuple[F4Vector, ...]
    total_rows: int = 6
    min_distance: int = 6
    scale_rows: bool = True  # take each new row only up to a nonzero scalar
    width: int | None = None

    def __post_init__(self) -> None:
        rows = tuple(F4Vector.from_string(r) if isinstance(r, str) else r for r in self.fixed_rows)
        object.__setattr__(self, "fixed_rows", rows)
        w = self.width if self.width is not None else (len(rows[0]) if rows else self.total_rows)
        object.__setattr__(self, "width", w)
        if any(len(r) != w for r in rows):
            raise ValueError("fixed rows have inconsistent length")
        if len(rows) > self.total_rows:
            raise ValueError("more fixed rows than total rows")


def _f4_int(v: F4Vector) -> int:
    return f4_expand(v).bits


def row_representative(v: F4Vector) -> F4Vector:
    """Scalar multiple of ``v`` in which 1 is a least frequent nonzero symbol.

    Ties are broken by the first entry that carries one of the rarest symbols.
    """
    if v.weight() == 0:
        return v
    freq = {e: sum(1 for x in v if x == e) for e in (F4Elem.ONE, F4Elem.W, F4Elem.WBAR)}
    low = min(f for f in freq.values() if f)
    rare = [e for e, f in freq.items() if f == low]
    first = next(x for x in v if x in rare)
    return v.scale(int(_inverse(first)))


def _inverse(e: F4Elem) -> F4Elem:
    return {F4Elem.ONE: F4Elem.ONE, F4Elem.W: F4Elem.WBAR, F4Elem.WBAR: F4Elem.W}[e]


def partial_code_distance(p_rows: Sequence[F4Vector], total_rows: int) -> int | None:
    """Minimum distance of the code generated by ``(e_i | v_i)`` for the given rows."""
    best = None
    for coeffs in product(F4Elem, repeat=len(p_rows)):
        if not any(coeffs):
            continue
        acc = 0
        for c, r in zip(coeffs, p_rows):
            if c:
                acc ^= _f4_int(r.scale(c))
        w = sum(1 for c in coeffs if c) + pair_weight(acc)
        best = w if best is None else min(best, w)
    return best


def f4_systematic_completion(problem: F4CompletionProblem, mode: str = "collect") -> SearchReport:
    """All ways to fill the remaining rows of ``P`` keeping ``d(I | P) >= min_distance``.

    A row ``w`` may follow rows whose code words are ``(x_I | x_P)`` iff
    ``wt(x_I) + 1 + wt(x_P + w) >= d`` for every such word.
    """
    _check_mode(mode)
    t0 = time.perf_counter()
    width, d = problem.width, problem.min_distance
    fixed = list(problem.fixed_rows)
    got = partial_code_distance(fixed, problem.total_rows) if fixed else None
    if got is not None and got < d:
        # The root assignment itself fails, so nothing below it survives.
        return SearchReport(0, [], 1, time.perf_counter() - t0,
                            note=f"fixed rows generate a code of distance {got} < {d}")

    # Candidates in lexicographic order of their symbol strings (0 < 1 < w < W).
    cand_vecs = [F4Vector(tuple(F4Elem(e) for e in t)) for t in product(range(4), repeat=width)]
    if problem.scale_rows:
        cand_vecs = [v for v in cand_vecs if v.weight() and row_representative(v) == v]
    cand = np.array([_f4_int(v) for v in cand_vecs], dtype=np.int64)
    weight_table = np.array([pair_weight(x) for x in range(1 << (2 * width))], dtype=np.int64)

    # Words of the current partial code: (weight of identity part, P part).
    words_w = np.array([0], dtype=np.int64)
    words_p = np.array([0], dtype=np.int64)
    for r in fixed:
        words_w, words_p = _extend_words(words_w, words_p, r)

    count = 0
    nodes = 0
    sols: list[tuple[int, ...]] = []
    chosen: list[int] = []

    def dfs(words_w: np.ndarray, words_p: np.ndarray, row: int) -> bool:
        nonlocal count, nodes
        nodes += 1
        if row == problem.total_rows:
            count += 1
            if mode != "count":
                sols.append(tuple(chosen))
            return mode == "exists"
        dist = weight_table[cand[:, None] ^ words_p[None, :]]
        good = np.all(dist + words_w[None, :] + 1 >= d, axis=1)
        for j in np.flatnonzero(good):
            chosen.append(int(j))
            nw, npp = _extend_words(words_w, words_p, cand_vecs[j])
            if dfs(nw, npp, row + 1):
                return True
            chosen.pop()
        return False

    dfs(words_w, words_p, len(fixed))
    out = [tuple(cand_vecs[j] for j in sol) for sol in sols]
    return SearchReport(count, out if mode != "count" else [], nodes, time.perf_counter() - t0,
                        exhausted=not (mode == "exists" and count))


def _extend_words(words_w: np.ndarray, words_p: np.ndarray, row: F4Vector) -> tuple[np.ndarray, np.ndarray]:
    """Add ``c (e_j | row)`` for c in GF(4) to every word of the partial code."""
    multiples = [0] + [_f4_int(row.scale(c)) for c in (F4Elem.ONE, F4Elem.W, F4Elem.WBAR)]
    ws = [words_w] + [words_w + 1] * 3
    ps = [words_p ^ np.int64(mv) for mv in multiples]
    return np.concatenate(ws), np.concatenate(ps)


# ======================================================= text formats
#
# A problem file starts with its kind, followed by "key value" lines and then
# any object or row blocks:
#
#   completion                 coverage                  f4completion
#   strength 5                 ambient 5                 rows 6
#   target 12                  lines 15                  distance 6
#   <family block>             repeats yes               scale yes
#   [pool <count>              fixed <count>             fixed <count>
#    <objects>]                <objects>                 <rows>
#                              need <point> <k>  ...
#                              forbid <point>    ...

Problem = CompletionProblem | CoverageProblem | F4CompletionProblem


def format_problem(p: Problem) -> str:
    if isinstance(p, CompletionProblem):
        out = ["completion", f"strength {p.min_strength}", f"target {p.target_count}"]
        out += format_family(p.base).splitlines()
        if p.candidate_pool is not None:
            out.append(f"pool {len(p.candidate_pool)}")
            out += [str(o) for o in p.candidate_pool]
    elif isinstance(p, CoverageProblem):
        m = p.ambient
        out = ["coverage", f"ambient {m}", f"lines {p.total_lines}",
               f"repeats {'yes' if p.allow_repeats else 'no'}", f"fixed {len(p.fixed)}"]
        out += [str(o) for o in p.fixed]
        for x in sorted(p.required_multiplicity, key=lambda x: lexkey(x, m)):
            out.append(f"need {bits_to_string(x, m)} {p.required_multiplicity[x]}")
        for x in sorted(p.forbidden_points, key=lambda x: lexkey(x, m)):
            out.append(f"forbid {bits_to_string(x, m)}")
    elif isinstance(p, F4CompletionProblem):
        out = ["f4completion", f"rows {p.total_rows}", f"distance {p.min_distance}",
               f"scale {'yes' if p.scale_rows else 'no'}", f"width {p.width}", f"fixed {len(p.fixed_rows)}"]
        out += [str(r) for r in p.fixed_rows]
    else:
        raise TypeError(f"not a search problem: {type(p).__name__}")
    return "\n".join(out) + "\n"


def _take_int(lines: list[str], pos: int, key: str) -> int:
    if pos >= len(lines):
        raise ValueError(f"missing '{key}' line")
    parts = lines[pos].split()
    if len(parts) != 2 or parts[0] != key or not parts[1].isdigit():
        raise ValueError(f"expected '{key} <int>', got {lines[pos]!r}")
    return int(parts[1])


def _take_flag(lines: list[str], pos: int, key: str) -> bool:
    parts = lines[pos].split() if pos < len(lines) else []
    if len(parts) != 2 or parts[0] != key or parts[1] not in ("yes", "no"):
        raise ValueError(f"expected '{key} yes|no' at line {pos + 1}")
    return parts[1] == "yes"


def parse_problem(text: str) -> Problem:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ValueError("empty problem description")
    kind = lines[0]
    if kind == "completion":
        t = _take_int(lines, 1, "strength")
        target = _take_int(lines, 2, "target")
        base, used = parse_family_lines(lines[3:])
        pos = 3 + used
        pool = None
        if pos < len(lines):
            k = _take_int(lines, pos, "pool")
            if len(lines) != pos + 1 + k:
                raise ValueError(f"pool announces {k} objects, found {len(lines) - pos - 1}")
            pool = tuple(parse_object(ln, base.ambient) for ln in lines[pos + 1:])
        return CompletionProblem(base, target, t, pool)
    if kind == "coverage":
        m = _take_int(lines, 1, "ambient")
        total = _take_int(lines, 2, "lines")
        repeats = _take_flag(lines, 3, "repeats")
        k = _take_int(lines, 4, "fixed")
        fixed = tuple(parse_object(ln, m) for ln in lines[5:5 + k])
        need: dict[int, int] = {}
        forbid: set[int] = set()
        for ln in lines[5 + k:]:
            parts = ln.split()
            if parts[0] == "need" and len(parts) == 3 and len(parts[1]) == m and parts[2].isdigit():
                need[reverse_string_bits(parts[1])] = int(parts[2])
            elif parts[0] == "forbid" and len(parts) == 2 and len(parts[1]) == m:
                forbid.add(reverse_string_bits(parts[1]))
            else:
                raise ValueError(f"bad coverage constraint {ln!r}")
        return CoverageProblem(m, total, need, fixed, frozenset(forbid), repeats)
    if kind == "f4completion":
        total = _take_int(lines, 1, "rows")
        d = _take_int(lines, 2, "distance")
        scale = _take_flag(lines, 3, "scale")
        width = _take_int(lines, 4, "width")
        k = _take_int(lines, 5, "fixed")
        if len(lines) != 6 + k:
            raise ValueError(f"problem announces {k} fixed rows, found {len(lines) - 6}")
        rows = tuple(F4Vector.from_string(ln) for ln in lines[6:])
        return F4CompletionProblem(rows, total, d, scale, width)
    raise ValueError(f"unknown problem kind {kind!r}")


def run_problem(p: Problem, mode: str = "count", workers: int = 1) -> SearchReport:
    if isinstance(p, CompletionProblem):
        return complete_family(p, mode, workers)
    if isinstance(p, CoverageProblem):
        return coverage_search(p, mode)
    if isinstance(p, F4CompletionProblem):
        return f4_systematic_completion(p, mode)
    raise TypeError(f"not a search problem: {type(p).__name__}")


def format_report(r: SearchReport) -> str:
    out = [f"solutions {r.count}", f"nodes {r.nodes_visited}", f"elapsed {r.elapsed:.3f}s",
           f"exhausted {'yes' if r.exhausted else 'no'}"]
    if r.note:
        out.append(f"note {r.note}")
    for i, sol in enumerate(r.solutions):
        out.append(f"solution {i}")
        out += [f"  {x}" for x in sol]
    return "\n".join(out) + "\n"
