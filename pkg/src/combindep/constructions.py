"""Explicit subshifts: a tame nonnull Toeplitz system and a WAP nonnull example.

Toeplitz data
-------------
Level ``j`` stores a period ``n_j`` (with ``n_j | n_{j+1}``) and ``j*2^j + 1``
distinct residues ``y_{j,0}, ..., y_{j, j*2^j}`` mod ``n_j``.  All level
``j+1`` residues reduce to ``y_{j,0}`` mod ``n_j``.  The value residues
``y_{j,1..}`` come in ``2^j`` blocks of ``j``, each block a translate of the
previous one, and the binary patterns read off the blocks through ``f`` run
over all of ``{0,1}^j``.  The sequence is

    x(s) = f(y_{j,k})  if s = y_{j,k} mod n_j for some level j and k >= 1,
    x(s) = 0           otherwise.

Only finitely many levels are stored.  A position ``s = y_{J,0} mod n_J`` at
the deepest stored level ``J`` is *uncertain*: deeper levels decide it.

The builder keeps the representatives ``y_{j,0}`` coherent by taking
``y_{j+1,0} = y_{j,0} + n_j`` with ``y_{j,0} < n_j / 2``.  Continued forever
this rules out an integer congruent to every ``y_{j,0}``, so the infinite
extension is a genuine Toeplitz sequence.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import BudgetError, HorizonError
from .independence import IndependenceProblem, is_independence_set
from .symbolic import ClopenSet, Subshift

# -- Toeplitz data ------------------------------------------------------------


@dataclass(frozen=True)
class ToeplitzSpec:
    periods: tuple
    residues: tuple
    translations: tuple
    values: tuple

    def __post_init__(self):
        for name in ("periods", "residues", "translations", "values"):
            v = getattr(self, name)
            if name != "periods":
                v = tuple(tuple(int(a) for a in row) for row in v)
            else:
                v = tuple(int(a) for a in v)
            object.__setattr__(self, name, v)

    @property
    def levels(self) -> int:
        return len(self.periods)

    def period(self, j: int) -> int:
        return self.periods[j - 1]

    def y(self, j: int, k: int) -> int:
        return self.residues[j - 1][k]

    def f(self, j: int, k: int) -> int:
        """``f(y_{j,k})`` for ``k >= 1``."""
        return self.values[j - 1][k - 1]

    def block(self, j: int, t: int) -> tuple:
        """``Y_{j,t}`` in index order, ``1 <= t <= 2^j``."""
        return tuple(self.residues[j - 1][(t - 1) * j + 1: t * j + 1])

    def representative(self, j: int, i: int) -> int:
        """An integer congruent to ``y_{j,i}`` mod ``n_j``."""
        return self.y(j, i)

    def truncate(self, levels: int) -> "ToeplitzSpec":
        return ToeplitzSpec(self.periods[:levels], self.residues[:levels], self.translations[:levels], self.values[:levels])

    def _lookup(self):
        memo = self.__dict__.get("_index")
        if memo is None:
            memo = [{r: k for k, r in enumerate(row)} for row in self.residues]
            object.__setattr__(self, "_index", memo)
        return memo


class _Residues:
    """Incremental state of one level's search, in coordinates ``u`` mod ``M``.

    Tracks ``D = {u_k - u_0 : k >= 1}`` and ``E = {u_b - u_a : a >= 1, b >= 0}``
    as counters; the difference condition asks ``D`` and ``E`` to be disjoint.
    """

    def __init__(self, modulus, u0, allowed=None):
        self.m = modulus
        self.u0 = u0
        self.elems = [u0]
        self.used = {u0}
        self.d = [0] * modulus
        self.e = [0] * modulus
        self.allowed = allowed

    def add(self, v):
        m = self.m
        if v in self.used or (self.allowed is not None and not self.allowed(v)):
            return None
        d = (v - self.u0) % m
        new = [0]
        for idx, w in enumerate(self.elems):
            if idx:
                new.append((v - w) % m)
            new.append((w - v) % m)
        if self.e[d] or d in new or any(self.d[x] for x in new):
            return None
        self.d[d] += 1
        for x in new:
            self.e[x] += 1
        self.used.add(v)
        self.elems.append(v)
        return d, new

    def remove(self, rec):
        d, new = rec
        self.d[d] -= 1
        for x in new:
            self.e[x] -= 1
        self.used.discard(self.elems.pop())

    def add_all(self, vs):
        recs = []
        for v in vs:
            r = self.add(v)
            if r is None:
                for rr in reversed(recs):
                    self.remove(rr)
                return None
            recs.append(r)
        return recs

    def remove_all(self, recs):
        for r in reversed(recs):
            self.remove(r)


class _OutOfNodes(Exception):
    pass


def _search_level(j, modulus, u0, max_nodes, allowed=None):
    """Canonical DFS: first block smallest-first, then smallest translations."""
    state = _Residues(modulus, u0, allowed)
    blocks = 2**j
    nodes = 0
    first, shifts = [], []

    def tick():
        nonlocal nodes
        nodes += 1
        if nodes > max_nodes:
            raise _OutOfNodes

    def translate(t, cur):
        tick()
        if t == blocks:
            return True
        for z in range(1, modulus):
            nxt = [(v + z) % modulus for v in cur]
            recs = state.add_all(nxt)
            if recs is None:
                continue
            shifts.append(z)
            if translate(t + 1, nxt):
                return True
            shifts.pop()
            state.remove_all(recs)
        return False

    def choose(start):
        tick()
        if len(first) == j:
            return translate(1, list(first))
        for v in range(start, modulus):
            rec = state.add(v)
            if rec is None:
                continue
            first.append(v)
            if choose(v + 1):
                return True
            first.pop()
            state.remove(rec)
        return False

    try:
        if choose(0):
            return state.elems, shifts
    except _OutOfNodes:
        pass
    return None


def _pattern(j, t):
    """Block ``t`` carries the binary digits of ``t - 1``, least significant first."""
    return [((t - 1) >> p) & 1 for p in range(j)]


DEFAULT_BUILD_BUDGET = 2000


def build_toeplitz(levels: int, budget: int = DEFAULT_BUILD_BUDGET, max_multiplier: int | None = None) -> ToeplitzSpec:
    """Search residue data for ``levels`` levels.

    For each level the multiplier ``M = n_j / n_{j-1}`` (``n_1`` itself at
    level 1) runs upward from ``2 N + 1``, ``N = j 2^j``, which the difference
    condition forces.  Each ``M`` gets a canonical DFS limited to ``budget``
    nodes.  Once ``3 | M`` and ``M >= 3N`` the DFS restricted to one residue
    class mod 3 always succeeds: with ``u_0 = 1`` and every other ``u`` a
    multiple of 3, all of ``D`` is ``2 mod 3`` and ``E`` avoids it.
    """
    if levels < 1:
        raise ValueError("levels must be at least 1")
    periods, residues, translations, values = [], [], [], []
    base, step = 0, 1
    for j in range(1, levels + 1):
        n_values = j * 2**j
        u0 = 0 if j == 1 else 1
        m = 2 * n_values + 1
        found = None
        while found is None:
            if max_multiplier is not None and m > max_multiplier:
                raise BudgetError(f"level {j}: no residue system with multiplier <= {max_multiplier}")
            found = _search_level(j, m, u0, budget)
            if found is None and m % 3 == 0 and m >= 3 * n_values:
                found = _search_level(j, m, u0, budget, allowed=lambda v: v % 3 == (u0 - 1) % 3)
            if found is None:
                m += 1
        elems, shifts = found
        n_j = step * m
        periods.append(n_j)
        residues.append(tuple((base + step * u) % n_j for u in elems))
        translations.append(tuple(step * z % n_j for z in shifts))
        values.append(tuple(v for t in range(1, 2**j + 1) for v in _pattern(j, t)))
        base, step = residues[-1][0], n_j
    return ToeplitzSpec(tuple(periods), tuple(residues), tuple(translations), tuple(values))


# -- verification ---------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    check: str
    level: int
    detail: str


@dataclass(frozen=True)
class ToeplitzReport:
    violations: tuple
    checks: tuple

    @property
    def ok(self) -> bool:
        return not self.violations

    def failed(self, check: str) -> list:
        return [v for v in self.violations if v.check == check]


CHECKS = ("periods", "count", "distinct", "(i)", "(ii)", "(iv)", "f-enumeration", "(iii)-surrogate")


def verify_toeplitz(spec: ToeplitzSpec) -> ToeplitzReport:
    """Exhaustively check the stored levels; never raises on bad data."""
    bad = []

    def flag(check, level, detail):
        bad.append(Violation(check, level, detail))

    J = spec.levels
    if not (len(spec.residues) == len(spec.translations) == len(spec.values) == J):
        flag("count", 0, "levels disagree in length")
        return ToeplitzReport(tuple(bad), CHECKS)
    for j in range(1, J + 1):
        n = spec.period(j)
        ys = spec.residues[j - 1]
        N = j * 2**j
        if n < 1 or (j > 1 and (n <= spec.period(j - 1) or n % spec.period(j - 1))):
            flag("periods", j, f"n_{j} = {n} is not a proper multiple of the previous period")
        if len(ys) != N + 1:
            flag("count", j, f"{len(ys)} residues, expected {N + 1}")
            continue
        if len(spec.values[j - 1]) != N or len(spec.translations[j - 1]) != 2**j - 1:
            flag("count", j, "value or translation table has the wrong length")
            continue
        if len({y % n for y in ys}) != len(ys):
            flag("distinct", j, "residues repeat")
        if j > 1:
            prev = spec.period(j - 1)
            y0 = spec.y(j - 1, 0)
            off = [k for k, y in enumerate(ys) if (y - y0) % prev]
            if off:
                flag("(i)", j, f"y_{j},k not congruent to y_{j - 1},0 mod n_{j - 1} for k in {off}")
        for t in range(1, 2**j):
            z = spec.translations[j - 1][t - 1]
            here = {(y + z) % n for y in spec.block(j, t)}
            if here != {y % n for y in spec.block(j, t + 1)}:
                flag("(ii)", j, f"Y_{j},{t + 1} is not Y_{j},{t} + {z}")
        dset = {(ys[k] - ys[0]) % n for k in range(1, N + 1)}
        eset = {(ys[b] - ys[a]) % n for a in range(1, N + 1) for b in range(0, N + 1)}
        clash = sorted(dset & eset)
        if clash:
            flag("(iv)", j, f"differences {clash[:5]} occur on both sides")
        vals = spec.values[j - 1]
        if any(v not in (0, 1) for v in vals):
            flag("f-enumeration", j, "values outside {0, 1}")
        seen = {tuple(vals[(t - 1) * j: t * j]) for t in range(1, 2**j + 1)}
        if len(seen) != 2**j:
            flag("f-enumeration", j, f"blocks give {len(seen)} of {2**j} patterns")
        if not 2 * spec.y(j, 0) < n:
            flag("(iii)-surrogate", j, f"y_{j},0 = {spec.y(j, 0)} not below n_{j}/2")
        if j > 1 and spec.y(j, 0) != spec.y(j - 1, 0) + spec.period(j - 1):
            flag("(iii)-surrogate", j, f"y_{j},0 != y_{j - 1},0 + n_{j - 1}")
    return ToeplitzReport(tuple(bad), CHECKS)


# -- the sequence ----------------------------------------------------------------


def toeplitz_point(spec: ToeplitzSpec, s: int, depth: int | None = None) -> tuple:
    """``(value, certain, (j, k) or None)`` for position ``s`` using ``depth`` levels.

    The definition is applied literally, level by level, so data violating
    (i) shows up in the values instead of being masked.  Under (i) the first
    matching level is the only one.
    """
    index = spec._lookup()
    depth = spec.levels if depth is None else depth
    for j in range(1, depth + 1):
        k = index[j - 1].get(s % spec.period(j))
        if k:
            return spec.f(j, k), True, (j, k)
    if s % spec.period(depth) == spec.y(depth, 0) % spec.period(depth):
        return 0, False, None
    return 0, True, None


@dataclass(frozen=True)
class ToeplitzWindow:
    start: int
    values: tuple
    certain: tuple

    @property
    def digits(self) -> str:
        return "".join(str(v) for v in self.values)

    @property
    def mask(self) -> str:
        """``1`` where the value is final, ``?`` where deeper levels decide."""
        return "".join("1" if c else "?" for c in self.certain)


def toeplitz_window(spec: ToeplitzSpec, a: int, b: int) -> ToeplitzWindow:
    if b <= a:
        raise ValueError("empty window")
    pts = [toeplitz_point(spec, s) for s in range(a, b)]
    return ToeplitzWindow(a, tuple(p[0] for p in pts), tuple(p[1] for p in pts))


def toeplitz_jk(spec: ToeplitzSpec, s: int):
    """``(J(s), K(s))`` when ``x(s) = 1`` is certain, else ``None``."""
    value, certain, jk = toeplitz_point(spec, s)
    return jk if certain and value == 1 else None


class ToeplitzShift(Subshift):
    """The subshift generated by the sequence, exact for windows up to ``n_level``.

    A window of length at most ``n_m`` meets at most one uncertain position of
    the level-``m`` truncation, and along that residue class the full sequence
    takes both values, so the uncertain symbol is free.  Each query uses the
    shallowest level whose period covers its span.
    """

    alphabet = 2

    def __init__(self, spec: ToeplitzSpec, level: int | None = None):
        self.spec = spec
        self.level = spec.levels if level is None else level
        if not 1 <= self.level <= spec.levels:
            raise ValueError(f"truncation level {self.level} outside 1..{spec.levels}")
        self.horizon = spec.period(self.level)
        self._arrays = {}

    def key(self):
        return (self.spec, self.level)

    def __repr__(self):
        return f"ToeplitzShift(periods={self.spec.periods}, level={self.level})"

    def period_arrays(self, m: int):
        if m not in self._arrays:
            n = self.spec.period(m)
            pts = [toeplitz_point(self.spec, s, depth=m) for s in range(n)]
            vals = np.array([p[0] for p in pts], dtype=np.int8)
            free = np.array([not p[1] for p in pts], dtype=bool)
            self._arrays[m] = (vals, free)
        return self._arrays[m]

    def _realizations(self, rel):
        span = rel[-1] + 1
        m = next(m for m in range(1, self.level + 1) if self.spec.period(m) >= span)
        vals, free = self.period_arrays(m)
        n = len(vals)
        idx = (np.arange(n)[:, None] + np.asarray(rel)[None, :]) % n
        rows = vals[idx]
        wild = free[idx]
        has = wild.any(axis=1)
        fixed = rows[~has]
        loose = rows[has]
        col = wild[has].argmax(axis=1)
        zero, one = loose.copy(), loose.copy()
        zero[np.arange(len(col)), col] = 0
        one[np.arange(len(col)), col] = 1
        allrows = np.unique(np.concatenate([fixed, zero, one]), axis=0)
        return {tuple(int(v) for v in r) for r in allrows}


def toeplitz_problem(spec: ToeplitzSpec, level: int | None = None) -> IndependenceProblem:
    """``(A, B) = ({x(0) = 1}, {x(0) = 0})`` over the Toeplitz subshift."""
    shift = ToeplitzShift(spec, level)
    return IndependenceProblem(shift, (ClopenSet.symbol_at(0, 1, 2), ClopenSet.symbol_at(0, 0, 2)))


# -- lemma checks -----------------------------------------------------------------


@dataclass
class LemmaResult:
    name: str
    instances: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.counterexamples


@dataclass(frozen=True)
class LemmaReport:
    window: tuple
    results: tuple

    @property
    def ok(self):
        return all(r.ok for r in self.results)

    def by_name(self, name):
        return next(r for r in self.results if r.name == name)


def check_toeplitz_lemmas(spec: ToeplitzSpec, window: tuple, *, max_lemma3_level: int = 2) -> LemmaReport:
    """Enumerate every hypothesis instance inside ``[a, b)`` and test the conclusions.

    Lemma 1: ``x(s1) = x(s2) = 1``, ``J(s1) < J(s2)``, ``x(s1+a) = 0``,
    ``x(s2+a) = 1`` imply ``J(s2+a) = J(s1)``; all four positions in the window.

    Lemma 2: an independence set ``{s1, s2, s3}`` for ``(A, B)`` of 1-positions
    has constant ``J``.

    Lemma 3 (for ``1 <= j <= max_lemma3_level``): for disjoint nonempty
    ``H, H'`` with ``H u H'`` independent and ``|H| >= j (2^j + 1)`` there are
    ``H1 in H`` with ``|H1| <= j`` and a shift ``a`` such that every
    ``s in H' u (H \\ H1)`` has ``x(s+a) = 1`` and ``J(s+a) > j``.
    """
    a, b = window
    if b <= a:
        raise ValueError("empty window")
    shift = ToeplitzShift(spec)
    if b - a > shift.horizon:
        raise HorizonError(b - a, shift.horizon, "lemma window")
    prob = IndependenceProblem(shift, (ClopenSet.symbol_at(0, 1, 2), ClopenSet.symbol_at(0, 0, 2)))
    pts = {s: toeplitz_point(spec, s) for s in range(a, b)}
    ones = [s for s, p in pts.items() if p[1] and p[0] == 1]
    J = {s: pts[s][2][0] for s in ones}

    lem1 = LemmaResult("lemma1")
    for s1, s2 in itertools.permutations(ones, 2):
        if J[s1] >= J[s2]:
            continue
        for d in range(a - min(s1, s2), b - max(s1, s2)):
            p1, p2 = pts[s1 + d], pts[s2 + d]
            if not (p1[1] and p2[1]) or p1[0] != 0 or p2[0] != 1:
                continue
            lem1.instances += 1
            if p2[2][0] != J[s1]:
                lem1.counterexamples.append({"s1": s1, "s2": s2, "a": d, "J(s2+a)": p2[2][0], "J(s1)": J[s1]})

    lem2 = LemmaResult("lemma2")
    pair_ok = {}
    for s1, s2 in itertools.combinations(ones, 2):
        pair_ok[s1, s2] = is_independence_set(prob, (s1, s2))
    for s1, s2, s3 in itertools.combinations(ones, 3):
        if not (pair_ok[s1, s2] and pair_ok[s1, s3] and pair_ok[s2, s3]):
            continue
        if not is_independence_set(prob, (s1, s2, s3)):
            continue
        lem2.instances += 1
        if not J[s1] == J[s2] == J[s3]:
            lem2.counterexamples.append({"set": [s1, s2, s3], "J": [J[s1], J[s2], J[s3]]})

    results = [lem1, lem2]
    lem3 = LemmaResult("lemma3")
    smallest = 1 * (2 + 1) + 1
    big = _independence_sets_at_least(prob, range(a, b), smallest)
    for j in range(1, max_lemma3_level + 1):
        need = j * (2**j + 1)
        for g in big:
            if len(g) < need + 1:
                continue
            for r in range(1, len(g) - need + 1):
                for hp in itertools.combinations(g, r):
                    h = [s for s in g if s not in hp]
                    lem3.instances += 1
                    if not _lemma3_conclusion(spec, shift, h, list(hp), j):
                        lem3.counterexamples.append({"H": h, "H'": list(hp), "j": j})
    results.append(lem3)
    return LemmaReport((a, b), tuple(results))


def _independence_sets_at_least(prob, candidates, size):
    """All independence sets in ``candidates`` with at least ``size`` elements."""
    cands = sorted(candidates)
    out = []

    def dfs(cur, start):
        if len(cur) >= size:
            out.append(cur)
        for i in range(start, len(cands)):
            nxt = cur + (cands[i],)
            if is_independence_set(prob, nxt):
                dfs(nxt, i + 1)

    dfs((), 0)
    return out


def _lemma3_conclusion(spec, shift, h, hp, j):
    n = spec.period(spec.levels)
    for h1_size in range(0, j + 1):
        for h1 in itertools.combinations(h, h1_size):
            rest = hp + [s for s in h if s not in h1]
            for d in range(n):
                good = True
                for s in rest:
                    value, certain, jk = toeplitz_point(spec, s + d)
                    # uncertain positions reach every deeper level along their class
                    if certain and not (value == 1 and jk[0] > j):
                        good = False
                        break
                if good:
                    return True
    return False


# -- the WAP example ------------------------------------------------------------


@dataclass(frozen=True)
class WapSpec:
    """Support positions ``m_1 < m_2 < ...`` grouped into blocks of sizes ``k_1, k_2, ...``.

    ``positions`` covers one block beyond ``levels`` so the oracle can bound
    its horizon.
    """

    positions: tuple
    block_sizes: tuple
    levels: int

    @property
    def partial_sums(self) -> tuple:
        return tuple(itertools.accumulate(self.block_sizes))

    def block(self, j: int) -> tuple:
        """``{m_k : S_{j-1} < k <= S_j}``."""
        sums = (0,) + self.partial_sums
        return tuple(self.positions[sums[j - 1]: sums[j]])


def gap_condition(positions) -> bool:
    """``m_j - m_i > m_i - m_k`` for all ``j > i > k``."""
    m = list(positions)
    return all(m[j] - m[i] > m[i] - m[k] for k, i, j in itertools.combinations(range(len(m)), 3))


class WapShift(Subshift):
    """Orbit closure of all configurations supported inside one block.

    Windows shorter than the smallest gap inside block ``levels + 1`` see at
    most one 1 from any deeper block, so they are answered exactly from the
    first ``levels`` blocks plus the points with at most one 1.
    """

    alphabet = 2

    def __init__(self, spec: WapSpec):
        self.spec = spec
        nxt = spec.block(spec.levels + 1)
        if len(nxt) < 2:
            raise ValueError("block levels+1 needs two positions to bound the horizon")
        self.horizon = nxt[1] - nxt[0]

    def key(self):
        return (self.spec,)

    def __repr__(self):
        return f"WapShift(levels={self.spec.levels})"

    def _realizations(self, rel):
        width = len(rel)
        out = {(0,) * width}
        for i in range(width):
            out.add(tuple(1 if c == i else 0 for c in range(width)))
        for j in range(1, self.spec.levels + 1):
            blk = self.spec.block(j)
            for d in range(blk[0] - rel[-1], blk[-1] + 1):
                hits = [i for i, r in enumerate(rel) if r + d in blk]
                for size in range(2, len(hits) + 1):
                    for chosen in itertools.combinations(hits, size):
                        out.add(tuple(1 if i in chosen else 0 for i in range(width)))
        return out


def build_wap(levels: int) -> tuple:
    """Canonical instance ``m_k = 2^k``, ``k_n = n``; returns ``(WapSpec, WapShift)``."""
    if levels < 1:
        raise ValueError("levels must be at least 1")
    sizes = tuple(range(1, levels + 2))
    positions = tuple(2**k for k in range(1, sum(sizes) + 1))
    spec = WapSpec(positions, sizes, levels)
    return spec, WapShift(spec)


def wap_problem(spec: WapSpec) -> IndependenceProblem:
    return IndependenceProblem(WapShift(spec), (ClopenSet.symbol_at(0, 1, 2), ClopenSet.symbol_at(0, 0, 2)))
