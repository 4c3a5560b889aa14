"""Subshifts over Z, cylinders and clopen sets, and exact feasibility queries.

Coordinates follow the convention ``(T^s x)(t) = x(t + s)``, so the preimage
of the cylinder ``[w @ a]`` under ``T^s`` is ``[w @ (a + s)]``.

Words are tuples of small non-negative ints.  On the wire they are digit
strings using ``0-9`` then ``a-z``.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import HorizonError

DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"

Word = tuple


def parse_word(text: str) -> Word:
    """Decode a digit string such as ``"10a"`` into ``(1, 0, 10)``."""
    try:
        return tuple(DIGITS.index(ch) for ch in text.lower())
    except ValueError:
        raise ValueError(f"invalid symbol in word {text!r}") from None


def format_word(word: Iterable[int]) -> str:
    return "".join(DIGITS[s] for s in word)


def _as_word(word) -> Word:
    if isinstance(word, str):
        return parse_word(word)
    return tuple(int(s) for s in word)


@dataclass(frozen=True)
class Cylinder:
    """``{x : x(offset + i) = word[i]}``; the empty word is the whole space."""

    offset: int
    word: Word

    def __post_init__(self):
        object.__setattr__(self, "word", _as_word(self.word))

    @property
    def positions(self):
        return range(self.offset, self.offset + len(self.word))


@dataclass(frozen=True)
class ClopenSet:
    """A finite union of cylinders in normal form.

    The set is stored as the tuple of coordinates it depends on (``support``,
    strictly increasing) together with the patterns on those coordinates that
    belong to it.  The support is minimal, so two clopen sets over the same
    alphabet are equal exactly when their normal forms are.
    """

    alphabet: int
    support: tuple
    patterns: frozenset

    @classmethod
    def make(cls, alphabet: int, support: Sequence[int], patterns: Iterable[Sequence[int]]) -> "ClopenSet":
        support = tuple(support)
        if list(support) != sorted(set(support)):
            raise ValueError("support must be strictly increasing")
        pats = set()
        for p in patterns:
            p = tuple(p)
            if len(p) != len(support):
                raise ValueError(f"pattern {p} does not match support of size {len(support)}")
            if any(not 0 <= s < alphabet for s in p):
                raise ValueError(f"pattern {p} has symbols outside alphabet {alphabet}")
            pats.add(p)
        return cls._minimized(alphabet, support, pats)

    @classmethod
    def _minimized(cls, alphabet, support, pats):
        support = list(support)
        i = 0
        while i < len(support):
            groups = defaultdict(set)
            for p in pats:
                groups[p[:i] + p[i + 1:]].add(p[i])
            if all(len(v) == alphabet for v in groups.values()):
                pats = set(groups)
                del support[i]
            else:
                i += 1
        return cls(alphabet, tuple(support), frozenset(pats))

    @classmethod
    def from_cylinders(cls, cylinders: Iterable[Cylinder], alphabet: int) -> "ClopenSet":
        cylinders = [c if isinstance(c, Cylinder) else Cylinder(*c) for c in cylinders]
        support = sorted({p for c in cylinders for p in c.positions})
        index = {p: i for i, p in enumerate(support)}
        pats = set()
        for c in cylinders:
            if any(not 0 <= s < alphabet for s in c.word):
                raise ValueError(f"cylinder word {c.word} outside alphabet {alphabet}")
            fixed = {index[c.offset + i]: s for i, s in enumerate(c.word)}
            free = [i for i in range(len(support)) if i not in fixed]
            for values in itertools.product(range(alphabet), repeat=len(free)):
                p = [0] * len(support)
                for i, s in fixed.items():
                    p[i] = s
                for i, s in zip(free, values):
                    p[i] = s
                pats.add(tuple(p))
        return cls._minimized(alphabet, support, pats)

    @classmethod
    def cylinder(cls, offset: int, word, alphabet: int) -> "ClopenSet":
        return cls.from_cylinders([Cylinder(offset, word)], alphabet)

    @classmethod
    def symbol_at(cls, position: int, symbol: int, alphabet: int) -> "ClopenSet":
        """The set ``{x : x(position) = symbol}``."""
        return cls.cylinder(position, (symbol,), alphabet)

    @classmethod
    def whole(cls, alphabet: int) -> "ClopenSet":
        return cls(alphabet, (), frozenset({()}))

    @classmethod
    def empty(cls, alphabet: int) -> "ClopenSet":
        return cls(alphabet, (), frozenset())

    # -- set algebra ---------------------------------------------------------

    def lift(self, support: Sequence[int]) -> frozenset:
        """Patterns of this set written on a larger support."""
        support = tuple(support)
        missing = set(self.support) - set(support)
        if missing:
            raise ValueError(f"support {support} does not contain {sorted(missing)}")
        where = [support.index(p) for p in self.support]
        free = [i for i in range(len(support)) if support[i] not in self.support]
        out = set()
        for pat in self.patterns:
            for values in itertools.product(range(self.alphabet), repeat=len(free)):
                p = [0] * len(support)
                for i, s in zip(where, pat):
                    p[i] = s
                for i, s in zip(free, values):
                    p[i] = s
                out.add(tuple(p))
        return frozenset(out)

    def _binary(self, other, op):
        if self.alphabet != other.alphabet:
            raise ValueError("alphabet mismatch")
        support = tuple(sorted(set(self.support) | set(other.support)))
        return ClopenSet._minimized(self.alphabet, support, op(self.lift(support), other.lift(support)))

    def __and__(self, other):
        return self._binary(other, frozenset.__and__)

    def __or__(self, other):
        return self._binary(other, frozenset.__or__)

    def __sub__(self, other):
        return self._binary(other, frozenset.__sub__)

    def complement(self) -> "ClopenSet":
        allp = itertools.product(range(self.alphabet), repeat=len(self.support))
        return ClopenSet(self.alphabet, self.support, frozenset(p for p in allp if p not in self.patterns))

    def shift(self, s: int) -> "ClopenSet":
        return ClopenSet(self.alphabet, tuple(p + s for p in self.support), self.patterns)

    def issubset(self, other) -> bool:
        return (self - other).is_empty()

    def isdisjoint(self, other) -> bool:
        return (self & other).is_empty()

    def is_empty(self) -> bool:
        return not self.patterns

    def is_whole(self) -> bool:
        return self.patterns == frozenset({()})

    def contains(self, point) -> bool:
        """Membership of a point given as a mapping or callable position -> symbol."""
        get = point if callable(point) else point.__getitem__
        return tuple(get(p) for p in self.support) in self.patterns

    def cylinders(self) -> list:
        """The defining cylinders, one per pattern, each spanning the support hull.

        Coordinates inside the hull but outside the support are free, so a
        pattern on a sparse support expands to several cylinders.
        """
        if not self.support:
            return [Cylinder(0, ())] if self.patterns else []
        lo, hi = self.support[0], self.support[-1] + 1
        return [Cylinder(lo, w) for w in sorted(self.lift(range(lo, hi)))]


def shift_preimage(a: ClopenSet, s: int) -> ClopenSet:
    """``{x : T^s x in a}``; every coordinate of ``a`` moves by ``+s``."""
    return a.shift(s)


def clopen_product(a: ClopenSet, b: ClopenSet) -> ClopenSet:
    """``a x b`` as a clopen set of the product shift (pair symbol ``u * kb + v``)."""
    support = tuple(sorted(set(a.support) | set(b.support)))
    kb = b.alphabet
    pats = {tuple(u * kb + v for u, v in zip(pa, pb)) for pa in a.lift(support) for pb in b.lift(support)}
    return ClopenSet._minimized(a.alphabet * kb, support, pats)


# -- subshifts ----------------------------------------------------------------


class Subshift:
    """A shift-invariant closed set of bi-infinite sequences with a language oracle.

    Subclasses answer :meth:`realizations`; everything else derives from it.
    ``horizon`` is the longest window the oracle answers exactly, ``None`` for
    no limit.
    """

    alphabet: int
    horizon: int | None = None

    def key(self):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.key() == other.key()

    def __hash__(self):
        return hash((type(self).__name__, self.key()))

    def _cache(self):
        c = self.__dict__.get("_memo")
        if c is None:
            c = self.__dict__["_memo"] = {}
        return c

    def check_span(self, span: int, what="window"):
        if self.horizon is not None and span > self.horizon:
            raise HorizonError(span, self.horizon, what)

    def language(self, n: int) -> frozenset:
        """All words of length ``n`` occurring in some point."""
        if n < 1:
            raise ValueError(f"word length must be positive, got {n}")
        return self.realizations(range(n))

    def realizations(self, positions: Iterable[int]) -> frozenset:
        """Symbol tuples seen on ``positions`` (sorted, deduplicated) by points."""
        pos = tuple(sorted(set(positions)))
        if not pos:
            return frozenset({()})
        rel = tuple(p - pos[0] for p in pos)
        self.check_span(rel[-1] + 1)
        memo = self._cache()
        out = memo.get(rel)
        if out is None:
            out = memo[rel] = frozenset(self._realizations(rel))
        return out

    def _realizations(self, rel: tuple) -> Iterable[tuple]:
        raise NotImplementedError

    def feasible(self, constraints: Iterable[tuple]) -> bool:
        want = _merge_constraints(constraints)
        if want is None:
            return False
        if not want:
            return bool(self.realizations([0]))
        pos = sorted(want)
        target = tuple(want[p] for p in pos)
        return target in self.realizations(pos)

    def is_empty(self) -> bool:
        return not self.realizations([0])


def _merge_constraints(constraints):
    want = {}
    for pos, sym in constraints:
        if want.setdefault(pos, sym) != sym:
            return None
    return want


class FullShift(Subshift):
    def __init__(self, alphabet: int):
        if alphabet < 1:
            raise ValueError("alphabet must be positive")
        self.alphabet = alphabet

    def key(self):
        return (self.alphabet,)

    def __repr__(self):
        return f"FullShift({self.alphabet})"

    def _realizations(self, rel):
        return itertools.product(range(self.alphabet), repeat=len(rel))

    def feasible(self, constraints):
        want = _merge_constraints(constraints)
        return want is not None and all(0 <= s < self.alphabet for s in want.values())


class SFT(Subshift):
    """Shift of finite type given by forbidden words.

    Forbidden words shorter than the memory ``m`` are padded: every length-``m``
    word containing one of them is forbidden.  Queries run over the de Bruijn
    graph on ``(m-1)``-words, trimmed to states lying on a bi-infinite path.
    """

    def __init__(self, alphabet: int, forbidden: Iterable = (), memory: int | None = None):
        if alphabet < 1:
            raise ValueError("alphabet must be positive")
        self.alphabet = alphabet
        words = sorted({_as_word(w) for w in forbidden})
        for w in words:
            if not w:
                raise ValueError("empty forbidden word")
            if any(not 0 <= s < alphabet for s in w):
                raise ValueError(f"forbidden word {format_word(w)} outside alphabet {alphabet}")
        longest = max((len(w) for w in words), default=0)
        if memory is None:
            memory = longest
        if memory < longest:
            raise ValueError(f"memory {memory} shorter than forbidden word length {longest}")
        self.memory = memory
        self.forbidden = tuple(words)
        self._build()

    def key(self):
        return (self.alphabet, self.memory, self.forbidden)

    def __repr__(self):
        return f"SFT({self.alphabet}, {[format_word(w) for w in self.forbidden]}, memory={self.memory})"

    def _padded(self):
        m = self.memory
        bad = set()
        for w in self.forbidden:
            extra = m - len(w)
            for left in range(extra + 1):
                for fill in itertools.product(range(self.alphabet), repeat=extra):
                    bad.add(fill[:left] + w + fill[left:])
        return bad

    def _build(self):
        k, m = self.alphabet, self.memory
        bad = self._padded()
        L = max(m - 1, 0)
        states = list(itertools.product(range(k), repeat=L))
        out = {s: [] for s in states}
        for s in states:
            for a in range(k):
                if m == 0 or (s + (a,))[-m:] not in bad:
                    out[s].append((a, (s + (a,))[1:] if L else ()))
        alive = set(states)
        while True:
            indeg = defaultdict(int)
            for s in alive:
                for _, t in out[s]:
                    if t in alive:
                        indeg[t] += 1
            keep = {s for s in alive if indeg[s] and any(t in alive for _, t in out[s])}
            if keep == alive:
                break
            alive = keep
        self.state_length = L
        self.states = tuple(sorted(alive))
        self.edges = {s: tuple((a, t) for a, t in out[s] if t in alive) for s in self.states}

    def feasible(self, constraints):
        """De Bruijn dynamic programming over ``[min position, max position]``."""
        want = _merge_constraints(constraints)
        if want is None:
            return False
        if not want:
            return bool(self.states)
        lo, hi = min(want), max(want)
        current = set(self.states)
        for p in range(lo, hi + 1):
            need = want.get(p)
            current = {t for s in current for a, t in self.edges[s] if need is None or a == need}
            if not current:
                return False
        return True

    def _realizations(self, rel):
        marked = set(rel)
        frontier = {s: {()} for s in self.states}
        for p in range(rel[-1] + 1):
            nxt = defaultdict(set)
            for s, parts in frontier.items():
                for a, t in self.edges[s]:
                    if p in marked:
                        nxt[t].update(q + (a,) for q in parts)
                    else:
                        nxt[t].update(parts)
            frontier = nxt
        return set().union(*frontier.values()) if frontier else set()


class ProductShift(Subshift):
    """Product system; the pair ``(u, v)`` is the symbol ``u * right.alphabet + v``."""

    def __init__(self, left: Subshift, right: Subshift):
        self.left, self.right = left, right
        self.alphabet = left.alphabet * right.alphabet
        hs = [h for h in (left.horizon, right.horizon) if h is not None]
        self.horizon = min(hs) if hs else None

    def key(self):
        return (self.left, self.right)

    def __repr__(self):
        return f"ProductShift({self.left!r}, {self.right!r})"

    def pair(self, u: int, v: int) -> int:
        return u * self.right.alphabet + v

    def unpair(self, symbol: int) -> tuple:
        return divmod(symbol, self.right.alphabet)

    def _realizations(self, rel):
        kb = self.right.alphabet
        rights = self.right.realizations(rel)
        for u in self.left.realizations(rel):
            for v in rights:
                yield tuple(a * kb + b for a, b in zip(u, v))

    def feasible(self, constraints):
        constraints = list(constraints)
        if any(not 0 <= s < self.alphabet for _, s in constraints):
            return False
        split = [(p, self.unpair(s)) for p, s in constraints]
        return self.left.feasible((p, uv[0]) for p, uv in split) and self.right.feasible(
            (p, uv[1]) for p, uv in split
        )


def full_shift(k: int) -> FullShift:
    return FullShift(k)


def golden_mean() -> SFT:
    """Binary sequences without two consecutive 1s."""
    return SFT(2, ["11"])


def language(spec: Subshift, n: int) -> frozenset:
    return spec.language(n)


def feasible(spec: Subshift, constraints: Iterable[tuple]) -> bool:
    return spec.feasible(constraints)


def product(a: Subshift, b: Subshift) -> ProductShift:
    return ProductShift(a, b)


def memberships(spec: Subshift, sets: Sequence[ClopenSet]) -> set:
    """Membership vectors ``(x in sets[0], x in sets[1], ...)`` realized by points x."""
    for c in sets:
        if c.alphabet != spec.alphabet:
            raise ValueError(f"clopen set alphabet {c.alphabet} != subshift alphabet {spec.alphabet}")
    positions = sorted({p for c in sets for p in c.support}) or [0]
    index = {p: i for i, p in enumerate(positions)}
    picks = [tuple(index[p] for p in c.support) for c in sets]
    words = spec.realizations(positions)
    if not words:
        return set()
    widest = max((len(c.support) for c in sets), default=0)
    if spec.alphabet ** widest >= 2**62:
        return {tuple(tuple(w[i] for i in pick) in c.patterns for pick, c in zip(picks, sets)) for w in words}
    arr = _word_array(spec, positions, words)
    cols = []
    for pick, c in zip(picks, sets):
        weights = spec.alphabet ** np.arange(len(pick), dtype=np.int64)
        keys = arr[:, list(pick)] @ weights if pick else np.zeros(len(arr), dtype=np.int64)
        pats = np.array([sum(a * spec.alphabet**i for i, a in enumerate(p)) for p in c.patterns], dtype=np.int64)
        cols.append(np.isin(keys, pats))
    table = np.unique(np.stack(cols, axis=1), axis=0)
    return {tuple(bool(v) for v in row) for row in table}


def _word_array(spec, positions, words):
    """Realizations as an integer array, memoized like the word set itself."""
    rel = tuple(p - positions[0] for p in positions)
    memo = spec._cache()
    arr = memo.get(("array", rel))
    if arr is None:
        arr = memo[("array", rel)] = np.array(sorted(words), dtype=np.int64).reshape(len(words), len(positions))
    return arr


def intersects(spec: Subshift, a: ClopenSet) -> bool:
    """Whether some point of ``spec`` lies in ``a``."""
    return (True,) in memberships(spec, [a])
