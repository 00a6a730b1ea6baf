"""Crossings, reinforced crossings and double crossings.

A crossing for an ordered group is a 5-tuple (f, g, u, v, w) with

1. u < w < v,
2. g^n u < v and f^n v > u for every integer n,
3. f^N v < w < g^M u for some M, N >= 1.

Condition 2 cannot be checked for all n; reports state the bound they used.
"""

from __future__ import annotations

import bisect
import functools
import json
from dataclasses import dataclass, replace
from typing import Callable, Iterable, Optional

from .orderings import Ordering, OrderingError, Sign, ball, compare, is_positive, less
from .words import GroupTag, Word, WordError, parse_word

DEFAULT_N_MAX = 25


class CrossingError(ValueError):
    """Invalid candidate, unmet precondition, or a failed internal certificate."""


# -- candidates -----------------------------------------------------------------


def _same_tag(words: Iterable[Word]) -> GroupTag:
    tags = {w.tag for w in words}
    if len(tags) != 1:
        raise CrossingError(f"candidate mixes groups: {sorted(map(str, tags))}")
    return tags.pop()


@dataclass(frozen=True)
class CrossingCandidate:
    f: Word
    g: Word
    u: Word
    v: Word
    w: Word
    M: int = 1
    N: int = 1

    def __post_init__(self):
        if self.M < 1 or self.N < 1:
            raise CrossingError("M and N must be positive")
        _same_tag(self.words())

    def words(self) -> tuple[Word, ...]:
        return (self.f, self.g, self.u, self.v, self.w)

    @property
    def tag(self) -> GroupTag:
        return self.f.tag

    def total_length(self) -> int:
        return sum(len(x) for x in self.words())

    def to_json(self) -> dict:
        d = {k: str(getattr(self, k)) for k in "fguvw"}
        d.update(M=self.M, N=self.N)
        return d

    @classmethod
    def from_json(cls, data: dict | str, tag: GroupTag) -> "CrossingCandidate":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            words = {k: parse_word(str(data[k]), tag) for k in "fguvw"}
            return cls(**words, M=int(data.get("M", 1)), N=int(data.get("N", 1)))
        except KeyError as exc:
            raise CrossingError(f"candidate JSON is missing {exc}") from exc


class ReinforcedCandidate(CrossingCandidate):
    """Same data as a crossing; condition 2 becomes f u > u and g v < v."""


@dataclass(frozen=True)
class DoubleCrossingCandidate:
    f: Word
    g: Word
    u: Word
    v: Word
    w1: Word
    w2: Word

    def __post_init__(self):
        _same_tag((self.f, self.g, self.u, self.v, self.w1, self.w2))

    def to_json(self) -> dict:
        return {k: str(getattr(self, k)) for k in ("f", "g", "u", "v", "w1", "w2")}


# -- reports --------------------------------------------------------------------


@dataclass(frozen=True)
class VerificationReport:
    status: str  # "exact_verified" | "verified_up_to" | "refuted"
    n: Optional[int] = None
    condition: Optional[int] = None
    witness: Optional[dict] = None

    @property
    def ok(self) -> bool:
        return self.status != "refuted"

    def to_json(self) -> dict:
        if self.status == "verified_up_to":
            return {"status": self.status, "n": self.n}
        if self.status == "exact_verified":
            return {"status": self.status}
        return {"status": self.status, "condition": self.condition, "witness": self.witness}

    def __str__(self) -> str:
        if self.status == "verified_up_to":
            return f"verified_up_to {self.n}"
        if self.status == "exact_verified":
            return "exact_verified"
        return f"refuted condition {self.condition}: {self.witness['comparison']}" + (
            f" (n = {self.witness['n']})" if "n" in self.witness else ""
        )


def _refute(condition: int, comparison: str, **extra) -> VerificationReport:
    return VerificationReport("refuted", condition=condition, witness={"comparison": comparison, **extra})


def _check_tag(ord: Ordering, tag: GroupTag) -> None:
    if ord.tag != tag:
        raise OrderingError(f"{ord} orders {ord.tag}, candidate lives in {tag}")


def _condition_one(ord, u, w, v) -> Optional[VerificationReport]:
    if not less(ord, u, w):
        return _refute(1, "u < w")
    if not less(ord, w, v):
        return _refute(1, "w < v")
    return None


def _condition_three(ord, c: CrossingCandidate) -> Optional[VerificationReport]:
    if not less(ord, c.f ** c.N * c.v, c.w):
        return _refute(3, "f^N v < w")
    if not less(ord, c.w, c.g ** c.M * c.u):
        return _refute(3, "w < g^M u")
    return None


def _bounded_orbit_failure(ord, c: CrossingCandidate, n_max: int) -> Optional[VerificationReport]:
    for k in range(1, n_max + 1):
        for n in (k, -k):
            if not less(ord, c.g**n * c.u, c.v):
                return _refute(2, "g^n u < v", n=n)
            if not less(ord, c.u, c.f**n * c.v):
                return _refute(2, "f^n v > u", n=n)
    return None


def verify_crossing(ord: Ordering, c: CrossingCandidate, n_max: int = DEFAULT_N_MAX) -> VerificationReport:
    """Exact checks of conditions 1 and 3; condition 2 for 1 <= |n| <= n_max."""
    _check_tag(ord, c.tag)
    if n_max < max(c.M, c.N):
        raise CrossingError(f"n_max = {n_max} is below max(M, N) = {max(c.M, c.N)}")
    return (
        _condition_one(ord, c.u, c.w, c.v)
        or _condition_three(ord, c)
        or _bounded_orbit_failure(ord, c, n_max)
        or VerificationReport("verified_up_to", n=n_max)
    )


def verify_reinforced(ord: Ordering, c: CrossingCandidate) -> VerificationReport:
    _check_tag(ord, c.tag)
    failure = _condition_one(ord, c.u, c.w, c.v)
    if failure:
        return failure
    if not less(ord, c.u, c.f * c.u):
        return _refute(2, "f u > u")
    if not less(ord, c.g * c.v, c.v):
        return _refute(2, "g v < v")
    return _condition_three(ord, c) or VerificationReport("exact_verified")


def verify_double_crossing(ord: Ordering, c: DoubleCrossingCandidate) -> VerificationReport:
    _check_tag(ord, c.f.tag)
    checks = [
        (1, "u < w1", c.u, c.w1),
        (1, "w1 < w2", c.w1, c.w2),
        (1, "w2 < v", c.w2, c.v),
        (2, "f u > u", c.u, c.f * c.u),
        (2, "f v > v", c.v, c.f * c.v),
        (3, "g u > w1", c.w1, c.g * c.u),
        (3, "g v < w2", c.g * c.v, c.w2),
        (3, "f w2 < w1", c.f * c.w2, c.w1),
    ]
    for condition, label, lo, hi in checks:
        if not less(ord, lo, hi):
            return _refute(condition, label)
    return VerificationReport("exact_verified")


# -- conversions and lemma moves ------------------------------------------------


def to_reinforced(c: CrossingCandidate) -> ReinforcedCandidate:
    """(f^N g^M, g^M f^N, f^N w, g^M w, w) with the same M, N."""
    fN, gM = c.f**c.N, c.g**c.M
    return ReinforcedCandidate(fN * gM, gM * fN, fN * c.w, gM * c.w, c.w, M=c.M, N=c.N)


def as_crossing(c: CrossingCandidate) -> CrossingCandidate:
    return CrossingCandidate(*c.words(), M=c.M, N=c.N)


@dataclass(frozen=True)
class Move:
    kind: str  # shift_w_g | shift_w_f | extend_u | extend_v | conjugate
    n: int = 1
    h: Optional[Word] = None

    def __post_init__(self):
        if self.kind not in ("shift_w_g", "shift_w_f", "extend_u", "extend_v", "conjugate"):
            raise CrossingError(f"unknown move {self.kind!r}")
        if self.kind == "conjugate":
            if self.h is None:
                raise CrossingError("a conjugation move needs h")
        elif self.n < 1:
            raise CrossingError("move parameter n must be >= 1")

    @classmethod
    def conjugate(cls, h: Word) -> "Move":
        return cls("conjugate", h=h)


def transform_crossing(ord: Ordering, c: CrossingCandidate, move: Move) -> CrossingCandidate:
    f, g, u, v, w = c.words()
    n = move.n
    if move.kind == "conjugate":
        h = move.h
        return CrossingCandidate(h * f * ~h, h * g * ~h, h * u, h * v, h * w, M=c.M, N=c.N)
    if move.kind == "shift_w_g":
        return replace(c, w=g**n * w, M=c.M + n)
    if move.kind == "shift_w_f":
        return replace(c, w=f**n * w, N=c.N + n)
    if move.kind == "extend_u":
        step = n if less(ord, u, f * u) else -n
        return replace(c, u=f**step * u)
    # extend_v
    step = n if less(ord, g * v, v) else -n
    return replace(c, v=g**step * v)


# -- Conrad property <-> crossings ---------------------------------------------


def _require_positive(ord: Ordering, **words: Word) -> None:
    for name, x in words.items():
        if is_positive(ord, x) != Sign.POSITIVE:
            raise CrossingError(f"{name} = {x} is not positive under {ord}")


def crossing_from_nonconradian(ord: Ordering, f: Word, g: Word) -> CrossingCandidate:
    """For positive f, g with f g^n < g for all n: (f, g, 1, f^-1 g, g^2), N = 1, M = 3."""
    _require_positive(ord, f=f, g=g)
    one = Word.identity(f.tag)
    return CrossingCandidate(f, g, one, ~f * g, g * g, M=3, N=1)


def crossing_from_n2_violation(ord: Ordering, f: Word, g: Word) -> CrossingCandidate:
    """For positive f, g with f g^2 < g: the crossing (f, fg, 1, g, fg) with M = N = 2.

    Here 1 < fg < g, f^2 g < fg and fg < (fg)^2.
    """
    _require_positive(ord, f=f, g=g)
    if not less(ord, f * g * g, g):
        raise CrossingError("expected f g^2 < g")
    one = Word.identity(f.tag)
    return CrossingCandidate(f, f * g, one, g, f * g, M=2, N=2)


@dataclass(frozen=True)
class WitnessPair:
    """Positive h, h_bar with h h_bar^n < h_bar for 1 <= n <= n_checked."""

    h: Word
    h_bar: Word
    n_checked: int

    def to_json(self) -> dict:
        return {"h": str(self.h), "h_bar": str(self.h_bar), "n_checked": self.n_checked}


def nonconradian_from_crossing(ord: Ordering, c: CrossingCandidate, n_max: int = DEFAULT_N_MAX) -> WitnessPair:
    report = verify_crossing(ord, c, n_max)
    if not report.ok:
        raise CrossingError(f"candidate is not a crossing: {report}")
    w = c.w
    h = ~w * c.g**c.M * c.f**c.N * w
    h_bar = ~w * c.g**c.M * w
    try:
        _require_positive(ord, h=h, h_bar=h_bar)
    except CrossingError as exc:
        raise CrossingError(f"non-Conradian certificate failed (bug): {exc}") from exc
    power = Word.identity(w.tag)
    for n in range(1, n_max + 1):
        power = power * h_bar
        if not less(ord, h * power, h_bar):
            raise CrossingError(f"defect inequality fails at n = {n} (bug)")
    return WitnessPair(h, h_bar, n_max)


def refine_between(
    ord: Ordering, c: CrossingCandidate, h1: Word, h2: Word, n_max: int = DEFAULT_N_MAX
) -> CrossingCandidate:
    """Move a crossing so that h1 < u and v < h2.

    Conjugate by f^N, then by the M-th power of the new g, using the sign
    of f u against u and of g v against v to pick the lemma case.
    """
    if not verify_crossing(ord, c, n_max).ok:
        raise CrossingError("input candidate does not verify")
    one = Word.identity(c.tag)
    if less(ord, c.u, one):
        raise CrossingError("refine_between needs 1 <= u")
    if not less(ord, c.w, h2):
        raise CrossingError("refine_between needs w < h2")
    if less(ord, h1, one):
        raise CrossingError("refine_between needs 1 <= h1")
    f, g, u, v, w = c.words()
    fN = f**c.N
    g_bar, u_bar, v_bar, w_bar = fN * g * ~fN, fN * u, fN * v, fN * w
    if less(ord, u_bar, u):
        # f u < u: the lemma lets u replace f^N u
        u_bar = u
    gM = g_bar**c.M
    f_new = gM * f * ~gM
    u_new, w_new = gM * u_bar, gM * w_bar
    v_new = gM * v_bar
    if not less(ord, v_new, v_bar):
        # g v > v: pull v back to v_bar
        v_new = v_bar
    out = CrossingCandidate(f_new, g_bar, u_new, v_new, w_new, M=c.M, N=c.N)
    bound = max(n_max - (c.M + c.N), c.M, c.N)
    report = verify_crossing(ord, out, bound)
    if not report.ok:
        raise CrossingError(f"refined candidate failed verification (bug): {report}")
    if not (less(ord, h1, out.u) and less(ord, out.v, h2)):
        raise CrossingError("refined candidate is not between h1 and h2")
    return out


# -- search ---------------------------------------------------------------------


def _orbit_stays(ord: Ordering, step: Word, start: Word, bound: Word, above: bool, n_max: int) -> bool:
    """step^n start stays above (or below) bound for 1 <= |n| <= n_max."""
    inv = ~step
    for gen in (step, inv):
        x = start
        for _ in range(n_max):
            x = gen * x
            if (less(ord, bound, x) if above else less(ord, x, bound)) is False:
                return False
    return True


def _least_power(ord: Ordering, step: Word, start: Word, w: Word, limit: int, below: bool) -> Optional[int]:
    x = start
    for k in range(1, limit + 1):
        x = step * x
        if less(ord, x, w) if below else less(ord, w, x):
            return k
    return None


def _candidate_key(c: CrossingCandidate) -> tuple:
    return (c.total_length(), tuple(x.canonical_key() for x in c.words()), c.M, c.N)


def search_crossings(
    ord: Ordering,
    ball_radius: int,
    M_max: int,
    N_max: int,
    n_max: int = 10,
    limit: int = 10,
    u_filter: Optional[Callable[[Word], bool]] = None,
    v_filter: Optional[Callable[[Word], bool]] = None,
    w_filter: Optional[Callable[[Word], bool]] = None,
) -> list[tuple[CrossingCandidate, VerificationReport]]:
    """Exhaustive bounded search over a ball, returned in canonical order.

    Candidates are ordered by total length, then word order of (f, g, u, v, w);
    each 5-tuple is reported once with its least M and least N.  The filters
    restrict u, v, w (used by the soul approximation).
    """
    if limit <= 0:
        return []
    if min(ball_radius, M_max, N_max, n_max) < 1:
        raise CrossingError("search bounds must be positive")
    if n_max < max(M_max, N_max):
        raise CrossingError("n_max must be at least max(M_max, N_max)")
    elems = sorted(ball(ord.tag, ball_radius), key=_ordering_key(ord))
    rank = {x: i for i, x in enumerate(elems)}
    nontrivial = [x for x in elems if not x.is_identity()]
    us = [x for x in elems if u_filter is None or u_filter(x)]
    vs = [x for x in elems if v_filter is None or v_filter(x)]
    ws = [x for x in elems if w_filter is None or w_filter(x)]

    # conditions 1 and 3 force f v < v and g u > u
    f_shrinks: dict[Word, list[Word]] = {}
    g_grows: dict[Word, list[Word]] = {}
    f_low: dict[tuple[Word, Word], Word] = {}
    g_high: dict[tuple[Word, Word], Word] = {}
    orbit_cache: dict[tuple, bool] = {}

    def shrinking(v):
        if v not in f_shrinks:
            f_shrinks[v] = [f for f in nontrivial if less(ord, f * v, v)]
            for f in f_shrinks[v]:
                f_low[f, v] = f**N_max * v
        return f_shrinks[v]

    def growing(u):
        if u not in g_grows:
            g_grows[u] = [g for g in nontrivial if less(ord, u, g * u)]
            for g in g_grows[u]:
                g_high[g, u] = g**M_max * u
        return g_grows[u]

    def f_ok(f, u, v):
        key = ("f", f, u, v)
        if key not in orbit_cache:
            orbit_cache[key] = _orbit_stays(ord, f, v, u, True, n_max)
        return orbit_cache[key]

    def g_ok(g, u, v):
        key = ("g", g, u, v)
        if key not in orbit_cache:
            orbit_cache[key] = _orbit_stays(ord, g, u, v, False, n_max)
        return orbit_cache[key]

    # keep the `limit` least candidates; once full, longer tuples are pruned
    best: list[tuple[tuple, CrossingCandidate]] = []
    bound = float("inf")
    min_len = {}
    pairs = sorted(
        ((u, v) for u in us for v in vs if rank[u] < rank[v]),
        key=lambda p: len(p[0]) + len(p[1]),
    )
    for u, v in pairs:
        base = len(u) + len(v)
        if base + 2 > bound:
            break
        between = [w for w in ws if rank[u] < rank[w] < rank[v] and base + len(w) + 2 <= bound]
        if not between:
            continue
        fs, gs = shrinking(v), growing(u)
        if not fs or not gs:
            continue
        # some w must lie strictly between a low f^N v and a high g^M u
        fs = [f for f in fs if less(ord, f_low[f, v], between[-1])]
        gs = [g for g in gs if less(ord, between[0], g_high[g, u])]
        if not fs or not gs:
            continue
        fs = [f for f in fs if f_ok(f, u, v)]
        gs = [g for g in gs if g_ok(g, u, v)] if fs else []
        if not fs or not gs:
            continue
        shortest_g = min(len(g) for g in gs)
        for w in between:
            room = bound - base - len(w)
            f_hits = [
                (f, N)
                for f in fs
                if len(f) + shortest_g <= room
                for N in [_least_power(ord, f, v, w, N_max, True)]
                if N
            ]
            if not f_hits:
                continue
            shortest_f = min(len(f) for f, _ in f_hits)
            g_hits = [
                (g, M)
                for g in gs
                if shortest_f + len(g) <= room
                for M in [_least_power(ord, g, u, w, M_max, False)]
                if M
            ]
            for f, N in f_hits:
                for g, M in g_hits:
                    c = CrossingCandidate(f, g, u, v, w, M=M, N=N)
                    if c.total_length() > bound:
                        continue
                    key = _candidate_key(c)
                    if len(best) == limit and key >= best[-1][0]:
                        continue
                    bisect.insort(best, (key, c), key=lambda item: item[0])
                    if len(best) > limit:
                        best.pop()
                    if len(best) == limit:
                        bound = best[-1][0][0]
    return [(c, VerificationReport("verified_up_to", n=n_max)) for _, c in best]


def search_double_crossings(ord: Ordering, ball_radius: int, limit: int = 10) -> list[DoubleCrossingCandidate]:
    """Exhaustive search for double crossings over a ball, canonical order."""
    elems = ball(ord.tag, ball_radius)
    ranked = sorted(elems, key=_ordering_key(ord))
    found: list[DoubleCrossingCandidate] = []
    n = len(ranked)
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                for m in range(k + 1, n):
                    u, w1, w2, v = ranked[i], ranked[j], ranked[k], ranked[m]
                    fs = [
                        f
                        for f in elems
                        if less(ord, u, f * u) and less(ord, v, f * v) and less(ord, f * w2, w1)
                    ]
                    if not fs:
                        continue
                    gs = [g for g in elems if less(ord, w1, g * u) and less(ord, g * v, w2)]
                    for f in fs:
                        for g in gs:
                            found.append(DoubleCrossingCandidate(f, g, u, v, w1, w2))
    found.sort(key=lambda c: tuple(x.canonical_key() for x in (c.f, c.g, c.u, c.v, c.w1, c.w2)))
    return found[:limit]


def _ordering_key(ord: Ordering):
    def cmp(a: Word, b: Word) -> int:
        return -int(compare(ord, a, b))

    return functools.cmp_to_key(cmp)
