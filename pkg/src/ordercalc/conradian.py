"""Bounded Conradian diagnostics and the crossing-based soul approximation."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .crossings import CrossingCandidate, CrossingError, search_crossings, verify_crossing
from .orderings import Ordering, Sign, Subgroup, ball, is_positive, less
from .words import Word


def positives(ord: Ordering, radius: int) -> list[Word]:
    return [w for w in ball(ord.tag, radius) if is_positive(ord, w) == Sign.POSITIVE]


def n2_violations(ord: Ordering, ball_radius: int) -> list[tuple[Word, Word]]:
    """Pairs of positive ball elements with f g^2 < g, in canonical order."""
    pos = positives(ord, ball_radius)
    return [(f, g) for f in pos for g in pos if less(ord, f * g * g, g)]


def nonconradian_witness_check(ord: Ordering, f: Word, g: Word, n_max: int) -> bool:
    """True iff f g^n < g for every 1 <= n <= n_max."""
    for name, x in (("f", f), ("g", g)):
        if is_positive(ord, x) != Sign.POSITIVE:
            raise CrossingError(f"{name} = {x} is not positive under {ord}")
    x = f
    for _ in range(n_max):
        x = x * g
        if not less(ord, x, g):
            return False
    return True


def convexity_counterexample(
    ord: Ordering, membership: Subgroup, ball_radius: int
) -> Optional[tuple[Word, Word]]:
    """A pair (f, f_bar) with f_bar in the subgroup, f outside it and 1 < f < f_bar."""
    pos = positives(ord, ball_radius)
    inside = [x for x in pos if x in membership]
    outside = [x for x in pos if x not in membership]
    for f_bar in inside:
        for f in outside:
            if less(ord, f, f_bar):
                return f, f_bar
    return None


def convexity_check(ord: Ordering, membership: Subgroup, ball_radius: int) -> bool:
    return convexity_counterexample(ord, membership, ball_radius) is None


@dataclass(frozen=True)
class SoulBounds:
    ball_radius: int
    M_max: int
    N_max: int
    n_max: int

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.ball_radius, self.M_max, self.N_max, self.n_max)


@dataclass
class SoulApproximation:
    """Ball elements split into those with a crossing certificate and the rest.

    Retention only means no certificate was found within ``bounds``.
    """

    ordering: Ordering
    radius: int
    bounds: SoulBounds
    excluded: dict[Word, CrossingCandidate] = field(default_factory=dict)
    retained: list[Word] = field(default_factory=list)

    CAVEAT = "retained elements are bounded evidence only: no crossing certificate was found within the bounds"

    def to_json(self) -> dict:
        return {
            "ordering": str(self.ordering),
            "radius": self.radius,
            "bounds": list(self.bounds.as_tuple()),
            "retained": [str(w) for w in self.retained],
            "excluded": {str(w): c.to_json() for w, c in self.excluded.items()},
            "caveat": self.CAVEAT,
        }


def exclusion_certificate(ord: Ordering, h: Word, bounds: SoulBounds) -> Optional[CrossingCandidate]:
    """A crossing showing h is outside the soul, or None if none is found.

    Positive h: a crossing with 1 <= u and w < h.  Negative h: a crossing
    with v <= 1 and h < w.
    """
    one = Word.identity(h.tag)
    sign = is_positive(ord, h)
    if sign == Sign.ZERO:
        return None
    if sign == Sign.POSITIVE:
        filters = dict(
            u_filter=lambda u: not less(ord, u, one),
            w_filter=lambda w: less(ord, w, h),
        )
    else:
        filters = dict(
            v_filter=lambda v: not less(ord, one, v),
            w_filter=lambda w: less(ord, h, w),
        )
    found = search_crossings(
        ord, bounds.ball_radius, bounds.M_max, bounds.N_max, bounds.n_max, limit=1, **filters
    )
    return found[0][0] if found else None


def _certificate_task(args):
    ord, h, bounds = args
    return exclusion_certificate(ord, h, bounds)


def soul_approximation(
    ord: Ordering, radius: int, bounds: SoulBounds | tuple, workers: int = 1
) -> SoulApproximation:
    if not isinstance(bounds, SoulBounds):
        bounds = SoulBounds(*bounds)
    elems = ball(ord.tag, radius)
    todo = [h for h in elems if not h.is_identity()]
    if workers > 1 and len(todo) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            certs = list(pool.map(_certificate_task, [(ord, h, bounds) for h in todo]))
    else:
        certs = [exclusion_certificate(ord, h, bounds) for h in todo]
    found = dict(zip(todo, certs))
    result = SoulApproximation(ord, radius, bounds)
    for h in elems:
        cert = found.get(h)
        if cert is None:
            result.retained.append(h)
        else:
            result.excluded[h] = cert
    return result


def replay_certificate(ord: Ordering, h: Word, c: CrossingCandidate, n_max: int) -> bool:
    """Re-check an exclusion certificate from scratch."""
    if not verify_crossing(ord, c, n_max).ok:
        return False
    one = Word.identity(h.tag)
    if is_positive(ord, h) == Sign.POSITIVE:
        return not less(ord, c.u, one) and less(ord, c.w, h)
    return not less(ord, one, c.v) and less(ord, h, c.w)
