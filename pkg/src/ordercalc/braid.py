"""Sigma-positivity and the word problem in braid groups.

Handle reduction decides the sign of a braid word; the reduced Burau
representation of B3 (faithful there) is an independent oracle for the word
problem.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from .words import Braid, GroupTag, Word, WordError, enumerate_ball

DEFAULT_MAX_STEPS = 10**6


class StepBudgetExceeded(RuntimeError):
    """Handle reduction ran past its step budget."""


def _require_braid(w: Word) -> None:
    if w.tag.kind != "braid":
        raise WordError(f"expected a braid word, got {w.tag}")


def _reduce_letters(letters: tuple[int, ...], max_steps: int) -> tuple[int, ...]:
    """Reduce the handle whose right end comes first, until none is left.

    Nothing strictly inside that handle can close another handle, so it is
    always a permitted handle.  ``last[i]`` is the position of the latest
    letter of index i not yet cut off by a lower letter; ``states[p]`` is its
    value before position p, so a rescan can resume where the rewrite began.
    """
    if not letters:
        return letters
    rank = max(abs(a) for a in letters)
    word = list(letters)
    states: list[list[int]] = []
    resume = 0
    steps = 0
    while True:
        last = list(states[resume]) if resume < len(states) else [-1] * (rank + 2)
        del states[resume:]
        found = None
        for j in range(resume, len(word)):
            states.append(list(last))
            a = word[j]
            i = a if a > 0 else -a
            for k in range(i + 1, rank + 1):
                last[k] = -1
            pos = last[i]
            if pos >= 0 and word[pos] == -a:
                found = (pos, j)
                break
            last[i] = j
        if found is None:
            return tuple(word)
        steps += 1
        if steps > max_steps:
            raise StepBudgetExceeded(f"handle reduction exceeded {max_steps} steps")
        k, j = found
        e = 1 if word[k] > 0 else -1
        i = abs(word[k])
        out = word[:k]
        low = k
        tail = []
        for a in word[k + 1 : j]:
            if a == i + 1 or a == -(i + 1):
                tail += (-e * (i + 1), i if a > 0 else -i, e * (i + 1))
            else:
                tail.append(a)
        tail += word[j + 1 :]
        for a in tail:
            if out and out[-1] == -a:
                out.pop()
                if len(out) < low:
                    low = len(out)
            else:
                out.append(a)
        word = out
        resume = low


@lru_cache(maxsize=1 << 18)
def _reduce_cached(letters: tuple[int, ...], max_steps: int) -> tuple[int, ...]:
    return _reduce_letters(letters, max_steps)


def handle_reduce(w: Word, max_steps: int = DEFAULT_MAX_STEPS) -> Word:
    """Rewrite ``w`` by handle reduction until no handle remains."""
    _require_braid(w)
    return Word(w.tag, _reduce_cached(w.letters, max_steps))


@dataclass(frozen=True)
class SigmaClass:
    kind: str  # "trivial" | "positive" | "negative"
    index: int  # main generator index; 0 when trivial
    reduced: Word

    def __str__(self) -> str:
        if self.kind == "trivial":
            return "trivial"
        return f"{self.index}-{self.kind}"


def _classify_letters(letters: tuple[int, ...]) -> tuple[str, int]:
    if not letters:
        return "trivial", 0
    m = min(abs(a) for a in letters)
    first = next(a for a in letters if abs(a) == m)
    return ("positive" if first > 0 else "negative"), m


def sigma_classify(w: Word, max_steps: int = DEFAULT_MAX_STEPS) -> SigmaClass:
    reduced = handle_reduce(w, max_steps)
    kind, index = _classify_letters(reduced.letters)
    return SigmaClass(kind, index, reduced)


@lru_cache(maxsize=1 << 18)
def _sign_pair(letters: tuple[int, ...]) -> tuple[str, int]:
    return _classify_letters(_reduce_cached(letters, DEFAULT_MAX_STEPS))


def dehornoy_positive(w: Word) -> bool:
    _require_braid(w)
    return _sign_pair(w.letters)[0] == "positive"


def dd_positive(w: Word) -> bool:
    """Membership in P1 u P2^-1 u P3 u ... (the Dubrovina-Dubrovin cone)."""
    _require_braid(w)
    kind, i = _sign_pair(w.letters)
    if kind == "trivial":
        return False
    return (kind == "positive") == (i % 2 == 1)


# -- reduced Burau representation of B3 ----------------------------------------

# A Laurent polynomial is a tuple of (exponent, coefficient) pairs, sorted by
# exponent, with no zero coefficients.
Laurent = tuple[tuple[int, int], ...]


def _lp(terms: dict[int, int]) -> Laurent:
    return tuple(sorted((e, c) for e, c in terms.items() if c))


def lp_add(p: Laurent, q: Laurent) -> Laurent:
    acc = dict(p)
    for e, c in q:
        acc[e] = acc.get(e, 0) + c
    return _lp(acc)


def lp_mul(p: Laurent, q: Laurent) -> Laurent:
    acc: dict[int, int] = {}
    for e1, c1 in p:
        for e2, c2 in q:
            acc[e1 + e2] = acc.get(e1 + e2, 0) + c1 * c2
    return _lp(acc)


ZERO: Laurent = ()
ONE: Laurent = ((0, 1),)


def lp_str(p: Laurent) -> str:
    if not p:
        return "0"
    parts = []
    for e, c in p:
        mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
        coef = str(c) if (e == 0 or abs(c) != 1) else ("-" if c < 0 else "")
        parts.append(coef + ("*" if mono and coef not in ("", "-") else "") + mono)
    return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True)
class LaurentMatrix:
    """2x2 matrix over Z[t, t^-1], row major."""

    entries: tuple[Laurent, Laurent, Laurent, Laurent]

    def __matmul__(self, other: LaurentMatrix) -> LaurentMatrix:
        a, b, c, d = self.entries
        p, q, r, s = other.entries
        return LaurentMatrix(
            (
                lp_add(lp_mul(a, p), lp_mul(b, r)),
                lp_add(lp_mul(a, q), lp_mul(b, s)),
                lp_add(lp_mul(c, p), lp_mul(d, r)),
                lp_add(lp_mul(c, q), lp_mul(d, s)),
            )
        )

    def determinant(self) -> Laurent:
        a, b, c, d = self.entries
        return lp_add(lp_mul(a, d), lp_mul(lp_mul(((0, -1),), b), c))

    def is_identity(self) -> bool:
        return self.entries == (ONE, ZERO, ZERO, ONE)

    def __str__(self) -> str:
        a, b, c, d = (lp_str(x) for x in self.entries)
        return f"[[{a}, {b}], [{c}, {d}]]"


IDENTITY = LaurentMatrix((ONE, ZERO, ZERO, ONE))

_BURAU = {
    1: LaurentMatrix((((1, -1),), ONE, ZERO, ONE)),
    -1: LaurentMatrix((((-1, -1),), ((-1, 1),), ZERO, ONE)),
    2: LaurentMatrix((ONE, ZERO, ((1, 1),), ((1, -1),))),
    -2: LaurentMatrix((ONE, ZERO, ONE, ((-1, -1),))),
}


def _require_b3(w: Word) -> None:
    if w.tag != Braid(3):
        raise WordError(f"the Burau oracle is only implemented for B3, got {w.tag}")


def burau_matrix(w: Word) -> LaurentMatrix:
    _require_b3(w)
    return _burau_letters(w.letters)


@lru_cache(maxsize=1 << 16)
def _burau_letters(letters: tuple[int, ...]) -> LaurentMatrix:
    if not letters:
        return IDENTITY
    if len(letters) == 1:
        return _BURAU[letters[0]]
    half = len(letters) // 2
    return _burau_letters(letters[:half]) @ _burau_letters(letters[half:])


def burau_trivial(w: Word) -> bool:
    return burau_matrix(w).is_identity()


def burau_key(w: Word) -> LaurentMatrix:
    """Exact element invariant on B3 (the representation is faithful there)."""
    return burau_matrix(w)


def same_braid(u: Word, v: Word) -> bool:
    """Word problem via handle reduction of u v^-1."""
    return handle_reduce(u * ~v).is_identity()


def braid_ball(tag: GroupTag, radius: int) -> list[Word]:
    if tag == Braid(3):
        return enumerate_ball(tag, radius, key=burau_key)
    return enumerate_ball(tag, radius, word_problem=same_braid)
