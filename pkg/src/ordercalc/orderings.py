"""Positive-cone oracles for every ordering the package knows about.

An ordering is an immutable handle; ``is_positive`` decides the sign of a
single element and ``compare(u, v)`` is the sign of ``u^-1 v``, so every
handle is left-invariant by construction.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

from .braid import braid_ball, dd_positive, dehornoy_positive
from .words import FREE2, KLEIN, Braid, GroupTag, Word, WordError, enumerate_ball, klein_normal_form, parse_word


class Sign(enum.IntEnum):
    NEGATIVE = -1
    ZERO = 0
    POSITIVE = 1

    def __neg__(self) -> Sign:
        return Sign(-int(self))

    @property
    def symbol(self) -> str:
        return {1: "+", -1: "-", 0: "0"}[int(self)]


class OrderingError(ValueError):
    pass


# -- subgroups ------------------------------------------------------------------


@dataclass(frozen=True)
class Subgroup:
    """A named subgroup with a decidable membership test."""

    name: str  # gen-x | gen-y | gen-a | gen-b | all | trivial

    def __post_init__(self):
        if self.name not in _MEMBERSHIP:
            raise OrderingError(f"unknown subgroup {self.name!r}")

    def __contains__(self, w: Word) -> bool:
        return _MEMBERSHIP[self.name](w)

    def __str__(self) -> str:
        return self.name


def _cyclic_free(index: int):
    def member(w: Word) -> bool:
        if w.tag != FREE2:
            raise OrderingError(f"subgroup gen-{'xy'[index - 1]} lives in F2, got {w.tag}")
        return all(abs(a) == index for a in w.letters)

    return member


def _klein_a(w: Word) -> bool:
    return klein_normal_form(w).n == 0


def _klein_b(w: Word) -> bool:
    return klein_normal_form(w).m == 0


_MEMBERSHIP = {
    "gen-x": _cyclic_free(1),
    "gen-y": _cyclic_free(2),
    "gen-a": _klein_a,
    "gen-b": _klein_b,
    "all": lambda w: True,
    "trivial": lambda w: w.is_identity(),
}

GEN_X = Subgroup("gen-x")
GEN_Y = Subgroup("gen-y")
GEN_A = Subgroup("gen-a")
WHOLE = Subgroup("all")


# -- handles --------------------------------------------------------------------


@dataclass(frozen=True)
class Dehornoy:
    n: int

    @property
    def tag(self) -> GroupTag:
        return Braid(self.n)

    def __str__(self) -> str:
        return f"dehornoy:{self.n}"


@dataclass(frozen=True)
class DD:
    n: int

    @property
    def tag(self) -> GroupTag:
        return Braid(self.n)

    def __str__(self) -> str:
        return f"dd:{self.n}"


@dataclass(frozen=True)
class ExoticC:
    """The restriction of the DD ordering of B3 to <s1^2, s2^2> = F2."""

    @property
    def tag(self) -> GroupTag:
        return FREE2

    def __str__(self) -> str:
        return "exoticC"


@dataclass(frozen=True)
class KleinCone:
    """Positive iff n*eps_b > 0, or n == 0 and m*eps_a > 0, for a^m b^n."""

    eps_a: int = 1
    eps_b: int = 1

    def __post_init__(self):
        if self.eps_a not in (1, -1) or self.eps_b not in (1, -1):
            raise OrderingError("KleinCone signs must be +1 or -1")

    @property
    def tag(self) -> GroupTag:
        return KLEIN

    def __str__(self) -> str:
        return "klein:" + "".join("+" if e > 0 else "-" for e in (self.eps_a, self.eps_b))


@dataclass(frozen=True)
class Conjugate:
    """Positive on g iff ``base`` is positive on h g h^-1."""

    base: "Ordering"
    h: Word

    @property
    def tag(self) -> GroupTag:
        return self.base.tag

    def __str__(self) -> str:
        return f"conj({self.base},{self.h})"


@dataclass(frozen=True)
class Opposite:
    """The reversed ordering: positive cone P^-1."""

    base: "Ordering"

    @property
    def tag(self) -> GroupTag:
        return self.base.tag

    def __str__(self) -> str:
        return f"rev({self.base})"


@dataclass(frozen=True)
class ConvexExtension:
    outer: "Ordering"
    inner_membership: Subgroup
    inner: "Ordering"

    @property
    def tag(self) -> GroupTag:
        return self.outer.tag

    def __str__(self) -> str:
        return f"ext({self.outer},{self.inner_membership},{self.inner})"


Ordering = Union[Dehornoy, DD, ExoticC, KleinCone, Conjugate, Opposite, ConvexExtension]

EXOTIC_C = ExoticC()
KLEIN_CONES = tuple(KleinCone(a, b) for a in (1, -1) for b in (1, -1))


def _to_sign(positive: bool, w: Word) -> Sign:
    if w.is_identity():
        return Sign.ZERO
    return Sign.POSITIVE if positive else Sign.NEGATIVE


def embed_free2(w: Word) -> Word:
    """x -> s1^2, y -> s2^2 inside B3."""
    if w.tag != FREE2:
        raise WordError(f"expected an F2 word, got {w.tag}")
    return Word(Braid(3), tuple(a for a in w.letters for _ in range(2)))


@lru_cache(maxsize=1 << 18)
def _exotic_positive(letters: tuple[int, ...]) -> bool:
    return dd_positive(embed_free2(Word(FREE2, letters)))


def is_positive(ord: Ordering, w: Word) -> Sign:
    if w.tag != ord.tag:
        raise OrderingError(f"{ord} orders {ord.tag}, got a word in {w.tag}")
    if w.is_identity():
        return Sign.ZERO
    if isinstance(ord, ExoticC):
        return _to_sign(_exotic_positive(w.letters), w)
    if isinstance(ord, Dehornoy):
        return _to_sign(dehornoy_positive(w), w)
    if isinstance(ord, DD):
        return _to_sign(dd_positive(w), w)
    if isinstance(ord, KleinCone):
        m, n = klein_normal_form(w)
        return _to_sign(n * ord.eps_b > 0 or (n == 0 and m * ord.eps_a > 0), w)
    if isinstance(ord, Conjugate):
        return is_positive(ord.base, ord.h * w * ~ord.h)
    if isinstance(ord, Opposite):
        return -is_positive(ord.base, w)
    if isinstance(ord, ConvexExtension):
        if w in ord.inner_membership:
            return is_positive(ord.inner, w)
        return is_positive(ord.outer, w)
    raise OrderingError(f"not an ordering handle: {ord!r}")


def compare(ord: Ordering, u: Word, v: Word) -> Sign:
    """POSITIVE means u < v."""
    return is_positive(ord, ~u * v)


def less(ord: Ordering, u: Word, v: Word) -> bool:
    return compare(ord, u, v) == Sign.POSITIVE


def conjugate_ordering(ord: Ordering, h: Word) -> Ordering:
    if h.tag != ord.tag:
        raise OrderingError(f"conjugator in {h.tag} does not match {ord.tag}")
    if h.is_identity():
        return ord
    return Conjugate(ord, h)


def convex_extension(outer: Ordering, inner_membership: Subgroup, inner: Ordering) -> Ordering:
    if outer.tag != inner.tag:
        raise OrderingError(f"cannot extend an ordering of {inner.tag} by one of {outer.tag}")
    return ConvexExtension(outer, inner_membership, inner)


def ball(tag: GroupTag, radius: int) -> list[Word]:
    if tag.kind == "braid":
        return braid_ball(tag, radius)
    return enumerate_ball(tag, radius)


# -- designators ----------------------------------------------------------------


def _split_args(body: str) -> list[str]:
    parts, depth, cur = [], 0, ""
    for ch in body:
        if ch == "," and depth == 0:
            parts.append(cur)
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    parts.append(cur)
    return [p.strip() for p in parts]


def parse_ordering(text: str) -> Ordering:
    """Parse a designator such as ``dd:3``, ``klein:+-`` or ``conj(exoticC,xY)``."""
    text = text.strip()
    try:
        if text.startswith(("conj(", "ext(", "rev(")) and text.endswith(")"):
            head, body = text.split("(", 1)
            args = _split_args(body[:-1])
            if head == "conj" and len(args) == 2:
                base = parse_ordering(args[0])
                return conjugate_ordering(base, parse_word(args[1], base.tag))
            if head == "ext" and len(args) == 3:
                return convex_extension(parse_ordering(args[0]), Subgroup(args[1]), parse_ordering(args[2]))
            if head == "rev" and len(args) == 1:
                return Opposite(parse_ordering(args[0]))
        elif text.startswith("dehornoy:"):
            return Dehornoy(int(text.split(":")[1]))
        elif text.startswith("dd:"):
            return DD(int(text.split(":")[1]))
        elif text == "exoticC":
            return EXOTIC_C
        elif text.startswith("klein:") and len(text) == 8:
            signs = [{"+": 1, "-": -1}[c] for c in text[6:]]
            return KleinCone(*signs)
    except (KeyError, ValueError) as exc:
        raise OrderingError(f"bad ordering designator {text!r}: {exc}") from exc
    raise OrderingError(f"bad ordering designator {text!r}")
