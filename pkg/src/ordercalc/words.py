"""Freely reduced words in the three built-in groups.

Letters are stored as signed integers: ``+i`` is the i-th generator and
``-i`` its inverse.  For braid groups ``i`` is the index of sigma_i; for the
free group ``x = 1, y = 2``; for the Klein-bottle group ``a = 1, b = 2``
(relation ``b a b^-1 = a^-1``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Callable, Hashable, Iterable, Iterator, NamedTuple, Optional, Sequence


class WordError(ValueError):
    """Bad token, out-of-range generator, or mixed groups."""


@dataclass(frozen=True, order=True)
class GroupTag:
    kind: str  # "braid" | "free2" | "klein"
    n: int = 0  # strand count for braids

    def __post_init__(self):
        if self.kind not in ("braid", "free2", "klein"):
            raise WordError(f"unknown group kind {self.kind!r}")
        if self.kind == "braid" and self.n < 2:
            raise WordError("a braid group needs at least 2 strands")

    @property
    def rank(self) -> int:
        """Number of generators."""
        return self.n - 1 if self.kind == "braid" else 2

    def __str__(self) -> str:
        if self.kind == "braid":
            return f"B{self.n}"
        return {"free2": "F2", "klein": "K"}[self.kind]


def Braid(n: int) -> GroupTag:
    return GroupTag("braid", n)


FREE2 = GroupTag("free2")
KLEIN = GroupTag("klein")

_SYMBOLS = {"free2": "xy", "klein": "ab"}


class Letter(NamedTuple):
    index: int
    sign: int


def free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    out: list[int] = []
    for a in letters:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def letter_key(a: int) -> tuple[int, int]:
    # generator index first, positive before negative
    return (abs(a), 0 if a > 0 else 1)


@dataclass(frozen=True)
class Word:
    """A freely reduced word.  Construct through ``Word.of`` or ``parse_word``."""

    tag: GroupTag
    letters: tuple[int, ...] = ()

    def __post_init__(self):
        for a in self.letters:
            if a == 0 or abs(a) > self.tag.rank:
                raise WordError(f"generator {a} out of range for {self.tag}")
        for a, b in zip(self.letters, self.letters[1:]):
            if a == -b:
                raise WordError("word is not freely reduced")

    @classmethod
    def of(cls, tag: GroupTag, letters: Iterable[int]) -> Word:
        return cls(tag, free_reduce(letters))

    @classmethod
    def identity(cls, tag: GroupTag) -> Word:
        return cls(tag, ())

    @classmethod
    def generator(cls, tag: GroupTag, index: int, power: int = 1) -> Word:
        a = index if power > 0 else -index
        return cls(tag, (a,) * abs(power))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> Iterator[Letter]:
        for a in self.letters:
            yield Letter(abs(a), 1 if a > 0 else -1)

    def is_identity(self) -> bool:
        return not self.letters

    def _check(self, other: Word) -> None:
        if self.tag != other.tag:
            raise WordError(f"group mismatch: {self.tag} vs {other.tag}")

    @classmethod
    def _trusted(cls, tag: GroupTag, letters: tuple[int, ...]) -> Word:
        # skips validation; callers guarantee a reduced, in-range word
        w = object.__new__(cls)
        object.__setattr__(w, "tag", tag)
        object.__setattr__(w, "letters", letters)
        return w

    def __mul__(self, other: Word) -> Word:
        if self.tag != other.tag:
            self._check(other)
        a, b = self.letters, other.letters
        i = 0
        while i < len(a) and i < len(b) and a[-1 - i] == -b[i]:
            i += 1
        return Word._trusted(self.tag, a[: len(a) - i] + b[i:])

    def __invert__(self) -> Word:
        return Word._trusted(self.tag, tuple(-a for a in reversed(self.letters)))

    def __pow__(self, k: int) -> Word:
        base = self if k >= 0 else ~self
        out = Word.identity(self.tag)
        for _ in range(abs(k)):
            out = out * base
        return out

    def canonical_key(self) -> tuple:
        return (len(self.letters), tuple(letter_key(a) for a in self.letters))

    def tokens(self) -> list[str]:
        return [_token(self.tag, a) for a in self.letters]

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        sep = " " if self.tag.kind == "braid" else ""
        return sep.join(self.tokens())

    def __repr__(self) -> str:
        return f"Word({self.tag}, {str(self)!r})"


def _token(tag: GroupTag, a: int) -> str:
    if tag.kind == "braid":
        return ("s" if a > 0 else "S") + str(abs(a))
    c = _SYMBOLS[tag.kind][abs(a) - 1]
    return c if a > 0 else c.upper()


_BRAID_TOKEN = re.compile(r"([sS])(\d+)")


def parse_word(text: str, tag: GroupTag) -> Word:
    """Parse ``"s1 S2"`` / ``"xyXY"`` / ``"a B"`` style input; ``"1"`` or ``""`` is the identity."""
    text = text.strip()
    if text in ("", "1", "e"):
        return Word.identity(tag)
    letters: list[int] = []
    if tag.kind == "braid":
        compact = text.replace(" ", "").replace(",", "")
        pos = 0
        while pos < len(compact):
            m = _BRAID_TOKEN.match(compact, pos)
            if not m:
                raise WordError(f"bad token at {compact[pos:]!r}")
            i = int(m.group(2))
            if not 1 <= i <= tag.rank:
                raise WordError(f"s{i} out of range for {tag}")
            letters.append(i if m.group(1) == "s" else -i)
            pos = m.end()
    else:
        symbols = _SYMBOLS[tag.kind]
        for ch in text:
            if ch in " ,":
                continue
            if ch in symbols:
                letters.append(symbols.index(ch) + 1)
            elif ch.lower() in symbols:
                letters.append(-(symbols.index(ch.lower()) + 1))
            else:
                raise WordError(f"bad token {ch!r} for {tag}")
    return Word.of(tag, letters)


def multiply(w1: Word, w2: Word) -> Word:
    return w1 * w2


def invert(w: Word) -> Word:
    return ~w


def conjugate(w: Word, h: Word) -> Word:
    """h w h^-1."""
    return h * w * ~h


def product(words: Sequence[Word]) -> Word:
    out = words[0]
    for w in words[1:]:
        out = out * w
    return out


# -- Klein-bottle group -------------------------------------------------------


class KleinNormalForm(NamedTuple):
    """The element a^m b^n."""

    m: int
    n: int

    def __mul__(self, other: KleinNormalForm) -> KleinNormalForm:
        p, q = other
        return KleinNormalForm(self.m + (-1) ** (self.n % 2) * p, self.n + q)


def klein_normal_form(w: Word) -> KleinNormalForm:
    if w.tag != KLEIN:
        raise WordError(f"klein_normal_form expects a Klein word, got {w.tag}")
    m = n = 0
    for a in w.letters:
        if abs(a) == 1:
            # a^m b^n a^s = a^(m + (-1)^n s) b^n
            m += (1 if n % 2 == 0 else -1) * (1 if a > 0 else -1)
        else:
            n += 1 if a > 0 else -1
    return KleinNormalForm(m, n)


def klein_word(m: int, n: int) -> Word:
    return Word.generator(KLEIN, 1, m) * Word.generator(KLEIN, 2, n)


# -- balls --------------------------------------------------------------------


def _default_key(tag: GroupTag) -> Optional[Callable[[Word], Hashable]]:
    if tag == FREE2:
        return lambda w: w.letters
    if tag == KLEIN:
        return klein_normal_form
    return None


def enumerate_ball(
    tag: GroupTag,
    radius: int,
    word_problem: Optional[Callable[[Word, Word], bool]] = None,
    key: Optional[Callable[[Word], Hashable]] = None,
) -> list[Word]:
    """One canonical word per element of length <= radius, in canonical order.

    The representative is the least word in (length, token order) among all
    words for the element.  ``key`` is an exact element invariant (faster);
    ``word_problem`` is a pairwise equality oracle.  Braid groups need one
    of the two.
    """
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    if key is None and word_problem is None:
        key = _default_key(tag)
        if key is None:
            raise WordError(f"enumerating a ball in {tag} needs a word-problem oracle")
    gens = sorted(
        [i for i in range(1, tag.rank + 1)] + [-i for i in range(1, tag.rank + 1)],
        key=letter_key,
    )
    one = Word.identity(tag)
    ball = [one]
    seen_keys = {key(one)} if key else None
    layer = [one]
    for _ in range(radius):
        nxt = []
        for w in layer:
            for a in gens:
                if w.letters and w.letters[-1] == -a:
                    continue
                cand = Word(tag, w.letters + (a,))
                if key is not None:
                    k = key(cand)
                    if k in seen_keys:
                        continue
                    seen_keys.add(k)
                else:
                    if any(word_problem(cand, old) for old in ball):
                        continue
                ball.append(cand)
                nxt.append(cand)
        layer = sorted(nxt, key=Word.canonical_key)
    return sorted(ball, key=Word.canonical_key)
