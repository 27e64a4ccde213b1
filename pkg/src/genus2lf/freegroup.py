"""Reduced words and automorphisms of finite-rank free groups.

Letters use the Tietze convention: ``i`` is the generator ``x_i`` and ``-i``
its inverse, for ``1 <= i <= rank``.  Every :class:`Word` is freely reduced
on construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


def reduce_letters(letters: Iterable[int]) -> tuple[int, ...]:
    """Single-pass stack reduction of a raw letter sequence."""
    out: list[int] = []
    for a in letters:
        if a == 0:
            raise ValueError("0 is not a letter")
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def invert_letters(letters: Sequence[int]) -> tuple[int, ...]:
    return tuple(-a for a in reversed(letters))


@dataclass(frozen=True)
class Letter:
    generator_index: int
    sign: int

    def __post_init__(self):
        if self.generator_index < 1:
            raise ValueError("generator index must be positive")
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")

    def __int__(self) -> int:
        return self.sign * self.generator_index

    @classmethod
    def from_int(cls, a: int) -> "Letter":
        return cls(abs(a), 1 if a > 0 else -1)


class Word:
    """An immutable freely reduced word."""

    __slots__ = ("letters", "_hash")

    def __init__(self, letters: Iterable[int] = (), *, reduced: bool = False):
        letters = [int(a) for a in letters]
        self.letters: tuple[int, ...] = tuple(letters) if reduced else reduce_letters(letters)
        self._hash = None

    @classmethod
    def generator(cls, i: int) -> "Word":
        return cls((i,), reduced=True)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __eq__(self, other) -> bool:
        if isinstance(other, Word):
            return self.letters == other.letters
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.letters)
        return self._hash

    def __mul__(self, other: "Word") -> "Word":
        a, b = self.letters, other.letters
        k = 0
        m = min(len(a), len(b))
        while k < m and a[-1 - k] == -b[k]:
            k += 1
        return Word(a[: len(a) - k] + b[k:], reduced=True)

    def __invert__(self) -> "Word":
        return Word(invert_letters(self.letters), reduced=True)

    def inverse(self) -> "Word":
        return ~self

    def __pow__(self, n: int) -> "Word":
        if n < 0:
            return (~self) ** (-n)
        core, conj = cyclically_reduce(self)
        return Word(conj.letters + core.letters * n + invert_letters(conj.letters))

    def rank_needed(self) -> int:
        return max((abs(a) for a in self.letters), default=0)

    def __repr__(self) -> str:
        return f"Word({list(self.letters)})"

    def __str__(self) -> str:
        if not self.letters:
            return "1"
        return " ".join(f"x{a}" if a > 0 else f"x{-a}^-1" for a in self.letters)


IDENTITY_WORD = Word()


def reduce(letters: Iterable[int]) -> Word:
    return Word(letters)


def cyclically_reduce(w: Word) -> tuple[Word, Word]:
    """Return ``(core, conjugator)`` with ``w = conjugator * core * conjugator^-1``."""
    a = w.letters
    i, j = 0, len(a) - 1
    while i < j and a[i] == -a[j]:
        i += 1
        j -= 1
    return Word(a[i : j + 1], reduced=True), Word(a[:i], reduced=True)


def conjugate(g: Word, w: Word) -> Word:
    """``g w g^-1``."""
    return g * w * ~g


def is_conjugate(u: Word, v: Word) -> Optional[Word]:
    """A word ``g`` with ``u = g v g^-1``, or ``None``."""
    cu, hu = cyclically_reduce(u)
    cv, hv = cyclically_reduce(v)
    if len(cu) != len(cv):
        return None
    n = len(cu)
    if n == 0:
        return IDENTITY_WORD
    a, b = cu.letters, cv.letters
    # cu = rot_k(cv) = p^-1 cv p where p = cv[:k]; so cv = p cu p^-1
    for k in range(n):
        if b[k:] + b[:k] == a:
            p = Word(b[:k], reduced=True)
            # u = hu cu hu^-1 = hu p^-1 cv p hu^-1 = (hu p^-1 hv^-1) v (...)^-1
            return hu * ~p * ~hv
    return None


class RankMismatch(ValueError):
    pass


class FreeAutomorphism:
    """An endomorphism of the free group given by generator images.

    Instances built by the library come from invertible elementary blocks,
    and carry the images of the inverse automorphism alongside.
    """

    __slots__ = ("rank", "images", "inverse_images")

    def __init__(
        self,
        images: Sequence[Word],
        inverse_images: Optional[Sequence[Word]] = None,
    ):
        self.images = tuple(w if isinstance(w, Word) else Word(w) for w in images)
        self.rank = len(self.images)
        self.inverse_images = (
            None
            if inverse_images is None
            else tuple(w if isinstance(w, Word) else Word(w) for w in inverse_images)
        )
        for w in self.images + (self.inverse_images or ()):
            if w.rank_needed() > self.rank:
                raise RankMismatch("image uses a generator beyond the rank")

    @classmethod
    def identity(cls, rank: int) -> "FreeAutomorphism":
        gens = [Word.generator(i) for i in range(1, rank + 1)]
        return cls(gens, gens)

    @classmethod
    def conjugation(cls, g: Word, rank: int) -> "FreeAutomorphism":
        if g.rank_needed() > rank:
            raise RankMismatch("conjugator uses a generator beyond the rank")
        gi = ~g
        return cls(
            [conjugate(g, Word.generator(i)) for i in range(1, rank + 1)],
            [conjugate(gi, Word.generator(i)) for i in range(1, rank + 1)],
        )

    def __call__(self, w: Word) -> Word:
        return apply(self, w)

    def __mul__(self, other: "FreeAutomorphism") -> "FreeAutomorphism":
        return compose(self, other)

    def inverse(self) -> "FreeAutomorphism":
        if self.inverse_images is None:
            raise ValueError("inverse images unknown")
        return FreeAutomorphism(self.inverse_images, self.images)

    def is_identity(self) -> bool:
        return all(w.letters == (i,) for i, w in enumerate(self.images, 1))

    def __eq__(self, other) -> bool:
        if isinstance(other, FreeAutomorphism):
            return self.images == other.images
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        body = ", ".join(f"x{i} -> {w}" for i, w in enumerate(self.images, 1))
        return f"FreeAutomorphism({body})"


def substitute(images: Sequence[Word], w: Word) -> Word:
    """Image of ``w`` under the endomorphism sending ``x_i`` to ``images[i-1]``."""
    inv = [None] * len(images)
    out: list[int] = []
    for a in w.letters:
        if a > 0:
            piece = images[a - 1].letters
        else:
            if inv[-a - 1] is None:
                inv[-a - 1] = invert_letters(images[-a - 1].letters)
            piece = inv[-a - 1]
        for b in piece:
            if out and out[-1] == -b:
                out.pop()
            else:
                out.append(b)
    return Word(out, reduced=True)


def apply(f: FreeAutomorphism, w: Word) -> Word:
    if w.rank_needed() > f.rank:
        raise RankMismatch(f"word needs rank {w.rank_needed()}, automorphism has {f.rank}")
    return substitute(f.images, w)


def compose(f: FreeAutomorphism, g: FreeAutomorphism) -> FreeAutomorphism:
    """``f o g``: the automorphism ``x -> f(g(x))``."""
    if f.rank != g.rank:
        raise RankMismatch(f"rank {f.rank} vs {g.rank}")
    images = [substitute(f.images, w) for w in g.images]
    inverse_images = None
    if f.inverse_images is not None and g.inverse_images is not None:
        inverse_images = [substitute(g.inverse_images, w) for w in f.inverse_images]
    return FreeAutomorphism(images, inverse_images)


def _leading_power(letters: Sequence[int], a: int) -> int:
    """Signed length of the maximal prefix of ``letters`` that is a power of ``x_a``."""
    if not letters or abs(letters[0]) != a:
        return 0
    s = letters[0]
    k = 0
    while k < len(letters) and letters[k] == s:
        k += 1
    return k if s > 0 else -k


def inner_conjugator(images: Sequence[Word]) -> Optional[Word]:
    """A word ``g`` with ``images[i-1] = g x_i g^-1`` for all ``i``, or ``None``."""
    rank = len(images)
    core, h = cyclically_reduce(images[0])
    if core.letters != (1,):
        return None
    if rank == 1:
        return h
    # Solutions of f(x1) = g x1 g^-1 are g = h x1^k.  Read k off h^-1 f(x2) h,
    # which must equal x1^k x2 x1^-k.
    t = (~h * images[1] * h).letters
    k = _leading_power(t, 1)
    g = h * Word((1,) * k if k >= 0 else (-1,) * (-k), reduced=True)
    for i, w in enumerate(images, 1):
        if conjugate(g, Word.generator(i)) != w:
            return None
    return g


def is_inner(f: FreeAutomorphism) -> Optional[Word]:
    return inner_conjugator(f.images)
