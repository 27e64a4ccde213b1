"""The genus-2 mapping class group on the chain generators g1..g5.

``g_i`` is the right-handed Dehn twist about the chain curve ``c_i``
(consecutive chain curves meet once, the others are disjoint).

Conventions
-----------
A :class:`MappingClassWord` ``a1 a2 ... aN`` denotes the composite
``a1 o a2 o ... o aN``: the rightmost syllable acts first.  This is the only
place the convention enters; twists along transported curves then obey
``t_{w(c)} = w t_c w^-1`` and curve transport is ``w(c)``.

Identity test
-------------
The genus-2 mapping class group is its own hyperelliptic subgroup, so the
Birman-Hilden map onto the mapping class group of the sphere with six marked
points is surjective with kernel generated by the hyperelliptic involution.
Under it ``g_i`` goes to the half-twist ``sigma_i`` swapping points ``i`` and
``i+1``, which acts on ``pi_1 = <x1..x6 | x1...x6 = 1>`` by the Artin
substitution; eliminating ``x6`` gives an action on the free group of rank 5.
The punctured-sphere mapping class group acts faithfully by outer
automorphisms, so a word whose image is inner is trivial or the
hyperelliptic involution, and the homology action (``+I`` or ``-I``) tells
the two apart.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .freegroup import FreeAutomorphism, Word, inner_conjugator, substitute

NUM_GENERATORS = 5
RANK = 5


class MappingClassWord:
    """Reduced syllable word ``[(index, exponent), ...]`` in g1..g5."""

    __slots__ = ("syllables",)

    def __init__(self, syllables: Iterable[Sequence[int]] = ()):
        out: list[list[int]] = []
        for i, e in syllables:
            i, e = int(i), int(e)
            if not 1 <= i <= NUM_GENERATORS:
                raise ValueError(f"generator index {i} out of range 1..{NUM_GENERATORS}")
            if e == 0:
                continue
            if out and out[-1][0] == i:
                out[-1][1] += e
                if out[-1][1] == 0:
                    out.pop()
            else:
                out.append([i, e])
        self.syllables: tuple[tuple[int, int], ...] = tuple((i, e) for i, e in out)

    @classmethod
    def parse(cls, text: str) -> "MappingClassWord":
        """Parse ``"g1 g2^-1 g3^2"``; ``"1"`` or ``""`` is the empty word."""
        syl = []
        for tok in text.split():
            if tok == "1":
                continue
            base, _, exp = tok.partition("^")
            if not base.startswith("g"):
                raise ValueError(f"bad token {tok!r}")
            syl.append((int(base[1:]), int(exp) if exp else 1))
        return cls(syl)

    @classmethod
    def gen(cls, i: int, e: int = 1) -> "MappingClassWord":
        return cls([(i, e)])

    def __mul__(self, other: "MappingClassWord") -> "MappingClassWord":
        return MappingClassWord(self.syllables + other.syllables)

    def __invert__(self) -> "MappingClassWord":
        return MappingClassWord((i, -e) for i, e in reversed(self.syllables))

    def inverse(self) -> "MappingClassWord":
        return ~self

    def __pow__(self, n: int) -> "MappingClassWord":
        if n < 0:
            return (~self) ** (-n)
        return MappingClassWord(self.syllables * n)

    def __len__(self) -> int:
        return len(self.syllables)

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def letter_length(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __eq__(self, other) -> bool:
        if isinstance(other, MappingClassWord):
            return self.syllables == other.syllables
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.syllables)

    def to_json(self) -> list[list[int]]:
        return [[i, e] for i, e in self.syllables]

    @classmethod
    def from_json(cls, data) -> "MappingClassWord":
        if not isinstance(data, list):
            raise ValueError("mapping class word must be a list of [index, exponent] pairs")
        syl = []
        for item in data:
            if (
                not isinstance(item, list)
                or len(item) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in item)
            ):
                raise ValueError(f"bad syllable {item!r}")
            if item[1] == 0:
                raise ValueError("zero exponent in syllable")
            syl.append(item)
        return cls(syl)

    def __str__(self) -> str:
        if not self.syllables:
            return "1"
        return " ".join(f"g{i}" if e == 1 else f"g{i}^{e}" for i, e in self.syllables)

    def __repr__(self) -> str:
        return f"MappingClassWord({self})"


EMPTY = MappingClassWord()


def w(text: str) -> MappingClassWord:
    return MappingClassWord.parse(text)


# --- homology ------------------------------------------------------------

# Ordered basis (A1, B1, A2, B2); <A_i, B_i> = 1.
J = ((0, 1, 0, 0), (-1, 0, 0, 0), (0, 0, 0, 1), (0, 0, -1, 0))
IDENTITY4 = tuple(tuple(int(i == j) for j in range(4)) for i in range(4))
MINUS_IDENTITY4 = tuple(tuple(-int(i == j) for j in range(4)) for i in range(4))

CHAIN_CLASSES = {
    1: (1, 0, 0, 0),  # A1
    2: (0, 1, 0, 0),  # B1
    3: (1, 0, 1, 0),  # A1 + A2
    4: (0, 0, 0, 1),  # B2
    5: (0, 0, 1, 0),  # A2
}

Matrix = tuple  # 4x4 tuple of tuples of int
Vector = tuple


def intersection_form(u: Vector, v: Vector) -> int:
    return u[0] * v[1] - u[1] * v[0] + u[2] * v[3] - u[3] * v[2]


def transvection(c: Vector, power: int = 1) -> Matrix:
    """Matrix of ``v -> v + power * <v, c> c``.

    This is the homology action of ``t_c^power`` with the orientation
    convention used throughout; ``+power`` is the right-handed twist.
    """
    cols = []
    for k in range(4):
        e = tuple(int(i == k) for i in range(4))
        p = power * intersection_form(e, c)
        cols.append(tuple(e[i] + p * c[i] for i in range(4)))
    return tuple(tuple(cols[j][i] for j in range(4)) for i in range(4))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(4)) for j in range(4)) for i in range(4)
    )


def matvec(a: Matrix, v: Vector) -> Vector:
    return tuple(sum(a[i][k] * v[k] for k in range(4)) for i in range(4))


def is_symplectic(m: Matrix) -> bool:
    mt = tuple(tuple(m[j][i] for j in range(4)) for i in range(4))
    return matmul(matmul(mt, J), m) == J


@lru_cache(maxsize=None)
def _generator_matrix(i: int, e: int) -> Matrix:
    return transvection(CHAIN_CLASSES[i], e)


def homology_action(word: MappingClassWord) -> Matrix:
    m = IDENTITY4
    for i, e in word.syllables:
        m = matmul(m, _generator_matrix(i, e))
    return m


# --- action on the free group of the six-times marked sphere ---------------


def _g(*letters: int) -> Word:
    return Word(letters)


def _half_twist(i: int) -> FreeAutomorphism:
    """Artin half-twist sigma_i on F5 (with x6 = (x1 x2 x3 x4 x5)^-1)."""
    images = [Word.generator(k) for k in range(1, RANK + 1)]
    inverse = list(images)
    if i < 5:
        images[i - 1] = _g(i, i + 1, -i)
        images[i] = _g(i)
        inverse[i - 1] = _g(i + 1)
        inverse[i] = _g(-(i + 1), i, i + 1)
    else:
        images[4] = _g(-4, -3, -2, -1, -5)
        inverse[4] = _g(-5, -4, -3, -2, -1)
    return FreeAutomorphism(images, inverse)


HALF_TWISTS = {i: _half_twist(i) for i in range(1, NUM_GENERATORS + 1)}


def _step(images: list[Word], i: int, e: int) -> list[Word]:
    """Replace ``images`` (of some automorphism h) by those of ``rho(g_i^e) o h``."""
    f = HALF_TWISTS[i]
    table = f.images if e > 0 else f.inverse_images
    for _ in range(abs(e)):
        images = [substitute(table, x) for x in images]
    return images


def generator_images(word: MappingClassWord) -> tuple[Word, ...]:
    """Images of x1..x5 under the free-group action of ``word``.

    Evaluated innermost first, one elementary substitution per step.
    """
    images = [Word.generator(k) for k in range(1, RANK + 1)]
    for i, e in reversed(word.syllables):
        images = _step(images, i, e)
    return tuple(images)


def bh_automorphism(word: MappingClassWord) -> FreeAutomorphism:
    inv = generator_images(~word)
    return FreeAutomorphism(generator_images(word), inv)


# --- identity test ------------------------------------------------------------


class Verdict(str, Enum):
    IDENTITY = "Identity"
    HYPERELLIPTIC = "HyperellipticInvolution"
    NOT_IDENTITY = "NotIdentity"


@dataclass(frozen=True)
class IdentityCertificate:
    verdict: Verdict
    homology_check: Matrix
    innerness_conjugator: Optional[Word] = None

    @property
    def is_identity(self) -> bool:
        return self.verdict is Verdict.IDENTITY

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "homology_check": [list(r) for r in self.homology_check],
            "innerness_conjugator": (
                None if self.innerness_conjugator is None else list(self.innerness_conjugator.letters)
            ),
        }


def is_identity(word: MappingClassWord) -> IdentityCertificate:
    hom = homology_action(word)
    if hom != IDENTITY4 and hom != MINUS_IDENTITY4:
        return IdentityCertificate(Verdict.NOT_IDENTITY, hom, None)
    g = inner_conjugator(generator_images(word))
    if g is None:
        return IdentityCertificate(Verdict.NOT_IDENTITY, hom, None)
    v = Verdict.IDENTITY if hom == IDENTITY4 else Verdict.HYPERELLIPTIC
    return IdentityCertificate(v, hom, g)


def words_equal(u: MappingClassWord, v: MappingClassWord) -> bool:
    return is_identity(u * ~v).is_identity


# --- curves -------------------------------------------------------------------

BASES = ("C1", "C2", "C3", "C4", "C5", "S0")
SEPARATING_TWIST = MappingClassWord([(1, 1), (2, 1)] * 6)


@dataclass(frozen=True)
class Curve:
    """The simple closed curve ``transporter(base)``.

    ``S0`` bounds the torus neighbourhood of ``c1 u c2``; its twist is
    ``(g1 g2)^6``.
    """

    base: str
    transporter: MappingClassWord = field(default=EMPTY)

    def __post_init__(self):
        if self.base not in BASES:
            raise ValueError(f"unknown base curve {self.base!r}")

    @classmethod
    def chain(cls, i: int, transporter: MappingClassWord = EMPTY) -> "Curve":
        return cls(f"C{i}", transporter)

    @property
    def separating(self) -> bool:
        return self.base == "S0"

    def base_twist(self) -> MappingClassWord:
        if self.base == "S0":
            return SEPARATING_TWIST
        return MappingClassWord.gen(int(self.base[1]))

    def to_json(self) -> dict:
        return {"transporter": self.transporter.to_json(), "base": self.base}

    @classmethod
    def from_json(cls, data) -> "Curve":
        if not isinstance(data, dict) or set(data) != {"transporter", "base"}:
            raise ValueError(f"bad curve object {data!r}")
        return cls(data["base"], MappingClassWord.from_json(data["transporter"]))

    def __str__(self) -> str:
        if not self.transporter:
            return self.base
        return f"({self.transporter})({self.base})"


def expand_twist(c: Curve, exponent: int = 1) -> MappingClassWord:
    if exponent == 0:
        raise ValueError("twist exponent must be nonzero")
    return c.transporter * c.base_twist() ** exponent * ~c.transporter


def apply_to_curve(word: MappingClassWord, c: Curve) -> Curve:
    return Curve(c.base, word * c.transporter)


def curve_equal(c: Curve, d: Curve) -> bool:
    if c.separating != d.separating:
        return False
    if c == d:
        return True
    if curve_class(c) not in (curve_class(d), tuple(-x for x in curve_class(d))):
        return False
    return words_equal(expand_twist(c), expand_twist(d))


def curve_class(c: Curve) -> Vector:
    if c.separating:
        return (0, 0, 0, 0)
    return matvec(homology_action(c.transporter), CHAIN_CLASSES[int(c.base[1])])


def is_separating(c: Curve) -> bool:
    return c.separating


def twists_commute(c: Curve, d: Curve) -> bool:
    """Commuting twists; for simple closed curves this is disjointness."""
    a, b = expand_twist(c), expand_twist(d)
    return words_equal(a * b, b * a)


def standard_transporter(i: int, j: int) -> MappingClassWord:
    """A word carrying chain curve ``C_i`` onto ``C_j``.

    Built from the adjacent steps ``g_k g_{k+1} (C_k) = C_{k+1}`` and
    ``g_{k+1} g_k (C_{k+1}) = C_k``.
    """
    for k in (i, j):
        if not 1 <= k <= NUM_GENERATORS:
            raise ValueError(f"chain index {k} out of range")
    out = EMPTY
    if j > i:
        for k in range(i, j):
            out = MappingClassWord([(k, 1), (k + 1, 1)]) * out
    else:
        for k in range(i, j, -1):
            out = MappingClassWord([(k, 1), (k - 1, 1)]) * out
    return out
