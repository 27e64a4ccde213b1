"""Positive factorizations of the identity in the genus-2 mapping class group.

A factorization is a sequence of curves ``v1 ... vm``; it stands for the
word ``t_v1 t_v2 ... t_vm`` of right-handed twists.  Every move here returns
a new value, and moves that can break the product either re-verify or say
in their docstring why they cannot.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .mcg import (
    EMPTY,
    Curve,
    IdentityCertificate,
    MappingClassWord,
    Verdict,
    apply_to_curve,
    curve_class,
    curve_equal,
    expand_twist,
    is_identity,
    standard_transporter,
    twists_commute,
)

ENGINE_VERSION = "genus2lf-engine/1"


class FactorizationError(ValueError):
    """A precondition of a factorization move failed.

    ``code`` is a short stable tag, used by the CLI for exit codes and
    diagnostics.
    """

    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


@dataclass(frozen=True)
class FibrationType:
    n: int
    s: int

    def __post_init__(self):
        if self.n < 0 or self.s < 0:
            raise ValueError("fibration type counts must be nonnegative")

    def __add__(self, other: "FibrationType") -> "FibrationType":
        return FibrationType(self.n + other.n, self.s + other.s)

    def __iter__(self):
        return iter((self.n, self.s))

    def __str__(self) -> str:
        return f"({self.n},{self.s})"


@dataclass(frozen=True)
class PositiveFactorization:
    letters: tuple[Curve, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __getitem__(self, i):
        return self.letters[i]

    def __add__(self, other: "PositiveFactorization") -> "PositiveFactorization":
        return PositiveFactorization(self.letters + other.letters)

    def product(self) -> MappingClassWord:
        out = EMPTY
        for c in self.letters:
            out = out * expand_twist(c, 1)
        return out

    def to_json(self) -> dict:
        return {"letters": [c.to_json() for c in self.letters]}

    @classmethod
    def from_json(cls, data) -> "PositiveFactorization":
        if not isinstance(data, dict) or not isinstance(data.get("letters"), list):
            raise ValueError("factorization must be an object with a 'letters' list")
        return cls(tuple(Curve.from_json(c) for c in data["letters"]))

    def __str__(self) -> str:
        return " ".join(f"t[{c}]" for c in self.letters) or "(empty)"


def same_letters(p: PositiveFactorization, q: PositiveFactorization) -> bool:
    """Letterwise equality up to isotopy of curves."""
    return len(p) == len(q) and all(curve_equal(a, b) for a, b in zip(p, q))


def type_of(pf: PositiveFactorization) -> FibrationType:
    s = sum(1 for c in pf if c.separating)
    return FibrationType(len(pf) - s, s)


def verify(pf: PositiveFactorization) -> IdentityCertificate:
    return is_identity(pf.product())


def _require_verified(pf: PositiveFactorization, what: str = "input") -> None:
    cert = verify(pf)
    if cert.verdict is not Verdict.IDENTITY:
        raise FactorizationError("unverified", f"{what} has verdict {cert.verdict.value}")


# --- moves --------------------------------------------------------------------


def cyclic_permute(pf: PositiveFactorization, k: int) -> PositiveFactorization:
    """Rotate left by ``k``: ``(v1..vm) -> (v_{k+1}..vm, v1..vk)``.

    A rotation conjugates the product by a prefix, so identity is kept.
    """
    m = len(pf)
    if m == 0:
        return pf
    k %= m
    return PositiveFactorization(pf.letters[k:] + pf.letters[:k])


def hurwitz_move(pf: PositiveFactorization, i: int, direction: int = 1) -> PositiveFactorization:
    """Elementary braid move at letters ``i, i+1`` (1-based).

    ``direction=+1``: ``(a, b) -> (t_a(b), a)``;
    ``direction=-1``: ``(a, b) -> (b, t_b^-1(a))``.  The two are inverse.
    """
    m = len(pf)
    if not 1 <= i < m:
        raise FactorizationError("index", f"Hurwitz move at {i} needs 1 <= i < {m}")
    if direction not in (1, -1):
        raise FactorizationError("direction", "direction must be +1 or -1")
    letters = list(pf.letters)
    a, b = letters[i - 1], letters[i]
    if direction == 1:
        letters[i - 1 : i + 1] = [apply_to_curve(expand_twist(a, 1), b), a]
    else:
        letters[i - 1 : i + 1] = [b, apply_to_curve(expand_twist(b, -1), a)]
    return PositiveFactorization(tuple(letters))


def global_conjugate(pf: PositiveFactorization, u: MappingClassWord) -> PositiveFactorization:
    """Replace every letter ``v`` by ``u(v)``; the product becomes ``u P u^-1``."""
    return PositiveFactorization(tuple(apply_to_curve(u, c) for c in pf))


def fiber_sum(
    pf1: PositiveFactorization,
    pf2: PositiveFactorization,
    twist: Optional[MappingClassWord] = None,
) -> PositiveFactorization:
    _require_verified(pf1, "first summand")
    _require_verified(pf2, "second summand")
    if twist is not None:
        pf2 = global_conjugate(pf2, twist)
    return pf1 + pf2


def square_swap(pf: PositiveFactorization) -> tuple[PositiveFactorization, PositiveFactorization]:
    """From ``v1 U = 1`` build ``U U v1 v1`` and ``v1 v1 U U``.

    ``U = t_v1^-1`` commutes with ``t_v1``, so both squares are trivial.
    """
    if len(pf) == 0:
        raise FactorizationError("empty", "square_swap needs at least one letter")
    _require_verified(pf)
    v1, rest = pf.letters[0], pf.letters[1:]
    first = PositiveFactorization(rest + rest + (v1, v1))
    second = PositiveFactorization((v1, v1) + rest + rest)
    return first, second


# --- lantern ------------------------------------------------------------------


@dataclass(frozen=True)
class LanternCheck:
    boundary_commutes: bool
    relation_identity: bool
    interior_types: bool

    @property
    def ok(self) -> bool:
        return self.boundary_commutes and self.relation_identity and self.interior_types

    def to_json(self) -> dict:
        return {
            "boundary_commutes": self.boundary_commutes,
            "relation_identity": self.relation_identity,
            "interior_types": self.interior_types,
        }


@dataclass(frozen=True)
class LanternConfig:
    """Four boundary curves and three interior curves with
    ``t_d1 t_d2 t_d3 t_d4 = t_x t_y t_z``."""

    boundary: tuple[Curve, Curve, Curve, Curve]
    interior: tuple[Curve, Curve, Curve]

    def __post_init__(self):
        if len(self.boundary) != 4 or len(self.interior) != 3:
            raise ValueError("lantern needs four boundary and three interior curves")
        object.__setattr__(self, "boundary", tuple(self.boundary))
        object.__setattr__(self, "interior", tuple(self.interior))

    def relation_word(self) -> MappingClassWord:
        lhs = PositiveFactorization(self.boundary).product()
        rhs = PositiveFactorization(self.interior).product()
        return lhs * ~rhs

    def check(self) -> LanternCheck:
        d = self.boundary
        commute = all(
            twists_commute(d[i], d[j]) for i in range(4) for j in range(i + 1, 4)
        )
        rel = is_identity(self.relation_word()).is_identity
        x, y, z = self.interior
        kinds = (
            not x.separating
            and not z.separating
            and y.separating
            and any(curve_class(x))
            and any(curve_class(z))
        )
        return LanternCheck(commute, rel, kinds)

    def to_json(self) -> dict:
        return {
            "boundary": [c.to_json() for c in self.boundary],
            "interior": [c.to_json() for c in self.interior],
        }

    @classmethod
    def from_json(cls, data) -> "LanternConfig":
        if not isinstance(data, dict) or "boundary" not in data or "interior" not in data:
            raise ValueError("lantern config needs 'boundary' and 'interior'")
        return cls(
            tuple(Curve.from_json(c) for c in data["boundary"]),
            tuple(Curve.from_json(c) for c in data["interior"]),
        )


def lantern_substitute(
    pf: PositiveFactorization, position: int, cfg: LanternConfig, *, check_config: bool = True
) -> PositiveFactorization:
    """Replace letters ``position..position+3`` (0-based) by ``x, y, z``."""
    if check_config and not cfg.check().ok:
        raise FactorizationError("lantern", "lantern config fails its checks")
    if not 0 <= position <= len(pf) - 4:
        raise FactorizationError("position", f"no four letters at position {position}")
    window = pf.letters[position : position + 4]
    for k, (a, d) in enumerate(zip(window, cfg.boundary)):
        if not curve_equal(a, d):
            raise FactorizationError(
                "boundary", f"letter {position + k} is not the lantern boundary curve {d}"
            )
    letters = pf.letters[:position] + cfg.interior + pf.letters[position + 4 :]
    return PositiveFactorization(letters)


# --- the (4,3) -> (14,13) pipeline ---------------------------------------------


def normalize_first_letter(pf: PositiveFactorization, target: Curve) -> PositiveFactorization:
    """Rotate to a nonseparating first letter, then conjugate it onto ``target``."""
    for k, c in enumerate(pf):
        if not c.separating:
            break
    else:
        raise FactorizationError("no_nonseparating", "every letter is separating")
    pf = cyclic_permute(pf, k)
    a = pf[0]
    if target.separating:
        raise FactorizationError("target", "target curve must be nonseparating")
    # a = w(C_i); carry C_i to the target's base, then along its transporter.
    i, j = int(a.base[1]), int(target.base[1])
    u = target.transporter * standard_transporter(i, j) * ~a.transporter
    out = global_conjugate(pf, u)
    if not curve_equal(out[0], target):
        raise FactorizationError("normalize", "conjugated first letter misses the target")
    return out


def derive_14_13(
    pf43: PositiveFactorization,
    phi: Optional[MappingClassWord] = None,
    cfg: Optional[LanternConfig] = None,
) -> PositiveFactorization:
    """Double a type-(4,3) word and trade ``a1^2 b1^2`` for a lantern.

    Steps: rotate so ``a1`` is nonseparating (and conjugate it to the
    lantern's first boundary curve), square-swap into ``U^2 a1^2`` and
    ``a1^2 U^2``, conjugate the second by ``phi``, concatenate to
    ``U^2 a1^2 b1^2 V^2`` and substitute the lantern in the middle.
    """
    if cfg is None:
        from .data import load_lantern

        cfg = load_lantern()
    if phi is None:
        phi = standard_transporter(1, 5)
    if len(pf43) != 7:
        raise FactorizationError("length", f"seed has {len(pf43)} letters, expected 7")
    if type_of(pf43) != FibrationType(4, 3):
        raise FactorizationError("type", f"seed has type {type_of(pf43)}, expected (4,3)")
    _require_verified(pf43, "seed")
    if not cfg.check().ok:
        raise FactorizationError("lantern", "lantern config fails its checks")
    a1, _, b1, _ = cfg.boundary
    if not (curve_equal(cfg.boundary[1], a1) and curve_equal(cfg.boundary[3], b1)):
        raise FactorizationError("lantern", "boundary is not of the form (a, a, b, b)")
    if not curve_equal(apply_to_curve(phi, a1), b1):
        raise FactorizationError("phi", "phi does not carry a1 onto b1")
    if not twists_commute(a1, b1):
        raise FactorizationError("phi", "a1 and b1 are not disjoint")

    pf = normalize_first_letter(pf43, a1)
    first, second = square_swap(pf)
    second = global_conjugate(second, phi)
    doubled = first + second
    middle = 2 * (len(pf) - 1)
    # the window is (a1, a1, phi(a1), phi(a1)); state it in cfg's own curves
    out = lantern_substitute(doubled, middle, cfg, check_config=False)
    _require_verified(out, "derived factorization")
    return out


# --- stamped files --------------------------------------------------------------


def payload_digest(payload: dict) -> str:
    body = json.dumps(payload, sort_keys=True, separators=(",", ":"))
    return "sha256:" + hashlib.sha256(body.encode()).hexdigest()


def stamp(payload: dict) -> dict:
    """``payload`` plus a ``verified_by`` digest; call only after verifying."""
    body = {k: v for k, v in payload.items() if k != "verified_by"}
    return {**body, "verified_by": {"engine": ENGINE_VERSION, "digest": payload_digest(body)}}


def stamp_matches(data: dict) -> bool:
    st = data.get("verified_by")
    if not isinstance(st, dict):
        return False
    body = {k: v for k, v in data.items() if k != "verified_by"}
    return st.get("digest") == payload_digest(body)


def write_factorization(pf: PositiveFactorization, path: Union[str, Path], extra: Optional[dict] = None) -> dict:
    """Verify, stamp and write; refuses to write anything that fails."""
    _require_verified(pf, "factorization to write")
    payload = pf.to_json()
    payload["type"] = list(type_of(pf))
    if extra:
        payload.update(extra)
    data = stamp(payload)
    Path(path).write_text(json.dumps(data, indent=1) + "\n")
    return data


def read_factorization(path: Union[str, Path], *, gate: bool = True) -> PositiveFactorization:
    data = json.loads(Path(path).read_text())
    pf = PositiveFactorization.from_json(data)
    if gate:
        _require_verified(pf, str(path))
    return pf


def from_curves(curves: Iterable[Curve]) -> PositiveFactorization:
    return PositiveFactorization(tuple(curves))


def chain_factorization(power: int = 6) -> PositiveFactorization:
    """``(t1 t2 t3 t4 t5)^power`` as a letter sequence of chain curves."""
    return PositiveFactorization(tuple(Curve.chain(i) for i in range(1, 6)) * power)


def letters_of_word(word: MappingClassWord) -> Sequence[Curve]:
    """Chain-curve letters of a word with positive exponents only."""
    out = []
    for i, e in word.syllables:
        if e < 0:
            raise ValueError("negative exponent is not a positive letter")
        out.extend([Curve.chain(i)] * e)
    return out
