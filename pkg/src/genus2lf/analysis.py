"""Numerical invariants and geography certificates for genus-2 fibrations.

Everything here is integer arithmetic on types ``(n, s)``.  Certificates
carry their justification as a list of steps, each naming the rule it uses
and the constants it plugs in, so a report can be re-checked offline with
:func:`recheck`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

# Rule names used in justification steps.
MOD10 = "Mod10"
SLOPE = "SlopeBound"
TEN = "TenCase"

# Pairs Sato's theorem allows for a non-minimal genus-2 fibration with b2+ > 1.
SATO_TABLE = frozenset({(14, 3), (16, 2), (28, 1), (30, 0), (40, 0)})
SATO_B2PLUS1_SUMS = frozenset({10, 20})


class Verdict(str, Enum):
    PROVED = "Proved"
    UNKNOWN = "Unknown"


class InadmissibleType(ValueError):
    def __init__(self, report: "AdmissibilityReport"):
        super().__init__(f"type {report.pair} is not admissible: {', '.join(report.violations)}")
        self.report = report


# --- basic invariants ---------------------------------------------------------


def signature(n: int, s: int) -> int:
    num = -(3 * n + s)
    if num % 5:
        raise ValueError(f"signature of ({n},{s}) is not an integer: {num}/5")
    return num // 5


def euler(n: int, s: int) -> int:
    """``e = 2 * (2 - 2g) + (n + s)`` for genus 2 over the sphere."""
    return n + s - 4


def b2minus_lower_bound(s: int) -> int:
    if s < 0:
        raise ValueError("s must be nonnegative")
    return s + 1


@dataclass(frozen=True)
class InvariantsReport:
    n: int
    s: int
    m: int
    euler: int
    signature: int
    k: Optional[int]
    b2plus_assumed: Optional[int] = None
    b2minus_derived: Optional[int] = None
    parity_ok: bool = True

    def to_json(self) -> dict:
        return dict(self.__dict__)


def invariants(n: int, s: int, b2plus: Optional[int] = None) -> InvariantsReport:
    sig = signature(n, s)
    e = euler(n, s)
    k = (n + 2 * s) // 10 if (n + 2 * s) % 10 == 0 else None
    b2m = None if b2plus is None else b2plus - sig
    return InvariantsReport(n, s, n + s, e, sig, k, b2plus, b2m, (e + sig) % 2 == 0)


# --- admissibility ------------------------------------------------------------


@dataclass(frozen=True)
class AdmissibilityReport:
    pair: tuple[int, int]
    passes: bool
    violations: tuple[str, ...]
    k: Optional[int] = None
    slope_chain: Optional[dict] = None

    def to_json(self) -> dict:
        return {
            "pair": list(self.pair),
            "passes": self.passes,
            "violations": list(self.violations),
            "k": self.k,
            "slope_chain": self.slope_chain,
        }


def admissible(n: int, s: int) -> AdmissibilityReport:
    if n < 0 or s < 0 or n + s < 1:
        raise ValueError(f"({n},{s}) is not a nonempty type")
    bad = []
    total = n + 2 * s
    k = total // 10 if total % 10 == 0 else None
    if k is None:
        bad.append(MOD10)
    if 2 * n - 5 < s:
        bad.append(SLOPE)
    if total == 10 and s < 2:
        bad.append(TEN)
    chain = None
    if k is not None:
        # with n = 10k - 2s: 2n - s >= 3 reads 20k - 5s >= 3, i.e. 4k - s >= 3/5,
        # which for integers is 4k - s >= 1, i.e. 2n - s >= 5.
        chain = {
            "2n-s": 2 * n - s,
            "20k-5s": 20 * k - 5 * s,
            "4k-s": 4 * k - s,
            "4k-s>=1": 4 * k - s >= 1,
        }
        assert (4 * k - s >= 1) == (SLOPE not in bad)
    return AdmissibilityReport((n, s), not bad, tuple(bad), k, chain)


def is_admissible(n: int, s: int) -> bool:
    return n >= 0 and s >= 0 and n + s >= 1 and admissible(n, s).passes


def _require_admissible(n: int, s: int) -> AdmissibilityReport:
    rep = admissible(n, s)
    if not rep.passes:
        raise InadmissibleType(rep)
    return rep


def sato_oracle(n: int, s: int) -> dict:
    return {
        "table_hit": (n, s) in SATO_TABLE,
        "b2plus1_possible": n + 2 * s in SATO_B2PLUS1_SUMS,
    }


# --- certificates -------------------------------------------------------------


@dataclass(frozen=True)
class Step:
    rule: str
    detail: str
    data: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"rule": self.rule, "detail": self.detail, "data": self.data}


@dataclass(frozen=True)
class Certificate:
    claim: str
    verdict: Verdict
    justification: tuple[Step, ...]
    pair: Optional[tuple[int, int]] = None
    extra: dict = field(default_factory=dict)

    @property
    def proved(self) -> bool:
        return self.verdict is Verdict.PROVED

    def to_json(self) -> dict:
        return {
            "claim": self.claim,
            "pair": None if self.pair is None else list(self.pair),
            "verdict": self.verdict.value,
            "justification": [st.to_json() for st in self.justification],
            **({"extra": self.extra} if self.extra else {}),
        }


def certify_minimal(n: int, s: int) -> Certificate:
    """Minimality via Sato's list and, when ``b2+ = 1`` is possible, the
    separating-fibre bound on ``b2-``."""
    rep = _require_admissible(n, s)
    steps = [Step("Lemma1", "type is admissible", {"k": rep.k})]
    sig = signature(n, s)
    steps.append(Step("Signature", "sigma = -(3n+s)/5", {"sigma": sig}))
    oracle = sato_oracle(n, s)
    steps.append(Step("SatoTable", "non-minimal types with b2+ > 1 are listed", {
        "table": sorted(SATO_TABLE), "table_hit": oracle["table_hit"],
    }))
    if oracle["table_hit"]:
        steps.append(Step("Stop", "type appears in the table; no conclusion"))
        return Certificate("minimal", Verdict.UNKNOWN, tuple(steps), (n, s))
    steps.append(Step("SatoB2plus1", "b2+ = 1 is possible only when n+2s is 10 or 20", {
        "n+2s": n + 2 * s, "b2plus1_possible": oracle["b2plus1_possible"],
    }))
    if not oracle["b2plus1_possible"]:
        steps.append(Step("Conclude", "neither branch of the theorem applies, so minimal"))
        return Certificate("minimal", Verdict.PROVED, tuple(steps), (n, s))
    # b2+ = 1 branch: b2- = 1 - sigma must reach the separating-fibre bound.
    b2m = 1 - sig
    bound = b2minus_lower_bound(s)
    steps.append(Step("B2minusBound", "b2- >= s + 1 (the in-proof bound is b2- >= s)", {
        "b2minus_if_b2plus_1": b2m, "bound": bound, "weak_bound": s,
    }))
    if b2m < bound:
        steps.append(Step("Conclude", "b2+ = 1 forces b2- below the bound, so minimal", {
            "3n<4s": 3 * n < 4 * s,
        }))
        return Certificate("minimal", Verdict.PROVED, tuple(steps), (n, s))
    steps.append(Step("Stop", "b2+ = 1 is not excluded"))
    return Certificate("minimal", Verdict.UNKNOWN, tuple(steps), (n, s))


def is_summand(n: int, s: int) -> bool:
    """A possible fibre-sum summand: admissible with ``n + 2s >= 10``."""
    return n + s >= 1 and n + 2 * s >= 10 and admissible(n, s).passes


def decompositions(n: int, s: int) -> list[tuple[tuple[int, int], tuple[int, int]]]:
    """Unordered splits into two admissible summands; within a split the
    part with more separating fibres comes first."""
    _require_admissible(n, s)
    out = set()
    for n1 in range(n + 1):
        for s1 in range(s + 1):
            a, b = (n1, s1), (n - n1, s - s1)
            if is_summand(*a) and is_summand(*b):
                out.add(tuple(sorted((a, b), key=lambda p: (p[1], p[0]), reverse=True)))
    return sorted(out)


def _prop1_chain(n: int, s: int) -> Step:
    # s_i <= 2 n_i - 5 for each part gives s <= 2n - 10 < 2n - 5 = s.
    return Step("Proposition1", "s = 2n-5 but summands force s <= 2n-10", {
        "s": s, "2n-5": 2 * n - 5, "2n-10": 2 * n - 10,
    })


def certify_indecomposable(n: int, s: int) -> Certificate:
    _require_admissible(n, s)
    decs = decompositions(n, s)
    steps = []
    fast = s == 2 * n - 5
    if fast and prop1_fast_path(n, s):
        steps.append(_prop1_chain(n, s))
        if decs:
            raise AssertionError(f"fast path and enumeration disagree at ({n},{s})")
    steps.append(Step("Enumeration", "all splits into admissible summands", {
        "decompositions": [[list(a), list(b)] for a, b in decs],
    }))
    v = Verdict.PROVED if not decs else Verdict.UNKNOWN
    return Certificate("indecomposable", v, tuple(steps), (n, s), {"fast_path": fast})


def prop1_fast_path(n: int, s: int) -> bool:
    """True when the summand inequality alone rules out every split.

    Two parts with ``s_i <= 2 n_i - 5`` and ``n_i + 2 s_i >= 10`` have
    ``s <= 2n - 10``; so ``s > 2n - 10`` leaves no room.
    """
    return s > 2 * n - 10


def prop1_agrees(n: int) -> Optional[bool]:
    """Fast path versus enumeration at ``(n, 2n-5)``; ``None`` if inadmissible."""
    s = 2 * n - 5
    if s < 0 or not is_admissible(n, s):
        return None
    return prop1_fast_path(n, s) == (not decompositions(n, s))


# --- the existence argument ---------------------------------------------------

TOP_TYPE = (14, 13)


def theorem1_report(top: tuple[int, int] = TOP_TYPE) -> Certificate:
    """Case tree: the top type exists and is minimal; either it is
    indecomposable, or some decomposition yields a minimal indecomposable
    summand, recursing into summands that are minimal but not certified
    indecomposable."""
    leaves: list[tuple[int, int]] = []
    steps: list[Step] = []
    depth = _case_tree(top, steps, leaves, 0, set())
    ok = all(certify_minimal(*p).proved for p in leaves)
    claim = "an indecomposable minimal genus-2 fibration of one of the leaf types exists"
    return Certificate(
        claim,
        Verdict.PROVED if ok else Verdict.UNKNOWN,
        tuple(steps),
        top,
        {"leaves": [list(p) for p in sorted(leaves)], "depth": depth},
    )


def _case_tree(pair, steps, leaves, level, seen) -> int:
    n, s = pair
    mini = certify_minimal(n, s)
    steps.append(Step("Minimal", f"({n},{s}) minimal: {mini.verdict.value}", {"pair": [n, s], "level": level}))
    if not mini.proved:
        return level
    if pair not in seen:
        leaves.append(pair)
        seen.add(pair)
    ind = certify_indecomposable(n, s)
    steps.append(Step("Indecomposable", f"({n},{s}) indecomposable: {ind.verdict.value}",
                      {"pair": [n, s], "level": level, "fast_path": ind.extra.get("fast_path", False)}))
    if ind.proved:
        return level
    depth = level
    decs = decompositions(n, s)
    steps.append(Step("Cases", f"({n},{s}) splits {len(decs)} ways", {
        "pair": [n, s], "cases": [[list(a), list(b)] for a, b in decs],
    }))
    for a, b in decs:
        # the case is settled by the first summand that is certified minimal
        for part in (a, b):
            if certify_minimal(*part).proved:
                depth = max(depth, _case_tree(part, steps, leaves, level + 1, seen))
                break
        else:
            steps.append(Step("Open", "no summand certified minimal", {"case": [list(a), list(b)]}))
    return depth


def enumerate_admissible(max_k: int) -> list[tuple[int, int]]:
    if max_k < 1:
        raise ValueError("max_k must be at least 1")
    out = []
    for k in range(1, max_k + 1):
        for s in range(0, 5 * k + 1):
            n = 10 * k - 2 * s
            if n >= 0 and is_admissible(n, s):
                out.append((n, s))
    return out


def recheck(cert: Certificate) -> bool:
    """Recompute a minimality or indecomposability certificate from scratch."""
    if cert.pair is None:
        return False
    if cert.claim == "minimal":
        return certify_minimal(*cert.pair) == cert
    if cert.claim == "indecomposable":
        return certify_indecomposable(*cert.pair) == cert
    return theorem1_report(cert.pair) == cert
