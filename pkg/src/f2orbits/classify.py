"""Closed-form orbit censuses of the two actions, orbit-type labeling,
and prediction-vs-enumeration verification reports.

For n >= 5 the full per-stratum layout of both actions is known in
closed form; below that only the observed orbit counts 2, 6, 20, 52 are
known, and verification falls back to reporting the enumeration.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional

from .f2la import F2Vector
from .actions import ActionKind, ActionSpec
from .orbits import OrbitCensus, attach_labels, enumerate_orbits

TRIVIAL = "trivial"
STANDARD = "standard"
TYPE1 = "type1"
TYPE2 = "type2"
TYPE3 = "type3"
TYPE4 = "type4"
TYPE5 = "type5"

_EXCEPTIONAL_SHARP = {2: 2, 3: 6, 4: 20, 5: 52}


def epsilon(k: int) -> int:
    """The sign in the odd-case cardinalities: -1 iff k = 4t + 1."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return -1 if k % 4 == 1 else 1


def sharp(n_plus_1: int) -> int:
    """Number of orbits of the first action of order n = n_plus_1 - 1.

    Four exceptional small values, then 3 * 2^n.
    """
    if n_plus_1 < 2:
        raise ValueError(f"need n+1 >= 2, got {n_plus_1}")
    if n_plus_1 in _EXCEPTIONAL_SHARP:
        return _EXCEPTIONAL_SHARP[n_plus_1]
    return 3 << (n_plus_1 - 1)


def _is_symmetric(bits: int, n: int) -> bool:
    return all((bits >> i & 1) == (bits >> (n - 1 - i) & 1) for i in range(n // 2))


def h_bar(n: int) -> F2Vector:
    """The distinguished height for even n: (1,0,1,0,...) on the first
    half, zeros on the second."""
    if n % 2:
        raise ValueError(f"defined for even n only, got {n}")
    bits = 0
    for i in range(0, n // 2, 2):
        bits |= 1 << i
    return F2Vector(n, bits)


def eta_bar(k: int) -> F2Vector:
    """The distinguished second-action height: (1,...,1, k mod 2)."""
    bits = (1 << (k - 1)) - 1
    if k % 2:
        bits |= 1 << (k - 1)
    return F2Vector(k, bits)


@dataclass(frozen=True)
class PredictedCensus:
    """Closed-form census: aggregate rows and the per-stratum layout."""

    n: int
    kind: ActionKind
    state_dim: int
    rows: tuple[tuple[str, int, int], ...]           # (label, cardinality, orbit count)
    by_height: dict[int, tuple[tuple[str, int], ...]]  # height bits -> (label, cardinality)*

    @property
    def orbit_count(self) -> int:
        return sum(count for _, _, count in self.rows)

    @property
    def total_states(self) -> int:
        return sum(card * count for _, card, count in self.rows)

    def cardinality_multiset(self) -> dict[int, int]:
        out: dict[int, int] = {}
        for _, card, count in self.rows:
            out[card] = out.get(card, 0) + count
        return out


def _aggregate(by_height: dict[int, tuple[tuple[str, int], ...]]):
    counts: dict[tuple[str, int], int] = {}
    for rows in by_height.values():
        for label, card in rows:
            counts[(label, card)] = counts.get((label, card), 0) + 1
    order = {TRIVIAL: 0, STANDARD: 1, TYPE1: 2, TYPE2: 3, TYPE3: 4, TYPE4: 5, TYPE5: 6}
    merged = sorted(((label, card, cnt) for (label, card), cnt in counts.items()),
                    key=lambda row: (order[row[0]], row[1]))
    return tuple(merged)


def predict_first(n: int) -> PredictedCensus:
    """Per-stratum layout of the first action for n >= 5.

    Odd n = 2k+1: each symmetric stratum holds one orbit of
    2^(2k^2+k-1) - eps_k 2^(k^2+k-1), one of
    2^(2k^2+k-1) + eps_k 2^(k^2+k-1) - 2^k, and 2^k singletons; every
    nonsymmetric stratum holds two orbits of 2^(2k^2+k-1).

    Even n = 2k: symmetric strata hold two orbits of
    (2^(2k(k-1)) - 1) 2^(k-1) plus 2^k singletons; the 2^k strata whose
    height differs from the symmetric ones by the distinguished vector
    split as (2^(k(k-1)) - 1) 2^(k^2-1) and (2^(k(k-1)) + 1) 2^(k^2-1);
    the rest hold two orbits of 2^(2k^2-k-1).
    """
    if n < 5:
        raise ValueError(f"no closed form below n=5 (got {n}); enumerate instead")
    k = n // 2
    by_height: dict[int, tuple[tuple[str, int], ...]] = {}
    if n % 2:
        eps = epsilon(k)
        card1 = (1 << (2 * k * k + k - 1)) - eps * (1 << (k * k + k - 1))
        card2 = (1 << (2 * k * k + k - 1)) + eps * (1 << (k * k + k - 1)) - (1 << k)
        standard = 1 << (2 * k * k + k - 1)
        for h in range(1 << n):
            if _is_symmetric(h, n):
                rows = [(TRIVIAL, 1)] * (1 << k) + [(TYPE1, card1), (TYPE2, card2)]
            else:
                rows = [(STANDARD, standard)] * 2
            by_height[h] = tuple(rows)
    else:
        card3 = ((1 << (2 * k * (k - 1))) - 1) << (k - 1)
        card4 = ((1 << (k * (k - 1))) - 1) << (k * k - 1)
        card5 = ((1 << (k * (k - 1))) + 1) << (k * k - 1)
        standard = 1 << (2 * k * k - k - 1)
        hb = h_bar(n).bits
        for h in range(1 << n):
            if _is_symmetric(h, n):
                rows = [(TRIVIAL, 1)] * (1 << k) + [(TYPE3, card3)] * 2
            elif _is_symmetric(h ^ hb, n):
                rows = [(TYPE4, card4), (TYPE5, card5)]
            else:
                rows = [(STANDARD, standard)] * 2
            by_height[h] = tuple(rows)
    pred = PredictedCensus(n, ActionKind.FIRST, n * (n + 1) // 2,
                           _aggregate(by_height), by_height)
    _check_internal(pred)
    return pred


def predict_second(n: int) -> PredictedCensus:
    """Per-stratum layout of the second action for n >= 5.

    Odd n = 2k+1: height 0 holds orbits of 2^(2k^2-1) -+ eps_k 2^(k^2-1)
    (the larger one short by the fixed point, which is its own orbit);
    every other height is a single orbit of 2^(2k^2).

    Even n = 2k: height 0 holds 2^(2k(k-1)) - 1 plus the fixed point;
    the distinguished height splits as (2^(k(k-1)) -+ 1) 2^(k(k-1)-1);
    every other height is a single orbit of 2^(2k(k-1)).
    """
    if n < 5:
        raise ValueError(f"no closed form below n=5 (got {n}); enumerate instead")
    k = n // 2
    by_height: dict[int, tuple[tuple[str, int], ...]] = {}
    if n % 2:
        eps = epsilon(k)
        card1 = (1 << (2 * k * k - 1)) - eps * (1 << (k * k - 1))
        card2 = (1 << (2 * k * k - 1)) + eps * (1 << (k * k - 1)) - 1
        standard = 1 << (2 * k * k)
        for h in range(1 << k):
            if h == 0:
                by_height[h] = ((TRIVIAL, 1), (TYPE1, card1), (TYPE2, card2))
            else:
                by_height[h] = ((STANDARD, standard),)
    else:
        card3 = (1 << (2 * k * (k - 1))) - 1
        card4 = ((1 << (k * (k - 1))) - 1) << (k * (k - 1) - 1)
        card5 = ((1 << (k * (k - 1))) + 1) << (k * (k - 1) - 1)
        standard = 1 << (2 * k * (k - 1))
        eb = eta_bar(k).bits
        for h in range(1 << k):
            if h == 0:
                by_height[h] = ((TRIVIAL, 1), (TYPE3, card3))
            elif h == eb:
                by_height[h] = ((TYPE4, card4), (TYPE5, card5))
            else:
                by_height[h] = ((STANDARD, standard),)
    pred = PredictedCensus(n, ActionKind.SECOND, (n - 1) * n // 2,
                           _aggregate(by_height), by_height)
    _check_internal(pred)
    return pred


def _check_internal(pred: PredictedCensus) -> None:
    if pred.total_states != 1 << pred.state_dim:
        raise AssertionError("predicted cardinalities do not sum to the space size")
    expected = (sharp(pred.n + 1) if pred.kind is ActionKind.FIRST
                else (1 << (pred.n // 2)) + 2)
    if pred.orbit_count != expected:
        raise AssertionError(
            f"predicted orbit total {pred.orbit_count}, expected {expected}")


def predict(n: int, kind: ActionKind) -> PredictedCensus:
    if kind is ActionKind.FIRST:
        return predict_first(n)
    if kind is ActionKind.SECOND:
        return predict_second(n)
    raise ValueError(f"no closed-form census for {kind.value}")


class LabelingError(ValueError):
    """A record matched zero or several predicted row types."""


def label_orbits(census: OrbitCensus, prediction: PredictedCensus) -> OrbitCensus:
    """Tag each enumerated orbit with its predicted type label.

    A record is matched by (height, cardinality) inside its stratum; the
    match must pin down exactly one label.
    """
    if census.n != prediction.n or census.kind != prediction.kind.value:
        raise ValueError("census and prediction describe different actions")
    labels: dict[int, str] = {}
    for rec in census.records:
        if rec.height is None:
            raise LabelingError("census records carry no heights")
        rows = prediction.by_height.get(rec.height.bits)
        if rows is None:
            raise LabelingError(f"no predicted stratum at height {rec.height.to_string()}")
        found = {label for label, card in rows if card == rec.cardinality}
        if len(found) != 1:
            raise LabelingError(
                f"orbit of size {rec.cardinality} at height {rec.height.to_string()} "
                f"matches {sorted(found) or 'no'} predicted rows")
        labels[rec.representative.bits] = found.pop()
    return attach_labels(census, labels)


@dataclass(frozen=True)
class CheckResult:
    name: str
    expected: str
    observed: str
    ok: bool


@dataclass(frozen=True)
class VerifyReport:
    """Structured diff between prediction and enumeration."""

    n: int
    kind: ActionKind
    mode: str                     # "closed-form" or "observed"
    checks: tuple[CheckResult, ...]
    census: OrbitCensus

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def to_text(self) -> str:
        lines = [f"verify {self.kind.value} n={self.n} ({self.mode} mode)"]
        for c in self.checks:
            mark = "ok " if c.ok else "FAIL"
            lines.append(f"  [{mark}] {c.name}: expected {c.expected}, observed {c.observed}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        doc = {
            "n": self.n,
            "kind": self.kind.value,
            "mode": self.mode,
            "passed": self.passed,
            "checks": [{"name": c.name, "expected": c.expected,
                        "observed": c.observed, "ok": c.ok} for c in self.checks],
        }
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _multiset_str(ms: dict[int, int]) -> str:
    return "{" + ", ".join(f"{card}x{cnt}" for card, cnt in sorted(ms.items())) + "}"


def verify(n: int, kind: ActionKind, workers: Optional[int] = None) -> VerifyReport:
    """Enumerate and diff against the closed form (or the observed-count
    table below n=5).  Conjugate kinds are checked against the orbit
    count of their base kind, which the theory says they share."""
    spec = ActionSpec(n, kind)
    census = enumerate_orbits(spec, workers=workers)
    checks: list[CheckResult] = []
    if kind in (ActionKind.FIRST_CONJUGATE, ActionKind.SECOND_CONJUGATE):
        base = ActionKind.FIRST if kind is ActionKind.FIRST_CONJUGATE else ActionKind.SECOND
        base_count = enumerate_orbits(ActionSpec(n, base), workers=workers).orbit_count
        checks.append(CheckResult("orbit count equals the base action's",
                                  str(base_count), str(census.orbit_count),
                                  census.orbit_count == base_count))
        return VerifyReport(n, kind, "conjugate-count", tuple(checks), census)
    if n < 5:
        mode = "observed"
        if kind is ActionKind.FIRST:
            expected = sharp(n + 1)
            checks.append(CheckResult("orbit count (exceptional table)",
                                      str(expected), str(census.orbit_count),
                                      census.orbit_count == expected))
        else:
            checks.append(CheckResult("orbit count (no closed form; observed)",
                                      str(census.orbit_count), str(census.orbit_count), True))
        return VerifyReport(n, kind, mode, tuple(checks), census)
    pred = predict(n, kind)
    checks.append(CheckResult("orbit count", str(pred.orbit_count),
                              str(census.orbit_count),
                              census.orbit_count == pred.orbit_count))
    exp_ms = pred.cardinality_multiset()
    obs_ms = census.cardinality_multiset()
    checks.append(CheckResult("cardinality multiset", _multiset_str(exp_ms),
                              _multiset_str(obs_ms), exp_ms == obs_ms))
    layout_ok = True
    bad = ""
    observed_by_height = census.by_height()
    for h, rows in pred.by_height.items():
        exp = sorted(card for _, card in rows)
        obs = sorted(r.cardinality for r in observed_by_height.get(h, ()))
        if exp != obs:
            layout_ok = False
            bad = f"height {h:0{len(bin(max(pred.by_height)))-2}b}: {obs} != {exp}"
            break
    checks.append(CheckResult("per-stratum layout", "match",
                              bad or "match", layout_ok))
    try:
        label_orbits(census, pred)
        checks.append(CheckResult("type labeling", "unambiguous", "unambiguous", True))
    except LabelingError as exc:
        checks.append(CheckResult("type labeling", "unambiguous", str(exc), False))
    return VerifyReport(n, kind, "closed-form", tuple(checks), census)
