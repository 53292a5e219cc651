"""Orbit censuses of the two actions, against their closed forms.

Enumerates the small exceptional orders, verifies a mid-size census
stratum by stratum, and drills into one stratum.  Run:
python demos/orbit_censuses.py
"""

import time

from f2orbits import (ActionKind, ActionSpec, F2Vector, enumerate_orbits,
                      enumerate_stratum, label_orbits, orbit_of,
                      predict_first, predict_second, sharp, verify)
from f2orbits.tri import TriMatrix

print("=== Exceptional small orders of the first action ===")
for n in (1, 2, 3, 4):
    census = enumerate_orbits(ActionSpec(n, ActionKind.FIRST))
    print(f"n={n}: {census.orbit_count} orbits over {census.total_states} states "
          f"(table value {sharp(n + 1)})")

print()
print("=== From n=5 on the count stabilizes at 3 * 2^n ===")
for n in (5, 6):
    t0 = time.perf_counter()
    census = enumerate_orbits(ActionSpec(n, ActionKind.FIRST))
    pred = predict_first(n)
    ok = census.cardinality_multiset() == pred.cardinality_multiset()
    print(f"n={n}: {census.orbit_count} orbits in {time.perf_counter() - t0:.2f}s; "
          f"closed-form multiset match: {ok}")

print()
print("=== One stratum under the magnifying glass (first action, n=5) ===")
spec = ActionSpec(5, ActionKind.FIRST)
for bits in ("00000", "10000"):
    stratum = enumerate_stratum(spec, F2Vector.from_string(bits))
    sizes = sorted(r.cardinality for r in stratum.records)
    kind = "symmetric" if bits == "00000" else "nonsymmetric"
    print(f"height {bits} ({kind}): orbit sizes {sizes}")

print()
print("=== Labeled census of the second action, n=6 ===")
census = enumerate_orbits(ActionSpec(6, ActionKind.SECOND))
labeled = label_orbits(census, predict_second(6))
for r in labeled.records:
    print(f"  height {r.height.to_string()}  size {r.cardinality:5d}  {r.type_label}")

print()
print("=== Single-orbit queries ===")
rec = orbit_of(spec, TriMatrix.from_cells(5, [(1, 2)]))
print(f"orbit of the single cell (1,2): size {rec.cardinality}, "
      f"representative 0x{rec.representative.bits:x}, height {rec.height.to_string()}")

print()
print("=== Full verification reports ===")
print(verify(5, ActionKind.FIRST).to_text())
print(verify(6, ActionKind.SECOND).to_text())
