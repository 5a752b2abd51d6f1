"""
Simple ideals from chains of blow-ups
=====================================

A finite chain of quadratic transforms defines a divisorial valuation and
a decreasing sequence of simple ideals, pulled back from the maximal ideals
along the chain. The last one is the smallest simple ideal of the
valuation, and it is a separating ideal of two explicit branches.
"""

from seplab import (
    BranchPoint,
    ChainStep,
    DivisorialPoint,
    TPoly,
    check_thm44,
    is_simple,
    points_for_simple_ideal,
    sep,
    simple_sequence,
)

t = TPoly([0, 1])

for chain in ([ChainStep(0, 0)], [ChainStep(0, 0), ChainStep(0, 1)]):
    d = DivisorialPoint(chain, "0+", 1)
    seq = simple_sequence(d)
    print("chain", [str(s) for s in chain])
    for J, v in zip(seq.ideals, seq.values):
        print(f"   {J}  value {v}  simple {is_simple(d, J)}")
    a, b, Pid = points_for_simple_ideal(chain)
    print(f"   realized by {a} and {b}: sep = {sep(a, b).ideal}")

d = DivisorialPoint([ChainStep(0, 0)], "0+", 1, "d")
for other in (BranchPoint([t, t**3], "b"), DivisorialPoint([ChainStep(0, 0)], "0-", 1, "e")):
    r = check_thm44(d, other)
    print(f"sep(d, {other.name}) = {r.separating} contains {r.smallest_simple}: {r.contains_smallest_simple}")
