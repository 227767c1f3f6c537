"""
Period forcing on intervals and stars
=====================================

For continuous interval maps, having a point of one period can force
points of many other periods; the classical result arranges all periods
in a single total order.  On a star with t branches the analogous order
is coarser, and on a star where nothing is known about how the orbit
uses the branches, only periods forced in every order up to t are
guaranteed.  These are pure arithmetic predicates; no maps are built.
"""

from stardyn import baldwin_le, forced_periods, nod_le, sharkovskii_le

# sharkovskii_le(m, k) asks: does a period-k point force a period-m
# point on the interval?  Period 3 forces everything; powers of two
# force only smaller powers of two.
print("does period 3 force period 7 on the interval?", sharkovskii_le(7, 3))
print("does period 4 force period 3?", sharkovskii_le(3, 4))
print("everything forced by 4 up to 100:", sorted(forced_periods(1, 4, 100)))

# The same question on a 3-od, for orbits passing through the center:
# period 4 on three branches forces an entirely different set.
print("forced by 4 on a 3-od, up to 12:", sorted(forced_periods(3, 4, 12)))
print("forced by 4 on the interval, up to 12:", sorted(forced_periods(1, 4, 12)))

# The t-od orders are genuinely different for each t: period 6 on a
# 2-od forces exactly the even ladder plus the fixed point.
print("forced by 6 on a 2-od, up to 10:", sorted(forced_periods(2, 6, 10)))

# A sample of individual comparisons across the three relations.
rows = [
    ("interval", lambda m, k: sharkovskii_le(m, k)),
    ("2-od    ", lambda m, k: baldwin_le(2, m, k)),
    ("3-od    ", lambda m, k: baldwin_le(3, m, k)),
    ("meet(3) ", lambda m, k: nod_le(3, m, k)),
]
print("\n  does period 3 force period 2?")
for name, rel in rows:
    print(f"  {name}: {rel(2, 3)}")

# On a 3-od the answer is no: there are maps with a period-3 orbit
# through the center and no period-2 point, so the meet order must
# refuse what the interval order grants.
assert nod_le(3, 2, 3) is False
assert sharkovskii_le(2, 3) is True
