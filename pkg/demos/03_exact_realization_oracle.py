"""
The canonical piecewise-linear map and its periodic-point oracle
================================================================

Among all continuous maps realizing a pattern there is a canonical one:
put orbit point of rank r at distance r from the center and interpolate
linearly between consecutive marked points.  Every slope is then an
integer and every periodic point is rational, so periods can be decided
exactly -- present with an explicit witness, or absent by exhausting
all monotone branches of the iterate.
"""

from fractions import Fraction

from stardyn import (
    arc,
    loop_point,
    make_point,
    oracle_scan,
    parse_pattern,
    periodic_points,
    realize,
    scramble_probe,
)

p = parse_pattern("n=3 k=5; b1: 1 3; b2: 2; b3: 4")
m = realize(p)

# The map is stored as affine pieces (source branch, interval, image
# branch, slope, offset); slopes are plain integers.
for piece in m.pieces:
    print(piece)

# Evaluate anywhere, with exact rational arithmetic.
x = make_point(1, Fraction(7, 5))
print("\nf(7/5 on branch 1) =", m.evaluate(x))
print("f^3 of the same point =", m.iterate(x, 3))

# Periodic points of any period, exactly.  Period 2 exists...
print("\nperiod-2 points:", [(w.point.branch, w.point.coord) for w in periodic_points(m, 2)])

# ...but period 3 does not: the oracle exhausts every monotone branch
# of the third iterate and finds no admissible fixed point.
scan = oracle_scan(m, 3)
print("period-3 witnesses:", scan.witnesses)
print("monotone branches examined:", scan.cylinders)

# The five marked points themselves form the period-5 orbit.
on_orbit = [w.on_center_orbit for w in periodic_points(m, 5)]
print("period-5 points on the marked orbit:", on_orbit)

# A covering loop of arcs pins down a periodic point directly: the
# arc from the center to point 1 covers itself, giving a fixed point.
fixed = loop_point(m, [arc(0, 1, p)])
print("fixed point from the self-covering arc:", fixed)

# Two nearby points can be driven far apart and back together; the probe
# tracks the exact min and max separation along the first N iterates.
a = make_point(2, Fraction(3, 10))
b = make_point(2, Fraction(5, 14))
lo, hi = scramble_probe(m, a, b, 200, step=2)
print("separation of a close pair over 200 double-steps: min", lo, "max", hi)
