"""
Orbit patterns on a star: parsing, arcs, and enumeration
========================================================

A star with n branches is a tree with one branch point (the center) and
n segments glued to it.  A continuous self-map that cycles the center
through a finite orbit is described, combinatorially, by where each
orbit point sits: which branch, and how far out along it.  That data is
a pattern, and it is the input to everything else in this package.
"""

from stardyn import (
    FiniteOrbitSpec,
    arc,
    canonicalize,
    enumerate_patterns,
    orbit_type,
    parse_pattern,
    validate,
)

# The text form names each branch and lists the orbit indices on it in
# increasing distance from the center.  Index 0 is the center itself,
# and the map sends point i to point i + 1 (wrapping at the end), so the
# pattern below says: the center goes to a point on branch 1, which goes
# to a point on branch 2, and so on around a five-point cycle.
p = parse_pattern("n=3 k=5; b1: 1 3; b2: 2; b3: 4")
print("pattern:", p.to_text())
print("orbit size:", p.k, "| branches:", p.n)
print("point 3 sits on branch", p.branch_of(3), "at rank", p.rank_of(3))
print("successor of 4 wraps to", p.successor(4))

# validate() returns problems instead of raising, which is convenient
# when sieving large collections of candidate patterns.
print("violations:", validate(p))

# An arc is the path between two marked points, listed point by point.
a = arc(1, 4, p)
print("arc from point 1 to point 4 passes through:", a.points)
print("does it run through the center?", a.through_center)

# Patterns that differ only by renaming branches describe the same
# dynamics; canonicalize picks one representative per class.
q = parse_pattern("n=3 k=5; b1: 4; b2: 2; b3: 1 3")
print("same class?", canonicalize(q) == canonicalize(p))

# Enumeration produces each class exactly once, smallest first.
classes = enumerate_patterns(3, 5, all_branches=True)
print("classes with 5 orbit points covering all 3 branches:", len(classes))
for cls in classes[:4]:
    print("  ", cls.to_text())

# Finite invariant cycles that need not pass through the center are
# described by FiniteOrbitSpec.  Their "type" is the set of cycle
# lengths of the induced dynamics on branch labels: any cycle through
# the center has type {1}, while a two-point cycle swapping the halves
# of a 2-star swaps the branches and has type {2}.
with_center = FiniteOrbitSpec(
    n=2, k=3, placements=((0, 0), (1, 1), (2, 1)), succ=(1, 2, 0), center_point=0
)
swap = FiniteOrbitSpec(n=2, k=2, placements=((1, 1), (2, 1)), succ=(1, 0))
print("type of a cycle through the center:", set(orbit_type(with_center)))
print("type of the two-branch swap:", set(orbit_type(swap)))
