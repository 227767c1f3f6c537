"""
Covering digraphs and certified dynamics
========================================

Between consecutive marked points of a pattern lie basic intervals; one
basic interval covers another when its image under the canonical map
stretches across it.  The resulting digraph turns questions about
periodic points and chaos into combinatorics: closed walks yield
periodic points, and particular walk shapes certify whole families of
periods or a scrambled pair.  Every certificate is independently
replayable against the exact map.
"""

from stardyn import (
    basic_intervals,
    check_center_theorem,
    check_nplus2_theorem,
    closed_walk_lengths,
    cover_digraph,
    find_cascade,
    find_genscramble,
    parse_pattern,
    periodicity_report,
    render_dot,
    report_to_json,
    self_loop_only_lengths,
    verify_certificate,
)

p = parse_pattern("n=3 k=6; b1: 1 3 5; b2: 2; b3: 4")

# Basic intervals are named by their endpoints' orbit indices.
print("basic intervals:", [b.label for b in basic_intervals(p)])

g = cover_digraph(p)
print("covering edges:", sorted(g.edge_labels()))
print()
print(render_dot(g))

# Closed-walk lengths bound which periods the digraph can witness.  In
# this pattern every odd length comes only from repeating the single
# self-loop, a degenerate walk that cannot produce new periodic orbits.
print("closed walk lengths up to 9:", sorted(closed_walk_lengths(g, 9)))
print("lengths from the self-loop alone:", sorted(self_loop_only_lengths(g, 9)))

# Structural certificates.  A cascade is a self-loop vertex with a
# short return cycle: it forces every period from its length upward.
# This digraph has none, but the five-point cousin of this pattern does.
print("\ncascade here:", find_cascade(g))
p5 = parse_pattern("n=3 k=5; b1: 1 3; b2: 2; b3: 4")
print("cascade for the five-point pattern:", find_cascade(cover_digraph(p5)))

# When the first three orbit points leave the starting branch in the
# right way, a three-arc covering argument certifies all periods at
# once.  Neither pattern above qualifies (point 3 returns to the branch
# of point 1), but one with an extra point per branch does.
print("center-map theorem here:", check_center_theorem(p))
p4 = parse_pattern("n=3 k=4; b1: 1; b2: 2; b3: 3")
print("center-map theorem, one point per branch:", check_center_theorem(p4))

# For orbits of size n+2 covering all branches there is a sharper
# two-case argument; the five-point pattern lands in its second case,
# which claims period 2 and everything from 4 up.
np2 = check_nplus2_theorem(p5)
print("n+2 theorem case:", np2.case_id, "with claimed periods", sorted(np2.claimed_periods(10)))

# A scrambled pair certificate: two marked points whose arcs, under the
# second iterate, interleave the right way.
cert = find_genscramble(p, max_iterate=2)
print("chaos certificate:", cert)
print("certificate replays cleanly:", verify_certificate(p, cert))

# The report assembles everything: each period up to the horizon is
# either claimed by a certificate and confirmed by the oracle, or
# settled by the oracle alone; chaos carries its certificate.
report = periodicity_report(p, p_max=10, max_iterate=2)
print("\nperiods present:", sorted(report.present))
print("periods absent:", sorted(report.absent))
print("chaos:", report_to_json(report)["chaos"]["status"])
for line in report.commentary:
    print("note:", line)
