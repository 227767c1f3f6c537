"""Covering digraphs of basic intervals and replayable certificates.

A pattern's marked points cut the occupied branches into basic intervals.
Interval I covers interval J when the arc between the successor images of
I's endpoints contains J; the covering digraph drives everything here:
closed walks witness periods, a self-loop plus a short cycle witnesses a
cofinite set of periods, and an expanding arc pair (u, v) with a suitable
covering loop certifies Li-Yorke chaos.

Every certificate is replayable: ``verify_certificate`` re-derives the
claim from the pattern alone.  Presence claims are always confirmed by the
exact oracle; absence is decided only by the oracle's exhaustive scan.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .orders import forced_periods, sharkovskii_le
from .patterns import CENTER_INDEX, Arc, MarkedPoint, StarPattern, arc, validate
from .plmap import (
    PeriodicWitness,
    first_witness,
    image_of_arc,
    oracle_scan,
    realize,
    subtree_of_arc,
)


class InconsistencyError(RuntimeError):
    """A combinatorial certificate claimed a period the exact oracle
    refutes.  This is always a bug, never a property of the pattern."""


# ---------------------------------------------------------- basic intervals

@dataclass(frozen=True)
class BasicInterval:
    """A minimal closed interval between adjacent marked points on one
    branch; ``inner`` is the endpoint closer to the center (possibly the
    center itself)."""

    inner: MarkedPoint
    outer: MarkedPoint
    branch: int
    outer_rank: int

    @property
    def label(self) -> str:
        return f"[{self.inner},{self.outer}]"

    @property
    def endpoints(self) -> tuple[MarkedPoint, MarkedPoint]:
        return (self.inner, self.outer)


def basic_intervals(p: StarPattern) -> list[BasicInterval]:
    """All basic intervals, ordered by (branch, rank from the center)."""
    out = []
    for b in range(1, p.n + 1):
        chain = (CENTER_INDEX,) + p.branch_points(b)
        for r, (inner, outer) in enumerate(itertools.pairwise(chain), start=1):
            out.append(BasicInterval(inner, outer, b, r))
    return out


@dataclass(frozen=True)
class CoverDigraph:
    """Covering relation restricted to basic intervals: I -> J iff the arc
    between the successor images of I's endpoints contains J."""

    pattern: StarPattern
    vertices: tuple[BasicInterval, ...]
    adjacency: tuple[tuple[int, ...], ...]

    def has_edge(self, i: int, j: int) -> bool:
        return j in self.adjacency[i]

    def edges(self):
        for i, row in enumerate(self.adjacency):
            for j in row:
                yield (i, j)

    def edge_labels(self) -> set[tuple[str, str]]:
        return {
            (self.vertices[i].label, self.vertices[j].label)
            for i, j in self.edges()
        }

    def index_of(self, endpoints: tuple[MarkedPoint, MarkedPoint]) -> int:
        for i, v in enumerate(self.vertices):
            if v.endpoints == endpoints:
                return i
        raise KeyError(f"no basic interval with endpoints {endpoints}")


def cover_digraph(p: StarPattern) -> CoverDigraph:
    verts = tuple(basic_intervals(p))
    image_ids = [
        arc(p.successor(v.inner), p.successor(v.outer), p).basic_ids()
        for v in verts
    ]
    adjacency = tuple(
        tuple(
            j
            for j, w in enumerate(verts)
            if (w.branch, w.outer_rank) in image_ids[i]
        )
        for i in range(len(verts))
    )
    return CoverDigraph(p, verts, adjacency)


def render_dot(g: CoverDigraph) -> str:
    """GraphViz DOT text: one node per basic interval, one edge per covering."""
    lines = ["digraph covering {"]
    for v in g.vertices:
        lines.append(f'  "{v.label}";')
    for i, j in g.edges():
        lines.append(f'  "{g.vertices[i].label}" -> "{g.vertices[j].label}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


# ------------------------------------------------------------ walk lengths

def _adjacency_matrix(g: CoverDigraph) -> np.ndarray:
    size = len(g.vertices)
    a = np.zeros((size, size), dtype=object)
    for i, j in g.edges():
        a[i, j] = 1
    return a


def closed_walk_lengths(g: CoverDigraph, bound: int) -> set[int]:
    """Lengths p <= bound for which the digraph has a closed walk, by exact
    adjacency-matrix powers."""
    if bound < 1:
        raise ValueError("bound must be positive")
    a = _adjacency_matrix(g)
    power = np.eye(len(g.vertices), dtype=object)
    out = set()
    for p in range(1, bound + 1):
        power = power @ a
        if int(np.trace(power)) > 0:
            out.add(p)
    return out


def self_loop_only_lengths(g: CoverDigraph, bound: int) -> set[int]:
    """Lengths p <= bound for which the only closed walk is the repetition
    of a single self-loop."""
    if bound < 1:
        raise ValueError("bound must be positive")
    a = _adjacency_matrix(g)
    power = np.eye(len(g.vertices), dtype=object)
    out = set()
    for p in range(1, bound + 1):
        power = power @ a
        if int(np.trace(power)) == 1:
            w = next(i for i in range(len(g.vertices)) if power[i, i] == 1)
            if a[w, w] == 1:
                out.add(p)
    return out


# ------------------------------------------------------------- certificates

ArcEnds = tuple[MarkedPoint, MarkedPoint]


@dataclass(frozen=True)
class CenterOrbit:
    """The marked orbit itself: the center is periodic with period k."""

    period: int


@dataclass(frozen=True)
class ForcedPeriod:
    """Period forced by the center's period through the interval order."""

    period: int
    source_period: int


@dataclass(frozen=True)
class CenterTheoremCase:
    """Hypothesis: the third image of the center avoids the closed branch
    of the first.  Conclusion: points of every period, through the verified
    coverings A -> A, A -> B, B -> A with A = [u, v]."""

    case_id: int
    u: MarkedPoint
    v: MarkedPoint
    span: ArcEnds  # A
    back: ArcEnds  # B

    def claimed_periods(self, p_max: int) -> set[int]:
        return set(range(1, p_max + 1))


@dataclass(frozen=True)
class NPlus2Case:
    """Orbit of size n+2 revisiting the first branch at the third step.
    Case 1 yields every period >= 2; case 2 yields period 2 and every
    period >= 4, through the verified chain A -> A -> B1 [-> B2 -> B3] -> A
    (plus the disjoint two-cycle B1 <-> B2 in case 2)."""

    case_id: int
    u: MarkedPoint
    v: MarkedPoint
    span: ArcEnds  # A
    chain: tuple[ArcEnds, ...]  # B1 (case 1) or B1..B3 (case 2)

    def claimed_periods(self, p_max: int) -> set[int]:
        if self.case_id == 1:
            return set(range(2, p_max + 1))
        return {2} | set(range(4, p_max + 1))


@dataclass(frozen=True)
class Cascade:
    """A self-loop vertex on a cycle of length m >= 2: closed walks of
    every length >= m exist, hence points of every period >= m."""

    base: ArcEnds
    cycle: tuple[ArcEnds, ...]
    m: int

    def claimed_periods(self, p_max: int) -> set[int]:
        return set(range(self.m, p_max + 1))


@dataclass(frozen=True)
class Genscramble:
    """Li-Yorke chaos certificate for the t-th iterate g: an ordered pair
    (u, v) with g(v) < u < v <= g(u) along the arc between their images,
    plus a covering loop B0 = [u, v], ..., Bp containing B0, with B1 inside
    [g(v), u] and the second-to-last arc disjoint from the open (u, v)."""

    iterate: int
    u: MarkedPoint
    v: MarkedPoint
    loop: tuple[ArcEnds, ...]


@dataclass(frozen=True)
class OracleWitness:
    """An exact periodic point confirming presence."""

    witness: PeriodicWitness


@dataclass(frozen=True)
class OracleAbsence:
    """Exhaustive scan found no point of this least period."""

    period: int
    cylinders: int


Certificate = (
    CenterOrbit
    | ForcedPeriod
    | CenterTheoremCase
    | NPlus2Case
    | Cascade
    | Genscramble
    | OracleWitness
    | OracleAbsence
)


# ------------------------------------------------------- covering helpers

def _branch_of(p: StarPattern, i: MarkedPoint) -> int:
    return 0 if i == CENTER_INDEX else p.branch_of(i)


def _covers(p: StarPattern, src: Arc, dst: Arc) -> bool:
    """Combinatorial covering: the arc between successor images of src's
    endpoints contains dst."""
    img = arc(p.successor(src.a), p.successor(src.b), p)
    return dst.basic_ids() <= img.basic_ids()


def _arcs_disjoint(x: Arc, y: Arc) -> bool:
    """Closed arcs are disjoint iff they share no basic interval and no
    marked endpoint."""
    if x.basic_ids() & y.basic_ids():
        return False
    return not (set(x.points) & set(y.points))


# ----------------------------------------------------------- theorem checks

def check_center_theorem(p: StarPattern) -> CenterTheoremCase | None:
    """Certificate that the pattern has points of every period, when the
    third image of the center leaves the closed branch of the first image.
    Indices wrap modulo k, so for k = 3 the third image is the center
    itself, which lies on no branch and passes the hypothesis."""
    problems = validate(p)
    if problems:
        raise ValueError("invalid pattern: " + "; ".join(problems))
    k = p.k
    x1, x2, x3 = 1 % k, 2 % k, 3 % k
    if x3 != CENTER_INDEX and _branch_of(p, x3) == _branch_of(p, x1):
        return None
    if _branch_of(p, x2) != _branch_of(p, x1):
        case_id, u, v, back = 1, CENTER_INDEX, x1, (x2, CENTER_INDEX)
    elif p.rank_of(x1) < p.rank_of(x2):
        case_id, u, v, back = 2, x1, x2, (CENTER_INDEX, x1)
    else:
        case_id, u, v, back = 3, x2, CENTER_INDEX, (x1, x2)
    cert = CenterTheoremCase(case_id, u, v, (u, v), back)
    a_arc, b_arc = arc(u, v, p), arc(*back, p)
    assert _covers(p, a_arc, a_arc) and _covers(p, a_arc, b_arc) and _covers(p, b_arc, a_arc)
    return cert


def check_nplus2_theorem(p: StarPattern) -> NPlus2Case | None:
    """Certificate for orbits of size n+2 on an n-od hitting every branch:
    when the third image returns to the first image's branch, the pattern
    has every period >= 2 (case 1) or period 2 plus every period >= 4
    (case 2).  Returns None when the center-theorem hypothesis holds
    instead."""
    problems = validate(p, all_branches=True)
    if problems:
        raise ValueError("invalid pattern: " + "; ".join(problems))
    if p.n < 3 or p.k != p.n + 2:
        raise ValueError(
            f"requires an orbit of size n+2 on all branches of an n-od with "
            f"n >= 3; got n={p.n}, k={p.k}"
        )
    if _branch_of(p, 3) != _branch_of(p, 1):
        return None
    assert set(p.branch_points(p.branch_of(1))) == {1, 3}
    if p.rank_of(3) < p.rank_of(1):
        cert = NPlus2Case(1, CENTER_INDEX, 3, (CENTER_INDEX, 3), ((CENTER_INDEX, 4),))
        chain_arcs = [arc(CENTER_INDEX, 4, p)]
    else:
        cert = NPlus2Case(
            2,
            CENTER_INDEX,
            1,
            (CENTER_INDEX, 1),
            ((CENTER_INDEX, 2), (1, 3), (CENTER_INDEX, 4)),
        )
        chain_arcs = [arc(*e, p) for e in cert.chain]
    a_arc = arc(*cert.span, p)
    ring = [a_arc] + chain_arcs + [a_arc]
    assert _covers(p, a_arc, a_arc)
    assert all(_covers(p, s, t) for s, t in itertools.pairwise(ring))
    if cert.case_id == 2:
        b1, b2 = chain_arcs[0], chain_arcs[1]
        assert _covers(p, b2, b1) and _arcs_disjoint(b1, b2)
    return cert


# --------------------------------------------------------------- cascades

def find_cascade(g: CoverDigraph) -> Cascade | None:
    """Minimal certificate from a self-loop vertex lying on a cycle of
    length >= 2 (vertices distinct); ties broken by vertex order."""
    best: tuple[int, int, list[int]] | None = None
    for w in range(len(g.vertices)):
        if not g.has_edge(w, w):
            continue
        # breadth-first search for the shortest simple return w -> ... -> w
        parents: dict[int, int] = {}
        frontier = [j for j in g.adjacency[w] if j != w]
        for j in frontier:
            parents.setdefault(j, w)
        dist = 1
        found = None
        while frontier and found is None:
            nxt = []
            for j in frontier:
                if g.has_edge(j, w):
                    found = j
                    break
                for j2 in g.adjacency[j]:
                    if j2 != w and j2 not in parents:
                        parents[j2] = j
                        nxt.append(j2)
            frontier = nxt
            dist += 1
        if found is None:
            continue
        path = [found]
        while path[-1] != w:
            path.append(parents[path[-1]])
        cycle = list(reversed(path)) + [w]  # w, ..., found, w
        m = len(cycle) - 1
        if best is None or m < best[0]:
            best = (m, w, cycle)
    if best is None:
        return None
    m, w, cycle = best
    ends = tuple(g.vertices[i].endpoints for i in cycle)
    return Cascade(base=g.vertices[w].endpoints, cycle=ends, m=m)


# ---------------------------------------------------------- chaos search

def _iterate_index(p: StarPattern, i: MarkedPoint, t: int) -> MarkedPoint:
    for _ in range(t):
        i = p.successor(i)
    return i


def _ordering_holds(p: StarPattern, u: int, v: int, t: int) -> bool:
    """g(v) < u < v <= g(u) read along the arc from g(u) to g(v)."""
    gu, gv = _iterate_index(p, u, t), _iterate_index(p, v, t)
    if gu == gv:
        return False
    span = arc(gu, gv, p)
    pos_u, pos_v = span.position_of(u), span.position_of(v)
    if pos_u is None or pos_v is None:
        return False
    return pos_v < pos_u < len(span.points) - 1


def _theorem_shortcut(p: StarPattern) -> Genscramble | None:
    c = check_center_theorem(p)
    if c is not None:
        return Genscramble(1, c.u, c.v, (c.span, c.back, c.span))
    if p.n >= 3 and p.k == p.n + 2 and all(
        p.branch_size(b) for b in range(1, p.n + 1)
    ):
        c2 = check_nplus2_theorem(p)
        if c2 is not None:
            return Genscramble(1, c2.u, c2.v, (c2.span,) + c2.chain + (c2.span,))
    return None


def find_genscramble(p: StarPattern, max_iterate: int = 2) -> Genscramble | None:
    """Search iterates g of the canonical realization for a chaos
    certificate: an expanding pair g(v) < u < v <= g(u) plus a covering
    loop through arcs disjoint as required.  Arc endpoints are restricted
    to marked points; returns the first certificate in deterministic
    order (theorem-derived loops first, then pair scan), or None."""
    if max_iterate < 1:
        raise ValueError("max_iterate must be positive")
    shortcut = _theorem_shortcut(p)
    if shortcut is not None:
        assert verify_genscramble(p, shortcut)
        return shortcut
    m = realize(p)
    pairs = [
        (a, b)
        for a in range(p.k)
        for b in range(a + 1, p.k)
        if not arc(a, b, p).through_center
    ]
    trees = {e: subtree_of_arc(m, arc(*e, p)) for e in pairs}
    cap = 2 * len(basic_intervals(p)) + 2
    for t in range(1, max_iterate + 1):
        images = {e: image_of_arc(m, arc(*e, p), power=t) for e in pairs}
        for u in range(p.k):
            for v in range(p.k):
                if u == v or tuple(sorted((u, v))) not in trees:
                    continue
                if not _ordering_holds(p, u, v, t):
                    continue
                loop = _loop_search(p, m, u, v, t, pairs, trees, images, cap)
                if loop is not None:
                    return Genscramble(t, u, v, loop)
    return None


def _loop_search(p, m, u, v, t, pairs, trees, images, cap):
    """Breadth-first search over candidate arcs for the covering loop."""
    b0 = tuple(sorted((u, v)))
    gv = _iterate_index(p, v, t)
    first_region = subtree_of_arc(m, arc(gv, u, p)) if gv != u else None
    b0_image = images[b0]
    ((ubranch, ulo, uhi),) = trees[b0].segments

    def disjoint_from_open_uv(e):
        return not trees[e].overlaps_open_segment(ubranch, ulo, uhi)

    start = [
        e
        for e in pairs
        if first_region is not None
        and first_region.contains(trees[e])
        and b0_image.contains(trees[e])
    ]
    parents: dict[ArcEnds, ArcEnds | None] = {e: None for e in start}
    frontier = start
    depth = 1
    while frontier and depth <= cap:
        for e in frontier:
            if disjoint_from_open_uv(e):
                closing = next(
                    (f for f in pairs if images[e].contains(trees[f])
                     and trees[f].contains(trees[b0])),
                    None,
                )
                if closing is not None:
                    path = [closing, e]
                    while parents[path[-1]] is not None:
                        path.append(parents[path[-1]])
                    path.append(b0)
                    return tuple(reversed(path))
        nxt = []
        for e in frontier:
            for f in pairs:
                if f not in parents and images[e].contains(trees[f]):
                    parents[f] = e
                    nxt.append(f)
        frontier = nxt
        depth += 1
    return None


# ------------------------------------------------------------ verification

def verify_certificate(p: StarPattern, cert: Certificate, p_max: int = 10) -> bool:
    """Re-derive a certificate's claim from the pattern alone."""
    if isinstance(cert, CenterOrbit):
        return cert.period == p.k
    if isinstance(cert, ForcedPeriod):
        return cert.source_period == p.k and sharkovskii_le(cert.period, p.k)
    if isinstance(cert, CenterTheoremCase):
        return check_center_theorem(p) == cert
    if isinstance(cert, NPlus2Case):
        return check_nplus2_theorem(p) == cert
    if isinstance(cert, Cascade):
        return _verify_cascade(p, cert)
    if isinstance(cert, Genscramble):
        return verify_genscramble(p, cert)
    if isinstance(cert, OracleWitness):
        m = realize(p)
        w = cert.witness
        return m.iterate(w.point, w.period) == w.point and not any(
            m.iterate(w.point, d) == w.point
            for d in range(1, w.period)
            if w.period % d == 0
        )
    if isinstance(cert, OracleAbsence):
        return oracle_scan(realize(p), cert.period).witnesses == ()
    raise TypeError(f"unknown certificate {cert!r}")


def _verify_cascade(p: StarPattern, cert: Cascade) -> bool:
    g = cover_digraph(p)
    try:
        idx = [g.index_of(e) for e in cert.cycle]
        base = g.index_of(cert.base)
    except KeyError:
        return False
    if cert.m != len(cert.cycle) - 1 or cert.m < 2:
        return False
    if idx[0] != base or idx[-1] != base:
        return False
    if len(set(idx[:-1])) != cert.m:
        return False
    if not g.has_edge(base, base):
        return False
    return all(g.has_edge(i, j) for i, j in itertools.pairwise(idx))


def verify_genscramble(p: StarPattern, cert: Genscramble) -> bool:
    """Independent replay: recheck the ordering condition and every
    covering with fresh exact images."""
    t, u, v = cert.iterate, cert.u, cert.v
    if not cert.loop or cert.loop[0] != tuple(sorted((u, v))) and cert.loop[0] != (u, v):
        return False
    if not _ordering_holds(p, u, v, t):
        return False
    m = realize(p)
    arcs = [arc(*e, p) for e in cert.loop]
    if arc(u, v, p).through_center:
        return False
    if any(a.through_center for a in arcs[1:]):
        return False
    trees = [subtree_of_arc(m, a) for a in arcs]
    for s, d in itertools.pairwise(range(len(arcs))):
        if not image_of_arc(m, arcs[s], power=t).contains(trees[d]):
            return False
    if not trees[-1].contains(trees[0]):
        return False
    gv = _iterate_index(p, v, t)
    if gv == u or not subtree_of_arc(m, arc(gv, u, p)).contains(trees[1]):
        return False
    ((b, lo, hi),) = subtree_of_arc(m, arc(u, v, p)).segments
    if trees[-2].overlaps_open_segment(b, lo, hi):
        return False
    return True


# ----------------------------------------------------------------- report

@dataclass(frozen=True)
class PeriodStatus:
    status: str  # "present" | "absent"
    certificates: tuple[Certificate, ...]


@dataclass(frozen=True)
class PeriodicityReport:
    pattern: StarPattern
    p_max: int
    max_iterate: int
    periods: dict[int, PeriodStatus]
    chaos: Genscramble | None
    forced_baseline: frozenset[int]
    commentary: tuple[str, ...]

    @property
    def present(self) -> set[int]:
        return {q for q, s in self.periods.items() if s.status == "present"}

    @property
    def absent(self) -> set[int]:
        return {q for q, s in self.periods.items() if s.status == "absent"}


def periodicity_report(
    p: StarPattern, p_max: int = 10, max_iterate: int = 2
) -> PeriodicityReport:
    """Period-by-period account: structural certificates confirmed by the
    exact oracle, absences by exhaustive scan, chaos by loop search."""
    if p_max < 1:
        raise ValueError("p_max must be positive")
    m = realize(p)
    g = cover_digraph(p)
    forced = frozenset(forced_periods(1, p.k, p_max))

    claims: dict[int, list[Certificate]] = {q: [] for q in range(1, p_max + 1)}
    if p.k <= p_max:
        claims[p.k].append(CenterOrbit(p.k))
    for q in sorted(forced):
        if q != p.k and q <= p_max:
            claims[q].append(ForcedPeriod(q, p.k))
    ct = check_center_theorem(p)
    if ct is not None:
        for q in sorted(ct.claimed_periods(p_max)):
            claims[q].append(ct)
    n2 = None
    if ct is None and p.n >= 3 and p.k == p.n + 2 and all(
        p.branch_size(b) for b in range(1, p.n + 1)
    ):
        n2 = check_nplus2_theorem(p)
        if n2 is not None:
            for q in sorted(n2.claimed_periods(p_max)):
                claims[q].append(n2)
    cascade = find_cascade(g)
    if cascade is not None:
        for q in sorted(cascade.claimed_periods(p_max)):
            claims[q].append(cascade)

    periods: dict[int, PeriodStatus] = {}
    for q in range(1, p_max + 1):
        if claims[q]:
            w = first_witness(m, q)
            if w is None:
                raise InconsistencyError(
                    f"certificates {claims[q]!r} claim period {q} but the "
                    f"exact oracle finds no such point — this is a bug"
                )
            periods[q] = PeriodStatus(
                "present", tuple(claims[q]) + (OracleWitness(w),)
            )
        else:
            res = oracle_scan(m, q)
            if res.witnesses:
                periods[q] = PeriodStatus(
                    "present", (OracleWitness(res.witnesses[0]),)
                )
            else:
                periods[q] = PeriodStatus(
                    "absent", (OracleAbsence(q, res.cylinders),)
                )

    chaos = find_genscramble(p, max_iterate)
    walk_lengths = closed_walk_lengths(g, p_max)
    loop_only = self_loop_only_lengths(g, p_max)
    commentary = [
        "closed walk lengths up to "
        f"{p_max}: {sorted(walk_lengths)}",
    ]
    for q in sorted(loop_only):
        if q == 1:
            continue  # a self-loop does witness a fixed point
        w = next(i for i in range(len(g.vertices)) if g.has_edge(i, i))
        commentary.append(
            f"every closed walk of length {q} repeats the self-loop at "
            f"{g.vertices[w].label}; walk counting alone cannot certify "
            f"period {q}"
        )
    commentary.append(
        "absence statements describe the canonical realization; other "
        "continuous maps realizing this pattern may have extra periods"
    )
    return PeriodicityReport(
        pattern=p,
        p_max=p_max,
        max_iterate=max_iterate,
        periods=periods,
        chaos=chaos,
        forced_baseline=forced,
        commentary=tuple(commentary),
    )


# ------------------------------------------------------------------- JSON

def _point_json(pt) -> dict:
    return {"branch": pt.branch, "coord": f"{pt.coord.numerator}/{pt.coord.denominator}"}


def certificate_to_json(cert: Certificate) -> dict:
    if isinstance(cert, CenterOrbit):
        return {"kind": "center_orbit", "period": cert.period}
    if isinstance(cert, ForcedPeriod):
        return {
            "kind": "forced_period",
            "period": cert.period,
            "source_period": cert.source_period,
        }
    if isinstance(cert, CenterTheoremCase):
        return {
            "kind": "center_theorem",
            "case": cert.case_id,
            "u": cert.u,
            "v": cert.v,
            "span": list(cert.span),
            "back": list(cert.back),
        }
    if isinstance(cert, NPlus2Case):
        return {
            "kind": "nplus2_theorem",
            "case": cert.case_id,
            "u": cert.u,
            "v": cert.v,
            "span": list(cert.span),
            "chain": [list(e) for e in cert.chain],
        }
    if isinstance(cert, Cascade):
        return {
            "kind": "cascade",
            "base": list(cert.base),
            "cycle": [list(e) for e in cert.cycle],
            "m": cert.m,
        }
    if isinstance(cert, Genscramble):
        return {
            "kind": "genscramble",
            "iterate": cert.iterate,
            "u": cert.u,
            "v": cert.v,
            "loop": [list(e) for e in cert.loop],
        }
    if isinstance(cert, OracleWitness):
        w = cert.witness
        return {
            "kind": "oracle_witness",
            "point": _point_json(w.point),
            "period": w.period,
            "on_center_orbit": w.on_center_orbit,
        }
    if isinstance(cert, OracleAbsence):
        return {
            "kind": "oracle_absence",
            "period": cert.period,
            "cylinders": cert.cylinders,
        }
    raise TypeError(f"unknown certificate {cert!r}")


def report_to_json(r: PeriodicityReport) -> dict:
    return {
        "pattern": r.pattern.to_json_dict(),
        "p_max": r.p_max,
        "max_iterate": r.max_iterate,
        "periods": {
            str(q): {
                "status": s.status,
                "certs": [certificate_to_json(c) for c in s.certificates],
            }
            for q, s in sorted(r.periods.items())
        },
        "chaos": {
            "status": "certified" if r.chaos is not None else "not_found",
            "cert": certificate_to_json(r.chaos) if r.chaos is not None else None,
        },
        "forced_baseline": sorted(r.forced_baseline),
        "commentary": list(r.commentary),
    }
