"""Exact piecewise-linear realization of a pattern and its periodic-point
oracle.

The canonical realization puts the orbit point of rank r at coordinate r
on its branch and connects the dots: each basic interval is mapped
arclength-linearly onto the arc between its endpoint images, splitting at
the preimage of the center when the image crosses it.  Marked points sit
at integer coordinates and every basic interval has length one, so every
piece has integer slope and offset; compositions of pieces stay integer
and only interval endpoints ever need fractions.  All arithmetic is
exact.

Patterns may leave branches empty; those are not realized.  A continuous
extension constant equal to f(center) exists on an empty branch and adds
no periodic points, so the oracle's completeness is unaffected.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction

from .patterns import CENTER_INDEX, Arc, MarkedPoint, StarPattern, arc

DEFAULT_CYLINDER_CAP = 10**6
_CAP_ENV = "STARDYN_CYLINDER_CAP"


class DomainError(ValueError):
    """Point outside the realized star."""


class OracleError(RuntimeError):
    pass


class CylinderCapExceeded(OracleError):
    def __init__(self, cap: int):
        super().__init__(f"cylinder cap {cap} exceeded")
        self.cap = cap


class UncountablePeriodicSet(OracleError):
    """Some iterate is the identity on a whole interval, so the set of
    points of this least period is uncountable and cannot be listed.
    ``witness`` is one representative."""

    def __init__(self, period: int, witness: "PeriodicWitness"):
        super().__init__(
            f"uncountably many points of least period {period}; "
            f"one representative is {witness.point}"
        )
        self.period = period
        self.witness = witness


class LoopError(ValueError):
    """Input to loop_point is not a covering loop."""


@dataclass(frozen=True, order=True)
class RationalPoint:
    """A point of the star: branch index (0 for the center) and exact
    coordinate in rank units.  coordinate 0 is the center and always
    carries branch 0."""

    branch: int
    coord: Fraction


CENTER = RationalPoint(0, Fraction(0))


def make_point(branch: int, coord: Fraction | int) -> RationalPoint:
    c = Fraction(coord)
    if c == 0:
        return CENTER
    return RationalPoint(branch, c)


@dataclass(frozen=True)
class Piece:
    """One affine piece: [lo, hi] on src maps to slope*t + offset on dst."""

    src: int
    lo: Fraction
    hi: Fraction
    dst: int
    slope: int
    offset: int


@dataclass(frozen=True)
class PeriodicWitness:
    point: RationalPoint
    period: int
    itinerary: tuple[int, ...]
    on_center_orbit: bool


@dataclass(frozen=True)
class ScanResult:
    """Raw outcome of a cylinder scan for one period.

    ``family`` is a representative of an interval of least-period-p points
    when one exists (the scan stops there and ``complete`` is False).
    """

    witnesses: tuple[PeriodicWitness, ...]
    cylinders: int
    family: PeriodicWitness | None
    complete: bool


@dataclass(frozen=True)
class Subtree:
    """A closed connected union of branch segments, e.g. the exact image
    of an arc.  Segments are (branch, lo, hi) with lo < hi; when two or
    more branches appear, every segment starts at the center."""

    segments: tuple[tuple[int, Fraction, Fraction], ...]

    @property
    def touches_center(self) -> bool:
        return any(lo == 0 for _, lo, _ in self.segments)

    def contains(self, other: "Subtree") -> bool:
        for b, lo, hi in other.segments:
            if not any(
                sb == b and slo <= lo and hi <= shi
                for sb, slo, shi in self.segments
            ):
                return False
        return True

    def contains_point(self, pt: RationalPoint) -> bool:
        if pt == CENTER:
            return self.touches_center
        return any(
            b == pt.branch and lo <= pt.coord <= hi
            for b, lo, hi in self.segments
        )

    def overlaps_open_segment(self, branch: int, lo: Fraction, hi: Fraction) -> bool:
        """Whether this subtree meets the open interval (lo, hi) on branch."""
        return any(
            b == branch and max(slo, lo) < min(shi, hi)
            for b, slo, shi in self.segments
        )


def subtree_from_segments(segs: dict[int, tuple[Fraction, Fraction]]) -> Subtree:
    cleaned = {b: (lo, hi) for b, (lo, hi) in segs.items() if lo < hi}
    if len(cleaned) > 1 and any(lo != 0 for lo, _ in cleaned.values()):
        raise ValueError("disconnected subtree: multi-branch segments must reach the center")
    return Subtree(tuple(sorted((b, lo, hi) for b, (lo, hi) in cleaned.items())))


@dataclass(frozen=True)
class PLMap:
    """The canonical PL realization of a pattern.

    ``branch_lengths[b]`` is the number of orbit points on branch b (the
    realized length); ``pieces`` partition every occupied branch and each
    maps into a single closed branch.
    """

    pattern: StarPattern
    branch_lengths: tuple[int, ...]  # index 0 unused
    pieces: tuple[Piece, ...]

    def marked_point(self, i: MarkedPoint) -> RationalPoint:
        if i == CENTER_INDEX:
            return CENTER
        return RationalPoint(self.pattern.branch_of(i), Fraction(self.pattern.rank_of(i)))

    def pieces_on(self, branch: int) -> tuple[Piece, ...]:
        return tuple(q for q in self.pieces if q.src == branch)

    def evaluate(self, x: RationalPoint) -> RationalPoint:
        """Exact image of a point."""
        if x == CENTER:
            return self.marked_point(1 % self.pattern.k)
        if not 1 <= x.branch <= self.pattern.n or not (
            0 <= x.coord <= self.branch_lengths[x.branch]
        ):
            raise DomainError(f"{x} is outside the realized star")
        for q in self.pieces:
            if q.src == x.branch and q.lo <= x.coord <= q.hi:
                return make_point(q.dst, q.slope * x.coord + q.offset)
        raise DomainError(f"{x} is outside the realized star")

    def iterate(self, x: RationalPoint, steps: int) -> RationalPoint:
        for _ in range(steps):
            x = self.evaluate(x)
        return x


def realize(p: StarPattern) -> PLMap:
    """Build the canonical realization; requires a valid pattern."""
    from .patterns import validate

    problems = validate(p)
    if problems:
        raise ValueError("cannot realize an invalid pattern: " + "; ".join(problems))
    lengths = [0] * (p.n + 1)
    for b in range(1, p.n + 1):
        lengths[b] = p.branch_size(b)

    def coord_of(i: MarkedPoint) -> RationalPoint:
        if i == CENTER_INDEX:
            return CENTER
        return RationalPoint(p.branch_of(i), Fraction(p.rank_of(i)))

    pieces: list[Piece] = []
    for b in range(1, p.n + 1):
        chain = (CENTER_INDEX,) + p.branch_points(b)
        for r in range(1, len(chain)):
            inner, outer = chain[r - 1], chain[r]
            a_img = coord_of(p.successor(inner))
            b_img = coord_of(p.successor(outer))
            lo, hi = Fraction(r - 1), Fraction(r)
            if a_img.branch == b_img.branch or a_img == CENTER or b_img == CENTER:
                dst = b_img.branch if a_img == CENTER else a_img.branch
                slope = int(b_img.coord - a_img.coord)
                offset = int(a_img.coord - slope * (r - 1))
                pieces.append(Piece(b, lo, hi, dst, slope, offset))
            else:
                # image arc crosses the center: split at its preimage
                total = int(a_img.coord + b_img.coord)
                split = lo + Fraction(int(a_img.coord), total)
                down_slope = -total
                down_offset = int(a_img.coord + (r - 1) * total)
                up_slope = total
                up_offset = -down_offset
                pieces.append(Piece(b, lo, split, a_img.branch, down_slope, down_offset))
                pieces.append(Piece(b, split, hi, b_img.branch, up_slope, up_offset))
    pieces.sort(key=lambda q: (q.src, q.lo))
    return PLMap(pattern=p, branch_lengths=tuple(lengths), pieces=tuple(pieces))


# ------------------------------------------------------------- set images

def subtree_of_arc(m: PLMap, a: Arc) -> Subtree:
    """The arc as a geometric subtree of the realization."""
    p = m.pattern

    def coord(i: MarkedPoint) -> tuple[int, Fraction]:
        if i == CENTER_INDEX:
            return (0, Fraction(0))
        return (p.branch_of(i), Fraction(p.rank_of(i)))

    (ba, ca), (bb, cb) = coord(a.a), coord(a.b)
    if ba == 0:
        return subtree_from_segments({bb: (Fraction(0), cb)})
    if bb == 0:
        return subtree_from_segments({ba: (Fraction(0), ca)})
    if ba == bb:
        return subtree_from_segments({ba: (min(ca, cb), max(ca, cb))})
    return subtree_from_segments({ba: (Fraction(0), ca), bb: (Fraction(0), cb)})


def image_of_subtree(m: PLMap, s: Subtree) -> Subtree:
    """Exact image of a subtree under one application of the map."""
    out: dict[int, tuple[Fraction, Fraction]] = {}
    for b, lo, hi in s.segments:
        for q in m.pieces:
            if q.src != b:
                continue
            olo, ohi = max(lo, q.lo), min(hi, q.hi)
            if olo >= ohi:
                continue
            y1, y2 = q.slope * olo + q.offset, q.slope * ohi + q.offset
            ilo, ihi = (y1, y2) if y1 <= y2 else (y2, y1)
            if q.dst in out:
                plo, phi = out[q.dst]
                out[q.dst] = (min(plo, ilo), max(phi, ihi))
            else:
                out[q.dst] = (ilo, ihi)
    return subtree_from_segments(out)


def image_of_arc(m: PLMap, a: Arc, power: int = 1) -> Subtree:
    """Exact image of an arc under ``power`` applications of the map."""
    s = subtree_of_arc(m, a)
    for _ in range(power):
        s = image_of_subtree(m, s)
    return s


# ------------------------------------------------------- periodic points

def _cap_value(cap: int | None) -> int:
    if cap is not None:
        return cap
    return int(os.environ.get(_CAP_ENV, DEFAULT_CYLINDER_CAP))


def _proper_divisors(p: int) -> list[int]:
    return [d for d in range(1, p) if p % d == 0]


def _on_center_orbit(m: PLMap, pt: RationalPoint) -> bool:
    if pt == CENTER:
        return True
    if pt.coord.denominator != 1:
        return False
    p = m.pattern
    r = int(pt.coord)
    return any(
        p.placements[i - 1] == (pt.branch, r) for i in range(1, p.k)
    )


def _least_period_is(m: PLMap, pt: RationalPoint, p: int) -> bool:
    for d in _proper_divisors(p):
        if m.iterate(pt, d) == pt:
            return False
    return m.iterate(pt, p) == pt


@dataclass(frozen=True)
class Cylinder:
    """A maximal interval on which the p-th iterate is a single affine map:
    t in [lo, hi] on branch ``b0`` maps to slope*t + offset on ``branch``."""

    b0: int
    lo: Fraction
    hi: Fraction
    slope: int
    offset: int
    branch: int
    itinerary: tuple[int, ...]


def iter_cylinders(m: PLMap, p: int, cap: int | None = None):
    """Depth-first stream of the monotone cylinders of the p-th iterate.
    Raises CylinderCapExceeded when more than the cap are expanded (env
    STARDYN_CYLINDER_CAP overrides the default of 10**6)."""
    if p < 1:
        raise ValueError("period must be positive")
    limit = _cap_value(cap)
    by_branch: dict[int, list[tuple[int, Piece]]] = {}
    for idx, q in enumerate(m.pieces):
        by_branch.setdefault(q.src, []).append((idx, q))
    count = 0
    # stack entries: (depth, b0, lo, hi, slope, offset, cur_branch, itinerary)
    stack = [
        (1, q.src, q.lo, q.hi, q.slope, q.offset, q.dst, (idx,))
        for idx, q in reversed(list(enumerate(m.pieces)))
    ]
    while stack:
        depth, b0, lo, hi, s, d, cur, itin = stack.pop()
        count += 1
        if count > limit:
            raise CylinderCapExceeded(limit)
        if depth == p:
            yield Cylinder(b0, lo, hi, s, d, cur, itin)
            continue
        ilo, ihi = (s * lo + d, s * hi + d) if s > 0 else (s * hi + d, s * lo + d)
        for idx, q in by_branch.get(cur, ()):
            olo, ohi = max(ilo, q.lo), min(ihi, q.hi)
            if olo >= ohi:
                continue
            t1, t2 = (olo - d) / s, (ohi - d) / s
            nlo, nhi = (t1, t2) if t1 <= t2 else (t2, t1)
            stack.append(
                (depth + 1, b0, nlo, nhi, q.slope * s, q.slope * d + q.offset,
                 q.dst, itin + (idx,))
            )


def oracle_scan(m: PLMap, p: int, cap: int | None = None, first_only: bool = False) -> ScanResult:
    """Subdivide the p-th iterate into monotone cylinders and solve the
    affine fixed-point equation on each.

    Finds every point of least period exactly p.  When an iterate is the
    identity on a nondegenerate cylinder the family is uncountable; the
    scan then reports one representative and flags the result incomplete.
    """
    found: list[PeriodicWitness] = []
    seen: set[RationalPoint] = set()

    def emit(pt: RationalPoint, itin: tuple[int, ...]) -> PeriodicWitness | None:
        if pt in seen:
            return None
        seen.add(pt)
        if not _least_period_is(m, pt, p):
            return None
        w = PeriodicWitness(pt, p, itin, _on_center_orbit(m, pt))
        found.append(w)
        return w

    cylinders = 0
    for c in iter_cylinders(m, p, cap=cap):
        cylinders += 1
        b0, lo, hi, s, d, cur, itin = (
            c.b0, c.lo, c.hi, c.slope, c.offset, c.branch, c.itinerary
        )
        if s == 1 and d == 0 and cur == b0:
            t = _identity_cylinder_representative(m, p, b0, lo, hi, itin)
            if t is not None:
                fam = PeriodicWitness(
                    make_point(b0, t), p, itin, _on_center_orbit(m, make_point(b0, t))
                )
                if fam.point not in seen:
                    found.append(fam)
                return ScanResult(tuple(found), cylinders, fam, False)
        elif s == 1:
            # translation on the cylinder: only the center can be fixed
            if d == 0 and lo <= 0 <= hi:
                emit(CENTER, itin)
        else:
            t = Fraction(d, 1 - s)
            if lo <= t <= hi and (cur == b0 or t == 0):
                emit(make_point(b0, t), itin)
        if found and first_only:
            return ScanResult(tuple(found), cylinders, None, False)
    found.sort(key=lambda w: (w.point.branch, w.point.coord))
    return ScanResult(tuple(found), cylinders, None, True)


def _identity_cylinder_representative(m, p, b0, lo, hi, itin) -> Fraction | None:
    """The p-th iterate fixes [lo, hi] pointwise.  Unless some proper-divisor
    iterate is also the identity here (then every point has a smaller period
    and None is returned), points of smaller period form a finite exception
    set and any other point of the interval has least period exactly p."""
    bad: set[Fraction] = set()
    for dd in _proper_divisors(p):
        ds, doff, dcur = 1, 0, b0
        for idx in itin[:dd]:
            q = m.pieces[idx]
            ds, doff, dcur = q.slope * ds, q.slope * doff + q.offset, q.dst
        if ds == 1 and doff == 0 and dcur == b0:
            return None
        if ds == 1:
            if doff == 0 and lo <= 0 <= hi:
                bad.add(Fraction(0))
            continue
        t = Fraction(doff, 1 - ds)
        if lo <= t <= hi and (dcur == b0 or t == 0):
            bad.add(t)
    steps = len(bad) + 2
    for j in range(steps + 1):
        t = lo + (hi - lo) * Fraction(j, steps)
        if t not in bad:
            assert _least_period_is(m, make_point(b0, t), p)
            return t
    raise AssertionError("identity cylinder without a representative")


def periodic_points(m: PLMap, p: int, cap: int | None = None) -> list[PeriodicWitness]:
    """The complete list of points of least period exactly p, sorted by
    (branch, coordinate).

    Raises UncountablePeriodicSet when the set is a whole interval (some
    iterate is the identity there) and CylinderCapExceeded past the cap
    (env STARDYN_CYLINDER_CAP overrides the default of 10**6).
    """
    res = oracle_scan(m, p, cap=cap)
    if res.family is not None:
        raise UncountablePeriodicSet(p, res.family)
    return list(res.witnesses)


def first_witness(m: PLMap, p: int, cap: int | None = None) -> PeriodicWitness | None:
    """One point of least period exactly p, or None after exhausting every
    cylinder (which proves absence)."""
    res = oracle_scan(m, p, cap=cap, first_only=True)
    return res.witnesses[0] if res.witnesses else None


# ------------------------------------------------------------ loop points

def loop_point(m: PLMap, loop: list[Arc]) -> RationalPoint:
    """A point realizing a covering loop: given arcs I_0, ..., I_p with
    f(I_{i-1}) containing I_i, the center interior to no arc after the
    first, and I_p containing I_0, returns x with f^p(x) = x and
    f^i(x) in I_i, found by exact forward subdivision constrained to the
    loop (equivalent to the nested-preimage shrink construction).
    """
    if len(loop) == 1:
        # a single self-covered arc is the one-step loop I, I
        loop = [loop[0], loop[0]]
    if len(loop) < 2:
        raise LoopError("a loop needs at least one arc")
    for a in loop:
        if a.pattern != m.pattern:
            raise LoopError("loop arcs belong to a different pattern")
    for i, a in enumerate(loop):
        if i >= 1 and a.through_center:
            raise LoopError(f"arc {i} has the center in its interior")
    targets = [subtree_of_arc(m, a) for a in loop]
    for i in range(1, len(loop)):
        if not image_of_subtree(m, targets[i - 1]).contains(targets[i]):
            raise LoopError(f"covering fails at step {i}: f(I_{i - 1}) does not contain I_{i}")
    if not targets[-1].contains(targets[0]):
        raise LoopError("last arc does not contain the first")

    p = len(loop) - 1
    candidates: list[RationalPoint] = []
    # constrained cylinders; degenerate (single point) cylinders are kept
    # so orbits passing exactly through the center are not lost
    stack = []
    for b, lo, hi in targets[0].segments:
        stack.append((0, b, lo, hi, 1, 0, b))
    while stack:
        depth, b0, lo, hi, s, d, cur = stack.pop()
        if depth == p:
            sol: Fraction | None = None
            if s == 1:
                if d == 0 and cur == b0:
                    sol = lo
                elif d == 0 and lo <= 0 <= hi:
                    sol = Fraction(0)
            else:
                t = Fraction(d, 1 - s)
                if lo <= t <= hi and (cur == b0 or t == 0):
                    sol = t
            if sol is not None:
                candidates.append(make_point(b0, sol))
            continue
        ilo, ihi = (s * lo + d, s * hi + d) if s >= 0 else (s * hi + d, s * lo + d)
        tb, tlo, thi = _single_segment(targets[depth + 1])
        for q in m.pieces:
            if q.src != cur:
                continue
            olo, ohi = max(ilo, q.lo), min(ihi, q.hi)
            if olo > ohi:
                continue
            # constrain the next point to lie in the target arc
            if q.dst == tb:
                y1, y2 = q.slope * olo + q.offset, q.slope * ohi + q.offset
                ylo, yhi = (y1, y2) if y1 <= y2 else (y2, y1)
                clo, chi = max(ylo, tlo), min(yhi, thi)
            elif tlo == 0:
                # the target touches the center; a crossing at exactly 0 counts
                y1, y2 = q.slope * olo + q.offset, q.slope * ohi + q.offset
                ylo, yhi = (y1, y2) if y1 <= y2 else (y2, y1)
                clo, chi = (Fraction(0), Fraction(0)) if ylo <= 0 <= yhi else (Fraction(1), Fraction(0))
            else:
                continue
            if clo > chi:
                continue
            ns, nd = q.slope * s, q.slope * d + q.offset
            t1, t2 = (clo - nd) / ns, (chi - nd) / ns
            nlo, nhi = (t1, t2) if t1 <= t2 else (t2, t1)
            nlo, nhi = max(nlo, lo), min(nhi, hi)
            if nlo > nhi:
                continue
            stack.append((depth + 1, b0, nlo, nhi, ns, nd, q.dst))
    for pt in sorted(set(candidates)):
        if m.iterate(pt, p) != pt:
            continue
        ok = all(
            targets[i].contains_point(m.iterate(pt, i)) for i in range(p + 1)
        )
        if ok:
            return pt
    raise AssertionError("verified loop yielded no fixed point")


def _single_segment(s: Subtree) -> tuple[int, Fraction, Fraction]:
    if len(s.segments) != 1:
        raise LoopError("loop arcs after the first must lie in one branch")
    return s.segments[0]


# ------------------------------------------------------------- diagnostics

def scramble_probe(
    m: PLMap, x: RationalPoint, y: RationalPoint, n: int, step: int = 1
) -> tuple[Fraction, Fraction]:
    """Exact (min, max) separation of two orbits over n samples, measured
    every ``step`` applications of the map, after rescaling each branch to
    unit length."""

    def unit_distance(a: RationalPoint, b: RationalPoint) -> Fraction:
        def scaled(pt: RationalPoint) -> tuple[int, Fraction]:
            if pt == CENTER:
                return (0, Fraction(0))
            return (pt.branch, pt.coord / m.branch_lengths[pt.branch])

        (ba, ca), (bb, cb) = scaled(a), scaled(b)
        if ba == bb:
            return abs(ca - cb)
        return ca + cb

    lo = hi = None
    for _ in range(n):
        x = m.iterate(x, step)
        y = m.iterate(y, step)
        gap = unit_distance(x, y)
        lo = gap if lo is None or gap < lo else lo
        hi = gap if hi is None or gap > hi else hi
    return lo, hi
