"""Star graphs and finite orbit patterns of the branch point.

The space is an n-od: n arcs (proper branches) glued at a common center.
A pattern records where the forward orbit of the center lands: orbit point
i (1 <= i <= k-1) sits on proper branch ``branch_of(i)`` at ``rank_of(i)``
steps out from the center (rank 1 is closest).  Index 0 is the center
itself and the dynamics on indices is i -> (i+1) mod k.

Everything in this module is purely combinatorial; the exact geometric
realization lives in plmap.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass

# A marked point is an orbit index: 0 is the center, 1..k-1 the rest.
MarkedPoint = int

CENTER_INDEX = 0


class PatternError(ValueError):
    """Semantic problem with a pattern or finite-orbit description."""


class PatternSyntaxError(PatternError):
    """Unparseable pattern text; ``position`` is a character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class EnumerationCapExceeded(RuntimeError):
    """Pattern enumeration would exceed the configured cap."""


@dataclass(frozen=True)
class StarPattern:
    """Orbit pattern of the center of an n-od.

    ``placements[i-1]`` is the (branch, rank) of orbit point i, with
    branches numbered 1..n and ranks counted outward from 1.  The center
    (index 0) has no placement.  Construction never validates; use
    :func:`validate` to collect violations.
    """

    n: int
    k: int
    placements: tuple[tuple[int, int], ...]

    def branch_of(self, i: MarkedPoint) -> int:
        if i == CENTER_INDEX:
            raise PatternError("the center lies on no proper branch")
        return self.placements[i - 1][0]

    def rank_of(self, i: MarkedPoint) -> int:
        if i == CENTER_INDEX:
            raise PatternError("the center has no rank")
        return self.placements[i - 1][1]

    def successor(self, i: MarkedPoint) -> MarkedPoint:
        return (i + 1) % self.k

    def branch_points(self, b: int) -> tuple[int, ...]:
        """Orbit indices on branch b ordered by increasing rank."""
        pts = [i for i in range(1, self.k) if self.placements[i - 1][0] == b]
        pts.sort(key=self.rank_of)
        return tuple(pts)

    @property
    def branches(self) -> tuple[tuple[int, ...], ...]:
        """Per-branch index tuples in rank order (the serialized view)."""
        return tuple(self.branch_points(b) for b in range(1, self.n + 1))

    def branch_size(self, b: int) -> int:
        return sum(1 for br, _ in self.placements if br == b)

    def occupied_branches(self) -> tuple[int, ...]:
        return tuple(b for b in range(1, self.n + 1) if self.branch_size(b) > 0)

    def point_at(self, b: int, r: int) -> MarkedPoint:
        for i in range(1, self.k):
            if self.placements[i - 1] == (b, r):
                return i
        raise PatternError(f"no orbit point at branch {b} rank {r}")

    def to_text(self) -> str:
        parts = [f"n={self.n} k={self.k}"]
        for b, pts in enumerate(self.branches, start=1):
            body = " ".join(str(i) for i in pts)
            parts.append(f"b{b}: {body}" if body else f"b{b}:")
        return "; ".join(parts)

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "branches": [list(pts) for pts in self.branches],
        }


def _pattern_from_branches(n: int, k: int, branches) -> StarPattern:
    placements: list[tuple[int, int]] = [(0, 0)] * (k - 1)
    for b, pts in enumerate(branches, start=1):
        for r, i in enumerate(pts, start=1):
            placements[i - 1] = (b, r)
    return StarPattern(n=n, k=k, placements=tuple(placements))


def _check_index_cover(k: int, branches) -> None:
    """Branch sections must list each of 1..k-1 exactly once."""
    listed = [i for pts in branches for i in pts]
    for i in listed:
        if not 1 <= i <= k - 1:
            raise PatternError(f"orbit index {i} out of range for k={k}")
    if len(set(listed)) < len(listed):
        dups = sorted({i for i in listed if listed.count(i) > 1})
        raise PatternError(f"duplicate orbit indices: {dups}")
    missing = sorted(set(range(1, k)) - set(listed))
    if missing:
        raise PatternError(f"missing orbit indices: {missing}")


# ---------------------------------------------------------------- parsing

_HEADER_RE = re.compile(r"n=(\d+)\s+k=(\d+)\s*")
_BRANCH_RE = re.compile(r"\s*b(\d+):((?:\s+\d+)*)\s*")


def parse_pattern(text: str, all_branches: bool = False) -> StarPattern:
    """Parse the one-line pattern format ``n=3 k=5; b1: 1 3; b2: 2; b3: 4``.

    Branch sections list orbit indices in increasing distance from the
    center.  Raises PatternSyntaxError with a character position for
    malformed text and PatternError for semantic violations.
    """
    m = _HEADER_RE.match(text)
    if not m:
        raise PatternSyntaxError("expected header 'n=<int> k=<int>'", 0)
    n, k = int(m.group(1)), int(m.group(2))
    pos = m.end()
    branches: list[tuple[int, ...]] = []
    label = 0
    while pos < len(text):
        if text[pos] != ";":
            raise PatternSyntaxError("expected ';'", pos)
        pos += 1
        bm = _BRANCH_RE.match(text, pos)
        if not bm:
            raise PatternSyntaxError("expected 'b<i>: <indices>'", pos)
        label += 1
        if int(bm.group(1)) != label:
            raise PatternSyntaxError(f"expected branch label b{label}", pos)
        branches.append(tuple(int(t) for t in bm.group(2).split()))
        pos = bm.end()
    if label != n:
        raise PatternError(f"header says n={n} but found {label} branch sections")
    _check_index_cover(k, branches)
    pattern = _pattern_from_branches(n, k, branches)
    problems = validate(pattern, all_branches=all_branches)
    if problems:
        raise PatternError("; ".join(problems))
    return pattern


def pattern_from_json_dict(obj: dict, all_branches: bool = False) -> StarPattern:
    """Build a pattern from the ``{"n":…,"k":…,"branches":[[…],…]}`` form."""
    try:
        n, k = int(obj["n"]), int(obj["k"])
        branches = [tuple(int(i) for i in pts) for pts in obj["branches"]]
    except (KeyError, TypeError) as exc:
        raise PatternError(f"malformed pattern object: {exc}") from exc
    if len(branches) != n:
        raise PatternError(f"header says n={n} but found {len(branches)} branches")
    _check_index_cover(k, branches)
    pattern = _pattern_from_branches(n, k, branches)
    problems = validate(pattern, all_branches=all_branches)
    if problems:
        raise PatternError("; ".join(problems))
    return pattern


def validate(p: StarPattern, all_branches: bool = False) -> list[str]:
    """Collect invariant violations; an empty list means the pattern is good.

    Never raises: degenerate constructions are reported, not rejected.
    """
    problems: list[str] = []
    if p.n < 1:
        problems.append(f"branch count n={p.n} must be at least 1")
    if p.k < 2:
        problems.append(f"orbit size k={p.k} must be at least 2")
    if len(p.placements) != max(p.k - 1, 0):
        problems.append(
            f"expected {max(p.k - 1, 0)} placements for k={p.k}, got {len(p.placements)}"
        )
        return problems
    by_branch: dict[int, list[int]] = {}
    for i in range(1, p.k):
        b, r = p.placements[i - 1]
        if not 1 <= b <= p.n:
            problems.append(f"point {i} on nonexistent branch {b}")
            continue
        by_branch.setdefault(b, []).append(r)
    for b, ranks in sorted(by_branch.items()):
        seen = sorted(ranks)
        if seen != list(range(1, len(seen) + 1)):
            if len(set(seen)) < len(seen):
                problems.append(f"branch b{b} has duplicate ranks")
            else:
                problems.append(f"branch b{b} has a rank gap: ranks {seen}")
    if all_branches:
        for b in range(1, p.n + 1):
            if b not in by_branch:
                problems.append(f"branch b{b} empty while flagged all-branches")
    return problems


# ------------------------------------------------------- canonical classes

def canonicalize(p: StarPattern) -> StarPattern:
    """Lexicographically least representative under branch permutations.

    The branch index tuples (in rank order) are sorted as sequences; two
    patterns are branch-permutation equivalent iff they canonicalize to
    the same pattern.
    """
    return _pattern_from_branches(p.n, p.k, tuple(sorted(p.branches)))


def _raw_arrangements(n: int, k: int):
    """Yield every per-branch arrangement of indices 1..k-1 (rank order
    significant), as a tuple of n index tuples."""

    def insert(branches: list[list[int]], i: int):
        if i == k:
            yield tuple(tuple(br) for br in branches)
            return
        for b in range(n):
            for pos in range(len(branches[b]) + 1):
                branches[b].insert(pos, i)
                yield from insert(branches, i + 1)
                branches[b].pop(pos)

    yield from insert([[] for _ in range(n)], 1)


def iter_patterns(n: int, k: int, all_branches: bool = False):
    """Yield every raw pattern (no dedup) with the given shape."""
    for branches in _raw_arrangements(n, k):
        if all_branches and any(not br for br in branches):
            continue
        yield _pattern_from_branches(n, k, branches)


def enumerate_patterns(
    n: int, k: int, all_branches: bool = False, cap: int = 10**6
) -> list[StarPattern]:
    """All branch-permutation classes with the given shape, one canonical
    representative each, sorted by serialized form.

    Raises EnumerationCapExceeded if more than ``cap`` raw patterns would
    be visited.
    """
    if n < 1 or k < 2:
        raise PatternError(f"enumeration needs n >= 1 and k >= 2, got n={n} k={k}")
    seen: set[tuple[tuple[int, ...], ...]] = set()
    count = 0
    for p in iter_patterns(n, k, all_branches=all_branches):
        count += 1
        if count > cap:
            raise EnumerationCapExceeded(
                f"more than {cap} raw patterns for n={n} k={k}"
            )
        seen.add(canonicalize(p).branches)
    reps = [_pattern_from_branches(n, k, brs) for brs in sorted(seen)]
    return reps


# ----------------------------------------------------------------- arcs

@dataclass(frozen=True)
class Arc:
    """Ordered arc between two marked points of one pattern.

    ``points`` is the full traversal, every marked point met on the way
    from a to b inclusive.  Consecutive traversal points are exactly one
    rank apart, so the traversal index doubles as arclength in rank
    coordinates.
    """

    pattern: StarPattern
    a: MarkedPoint
    b: MarkedPoint
    points: tuple[MarkedPoint, ...]

    @property
    def through_center(self) -> bool:
        """True when the center is interior to the arc."""
        return CENTER_INDEX in self.points[1:-1]

    def basic_ids(self) -> frozenset[tuple[int, int]]:
        """Decomposition into basic intervals, as (branch, outer rank) ids."""
        ids = set()
        for x, y in itertools.pairwise(self.points):
            ids.add(_segment_id(self.pattern, x, y))
        return frozenset(ids)

    def position_of(self, x: MarkedPoint) -> int | None:
        """Traversal index of x on the arc (arclength from a), or None."""
        try:
            return self.points.index(x)
        except ValueError:
            return None


def _segment_id(p: StarPattern, x: MarkedPoint, y: MarkedPoint) -> tuple[int, int]:
    # x, y adjacent marked points (one may be the center)
    if x == CENTER_INDEX:
        return (p.branch_of(y), p.rank_of(y))
    if y == CENTER_INDEX:
        return (p.branch_of(x), p.rank_of(x))
    bx, by = p.branch_of(x), p.branch_of(y)
    if bx != by:
        raise PatternError("segment endpoints straddle the center")
    return (bx, max(p.rank_of(x), p.rank_of(y)))


def _descent_to_center(p: StarPattern, a: MarkedPoint) -> list[MarkedPoint]:
    """Marked points from a down to the center, inclusive."""
    b = p.branch_of(a)
    ordered = p.branch_points(b)
    below = [i for i in ordered if p.rank_of(i) <= p.rank_of(a)]
    below.sort(key=p.rank_of, reverse=True)
    return below + [CENTER_INDEX]


def arc(a: MarkedPoint, b: MarkedPoint, p: StarPattern) -> Arc:
    """The unique arc from a to b with its ordered marked-point traversal."""
    for x in (a, b):
        if not 0 <= x < p.k:
            raise PatternError(f"marked point {x} out of range for k={p.k}")
    if a == b:
        raise PatternError("arc endpoints must be distinct")
    if a == CENTER_INDEX:
        up = _descent_to_center(p, b)
        return Arc(p, a, b, tuple(reversed(up)))
    if b == CENTER_INDEX:
        return Arc(p, a, b, tuple(_descent_to_center(p, a)))
    ba, bb = p.branch_of(a), p.branch_of(b)
    if ba == bb:
        ordered = p.branch_points(ba)
        ra, rb = p.rank_of(a), p.rank_of(b)
        lo, hi = min(ra, rb), max(ra, rb)
        run = [i for i in ordered if lo <= p.rank_of(i) <= hi]
        if ra > rb:
            run.reverse()
        return Arc(p, a, b, tuple(run))
    down = _descent_to_center(p, a)
    up = _descent_to_center(p, b)
    return Arc(p, a, b, tuple(down + list(reversed(up))[1:]))


def arc_contains(outer: Arc, inner: Arc) -> bool:
    """Whether ``inner`` lies inside ``outer`` (same pattern required)."""
    if outer.pattern != inner.pattern:
        raise PatternError("arcs belong to different patterns")
    return inner.basic_ids() <= outer.basic_ids()


# ---------------------------------------------------------- orbit specs

@dataclass(frozen=True)
class FiniteOrbitSpec:
    """A finite invariant cycle that need not contain the center.

    Points are 0..k-1.  ``center_point`` names the point that is the
    center, or None when the cycle misses it; the center's placement
    entry is ignored.  ``succ`` is the dynamics and must be a single
    k-cycle.
    """

    n: int
    k: int
    placements: tuple[tuple[int, int], ...]
    succ: tuple[int, ...]
    center_point: int | None = None

    def branch_of(self, i: int) -> int:
        if i == self.center_point:
            raise PatternError("the center lies on no proper branch")
        return self.placements[i][0]

    def rank_of(self, i: int) -> int:
        if i == self.center_point:
            raise PatternError("the center has no rank")
        return self.placements[i][1]


def validate_orbit_spec(s: FiniteOrbitSpec) -> list[str]:
    problems: list[str] = []
    if len(s.placements) != s.k or len(s.succ) != s.k:
        problems.append("placements and succ must both have length k")
        return problems
    if sorted(s.succ) != list(range(s.k)):
        problems.append("succ is not a permutation")
        return problems
    # single cycle check
    seen, x = 1, s.succ[0]
    while x != 0 and seen <= s.k:
        x = s.succ[x]
        seen += 1
    if seen != s.k:
        problems.append("succ is not a single cycle")
    by_branch: dict[int, list[int]] = {}
    for i in range(s.k):
        if i == s.center_point:
            continue
        b, r = s.placements[i]
        if not 1 <= b <= s.n:
            problems.append(f"point {i} on nonexistent branch {b}")
            continue
        by_branch.setdefault(b, []).append(r)
    for b, ranks in sorted(by_branch.items()):
        if sorted(ranks) != list(range(1, len(ranks) + 1)):
            problems.append(f"branch b{b} ranks not contiguous from 1: {sorted(ranks)}")
    return problems


def orbit_type(s: FiniteOrbitSpec) -> frozenset[int]:
    """Cycle lengths of the induced branch dynamics.

    If the cycle contains the center the type is {1}.  Otherwise each
    occupied branch is sent to the branch receiving the image of its
    innermost point, and the type collects the cycle lengths of that
    (partial) self-map of branch labels.
    """
    problems = validate_orbit_spec(s)
    if problems:
        raise PatternError("; ".join(problems))
    if s.center_point is not None:
        return frozenset({1})
    innermost: dict[int, int] = {}
    for i in range(s.k):
        b, r = s.placements[i]
        if r == 1:
            innermost[b] = i
    fmap = {b: s.placements[s.succ[i]][0] for b, i in innermost.items()}
    lengths: set[int] = set()
    for start in fmap:
        # walk until a repeat; the tail of the trail is the reached cycle
        trail: list[int] = []
        x = start
        while x not in trail:
            trail.append(x)
            x = fmap[x]
        if x in trail:
            lengths.add(len(trail) - trail.index(x))
    return frozenset(lengths)
