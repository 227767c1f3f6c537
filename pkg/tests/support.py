"""Shared helpers for the test suite."""

from stardyn.patterns import parse_pattern

EX1 = "n=3 k=5; b1: 1 3; b2: 2; b3: 4"
EX2 = "n=3 k=6; b1: 1 3 5; b2: 2; b3: 4"


def random_pattern(rng, n, k, all_branches=False):
    while True:
        branches = [[] for _ in range(n)]
        for i in range(1, k):
            b = rng.randrange(n)
            branches[b].insert(rng.randint(0, len(branches[b])), i)
        if all_branches and any(not br for br in branches):
            continue
        text = "; ".join(
            [f"n={n} k={k}"]
            + [f"b{b}: " + " ".join(map(str, br)) if br else f"b{b}:"
               for b, br in enumerate(branches, start=1)]
        )
        return parse_pattern(text)
