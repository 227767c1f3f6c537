"""Period-forcing orders for interval and star maps.

``sharkovskii_le(m, k)`` is the classical interval order: m is below k
exactly when every continuous interval map with a period-k point also has
a period-m point.  ``baldwin_le(t, m, k)`` generalizes to t-ods for
t >= 2, and ``nod_le(n, m, k)`` is the intersection of the first n of
those orders, which governs forcing on an n-od when nothing else is known
about the orbit.  All three are reflexive.
"""

from __future__ import annotations


def _split_pow2(x: int) -> tuple[int, int]:
    """x = 2**i * odd; returns (i, odd)."""
    i = 0
    while x % 2 == 0:
        x //= 2
        i += 1
    return i, x


def sharkovskii_le(m: int, k: int) -> bool:
    """Whether period k forces period m on the interval (m below-or-equal k)."""
    if m < 1 or k < 1:
        raise ValueError("periods must be positive")
    if m == k:
        return True
    i, modd = _split_pow2(m)
    j, kodd = _split_pow2(k)
    a, b = (modd - 1) // 2, (kodd - 1) // 2
    if a == 0 and b == 0:
        return i <= j
    if a == 0 < b:
        return True
    if 0 < a and 0 < b and i > j:
        return True
    if 0 < b < a and i == j:
        return True
    return False


def baldwin_le(t: int, m: int, k: int) -> bool:
    """Whether period k forces period m on a t-od through the branch point.

    Requires t >= 2; the t = 1 order is :func:`sharkovskii_le`.
    """
    if t < 2:
        raise ValueError("baldwin_le needs t >= 2; use sharkovskii_le for t = 1")
    if m < 1 or k < 1:
        raise ValueError("periods must be positive")
    if k == 1:
        return m == 1
    if k % t == 0:
        return m == 1 or (m % t == 0 and sharkovskii_le(m // t, k // t))
    # k not a multiple of t and k != 1: m is 1, k, or i*k + j*t (i>=0, j>=1)
    if m == 1 or m == k:
        return True
    residue = m
    while residue >= t:
        if residue % t == 0:
            return True
        residue -= k
    return False


def nod_le(n: int, m: int, k: int) -> bool:
    """Forcing on an n-od: below in every order t = 1..n."""
    if n < 1:
        raise ValueError("need n >= 1")
    if not sharkovskii_le(m, k):
        return False
    return all(baldwin_le(t, m, k) for t in range(2, n + 1))


def forced_periods(t: int, k: int, bound: int) -> set[int]:
    """All m <= bound forced by period k in the order of index t (t=1 is
    the interval order)."""
    if t == 1:
        return {m for m in range(1, bound + 1) if sharkovskii_le(m, k)}
    return {m for m in range(1, bound + 1) if baldwin_le(t, m, k)}
