"""Character-level Levenshtein distance with an optional diagonal band.

``levenshtein`` computes the exact unit-cost edit distance (insert, delete,
substitute, each cost 1).  Given a ``bound`` it restricts the dynamic program
to the diagonal band ``|i - j| <= bound`` and exits early once every cell in
the current row exceeds the bound, so the work is proportional to
``(bound + 1) * min(len(a), len(b))`` instead of the full matrix.  Distances
inside the bound are always exact.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ValidationError


@dataclass(frozen=True, slots=True)
class DistanceResult:
    """Edit distance, or the fact that it exceeds the requested bound.

    ``distance`` is ``None`` exactly when the true distance is greater than
    ``bound``; otherwise it is the exact distance (and ``<= bound`` whenever
    a bound was given).
    """

    distance: int | None
    bound: int | None = None

    @property
    def exceeded(self) -> bool:
        return self.distance is None


def levenshtein(a: str, b: str, bound: int | None = None) -> DistanceResult:
    """Edit distance between ``a`` and ``b``, optionally banded by ``bound``."""
    if bound is not None and bound < 0:
        raise ValidationError(f"bound must be non-negative, got {bound}")
    if a == b:
        return DistanceResult(0, bound)
    la, lb = len(a), len(b)
    if bound is not None and abs(la - lb) > bound:
        return DistanceResult(None, bound)
    # Keep b as the shorter string: rows then sweep the short dimension.
    if lb > la:
        a, b = b, a
        la, lb = lb, la
    if lb == 0:
        if bound is not None and la > bound:
            return DistanceResult(None, bound)
        return DistanceResult(la, bound)

    big = la + lb  # larger than any true distance: acts as +infinity
    prev = list(range(lb + 1))
    curr = [big] * (lb + 1)
    if bound is not None and bound < lb:
        for j in range(bound + 1, lb + 1):
            prev[j] = big
    for i in range(1, la + 1):
        ca = a[i - 1]
        if bound is None:
            lo, hi = 1, lb
        else:
            lo = i - bound if i - bound > 1 else 1
            hi = i + bound if i + bound < lb else lb
        curr[lo - 1] = i if (bound is None or i <= bound) and lo == 1 else big
        row_min = curr[lo - 1]
        for j in range(lo, hi + 1):
            cost = prev[j - 1] + (ca != b[j - 1])
            dele = prev[j] + 1
            if dele < cost:
                cost = dele
            ins = curr[j - 1] + 1
            if ins < cost:
                cost = ins
            curr[j] = cost
            if cost < row_min:
                row_min = cost
        if bound is not None:
            if row_min > bound:
                return DistanceResult(None, bound)
            if hi < lb:
                curr[hi + 1] = big  # sentinel for next row's band edge
        prev, curr = curr, prev
    d = prev[lb]
    if bound is not None and d > bound:
        return DistanceResult(None, bound)
    return DistanceResult(d, bound)


def normalized_levenshtein(a: str, b: str) -> float:
    """Edit distance divided by the longer string's length, in [0, 1]."""
    if not a and not b:
        raise ValidationError("normalized distance is undefined for two empty strings")
    result = levenshtein(a, b)
    assert result.distance is not None
    return result.distance / max(len(a), len(b))


def length_difference(a: str, b: str) -> int:
    """Absolute character-length difference; a lower bound on the distance."""
    return abs(len(a) - len(b))
