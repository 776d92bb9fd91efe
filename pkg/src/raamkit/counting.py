"""Subset-cover counts and joinability statistics.

Everything here is exact integer combinatorics; no floating point.
The cover counts n_{m,k} say in how many ways a u-element set is the
union of m distinct k-subsets.  Their signed double sum collapses to
-1 for a singleton and 0 otherwise, which is the bookkeeping fact
behind the telescoping positivity estimate in the operator layer.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import GuardExceeded, ValidationError
from .monoid import (
    INFINITY,
    JoinResult,
    MonoidElement,
    identity,
    is_finite,
    lcm,
    join_set,
)

COVER_ENUM_MAX_U = 7
# 2^C(u,k) subsets get enumerated; cap the exponent so the array fits.
COVER_ENUM_MAX_BITS = 24
DEFAULT_SUBSET_GUARD = 1 << 22


@lru_cache(maxsize=None)
def _cover_counts_by_m(u_size: int, k: int) -> tuple[int, ...]:
    """n_{m,k} for every m at once, by brute enumeration.

    Encodes each k-subset as a bitmask and sweeps all families of
    k-subsets with a vectorised union/popcount pass.  Entry m of the
    result counts families of m distinct k-subsets covering the whole
    u-element set (entry 0 is 0).
    """
    masks = [
        sum(1 << i for i in combo)
        for combo in itertools.combinations(range(u_size), k)
    ]
    length = len(masks)
    full = (1 << u_size) - 1
    total = 1 << length
    sel = np.arange(total, dtype=np.uint32)
    union = np.zeros(total, dtype=np.uint32)
    size = np.zeros(total, dtype=np.uint8)
    for b, mask in enumerate(masks):
        has = (sel >> np.uint32(b)) & np.uint32(1)
        union |= has.astype(np.uint32) * np.uint32(mask)
        size += has.astype(np.uint8)
    covering = size[union == np.uint32(full)]
    counts = np.bincount(covering, minlength=length + 1)
    return tuple(int(c) for c in counts)


def _check_cover_args(u_size: int, m: int, k: int) -> None:
    if u_size < 1:
        raise ValidationError(f"set size must be positive, got {u_size}")
    if k < 1 or k > u_size:
        raise ValidationError(f"subset size {k} outside 1..{u_size}")
    if not (1 <= m <= math.comb(u_size, k)):
        raise ValidationError(
            f"family size {m} outside 1..C({u_size},{k})"
        )


def cover_count_enum(u_size: int, m: int, k: int) -> int:
    """Number of families of m distinct k-subsets covering {1..u_size}.

    Exhaustive enumeration, guarded: u_size <= 7 and the family count
    C(u_size, k) must stay below the bit cap.
    """
    _check_cover_args(u_size, m, k)
    if u_size > COVER_ENUM_MAX_U:
        raise GuardExceeded(
            f"enumeration limited to set sizes <= {COVER_ENUM_MAX_U}"
        )
    if math.comb(u_size, k) > COVER_ENUM_MAX_BITS:
        raise GuardExceeded(
            f"2^{math.comb(u_size, k)} families is beyond the enumeration cap"
        )
    counts = _cover_counts_by_m(u_size, k)
    return counts[m] if m < len(counts) else 0


def cover_count_formula(u_size: int, m: int, k: int) -> int:
    """Closed form for the cover count, by inclusion-exclusion.

    Count families missing at least a given j-subset and alternate:
    sum_j (-1)^j C(u,j) C(C(u-j,k), m).  Exact big integers.
    """
    _check_cover_args(u_size, m, k)
    total = 0
    for j in range(u_size + 1):
        total += (-1) ** j * math.comb(u_size, j) * math.comb(
            math.comb(u_size - j, k), m
        )
    return total


def alternating_cover_sum(u_size: int) -> int:
    """sum_k sum_m (-1)^m n_{m,k}: -1 for a singleton, 0 for u >= 2.

    Uses the closed form; the enumeration route confirms it in tests.
    """
    if u_size < 1 or u_size > COVER_ENUM_MAX_U:
        raise GuardExceeded(
            f"set size {u_size} outside 1..{COVER_ENUM_MAX_U}"
        )
    total = 0
    for k in range(1, u_size + 1):
        for m in range(1, math.comb(u_size, k) + 1):
            total += (-1) ** m * cover_count_formula(u_size, m, k)
    return total


def max_joinable_subset(
    elems: Sequence[MonoidElement], guard: int = DEFAULT_SUBSET_GUARD
) -> tuple[int, list[MonoidElement]]:
    """Largest subset of elems with a finite common multiple.

    Exact search.  Subsets of a joinable set are joinable, so the
    joinable family is closed downward and depth-first extension with
    a best-so-far cutoff visits each joinable subset at most once.
    The guard caps visited search nodes.
    """
    if not elems:
        return 0, []
    one = identity(elems[0].graph)
    best_size = 0
    best: list[MonoidElement] = []
    chosen: list[MonoidElement] = []
    visited = 0

    def extend(start: int, join: MonoidElement) -> None:
        nonlocal best_size, best, visited
        visited += 1
        if visited > guard:
            raise GuardExceeded(
                f"joinable-subset search exceeded {guard} nodes"
            )
        if len(chosen) > best_size:
            best_size = len(chosen)
            best = list(chosen)
        for i in range(start, len(elems)):
            if len(chosen) + (len(elems) - i) <= best_size:
                break  # even taking everything left cannot improve
            j = lcm(join, elems[i])
            if is_finite(j):
                chosen.append(elems[i])
                extend(i + 1, j)
                chosen.pop()

    extend(0, one)
    return best_size, best


def level_joins(
    elems: Sequence[MonoidElement], k: int, guard: int = DEFAULT_SUBSET_GUARD
) -> list[JoinResult]:
    """Joins of all k-subsets of elems, as an indexed multiset.

    One entry per k-combination in index order; repeats are kept and
    INFINITY entries stay in place so callers can filter or count.
    """
    if k < 1 or k > len(elems):
        raise GuardExceeded(f"subset size {k} outside 1..{len(elems)}")
    if math.comb(len(elems), k) > guard:
        raise GuardExceeded(
            f"{math.comb(len(elems), k)} subsets is beyond the guard"
        )
    return [
        join_set([elems[i] for i in combo])
        for combo in itertools.combinations(range(len(elems)), k)
    ]
