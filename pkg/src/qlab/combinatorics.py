"""Brute-force enumeration of the combinatorial families.

Everything here is definition-level: objects are generated recursively and
filtered by the family predicate, with no generating-function shortcuts, so
these counts serve as the independent oracle for the series builders.

Boundary conventions (empty objects, n = 0) are pinned to the constant
terms of the corresponding generating functions, not guessed.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True)
class Overpartition:
    """Overpartition: parts descending, at most one overlined copy per value.

    ``parts`` is a tuple of (value, overlined) with overlined copies listed
    before plain copies of the same value.
    """

    parts: tuple

    def weight(self):
        return sum(v for v, _ in self.parts)

    def __str__(self):
        if not self.parts:
            return "0"
        return "+".join("%d~" % v if o else str(v) for v, o in self.parts)


@dataclass(frozen=True)
class ConcaveComposition:
    """Concave composition: left side descending, central part, right side.

    Left parts may be overlined (at most one copy per value); right parts
    never are.  Sides hold parts strictly larger than the central part.
    """

    left: tuple      # ((value, overlined), ...) weakly decreasing
    central: int
    right: tuple     # values weakly increasing outward, stored ascending

    def weight(self):
        return (sum(v for v, _ in self.left) + self.central + sum(self.right))

    def __str__(self):
        left = "+".join("%d~" % v if o else str(v) for v, o in self.left) or "-"
        right = "+".join(str(v) for v in self.right) or "-"
        return "%s | %d | %s" % (left, self.central, right)


# ----------------------------------------------------------------------
# raw generators
# ----------------------------------------------------------------------


def partitions(n, min_part=1, max_part=None):
    """Yield partitions of n as descending tuples with parts >= min_part."""
    if n == 0:
        yield ()
        return
    top = n if max_part is None else min(max_part, n)
    for largest in range(top, min_part - 1, -1):
        for rest in partitions(n - largest, min_part, largest):
            yield (largest,) + rest


def _grouped_overpartitions(n, min_part=1):
    """Yield overpartitions of n as tuples (value, count, overlined),
    values strictly decreasing, counts >= 1."""
    if n == 0:
        yield ()
        return
    for smallest in range(min_part, n + 1):
        for count in range(1, n // smallest + 1):
            rest_weight = n - count * smallest
            for overlined in (False, True):
                for rest in _grouped_overpartitions(rest_weight, smallest + 1):
                    yield rest + ((smallest, count, overlined),)


def _expand_groups(groups):
    parts = []
    for value, count, overlined in sorted(groups, reverse=True):
        if overlined:
            parts.append((value, True))
            parts.extend((value, False) for _ in range(count - 1))
        else:
            parts.extend((value, False) for _ in range(count))
    return Overpartition(tuple(parts))


def overpartitions(n):
    """All overpartitions of n."""
    return [_expand_groups(g) for g in _grouped_overpartitions(n)]


# ----------------------------------------------------------------------
# restricted families
# ----------------------------------------------------------------------


def _smallest_group(groups):
    return min(groups, key=lambda g: g[0])


def enumerate_pod(n):
    """Overpartitions with non-overlined smallest part and even parts, and
    an odd smallest part occurring exactly once.  Empty at n = 0 (the
    generating function has no constant term)."""
    out = []
    for groups in _grouped_overpartitions(n):
        if not groups:
            continue
        if any(v % 2 == 0 and o for v, _, o in groups):
            continue
        value, count, overlined = _smallest_group(groups)
        if overlined and count == 1:
            continue
        if value % 2 == 1 and (count != 1 or overlined):
            continue
        out.append(_expand_groups(groups))
    return out


def pod_refinement(n):
    """Counts of pod objects by m = number of even parts, minus one when
    the smallest part is even."""
    counts = {}
    for op in enumerate_pod(n):
        evens = sum(1 for v, _ in op.parts if v % 2 == 0)
        smallest = min(v for v, _ in op.parts)
        m = evens - 1 if smallest % 2 == 0 else evens
        counts[m] = counts.get(m, 0) + 1
    return counts


def enumerate_pev(n):
    """Overpartitions without repeated odd parts, odd parts non-overlined,
    and a unique even smallest part also non-overlined."""
    out = []
    for groups in _grouped_overpartitions(n):
        if not groups:
            continue
        if any(v % 2 == 1 and (c > 1 or o) for v, c, o in groups):
            continue
        value, count, overlined = _smallest_group(groups)
        if value % 2 == 0 and count == 1 and overlined:
            continue
        out.append(_expand_groups(groups))
    return out


def pev_refinement(n):
    """Counts of pev objects by m = odd parts plus non-overlined even parts."""
    counts = {}
    for op in enumerate_pev(n):
        m = sum(1 for v, o in op.parts if v % 2 == 1 or not o)
        counts[m] = counts.get(m, 0) + 1
    return counts


def enumerate_pod1(n):
    """Overpartitions whose smallest part is even (and evens non-overlined),
    with every odd part at least the smallest part plus three."""
    out = []
    for groups in _grouped_overpartitions(n):
        if not groups:
            continue
        if any(v % 2 == 0 and o for v, _, o in groups):
            continue
        value = _smallest_group(groups)[0]
        if value % 2 == 1:
            continue
        if any(v % 2 == 1 and v < value + 3 for v, _, _ in groups):
            continue
        out.append(_expand_groups(groups))
    return out


def _odd_overpartition_sides(n, min_part):
    """Overpartitions into odd parts >= min_part (for the left side)."""
    for groups in _grouped_overpartitions(n, min_part):
        if all(v % 2 == 1 for v, _, _ in groups):
            yield _expand_groups(groups).parts


def enumerate_vod(n):
    """Concave compositions of n with even central part, odd side parts
    above the central part, and overlines on the left side only.

    The bare central part (both sides empty) is admissible; at n = 0 the
    unique object is the lone central part 0, matching the constant term 1
    of the generating function."""
    out = []
    for central in range(0, n + 1, 2):
        rest = n - central
        for left_weight in range(rest + 1):
            lefts = list(_odd_overpartition_sides(left_weight, central + 1))
            if not lefts:
                continue
            rights = [tuple(sorted(p)) for p in partitions(rest - left_weight, central + 1)
                      if all(v % 2 == 1 for v in p)]
            for left in lefts:
                for right in rights:
                    out.append(ConcaveComposition(left, central, right))
    return out


def vod_rank_refinement(n):
    """Counts of vod objects by rank = (#right parts) - (#non-overlined left
    parts); right parts are never overlined."""
    counts = {}
    for cc in enumerate_vod(n):
        r = sum(1 for _, o in cc.left if not o)
        m = len(cc.right) - r
        counts[m] = counts.get(m, 0) + 1
    return counts


# ----------------------------------------------------------------------
# classical families and rank statistics
# ----------------------------------------------------------------------


@lru_cache(maxsize=None)
def partition_count(n):
    return sum(1 for _ in partitions(n))


def overpartition_count(n):
    return len(overpartitions(n))


def concave_count(n):
    """Concave compositions: any central part >= 0, both sides partitions
    into parts above it, no overlines."""
    total = 0
    for central in range(n + 1):
        rest = n - central
        for left_weight in range(rest + 1):
            nl = sum(1 for _ in partitions(left_weight, central + 1))
            nr = sum(1 for _ in partitions(rest - left_weight, central + 1))
            total += nl * nr
    return total


def unimodal_count(n):
    """Unimodal sequences with a marked summit: summit c >= 0 and two
    partitions into parts <= c (the n = 0 count is 1, the empty sequence)."""
    total = 0
    for summit in range(n + 1):
        rest = n - summit
        for left_weight in range(rest + 1):
            nl = sum(1 for _ in partitions(left_weight, 1, summit))
            nr = sum(1 for _ in partitions(rest - left_weight, 1, summit))
            total += nl * nr
    return total


def rank_counts(n):
    """Dyson ranks: {m: number of partitions of n with largest - #parts = m};
    the empty partition has rank 0."""
    counts = {}
    for p in partitions(n):
        m = (p[0] - len(p)) if p else 0
        counts[m] = counts.get(m, 0) + 1
    return counts


def m2_rank_counts(n):
    """M2-ranks over partitions without repeated odd parts:
    m = ceil(largest/2) - #parts."""
    counts = {}
    for p in partitions(n):
        odds = [v for v in p if v % 2 == 1]
        if len(odds) != len(set(odds)):
            continue
        m = (-(-p[0] // 2) - len(p)) if p else 0
        counts[m] = counts.get(m, 0) + 1
    return counts


def distinct_parts_rank_parity(n):
    """(#partitions into distinct parts with even rank) - (#with odd rank)."""
    total = 0
    for p in partitions(n):
        if len(set(p)) != len(p):
            continue
        rank = (p[0] - len(p)) if p else 0
        total += 1 if rank % 2 == 0 else -1
    return total


_CLASSICAL = {
    "partitions": partition_count,
    "overpartitions": overpartition_count,
    "concave": concave_count,
    "unimodal": unimodal_count,
    "distinct_rank_parity": distinct_parts_rank_parity,
}


def classical_count(name, n):
    """Definition-level count for a classical family.

    ``rank_N`` and ``m2rank_N2`` return {m: count} dicts; the other names
    return plain counts.
    """
    if name == "rank_N":
        return rank_counts(n)
    if name == "m2rank_N2":
        return m2_rank_counts(n)
    if name in _CLASSICAL:
        return _CLASSICAL[name](n)
    raise KeyError("unknown classical family %r" % name)


ENUM_FAMILIES = {
    "pod": enumerate_pod,
    "pev": enumerate_pev,
    "pod1": enumerate_pod1,
    "vod": enumerate_vod,
}


def enumerate_family(name, n):
    if name not in ENUM_FAMILIES:
        raise KeyError("unknown family %r; choose from %s"
                       % (name, sorted(ENUM_FAMILIES)))
    return ENUM_FAMILIES[name](n)
