"""Forced element-by-element extension of an equal-count partition.

Given an excluded progression {r + m*k}, the constraint that both classes of
the partition have identical strict-pair counts determines the partition one
position at a time: the smallest non-excluded value (the anchor) is pinned to
class A by convention, and the pair-count constraint at sum anchor + f
involves position f only through the single pair (anchor, f), so it either
pins the membership of f or is infeasible.  No backtracking can exist.

This module also matches completed extensions against the built families and
sweeps whole (r, m) grids, recording contradictions as data.
"""

from __future__ import annotations

from dataclasses import dataclass

from .builders import FAMILIES, build_family, family_progression
from .intset import BoundedSet, ProgressionSpec, progression_set

__all__ = [
    "STATUS_COMPLETED",
    "STATUS_CONTRADICTION",
    "ClassificationRecord",
    "ExtensionOutcome",
    "FamilyMatch",
    "classify_grid",
    "forced_extend",
    "forced_extend_naive",
    "match_family",
    "predicted_solvable_cells",
]

STATUS_COMPLETED = "completed"
STATUS_CONTRADICTION = "contradiction"


@dataclass(frozen=True)
class ExtensionOutcome:
    """Result of forcing a partition from its pair-count constraints.

    On contradiction the decided prefixes stop at the first undecidable
    position; ``contradiction_at`` is the sum whose constraint failed and
    ``forced_value`` the out-of-range membership value it demanded (a legal
    demand is 0 or 1 at a free position, 0 at an excluded one).
    """

    status: str
    spec: ProgressionSpec
    anchor: int
    a: BoundedSet
    b: BoundedSet
    excluded: BoundedSet
    contradiction_at: int | None = None
    forced_value: int | None = None


def forced_extend(spec: ProgressionSpec, bound: int) -> ExtensionOutcome:
    """Extend the unique balanced partition over [0, bound), or report where it dies.

    Incremental bit-parallel pair counting: alongside each class mask a
    reversed copy is maintained, so the decided-pair count at any sum is one
    shift, one AND and one popcount.
    """
    if bound < spec.r + 2:
        raise ValueError(f"bound {bound} must reach past the first excluded value {spec.r}")
    excluded = progression_set(spec, bound)
    t_mask = excluded.mask
    anchor = 0 if spec.r else 1  # least value outside the progression; m >= 2 frees 1
    top = bound - 1
    mask_a, mask_b = 1 << anchor, 0
    rev_a, rev_b = 1 << (top - anchor), 0

    def contradiction(frontier: int, target: int, demanded: int) -> ExtensionOutcome:
        window = (1 << frontier) - 1
        return ExtensionOutcome(
            status=STATUS_CONTRADICTION,
            spec=spec,
            anchor=anchor,
            a=BoundedSet(frontier, mask_a & window),
            b=BoundedSet(frontier, mask_b & window),
            excluded=BoundedSet(frontier, t_mask & window),
            contradiction_at=target,
            forced_value=demanded,
        )

    for f in range(anchor + 1, bound):
        target = anchor + f
        shift = top - target
        if shift >= 0:
            ordered_a = (mask_a & (rev_a >> shift)).bit_count()
            ordered_b = (mask_b & (rev_b >> shift)).bit_count()
        else:
            ordered_a = (mask_a & (rev_a << -shift)).bit_count()
            ordered_b = (mask_b & (rev_b << -shift)).bit_count()
        if target % 2 == 0:
            ordered_a -= (mask_a >> (target // 2)) & 1
            ordered_b -= (mask_b >> (target // 2)) & 1
        demanded = (ordered_b - ordered_a) // 2
        if (t_mask >> f) & 1:
            if demanded:
                return contradiction(f, target, demanded)
        elif demanded == 1:
            mask_a |= 1 << f
            rev_a |= 1 << (top - f)
        elif demanded == 0:
            mask_b |= 1 << f
            rev_b |= 1 << (top - f)
        else:
            return contradiction(f, target, demanded)

    return ExtensionOutcome(
        status=STATUS_COMPLETED,
        spec=spec,
        anchor=anchor,
        a=BoundedSet(bound, mask_a),
        b=BoundedSet(bound, mask_b),
        excluded=excluded,
    )


def forced_extend_naive(spec: ProgressionSpec, bound: int) -> ExtensionOutcome:
    """Oracle for forced_extend: recount every pair from scratch at each step."""
    if bound < spec.r + 2:
        raise ValueError(f"bound {bound} must reach past the first excluded value {spec.r}")
    excluded = progression_set(spec, bound)
    t_set = set(excluded)
    anchor = 0 if spec.r else 1
    set_a, set_b = {anchor}, set()

    def snapshot(status: str, window: int, target: int | None, demanded: int | None) -> ExtensionOutcome:
        return ExtensionOutcome(
            status=status,
            spec=spec,
            anchor=anchor,
            a=BoundedSet.from_elements(sorted(set_a), window),
            b=BoundedSet.from_elements(sorted(set_b), window),
            excluded=BoundedSet.from_elements(sorted(x for x in t_set if x < window), window),
            contradiction_at=target,
            forced_value=demanded,
        )

    for f in range(anchor + 1, bound):
        target = anchor + f
        count_a = count_b = 0
        for y in range(min(f, target + 1)):
            x = target - y
            if not 0 <= x < y:
                continue
            if x in set_a and y in set_a:
                count_a += 1
            elif x in set_b and y in set_b:
                count_b += 1
        demanded = count_b - count_a
        if f in t_set:
            if demanded:
                return snapshot(STATUS_CONTRADICTION, f, target, demanded)
        elif demanded == 1:
            set_a.add(f)
        elif demanded == 0:
            set_b.add(f)
        else:
            return snapshot(STATUS_CONTRADICTION, f, target, demanded)

    return snapshot(STATUS_COMPLETED, bound, None, None)


@dataclass(frozen=True)
class FamilyMatch:
    """Which built family, if any, reproduces a completed extension elementwise."""

    family: str | None
    l: int | None
    verified_to: int


def match_family(outcome: ExtensionOutcome, l_max: int = 16) -> FamilyMatch:
    """Try every family whose predicted complement matches the excluded progression."""
    if outcome.status != STATUS_COMPLETED:
        raise ValueError("family matching needs a completed extension")
    spec = outcome.spec
    bound = outcome.a.bound
    for family in FAMILIES:
        for l in range(l_max + 1):
            predicted = family_progression(family, l)
            if predicted.m > spec.m:
                break  # the modulus grows strictly with l
            if predicted != spec:
                continue
            a, b, _ = build_family(family, l, bound)
            if a == outcome.a and b == outcome.b:
                return FamilyMatch(family=family, l=l, verified_to=bound)
    return FamilyMatch(family=None, l=None, verified_to=0)


@dataclass(frozen=True)
class ClassificationRecord:
    """One (r, m) grid cell: how the forced extension ended, and which family fits."""

    r: int
    m: int
    status: str
    family: str | None
    l: int | None
    contradiction_at: int | None
    forced_value: int | None


def classify_grid(
    m_max: int = 33,
    r_max_factor: int = 2,
    bound: int = 2048,
    l_max: int = 16,
) -> list[ClassificationRecord]:
    """One record per cell of the grid m in [2, m_max], r in [0, r_max_factor*m].

    Contradictions are data, not failures; records come back sorted by (r, m).
    """
    records = []
    for m in range(2, m_max + 1):
        for r in range(0, r_max_factor * m + 1):
            spec = ProgressionSpec(r, m)
            out = forced_extend(spec, bound)
            if out.status == STATUS_COMPLETED:
                match = match_family(out, l_max)
                records.append(
                    ClassificationRecord(r, m, out.status, match.family, match.l, None, None)
                )
            else:
                records.append(
                    ClassificationRecord(
                        r, m, out.status, None, None, out.contradiction_at, out.forced_value
                    )
                )
    records.sort(key=lambda rec: (rec.r, rec.m))
    return records


def predicted_solvable_cells(m_max: int, r_max_factor: int = 2) -> set[tuple[int, int]]:
    """Grid cells covered by some family pair: the expected completed cells."""
    cells = set()
    l = 0
    while (1 << l) + 1 <= m_max:
        for family in FAMILIES:
            p = family_progression(family, l)
            if p.r <= r_max_factor * p.m:
                cells.add((p.r, p.m))
        l += 1
    return cells
