"""Shared independent oracles for the test suite.

Each oracle deliberately avoids the code path it is used to check: binomial
sums come from an additive Pascal triangle, ranks from rational Gaussian
elimination, and the random family builder only uses the raw definitions.
"""

from __future__ import annotations

from fractions import Fraction

from lintersect import IntersectionSpec, SetFamily


def pascal_sum(n: int, top: int) -> int:
    """sum of C(n, i) for i = 0..top via the additive Pascal recurrence."""
    row = [1]
    for _ in range(n):
        row = [a + b for a, b in zip([0] + row, row + [0])]
    return sum(row[: max(0, min(top, n) + 1)])


def fraction_rank(matrix) -> int:
    """Rank by textbook Gaussian elimination over the rationals."""
    rows = [[Fraction(x) for x in row] for row in matrix]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def random_orderable_family(rng, n: int, spec: IntersectionSpec) -> SetFamily:
    """Greedy random compatible insertion over a shuffled pool of subsets.

    Keeps a candidate iff all pairwise intersection sizes stay allowed and the
    running orderability condition (largest apex cardinality <= smallest
    apex-free cardinality) is preserved.  Always returns at least one member.
    """
    allowed = set(spec.values)
    apexbit = 1 << (n - 1)
    pool = list(range(1 << n))
    rng.shuffle(pool)
    members: list[int] = []
    max_apex = 0
    min_free = n + 1
    for cand in pool:
        card = cand.bit_count()
        if cand & apexbit:
            if max(max_apex, card) > min_free:
                continue
        elif max_apex > min(min_free, card):
            continue
        if any((cand & s).bit_count() not in allowed for s in members):
            continue
        members.append(cand)
        if cand & apexbit:
            max_apex = max(max_apex, card)
        else:
            min_free = min(min_free, card)
    return SetFamily(n, tuple(members))
