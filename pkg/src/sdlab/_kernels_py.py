"""Pure-Python search and elimination kernels.

Reference implementations; the compiled twin in ``_kernels_cy`` must
return bit-identical results.  Point subsets are bitmasks over the
lexicographically sorted point list, bit k standing for ``points[k]``.
"""

from __future__ import annotations

import itertools
from typing import Sequence


class IntervalCoverEngine:
    """Exact cover of subsets of a fixed finite point set by boxes.

    A candidate interval is a pair of points (lo, hi) with lo <= hi
    componentwise such that every lattice point of [lo, hi] belongs to the
    point set.  ``search`` looks for a disjoint family of candidates
    covering a given subset exactly, with an admissibility filter on the
    interval tops.
    """

    def __init__(self, points: Sequence[tuple[int, ...]]):
        pts = sorted(set(tuple(int(x) for x in p) for p in points))
        self.points: tuple[tuple[int, ...], ...] = tuple(pts)
        self.dim = len(pts[0]) if pts else 0
        for p in pts:
            if len(p) != self.dim:
                raise ValueError("points of mixed dimension")
        n = len(pts)
        self._full = (1 << n) - 1
        index = {p: k for k, p in enumerate(pts)}
        cands: list[list[tuple[int, int]]] = []
        for i, lo in enumerate(pts):
            row: list[tuple[int, int]] = []
            for j in range(i, n):
                hi = pts[j]
                if any(h < l for l, h in zip(lo, hi)):
                    continue
                mask = self._box_mask(lo, hi, index)
                if mask is not None:
                    row.append((j, mask))
            cands.append(row)
        self._cands = cands

    def _box_mask(self, lo, hi, index) -> int | None:
        mask = 0
        for c in itertools.product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
            k = index.get(c)
            if k is None:
                return None
            mask |= 1 << k
        return mask

    def search(
        self,
        admissible: Sequence[bool],
        allowed_mask: int | None = None,
        memoize: bool = False,
    ) -> list[tuple[int, int]] | None:
        """Exact cover of the allowed subset, or None.

        Returns index pairs (lo, hi) into ``self.points`` in the order the
        intervals were chosen.  Deterministic: the branch point is always
        the lexicographically least uncovered point and candidate tops are
        tried in lexicographic order.
        """
        n = len(self.points)
        if len(admissible) != n:
            raise ValueError("admissible flags must match the point count")
        full = self._full
        if allowed_mask is None:
            allowed_mask = full
        covered0 = full & ~allowed_mask
        adm = [bool(b) for b in admissible]
        cands = self._cands
        chosen: list[tuple[int, int]] = []
        failed: set[int] | None = set() if memoize else None

        def walk(covered: int) -> bool:
            if covered == full:
                return True
            if failed is not None and covered in failed:
                return False
            # The lexicographically least uncovered point must be the lower
            # endpoint of its interval: the interval's bottom is <= it in
            # the partial order, hence also lexicographically, and the
            # bottom is itself uncovered.  Branching only on intervals
            # based there loses no covers.
            free = ~covered & full
            i = (free & -free).bit_length() - 1
            for j, mask in cands[i]:
                if adm[j] and not (mask & covered):
                    chosen.append((i, j))
                    if walk(covered | mask):
                        return True
                    chosen.pop()
            if failed is not None:
                failed.add(covered)
            return False

        return list(chosen) if walk(covered0) else None


def rank_over_q(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix over the rationals.

    Fraction-free Bareiss elimination; Python integers, so exact for any
    entry size.
    """
    m = [list(map(int, r)) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    prev = 1
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if m[r][col] != 0), None)
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        p = m[rank][col]
        for r in range(rank + 1, nrows):
            f = m[r][col]
            if f:
                row = m[r]
                top = m[rank]
                for c in range(col + 1, ncols):
                    row[c] = (p * row[c] - f * top[c]) // prev
                row[col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def rank_mod_p(rows: Sequence[Sequence[int]], p: int) -> int:
    """Rank of an integer matrix over the prime field F_p."""
    if p < 2:
        raise ValueError("p must be a prime")
    m = [[int(x) % p for x in r] for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    for col in range(ncols):
        piv = next((r for r in range(rank, nrows) if m[r][col]), None)
        if piv is None:
            continue
        if piv != rank:
            m[rank], m[piv] = m[piv], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        top = m[rank]
        for r in range(rank + 1, nrows):
            f = m[r][col]
            if f:
                mult = f * inv % p
                row = m[r]
                for c in range(col, ncols):
                    row[c] = (row[c] - mult * top[c]) % p
        rank += 1
        if rank == nrows:
            break
    return rank
