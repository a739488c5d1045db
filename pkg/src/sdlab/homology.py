"""Multigraded Koszul homology, projective dimension and depth of I/J.

The Koszul complex on all n ring variables splits into finite strands,
one per multidegree a.  In homological degree i the strand has a basis
vector for every i-subset S of the variables with a - e_S >= 0 and
X^(a - e_S) in I minus J; the boundary carries the usual alternating
signs, with a component dropped whenever its target monomial falls out
of the quotient.  The projective dimension is the largest i for which
some strand has nonvanishing i-th homology, and depth = n - pd.

Strand multidegrees outside [0, g + (1, ..., 1)] contribute nothing:
syzygy multidegrees of I and of J are joins of generator exponents, so
they stay below g, and passing to the quotient shifts them by at most
one in each coordinate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Sequence

from .kernels import rank_mod_p, rank_over_q
from .monomial import Exponent, ModuleSpec, canonical_bound


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def _rank_fn(spec: ModuleSpec, characteristic: int | None) -> Callable[[list[list[int]]], int]:
    char = spec.ring.characteristic if characteristic is None else characteristic
    if char == 0:
        return rank_over_q
    if not _is_prime(char):
        raise ValueError(f"characteristic {char} is not prime")
    return lambda rows: rank_mod_p(rows, char)


def _strand_basis(
    a: Exponent, size: int, member: Callable[[Exponent], bool]
) -> list[tuple[int, ...]]:
    n = len(a)
    out = []
    for subset in itertools.combinations(range(n), size):
        shifted = list(a)
        ok = True
        for j in subset:
            shifted[j] -= 1
            if shifted[j] < 0:
                ok = False
                break
        if ok and member(tuple(shifted)):
            out.append(subset)
    return out


def _boundary_matrix(
    a: Exponent,
    upper: list[tuple[int, ...]],
    lower: list[tuple[int, ...]],
) -> list[list[int]]:
    """Matrix of the boundary from homological degree i to i-1.

    Rows are indexed by ``lower``, columns by ``upper``; the (T, S) entry
    is the Koszul sign when T = S minus one variable and the target basis
    vector survives in the quotient, else 0.
    """
    index = {s: k for k, s in enumerate(lower)}
    rows = [[0] * len(upper) for _ in lower]
    for col, s in enumerate(upper):
        for pos, j in enumerate(s):
            t = s[:pos] + s[pos + 1 :]
            r = index.get(t)
            if r is not None:
                rows[r][col] = 1 if pos % 2 == 0 else -1
    return rows


@dataclass
class KoszulSlice:
    """One multidegree strand: bases per homological degree and boundaries."""

    multidegree: Exponent
    basis: list[list[tuple[int, ...]]]          # basis[i] for i = 0..n
    boundaries: list[list[list[int]] | None]    # boundaries[i]: degree i -> i-1


def koszul_slice(spec: ModuleSpec, a: Exponent) -> KoszulSlice:
    n = spec.ring.n
    member = spec.contains
    basis = [_strand_basis(a, i, member) for i in range(n + 1)]
    boundaries: list[list[list[int]] | None] = [None] * (n + 1)
    for i in range(1, n + 1):
        if basis[i] and basis[i - 1]:
            boundaries[i] = _boundary_matrix(a, basis[i], basis[i - 1])
    return KoszulSlice(tuple(a), basis, boundaries)


def koszul_slice_ranks(
    spec: ModuleSpec, a: Exponent, characteristic: int | None = None
) -> list[int]:
    """Homology ranks of the strand at multidegree a, degrees 0..n.

    rank H_i = dim ker d_i - rank d_(i+1), with exact arithmetic over the
    chosen coefficient field.
    """
    rank = _rank_fn(spec, characteristic)
    sl = koszul_slice(spec, a)
    n = spec.ring.n
    branks = [0] * (n + 2)
    for i in range(1, n + 1):
        if sl.boundaries[i] is not None:
            branks[i] = rank(sl.boundaries[i])
    return [len(sl.basis[i]) - branks[i] - branks[i + 1] for i in range(n + 1)]


def _strand_top_homology(
    a: Exponent,
    n: int,
    member: Callable[[Exponent], bool],
    rank: Callable[[list[list[int]]], int],
    floor: int,
) -> int | None:
    """Largest i > floor with H_i != 0 in this strand, scanning downward.

    Lower homological degrees are never materialized once the answer is
    known, which skips almost all of the rank work across the window.
    """
    basis_cache: dict[int, list[tuple[int, ...]]] = {}
    rank_cache: dict[int, int] = {}

    def basis(i: int) -> list[tuple[int, ...]]:
        if i < 0 or i > n:
            return []
        if i not in basis_cache:
            basis_cache[i] = _strand_basis(a, i, member)
        return basis_cache[i]

    def brank(i: int) -> int:
        if i < 1 or i > n:
            return 0
        if i not in rank_cache:
            upper, lower = basis(i), basis(i - 1)
            if not upper or not lower:
                rank_cache[i] = 0
            else:
                rank_cache[i] = rank(_boundary_matrix(a, upper, lower))
        return rank_cache[i]

    for i in range(n, floor, -1):
        dim = len(basis(i))
        if dim == 0:
            continue
        if dim - brank(i) - brank(i + 1) > 0:
            return i
    return None


def projective_dimension(spec: ModuleSpec, characteristic: int | None = None) -> int:
    """Largest homological degree with nonvanishing Koszul strand homology."""
    n = spec.ring.n
    rank = _rank_fn(spec, characteristic)
    g = canonical_bound(spec)
    window = [range(x + 2) for x in g]
    members = frozenset(
        c for c in itertools.product(*window) if spec.contains(c)
    )
    member = members.__contains__
    best = -1
    for a in itertools.product(*window):
        if best == n:
            break
        top = _strand_top_homology(a, n, member, rank, best)
        if top is not None:
            best = top
    if best < 0:
        raise AssertionError("nonzero module must have homology in degree 0")
    return best


def depth(spec: ModuleSpec, characteristic: int | None = None) -> int:
    """depth I/J = n - projective dimension (Auslander-Buchsbaum)."""
    return spec.ring.n - projective_dimension(spec, characteristic)
