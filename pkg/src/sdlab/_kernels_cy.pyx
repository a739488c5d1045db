# cython: language_level=3
# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled search and elimination kernels.

Twin of ``_kernels_py``; both backends must return bit-identical results.
"""

from cpython.mem cimport PyMem_Malloc, PyMem_Realloc, PyMem_Free
from libc.string cimport memcpy, memset

cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil
    int __builtin_popcountll(unsigned long long) nogil

ctypedef unsigned long long u64

DEF GUARD_LIMIT = 1073741824  # 2**30; keeps Bareiss products inside int64


cdef class IntervalCoverEngine:
    """Exact cover of subsets of a fixed finite point set by boxes.

    See the pure-Python twin for the contract; bit k of every mask stands
    for ``points[k]`` with points sorted lexicographically.
    """

    cdef readonly tuple points
    cdef readonly int dim
    cdef int n_points, n_words, n_cands
    cdef long* coords            # n_points * dim
    cdef int* cand_start         # n_points + 1
    cdef int* cand_lo
    cdef int* cand_top
    cdef int* cand_size
    cdef u64* cand_masks         # n_cands * n_words

    def __cinit__(self):
        self.coords = NULL
        self.cand_start = NULL
        self.cand_lo = NULL
        self.cand_top = NULL
        self.cand_size = NULL
        self.cand_masks = NULL

    def __dealloc__(self):
        PyMem_Free(self.coords)
        PyMem_Free(self.cand_start)
        PyMem_Free(self.cand_lo)
        PyMem_Free(self.cand_top)
        PyMem_Free(self.cand_size)
        PyMem_Free(self.cand_masks)

    def __init__(self, points):
        pts = sorted(set(tuple(int(x) for x in p) for p in points))
        self.points = tuple(pts)
        cdef int n = len(pts)
        self.n_points = n
        self.dim = len(pts[0]) if n else 0
        for p in pts:
            if len(p) != self.dim:
                raise ValueError("points of mixed dimension")
        self.n_words = (n + 63) >> 6 if n else 1
        cdef int d = self.dim
        cdef int i, j, k
        if n == 0:
            self.cand_start = <int*> PyMem_Malloc(sizeof(int))
            self.cand_start[0] = 0
            self.n_cands = 0
            return
        self.coords = <long*> PyMem_Malloc(n * d * sizeof(long) if d else sizeof(long))
        for i in range(n):
            for k in range(d):
                self.coords[i * d + k] = pts[i][k]
        self.cand_start = <int*> PyMem_Malloc((n + 1) * sizeof(int))
        self._build_candidates()

    cdef int _find_point(self, long* q) nogil:
        """Binary search for a coordinate vector; -1 if absent."""
        cdef int lo = 0, hi = self.n_points - 1, mid, k, cmp
        cdef long* base
        while lo <= hi:
            mid = (lo + hi) >> 1
            base = self.coords + mid * self.dim
            cmp = 0
            for k in range(self.dim):
                if base[k] < q[k]:
                    cmp = -1
                    break
                elif base[k] > q[k]:
                    cmp = 1
                    break
            if cmp == 0:
                return mid
            elif cmp < 0:
                lo = mid + 1
            else:
                hi = mid - 1
        return -1

    cdef void _build_candidates(self):
        cdef int n = self.n_points, d = self.dim, W = self.n_words
        cdef int cap = 64, cnt = 0
        cdef int i, j, k, idx, pos
        cdef bint ok, inside
        cdef long* lo
        cdef long* hi
        cdef long* cur = <long*> PyMem_Malloc((d if d else 1) * sizeof(long))
        cdef u64* tmp = <u64*> PyMem_Malloc(W * sizeof(u64))
        self.cand_lo = <int*> PyMem_Malloc(cap * sizeof(int))
        self.cand_top = <int*> PyMem_Malloc(cap * sizeof(int))
        self.cand_size = <int*> PyMem_Malloc(cap * sizeof(int))
        self.cand_masks = <u64*> PyMem_Malloc(cap * W * sizeof(u64))
        try:
            for i in range(n):
                self.cand_start[i] = cnt
                lo = self.coords + i * d
                for j in range(i, n):
                    hi = self.coords + j * d
                    ok = True
                    for k in range(d):
                        if hi[k] < lo[k]:
                            ok = False
                            break
                    if not ok:
                        continue
                    # walk the box [lo, hi]; every lattice point must exist
                    memset(tmp, 0, W * sizeof(u64))
                    for k in range(d):
                        cur[k] = lo[k]
                    inside = True
                    while True:
                        idx = self._find_point(cur)
                        if idx < 0:
                            inside = False
                            break
                        tmp[idx >> 6] |= (<u64> 1) << (idx & 63)
                        pos = d - 1
                        while pos >= 0 and cur[pos] == hi[pos]:
                            cur[pos] = lo[pos]
                            pos -= 1
                        if pos < 0:
                            break
                        cur[pos] += 1
                    if not inside:
                        continue
                    if cnt == cap:
                        cap *= 2
                        self.cand_lo = <int*> PyMem_Realloc(self.cand_lo, cap * sizeof(int))
                        self.cand_top = <int*> PyMem_Realloc(self.cand_top, cap * sizeof(int))
                        self.cand_size = <int*> PyMem_Realloc(self.cand_size, cap * sizeof(int))
                        self.cand_masks = <u64*> PyMem_Realloc(self.cand_masks, cap * W * sizeof(u64))
                    self.cand_lo[cnt] = i
                    self.cand_top[cnt] = j
                    k = 0
                    for pos in range(W):
                        k += __builtin_popcountll(tmp[pos])
                    self.cand_size[cnt] = k
                    memcpy(self.cand_masks + cnt * W, tmp, W * sizeof(u64))
                    cnt += 1
            self.cand_start[n] = cnt
            self.n_cands = cnt
        finally:
            PyMem_Free(cur)
            PyMem_Free(tmp)

    def search(self, admissible, allowed_mask=None, memoize=False):
        """Exact cover of the allowed subset, or None.

        Deterministic twin of the pure-Python search: branch point is the
        lexicographically least uncovered point (necessarily the lower
        endpoint of its interval), candidate tops in lexicographic order.
        """
        cdef int n = self.n_points, W = self.n_words
        if len(admissible) != n:
            raise ValueError("admissible flags must match the point count")
        if n == 0:
            return []
        cdef unsigned char* adm = <unsigned char*> PyMem_Malloc(n)
        cdef u64* stack_cov = <u64*> PyMem_Malloc((n + 1) * W * sizeof(u64))
        cdef int* stack_cursor = <int*> PyMem_Malloc((n + 1) * sizeof(int))
        cdef int* stack_choice = <int*> PyMem_Malloc((n + 1) * sizeof(int))
        cdef int* stack_uncov = <int*> PyMem_Malloc((n + 1) * sizeof(int))
        cdef int i, w, depth, cursor, stop, c, uncovered
        cdef u64 word, tail
        cdef u64* cov
        cdef u64* msk
        cdef bint found, advanced, dead
        cdef object failed = set() if memoize else None
        cdef object py_allowed
        tail = ~(<u64> 0)
        if n & 63:
            tail = ((<u64> 1) << (n & 63)) - 1
        try:
            cov = stack_cov
            uncovered = 0
            if allowed_mask is None:
                memset(cov, 0, W * sizeof(u64))
                uncovered = n
            else:
                py_allowed = allowed_mask
                for w in range(W):
                    word = <u64> ((py_allowed >> (64 * w)) & 0xFFFFFFFFFFFFFFFF)
                    if w == W - 1:
                        word &= tail
                    cov[w] = ~word
                    if w == W - 1:
                        cov[w] &= tail
                    uncovered += __builtin_popcountll(word)
            for i in range(n):
                adm[i] = 1 if admissible[i] else 0

            depth = 0
            stack_uncov[0] = uncovered
            stack_cursor[0] = -1
            found = False
            while True:
                cov = stack_cov + depth * W
                if stack_uncov[depth] == 0:
                    found = True
                    break
                cursor = stack_cursor[depth]
                dead = False
                if cursor < 0:
                    # first visit to this node
                    if failed is not None and bytes((<char*> cov)[: W * sizeof(u64)]) in failed:
                        dead = True
                        cursor = 0
                        stop = 0
                    else:
                        # locate the lexicographically least uncovered point
                        i = -1
                        for w in range(W):
                            word = ~cov[w]
                            if w == W - 1:
                                word &= tail
                            if word:
                                i = (w << 6) + __builtin_ctzll(word)
                                break
                        cursor = self.cand_start[i]
                        stop = self.cand_start[i + 1]
                else:
                    i = self.cand_lo[cursor]
                    cursor += 1
                    stop = self.cand_start[i + 1]
                advanced = False
                while cursor < stop:
                    if adm[self.cand_top[cursor]]:
                        msk = self.cand_masks + cursor * W
                        word = 0
                        for w in range(W):
                            word |= msk[w] & cov[w]
                        if word == 0:
                            stack_choice[depth] = cursor
                            stack_cursor[depth] = cursor
                            for w in range(W):
                                stack_cov[(depth + 1) * W + w] = cov[w] | msk[w]
                            stack_uncov[depth + 1] = stack_uncov[depth] - self.cand_size[cursor]
                            stack_cursor[depth + 1] = -1
                            depth += 1
                            advanced = True
                            break
                    cursor += 1
                if advanced:
                    continue
                if failed is not None and not dead:
                    failed.add(bytes((<char*> cov)[: W * sizeof(u64)]))
                depth -= 1
                if depth < 0:
                    break
            if not found:
                return None
            out = []
            for c in range(depth):
                cursor = stack_choice[c]
                out.append((self.cand_lo[cursor], self.cand_top[cursor]))
            return out
        finally:
            PyMem_Free(adm)
            PyMem_Free(stack_cov)
            PyMem_Free(stack_cursor)
            PyMem_Free(stack_choice)
            PyMem_Free(stack_uncov)


def rank_over_q_int64(rows):
    """Bareiss rank over the rationals in int64, or -1 if entries could
    overflow the 2**30 guard (caller falls back to exact big integers)."""
    cdef int nrows = len(rows)
    cdef int ncols = len(rows[0]) if nrows else 0
    if nrows == 0 or ncols == 0:
        return 0
    cdef long long* m = <long long*> PyMem_Malloc(nrows * ncols * sizeof(long long))
    cdef int r, c, col, piv, rank
    cdef long long p, f, v, prev
    cdef object entry
    try:
        for r in range(nrows):
            row = rows[r]
            for c in range(ncols):
                entry = row[c]
                # compare as Python ints: the entry may not fit in int64
                if entry > GUARD_LIMIT or entry < -GUARD_LIMIT:
                    return -1
                m[r * ncols + c] = entry
        rank = 0
        prev = 1
        for col in range(ncols):
            piv = -1
            for r in range(rank, nrows):
                if m[r * ncols + col] != 0:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != rank:
                for c in range(ncols):
                    v = m[rank * ncols + c]
                    m[rank * ncols + c] = m[piv * ncols + c]
                    m[piv * ncols + c] = v
            p = m[rank * ncols + col]
            for r in range(rank + 1, nrows):
                f = m[r * ncols + col]
                if f != 0:
                    for c in range(col + 1, ncols):
                        v = (p * m[r * ncols + c] - f * m[rank * ncols + c]) / prev
                        if v > GUARD_LIMIT or v < -GUARD_LIMIT:
                            return -1
                        m[r * ncols + c] = v
                    m[r * ncols + col] = 0
            prev = p
            rank += 1
            if rank == nrows:
                break
        return rank
    finally:
        PyMem_Free(m)


def rank_mod_p(rows, p):
    """Rank of an integer matrix over F_p (p an odd-sized prime < 2**30)."""
    cdef long long q = p
    if q < 2 or q > GUARD_LIMIT:
        raise ValueError("p must be a prime below 2**30")
    cdef int nrows = len(rows)
    cdef int ncols = len(rows[0]) if nrows else 0
    if nrows == 0 or ncols == 0:
        return 0
    cdef long long* m = <long long*> PyMem_Malloc(nrows * ncols * sizeof(long long))
    cdef int r, c, col, piv, rank
    cdef long long inv, f, v, mult
    try:
        for r in range(nrows):
            row = rows[r]
            for c in range(ncols):
                m[r * ncols + c] = (<long long> row[c]) % q
                if m[r * ncols + c] < 0:
                    m[r * ncols + c] += q
        rank = 0
        for col in range(ncols):
            piv = -1
            for r in range(rank, nrows):
                if m[r * ncols + col] != 0:
                    piv = r
                    break
            if piv < 0:
                continue
            if piv != rank:
                for c in range(ncols):
                    v = m[rank * ncols + c]
                    m[rank * ncols + c] = m[piv * ncols + c]
                    m[piv * ncols + c] = v
            inv = _inv_mod(m[rank * ncols + col], q)
            for r in range(rank + 1, nrows):
                f = m[r * ncols + col]
                if f != 0:
                    mult = f * inv % q
                    for c in range(col, ncols):
                        v = (m[r * ncols + c] - mult * m[rank * ncols + c]) % q
                        if v < 0:
                            v += q
                        m[r * ncols + c] = v
            rank += 1
            if rank == nrows:
                break
        return rank
    finally:
        PyMem_Free(m)


cdef long long _inv_mod(long long a, long long p):
    # Fermat: a^(p-2) mod p
    cdef long long result = 1, base = a % p, e = p - 2
    while e > 0:
        if e & 1:
            result = result * base % p
        base = base * base % p
        e >>= 1
    return result
