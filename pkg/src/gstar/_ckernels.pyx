# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twin of ``_pykernels``.  Families must fit in 64 bits (r <= 6)."""

from libc.stdint cimport uint64_t
from libc.stdlib cimport malloc, free

BACKEND = "cython"


cdef extern from *:
    int __builtin_ctzll(unsigned long long) nogil


cdef inline int _ctz(uint64_t x) nogil:
    return __builtin_ctzll(x)


def disjoint_table(int r):
    cdef int nsub = 1 << r
    cdef int R, S
    cdef uint64_t fam
    out = []
    for R in range(nsub):
        fam = 0
        for S in range(nsub):
            if not (R & S):
                fam |= (<uint64_t>1) << S
        out.append(fam)
    return out


cdef inline bint _cross_disjoint(uint64_t f1, uint64_t f2, const uint64_t* dt) nogil:
    cdef uint64_t low
    while f1:
        low = f1 & (~f1 + 1)
        if dt[_ctz(low)] & f2:
            return True
        f1 ^= low
    return False


cdef inline uint64_t _image(uint64_t fam, const int* pmap) nogil:
    cdef uint64_t out = 0
    cdef uint64_t low
    while fam:
        low = fam & (~fam + 1)
        out |= (<uint64_t>1) << pmap[_ctz(low)]
        fam ^= low
    return out


cdef inline int _fcmp(uint64_t a, uint64_t b) nogil:
    cdef uint64_t diff = a ^ b
    cdef int m
    if not diff:
        return 0
    m = _ctz(diff)
    if (a >> m) & 1:
        if m + 1 < 64 and (b >> (m + 1)):
            return -1
        return 1
    if m + 1 < 64 and (a >> (m + 1)):
        return 1
    return -1


cdef inline int _pcmp(uint64_t a1, uint64_t a2, uint64_t b1, uint64_t b2) nogil:
    cdef int c = _fcmp(a1, b1)
    if c:
        return c
    return _fcmp(a2, b2)


cdef class _Tables:
    cdef uint64_t* dt
    cdef int* pm
    cdef int nperm
    cdef int nsub

    def __cinit__(self, dtable, pmaps):
        cdef int i, k
        self.nsub = len(dtable)
        self.nperm = len(pmaps)
        self.dt = <uint64_t*> malloc(self.nsub * sizeof(uint64_t))
        self.pm = <int*> malloc(max(1, self.nperm * self.nsub) * sizeof(int))
        for i in range(self.nsub):
            self.dt[i] = dtable[i]
        for k in range(self.nperm):
            for i in range(self.nsub):
                self.pm[k * self.nsub + i] = pmaps[k][i]

    def __dealloc__(self):
        free(self.dt)
        free(self.pm)


cdef bint _is_canonical(uint64_t f1, uint64_t f2, _Tables t) nogil:
    cdef int k
    for k in range(t.nperm):
        if _pcmp(_image(f1, t.pm + k * t.nsub), _image(f2, t.pm + k * t.nsub), f1, f2) < 0:
            return False
    return True


cdef void _canonical(uint64_t f1, uint64_t f2, _Tables t, uint64_t* o1, uint64_t* o2) nogil:
    cdef int k
    cdef uint64_t i1, i2
    o1[0] = f1
    o2[0] = f2
    for k in range(t.nperm):
        i1 = _image(f1, t.pm + k * t.nsub)
        i2 = _image(f2, t.pm + k * t.nsub)
        if _pcmp(i1, i2, o1[0], o2[0]) < 0:
            o1[0] = i1
            o2[0] = i2


def cross_disjoint(uint64_t f1, uint64_t f2, dtable):
    cdef _Tables t = _Tables(dtable, [])
    return _cross_disjoint(f1, f2, t.dt)


def family_image(uint64_t fam, pmap):
    cdef _Tables t = _Tables([0] * len(pmap), [pmap])
    return _image(fam, t.pm)


def family_cmp(uint64_t a, uint64_t b):
    return _fcmp(a, b)


def pair_cmp(uint64_t a1, uint64_t a2, uint64_t b1, uint64_t b2):
    return _pcmp(a1, a2, b1, b2)


def canonical_pair(uint64_t f1, uint64_t f2, pmaps):
    cdef _Tables t = _Tables([0] * (len(pmaps[0]) if pmaps else 1), pmaps)
    cdef uint64_t o1, o2
    _canonical(f1, f2, t, &o1, &o2)
    return o1, o2


def is_canonical(uint64_t f1, uint64_t f2, pmaps):
    cdef _Tables t = _Tables([0] * (len(pmaps[0]) if pmaps else 1), pmaps)
    return _is_canonical(f1, f2, t)


def scan_pairs(fams1, fams2, dtable, pmaps, bint use_transpose):
    cdef _Tables t = _Tables(dtable, pmaps)
    cdef Py_ssize_t n1 = len(fams1), n2 = len(fams2), i, j
    cdef uint64_t* a = <uint64_t*> malloc(max(1, n1) * sizeof(uint64_t))
    cdef uint64_t* b = <uint64_t*> malloc(max(1, n2) * sizeof(uint64_t))
    cdef uint64_t f1, f2, t1, t2
    out = []
    try:
        for i in range(n1):
            a[i] = fams1[i]
        for j in range(n2):
            b[j] = fams2[j]
        for i in range(n1):
            f1 = a[i]
            for j in range(n2):
                f2 = b[j]
                if _cross_disjoint(f1, f2, t.dt):
                    continue
                if not _is_canonical(f1, f2, t):
                    continue
                if use_transpose:
                    _canonical(f2, f1, t, &t1, &t2)
                    if _pcmp(t1, t2, f1, f2) < 0:
                        continue
                out.append((f1, f2))
    finally:
        free(a)
        free(b)
    return out


def touched(cells, int r):
    cdef Py_ssize_t n = len(cells), k, j
    cdef int c
    cdef int* grid = <int*> malloc(max(1, n * n) * sizeof(int))
    cdef int* seen = <int*> malloc((r + 1) * sizeof(int))
    cdef int* cols = <int*> malloc((r + 1) * sizeof(int))
    cdef int* rows = <int*> malloc((r + 1) * sizeof(int))
    try:
        for k in range(n):
            row = cells[k]
            for j in range(n):
                grid[k * n + j] = row[j]
        for c in range(r + 1):
            cols[c] = 0
            rows[c] = 0
            seen[c] = -1
        for k in range(n):
            for j in range(n):
                c = grid[k * n + j]
                if seen[c] != k:
                    seen[c] = k
                    rows[c] += 1
        for c in range(r + 1):
            seen[c] = -1
        for j in range(n):
            for k in range(n):
                c = grid[k * n + j]
                if seen[c] != j:
                    seen[c] = j
                    cols[c] += 1
        return [cols[c] for c in range(1, r + 1)], [rows[c] for c in range(1, r + 1)]
    finally:
        free(grid)
        free(seen)
        free(cols)
        free(rows)


cdef struct _Search:
    int n
    int r
    int ncell
    bint prune
    int best
    uint64_t* colmask
    uint64_t* rowmask
    int* cnt


cdef void _rec(_Search* s, int pos, int used, int cur_max) nogil:
    cdef int k, j, c, limit, nxt
    cdef uint64_t bit
    cdef bint add_c, add_r
    if s.prune and cur_max >= s.best:
        return
    if pos == s.ncell:
        if cur_max < s.best:
            s.best = cur_max
        return
    k = pos // s.n
    j = pos % s.n
    limit = s.r
    if s.prune and used + 1 < limit:
        limit = used + 1
    for c in range(limit):
        bit = (<uint64_t>1) << c
        add_c = not (s.colmask[j] & bit)
        add_r = not (s.rowmask[k] & bit)
        if add_c:
            s.colmask[j] |= bit
            s.cnt[c] += 1
        if add_r:
            s.rowmask[k] |= bit
            s.cnt[c] += 1
        nxt = cur_max if cur_max > s.cnt[c] else s.cnt[c]
        _rec(s, pos + 1, used if used > c + 1 else c + 1, nxt)
        if add_c:
            s.colmask[j] ^= bit
            s.cnt[c] -= 1
        if add_r:
            s.rowmask[k] ^= bit
            s.cnt[c] -= 1


def brute_force_min(int n, int r, bint prune=True):
    if r > 64:
        raise ValueError("compiled oracle supports r <= 64")
    cdef _Search s
    cdef int i
    s.n = n
    s.r = r
    s.ncell = n * n
    s.prune = prune
    s.best = 2 * n + 1
    s.colmask = <uint64_t*> malloc(max(1, n) * sizeof(uint64_t))
    s.rowmask = <uint64_t*> malloc(max(1, n) * sizeof(uint64_t))
    s.cnt = <int*> malloc(r * sizeof(int))
    try:
        for i in range(n):
            s.colmask[i] = 0
            s.rowmask[i] = 0
        for i in range(r):
            s.cnt[i] = 0
        with nogil:
            _rec(&s, 0, 0, 0)
        return s.best
    finally:
        free(s.colmask)
        free(s.rowmask)
        free(s.cnt)
