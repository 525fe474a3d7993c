"""Pure-Python kernels; the Cython module ``_ckernels`` mirrors this API.

Families of color sets are encoded as integers whose bit ``R`` is set when the
subset with bitmask ``R`` belongs to the family.  Permutations of colors are
given as "subset maps": ``pmap[R]`` is the image bitmask of subset ``R``.
"""
from __future__ import annotations

BACKEND = "python"


def _members(fam: int):
    while fam:
        low = fam & -fam
        yield low.bit_length() - 1
        fam ^= low


def disjoint_table(r: int) -> list[int]:
    """``table[R]`` is the family of all subsets disjoint from ``R``."""
    nsub = 1 << r
    table = []
    for R in range(nsub):
        fam = 0
        for S in range(nsub):
            if not R & S:
                fam |= 1 << S
        table.append(fam)
    return table


def cross_disjoint(f1: int, f2: int, dtable) -> bool:
    for R in _members(f1):
        if dtable[R] & f2:
            return True
    return False


def family_image(fam: int, pmap) -> int:
    out = 0
    for R in _members(fam):
        out |= 1 << pmap[R]
    return out


def family_cmp(a: int, b: int) -> int:
    """Lexicographic comparison of the ascending member lists of two families."""
    diff = a ^ b
    if not diff:
        return 0
    m = (diff & -diff).bit_length() - 1
    if a >> m & 1:
        # a has m, b does not: a < b unless b has nothing beyond m
        return -1 if b >> (m + 1) else 1
    return 1 if a >> (m + 1) else -1


def pair_cmp(a1: int, a2: int, b1: int, b2: int) -> int:
    c = family_cmp(a1, b1)
    return c if c else family_cmp(a2, b2)


def canonical_pair(f1: int, f2: int, pmaps) -> tuple[int, int]:
    best1, best2 = f1, f2
    for pmap in pmaps:
        i1 = family_image(f1, pmap)
        i2 = family_image(f2, pmap)
        if pair_cmp(i1, i2, best1, best2) < 0:
            best1, best2 = i1, i2
    return best1, best2


def is_canonical(f1: int, f2: int, pmaps) -> bool:
    for pmap in pmaps:
        if pair_cmp(family_image(f1, pmap), family_image(f2, pmap), f1, f2) < 0:
            return False
    return True


def scan_pairs(fams1, fams2, dtable, pmaps, use_transpose: bool) -> list[tuple[int, int]]:
    """Pairs with no disjoint cross members that are least in their orbit.

    The orbit is taken under color permutations, and additionally under
    swapping the two families when ``use_transpose`` is set.
    """
    out = []
    for f1 in fams1:
        for f2 in fams2:
            if cross_disjoint(f1, f2, dtable):
                continue
            if not is_canonical(f1, f2, pmaps):
                continue
            if use_transpose:
                t1, t2 = canonical_pair(f2, f1, pmaps)
                if pair_cmp(t1, t2, f1, f2) < 0:
                    continue
            out.append((f1, f2))
    return out


def touched(cells, r: int) -> tuple[list[int], list[int]]:
    """Per-color counts of columns and rows containing that color.

    ``cells[k][j]`` is the color of the cell in column ``j`` and row ``k``.
    """
    n = len(cells)
    cols = [0] * (r + 1)
    rows = [0] * (r + 1)
    for k in range(n):
        for c in set(cells[k]):
            rows[c] += 1
    for j in range(n):
        for c in {cells[k][j] for k in range(n)}:
            cols[c] += 1
    return cols[1:], rows[1:]


def brute_force_min(n: int, r: int, prune: bool = True) -> int:
    """min over all r-colorings of the n x n square of the max touched count.

    With ``prune`` the search fixes colors up to relabeling (each new cell may
    use at most one color beyond those already used) and cuts any branch whose
    partial maximum already reaches the best complete value.
    """
    ncell = n * n
    colmask = [0] * n
    rowmask = [0] * n
    cnt = [0] * r
    best = 2 * n + 1

    def rec(pos: int, used: int, cur_max: int) -> None:
        nonlocal best
        if prune and cur_max >= best:
            return
        if pos == ncell:
            if cur_max < best:
                best = cur_max
            return
        k, j = divmod(pos, n)
        limit = min(r, used + 1) if prune else r
        for c in range(limit):
            bit = 1 << c
            add_c = not colmask[j] & bit
            add_r = not rowmask[k] & bit
            if add_c:
                colmask[j] |= bit
                cnt[c] += 1
            if add_r:
                rowmask[k] |= bit
                cnt[c] += 1
            rec(pos + 1, max(used, c + 1), max(cur_max, cnt[c]))
            if add_c:
                colmask[j] ^= bit
                cnt[c] -= 1
            if add_r:
                rowmask[k] ^= bit
                cnt[c] -= 1

    rec(0, 0, 0)
    return best
