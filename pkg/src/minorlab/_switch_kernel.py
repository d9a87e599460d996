"""Compiled loops for labelled enumeration (orbits and 2-edge swaps).

Graphs are int64 edge masks over pair indices, so n <= 11.
"""
from __future__ import annotations

import math

import numpy as np
from numba import njit

MAX_N = 11


def pair_tables(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    nbits = n * (n - 1) // 2
    pidx = np.full((n, n), -1, dtype=np.int64)
    eu = np.zeros(nbits, dtype=np.int64)
    ev = np.zeros(nbits, dtype=np.int64)
    i = 0
    for u in range(n):
        for v in range(u + 1, n):
            pidx[u, v] = pidx[v, u] = i
            eu[i], ev[i] = u, v
            i += 1
    return pidx, eu, ev


@njit(cache=True)
def _orbit_masks(n, us, vs, pidx, out):
    # Heap's algorithm over all permutations of range(n)
    perm = np.arange(n)
    c = np.zeros(n, dtype=np.int64)
    k = 0
    m = 0
    for e in range(us.shape[0]):
        m |= np.int64(1) << pidx[perm[us[e]], perm[vs[e]]]
    out[k] = m
    k += 1
    i = 1
    while i < n:
        if c[i] < i:
            if i % 2 == 0:
                perm[0], perm[i] = perm[i], perm[0]
            else:
                perm[c[i]], perm[i] = perm[i], perm[c[i]]
            m = 0
            for e in range(us.shape[0]):
                m |= np.int64(1) << pidx[perm[us[e]], perm[vs[e]]]
            out[k] = m
            k += 1
            c[i] += 1
            i = 1
        else:
            c[i] = 0
            i += 1
    return k


def orbit(n: int, edges) -> np.ndarray:
    """Sorted edge masks of every relabelling of the graph with the given edges."""
    if n > MAX_N:
        raise ValueError(f"labelled enumeration is limited to n <= {MAX_N}")
    pidx, _, _ = pair_tables(n)
    us = np.array([e[0] for e in edges], dtype=np.int64)
    vs = np.array([e[1] for e in edges], dtype=np.int64)
    out = np.empty(math.factorial(n), dtype=np.int64)
    _orbit_masks(n, us, vs, pidx, out)
    return np.unique(out)


@njit(cache=True)
def _low_bit(v):
    b = 0
    while not (v >> b) & 1:
        b += 1
    return b


@njit(cache=True)
def _path_walk(x, n, nbits, eu, ev, rows, walk):
    """Vertices of x in path order if x is a Hamiltonian path; False otherwise."""
    rows[:n] = 0
    ne = 0
    for b in range(nbits):
        if (x >> b) & 1:
            rows[eu[b]] |= np.int64(1) << ev[b]
            rows[ev[b]] |= np.int64(1) << eu[b]
            ne += 1
    if ne != n - 1:
        return False
    start = -1
    for v in range(n):
        r = rows[v]
        if r != 0 and (r & (r - 1)) == 0:
            start = v
            break
    if start < 0:
        return False
    seen = np.int64(0)
    prev_mask = np.int64(0)
    cur = start
    for k in range(n):
        walk[k] = cur
        seen |= np.int64(1) << cur
        if k == n - 1:
            break
        ahead = rows[cur] & ~prev_mask
        if ahead == 0 or (ahead & (ahead - 1)) != 0:
            return False
        prev_mask = np.int64(1) << cur
        cur = _low_bit(ahead)
        if (seen >> cur) & 1:
            return False
    return True


_GOLDEN = np.uint64(0x9E3779B97F4A7C15)


@njit(cache=True)
def _slot(y, shift):
    return np.int64((np.uint64(y) * _GOLDEN) >> np.uint64(shift))


@njit(cache=True)
def _build_index(Y, keys, vals, shift):
    mask = keys.shape[0] - 1
    for i in range(Y.shape[0]):
        h = _slot(Y[i], shift)
        while keys[h] != -1:
            h = (h + 1) & mask
        keys[h] = Y[i]
        vals[h] = i


@njit(cache=True)
def _lookup(keys, vals, shift, y):
    """Position of y in Y via the open-addressing index, or -1."""
    mask = keys.shape[0] - 1
    h = _slot(y, shift)
    while True:
        k = keys[h]
        if k == y:
            return np.int64(vals[h])
        if k == -1:
            return np.int64(-1)
        h = (h + 1) & mask


class YIndex:
    """Hash index over the sorted array Y (masks are non-negative, -1 marks empty)."""

    def __init__(self, Y: np.ndarray):
        size_bits = max(4, int(2 * max(len(Y), 1) - 1).bit_length())
        self.shift = 64 - size_bits
        self.keys = np.full(1 << size_bits, -1, dtype=np.int64)
        self.vals = np.zeros(1 << size_bits, dtype=np.int32)
        _build_index(Y, self.keys, self.vals, self.shift)


@njit(cache=True)
def _related(x, nbits, pidx, eu, ev, keys, vals, shift, idx_out, bits_out):
    """Swaps of x that land in the sorted array Y; returns how many were found."""
    edges = np.empty(nbits, dtype=np.int64)
    ne = 0
    for b in range(nbits):
        if (x >> b) & 1:
            edges[ne] = b
            ne += 1
    cnt = 0
    for i in range(ne):
        e1 = edges[i]
        a = eu[e1]
        b = ev[e1]
        for j in range(i + 1, ne):
            e2 = edges[j]
            c = eu[e2]
            d = ev[e2]
            if a == c or a == d or b == c or b == d:
                continue
            ac = pidx[a, c]
            ad = pidx[a, d]
            bc = pidx[b, c]
            bd = pidx[b, d]
            if ((x >> ac) & 1) or ((x >> ad) & 1) or ((x >> bc) & 1) or ((x >> bd) & 1):
                continue
            base = x ^ (np.int64(1) << e1) ^ (np.int64(1) << e2)
            for variant in range(2):
                if variant == 0:
                    p1, p2 = ac, bd
                else:
                    p1, p2 = ad, bc
                pos = _lookup(keys, vals, shift, base | (np.int64(1) << p1) | (np.int64(1) << p2))
                if pos >= 0:
                    idx_out[cnt] = pos
                    bits_out[cnt, 0] = e1
                    bits_out[cnt, 1] = e2
                    bits_out[cnt, 2] = p1
                    bits_out[cnt, 3] = p2
                    cnt += 1
    return cnt


@njit(cache=True)
def _related_path(x, n, nbits, pidx, eu, ev, keys, vals, shift, idx_out, bits_out, rows, walk):
    """Same result as :func:`_related` when every member of Y is one cycle plus
    one path, each on more than n/3 vertices.

    For a Hamiltonian path w_0..w_{n-1}, dropping the edges at positions i < j
    and adding w_i w_{j+1}, w_{i+1} w_j closes a cycle on j - i vertices; the
    other rewiring yields a path again. Only the first kind can reach Y, so
    only those candidates are looked up. Non-path x fall back to the full scan.
    """
    if not _path_walk(x, n, nbits, eu, ev, rows, walk):
        return _related(x, nbits, pidx, eu, ev, keys, vals, shift, idx_out, bits_out)
    cnt = 0
    one = np.int64(1)
    for i in range(n - 1):
        for j in range(i + 1, n - 1):
            L = j - i
            if 3 * L <= n or 3 * (n - L) <= n:
                continue
            e1 = pidx[walk[i], walk[i + 1]]
            e2 = pidx[walk[j], walk[j + 1]]
            p1 = pidx[walk[i], walk[j + 1]]
            p2 = pidx[walk[i + 1], walk[j]]
            if (x >> p1) & 1 or (x >> p2) & 1:
                continue
            pos = _lookup(keys, vals, shift, (x ^ (one << e1) ^ (one << e2)) | (one << p1) | (one << p2))
            if pos >= 0:
                idx_out[cnt] = pos
                bits_out[cnt, 0] = e1
                bits_out[cnt, 1] = e2
                bits_out[cnt, 2] = p1
                bits_out[cnt, 3] = p2
                cnt += 1
    return cnt


@njit(cache=True)
def _related_any(x, n, nbits, pidx, eu, ev, keys, vals, shift, idx_out, bits_out, rows, walk, path_mode):
    if path_mode:
        return _related_path(x, n, nbits, pidx, eu, ev, keys, vals, shift, idx_out, bits_out, rows, walk)
    return _related(x, nbits, pidx, eu, ev, keys, vals, shift, idx_out, bits_out)


@njit(cache=True)
def _scan(X, ny, keys, vals, shift, n, nbits, pidx, eu, ev, tab, path_mode):
    """One pass over X.

    ``tab[y, i, 0]`` counts the x related to y that differ at bit i (that is
    l'[y, i]); ``tab[y, i, 1]`` keeps the largest l[x, i] among those x. Both
    l_max and v are monotone in l[x, i] for fixed l'[y, i], so the table
    suffices to finish without a second pass.
    """
    degy = np.zeros(ny, dtype=np.int64)
    cap = nbits * nbits
    idx = np.empty(cap, dtype=np.int64)
    bts = np.empty((cap, 4), dtype=np.int64)
    rows = np.empty(n, dtype=np.int64)
    walk = np.empty(n, dtype=np.int64)
    lx = np.zeros(nbits, dtype=np.int64)
    m = np.int64(-1)
    overflow = False
    for xi in range(X.shape[0]):
        cnt = _related_any(X[xi], n, nbits, pidx, eu, ev, keys, vals, shift, idx, bts, rows, walk, path_mode)
        if m < 0 or cnt < m:
            m = cnt
        lx[:] = 0
        for r in range(cnt):
            for t in range(4):
                lx[bts[r, t]] += 1
        for r in range(cnt):
            yi = idx[r]
            degy[yi] += 1
            for t in range(4):
                b = bts[r, t]
                if tab[yi, b, 0] == 255 or lx[b] > 255:
                    overflow = True
                    continue
                tab[yi, b, 0] += 1
                if lx[b] > tab[yi, b, 1]:
                    tab[yi, b, 1] = lx[b]
    return m, degy, overflow


@njit(cache=True)
def _finish(tab, m, mp):
    lmax = np.int64(0)
    vnum = np.int64(0)
    for yi in range(tab.shape[0]):
        for b in range(tab.shape[1]):
            c = np.int64(tab[yi, b, 0])
            a = np.int64(tab[yi, b, 1])
            if a * c > lmax:
                lmax = a * c
            # min(a/m, c/mp) = min(a mp, c m) / (m mp)
            t = min(a * mp, c * m)
            if t > vnum:
                vnum = t
    return lmax, vnum


def switch_quantities(X: np.ndarray, Y: np.ndarray, n: int, cycle_path: bool = False):
    """(m, m', l_max, v_num, v_den) for the 2-edge-swap relation restricted to X x Y.

    ``Y`` holds distinct masks; positions in it index the per-(y, bit) table.
    Pass ``cycle_path=True`` only when every member of Y is one cycle plus one
    path, each on more than n/3 vertices; it skips lookups that cannot succeed.
    """
    if n > MAX_N:
        raise ValueError(f"labelled enumeration is limited to n <= {MAX_N}")
    nbits = n * (n - 1) // 2
    pidx, eu, ev = pair_tables(n)
    tab = np.zeros((Y.shape[0], nbits, 2), dtype=np.uint8)
    index = YIndex(Y)
    m, degy, overflow = _scan(X, Y.shape[0], index.keys, index.vals, index.shift,
                              n, nbits, pidx, eu, ev, tab, cycle_path)
    if overflow:
        raise OverflowError("per-bit counts exceed 255")
    mp = int(degy.min()) if degy.shape[0] else 0
    if m <= 0 or mp <= 0:
        return int(m), mp, 0, 0, 1
    lmax, vnum = _finish(tab, np.int64(m), np.int64(mp))
    return int(m), mp, int(lmax), int(vnum), int(m) * mp
