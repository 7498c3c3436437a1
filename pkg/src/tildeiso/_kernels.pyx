"""Compiled engine behind the cube oracle.

Mirrors the pure-Python backend bit for bit: words pack with the first
character in the most significant bit, membership maps are little-endian
bitmaps, and every function returns exactly what its pure twin returns.
The heavy loops release the GIL so thread pools scale across sources.
"""

from libc.stdlib cimport free as c_free
from libc.stdlib cimport malloc, realloc
from libc.string cimport memset

__all__ = [
    "build_free_map",
    "naive_free_map",
    "first_excess",
    "all_violations",
    "single_distance",
    "blocked_pairs",
]

BACKEND_NAME = "compiled"

ctypedef unsigned char u8

cdef extern from *:
    """
    static inline int tilde_ctzll(unsigned long long x)
    {
        return __builtin_ctzll(x);
    }
    """
    int tilde_ctzll(unsigned long long x) nogil

cdef enum:
    UNSEEN = 0xFF
    NBRMAX = 64          # 2m - 1 ops at m <= 26, rounded up
    TBITS = 18
    TSIZE = 262144       # dedup slots for the depth-3 candidate scan

cdef struct Hit:
    int a
    int b
    int d

cdef struct Viol:
    int src
    int tgt
    int full
    int restr

cdef struct Slot:
    Py_ssize_t key
    int epoch


cdef inline int getbit(const u8* bm, Py_ssize_t x) nogil:
    return (bm[x >> 3] >> (x & 7)) & 1


cdef inline int fill_neighbors(Py_ssize_t m, Py_ssize_t x, bint use_swaps,
                               Py_ssize_t* out) nogil:
    cdef int k = 0
    cdef int b
    for b in range(<int> m):
        out[k] = x ^ ((<Py_ssize_t> 1) << b)
        k += 1
    if use_swaps:
        for b in range(<int> m - 1):
            if ((x >> b) ^ (x >> (b + 1))) & 1:
                out[k] = x ^ ((<Py_ssize_t> 3) << b)
                k += 1
    return k


cdef void bfs_fill(Py_ssize_t m, const u8* fmap, u8* levels, int* queue,
                   Py_ssize_t src, bint use_swaps) nogil:
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << m
    cdef Py_ssize_t head = 0, tail = 0
    cdef Py_ssize_t x, y
    cdef int b
    cdef u8 lv
    memset(levels, 0xFF, size)
    levels[src] = 0
    queue[tail] = <int> src
    tail += 1
    while head < tail:
        x = queue[head]
        head += 1
        lv = levels[x] + 1
        for b in range(<int> m):
            y = x ^ ((<Py_ssize_t> 1) << b)
            if levels[y] == UNSEEN and (fmap == NULL or getbit(fmap, y)):
                levels[y] = lv
                queue[tail] = <int> y
                tail += 1
        if use_swaps:
            for b in range(<int> m - 1):
                if ((x >> b) ^ (x >> (b + 1))) & 1:
                    y = x ^ ((<Py_ssize_t> 3) << b)
                    if levels[y] == UNSEEN and (fmap == NULL or getbit(fmap, y)):
                        levels[y] = lv
                        queue[tail] = <int> y
                        tail += 1


cdef bint one_op_apart(Py_ssize_t m, Py_ssize_t u, Py_ssize_t v,
                       bint use_swaps) nogil:
    cdef Py_ssize_t z = u ^ v
    cdef Py_ssize_t low
    cdef int i
    if z == 0:
        return False
    if z & (z - 1) == 0:
        return True
    if not use_swaps:
        return False
    low = z & (-z)
    if z != (low | (low << 1)):
        return False
    # adjacent changed bits are one swap only when they cross
    i = tilde_ctzll(<unsigned long long> low)
    return (((u >> i) ^ (u >> (i + 1))) & 1) == 1


cdef int dp_distance(Py_ssize_t m, Py_ssize_t u, Py_ssize_t v,
                     bint use_swaps) nogil:
    cdef Py_ssize_t z = u ^ v
    cdef int prev2 = 0, prev = 0, cur
    cdef bint last_mismatch = False
    cdef int b, mism
    if z == 0:
        return 0
    for b in range(<int> m - 1, -1, -1):
        mism = <int> ((z >> b) & 1)
        cur = prev + mism
        if (use_swaps and mism and last_mismatch
                and (((u >> b) ^ (u >> (b + 1))) & 1)):
            if prev2 + 1 < cur:
                cur = prev2 + 1
        prev2 = prev
        prev = cur
        last_mismatch = mism != 0
    return prev


cdef bint blocked_d2(Py_ssize_t m, Py_ssize_t a, Py_ssize_t b,
                     const u8* fmap, bint use_swaps) nogil:
    # true when every free midpoint between a and b is missing
    cdef Py_ssize_t z = a ^ b
    cdef Py_ssize_t rem = z, bit, y
    cdef int idx, lo
    while rem:
        bit = rem & (-rem)
        rem ^= bit
        idx = tilde_ctzll(<unsigned long long> bit)
        y = a ^ bit
        if getbit(fmap, y) and one_op_apart(m, y, b, use_swaps):
            return False
        if use_swaps:
            lo = idx - 1
            if lo >= 0 and lo < m - 1 and (((a >> lo) ^ (a >> (lo + 1))) & 1):
                y = a ^ ((<Py_ssize_t> 3) << lo)
                if getbit(fmap, y) and one_op_apart(m, y, b, use_swaps):
                    return False
            lo = idx
            if lo < m - 1 and (((a >> lo) ^ (a >> (lo + 1))) & 1):
                y = a ^ ((<Py_ssize_t> 3) << lo)
                if getbit(fmap, y) and one_op_apart(m, y, b, use_swaps):
                    return False
    return True


cdef bint has_free_minimal_path(Py_ssize_t m, Py_ssize_t cur, Py_ssize_t v,
                                int dist, const u8* fmap,
                                bint use_swaps) nogil:
    cdef Py_ssize_t z, rem, bit, y
    cdef int idx, lo
    if dist == 0:
        return True
    z = cur ^ v
    rem = z
    while rem:
        bit = rem & (-rem)
        rem ^= bit
        idx = tilde_ctzll(<unsigned long long> bit)
        y = cur ^ bit
        if (getbit(fmap, y) and dp_distance(m, y, v, use_swaps) == dist - 1
                and has_free_minimal_path(m, y, v, dist - 1, fmap, use_swaps)):
            return True
        if use_swaps:
            lo = idx - 1
            if lo >= 0 and lo < m - 1 and (((cur >> lo) ^ (cur >> (lo + 1))) & 1):
                y = cur ^ ((<Py_ssize_t> 3) << lo)
                if (getbit(fmap, y)
                        and dp_distance(m, y, v, use_swaps) == dist - 1
                        and has_free_minimal_path(m, y, v, dist - 1, fmap,
                                                  use_swaps)):
                    return True
            lo = idx
            if lo < m - 1 and (((cur >> lo) ^ (cur >> (lo + 1))) & 1):
                y = cur ^ ((<Py_ssize_t> 3) << lo)
                if (getbit(fmap, y)
                        and dp_distance(m, y, v, use_swaps) == dist - 1
                        and has_free_minimal_path(m, y, v, dist - 1, fmap,
                                                  use_swaps)):
                    return True
    return False


cdef inline bint seen_mark(Slot* tab, int epoch, Py_ssize_t v) nogil:
    # true when v was already recorded this epoch; records it otherwise
    cdef unsigned long long hv = (<unsigned long long> v) * 0x9E3779B97F4A7C15ULL
    cdef Py_ssize_t h = <Py_ssize_t> (hv >> (64 - TBITS)) & (TSIZE - 1)
    cdef Py_ssize_t probes = 0
    while True:
        if tab[h].epoch != epoch:
            tab[h].epoch = epoch
            tab[h].key = v
            return False
        if tab[h].key == v:
            return True
        h = (h + 1) & (TSIZE - 1)
        probes += 1
        if probes >= TSIZE:
            return False


cdef int push_hit(Hit** buf, Py_ssize_t* cap, Py_ssize_t used,
                  int a, int b, int d) nogil:
    cdef Hit* grown
    if used >= cap[0]:
        cap[0] = cap[0] * 2 if cap[0] else 64
        grown = <Hit*> realloc(buf[0], cap[0] * sizeof(Hit))
        if grown == NULL:
            return -1
        buf[0] = grown
    buf[0][used].a = a
    buf[0][used].b = b
    buf[0][used].d = d
    return 0


def build_free_map(m, f_text):
    """Bitmap of the words of length m that avoid the factor f."""
    cdef Py_ssize_t mm = m
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << mm
    cdef Py_ssize_t nbytes = (size + 7) >> 3
    cdef Py_ssize_t n = len(f_text)
    cdef Py_ssize_t p, low, combo, x, i, ncombos
    cdef unsigned long long fbits, base, low_mask, cm
    if n == 0:
        raise ValueError("factor must be nonempty")
    out = bytearray(nbytes)
    cdef u8[::1] ov = out
    cdef u8* ob = &ov[0]
    if mm < n:
        memset(ob, 0xFF, nbytes)
        if size & 7:
            ob[nbytes - 1] &= <u8> ((1 << (size & 7)) - 1)
        return bytes(out)
    fbits = int(f_text, 2)
    ncombos = (<Py_ssize_t> 1) << (mm - n)
    with nogil:
        for p in range(mm - n + 1):
            low = mm - n - p
            base = fbits << low
            low_mask = ((<unsigned long long> 1) << low) - 1
            for combo in range(ncombos):
                cm = <unsigned long long> combo
                x = <Py_ssize_t> (((cm >> low) << (n + low)) | base
                                  | (cm & low_mask))
                ob[x >> 3] |= <u8> (1 << (x & 7))
        for i in range(nbytes):
            ob[i] = <u8> ((~ob[i]) & 0xFF)
        if size & 7:
            ob[nbytes - 1] &= <u8> ((1 << (size & 7)) - 1)
    return bytes(out)


def naive_free_map(m, f_text):
    """Reference construction by plain substring scan; test use only."""
    size = 1 << m
    out = bytearray((size + 7) >> 3)
    for x in range(size):
        if f_text not in format(x, f"0{m}b"):
            out[x >> 3] |= 1 << (x & 7)
    return bytes(out)


def single_distance(m, free, src, dst, use_swaps):
    """Shortest path inside the (possibly induced) cube; -1 unreachable."""
    cdef Py_ssize_t mm = m
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << mm
    cdef Py_ssize_t c_src = src, c_dst = dst
    cdef bint sw = use_swaps
    cdef const u8[::1] fv
    cdef const u8* fb = NULL
    if free is not None:
        fv = free
        fb = &fv[0]
    if c_src == c_dst:
        return 0
    cdef u8* levels = <u8*> malloc(size)
    cdef int* queue = <int*> malloc(size * sizeof(int))
    if levels == NULL or queue == NULL:
        c_free(levels)
        c_free(queue)
        raise MemoryError
    cdef Py_ssize_t head = 0, tail = 0
    cdef Py_ssize_t x, y
    cdef Py_ssize_t nbrs[NBRMAX]
    cdef int k, j
    cdef u8 lv
    cdef int result = -1
    with nogil:
        memset(levels, 0xFF, size)
        levels[c_src] = 0
        queue[tail] = <int> c_src
        tail += 1
        while head < tail and result < 0:
            x = queue[head]
            head += 1
            lv = levels[x] + 1
            k = fill_neighbors(mm, x, sw, nbrs)
            for j in range(k):
                y = nbrs[j]
                if levels[y] == UNSEEN and (fb == NULL or getbit(fb, y)):
                    if y == c_dst:
                        result = lv
                        break
                    levels[y] = lv
                    queue[tail] = <int> y
                    tail += 1
    c_free(levels)
    c_free(queue)
    return result


def first_excess(m, free, use_swaps, start=0, stop=None):
    """First (src, tgt, full, restricted) with restricted != full.

    Scans free sources in ascending order, targets above the source in
    ascending order; restricted -1 encodes unreachable.
    """
    cdef Py_ssize_t mm = m
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << mm
    cdef Py_ssize_t c_start = start
    cdef Py_ssize_t c_stop = size if stop is None else <Py_ssize_t> stop
    cdef bint sw = use_swaps
    cdef const u8[::1] fv = free
    cdef const u8* fb = &fv[0]
    cdef u8* restr = <u8*> malloc(size)
    cdef u8* full = <u8*> malloc(size)
    cdef int* queue = <int*> malloc(size * sizeof(int))
    if restr == NULL or full == NULL or queue == NULL:
        c_free(restr)
        c_free(full)
        c_free(queue)
        raise MemoryError
    cdef Py_ssize_t s, t
    cdef Py_ssize_t f_src = -1, f_tgt = -1
    cdef int f_full = -1, f_restr = -1
    cdef bint found = False
    with nogil:
        for s in range(c_start, c_stop):
            if not getbit(fb, s):
                continue
            bfs_fill(mm, fb, restr, queue, s, sw)
            bfs_fill(mm, NULL, full, queue, s, sw)
            for t in range(s + 1, size):
                if not getbit(fb, t):
                    continue
                if restr[t] != full[t]:
                    f_src = s
                    f_tgt = t
                    f_full = full[t]
                    f_restr = -1 if restr[t] == UNSEEN else restr[t]
                    found = True
                    break
            if found:
                break
    c_free(restr)
    c_free(full)
    c_free(queue)
    if not found:
        return None
    return (f_src, f_tgt, f_full, f_restr)


cdef int push_viol(Viol** buf, Py_ssize_t* cap, Py_ssize_t used,
                   int src, int tgt, int full, int restr) nogil:
    cdef Viol* grown
    if used >= cap[0]:
        cap[0] = cap[0] * 2 if cap[0] else 64
        grown = <Viol*> realloc(buf[0], cap[0] * sizeof(Viol))
        if grown == NULL:
            return -1
        buf[0] = grown
    buf[0][used].src = src
    buf[0][used].tgt = tgt
    buf[0][used].full = full
    buf[0][used].restr = restr
    return 0


def all_violations(m, free, use_swaps, start=0, stop=None):
    """Every violating pair (src < tgt) with its two distances."""
    cdef Py_ssize_t mm = m
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << mm
    cdef Py_ssize_t c_start = start
    cdef Py_ssize_t c_stop = size if stop is None else <Py_ssize_t> stop
    cdef bint sw = use_swaps
    cdef const u8[::1] fv = free
    cdef const u8* fb = &fv[0]
    cdef u8* restr = <u8*> malloc(size)
    cdef u8* full = <u8*> malloc(size)
    cdef int* queue = <int*> malloc(size * sizeof(int))
    cdef Viol* viols = NULL
    cdef Py_ssize_t cap = 0, used = 0
    cdef bint oom = False
    if restr == NULL or full == NULL or queue == NULL:
        c_free(restr)
        c_free(full)
        c_free(queue)
        raise MemoryError
    cdef Py_ssize_t s, t
    cdef int rd
    with nogil:
        for s in range(c_start, c_stop):
            if not getbit(fb, s):
                continue
            bfs_fill(mm, fb, restr, queue, s, sw)
            bfs_fill(mm, NULL, full, queue, s, sw)
            for t in range(s + 1, size):
                if not getbit(fb, t):
                    continue
                if restr[t] != full[t]:
                    rd = -1 if restr[t] == UNSEEN else restr[t]
                    if push_viol(&viols, &cap, used, <int> s, <int> t,
                                 full[t], rd) < 0:
                        oom = True
                        break
                    used += 1
            if oom:
                break
    c_free(restr)
    c_free(full)
    c_free(queue)
    if oom:
        c_free(viols)
        raise MemoryError
    out = []
    cdef Py_ssize_t i
    for i in range(used):
        out.append((viols[i].src, viols[i].tgt, viols[i].full,
                    viols[i].restr))
    c_free(viols)
    return out


def blocked_pairs(m, f_text, free, use_swaps, max_dist=3):
    """Violating pairs whose every minimal route hits the factor.

    Complete for pairs at full distance 2 and 3; pairs violating only
    at larger distances are outside this scan's envelope.  Returned as
    (u, v, distance) with u < v, sorted.
    """
    cdef Py_ssize_t mm = m
    cdef Py_ssize_t size = (<Py_ssize_t> 1) << mm
    cdef bint sw = use_swaps
    cdef int md = max_dist
    cdef const u8[::1] fv = free
    cdef const u8* fb = &fv[0]
    cdef u8* cnt = <u8*> malloc(size)
    cdef Slot* tab = <Slot*> malloc(TSIZE * sizeof(Slot))
    cdef Hit* hits = NULL
    cdef Py_ssize_t cap = 0, used = 0
    cdef bint oom = False
    if cnt == NULL or tab == NULL:
        c_free(cnt)
        c_free(tab)
        raise MemoryError
    cdef Py_ssize_t w, u, v, a, b, x1, x2
    cdef Py_ssize_t nbrs[NBRMAX]
    cdef Py_ssize_t fr[NBRMAX]
    cdef Py_ssize_t primed[NBRMAX]
    cdef Py_ssize_t nb2[NBRMAX]
    cdef Py_ssize_t nb3[NBRMAX]
    cdef int k, nf, np_, k2, k3, i, j, j2, j3
    cdef int epoch = 0
    with nogil:
        memset(cnt, 0, size)
        for i in range(<int> TSIZE):
            tab[i].epoch = 0
            tab[i].key = 0
        for w in range(size):
            if getbit(fb, w):
                continue
            k = fill_neighbors(mm, w, sw, nbrs)
            nf = 0
            for i in range(k):
                if getbit(fb, nbrs[i]):
                    fr[nf] = nbrs[i]
                    nf += 1
            for i in range(nf):
                if cnt[fr[i]] < 255:
                    cnt[fr[i]] += 1
            for i in range(nf):
                for j in range(i + 1, nf):
                    if fr[i] < fr[j]:
                        a = fr[i]
                        b = fr[j]
                    else:
                        a = fr[j]
                        b = fr[i]
                    if one_op_apart(mm, a, b, sw):
                        continue
                    if blocked_d2(mm, a, b, fb, sw):
                        if push_hit(&hits, &cap, used, <int> a, <int> b,
                                    2) < 0:
                            oom = True
                            break
                        used += 1
                if oom:
                    break
            if oom:
                break
        if md >= 3 and not oom:
            for u in range(size):
                if cnt[u] < 3 or not getbit(fb, u):
                    continue
                k = fill_neighbors(mm, u, sw, nbrs)
                np_ = 0
                for i in range(k):
                    if not getbit(fb, nbrs[i]):
                        primed[np_] = nbrs[i]
                        np_ += 1
                epoch += 1
                for i in range(np_):
                    x1 = primed[i]
                    k2 = fill_neighbors(mm, x1, sw, nb2)
                    for j2 in range(k2):
                        x2 = nb2[j2]
                        k3 = fill_neighbors(mm, x2, sw, nb3)
                        for j3 in range(k3):
                            v = nb3[j3]
                            if v == u or not getbit(fb, v):
                                continue
                            if seen_mark(tab, epoch, v):
                                continue
                            if u < v:
                                a = u
                                b = v
                            else:
                                a = v
                                b = u
                            if dp_distance(mm, a, b, sw) != 3:
                                continue
                            if not has_free_minimal_path(mm, a, b, 3, fb, sw):
                                if push_hit(&hits, &cap, used, <int> a,
                                            <int> b, 3) < 0:
                                    oom = True
                                    break
                                used += 1
                        if oom:
                            break
                    if oom:
                        break
                if oom:
                    break
    c_free(cnt)
    c_free(tab)
    if oom:
        c_free(hits)
        raise MemoryError
    found = set()
    cdef Py_ssize_t h
    for h in range(used):
        found.add((hits[h].a, hits[h].b, hits[h].d))
    c_free(hits)
    return sorted(found)
