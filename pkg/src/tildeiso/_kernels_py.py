"""Pure-Python engine behind the cube oracle.

Words of length m are packed as integers with the first character in
the most significant bit, so numeric order equals textual order.  Set
membership maps are little-endian bitmaps: bit x lives in byte x >> 3
at offset x & 7.  The compiled extension module mirrors this API
exactly; results must be bit-identical between the two.
"""

from __future__ import annotations

__all__ = [
    "build_free_map",
    "naive_free_map",
    "first_excess",
    "all_violations",
    "single_distance",
    "blocked_pairs",
]

BACKEND_NAME = "pure"

_UNSEEN = 0xFF


def _getbit(bitmap: bytes, x: int) -> int:
    return (bitmap[x >> 3] >> (x & 7)) & 1


def build_free_map(m: int, f_text: str) -> bytes:
    """Bitmap of the words of length m that avoid the factor f."""
    size = 1 << m
    nbytes = (size + 7) >> 3
    n = len(f_text)
    if n == 0:
        raise ValueError("factor must be nonempty")
    if m < n:
        out = bytearray(b"\xff" * nbytes)
        _trim(out, size)
        return bytes(out)
    cyl = bytearray(nbytes)
    fbits = int(f_text, 2)
    # enumerate the words containing f directly: one window position at
    # a time, all fillings of the surrounding free bits
    for p in range(m - n + 1):
        low = m - n - p
        base = fbits << low
        low_mask = (1 << low) - 1
        for combo in range(1 << (m - n)):
            x = ((combo >> low) << (n + low)) | base | (combo & low_mask)
            cyl[x >> 3] |= 1 << (x & 7)
    out = bytearray(((~b) & 0xFF) for b in cyl)
    _trim(out, size)
    return bytes(out)


def naive_free_map(m: int, f_text: str) -> bytes:
    """Reference construction by plain substring scan; test use only."""
    size = 1 << m
    out = bytearray((size + 7) >> 3)
    for x in range(size):
        if f_text not in format(x, f"0{m}b"):
            out[x >> 3] |= 1 << (x & 7)
    return bytes(out)


def _trim(bitmap: bytearray, size: int) -> None:
    # clear slack bits above 2^m in the last byte
    if size & 7:
        bitmap[-1] &= (1 << (size & 7)) - 1


def _neighbors(m: int, x: int, use_swaps: bool) -> list[int]:
    out = [x ^ (1 << b) for b in range(m)]
    if use_swaps:
        for b in range(m - 1):
            if ((x >> b) ^ (x >> (b + 1))) & 1:
                out.append(x ^ (0b11 << b))
    return out


def _bfs_levels(m: int, free: bytes | None, src: int, use_swaps: bool) -> bytearray:
    levels = bytearray(b"\xff" * (1 << m))
    levels[src] = 0
    queue = [src]
    for x in queue:
        lv = levels[x] + 1
        for y in _neighbors(m, x, use_swaps):
            if levels[y] == _UNSEEN and (free is None or _getbit(free, y)):
                levels[y] = lv
                queue.append(y)
    return levels


def single_distance(
    m: int, free: bytes | None, src: int, dst: int, use_swaps: bool
) -> int:
    """Shortest path inside the (possibly induced) cube; -1 unreachable."""
    if src == dst:
        return 0
    levels = bytearray(b"\xff" * (1 << m))
    levels[src] = 0
    queue = [src]
    for x in queue:
        lv = levels[x] + 1
        for y in _neighbors(m, x, use_swaps):
            if levels[y] == _UNSEEN and (free is None or _getbit(free, y)):
                if y == dst:
                    return lv
                levels[y] = lv
                queue.append(y)
    return -1


def first_excess(
    m: int, free: bytes, use_swaps: bool, start: int = 0, stop: int | None = None
) -> tuple[int, int, int, int] | None:
    """First (src, tgt, full, restricted) with restricted != full.

    Scans free sources in ascending order, targets above the source in
    ascending order; restricted -1 encodes unreachable.
    """
    size = 1 << m
    if stop is None:
        stop = size
    for src in range(start, stop):
        if not _getbit(free, src):
            continue
        restr = _bfs_levels(m, free, src, use_swaps)
        full = _bfs_levels(m, None, src, use_swaps)
        for tgt in range(src + 1, size):
            if not _getbit(free, tgt):
                continue
            rd = restr[tgt]
            if rd != full[tgt]:
                return (src, tgt, full[tgt], -1 if rd == _UNSEEN else rd)
    return None


def all_violations(
    m: int, free: bytes, use_swaps: bool, start: int = 0, stop: int | None = None
) -> list[tuple[int, int, int, int]]:
    """Every violating pair (src < tgt) with its two distances."""
    size = 1 << m
    if stop is None:
        stop = size
    out = []
    for src in range(start, stop):
        if not _getbit(free, src):
            continue
        restr = _bfs_levels(m, free, src, use_swaps)
        full = _bfs_levels(m, None, src, use_swaps)
        for tgt in range(src + 1, size):
            if not _getbit(free, tgt):
                continue
            rd = restr[tgt]
            if rd != full[tgt]:
                out.append((src, tgt, full[tgt], -1 if rd == _UNSEEN else rd))
    return out


def _one_op_apart(m: int, u: int, v: int, use_swaps: bool) -> bool:
    z = u ^ v
    if z == 0:
        return False
    if z & (z - 1) == 0:
        return True
    if not use_swaps:
        return False
    low = z & (-z)
    if z != low | (low << 1):
        return False
    # adjacent changed bits are one swap only when they cross
    i = low.bit_length() - 1
    return ((u >> i) ^ (u >> (i + 1))) & 1 == 1


def _dp_distance(m: int, u: int, v: int, use_swaps: bool) -> int:
    z = u ^ v
    if z == 0:
        return 0
    prev2 = 0
    prev = 0
    last_mismatch = False
    for b in range(m - 1, -1, -1):
        mism = (z >> b) & 1
        cur = prev + mism
        if (
            use_swaps
            and mism
            and last_mismatch
            and ((u >> b) ^ (u >> (b + 1))) & 1
        ):
            cand = prev2 + 1
            if cand < cur:
                cur = cand
        prev2, prev = prev, cur
        last_mismatch = bool(mism)
    return prev


def _ops_near_mismatches(m: int, u: int, v: int, use_swaps: bool) -> list[int]:
    """Images of u under ops that could lower the distance to v."""
    z = u ^ v
    out = []
    seen = set()
    b = z
    while b:
        bit = b & (-b)
        idx = bit.bit_length() - 1
        b ^= bit
        for y in _candidate_images(m, u, idx, use_swaps):
            if y not in seen:
                seen.add(y)
                out.append(y)
    return out


def _candidate_images(m: int, u: int, idx: int, use_swaps: bool) -> list[int]:
    out = [u ^ (1 << idx)]
    if use_swaps:
        for lo in (idx - 1, idx):
            if 0 <= lo < m - 1 and ((u >> lo) ^ (u >> (lo + 1))) & 1:
                out.append(u ^ (0b11 << lo))
    return out


def _blocked_d2(m: int, u: int, v: int, free: bytes, use_swaps: bool) -> bool:
    for y in _ops_near_mismatches(m, u, v, use_swaps):
        if _one_op_apart(m, y, v, use_swaps) and _getbit(free, y):
            return False
    return True


def _has_free_minimal_path(
    m: int, cur: int, v: int, dist: int, free: bytes, use_swaps: bool
) -> bool:
    if dist == 0:
        return True
    for y in _ops_near_mismatches(m, cur, v, use_swaps):
        if not _getbit(free, y):
            continue
        if _dp_distance(m, y, v, use_swaps) != dist - 1:
            continue
        if _has_free_minimal_path(m, y, v, dist - 1, free, use_swaps):
            return True
    return False


def blocked_pairs(
    m: int, f_text: str, free: bytes, use_swaps: bool, max_dist: int = 3
) -> list[tuple[int, int, int]]:
    """Violating pairs whose every minimal route hits the factor.

    Complete for pairs at full distance 2 and 3; pairs violating only
    at larger distances are outside this scan's envelope.  Returned as
    (u, v, distance) with u < v, sorted.
    """
    size = 1 << m
    hits: set[tuple[int, int, int]] = set()
    checked: set[tuple[int, int]] = set()
    cnt = bytearray(size)
    for w in range(size):
        if _getbit(free, w):
            continue
        nbrs = [y for y in _neighbors(m, w, use_swaps) if _getbit(free, y)]
        for u in nbrs:
            if cnt[u] < 255:
                cnt[u] += 1
        for i, u in enumerate(nbrs):
            for v in nbrs[i + 1 :]:
                a, b = (u, v) if u < v else (v, u)
                if a == b or (a, b) in checked:
                    continue
                checked.add((a, b))
                if _one_op_apart(m, a, b, use_swaps):
                    continue
                if _blocked_d2(m, a, b, free, use_swaps):
                    hits.add((a, b, 2))
    if max_dist >= 3:
        checked.clear()
        for u in range(size):
            if cnt[u] < 3 or not _getbit(free, u):
                continue
            primed = [y for y in _neighbors(m, u, use_swaps) if not _getbit(free, y)]
            for x1 in primed:
                for x2 in _neighbors(m, x1, use_swaps):
                    for v in _neighbors(m, x2, use_swaps):
                        if v == u or not _getbit(free, v):
                            continue
                        a, b = (u, v) if u < v else (v, u)
                        if (a, b) in checked:
                            continue
                        checked.add((a, b))
                        if _dp_distance(m, a, b, use_swaps) != 3:
                            continue
                        if not _has_free_minimal_path(m, a, b, 3, free, use_swaps):
                            hits.add((a, b, 3))
    return sorted(hits)
