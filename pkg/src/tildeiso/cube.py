"""Exhaustive ground truth: cubes of words, induced subgraphs, oracle.

The hypercube on all length-m words has an edge wherever one flip or
one adjacent-unequal swap transforms one word into the other; avoiding
a factor induces the subgraph on the words free of it.  The oracle
checks, length by length, that induced shortest paths never exceed the
unrestricted distance, the property the classifier's case analysis
must reproduce.

Lengths up to an exact cap are checked literally (a full and an
induced breadth-first sweep from every free source).  Above the cap a
scan finds violating pairs through their blocked intermediates; it is
provably complete for violations of full distance 2 and 3, which
covers every construction the classifier can emit, and the two regimes
are certified equal on small inputs by the test suite.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from ._backend import BACKEND, impl
from .isometry import CONFIRMED, EXTERNAL, WitnessPair
from .word import Word, parse_word

__all__ = [
    "BACKEND",
    "NO_VIOLATION",
    "VIOLATION",
    "CubeGraph",
    "Violation",
    "OracleReport",
    "build_cube",
    "restricted_distance",
    "default_bound",
    "oracle_check",
    "find_min_witnesses",
    "export_graph",
]

NO_VIOLATION = "no-violation-up-to-bound"
VIOLATION = "violation"

DEFAULT_BUILD_CAP = 22
DEFAULT_ORACLE_CAP = 26
DEFAULT_EXACT_CAP = 12


def _env_cap(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise RuntimeError(f"{name}={raw!r} is not an integer") from None


def build_cap() -> int:
    return _env_cap("TILDE_ISO_MAX_CUBE", DEFAULT_BUILD_CAP)


def oracle_cap() -> int:
    return _env_cap("TILDE_ISO_MAX_ORACLE", DEFAULT_ORACLE_CAP)


def exact_cap() -> int:
    return _env_cap("TILDE_ISO_EXACT_CAP", DEFAULT_EXACT_CAP)


def _to_int(w: Word) -> int:
    return int(w.text, 2)


def _to_word(x: int, m: int) -> Word:
    return parse_word(format(x, f"0{m}b"))


def _all_free(m: int) -> bytes:
    size = 1 << m
    out = bytearray(b"\xff" * ((size + 7) >> 3))
    if size & 7:
        out[-1] &= (1 << (size & 7)) - 1
    return bytes(out)


@dataclass(frozen=True, repr=False)
class CubeGraph:
    """A cube over the length-m words, optionally factor-induced."""

    m: int
    avoid: Word | None
    swap_edges: bool = True
    _free: bytes = field(default=b"")

    def __repr__(self) -> str:
        what = f"avoid={self.avoid.text}" if self.avoid else "full"
        return f"CubeGraph(m={self.m}, {what}, vertices={self.num_vertices})"

    @property
    def num_vertices(self) -> int:
        return int.from_bytes(self._free, "little").bit_count()

    def __contains__(self, w: Word) -> bool:
        if w.n != self.m:
            return False
        x = _to_int(w)
        return bool((self._free[x >> 3] >> (x & 7)) & 1)

    def vertices(self):
        """Member words in textual order."""
        for x in range(1 << self.m):
            if (self._free[x >> 3] >> (x & 7)) & 1:
                yield _to_word(x, self.m)

    def neighbors(self, w: Word) -> tuple[Word, ...]:
        """Adjacent member words, in operation order (flip then swap
        at each position, positions ascending)."""
        if w not in self:
            raise ValueError(f"{w.text} is not a vertex of this graph")
        x = _to_int(w)
        m = self.m
        out = []
        for pos in range(1, m + 1):
            b = m - pos
            out.append(x ^ (1 << b))
            if (
                self.swap_edges
                and pos < m
                and ((x >> b) ^ (x >> (b - 1))) & 1
            ):
                out.append(x ^ (0b11 << (b - 1)))
        return tuple(
            _to_word(y, m)
            for y in out
            if (self._free[y >> 3] >> (y & 7)) & 1
        )

    def degree(self, w: Word) -> int:
        return len(self.neighbors(w))


def build_cube(m: int, avoid: Word | None = None, *, swap_edges: bool = True) -> CubeGraph:
    """The cube on length-m words, induced on avoid-free words if set."""
    cap = build_cap()
    if not 1 <= m <= cap:
        raise ValueError(f"cube length {m} outside 1..{cap}")
    free = impl.build_free_map(m, avoid.text) if avoid is not None else _all_free(m)
    return CubeGraph(m=m, avoid=avoid, swap_edges=swap_edges, _free=free)


def restricted_distance(g: CubeGraph, u: Word, v: Word) -> int | None:
    """Shortest-path length between vertices of g; None if unreachable."""
    for w in (u, v):
        if w not in g:
            raise ValueError(f"{w.text} is not a vertex of this graph")
    free = None if g.avoid is None else g._free
    d = impl.single_distance(g.m, free, _to_int(u), _to_int(v), g.swap_edges)
    return None if d < 0 else d


def default_bound(f: Word) -> int:
    """Covers the longest pair any overlap construction can produce."""
    return (5 * f.n + 1) // 2


@dataclass(frozen=True)
class Violation:
    m: int
    u: Word
    v: Word
    full_distance: int
    restricted_distance: int | None  # None means unreachable


@dataclass(frozen=True)
class OracleReport:
    f: Word
    max_len: int
    verdict: str
    violation: Violation | None
    minimal_pairs: tuple[WitnessPair, ...] | None
    methods: tuple[tuple[int, str], ...]


def _ranges(size: int, parts: int) -> list[tuple[int, int]]:
    parts = max(1, min(parts, size))
    step = -(-size // parts)
    return [(lo, min(lo + step, size)) for lo in range(0, size, step)]


def _first_excess_parallel(m, free, swap_edges, threads):
    size = 1 << m
    if threads <= 1:
        return impl.first_excess(m, free, swap_edges)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [
            pool.submit(impl.first_excess, m, free, swap_edges, lo, hi)
            for lo, hi in _ranges(size, threads)
        ]
        found = [f.result() for f in futures]
    hits = [h for h in found if h is not None]
    return min(hits) if hits else None


def _all_violations_parallel(m, free, swap_edges, threads):
    size = 1 << m
    if threads <= 1:
        return impl.all_violations(m, free, swap_edges)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [
            pool.submit(impl.all_violations, m, free, swap_edges, lo, hi)
            for lo, hi in _ranges(size, threads)
        ]
        chunks = [f.result() for f in futures]
    out = []
    for chunk in chunks:
        out.extend(chunk)
    return out


def _scan_minimal(m, f_text, free, swap_edges):
    """Minimal-distance blocked pairs via the scanning engine."""
    blocked = impl.blocked_pairs(m, f_text, free, swap_edges)
    if not blocked:
        return []
    dmin = min(d for _, _, d in blocked)
    return sorted((u, v, dmin) for u, v, d in blocked if d == dmin)


def oracle_check(
    f: Word,
    max_len: int | None = None,
    first_violation: bool = True,
    *,
    swap_edges: bool = True,
    exact_len_cap: int | None = None,
    threads: int = 1,
) -> OracleReport:
    """Distance-preservation check for every length up to the bound.

    Stops at the first violating length.  With first_violation the
    report carries one violating pair; otherwise it carries all pairs
    of minimal full distance at that length.  Output is independent of
    the thread count.
    """
    n = f.n
    bound = default_bound(f) if max_len is None else max_len
    cap = oracle_cap()
    if bound > cap:
        raise ValueError(f"max_len {bound} exceeds the oracle cap {cap}")
    ecap = exact_cap() if exact_len_cap is None else exact_len_cap
    methods: list[tuple[int, str]] = []

    for m in range(n, bound + 1):
        free = impl.build_free_map(m, f.text)
        if m <= ecap:
            methods.append((m, "bfs"))
            if first_violation:
                hit = _first_excess_parallel(m, free, swap_edges, threads)
                if hit is None:
                    continue
                src, tgt, fd, rd = hit
                viol = Violation(
                    m=m,
                    u=_to_word(src, m),
                    v=_to_word(tgt, m),
                    full_distance=fd,
                    restricted_distance=None if rd < 0 else rd,
                )
                return OracleReport(
                    f=f,
                    max_len=bound,
                    verdict=VIOLATION,
                    violation=viol,
                    minimal_pairs=None,
                    methods=tuple(methods),
                )
            viols = _all_violations_parallel(m, free, swap_edges, threads)
            if not viols:
                continue
            src, tgt, fd, rd = viols[0]
            dmin = min(v[2] for v in viols)
            pairs = tuple(
                WitnessPair(_to_word(a, m), _to_word(b, m), EXTERNAL, CONFIRMED)
                for a, b, d, _ in viols
                if d == dmin
            )
            viol = Violation(
                m=m,
                u=_to_word(src, m),
                v=_to_word(tgt, m),
                full_distance=fd,
                restricted_distance=None if rd < 0 else rd,
            )
            return OracleReport(
                f=f,
                max_len=bound,
                verdict=VIOLATION,
                violation=viol,
                minimal_pairs=pairs,
                methods=tuple(methods),
            )
        methods.append((m, "scan"))
        minimal = _scan_minimal(m, f.text, free, swap_edges)
        if not minimal:
            continue
        a, b, dmin = minimal[0]
        rd = impl.single_distance(m, free, a, b, swap_edges)
        viol = Violation(
            m=m,
            u=_to_word(a, m),
            v=_to_word(b, m),
            full_distance=dmin,
            restricted_distance=None if rd < 0 else rd,
        )
        pairs = None
        if not first_violation:
            pairs = tuple(
                WitnessPair(_to_word(x, m), _to_word(y, m), EXTERNAL, CONFIRMED)
                for x, y, _ in minimal
            )
        return OracleReport(
            f=f,
            max_len=bound,
            verdict=VIOLATION,
            violation=viol,
            minimal_pairs=pairs,
            methods=tuple(methods),
        )

    return OracleReport(
        f=f,
        max_len=bound,
        verdict=NO_VIOLATION,
        violation=None,
        minimal_pairs=None,
        methods=tuple(methods),
    )


def find_min_witnesses(
    f: Word, m: int, *, swap_edges: bool = True, threads: int = 1
) -> list[WitnessPair]:
    """All violating pairs of minimal full distance at one length."""
    cap = oracle_cap()
    if not 1 <= m <= cap:
        raise ValueError(f"length {m} outside 1..{cap}")
    free = impl.build_free_map(m, f.text)
    if m <= exact_cap():
        viols = _all_violations_parallel(m, free, swap_edges, threads)
        if not viols:
            return []
        dmin = min(v[2] for v in viols)
        chosen = sorted((a, b) for a, b, d, _ in viols if d == dmin)
    else:
        chosen = [(a, b) for a, b, _ in _scan_minimal(m, f.text, free, swap_edges)]
    return [
        WitnessPair(_to_word(a, m), _to_word(b, m), EXTERNAL, CONFIRMED)
        for a, b in chosen
    ]


def _edges(g: CubeGraph):
    """Edges as textual pairs (u, v), u < v, in sorted order."""
    m = g.m
    for x in range(1 << m):
        if not (g._free[x >> 3] >> (x & 7)) & 1:
            continue
        u = format(x, f"0{m}b")
        targets = []
        for pos in range(1, m + 1):
            b = m - pos
            targets.append(x ^ (1 << b))
            if g.swap_edges and pos < m and ((x >> b) ^ (x >> (b - 1))) & 1:
                targets.append(x ^ (0b11 << (b - 1)))
        pair = []
        for y in targets:
            if y > x and (g._free[y >> 3] >> (y & 7)) & 1:
                pair.append(format(y, f"0{m}b"))
        for v in sorted(pair):
            yield u, v


def export_graph(g: CubeGraph, format: str) -> bytes:
    """Serialize the graph; orderings are fixed for byte-stable output."""
    if format == "edgelist":
        lines = [f"{u} {v}\n" for u, v in _edges(g)]
        return "".join(lines).encode()
    if format == "dot":
        lines = ["graph cube {\n"]
        for w in g.vertices():
            lines.append(f'  "{w.text}";\n')
        for u, v in _edges(g):
            lines.append(f'  "{u}" -- "{v}";\n')
        lines.append("}\n")
        return "".join(lines).encode()
    if format == "json":
        payload = {
            "m": g.m,
            "avoid": g.avoid.text if g.avoid is not None else None,
            "nodes": [w.text for w in g.vertices()],
            "edges": [[u, v] for u, v in _edges(g)],
        }
        return (json.dumps(payload, sort_keys=True) + "\n").encode()
    raise ValueError(f"unknown export format {format!r}")
