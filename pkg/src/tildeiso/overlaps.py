"""Self-overlap analysis: aligned prefix/suffix pairs and their errors.

For a word f of length n and 1 <= l <= n-1, the overlap of length l
aligns the prefix of length l on top of the suffix of length l; the
shift is r = n - l.  The error count q of the overlap is the
swap+mismatch distance between the two rows.  Overlaps with small q
drive the isometry analysis: their minimal transformations, the
geometry of their two errors, and a factor-matching condition on the
operation pair all feed the case classification.
"""

from __future__ import annotations

from dataclasses import dataclass

from .editops import (
    EnumerationResult,
    Transformation,
    enumerate_minimal_transformations,
    hamming_distance,
    mismatch_positions,
    tilde_distance,
)
from .word import Word, prefix, suffix

DELIM = "$"


@dataclass(frozen=True)
class OverlapRecord:
    """One aligned prefix/suffix pair of a word."""

    word: Word
    length: int
    shift: int
    pre: Word
    suf: Word
    q: int
    hamming_q: int
    transformations: tuple[Transformation, ...]
    transformations_truncated: bool


def overlap(f: Word, length: int) -> OverlapRecord:
    """The overlap record at the given aligned length."""
    if not 1 <= length <= f.n - 1:
        raise ValueError(f"overlap length {length} out of range 1..{f.n - 1}")
    pre = prefix(f, length)
    suf = suffix(f, length)
    res: EnumerationResult = enumerate_minimal_transformations(pre, suf)
    return OverlapRecord(
        word=f,
        length=length,
        shift=f.n - length,
        pre=pre,
        suf=suf,
        q=tilde_distance(pre, suf),
        hamming_q=hamming_distance(pre, suf),
        transformations=res.transformations,
        transformations_truncated=res.truncated,
    )


def all_overlaps(f: Word) -> tuple[OverlapRecord, ...]:
    """Records for every aligned length 1..n-1, ascending."""
    if f.n < 1:
        raise ValueError("word must be nonempty")
    return tuple(overlap(f, length) for length in range(1, f.n))


def q_overlaps(f: Word, q: int) -> tuple[OverlapRecord, ...]:
    """Only the overlaps with exactly q errors."""
    return tuple(rec for rec in all_overlaps(f) if rec.q == q)


@dataclass(frozen=True)
class Alignment:
    """The two delimited rows of an overlap, one cell per column.

    Each row has length+2 cells.  The top row is the delimiter, the
    prefix, then the symbol following the prefix; the bottom row is
    the symbol preceding the suffix, the suffix, then the delimiter.
    """

    top: tuple[str, ...]
    bottom: tuple[str, ...]

    def rows(self) -> tuple[str, str]:
        return "".join(self.top), "".join(self.bottom)


def alignment(f: Word, length: int) -> Alignment:
    if not 1 <= length <= f.n - 1:
        raise ValueError(f"overlap length {length} out of range 1..{f.n - 1}")
    shift = f.n - length
    top = (DELIM,) + tuple(prefix(f, length).text) + (f.symbol(length + 1),)
    bottom = (f.symbol(shift),) + tuple(suffix(f, length).text) + (DELIM,)
    return Alignment(top=top, bottom=bottom)


ADJACENT = "adjacent"
NON_ADJACENT = "non-adjacent"


def _supports(t: Transformation) -> list[set[int]]:
    out = []
    for op in t.ops:
        out.append({op.pos} if op.kind == "R" else {op.pos, op.pos + 1})
    return out


def _has_gap(t: Transformation) -> bool:
    """A column sits strictly between the two operations' positions."""
    a, b = _supports(t)
    lo, hi = (a, b) if max(a) < max(b) else (b, a)
    return min(hi) - max(lo) >= 2


def _stepped_pair(rec: OverlapRecord) -> bool:
    """Mismatches exactly {i, i+2} with matching middle and crossed ends."""
    mm = mismatch_positions(rec.pre, rec.suf)
    if len(mm) != 2 or mm[1] - mm[0] != 2:
        return False
    i = mm[0]
    return rec.pre.bit(i) != rec.pre.bit(i + 2)


def error_geometry(rec: OverlapRecord) -> str:
    """Geometry of a two-error overlap: adjacent or non-adjacent.

    Non-adjacent when some minimal transformation leaves a column
    untouched strictly between its two operations, or when the
    mismatch columns form a crossed pair around a matching middle
    (that shape always admits a gapped flip pair, so the second
    clause is implied, but it is kept explicit).
    """
    if rec.q != 2:
        raise ValueError(f"geometry needs exactly 2 errors, overlap has {rec.q}")
    if any(_has_gap(t) for t in rec.transformations):
        return NON_ADJACENT
    if _stepped_pair(rec):
        return NON_ADJACENT
    return ADJACENT


def transformation_satisfies_condition(rec: OverlapRecord, t: Transformation) -> bool:
    """Factor-matching test for one two-operation transformation.

    With operations at positions i < j and shift r, the pair must use
    one kind only, r must be even, the positions must differ by r/2,
    and the two length-r/2 factors of the word starting at i and at j
    must coincide.
    """
    if len(t.ops) != 2:
        raise ValueError("condition is defined for two-operation transformations")
    a, b = t.ops
    if a.kind != b.kind:
        return False
    i, j = sorted((a.pos, b.pos))
    r = rec.shift
    if r % 2 != 0 or j - i != r // 2:
        return False
    half = r // 2
    f = rec.word
    return f.factor(i, i + half - 1) == f.factor(j, j + half - 1)


def condition_tilde(rec: OverlapRecord) -> bool:
    """True when every minimal transformation of the overlap passes."""
    if rec.q != 2:
        raise ValueError(f"condition needs exactly 2 errors, overlap has {rec.q}")
    return all(
        transformation_satisfies_condition(rec, t) for t in rec.transformations
    )


def has_hamming_2_error_overlap(f: Word) -> bool:
    """Whether some overlap has exactly two mismatched columns."""
    return any(
        hamming_distance(prefix(f, length), suffix(f, length)) == 2
        for length in range(1, f.n)
    )


@dataclass(frozen=True)
class Block:
    """The factor of an overlap spanned by its mismatch columns."""

    start: int
    top: Word
    bottom: Word


def mismatch_block(rec: OverlapRecord) -> Block:
    """Aligned factors covering all mismatch columns; q must be >= 1."""
    mm = mismatch_positions(rec.pre, rec.suf)
    if not mm:
        raise ValueError("overlap has no mismatched columns")
    i, j = mm[0], mm[-1]
    return Block(
        start=i,
        top=rec.pre.factor(i, j),
        bottom=rec.suf.factor(i, j),
    )
