"""Edit operations, the swap+mismatch distance, and minimal transformations.

Two length-preserving operations act on binary words:

* ``R`` at position i flips the symbol there (a mismatch repair);
* ``S`` at position i exchanges the two distinct symbols at i, i+1.

The distance between equal-length words is the least number of such
operations turning one into the other.  It is computed by a
left-to-right recurrence: column k costs one when the symbols differ,
and two adjacent crossed mismatch columns may instead be closed by a
single swap.  A transformation is a full operation sequence together
with every intermediate word it induces; the enumeration below lists
all minimal ones.
"""

from __future__ import annotations

from dataclasses import dataclass

from .word import Word, is_free

ENUMERATION_CAP = 10_000


@dataclass(frozen=True, order=True)
class EditOp:
    """A single operation: kind 'R' (flip) or 'S' (adjacent swap), 1-based."""

    kind: str
    pos: int

    def __post_init__(self) -> None:
        if self.kind not in ("R", "S"):
            raise ValueError(f"unknown operation kind {self.kind!r}")
        if self.pos < 1:
            raise ValueError(f"operation position {self.pos} must be >= 1")

    def __str__(self) -> str:
        return f"{self.kind}{self.pos}"


def parse_op(text: str) -> EditOp:
    """Parse 'R3' or 'S5' back into an EditOp."""
    if len(text) < 2 or text[0] not in ("R", "S") or not text[1:].isdigit():
        raise ValueError(f"invalid operation {text!r}")
    return EditOp(text[0], int(text[1:]))


def applicable(op: EditOp, w: Word) -> bool:
    """Whether op may act on w (swaps need two distinct adjacent symbols)."""
    if op.kind == "R":
        return 1 <= op.pos <= w.n
    if op.pos > w.n - 1:
        return False
    return w.bit(op.pos) != w.bit(op.pos + 1)


def apply_op(op: EditOp, w: Word) -> Word:
    """Apply op to w; raises ValueError when it is not applicable."""
    if not applicable(op, w):
        raise ValueError(f"operation {op} not applicable to {w}")
    return Word(_apply_bits(op.kind, op.pos, w.bits), w.n)


def _apply_bits(kind: str, pos: int, bits: int) -> int:
    if kind == "R":
        return bits ^ (1 << (pos - 1))
    return bits ^ (0b11 << (pos - 1))


def hamming_distance(u: Word, v: Word) -> int:
    """Number of mismatched columns; lengths must agree."""
    _check_lengths(u, v)
    return (u.bits ^ v.bits).bit_count()


def mismatch_positions(u: Word, v: Word) -> tuple[int, ...]:
    """Ascending 1-based positions where u and v disagree."""
    _check_lengths(u, v)
    x = u.bits ^ v.bits
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length())
        x ^= low
    return tuple(out)


def tilde_distance(u: Word, v: Word) -> int:
    """Least number of flips and adjacent swaps turning u into v."""
    _check_lengths(u, v)
    return _tilde_dist_bits(u.bits, v.bits, u.n)


def _tilde_dist_bits(a: int, b: int, n: int) -> int:
    x = a ^ b
    prev2 = 0
    prev = 0
    for k in range(n):
        cur = prev + ((x >> k) & 1)
        if k >= 1 and (x >> (k - 1)) & 0b11 == 0b11:
            # crossed adjacent mismatches close with one swap
            if ((a >> (k - 1)) & 1) != ((a >> k) & 1):
                alt = prev2 + 1
                if alt < cur:
                    cur = alt
        prev2, prev = prev, cur
    return prev


def _check_lengths(u: Word, v: Word) -> None:
    if u.n != v.n:
        raise ValueError(f"length mismatch: {u.n} vs {v.n}")


@dataclass(frozen=True)
class Transformation:
    """An operation sequence plus every word it passes through.

    ``words[0]`` is the start, ``words[-1]`` the target, and
    ``words[k]`` the result of the first k operations.
    """

    ops: tuple[EditOp, ...]
    words: tuple[Word, ...]

    def __post_init__(self) -> None:
        if len(self.words) != len(self.ops) + 1:
            raise ValueError("transformation needs one word per step plus the start")

    def __str__(self) -> str:
        return ",".join(str(op) for op in self.ops)

    def __len__(self) -> int:
        return len(self.ops)


def transformation_from_ops(u: Word, ops: tuple[EditOp, ...]) -> Transformation:
    """Build a Transformation by applying ops to u in order."""
    words = [u]
    for op in ops:
        words.append(apply_op(op, words[-1]))
    return Transformation(tuple(ops), tuple(words))


def is_free_transformation(t: Transformation, f: Word) -> bool:
    """True when every word along t, endpoints included, avoids f."""
    return all(is_free(w, f) for w in t.words)


@dataclass(frozen=True)
class EnumerationResult:
    transformations: tuple[Transformation, ...]
    truncated: bool


def enumerate_minimal_transformations(
    u: Word, v: Word, cap: int = ENUMERATION_CAP
) -> EnumerationResult:
    """All minimal transformations from u to v, in deterministic order.

    Every minimal transformation decreases the remaining distance by
    exactly one per step, so a depth-first search over the
    distance-decreasing operations is complete.  Operations are tried
    by ascending position, flip before swap, which fixes the output
    order.  At most ``cap`` transformations are produced; the flag
    reports whether the listing was cut short.
    """
    _check_lengths(u, v)
    n = u.n
    target = v.bits
    total = _tilde_dist_bits(u.bits, target, n)
    found: list[Transformation] = []
    truncated = False

    def candidate_ops(bits: int):
        for pos in range(1, n + 1):
            yield ("R", pos, bits ^ (1 << (pos - 1)))
            if pos < n and ((bits >> (pos - 1)) & 1) != ((bits >> pos) & 1):
                yield ("S", pos, bits ^ (0b11 << (pos - 1)))

    def walk(bits: int, remaining: int, ops: list[EditOp], words: list[Word]) -> bool:
        nonlocal truncated
        if remaining == 0:
            if len(found) >= cap:
                truncated = True
                return False
            found.append(Transformation(tuple(ops), tuple(words)))
            return True
        for kind, pos, nxt in candidate_ops(bits):
            if _tilde_dist_bits(nxt, target, n) == remaining - 1:
                ops.append(EditOp(kind, pos))
                words.append(Word(nxt, n))
                ok = walk(nxt, remaining - 1, ops, words)
                ops.pop()
                words.pop()
                if not ok:
                    return False
        return True

    walk(u.bits, total, [], [Word(u.bits, n)])
    return EnumerationResult(tuple(found), truncated)
