"""Binary words stored as packed bit strings.

A word of length n keeps its symbols in the low n bits of an int:
position i (1-based, counted from the left of the textual form) lives
in bit i-1.  The explicit length distinguishes e.g. "001" from "01".
All public position arguments are 1-based.
"""

from __future__ import annotations

ALPHABET = "01"


class Word:
    """Immutable binary word. Compare, hash and sort like its text."""

    __slots__ = ("bits", "n")

    def __init__(self, bits: int, n: int) -> None:
        if n < 0:
            raise ValueError("word length must be >= 0")
        if bits < 0 or bits >> n:
            raise ValueError(f"bit value {bits} does not fit in {n} positions")
        object.__setattr__(self, "bits", bits)
        object.__setattr__(self, "n", n)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("Word is immutable")

    # -- construction ------------------------------------------------

    @classmethod
    def from_text(cls, text: str) -> "Word":
        return parse_word(text)

    # -- basic queries -----------------------------------------------

    def __len__(self) -> int:
        return self.n

    def bit(self, i: int) -> int:
        """Symbol at position i as an int, i in 1..n."""
        if not 1 <= i <= self.n:
            raise IndexError(f"position {i} out of range 1..{self.n}")
        return (self.bits >> (i - 1)) & 1

    def symbol(self, i: int) -> str:
        """Symbol at position i as a one-character string."""
        return ALPHABET[self.bit(i)]

    def factor(self, i: int, j: int) -> "Word":
        """The factor spanning positions i..j inclusive; empty when j < i."""
        if j < i:
            return Word(0, 0)
        if not (1 <= i and j <= self.n):
            raise IndexError(f"factor {i}..{j} out of range 1..{self.n}")
        length = j - i + 1
        return Word((self.bits >> (i - 1)) & ((1 << length) - 1), length)

    @property
    def text(self) -> str:
        return "".join(ALPHABET[(self.bits >> k) & 1] for k in range(self.n))

    def __str__(self) -> str:
        return self.text

    def __repr__(self) -> str:
        return f"Word({self.text!r})"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.n == other.n and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((self.bits, self.n))

    def __lt__(self, other: "Word") -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.text < other.text

    def __le__(self, other: "Word") -> bool:
        if not isinstance(other, Word):
            return NotImplemented
        return self.text <= other.text

    def __add__(self, other: "Word") -> "Word":
        if not isinstance(other, Word):
            return NotImplemented
        return Word(self.bits | (other.bits << self.n), self.n + other.n)

    def __iter__(self):
        for k in range(self.n):
            yield (self.bits >> k) & 1


def parse_word(text: str) -> Word:
    """Parse a textual binary word; raises ValueError on foreign symbols."""
    bits = 0
    for k, ch in enumerate(text):
        if ch == "1":
            bits |= 1 << k
        elif ch != "0":
            raise ValueError(f"invalid symbol {ch!r} at position {k + 1}")
    return Word(bits, len(text))


def reverse(w: Word) -> Word:
    """Mirror image of w."""
    bits = 0
    for k in range(w.n):
        if (w.bits >> k) & 1:
            bits |= 1 << (w.n - 1 - k)
    return Word(bits, w.n)


def complement(w: Word) -> Word:
    """Flip every symbol of w."""
    return Word(w.bits ^ ((1 << w.n) - 1), w.n)


def prefix(w: Word, k: int) -> Word:
    """The first k symbols, 0 <= k <= len(w)."""
    if not 0 <= k <= w.n:
        raise ValueError(f"prefix length {k} out of range 0..{w.n}")
    return Word(w.bits & ((1 << k) - 1), k)


def suffix(w: Word, k: int) -> Word:
    """The last k symbols, 0 <= k <= len(w)."""
    if not 0 <= k <= w.n:
        raise ValueError(f"suffix length {k} out of range 0..{w.n}")
    return Word(w.bits >> (w.n - k), k)


def occurrences(haystack: Word, needle: Word) -> list[int]:
    """1-based start positions of needle inside haystack, naive scan.

    The scan compares one aligned window at a time; predictable and
    plenty fast for the short patterns this package works with.
    """
    if needle.n == 0:
        raise ValueError("empty needle")
    out = []
    mask = (1 << needle.n) - 1
    for start in range(haystack.n - needle.n + 1):
        if (haystack.bits >> start) & mask == needle.bits:
            out.append(start + 1)
    return out


def is_free(w: Word, f: Word) -> bool:
    """True when w does not contain f as a factor."""
    if f.n == 0:
        raise ValueError("empty factor")
    mask = (1 << f.n) - 1
    for start in range(w.n - f.n + 1):
        if (w.bits >> start) & mask == f.bits:
            return False
    return True
