"""Signed permutations and partitions.

The hyperoctahedral group W_n acts on {±1, ..., ±n}; an element is stored
by its window (w(1), ..., w(n)) with negative entries playing the role of
barred letters.  Generators are s_0 (sign change in the first slot) and
s_1, ..., s_{n-1} (adjacent transpositions).
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from typing import Iterable, Iterator, Sequence


class SignedPermutation:
    """An element of W_n in window notation.

    >>> w = SignedPermutation((-2, 1, 3))
    >>> w.length()
    2
    >>> str(w)
    '-2 1 3'
    """

    __slots__ = ("window", "_length")

    def __init__(self, window: Sequence[int]):
        window = tuple(window)
        if sorted(abs(e) for e in window) != list(range(1, len(window) + 1)):
            raise ValueError(f"not a signed permutation window: {window!r}")
        self.window = window
        self._length: int | None = None

    @property
    def n(self) -> int:
        return len(self.window)

    def __call__(self, i: int) -> int:
        """Value at a signed index, so w(-i) = -w(i)."""
        if i > 0:
            return self.window[i - 1]
        return -self.window[-i - 1]

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        if self.n != other.n:
            raise ValueError(f"rank mismatch: {self.n} vs {other.n}")
        return SignedPermutation(tuple(self(v) for v in other.window))

    def inverse(self) -> "SignedPermutation":
        win = [0] * self.n
        for i, v in enumerate(self.window, start=1):
            if v > 0:
                win[v - 1] = i
            else:
                win[-v - 1] = -i
        return SignedPermutation(win)

    def length(self) -> int:
        """Coxeter length: inversions plus sign-weighted pairs.

        Counts #{i < j : w(i) > w(j)} + #{i <= j : -w(i) > w(j)}.
        """
        if self._length is None:
            w = self.window
            n = self.n
            inv = sum(
                1 for i in range(n) for j in range(i + 1, n) if w[i] > w[j]
            )
            neg = sum(
                1 for i in range(n) for j in range(i, n) if -w[i] > w[j]
            )
            self._length = inv + neg
        return self._length

    def is_identity(self) -> bool:
        return self.window == tuple(range(1, self.n + 1))

    def is_unbarred(self) -> bool:
        """True when the element lies in the symmetric group S_n."""
        return all(v > 0 for v in self.window)

    def right_descents(self) -> list[int]:
        """Letters a with length(w * s_a) < length(w), ascending."""
        out = []
        if self.window[0] < 0:
            out.append(0)
        for a in range(1, self.n):
            if self.window[a - 1] > self.window[a]:
                out.append(a)
        return out

    def left_descents(self) -> list[int]:
        return self.inverse().right_descents()

    def reduced_word(self) -> tuple[int, ...]:
        """The lexicographically smallest reduced word, letters applied
        left to right starting from the identity."""
        word = []
        w = self
        while not w.is_identity():
            a = w.left_descents()[0]
            word.append(a)
            w = simple(a, w.n) * w
        return tuple(word)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SignedPermutation) and self.window == other.window

    def __hash__(self) -> int:
        return hash(self.window)

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.window)

    def __repr__(self) -> str:
        return f"SignedPermutation({self.window!r})"

    def to_json(self) -> list[int]:
        return list(self.window)


def identity(n: int) -> SignedPermutation:
    return SignedPermutation(range(1, n + 1))


def simple(a: int, n: int) -> SignedPermutation:
    """The generator s_a of W_n (a = 0 bars the first slot)."""
    if not 0 <= a < n:
        raise ValueError(f"generator index {a} out of range for rank {n}")
    win = list(range(1, n + 1))
    if a == 0:
        win[0] = -1
    else:
        win[a - 1], win[a] = win[a], win[a - 1]
    return SignedPermutation(win)


def from_word(word: Iterable[int], n: int) -> SignedPermutation:
    """Product s_{a_1} s_{a_2} ... evaluated left to right."""
    w = identity(n)
    for a in word:
        w = w * simple(a, n)
    return w


def multiply(u: SignedPermutation, v: SignedPermutation) -> SignedPermutation:
    return u * v


def length(w: SignedPermutation) -> int:
    return w.length()


def longest(n: int) -> SignedPermutation:
    """The longest element w_0 = (-1, -2, ..., -n), of length n^2."""
    return SignedPermutation(range(-1, -n - 1, -1))


def embed(w: SignedPermutation, n: int) -> SignedPermutation:
    """View w inside a larger rank, fixing the new letters."""
    if n < w.n:
        raise ValueError(f"cannot embed rank {w.n} into rank {n}")
    return SignedPermutation(tuple(w.window) + tuple(range(w.n + 1, n + 1)))


def varpi0(n: int) -> SignedPermutation:
    """The longest unbarred element (n, n-1, ..., 1)."""
    return SignedPermutation(range(n, 0, -1))


def v0(n: int) -> SignedPermutation:
    """w_0 * varpi0 = (-n, ..., -1)."""
    return SignedPermutation(range(-n, 0))


def reduced_words(
    w: SignedPermutation, limit: int | None = None
) -> list[tuple[int, ...]]:
    """All reduced words of w in lexicographic order.

    Words multiply left to right.  With ``limit`` set, at most that many
    words are returned (still the lexicographically first ones).
    """
    out: list[tuple[int, ...]] = []

    def rec(v: SignedPermutation, prefix: list[int]) -> bool:
        if v.is_identity():
            out.append(tuple(prefix))
            return limit is not None and len(out) >= limit
        for a in v.left_descents():
            prefix.append(a)
            if rec(simple(a, v.n) * v, prefix):
                prefix.pop()
                return True
            prefix.pop()
        return False

    rec(w, [])
    return out


def embed_phi(w: SignedPermutation) -> tuple[int, ...]:
    """Embed W_n into S_{2n} on letters 1..2n.

    The image commutes with i -> 2n+1-i: values in mirrored positions
    always sum to 2n+1.
    """
    n = w.n
    img = [0] * (2 * n)
    for i in range(1, n + 1):
        v = w.window[n - i]
        img[i - 1] = n + 1 - v if v > 0 else n - v
    for i in range(n + 1, 2 * n + 1):
        img[i - 1] = 2 * n + 1 - img[2 * n - i]
    return tuple(img)


def all_elements(n: int) -> Iterator[SignedPermutation]:
    """Every element of W_n, in a fixed deterministic order."""
    for perm in itertools.permutations(range(1, n + 1)):
        for mask in itertools.product((1, -1), repeat=n):
            yield SignedPermutation(tuple(s * v for s, v in zip(mask, perm)))


def s_n_elements(n: int) -> Iterator[SignedPermutation]:
    """The unbarred elements, i.e. S_n inside W_n."""
    for perm in itertools.permutations(range(1, n + 1)):
        yield SignedPermutation(perm)


def parse_signed(text: str, n: int | None = None) -> SignedPermutation:
    """Parse window notation like '-2 1 3'."""
    try:
        entries = tuple(int(tok) for tok in text.split())
    except ValueError as exc:
        raise ValueError(f"bad signed permutation {text!r}") from exc
    w = SignedPermutation(entries)
    if n is not None and w.n != n:
        raise ValueError(f"rank mismatch: expected {n}, got window of size {w.n}")
    return w


def coset_split(w: SignedPermutation) -> tuple[SignedPermutation, SignedPermutation]:
    """Write w = u * v with v in S_n of maximal length and
    length(w) = length(u) + length(v).

    u is the minimal representative of the coset w S_n, obtained by
    sorting the window.
    """
    u = SignedPermutation(sorted(w.window))
    v = u.inverse() * w
    assert v.is_unbarred()
    assert u.length() + v.length() == w.length()
    return u, v


class Partition:
    """A weakly decreasing tuple of positive parts.

    >>> Partition((3, 1)).weight()
    4
    >>> Partition((3, 2, 1)).is_strict()
    True
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Iterable[int]):
        parts = tuple(p for p in parts if p != 0)
        if any(p < 0 for p in parts):
            raise ValueError(f"negative part in {parts!r}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise ValueError(f"parts not weakly decreasing: {parts!r}")
        self.parts = parts

    def weight(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Partition) and self.parts == other.parts

    def __hash__(self) -> int:
        return hash(self.parts)

    def __str__(self) -> str:
        return ",".join(str(p) for p in self.parts)

    def __repr__(self) -> str:
        return f"Partition({self.parts!r})"

    def is_strict(self) -> bool:
        return all(self.parts[i] > self.parts[i + 1] for i in range(len(self.parts) - 1))

    def complement(self, n: int) -> "Partition":
        """For strict parts inside {1..n}: the decreasing complement."""
        if not self.is_strict():
            raise ValueError(f"complement needs strict parts, got {self}")
        if self.parts and self.parts[0] > n:
            raise ValueError(f"part {self.parts[0]} exceeds {n}")
        rest = sorted(set(range(1, n + 1)) - set(self.parts), reverse=True)
        return Partition(rest)

    def largest_repeated(self) -> int:
        """The largest part occurring at least twice, or 0."""
        for i in range(len(self.parts) - 1):
            if self.parts[i] == self.parts[i + 1]:
                return self.parts[i]
        return 0

    def remove_pair(self, r: int) -> "Partition":
        """Delete two copies of the part r."""
        parts = list(self.parts)
        parts.remove(r)
        parts.remove(r)
        return Partition(parts)

    def union_pair(self, r: int) -> "Partition":
        """Insert two copies of the part r."""
        parts = sorted(self.parts + (r, r), reverse=True)
        return Partition(parts)

    @staticmethod
    def parse(text: str) -> "Partition":
        text = text.strip()
        if not text:
            return Partition(())
        return Partition(tuple(int(tok) for tok in text.split(",")))

    def to_json(self) -> list[int]:
        return list(self.parts)


@lru_cache(maxsize=None)
def partitions(weight: int, max_part: int) -> tuple[Partition, ...]:
    """All partitions of the given weight with parts at most max_part."""

    def gen(remaining: int, cap: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(cap, remaining), 0, -1):
            for rest in gen(remaining - first, first):
                yield (first,) + rest

    return tuple(Partition(p) for p in gen(weight, max_part))


def strict_partitions(weight: int, max_part: int) -> tuple[Partition, ...]:
    return tuple(p for p in partitions(weight, max_part) if p.is_strict())


def max_grassmannian(lam: Partition, n: int) -> SignedPermutation:
    """The maximal Grassmannian element w_lambda: barred parts of lambda
    followed by the complement in increasing order."""
    if not lam.is_strict():
        raise ValueError(f"need a strict partition, got {lam}")
    if lam.parts and lam.parts[0] > n:
        raise ValueError(f"part {lam.parts[0]} exceeds rank {n}")
    tail = sorted(set(range(1, n + 1)) - set(lam.parts))
    return SignedPermutation(tuple(-p for p in lam.parts) + tuple(tail))


if __name__ == "__main__":
    import doctest

    doctest.testmod()
