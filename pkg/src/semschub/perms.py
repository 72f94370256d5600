"""
Permutations in one-line notation, pattern detection, and the greedy
factorization w = u * v into a 1324/2413/3142-avoiding part u and a
"lowering" part v.

Conventions used throughout the package:

- A permutation of [n] = {1, ..., n} is stored as its one-line word, a tuple
  of the values (w(1), ..., w(n)).  Everything is 1-indexed in the
  mathematics; Python indices are shifted where needed.
- Composition is right-to-left: (u * v)(i) = u(v(i)).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional, Sequence

from .errors import DomainError, PatternViolation


@dataclass(frozen=True)
class Permutation:
    """A permutation of {1, ..., n} in one-line notation."""

    word: tuple[int, ...]

    def __post_init__(self):
        n = len(self.word)
        if n < 1 or sorted(self.word) != list(range(1, n + 1)):
            raise DomainError(f"not a permutation of 1..{n}: {self.word}")

    @property
    def n(self) -> int:
        return len(self.word)

    def __call__(self, i: int) -> int:
        return self.word[i - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if self.n != other.n:
            raise DomainError("cannot compose permutations of different sizes")
        return Permutation(tuple(self.word[j - 1] for j in other.word))

    def __str__(self) -> str:
        return " ".join(str(v) for v in self.word)

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, v in enumerate(self.word):
            inv[v - 1] = i + 1
        return Permutation(tuple(inv))

    def length(self) -> int:
        """Number of inversions; also the Coxeter length."""
        w = self.word
        return sum(1 for i in range(len(w)) for j in range(i + 1, len(w)) if w[i] > w[j])

    def code(self) -> tuple[int, ...]:
        """Lehmer code: c_i = #{j > i : w_j < w_i}."""
        w = self.word
        return tuple(sum(1 for j in range(i + 1, len(w)) if w[j] < w[i]) for i in range(len(w)))

    def descents(self) -> list[int]:
        """Positions i with w_i > w_{i+1} (1-indexed)."""
        return [i + 1 for i in range(self.n - 1) if self.word[i] > self.word[i + 1]]

    def swap(self, i: int) -> "Permutation":
        """Right multiplication by the simple transposition s_i (swap positions i, i+1)."""
        w = list(self.word)
        w[i - 1], w[i] = w[i], w[i - 1]
        return Permutation(tuple(w))

    def is_identity(self) -> bool:
        return all(v == i + 1 for i, v in enumerate(self.word))

    def trim(self) -> "Permutation":
        """Drop trailing fixed points (keep at least one letter)."""
        w = self.word
        n = len(w)
        while n > 1 and w[n - 1] == n:
            n -= 1
        return self if n == len(w) else Permutation(w[:n])

    def extend(self, n: int) -> "Permutation":
        """Pad with fixed points up to size n."""
        if n < self.n:
            raise DomainError("cannot shrink a permutation; use trim()")
        return Permutation(self.word + tuple(range(self.n + 1, n + 1)))

    def left_to_right_maxima(self) -> list[int]:
        """Positions i such that w_i exceeds every earlier letter."""
        out, best = [], 0
        for i, v in enumerate(self.word):
            if v > best:
                out.append(i + 1)
                best = v
        return out


def identity(n: int) -> Permutation:
    return Permutation(tuple(range(1, n + 1)))


def longest_element(n: int) -> Permutation:
    return Permutation(tuple(range(n, 0, -1)))


def all_permutations(n: int) -> Iterator[Permutation]:
    for word in itertools.permutations(range(1, n + 1)):
        yield Permutation(word)


def parse_permutation(text: str) -> Permutation:
    """Parse "4 1 3 2" or the compact digit string "4132" (values <= 9)."""
    parts = text.replace(",", " ").split()
    if len(parts) == 1 and parts[0].isdigit() and len(parts[0]) > 1:
        return Permutation(tuple(int(ch) for ch in parts[0]))
    try:
        return Permutation(tuple(int(p) for p in parts))
    except ValueError as exc:
        raise DomainError(f"cannot parse permutation from {text!r}") from exc


def from_code(code: Sequence[int]) -> Permutation:
    """Inverse of Permutation.code(): pick the (c_i+1)-th smallest unused value."""
    n = len(code)
    for i, c in enumerate(code):
        if not 0 <= c <= n - 1 - i:
            raise DomainError(f"malformed code {tuple(code)}: entry {i + 1} out of range")
    remaining = list(range(1, n + 1))
    word = []
    for c in code:
        word.append(remaining.pop(c))
    return Permutation(tuple(word))


# --- pattern containment ------------------------------------------------

def _standardize(values: Sequence[int]) -> tuple[int, ...]:
    order = sorted(values)
    return tuple(order.index(v) + 1 for v in values)


def find_pattern(w: Permutation, p: Permutation) -> Optional[tuple[int, ...]]:
    """First occurrence of p in w as 1-indexed positions, or None.

    A subsequence w_{i_1} ... w_{i_k} is an occurrence when it is in the
    same relative order as the pattern word.  Plain subsequence scan; fine
    at desk scale (n <= 9 or so).
    """
    k = p.n
    if k > w.n:
        return None
    pword = p.word
    for positions in itertools.combinations(range(w.n), k):
        if _standardize([w.word[i] for i in positions]) == pword:
            return tuple(i + 1 for i in positions)
    return None


def contains_pattern(w: Permutation, p: Permutation) -> bool:
    return find_pattern(w, p) is not None


def avoids(w: Permutation, *patterns: Permutation) -> bool:
    return all(find_pattern(w, p) is None for p in patterns)


P132 = Permutation((1, 3, 2))
P213 = Permutation((2, 1, 3))
P312 = Permutation((3, 1, 2))
P321 = Permutation((3, 2, 1))
P1324 = Permutation((1, 3, 2, 4))
P1342 = Permutation((1, 3, 4, 2))
P2413 = Permutation((2, 4, 1, 3))
P3142 = Permutation((3, 1, 4, 2))

#: The 13 forbidden patterns for the proper-representation class.
THIRTEEN_PATTERNS = tuple(
    parse_permutation(s)
    for s in (
        "51324", "15324", "52413", "25413", "53142", "35142", "31542",
        "143265", "143625", "143652", "146352", "413265", "413625",
    )
)


def thirteen_witness(w: Permutation) -> Optional[tuple[Permutation, tuple[int, ...]]]:
    """An occurrence of one of the 13 forbidden patterns, or None."""
    for p in THIRTEEN_PATTERNS:
        hit = find_pattern(w, p)
        if hit is not None:
            return p, hit
    return None


def avoids_thirteen(w: Permutation) -> bool:
    return thirteen_witness(w) is None


def classify(w: Permutation) -> set[str]:
    """All class labels that apply to w."""
    labels = set()
    if avoids(w, P132):
        labels.add("dominant")
    if avoids(w, P213):
        labels.add("213-avoiding")
    if avoids(w, P321):
        labels.add("321-avoiding")
    if len(w.descents()) <= 1:
        labels.add("Grassmannian")
    if avoids(w, P2413, P3142):
        labels.add("separable")
    if avoids(w, P1324):
        labels.add("1324-avoiding")
    if avoids(w, P132, P312):
        labels.add("lowering")
    if avoids_thirteen(w):
        labels.add("thirteen-avoiding")
    return labels


# --- direct and skew sums -----------------------------------------------

def direct_sum(u: Permutation, v: Permutation) -> Permutation:
    m = u.n
    return Permutation(u.word + tuple(x + m for x in v.word))


def skew_sum(u: Permutation, v: Permutation) -> Permutation:
    n = v.n
    return Permutation(tuple(x + n for x in u.word) + v.word)


@dataclass(frozen=True)
class DecompositionNode:
    """Binary decomposition tree; leaves are the singleton permutation."""

    op: str  # "leaf", "+", or "-"
    left: Optional["DecompositionNode"] = None
    right: Optional["DecompositionNode"] = None

    def recompose(self) -> Permutation:
        if self.op == "leaf":
            return Permutation((1,))
        u = self.left.recompose()
        v = self.right.recompose()
        return direct_sum(u, v) if self.op == "+" else skew_sum(u, v)

    def __str__(self) -> str:
        if self.op == "leaf":
            return "1"
        return f"({self.left} {'⊕' if self.op == '+' else '⊖'} {self.right})"


def block_split(w: Permutation) -> Optional[tuple[str, Permutation, Permutation]]:
    """Leftmost boundary where w splits as a direct ("+") or skew ("-") sum."""
    n = w.n
    for m in range(1, n):
        prefix = set(w.word[:m])
        if prefix == set(range(1, m + 1)):
            u = Permutation(w.word[:m])
            v = Permutation(tuple(x - m for x in w.word[m:]))
            return "+", u, v
        if prefix == set(range(n - m + 1, n + 1)):
            u = Permutation(tuple(x - (n - m) for x in w.word[:m]))
            v = Permutation(w.word[m:])
            return "-", u, v
    return None


def separable_decomposition(w: Permutation) -> DecompositionNode:
    """Decompose a separable permutation into sums of singletons.

    Splits at the leftmost block boundary at each level; any split is as
    good as any other for the constructions downstream.
    """
    if w.n == 1:
        return DecompositionNode("leaf")
    split = block_split(w)
    if split is None:
        for pat in (P2413, P3142):
            hit = find_pattern(w, pat)
            if hit is not None:
                raise PatternViolation(
                    f"{w} is not separable (contains {pat} at positions {hit})", pat, hit
                )
        raise AssertionError(f"{w} has no block split yet avoids 2413 and 3142")
    op, u, v = split
    return DecompositionNode(op, separable_decomposition(u), separable_decomposition(v))


# --- lowering permutations ----------------------------------------------

@dataclass(frozen=True)
class LoweringPermutation:
    """A permutation avoiding 132 and 312.

    Equivalently v^{-1}(1) > ... > v^{-1}(k) = 1 < v^{-1}(k+1) < ... < v^{-1}(n)
    where k = v(1).  ``positions`` holds (p_1, ..., p_k) with p_i = v^{-1}(i).
    """

    base: Permutation
    k: int = field(compare=False)
    positions: tuple[int, ...] = field(compare=False)

    @classmethod
    def from_permutation(cls, v: Permutation) -> "LoweringPermutation":
        for p in (P132, P312):
            hit = find_pattern(v, p)
            if hit is not None:
                raise PatternViolation(
                    f"{v} is not a lowering permutation (contains {p} at positions {hit})", p, hit
                )
        k = v.word[0]
        inv = v.inverse()
        positions = tuple(inv.word[i - 1] for i in range(1, k + 1))
        return cls(v, k, positions)

    @property
    def n(self) -> int:
        return self.base.n


def lowering_permutations(n: int) -> Iterator[LoweringPermutation]:
    """All lowering permutations in S_n (there are 2^(n-1) of them)."""
    for w in all_permutations(n):
        if avoids(w, P132, P312):
            yield LoweringPermutation.from_permutation(w)


# --- the Q-set and the factorization w = u * v ---------------------------

def q_set(w: Permutation) -> set[int]:
    """Greedily selected left-to-right maxima of a 13-pattern-avoiding w.

    Scan the left-to-right maxima from largest to smallest.  A maximum q is
    kept unless w has an occurrence a q q' b of the pattern 1342 whose third
    letter q' was itself not kept.
    """
    witness = thirteen_witness(w)
    if witness is not None:
        pat, pos = witness
        raise PatternViolation(f"{w} contains forbidden pattern {pat} at positions {pos}", pat, pos)
    word = w.word
    maxima = w.left_to_right_maxima()
    chosen: set[int] = set()
    for pos_q in reversed(maxima):
        q = word[pos_q - 1]
        prefix_min = min(word[: pos_q - 1], default=None)
        blocked = False
        # look for a 1342 occurrence (a, q, q', b) with q' not already chosen
        for i3 in range(pos_q, len(word)):
            qp = word[i3]
            if qp <= q or qp in chosen:
                continue
            for i4 in range(i3 + 1, len(word)):
                b = word[i4]
                if b < q and prefix_min is not None and prefix_min < b:
                    blocked = True
                    break
            if blocked:
                break
        if not blocked:
            chosen.add(q)
    return chosen


def factorize(w: Permutation) -> tuple[Permutation, LoweringPermutation]:
    """Split w = u * v by moving the Q-set values to the front in decreasing order.

    The resulting u avoids 1324, 2413 and 3142, v is lowering, and
    length(w) = length(u) - length(v).
    """
    chosen = q_set(w)  # also rejects 13-pattern violations
    inv = w.inverse()
    q_positions = [inv(q) for q in sorted(chosen, reverse=True)]
    taken = set(q_positions)
    rest = [i for i in range(1, w.n + 1) if i not in taken]
    v_inv = Permutation(tuple(q_positions + rest))
    v = v_inv.inverse()
    u = w * v_inv
    return u, LoweringPermutation.from_permutation(v)
