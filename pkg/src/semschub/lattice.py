"""
Lattice path representations of polynomials.

A representation is a list of start points (a_i, 0) on the floor and a list
of end points (b_j, c_j) in the grid graph whose edges are upsteps
(a, b) -> (a, b+1) of weight x_{b+1} and diagonal steps (a, b) -> (a-1, b+1)
of weight 1.  By the Lindstrom-Gessel-Viennot lemma the signed weight of
all families of vertex-disjoint paths equals det(e^(c_j)_{c_j + b_j - a_i}),
so a representation encodes a determinant of elementary symmetric
polynomials.  Each representation carries an explicit sign with the hard
contract

    sign * det = represented polynomial,

which makes every construction below machine-checkable.

Storage is canonical: starts ascending, ends sorted by (height, abscissa),
with the sign absorbing both sorting permutations.  When the heights are
distinct ("proper"), expanding the determinant reads off a signed
multiplicity-free expansion in standard elementary monomials.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Optional, Sequence

from .errors import BudgetError, DomainError, PatternViolation
from .perms import (
    LoweringPermutation,
    P132,
    P213,
    P321,
    P1324,
    P2413,
    P3142,
    Permutation,
    block_split,
    direct_sum,
    find_pattern,
    identity,
    longest_element,
    thirteen_witness,
    factorize,
)
from .poly import (
    Polynomial,
    SemExpansion,
    conjugate_partition,
    determinant,
    elementary,
)

MAX_PATH_POINTS = 5
MAX_PATH_HEIGHT = 8


def _sorted_with_parity(items: Sequence, key) -> tuple[tuple, int]:
    """Stable sort plus the sign of the sorting permutation."""
    order = sorted(range(len(items)), key=lambda i: (key(items[i]), i))
    inversions = sum(
        1 for s in range(len(order)) for t in range(s + 1, len(order)) if order[s] > order[t]
    )
    return tuple(items[i] for i in order), (-1 if inversions % 2 else 1)


@dataclass(frozen=True)
class LatticeRep:
    """Floor starts, free ends, and a sign, with sign * det = target."""

    starts: tuple[int, ...]
    ends: tuple[tuple[int, int], ...]
    sign: int = 1
    label: Optional[str] = None

    def __post_init__(self):
        if len(self.starts) != len(self.ends):
            raise DomainError("a representation needs equally many starts and ends")
        if self.sign not in (1, -1):
            raise DomainError("sign must be +1 or -1")
        if any(c < 0 for _, c in self.ends):
            raise DomainError("end heights must be nonnegative")

    @classmethod
    def normalized(
        cls,
        starts: Sequence[int],
        ends: Sequence[tuple[int, int]],
        sign: int = 1,
        label: Optional[str] = None,
    ) -> "LatticeRep":
        """Canonical form: starts ascending, ends by (height, abscissa).

        Reordering rows or columns of the underlying determinant flips its
        sign per transposition; the stored sign absorbs both sortings so
        the represented polynomial is unchanged.
        """
        starts2, sgn_s = _sorted_with_parity(tuple(starts), key=lambda a: a)
        ends2, sgn_e = _sorted_with_parity(tuple(ends), key=lambda bc: (bc[1], bc[0]))
        return cls(starts2, tuple((b, c) for b, c in ends2), sign * sgn_s * sgn_e, label)

    @property
    def k(self) -> int:
        return len(self.starts)

    def heights(self) -> tuple[int, ...]:
        return tuple(c for _, c in self.ends)

    def is_proper(self) -> bool:
        hs = self.heights()
        return len(set(hs)) == len(hs)

    def is_compact(self) -> bool:
        k = self.k
        return (
            set(self.starts) == set(range(k))
            and set(self.heights()) == set(range(k))
            and all(0 <= b <= k - 1 for b, _ in self.ends)
        )

    def ends_at_height(self, c: int) -> tuple[tuple[int, int], ...]:
        return tuple((b, h) for b, h in self.ends if h == c)

    def has_end_at_height(self, c: int) -> bool:
        """False means the height-c divided difference of the target is 0."""
        return any(h == c for _, h in self.ends)

    def matrix(self) -> list[list[Polynomial]]:
        """The e-matrix: entry (i, j) is the path generating function a_i -> end_j."""
        return [[point_weight(a, b, c) for b, c in self.ends] for a in self.starts]

    def relabel(self, label: Optional[str]) -> "LatticeRep":
        return replace(self, label=label)

    def __str__(self) -> str:
        starts = " ".join(str(a) for a in self.starts)
        ends = " ".join(f"({b},{c})" for b, c in self.ends)
        tag = f"  [{self.label}]" if self.label else ""
        return f"sign {'+' if self.sign > 0 else '-'}1  starts: {starts}  ends: {ends}{tag}"

    def to_json_obj(self) -> dict:
        obj = {"sign": self.sign, "starts": list(self.starts), "ends": [list(e) for e in self.ends]}
        if self.label is not None:
            obj["label"] = self.label
        return obj

    @classmethod
    def from_json_obj(cls, obj: dict) -> "LatticeRep":
        return cls.normalized(
            tuple(obj["starts"]),
            tuple((b, c) for b, c in obj["ends"]),
            obj.get("sign", 1),
            obj.get("label"),
        )


def point_weight(a: int, b: int, c: int) -> Polynomial:
    """Total weight of lattice paths from (a, 0) to (b, c): e^(c)_{c+b-a}.

    Zero whenever no path exists, i.e. unless b <= a <= b + c.
    """
    return elementary(c + b - a, c)


def rep_determinant(rep: LatticeRep) -> Polynomial:
    """The represented polynomial: sign times the e-matrix determinant."""
    det = determinant(rep.matrix())
    return det if rep.sign > 0 else -det


def rep_determinant_quantum(rep: LatticeRep) -> Polynomial:
    """Signed determinant with quantum elementary entries E^(c_j)_{c_j+b_j-a_i}.

    For a proper representation of a Schubert polynomial this evaluates the
    corresponding quantum Schubert polynomial.
    """
    from .schubert import quantum_elementary

    if not rep.is_proper():
        raise DomainError("quantum determinant requires a proper representation")
    mat = [[quantum_elementary(c + b - a, c) for b, c in rep.ends] for a in rep.starts]
    det = determinant(mat)
    return det if rep.sign > 0 else -det


# --- path systems and the LGV oracle -----------------------------------------

@dataclass(frozen=True)
class PathSystem:
    """Vertex-disjoint paths; path i runs from start i to end sigma[i] (0-based)."""

    paths: tuple[tuple[tuple[int, int], ...], ...]
    sigma: tuple[int, ...]

    def sign(self) -> int:
        s = self.sigma
        inv = sum(1 for i in range(len(s)) for j in range(i + 1, len(s)) if s[i] > s[j])
        return -1 if inv % 2 else 1

    def weight(self) -> Polynomial:
        exps: list[int] = []
        for path in self.paths:
            for (x0, y0), (x1, y1) in zip(path, path[1:]):
                if x1 == x0:  # upstep into height y1 carries weight x_{y1}
                    while len(exps) < y1:
                        exps.append(0)
                    exps[y1 - 1] += 1
        while exps and exps[-1] == 0:
            exps.pop()
        return Polynomial({(tuple(exps), ()): 1})

    def to_json_obj(self) -> dict:
        return {
            "sigma": [s + 1 for s in self.sigma],
            "paths": [[list(v) for v in path] for path in self.paths],
        }


def _paths_between(a: int, b: int, c: int):
    """All lattice paths (vertex tuples) from (a, 0) to (b, c)."""
    diagonals = a - b
    if diagonals < 0 or diagonals > c:
        return
    for diag_steps in itertools.combinations(range(c), diagonals):
        diag = set(diag_steps)
        x = a
        vertices = [(a, 0)]
        for t in range(c):
            if t in diag:
                x -= 1
            vertices.append((x, t + 1))
        yield tuple(vertices)


def enumerate_path_systems(
    rep: LatticeRep,
    max_points: int = MAX_PATH_POINTS,
    max_height: int = MAX_PATH_HEIGHT,
) -> list[PathSystem]:
    """All collections of vertex-disjoint paths from the starts to the ends.

    The LGV oracle: the signed weight sum over the result equals the
    e-matrix determinant (without the stored sign adjustment).
    """
    if rep.k > max_points:
        raise BudgetError(f"path enumeration is limited to {max_points} points")
    if any(c > max_height for _, c in rep.ends):
        raise BudgetError(f"path enumeration is limited to height {max_height}")
    systems: list[PathSystem] = []
    chosen_paths: list[tuple[tuple[int, int], ...]] = []
    chosen_ends: list[int] = []
    used: set[tuple[int, int]] = set()

    def dfs(i: int) -> None:
        if i == rep.k:
            systems.append(PathSystem(tuple(chosen_paths), tuple(chosen_ends)))
            return
        a = rep.starts[i]
        for j, (b, c) in enumerate(rep.ends):
            if j in chosen_ends:
                continue
            for path in _paths_between(a, b, c):
                if any(v in used for v in path):
                    continue
                used.update(path)
                chosen_paths.append(path)
                chosen_ends.append(j)
                dfs(i + 1)
                chosen_ends.pop()
                chosen_paths.pop()
                used.difference_update(path)

    dfs(0)
    return systems


def lgv_sum(rep: LatticeRep, **budget) -> Polynomial:
    """Signed weight sum of all nonintersecting path systems."""
    total = Polynomial.zero()
    for system in enumerate_path_systems(rep, **budget):
        total = total + system.weight() * system.sign()
    return total


# --- the SEM expansion read off a proper representation -----------------------

def sem_of_proper(rep: LatticeRep) -> SemExpansion:
    """Expand the represented polynomial in standard elementary monomials.

    For distinct heights every nonzero term of the determinant expansion
    is, up to sign, a distinct SEM monomial: choosing row sigma(j) for the
    column at height c_j contributes index entry c_j + b_j - a_{sigma(j)}
    in position c_j.  The stored sign is folded in, so the result is the
    expansion of the represented polynomial itself.
    """
    if not rep.is_proper():
        raise DomainError("SEM read-off requires a proper representation (distinct heights)")
    k = rep.k
    coeffs: dict[tuple[int, ...], int] = {}
    max_height = max((c for _, c in rep.ends), default=0)
    assignment: list[int] = []

    def dfs(col: int) -> None:
        if col == k:
            idx = [0] * max_height
            for j, row in enumerate(assignment):
                b, c = rep.ends[j]
                entry = c + b - rep.starts[row]
                if c > 0:
                    idx[c - 1] = entry
            inv = sum(
                1
                for s in range(k)
                for t in range(s + 1, k)
                if assignment[s] > assignment[t]
            )
            key = tuple(idx)
            while key and key[-1] == 0:
                key = key[:-1]
            sgn = -1 if inv % 2 else 1
            coeffs[key] = coeffs.get(key, 0) + sgn * rep.sign
            return
        b, c = rep.ends[col]
        for row in range(k):
            if row in assignment:
                continue
            a = rep.starts[row]
            if b <= a <= b + c:  # nonzero entry e^(c)_{c+b-a}
                assignment.append(row)
                dfs(col + 1)
                assignment.pop()

    dfs(0)
    return SemExpansion.from_dict(coeffs)


# --- endpoint operations ------------------------------------------------------

def translate(rep: LatticeRep, dx: int) -> LatticeRep:
    """Shift all abscissas; the represented polynomial is unchanged."""
    return LatticeRep.normalized(
        tuple(a + dx for a in rep.starts),
        tuple((b + dx, c) for b, c in rep.ends),
        rep.sign,
        rep.label,
    )


def pull(rep: LatticeRep, b: int, c: int) -> LatticeRep:
    """Replace end (b+1, c) by (b, c+1); the represented polynomial is unchanged.

    Requires both (b, c) and (b+1, c) among the ends: a path into (b, c+1)
    avoiding (b, c) must arrive by a weight-1 diagonal from (b+1, c).
    """
    if (b, c) not in rep.ends or (b + 1, c) not in rep.ends:
        raise DomainError(f"pull needs both ({b},{c}) and ({b + 1},{c}) among the ends")
    ends = list(rep.ends)
    ends[ends.index((b + 1, c))] = (b, c + 1)
    return LatticeRep.normalized(rep.starts, ends, rep.sign)


def drop(rep: LatticeRep, c: int) -> LatticeRep:
    """Lower the unique end at height c to height c - 1.

    The new representation represents the height-c divided difference of
    the old target.  If no end sits at height c that divided difference is
    zero; query has_end_at_height before calling.
    """
    if c < 1:
        raise DomainError("drop applies at heights >= 1")
    hits = rep.ends_at_height(c)
    if len(hits) != 1:
        raise DomainError(
            f"drop needs exactly one end at height {c}; found {len(hits)}"
            + ("" if hits else " (the divided difference is 0)")
        )
    (b, _), = hits
    ends = list(rep.ends)
    ends[ends.index((b, c))] = (b, c - 1)
    return LatticeRep.normalized(rep.starts, ends, rep.sign)


def slide_left_below(rep: LatticeRep, c: int) -> LatticeRep:
    """Move the end left at height c - 1, below the unique end (b, c).

    Requires (b+1, c-1) among the ends; it becomes (b, c-1).  Equivalent to
    a drop followed by a pull, and represents the height-c divided
    difference of the old target (the stored sign flips to absorb the
    column transposition).
    """
    hits = rep.ends_at_height(c)
    if len(hits) != 1:
        raise DomainError(f"slide needs exactly one end at height {c}; found {len(hits)}")
    (b, _), = hits
    if (b + 1, c - 1) not in rep.ends:
        raise DomainError(f"slide_left_below needs end ({b + 1},{c - 1})")
    ends = list(rep.ends)
    ends[ends.index((b + 1, c - 1))] = (b, c - 1)
    return LatticeRep.normalized(rep.starts, ends, -rep.sign)


def slide_left_at(rep: LatticeRep, c: int) -> LatticeRep:
    """Move the unique end (b, c) left to (b - 1, c).

    Requires (b-1, c-1) among the ends.  Represents the height-c divided
    difference of the old target; no sign change.
    """
    hits = rep.ends_at_height(c)
    if len(hits) != 1:
        raise DomainError(f"slide needs exactly one end at height {c}; found {len(hits)}")
    (b, _), = hits
    if (b - 1, c - 1) not in rep.ends:
        raise DomainError(f"slide_left_at needs end ({b - 1},{c - 1})")
    ends = list(rep.ends)
    ends[ends.index((b, c))] = (b - 1, c)
    return LatticeRep.normalized(rep.starts, ends, rep.sign)


def product(rep_f: LatticeRep, rep_g: LatticeRep, label: Optional[str] = None) -> LatticeRep:
    """Concatenate two representations; the targets multiply.

    Requires that no directed path runs from a start of the first into an
    end of the second (a path (a,0) -> (b,c) exists iff b <= a <= b+c);
    the combined e-matrix is then block-triangular.  Use translate() to
    establish the condition.
    """
    for a in rep_f.starts:
        for b, c in rep_g.ends:
            if b <= a <= b + c:
                raise DomainError(
                    f"paths from start {a} reach end ({b},{c}); translate one factor first"
                )
    return LatticeRep.normalized(
        rep_f.starts + rep_g.starts,
        rep_f.ends + rep_g.ends,
        rep_f.sign * rep_g.sign,
        label,
    )


def delete_staircase(rep: LatticeRep, a: int, s: int = 0) -> LatticeRep:
    """Remove starts (a,0)..(a+s,0) together with ends (a,0)..(a,s).

    The removed points admit a unique all-diagonal family of paths, so they
    form a factor representing 1 and the target is unchanged.  The sign
    tracks the row/column extraction parity of the block factorization.
    """
    start_values = [a + t for t in range(s + 1)]
    end_values = [(a, t) for t in range(s + 1)]
    try:
        rows = [rep.starts.index(v) for v in start_values]
        cols = [rep.ends.index(e) for e in end_values]
    except ValueError:
        raise DomainError(
            f"delete needs starts {start_values} and ends {end_values} present"
        ) from None
    parity = sum(r - t for t, r in enumerate(sorted(rows)))
    parity += sum(c - t for t, c in enumerate(sorted(cols)))
    sign = rep.sign * (-1 if parity % 2 else 1)
    keep_starts = [v for i, v in enumerate(rep.starts) if i not in set(rows)]
    keep_ends = [e for j, e in enumerate(rep.ends) if j not in set(cols)]
    return LatticeRep.normalized(keep_starts, keep_ends, sign, rep.label)


def lower(rep: LatticeRep, v: LoweringPermutation | Permutation) -> LatticeRep:
    """Apply the inverse of a lowering permutation as divided differences.

    The representation must be full (ends at heights 0..n-1, one each, with
    n = |starts|).  For each i = 1..k (k = v(1)) the floor pair at the
    current height-0 end is deleted and the ends at heights 1..p_i - 1 are
    dropped one step, where p_i is the position of i in v.  The result
    represents the composite divided difference of the old target, and its
    end heights are v^{-1}(k+1)-1 < ... < v^{-1}(n)-1.
    """
    if isinstance(v, Permutation):
        v = LoweringPermutation.from_permutation(v)
    n = rep.k
    if v.n != n:
        raise DomainError(f"lowering permutation size {v.n} does not match k = {n}")
    if sorted(rep.heights()) != list(range(n)):
        raise DomainError("lower needs ends at heights 0..n-1, one at each height")
    if v.base.is_identity():
        return rep  # the composite operator is the identity
    current = rep
    for p in v.positions:
        ((b, _),) = current.ends_at_height(0)
        if b not in current.starts:
            raise DomainError(
                f"no start at {b} to pair with the height-0 end; "
                "the first k end abscissas must be distinct start values"
            )
        current = delete_staircase(current, b, 0)
        for c in range(1, p):
            current = drop(current, c)
    return current.relabel(rep.label)


# --- constructions for the permutation classes --------------------------------

def _require_avoids(w: Permutation, pattern: Permutation, what: str) -> None:
    hit = find_pattern(w, pattern)
    if hit is not None:
        raise PatternViolation(
            f"{what} requires avoiding {pattern}; {w} contains it at positions {hit}",
            pattern,
            hit,
        )


def rep_dominant(w: Permutation) -> LatticeRep:
    """Compact representation of the (monomial) Schubert polynomial of a
    132-avoiding permutation: ends (code_i, i-1) reached from a reversed
    staircase of starts."""
    _require_avoids(w, P132, "rep_dominant")
    n = w.n
    code = w.code()
    sign = -1 if (n * (n - 1) // 2 - w.length()) % 2 else 1
    return LatticeRep.normalized(
        tuple(range(n - 1, -1, -1)),
        tuple((code[i], i) for i in range(n)),
        sign,
        str(w),
    )


def rep_213(w: Permutation) -> LatticeRep:
    """Compact representation for a 213-avoiding permutation.

    The end abscissas are the code of w0 w w0 read against descending
    heights n-1, ..., 0; the represented polynomial is the Schubert
    polynomial of w with no sign correction.
    """
    _require_avoids(w, P213, "rep_213")
    n = w.n
    w0 = longest_element(n)
    code = (w0 * w * w0).code()
    return LatticeRep.normalized(
        tuple(range(n - 1, -1, -1)),
        tuple((code[i], n - 1 - i) for i in range(n)),
        1,
        str(w),
    )


def _raise_ends(rep: LatticeRep, m: int) -> LatticeRep:
    """Lift all ends by m; valid for compact representations only.

    With starts packed as 0..k-1, every disjoint family is forced through m
    full levels of upsteps, so the target gains a factor (x_1...x_m)^k and
    the remaining variables shift up by m.
    """
    if rep.starts != tuple(range(rep.k)):
        raise DomainError("raising ends requires starts packed as 0..k-1")
    return LatticeRep.normalized(
        rep.starts, tuple((b, c + m) for b, c in rep.ends), rep.sign, rep.label
    )


def compact_rep(w: Permutation) -> LatticeRep:
    """Compact representation of the Schubert polynomial of a separable,
    1324-avoiding permutation.

    Recursive on the leftmost block split.  A skew summand stacks the two
    compact representations (the lower-right block for the prefix, the
    lifted block for the suffix).  A direct sum w = u + v bottoms out:
    u is dominant and 1_m + v is 213-avoiding, and deleting the floor
    staircase from the latter's representation frees the room for the
    former.
    """
    for pattern in (P1324, P2413, P3142):
        _require_avoids(w, pattern, "compact_rep")
    return _compact_rep(w)


def _compact_rep(w: Permutation) -> LatticeRep:
    n = w.n
    if n == 1:
        return LatticeRep((0,), ((0, 0),), 1, str(w))
    op, u, v = block_split(w)
    if op == "-":
        rep_u = translate(_compact_rep(u), v.n)
        rep_v = _raise_ends(_compact_rep(v), u.n)
        return product(rep_v, rep_u, label=str(w))
    rep_u = rep_dominant(u)
    vp = direct_sum(identity(u.n), v)
    rep_vp = delete_staircase(rep_213(vp), 0, u.n - 1)
    return product(rep_vp, rep_u, label=str(w))


def proper_rep(w: Permutation) -> LatticeRep:
    """Proper representation of the Schubert polynomial of a permutation
    avoiding the 13 forbidden patterns.

    Factor w = u * v with u separable and 1324-avoiding and v lowering,
    build the compact representation of u, and lower it by v.
    """
    witness = thirteen_witness(w)
    if witness is not None:
        pattern, positions = witness
        raise PatternViolation(
            f"{w} contains forbidden pattern {pattern} at positions {positions}",
            pattern,
            positions,
        )
    u, v = factorize(w)
    return lower(_compact_rep(u), v).relabel(str(w))


def rep_321(w: Permutation) -> LatticeRep:
    """Representation for a 321-avoiding permutation.

    The values that are not left-to-right maxima, in increasing order,
    give the starts (q_i - 1, 0); their positions in w give the ends
    (0, p_i - 1).  The sign is positive.
    """
    _require_avoids(w, P321, "rep_321")
    maxima_positions = set(w.left_to_right_maxima())
    non_max_values = sorted(
        w.word[i - 1] for i in range(1, w.n + 1) if i not in maxima_positions
    )
    inv = w.inverse()
    positions = [inv(q) for q in non_max_values]
    return LatticeRep.normalized(
        tuple(q - 1 for q in non_max_values),
        tuple((0, p - 1) for p in positions),
        1,
        str(w),
    )


def rep_grassmannian(lam: Sequence[int], n: int) -> LatticeRep:
    """Proper representation of the Schur polynomial s_lambda(x_1..x_n).

    Encodes the determinant det(e^(n+j-1)_{lambda'_i + j - i}) by placing
    all ends on the wall at heights n, ..., n+r-1.
    """
    lam = tuple(p for p in lam if p)
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)) or any(p < 0 for p in lam):
        raise DomainError(f"not a partition: {lam}")
    if not lam:
        return LatticeRep((), (), 1, "s_()")
    conj = conjugate_partition(lam)
    r = lam[0]
    starts = tuple(n - 1 + i - conj[i - 1] for i in range(1, r + 1))
    ends = tuple((0, n + j - 1) for j in range(1, r + 1))
    return LatticeRep.normalized(starts, ends, 1, f"s_{lam}")


def rep_413625() -> LatticeRep:
    """The fixed proper representation of the Schubert polynomial of 413625.

    This permutation lies outside the 13-pattern class, yet admits the
    4x4 e-determinant encoded here; height-4 and height-1 drops derive
    representations for 413265, 143625 and 143265 from it.
    """
    return LatticeRep(
        (0, 1, 2, 5),
        ((0, 1), (0, 2), (1, 4), (1, 5)),
        1,
        "4 1 3 6 2 5",
    )


def is_parking_sequence(bs: Sequence[int]) -> bool:
    """At least s of the entries are smaller than s, for every s <= len(bs)."""
    return all(b <= i for i, b in enumerate(sorted(bs)))


def random_rep(rng, max_points: int = 3, max_height: int = 4, max_x: int = 5) -> LatticeRep:
    """A small random representation (for randomized determinant checks)."""
    k = rng.randint(0, max_points)
    starts = rng.sample(range(max_x + 1), k)
    ends = rng.sample(
        [(b, c) for b in range(max_x + 1) for c in range(max_height + 1)], k
    )
    sign = rng.choice((1, -1))
    return LatticeRep.normalized(tuple(starts), tuple(ends), sign)
