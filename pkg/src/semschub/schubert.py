"""
Schubert polynomials by two independent routes, and their quantum analogues.

The primary route applies divided difference operators to the staircase
monomial x_1^{n-1} x_2^{n-2} ... x_{n-1}.  The oracle route enumerates
reduced pipe dreams (rc-graphs) and sums their weights; agreement of the
two routes is one of the package's standing checks.

Quantum Schubert polynomials are obtained by expanding the classical
polynomial in standard elementary monomials and replacing each elementary
polynomial e_j^(k) by its quantum deformation E_j^(k).
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import BudgetError, DomainError
from .perms import Permutation, longest_element
from .poly import Polynomial, determinant, divided_difference, sem_expand

PIPE_DREAM_MAX_N = 8


def staircase_monomial(n: int) -> Polynomial:
    """x_1^{n-1} x_2^{n-2} ... x_{n-1}, the top Schubert polynomial for S_n."""
    if n == 1:
        return Polynomial.one()
    return Polynomial({(tuple(range(n - 1, 0, -1)), ()): 1})


@lru_cache(maxsize=None)
def _schubert_from_word(word: tuple[int, ...]) -> Polynomial:
    w = Permutation(word)
    n = w.n
    if w.word == longest_element(n).word:
        return staircase_monomial(n)
    i = next(i for i in range(1, n) if w(i) < w(i + 1))
    above = w.swap(i).trim()
    return divided_difference(_schubert_from_word(above.word), i)


def schubert(w: Permutation) -> Polynomial:
    """The Schubert polynomial of w.

    Stable under padding with fixed points, so the input is trimmed before
    the divided-difference recursion from the staircase monomial.
    """
    return _schubert_from_word(w.trim().word)


# --- pipe dreams ------------------------------------------------------------

@dataclass(frozen=True)
class PipeDream:
    """A reduced pipe dream: a set of crosses in the staircase i + j <= n."""

    n: int
    crosses: frozenset[tuple[int, int]]

    def weight(self) -> Polynomial:
        """Product of x_i over the crosses in row i."""
        exps = [0] * self.n
        for i, _ in self.crosses:
            exps[i - 1] += 1
        while exps and exps[-1] == 0:
            exps.pop()
        return Polynomial({(tuple(exps), ()): 1})

    def ascii(self) -> str:
        rows = []
        for i in range(1, self.n):
            cells = ["+" if (i, j) in self.crosses else "." for j in range(1, self.n - i + 1)]
            rows.append(" ".join(cells))
        return "\n".join(rows) if rows else "."

    def to_json_obj(self) -> list[list[int]]:
        return [list(pos) for pos in sorted(self.crosses)]


def reduced_pipe_dreams(w: Permutation) -> tuple[PipeDream, ...]:
    """All reduced pipe dreams for w, each with exactly length(w) crosses.

    Depth-first search over the staircase cells in reading order (rows top
    to bottom, right to left within a row).  A cross in cell (i, j) acts as
    the simple transposition with index i + j - 1; partial words are kept
    reduced, and once a row is finished the first i letters of the working
    word are frozen and compared against the target.
    """
    w = w.trim()
    n = w.n
    target = list(w.word)
    ell = w.length()
    cells = [(i, j) for i in range(1, n) for j in range(n - i, 0, -1)]
    word = list(range(1, n + 1))
    found: list[frozenset] = []
    crosses: list[tuple[int, int]] = []

    def dfs(pos: int, left: int) -> None:
        if left == 0:
            if word == target:
                found.append(frozenset(crosses))
            return
        if left > len(cells) - pos:
            return
        i, j = cells[pos]
        if j == n - i and word[: i - 1] != target[: i - 1]:
            return  # positions before row i can no longer change
        a = i + j - 1
        if word[a - 1] < word[a]:
            word[a - 1], word[a] = word[a], word[a - 1]
            crosses.append((i, j))
            dfs(pos + 1, left - 1)
            crosses.pop()
            word[a - 1], word[a] = word[a], word[a - 1]
        dfs(pos + 1, left)

    dfs(0, ell)
    return tuple(PipeDream(n, c) for c in sorted(found, key=sorted))


def schubert_via_pipedreams(w: Permutation) -> Polynomial:
    """Sum of pipe dream weights; the enumeration oracle for schubert()."""
    w = w.trim()
    if w.n > PIPE_DREAM_MAX_N:
        raise BudgetError(f"pipe dream enumeration is limited to n <= {PIPE_DREAM_MAX_N}")
    total = Polynomial.zero()
    for dream in reduced_pipe_dreams(w):
        total = total + dream.weight()
    return total


# --- quantum elementary polynomials ------------------------------------------

@lru_cache(maxsize=None)
def quantum_elementary(j: int, k: int) -> Polynomial:
    """E_j^(k), the q-deformation of the elementary symmetric polynomial.

    Computed by the three-term recurrence
    E_j^(k) = E_j^(k-1) + x_k E_{j-1}^(k-1) + q_{k-1} E_{j-2}^(k-2),
    with the classical base cases (1 for j = 0, and 0 out of range).
    """
    if j == 0:
        return Polynomial.one()
    if j < 0 or k <= 0 or j > k:
        return Polynomial.zero()
    out = quantum_elementary(j, k - 1) + Polynomial.x(k) * quantum_elementary(j - 1, k - 1)
    if k >= 2:
        out = out + Polynomial.q(k - 1) * quantum_elementary(j - 2, k - 2)
    return out


def quantum_elementary_via_matrix(j: int, k: int) -> Polynomial:
    """E_j^(k) extracted as a coefficient of det(I + t G_k).

    G_k has x_1..x_k on the diagonal, q_i above it and -1 below it.  The
    determinant is expanded with an auxiliary variable x_{k+1} standing in
    for t, and the coefficient of its j-th power is returned.  Independent
    cross-check for the recurrence route.
    """
    if j == 0:
        return Polynomial.one()
    if j < 0 or k <= 0 or j > k:
        return Polynomial.zero()
    t = Polynomial.x(k + 1)
    mat = [[Polynomial.zero()] * k for _ in range(k)]
    for i in range(k):
        mat[i][i] = Polynomial.one() + t * Polynomial.x(i + 1)
        if i + 1 < k:
            mat[i][i + 1] = t * Polynomial.q(i + 1)
            mat[i + 1][i] = -t
    det = determinant(mat)
    out = {}
    for (xe, qe), c in det.terms.items():
        t_deg = xe[k] if len(xe) > k else 0
        if t_deg == j:
            trimmed = list(xe)
            trimmed[k] = 0
            while trimmed and trimmed[-1] == 0:
                trimmed.pop()
            out[(tuple(trimmed), qe)] = c
    return Polynomial(out)


def quantum_schubert(w: Permutation) -> Polynomial:
    """The quantum Schubert polynomial for w in S_n.

    The SEM expansion of the classical polynomial (with indices of length
    n - 1) is reassembled with quantum elementary polynomials.  Unlike the
    classical polynomial this depends on the ambient n, so the input is
    not trimmed.
    """
    expansion = sem_expand(schubert(w), w.n - 1)
    return expansion.substitute(quantum_elementary)
