"""
Sparse multivariate polynomials over the integers, divided differences,
polynomial determinants, and the two basis changes used by the package:
expansion in standard elementary monomials (SEM) and expansion in the
Schubert basis.

Variables come in two families: x_1, x_2, ... and the deformation variables
q_1, q_2, ....  A monomial is stored as a pair of exponent tuples with
trailing zeros stripped, so the representation of a polynomial is unique.
All coefficients are exact Python integers.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Sequence

from .errors import DomainError
from .perms import Permutation

Mono = tuple[tuple[int, ...], tuple[int, ...]]

_EMPTY: tuple[int, ...] = ()


class SemExpandError(DomainError):
    """No SEM expansion exists with index length bounded by the given m."""


def _strip(t: Sequence[int]) -> tuple[int, ...]:
    t = tuple(t)
    n = len(t)
    while n and t[n - 1] == 0:
        n -= 1
    return t[:n]


def _tadd(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    if len(a) < len(b):
        a, b = b, a
    return tuple(x + y for x, y in zip(a, b)) + a[len(b):]


def _mono_sort_key(mono: Mono) -> tuple:
    xe, qe = mono
    deg = sum(xe) + 2 * sum(qe)
    return (-deg, tuple(-e for e in xe), tuple(-e for e in qe))


class Polynomial:
    """Sparse exact-integer polynomial in x- and q-variables."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Mono, int]] = None):
        self.terms: dict[Mono, int] = {}
        if terms:
            for key, c in terms.items():
                if c:
                    self.terms[(_strip(key[0]), _strip(key[1]))] = c

    @classmethod
    def _raw(cls, terms: dict[Mono, int]) -> "Polynomial":
        """Wrap an already-normalized term dict without copying."""
        p = cls.__new__(cls)
        p.terms = terms
        return p

    @classmethod
    def zero(cls) -> "Polynomial":
        return cls._raw({})

    @classmethod
    def one(cls) -> "Polynomial":
        return cls.integer(1)

    @classmethod
    def integer(cls, c: int) -> "Polynomial":
        return cls._raw({(_EMPTY, _EMPTY): c} if c else {})

    @classmethod
    def x(cls, i: int, power: int = 1) -> "Polynomial":
        if i < 1:
            raise DomainError("x-variables are indexed from 1")
        if power == 0:
            return cls.one()
        return cls._raw({((0,) * (i - 1) + (power,), _EMPTY): 1})

    @classmethod
    def q(cls, i: int, power: int = 1) -> "Polynomial":
        if i < 1:
            raise DomainError("q-variables are indexed from 1")
        if power == 0:
            return cls.one()
        return cls._raw({(_EMPTY, (0,) * (i - 1) + (power,)): 1})

    # -- ring structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = Polynomial.integer(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other) -> "Polynomial":
        if isinstance(other, int):
            other = Polynomial.integer(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        out = dict(self.terms)
        for key, c in other.terms.items():
            v = out.get(key, 0) + c
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return Polynomial._raw(out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw({key: -c for key, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        return self + (-other if isinstance(other, Polynomial) else -Polynomial.integer(other))

    def __rsub__(self, other) -> "Polynomial":
        return (-self) + other

    def __mul__(self, other) -> "Polynomial":
        if isinstance(other, int):
            if other == 0:
                return Polynomial.zero()
            return Polynomial._raw({key: other * c for key, c in self.terms.items()})
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out: dict[Mono, int] = {}
        for (xb, qb), cb in b.items():
            for (xa, qa), ca in a.items():
                key = (_tadd(xa, xb), _tadd(qa, qb))
                v = out.get(key, 0) + ca * cb
                if v:
                    out[key] = v
                else:
                    del out[key]
        return Polynomial._raw(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if n < 0:
            raise DomainError("negative powers are not defined")
        result = Polynomial.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- structure queries ------------------------------------------------

    def constant_term(self) -> int:
        return self.terms.get((_EMPTY, _EMPTY), 0)

    def degree(self) -> int:
        """Total degree, counting each q-variable with weight 2."""
        if not self.terms:
            return 0
        return max(sum(xe) + 2 * sum(qe) for xe, qe in self.terms)

    def max_x_var(self) -> int:
        return max((len(xe) for xe, _ in self.terms), default=0)

    def has_q(self) -> bool:
        return any(qe for _, qe in self.terms)

    def homogeneous_parts(self) -> dict[int, "Polynomial"]:
        """Split by total x-degree (q-free polynomials only)."""
        parts: dict[int, dict[Mono, int]] = {}
        for key, c in self.terms.items():
            parts.setdefault(sum(key[0]), {})[key] = c
        return {d: Polynomial._raw(t) for d, t in sorted(parts.items())}

    def sorted_terms(self) -> list[tuple[Mono, int]]:
        return sorted(self.terms.items(), key=lambda item: _mono_sort_key(item[0]))

    # -- symmetric group action and substitutions -------------------------

    def swap_x(self, i: int) -> "Polynomial":
        """Exchange x_i and x_{i+1}."""
        out: dict[Mono, int] = {}
        for (xe, qe), c in self.terms.items():
            if len(xe) >= i:
                padded = xe + (0,) * (i + 1 - len(xe))
                swapped = padded[: i - 1] + (padded[i], padded[i - 1]) + padded[i + 1:]
                xe = _strip(swapped)
            out[(xe, qe)] = c
        return Polynomial._raw(out)

    def shift_x(self, m: int) -> "Polynomial":
        """Substitute x_j -> x_{j+m} for every j."""
        if m == 0:
            return self
        out = {}
        for (xe, qe), c in self.terms.items():
            out[((0,) * m + xe if xe else xe, qe)] = c
        return Polynomial._raw(out)

    def subs_q_zero(self) -> "Polynomial":
        return Polynomial._raw({key: c for key, c in self.terms.items() if not key[1]})

    # -- presentation -----------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        chunks = []
        for (xe, qe), c in self.sorted_terms():
            factors = [f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(xe) if e]
            factors += [f"q{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(qe) if e]
            body = "*".join(factors) if factors else str(abs(c))
            if factors and abs(c) != 1:
                body = f"{abs(c)}*{body}"
            chunks.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(chunks)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]

    def __repr__(self) -> str:
        return f"Polynomial({self})"

    def to_json_obj(self) -> list[dict]:
        return [
            {"exps": list(xe), "qexps": list(qe), "coeff": str(c)}
            for (xe, qe), c in self.sorted_terms()
        ]

    @classmethod
    def from_json_obj(cls, obj: Iterable[dict]) -> "Polynomial":
        terms: dict[Mono, int] = {}
        for item in obj:
            key = (_strip(item["exps"]), _strip(item.get("qexps", ())))
            terms[key] = terms.get(key, 0) + int(item["coeff"])
        return cls(terms)


# --- elementary symmetric polynomials -------------------------------------

@lru_cache(maxsize=None)
def elementary(j: int, k: int) -> Polynomial:
    """The j-th elementary symmetric polynomial in x_1, ..., x_k.

    Returns 1 when j = 0 and 0 when j < 0 or j > k.
    """
    if j == 0:
        return Polynomial.one()
    if j < 0 or j > k:
        return Polynomial.zero()
    terms: dict[Mono, int] = {}
    for combo in itertools.combinations(range(k), j):
        xe = [0] * (combo[-1] + 1)
        for i in combo:
            xe[i] = 1
        terms[(tuple(xe), _EMPTY)] = 1
    return Polynomial._raw(terms)


# --- divided difference operators -----------------------------------------

def _pair_exponents(xe: tuple[int, ...], i: int) -> tuple[int, int, tuple[int, ...]]:
    a = xe[i - 1] if len(xe) >= i else 0
    b = xe[i] if len(xe) > i else 0
    rest = list(xe) + [0] * (i + 1 - len(xe))
    rest[i - 1] = rest[i] = 0
    return a, b, _strip(rest)


def divided_difference(f: Polynomial, i: int) -> Polynomial:
    """Apply (1 - s_i) / (x_i - x_{i+1}).

    The numerator f - s_i f is antisymmetric in x_i, x_{i+1}, so the
    division is exact; synthetic division is performed per group of terms
    sharing the other variables, and a zero remainder is asserted.
    """
    if i < 1:
        raise DomainError("divided differences are indexed from 1")
    num = f - f.swap_x(i)
    groups: dict[tuple[tuple[int, ...], tuple[int, ...], int], dict[int, int]] = {}
    for (xe, qe), c in num.terms.items():
        a, b, rest = _pair_exponents(xe, i)
        groups.setdefault((rest, qe, a + b), {})[a] = c
    out: dict[Mono, int] = {}
    for (rest, qe, s), col in groups.items():
        run = 0
        for t in range(s):
            run += col.get(t, 0)
            if run:
                xe = list(rest) + [0] * (i + 1 - len(rest))
                xe[i - 1] = t
                xe[i] = s - 1 - t
                key = (_strip(xe), qe)
                v = out.get(key, 0) - run
                if v:
                    out[key] = v
                else:
                    del out[key]
        run += col.get(s, 0)
        assert run == 0, "non-exact division: numerator was not antisymmetric"
    return Polynomial._raw(out)


def divided_difference_word(f: Polynomial, w: Permutation) -> Polynomial:
    """Apply the composite operator for w along any reduced word.

    The result does not depend on the chosen word; here the smallest
    descent is peeled off repeatedly.
    """
    while True:
        descents = w.descents()
        if not descents:
            return f
        i = descents[0]
        f = divided_difference(f, i)
        if f.is_zero():
            return f
        w = w.swap(i)


# --- determinants ----------------------------------------------------------

def determinant(mat: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Exact determinant of a square matrix of polynomials.

    Laplace expansion along the last column with memoization on row
    subsets; zero entries (ubiquitous in the banded matrices built from
    elementary polynomials) are skipped outright.
    """
    k = len(mat)
    if any(len(row) != k for row in mat):
        raise DomainError("determinant requires a square matrix")
    if k == 0:
        return Polynomial.one()
    memo: dict[frozenset, Polynomial] = {}

    def det(rows: frozenset) -> Polynomial:
        if not rows:
            return Polynomial.one()
        cached = memo.get(rows)
        if cached is not None:
            return cached
        col = len(rows) - 1
        total = Polynomial.zero()
        for t, r in enumerate(sorted(rows)):
            # cofactor sign (-1)^{(t+1) + |rows|} for row position t+1, column |rows|
            entry = mat[r][col]
            if entry.is_zero():
                continue
            sub = det(rows - {r})
            if sub.is_zero():
                continue
            term = entry * sub
            total = total + term if (t + len(rows)) % 2 else total - term
        memo[rows] = total
        return total

    return det(frozenset(range(k)))


def determinant_leibniz(mat: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Reference determinant by direct sum over permutations (small sizes)."""
    k = len(mat)
    total = Polynomial.zero()
    for sigma in itertools.permutations(range(k)):
        inversions = sum(
            1 for i in range(k) for j in range(i + 1, k) if sigma[i] > sigma[j]
        )
        prod = Polynomial.one()
        for i in range(k):
            prod = prod * mat[sigma[i]][i]
            if prod.is_zero():
                break
        total = total - prod if inversions % 2 else total + prod
    return total


# --- standard elementary monomials -----------------------------------------

def _validate_sem_index(idx: Sequence[int]) -> tuple[int, ...]:
    idx = _strip(idx)
    for k, j in enumerate(idx, start=1):
        if not 0 <= j <= k:
            raise DomainError(f"invalid SEM index {tuple(idx)}: entry {k} must lie in [0, {k}]")
    return idx


@lru_cache(maxsize=None)
def sem_monomial(idx: tuple[int, ...]) -> Polynomial:
    """The product of elementary polynomials selected by the index sequence."""
    idx = _validate_sem_index(idx)
    out = Polynomial.one()
    for k, j in enumerate(idx, start=1):
        if j:
            out = out * elementary(j, k)
    return out


@dataclass(frozen=True)
class SemExpansion:
    """An integer combination of standard elementary monomials."""

    coeffs: tuple[tuple[tuple[int, ...], int], ...]

    @classmethod
    def from_dict(cls, coeffs: Mapping[Sequence[int], int]) -> "SemExpansion":
        items = []
        for idx, c in coeffs.items():
            if c:
                items.append((_validate_sem_index(idx), c))
        return cls(tuple(sorted(items)))

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.coeffs)

    def to_polynomial(self) -> Polynomial:
        total = Polynomial.zero()
        for idx, c in self.coeffs:
            total = total + sem_monomial(idx) * c
        return total

    def substitute(self, factor) -> Polynomial:
        """Rebuild the combination with factor(j, k) in place of each e_j^(k)."""
        total = Polynomial.zero()
        for idx, c in self.coeffs:
            prod = Polynomial.integer(c)
            for k, j in enumerate(idx, start=1):
                if j:
                    prod = prod * factor(j, k)
            total = total + prod
        return total

    def max_coefficient(self) -> int:
        return max((abs(c) for _, c in self.coeffs), default=0)

    def __len__(self) -> int:
        return len(self.coeffs)

    def to_json_obj(self) -> list[dict]:
        return [{"index": list(idx), "coeff": str(c)} for idx, c in self.coeffs]

    @classmethod
    def from_json_obj(cls, obj: Iterable[dict]) -> "SemExpansion":
        return cls.from_dict({tuple(item["index"]): int(item["coeff"]) for item in obj})


def _sem_indices(m: int, d: int) -> list[tuple[int, ...]]:
    """All index sequences (j_1, ..., j_m), 0 <= j_k <= k, of total degree d."""
    out: list[tuple[int, ...]] = []

    def rec(k: int, remaining: int, prefix: list[int]):
        if remaining == 0:
            out.append(_strip(prefix))
            return
        if k > m or remaining > (k + m) * (m - k + 1) // 2:
            return
        for j in range(0, min(k, remaining) + 1):
            prefix.append(j)
            rec(k + 1, remaining - j, prefix)
            prefix.pop()

    rec(1, d, [])
    return out


_sem_solver_cache: dict[tuple[int, int], tuple] = {}


def _sem_solver(m: int, d: int):
    """Cached least-squares data for expanding degree-d polynomials in x_1..x_m."""
    key = (m, d)
    cached = _sem_solver_cache.get(key)
    if cached is not None:
        return cached
    import numpy as np

    idxs = _sem_indices(m, d)
    mono_index: dict[Mono, int] = {}
    columns = []
    for idx in idxs:
        poly = sem_monomial(idx)
        col = {}
        for mono, c in poly.terms.items():
            pos = mono_index.setdefault(mono, len(mono_index))
            col[pos] = c
        columns.append(col)
    matrix = np.zeros((len(mono_index), len(idxs)))
    for jcol, col in enumerate(columns):
        for pos, c in col.items():
            matrix[pos, jcol] = c
    pinv = np.linalg.pinv(matrix) if idxs else None
    result = (mono_index, idxs, pinv)
    _sem_solver_cache[key] = result
    return result


def _sem_solve_exact(idxs: list[tuple[int, ...]], part: Polynomial) -> Optional[list[int]]:
    """Fraction-arithmetic Gaussian elimination; None when no solution exists."""
    mono_index: dict[Mono, int] = {}
    rows: dict[int, dict[int, Fraction]] = {}
    rhs: dict[int, Fraction] = {}
    for jcol, idx in enumerate(idxs):
        for mono, c in sem_monomial(idx).terms.items():
            pos = mono_index.setdefault(mono, len(mono_index))
            rows.setdefault(pos, {})[jcol] = Fraction(c)
    for mono, c in part.terms.items():
        pos = mono_index.setdefault(mono, len(mono_index))
        rhs[pos] = Fraction(c)
    order = list(range(len(mono_index)))
    pivots: dict[int, int] = {}
    used_rows: set[int] = set()
    for col in range(len(idxs)):
        pivot_row = next(
            (r for r in order if r not in used_rows and rows.get(r, {}).get(col)), None
        )
        if pivot_row is None:
            continue
        used_rows.add(pivot_row)
        pivots[col] = pivot_row
        prow = rows.setdefault(pivot_row, {})
        pval = prow[col]
        for r in order:
            if r == pivot_row:
                continue
            row = rows.get(r, {})
            factor = row.get(col)
            if not factor:
                continue
            scale = factor / pval
            for c2, v in prow.items():
                nv = row.get(c2, Fraction(0)) - scale * v
                if nv:
                    row[c2] = nv
                else:
                    row.pop(c2, None)
            rv = rhs.get(r, Fraction(0)) - scale * rhs.get(pivot_row, Fraction(0))
            if rv:
                rhs[r] = rv
            else:
                rhs.pop(r, None)
            rows[r] = row
    for r in order:
        if r not in used_rows and rhs.get(r):
            return None
    solution = [0] * len(idxs)
    for col, r in pivots.items():
        value = rhs.get(r, Fraction(0)) / rows[r][col]
        if value.denominator != 1:
            return None
        solution[col] = int(value)
    return solution


def sem_expand(f: Polynomial, m: int) -> SemExpansion:
    """Expand f (a polynomial in x_1..x_m) in standard elementary monomials.

    Works one homogeneous degree at a time: the candidate indices are all
    (j_1, ..., j_m) of that degree, a least-squares solve proposes integer
    coefficients, and the combination is verified exactly; an exact
    rational elimination settles the rare inconclusive case.  Raises
    SemExpandError when no expansion with index length <= m exists, in
    which case the caller may retry with a larger m.
    """
    if f.has_q():
        raise DomainError("sem_expand applies to polynomials in the x-variables only")
    if f.max_x_var() > m:
        raise SemExpandError(
            f"polynomial involves x_{f.max_x_var()}; no SEM expansion with indices up to m={m}"
        )
    result: dict[tuple[int, ...], int] = {}
    for d, part in f.homogeneous_parts().items():
        if d == 0:
            result[_EMPTY] = part.constant_term()
            continue
        mono_index, idxs, pinv = _sem_solver(m, d)
        if not idxs:
            raise SemExpandError(f"no SEM index of degree {d} with length <= {m}")
        if any(mono not in mono_index for mono in part.terms):
            raise SemExpandError(
                f"degree-{d} part is outside the span of SEM monomials with length <= {m}"
            )
        import numpy as np

        b = np.zeros(len(mono_index))
        for mono, c in part.terms.items():
            b[mono_index[mono]] = c
        approx = pinv @ b
        coeffs = [int(round(v)) for v in approx]
        plausible = all(abs(v - c) < 0.25 for v, c in zip(approx, coeffs))
        if not (plausible and _sem_verify(idxs, coeffs, part)):
            exact = _sem_solve_exact(idxs, part)
            if exact is None or not _sem_verify(idxs, exact, part):
                raise SemExpandError(
                    f"degree-{d} part has no SEM expansion with indices up to m={m}"
                )
            coeffs = exact
        for idx, c in zip(idxs, coeffs):
            if c:
                result[idx] = c
    return SemExpansion.from_dict(result)


def _sem_verify(idxs, coeffs, part: Polynomial) -> bool:
    total = Polynomial.zero()
    for idx, c in zip(idxs, coeffs):
        if c:
            total = total + sem_monomial(idx) * c
    return total == part


# --- the Schubert basis -----------------------------------------------------

def schubert_expand(f: Polynomial, n: int) -> dict[Permutation, int]:
    """Expand f in Schubert polynomials indexed by S_n.

    The coefficient of the basis element for w is the constant term of the
    w-divided difference of f; the reconstruction is verified exactly and a
    DomainError is raised when f lies outside the span.
    """
    from . import schubert as _schubert
    from .perms import all_permutations

    if f.has_q():
        raise DomainError("schubert_expand applies to polynomials in the x-variables only")
    deg = f.degree()
    coeffs: dict[Permutation, int] = {}
    for w in all_permutations(n):
        if w.length() > deg:
            continue
        c = divided_difference_word(f, w).constant_term()
        if c:
            coeffs[w] = c
    reconstructed = Polynomial.zero()
    for w, c in coeffs.items():
        reconstructed = reconstructed + _schubert.schubert(w) * c
    if reconstructed != f:
        raise DomainError(f"polynomial is not in the span of Schubert polynomials for S_{n}")
    return coeffs


# --- Schur polynomials via the dual Jacobi-Trudi determinant ----------------

def conjugate_partition(lam: Sequence[int]) -> tuple[int, ...]:
    if not lam:
        return ()
    return tuple(sum(1 for part in lam if part >= i) for i in range(1, lam[0] + 1))


def schur(lam: Sequence[int], n: int) -> Polynomial:
    """Schur polynomial s_lambda(x_1, ..., x_n) as an e-determinant."""
    lam = tuple(lam)
    if any(lam[i] < lam[i + 1] for i in range(len(lam) - 1)) or any(p < 0 for p in lam):
        raise DomainError(f"not a partition: {lam}")
    lam = tuple(p for p in lam if p)
    if not lam:
        return Polynomial.one()
    conj = conjugate_partition(lam)
    r = lam[0]
    mat = [
        [elementary(conj[i] + (j + 1) - (i + 1), n) for j in range(r)]
        for i in range(r)
    ]
    return determinant(mat)
