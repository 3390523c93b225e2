"""Exact scalar, polynomial, and linear-algebra primitives.

Every computation in this package is exact: scalars are arbitrary-precision
rationals and no floating point appears anywhere.  This module provides

* ``Rational``       -- exact rational scalars (``fractions.Fraction``),
* ``UniPoly``        -- dense univariate polynomials over the rationals,
* ``series_expand_at_infinity`` -- Laurent expansion of a rational function,
* ``GradedPolynomial`` -- sparse polynomials in an indexed variable family,
* ``RationalMatrix`` / ``solve_exact`` -- fraction-free exact linear algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable, Iterable, Mapping, Sequence

Rational = Fraction


class InvalidInputError(ValueError):
    """Raised when an argument violates a documented precondition."""


class InconsistentSystemError(RuntimeError):
    """Raised when an overdetermined linear system admits no solution."""


def _as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise InvalidInputError(f"expected an exact rational scalar, got {x!r}")


# ---------------------------------------------------------------------------
# univariate polynomials


class UniPoly:
    """Dense univariate polynomial; ``coeffs[i]`` is the coefficient of z^i.

    The zero polynomial has ``coeffs == ()`` and degree -1 (sentinel).
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_as_rational(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def constant(cls, c) -> "UniPoly":
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Iterable) -> "UniPoly":
        """Monic polynomial prod (z - r) over the given roots."""
        p = cls([1])
        for r in roots:
            p = p * cls([-_as_rational(r), 1])
        return p

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        if self.is_zero or other.is_zero:
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return UniPoly(out)

    def __call__(self, z) -> Fraction:
        z = _as_rational(z)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc

    def __eq__(self, other) -> bool:
        return isinstance(other, UniPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"UniPoly({list(self.coeffs)!r})"


def series_expand_at_infinity(numer: UniPoly, denom: UniPoly, order: int) -> list:
    """Expand numer/denom around z = infinity.

    Returns coefficients ``a_0, ..., a_order`` where the expansion is
    ``sum_j a_j z^(d - j)`` with ``d = deg(numer) - deg(denom)``.  Requires a
    monic nonzero denominator and ``deg(numer) <= deg(denom) + 1``.
    """
    if denom.is_zero:
        raise InvalidInputError("denominator is zero")
    if not denom.is_monic:
        raise InvalidInputError("denominator must be monic")
    if numer.degree > denom.degree + 1:
        raise InvalidInputError("numerator degree exceeds denominator degree + 1")
    if order < 0:
        raise InvalidInputError("order must be >= 0")
    if numer.is_zero:
        return [Fraction(0)] * (order + 1)
    # In the variable w = 1/z both become power series with invertible
    # denominator: n(w) = sum numer[deg-j] w^j, likewise d(w) with d(0) = 1.
    n = [numer.coeffs[numer.degree - j] if j <= numer.degree else Fraction(0)
         for j in range(order + 1)]
    d = [denom.coeffs[denom.degree - j] if j <= denom.degree else Fraction(0)
         for j in range(order + 1)]
    out = []
    for j in range(order + 1):
        c = n[j]
        for i in range(1, j + 1):
            c -= d[i] * out[j - i]
        out.append(c)
    return out


# ---------------------------------------------------------------------------
# truncated power series helpers (coefficient lists in a formal variable u)


def series_mul(a: Sequence, b: Sequence, order: int) -> list:
    """Product of two power series, truncated to u^order inclusive."""
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x == 0:
            continue
        for j, y in enumerate(b[: order + 1 - i]):
            if y:
                out[i + j] += x * y
    return out

def series_inverse(a: Sequence, order: int) -> list:
    """Multiplicative inverse of a power series with a[0] != 0."""
    if not a or a[0] == 0:
        raise InvalidInputError("series has no inverse (zero constant term)")
    inv0 = Fraction(1, 1) / a[0]
    out = [inv0]
    for j in range(1, order + 1):
        c = Fraction(0)
        for i in range(1, j + 1):
            ai = a[i] if i < len(a) else Fraction(0)
            c += ai * out[j - i]
        out.append(-inv0 * c)
    return out


# ---------------------------------------------------------------------------
# sparse graded polynomials in an indexed variable family

# weight of variable index i in each family
_FAMILY_WEIGHT: dict[str, Callable[[int], int]] = {
    "x": lambda i: i - 2,
    "y": lambda i: i,
    "c": lambda i: i,
}


class GradedPolynomial:
    """Sparse polynomial in a countable variable family ``x_i``/``y_i``/``c_i``.

    Monomials are stored as sorted tuples of variable indices (a multiset),
    mapping to rational coefficients; zero coefficients are dropped.  Each
    family carries a weight function on indices, giving the weighted degree.
    """

    __slots__ = ("family", "terms")

    def __init__(self, family: str, terms: Mapping[tuple, object] | None = None):
        if family not in _FAMILY_WEIGHT:
            raise InvalidInputError(f"unknown variable family {family!r}")
        self.family = family
        clean: dict[tuple, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                c = _as_rational(coeff)
                if c == 0:
                    continue
                key = tuple(sorted(mono))
                clean[key] = clean.get(key, Fraction(0)) + c
                if clean[key] == 0:
                    del clean[key]
        self.terms = clean

    @classmethod
    def zero(cls, family: str) -> "GradedPolynomial":
        return cls(family)

    @classmethod
    def constant(cls, family: str, value) -> "GradedPolynomial":
        return cls(family, {(): value})

    @classmethod
    def variable(cls, family: str, index: int) -> "GradedPolynomial":
        return cls(family, {(index,): 1})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def monomial_weight(self, mono: tuple) -> int:
        w = _FAMILY_WEIGHT[self.family]
        return sum(w(i) for i in mono)

    def weighted_degree(self) -> int | None:
        """Max weighted degree over monomials; None for the zero polynomial."""
        if not self.terms:
            return None
        return max(self.monomial_weight(m) for m in self.terms)

    def total_degree(self) -> int | None:
        if not self.terms:
            return None
        return max(len(m) for m in self.terms)

    def support_indices(self) -> set:
        out = set()
        for m in self.terms:
            out.update(m)
        return out

    def _check_same_family(self, other: "GradedPolynomial") -> None:
        if self.family != other.family:
            raise InvalidInputError(
                f"mixed variable families {self.family!r} and {other.family!r}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedPolynomial.constant(self.family, other)
        self._check_same_family(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return GradedPolynomial(self.family, out)

    def __radd__(self, other):
        return self + other

    def __neg__(self):
        return GradedPolynomial(self.family, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GradedPolynomial.constant(self.family, other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return GradedPolynomial(
                self.family, {m: c * other for m, c in self.terms.items()})
        self._check_same_family(other)
        out: dict[tuple, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                key = tuple(sorted(m1 + m2))
                out[key] = out.get(key, Fraction(0)) + c1 * c2
        return GradedPolynomial(self.family, out)

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other) -> bool:
        return (isinstance(other, GradedPolynomial)
                and self.family == other.family and self.terms == other.terms)

    def __hash__(self) -> int:
        return hash((self.family, frozenset(self.terms.items())))

    def substitute(self, values: Mapping[int, object]) -> Fraction:
        """Evaluate by substituting a rational for each variable index."""
        acc = Fraction(0)
        for mono, coeff in self.terms.items():
            term = coeff
            for i in mono:
                term *= _as_rational(values[i])
            acc += term
        return acc

    def relabel(self, family: str,
                index_fn: Callable[[int], int] = lambda i: i,
                coeff_fn: Callable[[tuple], object] = lambda mono: 1,
                ) -> "GradedPolynomial":
        """Map to another family: each monomial's indices pass through
        ``index_fn`` and its coefficient is multiplied by ``coeff_fn(mono)``."""
        out: dict[tuple, Fraction] = {}
        for mono, coeff in self.terms.items():
            key = tuple(sorted(index_fn(i) for i in mono))
            c = coeff * _as_rational(coeff_fn(mono))
            out[key] = out.get(key, Fraction(0)) + c
        return GradedPolynomial(family, out)

    def has_integer_coefficients(self) -> bool:
        return all(c.denominator == 1 for c in self.terms.values())

    def has_nonnegative_coefficients(self) -> bool:
        return all(c >= 0 for c in self.terms.values())

    def sorted_terms(self) -> list:
        """Terms in canonical print order: weighted degree descending, then
        monomial length descending, then indices lexicographically."""
        return sorted(self.terms.items(),
                      key=lambda kv: (-self.monomial_weight(kv[0]),
                                      -len(kv[0]), kv[0]))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for mono, coeff in self.sorted_terms():
            factors = []
            i = 0
            while i < len(mono):
                j = i
                while j < len(mono) and mono[j] == mono[i]:
                    j += 1
                e = j - i
                factors.append(f"{self.family}{mono[i]}"
                               + (f"^{e}" if e > 1 else ""))
                i = j
            mag = abs(coeff)
            body = "*".join(factors)
            if not body:
                body = str(mag)
            elif mag != 1:
                body = f"{mag}*{body}"
            if not pieces:
                pieces.append(body if coeff > 0 else f"-{body}")
            else:
                pieces.append(("+ " if coeff > 0 else "- ") + body)
        return " ".join(pieces)

    def __repr__(self) -> str:
        return f"GradedPolynomial({self.family!r}, {self.terms!r})"


def apply_iota(p: GradedPolynomial) -> GradedPolynomial:
    """Algebra involution sending each variable v_k to (-1)^k v_k."""
    return p.relabel(p.family, coeff_fn=lambda mono: (-1) ** (sum(mono) % 2))


def iota_eigenvalue(p: GradedPolynomial) -> int | None:
    """Return +1 or -1 if p is an eigenvector of the involution, else None."""
    if p.is_zero:
        return 1
    q = apply_iota(p)
    if q == p:
        return 1
    if q == -p:
        return -1
    return None


# ---------------------------------------------------------------------------
# exact linear algebra


class RationalMatrix:
    """Immutable dense matrix of exact rationals."""

    __slots__ = ("entries",)

    def __init__(self, rows: Iterable[Iterable]):
        rs = tuple(tuple(_as_rational(x) for x in row) for row in rows)
        if rs:
            width = len(rs[0])
            if any(len(r) != width for r in rs):
                raise InvalidInputError("ragged matrix rows")
        self.entries = rs

    @property
    def nrows(self) -> int:
        return len(self.entries)

    @property
    def ncols(self) -> int:
        return len(self.entries[0]) if self.entries else 0

    def row(self, i: int) -> tuple:
        return self.entries[i]

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.entries == other.entries

    def __repr__(self) -> str:
        return f"RationalMatrix({[list(r) for r in self.entries]!r})"


@dataclass(frozen=True)
class SolveResult:
    """Outcome of an exact overdetermined solve.

    status is "ok" (unique solution returned), "rank_deficient" (columns are
    not independent on the given rows; more rows are needed to pin down a
    unique solution), or "inconsistent" (no solution exists at all).
    """
    status: str
    solution: tuple | None
    rank: int


def _integer_row(row: Sequence[Fraction]) -> list[int]:
    scale = 1
    for x in row:
        scale = scale * x.denominator // gcd(scale, x.denominator)
    return [int(x * scale) for x in row]


def matrix_rank(rows: Sequence[Sequence]) -> int:
    """Rank of a list of rational rows, by fraction-free elimination."""
    m = [_integer_row([_as_rational(x) for x in row]) for row in rows]
    if not m:
        return 0
    return _bareiss(m, len(m[0]))[0]


def _bareiss(m: list[list[int]], ncols_eliminate: int) -> tuple[int, list[int]]:
    """In-place fraction-free row echelon reduction (Bareiss one-step).

    Eliminates on the first ``ncols_eliminate`` columns only; any further
    columns (e.g. an augmented right-hand side) are carried along.  Returns
    (rank, pivot column list).
    """
    nrows = len(m)
    width = len(m[0]) if m else 0
    prev = 1
    r = 0
    pivots: list[int] = []
    for c in range(ncols_eliminate):
        pr = None
        for i in range(r, nrows):
            if m[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            m[r], m[pr] = m[pr], m[r]
        piv = m[r][c]
        for i in range(r + 1, nrows):
            mic = m[i][c]
            for j in range(c, width):
                m[i][j] = (m[i][j] * piv - mic * m[r][j]) // prev
        prev = piv
        pivots.append(c)
        r += 1
    return r, pivots


def solve_exact(a: RationalMatrix, b: Sequence) -> SolveResult:
    """Solve the (possibly overdetermined) system a x = b exactly.

    Requires at least as many rows as columns.  Uses fraction-free integer
    elimination after clearing denominators, then exact back substitution.
    """
    rhs = [_as_rational(x) for x in b]
    if len(rhs) != a.nrows:
        raise InvalidInputError("right-hand side length does not match rows")
    n = a.ncols
    if a.nrows < n:
        raise InvalidInputError("system must have at least as many rows as columns")
    m = [_integer_row(list(a.row(i)) + [rhs[i]]) for i in range(a.nrows)]
    if n == 0:
        status = "ok" if all(row[-1] == 0 for row in m) else "inconsistent"
        return SolveResult(status, () if status == "ok" else None, 0)
    rank, pivots = _bareiss(m, n)
    for i in range(rank, a.nrows):
        if m[i][-1] != 0:
            return SolveResult("inconsistent", None, rank)
    if rank < n:
        return SolveResult("rank_deficient", None, rank)
    x = [Fraction(0)] * n
    for r in range(rank - 1, -1, -1):
        c = pivots[r]
        s = Fraction(m[r][-1])
        for j in range(c + 1, n):
            s -= m[r][j] * x[j]
        x[c] = s / m[r][c]
    # guard against any elimination slip: every original row must be satisfied
    for i in range(a.nrows):
        if sum(a.entries[i][j] * x[j] for j in range(n)) != rhs[i]:
            return SolveResult("inconsistent", None, rank)
    return SolveResult("ok", tuple(x), rank)
