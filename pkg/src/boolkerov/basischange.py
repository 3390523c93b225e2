"""Change of basis between normalized characters and Boolean cumulants.

Both directions are computed by exact linear algebra over evaluations: the
target function of the diagram is sampled on every partition of successive
sizes until the candidate monomials (or character functions) become linearly
independent, the square-free system is solved exactly, and two further sizes
of held-out evaluations confirm the solution.

The two operations are

* ``boolean_kerov_polynomial(pi)`` -- the polynomial P_pi with
  (-1)^len(pi) Sigma_pi = P_pi(Bhat_2, Bhat_3, ...) in the sign-twisted
  Boolean cumulants Bhat_k = -B_k, represented over variables x_k |-> Bhat_k;
* ``boolean_in_characters(k)`` -- the expansion B_k = sum_pi m_pi Sigma_pi.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import observables
from .combinatorics import Partition, enumerate_partitions, reflection_length_of_type
from .exactmath import (GradedPolynomial, InconsistentSystemError,
                        InvalidInputError, RationalMatrix, iota_eigenvalue,
                        matrix_rank, solve_exact)

_MAX_SAMPLE_SIZE = 24  # safety bound on the diagram sizes used for sampling


@dataclass(frozen=True)
class MonomialBasis:
    """Monomials in variables x_2..x_(w+2) of weighted degree at most w
    (weight of x_i is i - 2) and total degree at most a given cap."""
    weight_bound: int
    total_degree_cap: int
    monomials: tuple[tuple[int, ...], ...]

    @classmethod
    def build(cls, weight_bound: int, total_degree_cap: int) -> "MonomialBasis":
        if weight_bound < 0 or total_degree_cap < 0:
            raise InvalidInputError("degree bounds must be >= 0")
        indices = range(2, weight_bound + 3)
        found: list[tuple[int, ...]] = []
        for deg in range(total_degree_cap + 1):
            for mono in itertools.combinations_with_replacement(indices, deg):
                if sum(i - 2 for i in mono) <= weight_bound:
                    found.append(mono)
        return cls(weight_bound, total_degree_cap, tuple(found))


# per-diagram cache of twisted Boolean cumulant values
_bhat_cache: dict[tuple[tuple[int, ...], int], tuple[Fraction, ...]] = {}
_sigma_cache: dict[tuple[tuple[int, ...], tuple[int, ...]], Fraction] = {}


def clear_caches() -> None:
    _bhat_cache.clear()
    _sigma_cache.clear()


def _bhat_values(lam: Partition, max_k: int) -> tuple[Fraction, ...]:
    """(Bhat_1, ..., Bhat_max_k) for the given diagram, cached."""
    key = (lam.parts, max_k)
    vals = _bhat_cache.get(key)
    if vals is None:
        vals = observables.twisted_boolean_cumulants(lam, max_k).values
        _bhat_cache[key] = vals
    return vals


def _sigma_value(pi: Partition, lam: Partition) -> Fraction:
    key = (pi.parts, lam.parts)
    val = _sigma_cache.get(key)
    if val is None:
        val = observables.normalized_character(pi, lam)
        _sigma_cache[key] = val
    return val


def _solve_by_evaluation(row_fn, target_fn, num_unknowns: int, label: str):
    """Sample rows over all diagrams of size 0, 1, 2, ... until full column
    rank, solve exactly, then verify on two further held-out sizes."""
    rows: list[tuple[Fraction, ...]] = []
    rhs: list[Fraction] = []
    size = 0
    while True:
        for lam in enumerate_partitions(size):
            rows.append(tuple(row_fn(lam)))
            rhs.append(target_fn(lam))
        size += 1
        if len(rows) >= num_unknowns and matrix_rank(rows) == num_unknowns:
            break
        if size > _MAX_SAMPLE_SIZE:
            raise InconsistentSystemError(
                f"{label}: evaluation rows never reached full rank "
                f"({matrix_rank(rows)} of {num_unknowns})")
    result = solve_exact(RationalMatrix(rows), rhs)
    if result.status != "ok":
        raise InconsistentSystemError(f"{label}: solve failed ({result.status})")
    for heldout in (size, size + 1):
        for lam in enumerate_partitions(heldout):
            row = tuple(row_fn(lam))
            lhs = sum((r * x for r, x in zip(row, result.solution)), Fraction(0))
            if lhs != target_fn(lam):
                raise InconsistentSystemError(
                    f"{label}: held-out evaluation at {lam} disagrees")
    return result.solution


def boolean_kerov_polynomial(pi: Partition,
                             total_degree_cap: int | None = None,
                             ) -> GradedPolynomial:
    """P_pi with (-1)^len(pi) Sigma_pi = P_pi evaluated at x_k = Bhat_k."""
    weight = reflection_length_of_type(pi) if pi.size else 0
    cap = pi.size if total_degree_cap is None else total_degree_cap
    basis = MonomialBasis.build(weight, cap)
    max_k = weight + 2
    sign = (-1) ** pi.length

    def row_fn(lam: Partition):
        vals = _bhat_values(lam, max_k)
        out = []
        for mono in basis.monomials:
            term = Fraction(1)
            for i in mono:
                term *= vals[i - 1]
            out.append(term)
        return out

    def target_fn(lam: Partition) -> Fraction:
        return sign * _sigma_value(pi, lam)

    solution = _solve_by_evaluation(row_fn, target_fn, len(basis.monomials),
                                    f"character-to-cumulant expansion of {pi}")
    return GradedPolynomial("x", dict(zip(basis.monomials, solution)))


def _character_candidates(k: int, restrict_parity: bool) -> list[Partition]:
    """Partitions pi that may appear in the expansion of B_k: size at most
    k - 1, size minus length at most k - 2, and matching parity."""
    out = []
    for size in range(0, k):
        for pi in enumerate_partitions(size):
            w = reflection_length_of_type(pi)
            if w > k - 2:
                continue
            if restrict_parity and (w - k) % 2 != 0:
                continue
            out.append(pi)
    return out


def boolean_in_characters(k: int, restrict_parity: bool = True,
                          ) -> dict[Partition, Fraction]:
    """Coefficients m_pi with B_k = sum_pi m_pi Sigma_pi (zeros dropped)."""
    if k < 2:
        raise InvalidInputError("defined for k >= 2")
    candidates = _character_candidates(k, restrict_parity)

    def row_fn(lam: Partition):
        return [_sigma_value(pi, lam) for pi in candidates]

    def target_fn(lam: Partition) -> Fraction:
        return observables.boolean_cumulants(lam, k)[k]

    solution = _solve_by_evaluation(row_fn, target_fn, len(candidates),
                                    f"cumulant-to-character expansion of B_{k}")
    return {pi: c for pi, c in zip(candidates, solution) if c != 0}


@dataclass
class TheoremReport:
    """Structural checks on the computed expansions."""
    checks: list[dict] = field(default_factory=list)

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append({"name": name, "passed": bool(passed), "detail": detail})

    @property
    def all_passed(self) -> bool:
        return all(c["passed"] for c in self.checks)


def verify_theorems(max_pi_size: int, max_k: int) -> TheoremReport:
    """Check every structural property of the two expansion families:
    integrality and non-negativity of all coefficients, the weighted degree
    and support bounds, the sign-involution eigenvalue of each P_pi, and the
    parity/support constraints of each B_k expansion."""
    report = TheoremReport()
    for size in range(1, max_pi_size + 1):
        for pi in enumerate_partitions(size):
            p = boolean_kerov_polynomial(pi)
            w = reflection_length_of_type(pi)
            report.add(f"P_{pi} integer coefficients", p.has_integer_coefficients(),
                       str(p))
            report.add(f"P_{pi} nonnegative coefficients",
                       p.has_nonnegative_coefficients(), str(p))
            wd = p.weighted_degree()
            report.add(f"P_{pi} weighted degree <= {w}",
                       wd is not None and wd <= w, f"degree {wd}")
            support = p.support_indices()
            report.add(f"P_{pi} support in x_2..x_{w + 2}",
                       all(2 <= i <= w + 2 for i in support), str(sorted(support)))
            eig = iota_eigenvalue(p)
            report.add(f"P_{pi} sign-involution eigenvalue {(-1) ** w}",
                       eig == (-1) ** w, f"eigenvalue {eig}")
    for k in range(2, max_k + 1):
        coeffs = boolean_in_characters(k)
        ok_int = all(c.denominator == 1 for c in coeffs.values())
        report.add(f"B_{k} expansion integer coefficients", ok_int, str(coeffs))
        report.add(f"B_{k} expansion nonnegative coefficients",
                   all(c >= 0 for c in coeffs.values()), str(coeffs))
        ok_support = all(pi.size <= k - 1
                         and reflection_length_of_type(pi) <= k - 2
                         and (reflection_length_of_type(pi) - k) % 2 == 0
                         for pi in coeffs)
        report.add(f"B_{k} expansion support and parity", ok_support,
                   str(sorted(coeffs)))
        unrestricted = boolean_in_characters(k, restrict_parity=False)
        report.add(f"B_{k} expansion stable without parity restriction",
                   unrestricted == coeffs, str(unrestricted))
    return report
