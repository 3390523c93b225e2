"""Exact observables of Young diagrams.

A diagram's profile (drawn with boxes rotated 45 degrees) is encoded by two
interlacing integer sequences: the local minima are the contents of the cells
that can be added, the local maxima the contents of the cells that can be
removed.  From these we derive the diagram's transition measure, its moments,
its Boolean and free cumulant sequences, and the normalized irreducible
characters of the symmetric group.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .combinatorics import Partition
from .exactmath import (Fraction, InvalidInputError, UniPoly, Rational,
                        series_expand_at_infinity, series_inverse, series_mul)


@dataclass(frozen=True)
class Profile:
    """Interlacing minima x_1 < y_1 < x_2 < ... < x_n with sum x = sum y."""
    minima: tuple[int, ...]
    maxima: tuple[int, ...]

    def __post_init__(self):
        xs, ys = self.minima, self.maxima
        if len(xs) != len(ys) + 1:
            raise InvalidInputError("need exactly one more minimum than maxima")
        merged = [v for pair in zip(xs, ys) for v in pair] + [xs[-1]]
        if any(merged[i] >= merged[i + 1] for i in range(len(merged) - 1)):
            raise InvalidInputError("profile coordinates must interlace strictly")
        if sum(xs) != sum(ys):
            raise InvalidInputError("minima and maxima must have equal sums")


def profile_coordinates(lam: Partition) -> Profile:
    """Contents of addable cells (minima) and removable cells (maxima)."""
    parts = lam.parts
    m = len(parts)
    minima = []
    maxima = []
    for i in range(1, m + 2):  # row index, 1-based; row m+1 is empty
        cur = parts[i - 1] if i <= m else 0
        prev = parts[i - 2] if i >= 2 else None
        nxt = parts[i] if i < m else 0
        if i <= m + 1 and (prev is None or cur < prev):
            minima.append(cur + 1 - i)
        if i <= m and cur > nxt:
            maxima.append(cur - i)
    return Profile(tuple(sorted(minima)), tuple(sorted(maxima)))


@dataclass(frozen=True)
class TransitionMeasure:
    """Probability measure on the profile minima, exact rational weights."""
    atoms: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        if any(w <= 0 for _, w in self.atoms):
            raise InvalidInputError("transition measure weights must be positive")
        if sum(w for _, w in self.atoms) != 1:
            raise InvalidInputError("transition measure weights must sum to 1")
        if sum(x * w for x, w in self.atoms) != 0:
            raise InvalidInputError("transition measure must be centered")

    def moment(self, k: int) -> Fraction:
        return sum((w * x ** k for x, w in self.atoms), Fraction(0))


def cauchy_transform(lam: Partition) -> tuple[UniPoly, UniPoly]:
    """Numerator and denominator of prod(z - y_j) / prod(z - x_i)."""
    prof = profile_coordinates(lam)
    return UniPoly.from_roots(prof.maxima), UniPoly.from_roots(prof.minima)


def transition_measure(lam: Partition) -> TransitionMeasure:
    prof = profile_coordinates(lam)
    xs, ys = prof.minima, prof.maxima
    atoms = []
    for i, x in enumerate(xs):
        num = 1
        for y in ys:
            num *= x - y
        den = 1
        for j, x2 in enumerate(xs):
            if j != i:
                den *= x - x2
        atoms.append((x, Fraction(num, den)))
    return TransitionMeasure(tuple(atoms))


@dataclass(frozen=True)
class ObservableVector:
    """Values of one observable family; kind is "moment", "boolean",
    "twisted" or "free".  values[j] holds index k = start + j."""
    kind: str
    start: int
    values: tuple[Fraction, ...]

    def __getitem__(self, k: int) -> Fraction:
        if k < self.start or k >= self.start + len(self.values):
            raise InvalidInputError(f"index {k} outside computed range")
        return self.values[k - self.start]

    @property
    def max_index(self) -> int:
        return self.start + len(self.values) - 1


def moments(lam: Partition, max_k: int) -> ObservableVector:
    """Moments M_1..M_max_k of the transition measure (M_1 = 0, M_2 = |lam|)."""
    if max_k < 1:
        raise InvalidInputError("max_k must be >= 1")
    numer, denom = cauchy_transform(lam)
    cs = series_expand_at_infinity(numer, denom, max_k)
    # here deg numer - deg denom = -1 and cs[0] = 1, cs[k] = M_k
    return ObservableVector("moment", 1, tuple(cs[1:]))


def boolean_cumulants(lam: Partition, max_k: int) -> ObservableVector:
    """Boolean cumulants B_1..B_max_k, from 1/G = z - sum_k B_k z^(1-k)."""
    if max_k < 1:
        raise InvalidInputError("max_k must be >= 1")
    numer, denom = cauchy_transform(lam)
    cs = series_expand_at_infinity(denom, numer, max_k)
    # cs[j] is the z^(1-j) coefficient of 1/G, so B_j = -cs[j] for j >= 1
    return ObservableVector("boolean", 1, tuple(-c for c in cs[1:]))


def twisted_boolean_cumulants(lam: Partition, max_k: int) -> ObservableVector:
    b = boolean_cumulants(lam, max_k)
    return ObservableVector("twisted", 1, tuple(-v for v in b.values))


def free_cumulants(lam: Partition, max_k: int) -> ObservableVector:
    """Free cumulants R_2..R_max_k via compositional inversion of G.

    Writing the inverse K(u) = u^(-1) (1 + sum_{k>=1} a_k u^k), the identity
    G(K(u)) = u determines each a_k in turn from the u^(k+1) coefficient of
    sum_j M_j u^(j+1) (1 + sum a_i u^i)^(-j-1); then R_k = a_k for k >= 2.
    """
    if max_k < 2:
        raise InvalidInputError("max_k must be >= 2")
    order = max_k + 1
    mom = moments(lam, max_k)
    m = [Fraction(1)] + [mom[j] for j in range(1, max_k + 1)]
    a = [Fraction(0)] * (max_k + 1)  # a[0] unused

    def composite_coeff(target: int) -> Fraction:
        phi = [Fraction(1)] + a[1:order]
        inv = series_inverse(phi, order)
        total = Fraction(0)
        power = [Fraction(1)] + [Fraction(0)] * order  # inv^(j+1) built up
        for j in range(0, max_k + 1):
            power = series_mul(power, inv, order)
            if target - (j + 1) >= 0:
                total += m[j] * power[target - (j + 1)]
        return total

    for k in range(1, max_k + 1):
        # with a[k] still 0, the true u^(k+1) coefficient is short by -a[k]
        a[k] = composite_coeff(k + 1)
    if a[1] != 0:
        raise InvalidInputError("transition measure is not centered")
    return ObservableVector("free", 2, tuple(a[2:max_k + 1]))


def moment_cumulant_check(lam: Partition, max_k: int) -> bool:
    """Verify M_{k+1} = sum_{i=0}^{k-1} M_i B_{k+1-i} for 1 <= k < max_k."""
    m = moments(lam, max_k)
    b = boolean_cumulants(lam, max_k)
    mv = [Fraction(1)] + list(m.values)
    for k in range(1, max_k):
        rhs = sum((mv[i] * b[k + 1 - i] for i in range(k)), Fraction(0))
        if mv[k + 1] != rhs:
            return False
    return True


# ---------------------------------------------------------------------------
# symmetric group characters

_mn_cache: dict[tuple[tuple[int, ...], tuple[int, ...]], int] = {}
_dim_cache: dict[tuple[int, ...], int] = {}


def clear_character_caches() -> None:
    _mn_cache.clear()
    _dim_cache.clear()


def _remove_strip(lam: tuple[int, ...], t: int):
    """Yield (sign, smaller partition) over all border strips of size t.

    Works on first-column hook lengths beta_i = lam_i + (m - 1 - i): removing
    a strip of size t replaces some beta by beta - t, with sign (-1)^h where
    h counts the betas strictly in between.
    """
    m = len(lam)
    betas = [lam[i] + (m - 1 - i) for i in range(m)]
    beta_set = set(betas)
    for i, beta in enumerate(betas):
        nb = beta - t
        if nb < 0 or nb in beta_set:
            continue
        height = sum(1 for b in betas if nb < b < beta)
        new = sorted((beta_set - {beta}) | {nb}, reverse=True)
        parts = tuple(b - (m - 1 - j) for j, b in enumerate(new))
        parts = tuple(p for p in parts if p > 0)
        yield (-1) ** height, parts


def _mn_value(lam: tuple[int, ...], rho: tuple[int, ...]) -> int:
    """Unnormalized character chi^lam(rho) by the border-strip recursion."""
    if not rho:
        return 1 if not lam else 0
    key = (lam, rho)
    val = _mn_cache.get(key)
    if val is not None:
        return val
    t, rest = rho[0], rho[1:]
    total = 0
    for sign, smaller in _remove_strip(lam, t):
        total += sign * _mn_value(smaller, rest)
    _mn_cache[key] = total
    return total


def character_dimension(lam: Partition) -> int:
    """Dimension of the irreducible representation indexed by lam."""
    key = lam.parts
    val = _dim_cache.get(key)
    if val is None:
        val = _mn_value(key, (1,) * lam.size)
        _dim_cache[key] = val
    return val


def mn_character(lam: Partition, rho: Partition) -> Fraction:
    """Normalized character chi^lam(rho) / chi^lam(identity)."""
    if lam.size != rho.size:
        raise InvalidInputError("character arguments must partition the same n")
    if lam.size == 0:
        return Fraction(1)
    return Fraction(_mn_value(lam.parts, rho.parts), character_dimension(lam))


def falling_factorial(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


def normalized_character(pi: Partition, lam: Partition) -> Fraction:
    """The character polynomial value Sigma_pi(lam).

    For |lam| >= |pi| this is (n falling |pi|) times the normalized character
    on the class of pi padded with fixed points; it vanishes for |lam| < |pi|.
    The result is always an integer.
    """
    n, k = lam.size, pi.size
    if n < k:
        return Fraction(0)
    val = falling_factorial(n, k) * mn_character(lam, pi.pad_to(n))
    assert val.denominator == 1, f"Sigma_{pi}({lam}) is not an integer: {val}"
    return val
