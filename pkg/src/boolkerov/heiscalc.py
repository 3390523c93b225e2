"""Diagrammatic rewriting route to the cumulant/character expansions.

Closed diagrams live in a free polynomial ring on generators c_0, c_1, ...
(one generator per dotted-circle count).  This module implements the
rewriting recursions on closed diagram configurations:

* ``bubble_move_step`` / ``bubble_move_full`` -- moving a dotted bubble from
  one side of a strand to the other, depositing dots and lower bubbles;
* ``reduce_alpha`` -- reducing the closed diagram of a partition with dotted
  nested arcs to a polynomial in the c-generators, returned (after the sign
  twist c_j -> -y_j) as a polynomial in the y-family;
* ``expand_dotted_strand`` -- expanding a strand carrying k dots into a
  non-negative combination of permutation diagrams, whose class aggregates
  reproduce the character expansion of the Boolean cumulant B_{k+2};
* ``evaluate_center`` -- the bridge c_k |-> B_{k+2}(lambda) to functions on
  Young diagrams, used to cross-check every rewrite against `basischange`.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping

from . import observables
from .combinatorics import Partition, Permutation, cycle_type, reflection_length
from .exactmath import Fraction, GradedPolynomial, InvalidInputError

# A CenterElement is a GradedPolynomial over the c-family (weight of c_i is i).
CenterElement = GradedPolynomial


class RewriteInvariantError(RuntimeError):
    """A rewrite produced a value a structural theorem forbids."""


def c_variable(k: int) -> CenterElement:
    return GradedPolynomial.variable("c", k)


def c_constant(value) -> CenterElement:
    return GradedPolynomial.constant("c", value)


# extra dots deposited when a curl is resolved across a crossing; the
# structural constant of the dot-slide rule (changing it breaks every
# downstream identity, which the mutation tests rely on)
_CURL_EXTRA_DOTS = 1


# ---------------------------------------------------------------------------
# diagram states

# One configuration is (arcs, bubbles): ``arcs`` lists the dot count of each
# nested strand-arc, innermost first; ``bubbles`` is a sorted tuple of
# (dot count, position), position p meaning the bubble floats between arc p
# and arc p+1 (position 0 = inside everything, position m = fully outside).
Config = tuple[tuple[int, ...], tuple[tuple[int, int], ...]]


def make_config(arcs, bubbles=()) -> Config:
    arcs = tuple(int(d) for d in arcs)
    bubbles = tuple(sorted((int(d), int(p)) for d, p in bubbles))
    if any(d < 0 for d in arcs) or any(d < 0 for d, _ in bubbles):
        raise InvalidInputError("dot counts must be non-negative")
    if any(not 0 <= p <= len(arcs) for _, p in bubbles):
        raise InvalidInputError("bubble position outside 0..m")
    return (arcs, bubbles)


class DiagramState:
    """Immutable formal integer combination of configurations."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[Config, int] | None = None):
        clean = {}
        if coeffs:
            for cfg, c in coeffs.items():
                if c != 0:
                    clean[cfg] = int(c)
        self.coeffs = clean

    def items(self):
        return self.coeffs.items()

    def __eq__(self, other) -> bool:
        return isinstance(other, DiagramState) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        return f"DiagramState({self.coeffs!r})"


def bubble_move_step(k: int) -> DiagramState:
    """One-step move of a k-dotted bubble from inside an arc to outside.

    [arc, bubble(k) inside] rewrites to [bubble(k) outside, arc]
    - (k+1) [arc with k dots] + sum_{b=0}^{k-2} (b+1) [arc with b dots,
    bubble(k-2-b) inside].
    """
    if k < 0:
        raise InvalidInputError("dot count must be >= 0")
    out: Counter = Counter()
    out[make_config((0,), [(k, 1)])] += 1
    out[make_config((k,), [])] -= k + 1
    for b in range(k - 1):
        out[make_config((b,), [(k - 2 - b, 0)])] += b + 1
    return DiagramState(out)


_full_cache: dict[int, tuple[dict, dict]] = {}


def bubble_move_full(k: int) -> tuple[dict[tuple[int, int], int], dict[int, int]]:
    """Fully reduced move of a k-dotted inside bubble across one arc.

    Returns (m, n) with the rewrite
    sum m[(i, j)] [bubble(i) outside, arc with j dots]
    - sum n[l] [arc with l dots]; all entries are non-negative.
    """
    if k < 0:
        raise InvalidInputError("dot count must be >= 0")
    cached = _full_cache.get(k)
    if cached is not None:
        return cached
    m: Counter = Counter()
    n: Counter = Counter()
    work = [(1, 0, k)]  # (coefficient, dots already on the arc, bubble dots)
    while work:
        coeff, d, j = work.pop()
        m[(j, d)] += coeff
        n[d + j] += (j + 1) * coeff
        for b in range(j - 1):
            work.append(((b + 1) * coeff, d + b, j - 2 - b))
    m = {key: c for key, c in m.items() if c}
    n = {key: c for key, c in n.items() if c}
    if any(c < 0 for c in m.values()) or any(c < 0 for c in n.values()):
        raise RewriteInvariantError(
            f"bubble move of {k} dots produced a negative coefficient: {m} {n}")
    _full_cache[k] = (m, n)
    return m, n


def _cross_one_arc(coeff: int, j: int) -> list[tuple[int, int, int | None]]:
    """Move a j-dotted bubble across one arc.

    Yields (coefficient, dots deposited on the arc, surviving bubble dots or
    None if the bubble was absorbed)."""
    m, n = bubble_move_full(j)
    out = [(coeff * c, dep, i) for (i, dep), c in m.items()]
    out += [(-coeff * c, dep, None) for dep, c in n.items()]
    return out


def _extract_bubble(arcs: tuple[int, ...], pos: int, j: int, coeff: int,
                    ) -> list[tuple[int, tuple[int, ...], int | None]]:
    """Extract a j-dotted bubble at the given position through all remaining
    arcs; returns (coefficient, updated arc dots, escaped bubble dots or None
    if absorbed)."""
    if pos == len(arcs):
        return [(coeff, arcs, j)]
    out = []
    for c2, deposited, survivor in _cross_one_arc(coeff, j):
        new_arcs = arcs[:pos] + (arcs[pos] + deposited,) + arcs[pos + 1:]
        if survivor is None:
            out.append((c2, new_arcs, None))
        else:
            out.extend(_extract_bubble(new_arcs, pos + 1, survivor, c2))
    return out


# ---------------------------------------------------------------------------
# reduction of dotted nested-arc diagrams

_alpha_cache: dict[tuple, GradedPolynomial] = {}


def clear_caches() -> None:
    _full_cache.clear()
    _alpha_cache.clear()
    _expand_cache.clear()


def alpha_center(pi_parts: tuple[int, ...], dots: tuple[int, ...],
                 schedule: str = "innermost") -> CenterElement:
    """The closed diagram of the partition with the given strand dots,
    reduced to a polynomial in the c-generators.

    ``dots`` lists the dot count of each strand, outermost arc first.  The
    schedule chooses which of several coexisting inner bubbles is extracted
    first; the result is schedule-independent.
    """
    if schedule not in ("innermost", "outermost"):
        raise InvalidInputError(f"unknown schedule {schedule!r}")
    if len(dots) != sum(pi_parts):
        raise InvalidInputError("need one dot count per strand")
    if any(d < 0 for d in dots):
        raise InvalidInputError("dot counts must be non-negative")
    key = (pi_parts, dots, schedule)
    cached = _alpha_cache.get(key)
    if cached is not None:
        return cached
    if not pi_parts:
        result = c_constant(1)
    elif len(pi_parts) == 1:
        r = pi_parts[0]
        if r == 1:
            result = c_variable(dots[0])
        else:
            # resolve the curl between the two innermost strands: their dot
            # groups merge (plus the extra dot the crossing deposits), minus
            # one bubble term per dot on the last strand
            merged = dots[-2] + dots[-1] + _CURL_EXTRA_DOTS
            result = alpha_center((r - 1,), dots[:-2] + (merged,), schedule)
            for b in range(dots[-1]):
                inner = dots[:-2] + (dots[-2] + dots[-1] - b - 1,)
                result = result - _with_inner_bubbles((r - 1,), inner, (b,),
                                                      schedule)
    else:
        tilde = pi_parts[:-1]
        outer = sum(tilde)
        inner_poly = alpha_center((pi_parts[-1],), dots[outer:], schedule)
        result = GradedPolynomial.zero("c")
        for mono, coeff in inner_poly.terms.items():
            result = result + coeff * _with_inner_bubbles(
                tilde, dots[:outer], mono, schedule)
    _alpha_cache[key] = result
    return result


def _with_inner_bubbles(pi_parts: tuple[int, ...], dots: tuple[int, ...],
                        bubbles: tuple[int, ...], schedule: str,
                        ) -> CenterElement:
    """Diagram of pi with the given strand dots and extra dotted bubbles in
    the innermost region, reduced by extracting the bubbles outward."""
    if not bubbles:
        return alpha_center(pi_parts, dots, schedule)
    order = sorted(bubbles)
    if schedule == "outermost":
        order = order[::-1]
    first, rest = order[0], tuple(order[1:])
    arcs = tuple(reversed(dots))  # innermost arc first for the extraction
    result = GradedPolynomial.zero("c")
    for coeff, new_arcs, escaped in _extract_bubble(arcs, 0, first, 1):
        sub = _with_inner_bubbles(pi_parts, tuple(reversed(new_arcs)), rest,
                                  schedule)
        if escaped is not None:
            sub = sub * c_variable(escaped)
        result = result + coeff * sub
    return result


def reduce_alpha(pi: Partition, dots, schedule: str = "innermost",
                 ) -> GradedPolynomial:
    """Reduce the dotted closed diagram of pi and twist signs: returns the
    y-family polynomial P with P(y_0, y_1, ...) = (-1)^len(pi) times the
    reduced diagram evaluated at c_j = -y_j.

    The result has non-negative integer coefficients and weighted y-degree
    at most |pi| - len(pi) + sum(dots).
    """
    dots = tuple(int(d) for d in dots)
    a = alpha_center(pi.parts, dots, schedule)
    p = a.relabel("y", coeff_fn=lambda mono: (-1) ** (len(mono) % 2))
    p = p * ((-1) ** pi.length)
    if not (p.has_integer_coefficients() and p.has_nonnegative_coefficients()):
        raise RewriteInvariantError(
            f"reduction of {pi} with dots {dots} violates positivity: {p} "
            f"(raw c-polynomial {a})")
    bound = pi.size - pi.length + sum(dots)
    wd = p.weighted_degree()
    if wd is not None and wd > bound:
        raise RewriteInvariantError(
            f"reduction of {pi} with dots {dots} exceeds degree {bound}: {p}")
    return p


# ---------------------------------------------------------------------------
# permutation expansion of the dotted strand


@dataclass(frozen=True)
class PermDiagramExpansion:
    """Integer combination of permutation diagrams: a sigma-box with strand 1
    open and the remaining strands closed by nested arcs.  Keys are image
    tuples of sigma."""
    coeffs: tuple[tuple[tuple[int, ...], int], ...]

    @classmethod
    def from_counter(cls, counts: Mapping[tuple[int, ...], int],
                     ) -> "PermDiagramExpansion":
        items = tuple(sorted((imgs, int(c)) for imgs, c in counts.items() if c))
        return cls(items)

    def items(self):
        return self.coeffs

    def as_dict(self) -> dict[tuple[int, ...], int]:
        return dict(self.coeffs)


def _curl_insert(images: tuple[int, ...]) -> tuple[int, ...]:
    """Add one strand that crosses into the cycle of letter 1: the image
    tuple of sigma composed with the transposition (1, q+1)."""
    q = len(images)
    return (q + 1,) + images[1:] + (images[0],)


def _collisions(open_images: tuple[int, ...], closed_images: tuple[int, ...],
                ) -> Iterator[tuple[int, ...]]:
    """All merges of a closed rho-diagram into an open sigma-diagram.

    Each letter of rho is either matched to a distinct closed letter of
    sigma (letters 2..p) or kept fresh; the merged permutation composes rho,
    relabelled accordingly, with sigma.  Matching into the open letter is
    not allowed: the open strand stays open through the collision.
    """
    p, q = len(open_images), len(closed_images)
    closed_letters = range(2, p + 1)
    for s in range(0, min(q, p - 1) + 1):
        for subset in itertools.combinations(range(1, q + 1), s):
            for targets in itertools.permutations(closed_letters, s):
                label = {}
                nxt = p + 1
                for t in range(1, q + 1):
                    if t in subset:
                        label[t] = targets[subset.index(t)]
                    else:
                        label[t] = nxt
                        nxt += 1
                size = p + q - s
                rho_hat = list(range(1, size + 1))
                for t in range(1, q + 1):
                    rho_hat[label[t] - 1] = label[closed_images[t - 1]]
                merged = tuple(
                    open_images[rho_hat[x] - 1] if rho_hat[x] <= p else rho_hat[x]
                    for x in range(size))
                yield merged


_expand_cache: dict[int, PermDiagramExpansion] = {}


def expand_dotted_strand(k: int) -> PermDiagramExpansion:
    """Expand a strand carrying k dots over permutation diagrams.

    Follows the induction: the k-dotted strand equals a curl term (one extra
    crossing on each diagram of the (k-1)-dotted strand) plus, for each
    b < k-1, the product of the b-dotted strand with a closed bubble carrying
    k-2-b dots, merged by collision.
    """
    if k < 0:
        raise InvalidInputError("dot count must be >= 0")
    cached = _expand_cache.get(k)
    if cached is not None:
        return cached
    counts: Counter = Counter()
    if k == 0:
        counts[(1,)] = 1
    else:
        for images, c in expand_dotted_strand(k - 1).items():
            counts[_curl_insert(images)] += c
        for b in range(k - 1):
            open_part = expand_dotted_strand(b)
            closed_part = expand_dotted_strand(k - 2 - b)
            for oi, oc in open_part.items():
                for ci, cc in closed_part.items():
                    for merged in _collisions(oi, ci):
                        counts[merged] += oc * cc
    result = PermDiagramExpansion.from_counter(counts)
    for images, c in result.items():
        sigma = Permutation(images)
        rl = reflection_length(sigma)
        if c < 0 or rl > k or (rl - k) % 2 != 0:
            raise RewriteInvariantError(
                f"expansion of {k} dots violates support constraints at "
                f"{images} (coefficient {c}, reflection length {rl})")
    _expand_cache[k] = result
    return result


def aggregate_by_cycle_type(e: PermDiagramExpansion) -> dict[Partition, int]:
    """Sum expansion coefficients over conjugacy classes."""
    out: Counter = Counter()
    for images, c in e.items():
        out[cycle_type(Permutation(images)).partition] += c
    return {pi: c for pi, c in out.items() if c}


# ---------------------------------------------------------------------------
# the bridge to functions on Young diagrams, and closures


def evaluate_center(e: CenterElement, lam: Partition) -> Fraction:
    """Evaluate a c-polynomial as a function on Young diagrams via the
    substitution c_k |-> B_{k+2}(lam)."""
    if e.family != "c":
        raise InvalidInputError("expected a polynomial over the c-family")
    support = e.support_indices()
    if not support:
        return e.substitute({})
    b = observables.boolean_cumulants(lam, max(support) + 2)
    return e.substitute({k: b[k + 2] for k in support})


def close_state(state: DiagramState) -> CenterElement:
    """Close every configuration of a state into a c-polynomial: bubbles are
    extracted outward (becoming c-factors), and the m nested closed arcs with
    dots d_1..d_m reduce through alpha_center."""
    total = GradedPolynomial.zero("c")
    for (arcs, bubbles), coeff in state.items():
        # (coefficient, current arcs, escaped bubble dots collected so far)
        branches = [(coeff, arcs, ())]
        for dots, pos in sorted(bubbles, key=lambda bp: -bp[1]):
            nxt = []
            for c, cur_arcs, escaped in branches:
                for c2, new_arcs, out in _extract_bubble(cur_arcs, pos, dots, c):
                    nxt.append((c2, new_arcs,
                                escaped + ((out,) if out is not None else ())))
            branches = nxt
        for c, cur_arcs, escaped in branches:
            term = alpha_center((1,) * len(cur_arcs), tuple(reversed(cur_arcs)))
            for d in escaped:
                term = term * c_variable(d)
            total = total + c * term
    return total
