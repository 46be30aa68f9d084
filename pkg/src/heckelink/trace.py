"""Partitions, their braids, and the normalized Markov trace.

The trace is the unique family of linear maps tr: H_n -> R with

    tr(ab) = tr(ba),      tr(b) = tr(T_n iota(b)) = tr(T_n^{-1} iota(b)),

normalized by tr(identity of H_1) = 1; it requires q1 + q2 to be a unit.
Each extra closure component multiplies the trace by
delta = (1 + q1 q2)/(q1 + q2), so on the braid attached to a partition with
k parts the trace is delta^(k-1).

On a basis element T_w the trace is computed recursively.  If w fixes the
last point, T_w comes from one strand down and tr_n = delta * tr_{n-1}.
Otherwise let p = w^{-1}(n) and split off the descending chain
d_p = s_{n-1} s_{n-2} ... s_p, a minimal coset representative: w = u d_p
with u fixing n and lengths adding, hence

    T_w = T_u T_{n-1} T_y,   y = s_{n-2} ... s_p,

and cyclicity plus the strand-addition rule give
tr_n(T_w) = tr_{n-1}(T_y T_u).  Basis traces are memoized per coefficient
context, so repeated invariant computations stay cheap.

Closed braids decompose over the basis indexed by partitions: the
coefficients are recovered algebraically by solving the character system
chi_mu(b) = sum_lambda c_lambda chi_mu(b_lambda) over the generic
one-parameter field, where chi_mu is the trace of the action on the cell
module of shape mu.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence

from .braid import BraidWord, Permutation
from .coefficients import (
    CoefficientError,
    FieldContext,
    RationalFunction,
    canonicalize,
    generic_field_context,
    render_scalar,
)
from .hecke import HeckeContext, HeckeElement, from_braid_word
from .linalg import LinearAlgebraError, solve_linear


class PartitionError(ValueError):
    """Malformed partitions or size mismatches."""


class DecompositionError(ValueError):
    """Closure decomposition requested over an unsuitable field."""


@dataclass(frozen=True)
class Partition:
    """A weakly decreasing sequence of positive integers."""

    parts: tuple[int, ...]

    def __init__(self, parts: Sequence[int]):
        parts = tuple(parts)
        if any(p <= 0 for p in parts):
            raise PartitionError(f"parts must be positive: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise PartitionError(f"parts must be weakly decreasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def k(self) -> int:
        return len(self.parts)

    def render(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"

    def __repr__(self) -> str:
        return f"Partition{self.parts}"


def partitions_of(n: int) -> list[Partition]:
    """All partitions of n in descending lexicographic order (so any
    partition appears before everything it dominates)."""
    if n < 0:
        raise PartitionError(f"cannot partition {n}")
    out: list[Partition] = []
    prefix: list[int] = []

    def rec(remaining: int, cap: int) -> None:
        if remaining == 0:
            out.append(Partition(tuple(prefix)))
            return
        for part in range(min(cap, remaining), 0, -1):
            prefix.append(part)
            rec(remaining - part, part)
            prefix.pop()

    rec(n, n if n > 0 else 1)
    return out


def dominates(mu: Partition, lam: Partition) -> bool:
    """True when every prefix sum of mu is >= the matching prefix sum of lam."""
    if mu.n != lam.n:
        raise PartitionError(f"{mu.render()} and {lam.render()} partition different n")
    total_mu = 0
    total_lam = 0
    for j in range(max(mu.k, lam.k)):
        total_mu += mu.parts[j] if j < mu.k else 0
        total_lam += lam.parts[j] if j < lam.k else 0
        if total_mu < total_lam:
            return False
    return True


def strictly_dominates(mu: Partition, lam: Partition) -> bool:
    return mu != lam and dominates(mu, lam)


def e_restricted(lam: Partition, e: int | float) -> bool:
    """Every consecutive part difference (with a trailing zero) is < e."""
    if e != math.inf and e < 2:
        raise PartitionError(f"e must be >= 2 or infinity, got {e}")
    parts = lam.parts + (0,)
    return all(parts[i] - parts[i + 1] < e for i in range(len(parts) - 1))


def b_lambda(lam: Partition) -> BraidWord:
    """The braid whose closure splits into one descending cycle per part.

    Part m sitting at offset k contributes the block
    sigma_{k+m-1} ... sigma_{k+1}; one-part partitions give the standard
    (m)-cycle braid, and parts of size one contribute straight strands.
    """
    letters: list[int] = []
    offset = 0
    for part in lam.parts:
        letters.extend(range(offset + part - 1, offset, -1))
        offset += part
    return BraidWord(max(lam.n, 1), letters)


# -- the normalized Markov trace -----------------------------------------------

_TRACE_CACHE: dict[FieldContext, dict[Permutation, object]] = {}


def _trace_basis(w: Permutation, field: FieldContext, cache: dict) -> object:
    n = w.degree
    if n == 1:
        return field.field.one()
    cached = cache.get(w)
    if cached is not None:
        return cached
    if w.fixes_last():
        value = field.delta() * _trace_basis(w.restricted(), field, cache)
        cache[w] = value
        return value
    p = w.images.index(n) + 1
    # Peeling the chain off w = x d_p leaves x: drop the entry holding n.
    x = Permutation(w.images[: p - 1] + w.images[p:])
    # y = s_{n-2} ... s_p, the chain below the split generator.
    y = Permutation(tuple(range(1, p)) + (n - 1,) + tuple(range(p, n - 1)))
    sub_ctx = HeckeContext(n - 1, field)
    product = sub_ctx.basis_element(y) * sub_ctx.basis_element(x)
    value = _weighted_trace_sum(product.terms, field, cache)
    cache[w] = value
    return value


def _weighted_trace_sum(terms, field: FieldContext, cache: dict):
    """Sum c_w * tr(T_w) over a support.

    Trace values over a function field share denominators (powers of q1+q2
    up to monomials), so summing naively re-runs a gcd for every term.
    Grouping by denominator turns almost all of the work into plain
    polynomial addition, with one fraction combination per distinct
    denominator at the end.
    """
    zero = field.field.zero()
    if not isinstance(zero, RationalFunction):
        total = zero
        for w, c in terms.items():
            total = total + c * _trace_basis(w, field, cache)
        return total
    groups: dict[object, object] = {}
    for w, c in terms.items():
        value = c * _trace_basis(w, field, cache)
        num = groups.get(value.den)
        groups[value.den] = value.num if num is None else num + value.num
    total = zero
    for den, num in groups.items():
        total = total + canonicalize(num, den)
    return total


def markov_trace(h: HeckeElement) -> object:
    """The normalized Markov trace, extended linearly over the support."""
    field = h.context.field
    if not field.q_sum:
        raise CoefficientError(
            "the Markov trace needs q1 + q2 to be a unit; context "
            + field.describe()
        )
    cache = _TRACE_CACHE.setdefault(field, {})
    return _weighted_trace_sum(h.terms, field, cache)


def trace_of_braid(b: BraidWord, field: FieldContext | None = None) -> object:
    """Trace of the Hecke image of a braid word, generic field by default."""
    if field is None:
        field = generic_field_context()
    return markov_trace(from_braid_word(b, HeckeContext(b.strands, field)))


# -- closure decomposition -------------------------------------------------------


@dataclass(frozen=True)
class ClosureDecomposition:
    """Coordinates of a closed braid in the basis indexed by partitions."""

    n: int
    coefficients: Mapping[Partition, object]

    def __post_init__(self):
        for lam in self.coefficients:
            if lam.n != self.n:
                raise PartitionError(
                    f"{lam.render()} is not a partition of {self.n}"
                )

    def items(self) -> list[tuple[Partition, object]]:
        order = {lam: i for i, lam in enumerate(partitions_of(self.n))}
        return sorted(self.coefficients.items(), key=lambda kv: order[kv[0]])

    def coefficient(self, lam: Partition):
        return self.coefficients.get(lam)

    def render(self) -> str:
        return ", ".join(f"{lam.render()}: {render_scalar(c)}" for lam, c in self.items())

    def to_json(self) -> dict[str, str]:
        return {lam.render(): render_scalar(c) for lam, c in self.items()}


def decompose_closure(b: BraidWord) -> ClosureDecomposition:
    """Decompose the closure of b over the partition basis.

    Works over the generic one-parameter field, where the character matrix
    [chi_mu(b_lambda)] is invertible; the Hecke image of b is taken at
    (q1, q2) = (-1, q) to match the cell-module characters.
    """
    from . import specht

    n = b.strands
    sctx = specht.SpechtContext.generic(n)
    parts = partitions_of(n)
    hecke_ctx = sctx.hecke_context()
    modules = [specht.specht_module(lam, sctx) for lam in parts]

    def chi(module, element: HeckeElement):
        total = sctx.field_context.field.zero()
        for w, c in element.terms.items():
            total = total + c * module.character(w)
        return total

    matrix = []
    images = [from_braid_word(b_lambda(lam), hecke_ctx) for lam in parts]
    for module in modules:
        matrix.append([chi(module, img) for img in images])
    target = from_braid_word(b, hecke_ctx)
    rhs = [chi(module, target) for module in modules]
    field = sctx.field_context.field
    try:
        coeffs = solve_linear(matrix, rhs, field.zero(), field.one())
    except LinearAlgebraError as exc:
        raise DecompositionError(
            "character matrix is singular; decomposition needs the generic field"
        ) from exc
    return ClosureDecomposition(
        n, {lam: c for lam, c in zip(parts, coeffs) if c}
    )
