"""The Iwahori-Hecke algebra on n strands over an exact coefficient field.

Elements are finitely supported maps from permutations to scalars: the map
IS the coordinate vector in the natural basis T_w indexed by the symmetric
group.  Products are computed by folding the right factor one generator at a
time along a reduced word, using

    T_w * T_i = T_{w s_i}                              if length goes up,
    T_w * T_i = (q1+q2) T_w - q1 q2 T_{w s_i}          otherwise,

which is the quadratic relation (T_i - q1)(T_i - q2) = 0 in action.  Because
any reduced word of the right factor gives the same answer, associativity of
the product doubles as a confluence check and is exercised heavily by the
test suite.

The generators are units:

    T_i^{-1} = ((q1 + q2) - T_i) / (q1 q2),

the unique element with T_i T_i^{-1} = 1 under the quadratic relation, so
braid words map to units and the assignment sigma_i -> T_i extends to a
homomorphism from the braid group.

At (q1, q2) = (1, -1) the quadratic relation collapses to T_i^2 = 1 and the
algebra becomes the group algebra of the symmetric group; ``to_symmetric_group``
exposes the coordinates for comparison against plain permutation composition.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .braid import BraidWord, Permutation
from .coefficients import FieldContext, Rationals, render_scalar


class HeckeError(ValueError):
    """Context mismatches and malformed elements."""


@dataclass(frozen=True)
class HeckeContext:
    """Strand count plus the coefficient field carrying q1, q2."""

    n: int
    field: FieldContext

    def __post_init__(self):
        if self.n < 1:
            raise HeckeError(f"strand count must be >= 1, got {self.n}")

    def zero_element(self) -> HeckeElement:
        return HeckeElement(self, {})

    def identity(self) -> HeckeElement:
        return HeckeElement(self, {Permutation.identity(self.n): self.field.one()})

    def basis_element(self, w: Permutation) -> HeckeElement:
        if w.degree != self.n:
            raise HeckeError(f"permutation degree {w.degree} != strand count {self.n}")
        return HeckeElement(self, {w: self.field.one()})

    def generator_image(self, i: int, sign: int = 1) -> HeckeElement:
        """T_i for positive sign, T_i^{-1} for negative."""
        if not 1 <= i <= self.n - 1:
            raise HeckeError(f"generator index {i} out of range for n={self.n}")
        s = Permutation.transposition(self.n, i)
        if sign > 0:
            return HeckeElement(self, {s: self.field.one()})
        inv_prod = 1 / self.field.q_prod
        return HeckeElement(
            self,
            {
                Permutation.identity(self.n): self.field.q_sum * inv_prod,
                s: -inv_prod,
            },
        )


class HeckeElement:
    """A linear combination of basis elements T_w, stored sparsely.

    Instances are immutable by convention: no method mutates ``terms`` after
    construction, so elements are safe to share and to use as cache values.
    """

    __slots__ = ("context", "terms")

    def __init__(self, context: HeckeContext, terms: Mapping[Permutation, object]):
        clean: dict[Permutation, object] = {}
        for w, c in terms.items():
            if w.degree != context.n:
                raise HeckeError(
                    f"permutation degree {w.degree} != strand count {context.n}"
                )
            if c:
                clean[w] = c
        self.context = context
        self.terms = clean

    # -- linear structure ----------------------------------------------------

    def _check(self, other: HeckeElement) -> None:
        if self.context != other.context:
            raise HeckeError(
                f"context mismatch: {self.context} vs {other.context}"
            )

    def __add__(self, other: HeckeElement) -> HeckeElement:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        self._check(other)
        terms = dict(self.terms)
        for w, c in other.terms.items():
            s = terms.get(w)
            s = c if s is None else s + c
            if s:
                terms[w] = s
            else:
                terms.pop(w, None)
        return HeckeElement(self.context, terms)

    def __neg__(self) -> HeckeElement:
        return HeckeElement(self.context, {w: -c for w, c in self.terms.items()})

    def __sub__(self, other: HeckeElement) -> HeckeElement:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self + (-other)

    def scalar_mul(self, scalar) -> HeckeElement:
        if not scalar:
            return HeckeElement(self.context, {})
        return HeckeElement(
            self.context, {w: scalar * c for w, c in self.terms.items()}
        )

    # -- multiplication --------------------------------------------------------

    def __mul__(self, other: HeckeElement) -> HeckeElement:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        self._check(other)
        ctx = self.context
        result: dict[Permutation, object] = {}
        for v, d in other.terms.items():
            cur = self.terms
            for i in v.reduced_word():
                cur = _fold_positive(cur, i, ctx)
            for u, c in cur.items():
                s = result.get(u)
                cd = c * d
                s = cd if s is None else s + cd
                if s:
                    result[u] = s
                else:
                    result.pop(u, None)
        return HeckeElement(ctx, result)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def coefficient(self, w: Permutation):
        return self.terms.get(w, self.context.field.zero())

    def support(self) -> list[Permutation]:
        return sorted(self.terms, key=lambda w: (w.length(), w.images))

    # -- symmetry ---------------------------------------------------------------

    def star(self) -> HeckeElement:
        """The antiautomorphism sending T_w to T_{w^{-1}}."""
        return HeckeElement(
            self.context, {w.inverse(): c for w, c in self.terms.items()}
        )

    # -- comparison ---------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, HeckeElement):
            return NotImplemented
        return self.context == other.context and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.context, frozenset(self.terms.items())))

    # -- rendering ------------------------------------------------------------------

    def render(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for w in _render_order(self.terms):
            c = self.terms[w]
            tw = "T[" + ",".join(str(i) for i in w.images) + "]"
            if c == self.context.field.one():
                pieces.append(tw)
            else:
                pieces.append(f"({render_scalar(c)})*{tw}")
        return " + ".join(pieces)

    def to_json(self) -> list[dict]:
        return [
            {"perm": list(w.images), "coeff": render_scalar(self.terms[w])}
            for w in _render_order(self.terms)
        ]

    def __repr__(self) -> str:
        return f"HeckeElement({self.render()})"


def _render_order(terms: Mapping[Permutation, object]) -> list[Permutation]:
    """Longest elements first, one-line lexicographic among equals."""
    return sorted(terms, key=lambda w: (-w.length(), w.images))


def _fold_positive(
    terms: Mapping[Permutation, object], i: int, ctx: HeckeContext
) -> dict[Permutation, object]:
    """Right-multiply a coordinate vector by the generator T_i."""
    q_sum = ctx.field.q_sum
    q_prod = ctx.field.q_prod
    out: dict[Permutation, object] = {}
    for w, c in terms.items():
        ws = w.times_transposition(i)
        if w.right_ascent(i):
            s = out.get(ws)
            s = c if s is None else s + c
            if s:
                out[ws] = s
            else:
                out.pop(ws, None)
        else:
            cs = c * q_sum
            if cs:
                s = out.get(w)
                s = cs if s is None else s + cs
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
            cp = -(c * q_prod)
            s = out.get(ws)
            s = cp if s is None else s + cp
            if s:
                out[ws] = s
            else:
                out.pop(ws, None)
    return out


def _fold_negative(
    terms: Mapping[Permutation, object], i: int, ctx: HeckeContext
) -> dict[Permutation, object]:
    """Right-multiply a coordinate vector by T_i^{-1}.

    When the length drops, T_w T_i^{-1} = T_{w s_i}; otherwise expand the
    inverse through the quadratic relation.
    """
    inv_prod = 1 / ctx.field.q_prod
    sum_over_prod = ctx.field.q_sum * inv_prod
    out: dict[Permutation, object] = {}
    for w, c in terms.items():
        ws = w.times_transposition(i)
        if not w.right_ascent(i):
            s = out.get(ws)
            s = c if s is None else s + c
            if s:
                out[ws] = s
            else:
                out.pop(ws, None)
        else:
            cs = c * sum_over_prod
            if cs:
                s = out.get(w)
                s = cs if s is None else s + cs
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
            cp = -(c * inv_prod)
            s = out.get(ws)
            s = cp if s is None else s + cp
            if s:
                out[ws] = s
            else:
                out.pop(ws, None)
    return out


def fold_letter(
    terms: Mapping[Permutation, object], letter: int, ctx: HeckeContext
) -> dict[Permutation, object]:
    """Right-multiply by the image of a single signed braid letter."""
    if letter > 0:
        return _fold_positive(terms, letter, ctx)
    return _fold_negative(terms, -letter, ctx)


def from_braid_word(b: BraidWord, ctx: HeckeContext) -> HeckeElement:
    """Image of a braid word under sigma_i -> T_i, extended to inverses."""
    if b.strands != ctx.n:
        raise HeckeError(
            f"word on {b.strands} strands does not live in H_{ctx.n}"
        )
    cur: Mapping[Permutation, object] = {
        Permutation.identity(ctx.n): ctx.field.one()
    }
    for letter in b.letters:
        cur = fold_letter(cur, letter, ctx)
    return HeckeElement(ctx, cur)


def left_multiply_generator(x: HeckeElement, i: int) -> HeckeElement:
    """T_i * x, the mirror of the folding rule (swap the two values i, i+1)."""
    ctx = x.context
    if not 1 <= i <= ctx.n - 1:
        raise HeckeError(f"generator index {i} out of range for n={ctx.n}")
    q_sum = ctx.field.q_sum
    q_prod = ctx.field.q_prod
    out: dict[Permutation, object] = {}
    for w, c in x.terms.items():
        sw = w.transposition_times(i)
        if w.left_ascent(i):
            s = out.get(sw)
            s = c if s is None else s + c
            if s:
                out[sw] = s
            else:
                out.pop(sw, None)
        else:
            cs = c * q_sum
            if cs:
                s = out.get(w)
                s = cs if s is None else s + cs
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
            cp = -(c * q_prod)
            s = out.get(sw)
            s = cp if s is None else s + cp
            if s:
                out[sw] = s
            else:
                out.pop(sw, None)
    return HeckeElement(ctx, out)


def to_symmetric_group(x: HeckeElement) -> dict[Permutation, object]:
    """Coordinates of x read in the group algebra of the symmetric group.

    Only valid at (q1, q2) = (1, -1), where T_i^2 = 1 and the T_w multiply
    exactly like the permutations w.
    """
    field = x.context.field
    if not isinstance(field.field, Rationals) or field.q1 != 1 or field.q2 != -1:
        raise HeckeError(
            "symmetric-group coordinates need the rational context with "
            "(q1, q2) = (1, -1), got " + field.describe()
        )
    return dict(x.terms)
