"""Cell modules of the one-parameter Hecke algebra and their Gram forms.

Everything here fixes the one-parameter convention (q1, q2) = (-1, q); q may
be the generic variable or any specialized field value.  For a partition
``lam`` of n:

* the Young subgroup consists of the permutations fixing each consecutive
  block of sizes lam_1, lam_2, ... setwise, and m_lam is the sum of T_w over
  that subgroup;
* M^lam is the left ideal generated by m_lam.  For a minimal coset
  representative d the product T_d m_lam is a sum of distinct basis elements
  T_{du} with unit coefficients, and distinct cosets have disjoint supports,
  so these products form a ready-made echelon basis of M^lam;
* I^lam is the two-sided ideal generated by the m_mu over all mu strictly
  dominating lam.  It is generated as a span by seeding each left ideal
  H m_mu and closing under right multiplication by the generators;
* the cell module is M^lam modulo M^lam intersect I^lam, realized
  concretely by reducing M^lam generators modulo an echelon basis of I^lam;
* the bilinear form evaluates star(x) * y modulo I^lam, which by Murphy's
  proportionality is always a scalar multiple of m_lam; the scalar is the
  form value.  The rank of the Gram matrix is the dimension of the
  irreducible head, which is nonzero exactly for e-restricted shapes.

Dimensions are validated against an independent standard-tableaux count,
never assumed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dataclass_field
from functools import lru_cache
from typing import Sequence

from .braid import Permutation
from .coefficients import (
    Field,
    FieldContext,
    RationalFunction,
    generic_one_parameter_context,
    one_parameter_context,
)
from .hecke import HeckeContext, HeckeElement, left_multiply_generator
from .linalg import EchelonBasis, determinant, kernel_basis, matrix_rank
from .trace import Partition, partitions_of, strictly_dominates


class SpechtError(ValueError):
    """Wrong parameter convention or malformed input."""


class ProportionalityError(ArithmeticError):
    """A product m h m failed to reduce to a multiple of m modulo the ideal.

    This signals an internal inconsistency, never a user error.
    """


@dataclass(frozen=True)
class SpechtContext:
    """Strand count plus a coefficient context pinned to (q1, q2) = (-1, q)."""

    n: int
    field_context: FieldContext

    def __post_init__(self):
        if self.n < 1:
            raise SpechtError(f"strand count must be >= 1, got {self.n}")
        fc = self.field_context
        if fc.q1 != fc.field.from_int(-1):
            raise SpechtError(
                "cell modules use the one-parameter convention q1 = -1, got "
                + fc.describe()
            )

    @classmethod
    def generic(cls, n: int) -> SpechtContext:
        return cls(n, generic_one_parameter_context())

    @classmethod
    def at_value(cls, n: int, field: Field, q_value) -> SpechtContext:
        return cls(n, one_parameter_context(field, q_value))

    @property
    def q(self):
        return self.field_context.q2

    def hecke_context(self) -> HeckeContext:
        return HeckeContext(self.n, self.field_context)


# -- coordinates ----------------------------------------------------------------


@lru_cache(maxsize=None)
def _perm_order(n: int) -> tuple[tuple[Permutation, ...], dict[Permutation, int]]:
    """All permutations sorted by (length, one-line); the coordinate order."""
    perms = [Permutation(p) for p in itertools.permutations(range(1, n + 1))]
    perms.sort(key=lambda w: (w.length(), w.images))
    return tuple(perms), {w: i for i, w in enumerate(perms)}


def _to_vector(x: HeckeElement, sctx: SpechtContext) -> list:
    order, index = _perm_order(sctx.n)
    zero = sctx.field_context.field.zero()
    v = [zero] * len(order)
    for w, c in x.terms.items():
        v[index[w]] = c
    return v


def _from_vector(vec: Sequence, sctx: SpechtContext) -> HeckeElement:
    order, _ = _perm_order(sctx.n)
    return HeckeElement(
        sctx.hecke_context(), {order[i]: c for i, c in enumerate(vec) if c}
    )


# -- generators ------------------------------------------------------------------


def young_subgroup(lam: Partition) -> list[Permutation]:
    """All permutations fixing each block {k_i+1, ..., k_i+lam_i} setwise."""
    blocks: list[list[int]] = []
    offset = 0
    for part in lam.parts:
        blocks.append(list(range(offset + 1, offset + part + 1)))
        offset += part
    n = lam.n
    out = []
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        images = [0] * n
        for block, values in zip(blocks, choice):
            for pos, val in zip(block, values):
                images[pos - 1] = val
        out.append(Permutation(images))
    return out


def m_lambda(lam: Partition, sctx: SpechtContext) -> HeckeElement:
    """Sum of the basis elements over the Young subgroup of lam."""
    if lam.n != sctx.n:
        raise SpechtError(f"{lam.render()} is not a partition of {sctx.n}")
    one = sctx.field_context.field.one()
    return HeckeElement(sctx.hecke_context(), {w: one for w in young_subgroup(lam)})


def _coset_representatives(lam: Partition) -> list[Permutation]:
    """Minimal-length representatives of the left cosets w S_lam: the
    permutations increasing on every block."""
    blocks: list[range] = []
    offset = 0
    for part in lam.parts:
        blocks.append(range(offset, offset + part))
        offset += part
    n = lam.n
    reps: list[Permutation] = []
    values = list(range(1, n + 1))

    def rec(remaining: frozenset[int], images: list[int], b: int) -> None:
        if b == len(blocks):
            reps.append(Permutation(images))
            return
        block = blocks[b]
        for combo in itertools.combinations(sorted(remaining), len(block)):
            nxt = list(images)
            for pos, val in zip(block, combo):
                nxt[pos] = val
            rec(remaining - set(combo), nxt, b + 1)

    rec(frozenset(values), [0] * n, 0)
    return reps


# -- subspaces -------------------------------------------------------------------


class SubspaceBasis:
    """An echelonized subspace of the algebra in the T_w coordinate order.

    Rows are in reduced row-echelon form with strictly increasing pivots, so
    membership tests and modular reduction are exact sweeps.
    """

    def __init__(self, sctx: SpechtContext):
        self.sctx = sctx
        field = sctx.field_context.field
        order, _ = _perm_order(sctx.n)
        self.echelon = EchelonBasis(len(order), field.zero(), field.one())

    @property
    def dimension(self) -> int:
        return len(self.echelon)

    def insert_element(self, x: HeckeElement) -> list | None:
        return self.echelon.insert(_to_vector(x, self.sctx))

    def reduce_element(self, x: HeckeElement) -> HeckeElement:
        return _from_vector(self.echelon.reduce(_to_vector(x, self.sctx)), self.sctx)

    def contains(self, x: HeckeElement) -> bool:
        return not any(self.echelon.reduce(_to_vector(x, self.sctx)))

    def rows_as_elements(self) -> list[HeckeElement]:
        return [_from_vector(row, self.sctx) for row in self.echelon.rows]


_M_CACHE: dict[tuple[Partition, SpechtContext], SubspaceBasis] = {}
_I_CACHE: dict[tuple[Partition, SpechtContext], SubspaceBasis] = {}
_MODULE_CACHE: dict[tuple[Partition, SpechtContext], SpechtModule] = {}


def _coset_rows(lam: Partition, sctx: SpechtContext) -> list[HeckeElement]:
    """The products T_d m_lam over minimal coset representatives d.

    Lengths add across the coset split, so each product is a sum of distinct
    basis elements with unit coefficients and the supports partition the
    symmetric group; the rows span the left ideal and are independent."""
    one = sctx.field_context.field.one()
    ctx = sctx.hecke_context()
    subgroup = young_subgroup(lam)
    rows = []
    for d in _coset_representatives(lam):
        rows.append(HeckeElement(ctx, {d * u: one for u in subgroup}))
    return rows


def module_basis_M(lam: Partition, sctx: SpechtContext) -> SubspaceBasis:
    """Echelon basis of the left ideal generated by m_lam."""
    key = (lam, sctx)
    cached = _M_CACHE.get(key)
    if cached is not None:
        return cached
    basis = SubspaceBasis(sctx)
    for row in _coset_rows(lam, sctx):
        basis.insert_element(row)
    _M_CACHE[key] = basis
    return basis


def ideal_I(lam: Partition, sctx: SpechtContext) -> SubspaceBasis:
    """Echelon basis of the two-sided ideal generated by the m_mu with mu
    strictly dominating lam.

    Each seed left ideal H m_mu is inserted whole, after which the span only
    needs closing under right multiplication by the generators; the worklist
    drains when the dimension stops growing.
    """
    key = (lam, sctx)
    cached = _I_CACHE.get(key)
    if cached is not None:
        return cached
    basis = SubspaceBasis(sctx)
    ctx = sctx.hecke_context()
    queue: list[HeckeElement] = []
    for mu in partitions_of(sctx.n):
        if not strictly_dominates(mu, lam):
            continue
        for row in _coset_rows(mu, sctx):
            stored = basis.insert_element(row)
            if stored is not None:
                queue.append(_from_vector(stored, sctx))
    gens = [
        ctx.generator_image(i) for i in range(1, sctx.n)
    ]
    while queue:
        x = queue.pop()
        for g in gens:
            stored = basis.insert_element(x * g)
            if stored is not None:
                queue.append(_from_vector(stored, sctx))
    _I_CACHE[key] = basis
    return basis


# -- cell modules -----------------------------------------------------------------


@dataclass
class SpechtModule:
    """A cell module: quotient basis, generator action, and the Gram form."""

    lam: Partition
    sctx: SpechtContext
    basis: list[HeckeElement]
    action: list[list[list]]  # action[i-1] is the matrix of T_i, column convention
    gram: list[list]
    _matrices: dict[Permutation, list[list]] = dataclass_field(default_factory=dict)
    _characters: dict[Permutation, object] = dataclass_field(default_factory=dict)
    _rad: EchelonBasis | None = None
    _rad_matrices: dict[Permutation, list[list]] = dataclass_field(default_factory=dict)
    _rad_gens: dict[int, list[list]] = dataclass_field(default_factory=dict)

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def generator_matrix(self, i: int) -> list[list]:
        return self.action[i - 1]

    def matrix(self, w: Permutation) -> list[list]:
        """Action matrix of T_w, built along a reduced word."""
        cached = self._matrices.get(w)
        if cached is not None:
            return cached
        word = w.reduced_word()
        if not word:
            one = self.sctx.field_context.field.one()
            zero = self.sctx.field_context.field.zero()
            mat = [
                [one if r == c else zero for c in range(self.dimension)]
                for r in range(self.dimension)
            ]
        else:
            prefix = self.matrix(w.times_transposition(word[-1]))
            mat = _mat_mul(prefix, self.action[word[-1] - 1],
                           self.sctx.field_context.field.zero())
        self._matrices[w] = mat
        return mat

    def character(self, w: Permutation):
        """Trace of the action of T_w."""
        cached = self._characters.get(w)
        if cached is not None:
            return cached
        mat = self.matrix(w)
        total = self.sctx.field_context.field.zero()
        for i in range(self.dimension):
            total = total + mat[i][i]
        self._characters[w] = total
        return total

    def gram_determinant(self):
        field = self.sctx.field_context.field
        return determinant(self.gram, field.zero(), field.one())

    def gram_rank(self) -> int:
        return matrix_rank(self.gram, self.sctx.field_context.field)

    # -- the irreducible head ------------------------------------------------

    def _radical(self) -> EchelonBasis:
        """The Gram kernel as an echelon basis inside the module coordinates.

        The radical is an invariant subspace, so each generator restricts to
        it; the head character is the module character minus the restricted
        trace."""
        if self._rad is None:
            field = self.sctx.field_context.field
            zero, one = field.zero(), field.one()
            rad = EchelonBasis(self.dimension, zero, one)
            for vec in kernel_basis(self.gram, zero, one):
                rad.insert(vec)
            self._rad = rad
        return self._rad

    def _rad_generator(self, i: int) -> list[list]:
        rad = self._radical()
        field = self.sctx.field_context.field
        zero = field.zero()
        r = len(rad)
        mat = [[zero] * r for _ in range(r)]
        gen = self.action[i - 1]
        for col, vec in enumerate(rad.rows):
            image = [
                _dot_row(gen[row], vec, zero) for row in range(self.dimension)
            ]
            coords = rad.coordinates(image)
            if coords is None:
                raise ProportionalityError(
                    f"Gram radical of {self.lam.render()} is not invariant"
                )
            for row in range(r):
                mat[row][col] = coords[row]
        return mat

    def _rad_matrix(self, w: Permutation) -> list[list]:
        cached = self._rad_matrices.get(w)
        if cached is not None:
            return cached
        field = self.sctx.field_context.field
        word = w.reduced_word()
        r = len(self._radical())
        if not word:
            one, zero = field.one(), field.zero()
            mat = [[one if a == b else zero for b in range(r)] for a in range(r)]
        else:
            prefix = self._rad_matrix(w.times_transposition(word[-1]))
            if not self._rad_gens:
                self._rad_gens = {
                    i: self._rad_generator(i) for i in range(1, self.sctx.n)
                }
            mat = _mat_mul(prefix, self._rad_gens[word[-1]], field.zero())
        self._rad_matrices[w] = mat
        return mat

    def head_character(self, w: Permutation):
        """Trace of T_w on the head: the module trace minus the radical trace."""
        rad = self._radical()
        chi = self.character(w)
        if not len(rad):
            return chi
        mat = self._rad_matrix(w)
        total = self.sctx.field_context.field.zero()
        for i in range(len(rad)):
            total = total + mat[i][i]
        return chi - total


def _dot_row(row: list, vec: list, zero):
    total = zero
    for x, y in zip(row, vec):
        if x and y:
            total = total + x * y
    return total


def _mat_mul(a: list[list], b: list[list], zero) -> list[list]:
    n = len(a)
    out = []
    for r in range(n):
        row_a = a[r]
        row = []
        for c in range(n):
            s = zero
            for k in range(n):
                x = row_a[k]
                if x:
                    y = b[k][c]
                    if y:
                        s = s + x * y
            row.append(s)
        out.append(row)
    return out


def _clear_denominators(x: HeckeElement) -> HeckeElement:
    """Scale by a unit so every coefficient is a Laurent polynomial; only
    meaningful over a rational function field."""
    common = None
    for c in x.terms.values():
        if isinstance(c, RationalFunction) and not c.den.is_one():
            common = c.den if common is None else common * c.den
    if common is None:
        return x
    factor = RationalFunction.from_poly(common)
    return x.scalar_mul(factor)


def specht_module(lam: Partition, sctx: SpechtContext) -> SpechtModule:
    """Build the cell module of shape lam over the given context."""
    key = (lam, sctx)
    cached = _MODULE_CACHE.get(key)
    if cached is not None:
        return cached
    if lam.n != sctx.n:
        raise SpechtError(f"{lam.render()} is not a partition of {sctx.n}")
    ideal = ideal_I(lam, sctx)
    field = sctx.field_context.field

    quotient = SubspaceBasis(sctx)
    queue: list[HeckeElement] = []
    m_bar_vec = ideal.echelon.reduce(_to_vector(m_lambda(lam, sctx), sctx))
    stored = quotient.echelon.insert(m_bar_vec)
    if stored is not None:
        queue.append(_from_vector(stored, sctx))
    while queue:
        x = queue.pop()
        for i in range(1, sctx.n):
            image = ideal.reduce_element(left_multiply_generator(x, i))
            stored = quotient.echelon.insert(_to_vector(image, sctx))
            if stored is not None:
                queue.append(_from_vector(stored, sctx))

    basis = quotient.rows_as_elements()
    dim = len(basis)

    action: list[list[list]] = []
    for i in range(1, sctx.n):
        zero = field.zero()
        mat = [[zero] * dim for _ in range(dim)]
        for col, vec in enumerate(basis):
            image = ideal.reduce_element(left_multiply_generator(vec, i))
            coords = quotient.echelon.coordinates(_to_vector(image, sctx))
            if coords is None:
                raise ProportionalityError(
                    f"generator action left the cell module for {lam.render()}"
                )
            for row in range(dim):
                mat[row][col] = coords[row]
        action.append(mat)

    cleared = [_clear_denominators(b) for b in basis]
    gram = [[field.zero()] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(i, dim):
            value = _form_value(cleared[i], cleared[j], lam, sctx, ideal, m_bar_vec)
            gram[i][j] = value
            gram[j][i] = value

    module = SpechtModule(lam, sctx, basis, action, gram)
    _MODULE_CACHE[key] = module
    return module


def _form_value(
    x: HeckeElement,
    y: HeckeElement,
    lam: Partition,
    sctx: SpechtContext,
    ideal: SubspaceBasis,
    m_bar_vec: list,
):
    """The scalar r with star(x) * y = r * m_lam modulo the ideal."""
    product = x.star() * y
    reduced = ideal.echelon.reduce(_to_vector(product, sctx))
    pivot = next((k for k, c in enumerate(m_bar_vec) if c), None)
    if pivot is None:
        if any(reduced):
            raise ProportionalityError(
                f"form value undefined: m_{lam.render()} lies in the ideal "
                "but the product does not"
            )
        return sctx.field_context.field.zero()
    ratio = reduced[pivot] / m_bar_vec[pivot]
    for a, b in zip(reduced, m_bar_vec):
        if a != ratio * b:
            raise ProportionalityError(
                f"star(x)*y is not proportional to m_{lam.render()} modulo the ideal"
            )
    return ratio


def gram_entry(x: HeckeElement, y: HeckeElement, lam: Partition, sctx: SpechtContext):
    """Bilinear form value <x, y> for x, y in the left ideal of m_lam."""
    module_m = module_basis_M(lam, sctx)
    if not module_m.contains(x) or not module_m.contains(y):
        raise SpechtError("form arguments must lie in the left ideal of m_lambda")
    ideal = ideal_I(lam, sctx)
    m_bar_vec = ideal.echelon.reduce(_to_vector(m_lambda(lam, sctx), sctx))
    return _form_value(x, y, lam, sctx, ideal, m_bar_vec)


def dim_D_lambda(lam: Partition, sctx: SpechtContext) -> int:
    """Dimension of the irreducible head: the rank of the Gram matrix."""
    return specht_module(lam, sctx).gram_rank()


def count_standard_tableaux(lam: Partition) -> int:
    """Exact count of standard fillings by backtracking enumeration."""
    parts = lam.parts
    rows = len(parts)

    def rec(filled: tuple[int, ...]) -> int:
        if sum(filled) == lam.n:
            return 1
        total = 0
        for r in range(rows):
            if filled[r] < parts[r] and (r == 0 or filled[r - 1] > filled[r]):
                total += rec(filled[:r] + (filled[r] + 1,) + filled[r + 1 :])
        return total

    return rec((0,) * rows)
