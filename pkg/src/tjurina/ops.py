"""Tjurina ideals, antiderivative ideals and T-fullness."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from . import _kernel as K
from . import _linalg
from .engine import Ideal, Submodule, VectorPoly, _eliminate, modulo
from .ring import Poly

__all__ = [
    "tjurina_of_poly",
    "tjurina_of_ideal",
    "antiderivatives",
    "antiderivative_module",
    "ord_ideal",
    "is_T_full",
    "FullnessResult",
]


def _require_local(ctx):
    if not ctx.is_local:
        raise ValueError(f"expected a pure local context, got {ctx}")


def tjurina_of_poly(f: Poly) -> Ideal:
    """The ideal ``(f, df/dx_1, ..., df/dx_n)``."""
    _require_local(f.ctx)
    return Ideal([f] + [f.diff(i) for i in range(f.ctx.nvars)], f.ctx)


def tjurina_of_ideal(J: Ideal) -> Ideal:
    """Sum of ``T(g)`` over the given generators of ``J``."""
    _require_local(J.ctx)
    gens = []
    for g in J.gens:
        gens.extend(tjurina_of_poly(g).gens)
    return Ideal(gens, J.ctx)


def antiderivative_module(I: Ideal) -> Submodule:
    """Coefficient vectors ``a`` with ``<a, f>`` in the antiderivative ideal.

    Here ``f`` is the generator row of ``I``; the module is ``modulo`` of
    the Jacobian columns against ``I``, i.e. the intersection over ``j`` of
    ``modulo(df/dx_j, I)``, done in one elimination.
    """
    _require_local(I.ctx)
    ctx = I.ctx
    cols = [VectorPoly([g.diff(j) for j in range(ctx.nvars)], ctx) for g in I.gens]
    return modulo(cols, I)


def antiderivatives(I: Ideal, minimal: bool = True) -> Ideal:
    """The ideal of all ``g`` with ``T(g)`` contained in ``I``.

    Generators are the pairings of the columns of
    :func:`antiderivative_module` with the generators of ``I``. With
    ``minimal`` the result is pruned to a minimal generating set.

    Examples
    --------
    >>> from tjurina.ring import RingContext
    >>> ctx = RingContext.local("x,y")
    >>> antiderivatives(Ideal.parse("x*y", ctx)).to_strings()
    ['x^2*y^2']
    """
    _require_local(I.ctx)
    ctx = I.ctx
    if I.is_zero():
        return Ideal.zero(ctx)
    if I.is_unit():
        return Ideal.unit(ctx)
    D = I.noether_degree()
    if D is not None:
        delta = _antiderivatives_artinian(I, D)
    else:
        delta = _antiderivatives_elimination(I.minimal_generators())
    if minimal:
        delta = delta.minimal_generators()
    return delta


def _antiderivatives_elimination(I: Ideal) -> Ideal:
    """``Delta(I)`` with a standard basis, from one elimination.

    Rows ``(grad g_i | g_i)`` and ``(b e_j | 0)`` for ``b`` in ``I``; the
    eliminated block holds the Jacobian columns, so the surviving bottom
    entries ``sum a_i g_i`` are exactly the elements of ``Delta(I)``, and
    the elimination hands back a standard basis of it.
    """
    ctx = I.ctx
    n = ctx.nvars
    zero = ctx.zero()
    rows = [([g.diff(j) for j in range(n)], [g]) for g in I.gens]
    for j in range(n):
        for b in I.gens:
            top = [zero] * n
            top[j] = b
            rows.append((top, [zero]))
    return Ideal._from_std([v[0] for v in _eliminate(ctx, n, rows)], ctx)


def _monomials_up_to(n: int, d: int):
    """Exponent tuples of total degree at most ``d``."""
    for c in itertools.combinations_with_replacement(range(n + 1), d):
        yield tuple(c.count(i) for i in range(n))


def _antiderivatives_artinian(I: Ideal, D: int) -> Ideal:
    """``Delta(I)`` for ``m^D`` inside ``I`` by linear algebra.

    Every monomial of degree ``D + 1`` lies in ``Delta(I)``; below that,
    ``g`` belongs to it iff the normal forms of ``g`` and of its partials
    vanish, a linear condition on the coefficients of ``g``.
    """
    ctx = I.ctx
    n = ctx.nvars
    monos = [e for e in _monomials_up_to(n, D) if sum(e) > 0]
    nf_cache = {}

    def nf(e):
        if e not in nf_cache:
            nf_cache[e] = {} if sum(e) >= D else dict(I.normal_form(Poly._raw({e: 1}, ctx)).terms)
        return nf_cache[e]

    keys = {}
    rows: dict = {}
    for col, e in enumerate(monos):
        entries = [(0, e, 1)]
        for j in range(n):
            if e[j]:
                lower = e[:j] + (e[j] - 1,) + e[j + 1:]
                entries.append((j + 1, lower, e[j]))
        for block, mono, scale in entries:
            for sm, c in nf(mono).items():
                key = keys.setdefault((block, sm), len(keys))
                rows.setdefault(key, {})[col] = K.QQ(c) * scale
    kernel = _linalg.nullspace(list(rows.values()), len(monos))
    gens = [Poly({monos[c]: K.to_rational(v) for c, v in vec.items()}, ctx).primitive() for vec in kernel]
    gens += [Poly._raw({e: 1}, ctx) for e in _monomials_up_to(n, D + 1) if sum(e) == D + 1]
    return Ideal(gens, ctx)


def ord_ideal(I: Ideal) -> float | int:
    """Largest ``k`` with ``I`` inside the ``k``-th power of the maximal ideal."""
    _require_local(I.ctx)
    if I.is_zero():
        return math.inf
    return min(min(sum(e) for e in g.terms) for g in I.std)


@dataclass(frozen=True)
class FullnessResult:
    full: bool
    delta: Ideal
    t_delta: Ideal

    def __bool__(self):
        return self.full


def is_T_full(I: Ideal, delta: Ideal | None = None) -> FullnessResult:
    """Test ``I == T(Delta(I))``; truthy when it holds.

    Only ``I <= T(Delta(I))`` has to be checked since the other inclusion
    always holds.
    """
    if delta is None:
        delta = antiderivatives(I)
    t_delta = tjurina_of_ideal(delta)
    return FullnessResult(I.equals_subideal(t_delta), delta, t_delta)
