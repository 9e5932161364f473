"""T-dependence through a colon ideal in the mixed ring ``S = O[a_1..a_q]``.

For ``J = (g_1, ..., g_q)`` put ``sigma = sum g_i a_i`` and let ``T(sigma)``
be the ideal of ``S`` generated by ``sigma`` and its derivatives in the local
variables. ``J`` is T-dependent when the colon ``(T(sigma) : T(J) S)`` is not
contained in the extension of the maximal ideal, i.e. when some element of
the colon survives setting every local variable to zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

from .engine import Ideal, ideal_quotient
from .ops import tjurina_of_ideal
from .ring import Poly, RingContext, substitute_locals_zero

__all__ = [
    "MixedRingBundle",
    "build_sigma",
    "tjurina_sheaf_ideal",
    "is_T_dependent",
    "DependenceResult",
    "saturate",
]


class MixedRingBundle:
    """A local ring together with ``S = O[a_1..a_q]`` and the maps between them.

    The ``a`` variables form a global block placed before the local ones.
    """

    def __init__(self, base_ctx: RingContext, q: int, prefix: str = "a"):
        if not base_ctx.is_local:
            raise ValueError("base context must be pure local")
        if q < 1:
            raise ValueError("need at least one generator")
        while any(n.startswith(prefix) for n in base_ctx.names):
            prefix += "a"
        self.base_ctx = base_ctx
        self.q = q
        self.alpha_names = [f"{prefix}{i + 1}" for i in range(q)]
        self.mixed_ctx = RingContext.mixed(self.alpha_names, base_ctx.names)

    @property
    def n(self) -> int:
        return self.base_ctx.nvars

    def alpha(self, i: int) -> Poly:
        return self.mixed_ctx.var(i)

    def local_indices(self) -> range:
        return range(self.q, self.q + self.n)

    def lift(self, f: Poly) -> Poly:
        if f.ctx != self.base_ctx:
            raise ValueError("lift expects an element of the base ring")
        pad = (0,) * self.q
        return Poly._raw({pad + e: c for e, c in f.terms.items()}, self.mixed_ctx)

    def lift_ideal(self, J: Ideal) -> Ideal:
        return Ideal([self.lift(g) for g in J.gens], self.mixed_ctx)

    def project(self, F: Poly) -> Poly:
        """Inverse of :meth:`lift` on elements of ``a``-degree zero."""
        if F.ctx != self.mixed_ctx:
            raise ValueError("project expects an element of the mixed ring")
        out = {}
        for e, c in F.terms.items():
            if any(e[: self.q]):
                raise ValueError(f"{F} has positive a-degree")
            out[e[self.q:]] = c
        return Poly._raw(out, self.base_ctx)

    def alpha_degrees(self, F: Poly) -> set[int]:
        return F.block_degree(range(self.q))

    def specialize(self, F: Poly, values: Sequence) -> Poly:
        """Substitute numbers for the ``a`` variables, landing in the base ring."""
        images = [self.base_ctx.const(v) for v in values]
        images += self.base_ctx.gens()
        return F.evaluate_ring_map(images, self.base_ctx)

    def __repr__(self):
        return f"MixedRingBundle(q={self.q}, ring={self.mixed_ctx})"


def build_sigma(J_gens: Sequence[Poly], bundle: MixedRingBundle) -> Poly:
    """``sigma = sum_i g_i a_i``."""
    if len(J_gens) == 0:
        raise ValueError("sigma needs at least one generator")
    if len(J_gens) != bundle.q:
        raise ValueError(f"{len(J_gens)} generators for a bundle with q={bundle.q}")
    S = bundle.mixed_ctx
    sigma = S.zero()
    for i, g in enumerate(J_gens):
        sigma = sigma + bundle.lift(g) * bundle.alpha(i)
    return sigma


def tjurina_sheaf_ideal(sigma: Poly, bundle: MixedRingBundle) -> Ideal:
    """``(sigma, d sigma/dx_1, ..., d sigma/dx_n)``; no derivatives in ``a``."""
    if bundle.alpha_degrees(sigma) - {1}:
        raise ValueError("sigma must be homogeneous of degree 1 in the a variables")
    return Ideal([sigma] + [sigma.diff(i) for i in bundle.local_indices()], bundle.mixed_ctx)


def saturate(I: Ideal, J: Ideal, max_steps: int = 50) -> Ideal:
    """``(I : J^infinity)`` by iterated quotients."""
    current = I
    for _ in range(max_steps):
        nxt = ideal_quotient(current, J)
        if nxt == current:
            return current
        current = nxt
    raise RuntimeError("saturation did not stabilize")


@dataclass
class DependenceResult:
    """Outcome of the T-dependence test plus its certificate.

    ``colon`` is ``(T(sigma) : T(J) S)`` and ``images`` the nonzero images
    of its generators under ``x -> 0``. Everything is ``None`` for the
    zero ideal, which is T-dependent by convention.
    """

    dependent: bool
    J: Ideal
    generators: list = field(default_factory=list)
    bundle: MixedRingBundle | None = None
    sigma: Poly | None = None
    sheaf_ideal: Ideal | None = None
    lifted_tjurina: Ideal | None = None
    colon: Ideal | None = None
    images: list = field(default_factory=list)

    def __bool__(self):
        return self.dependent

    @cached_property
    def saturated_colon(self) -> Ideal | None:
        """Colon saturated at the irrelevant ideal ``(a_1, ..., a_q)``.

        This is the ideal of the support of the quotient sheaf; it lies in
        the extension of the maximal ideal iff the plain colon does.
        """
        if self.colon is None:
            return None
        b = self.bundle
        irrelevant = Ideal([b.alpha(i) for i in range(b.q)], b.mixed_ctx)
        return saturate(self.colon, irrelevant)

    @property
    def witness(self) -> Poly | None:
        """A colon element outside the extended maximal ideal, if any."""
        if self.colon is None:
            return None
        for g in self.colon.gens:
            if not substitute_locals_zero(g).is_zero():
                return g
        return None


def _tidy(I: Ideal) -> Ideal:
    """A minimal generating set with few terms.

    Picks from the given generators or from a standard basis (the reduced
    one for m-primary ideals), whichever needs fewer terms in total. Unit
    factors of the given generators are shed that way.
    """
    plain = I.minimal_generators()
    if I.is_unit():
        return plain
    basis = I.reduced_basis() if I.noether_degree() is not None else I.std
    alt = Ideal(basis, I.ctx)
    alt._share_basis(I)
    alt = alt.minimal_generators()
    size = lambda J: sum(len(g.terms) for g in J.gens)  # noqa: E731
    return alt if size(alt) < size(plain) else plain


def is_T_dependent(J: Ideal, minimize: bool = True, tjurina: Ideal | None = None) -> DependenceResult:
    """Decide T-dependence of ``J`` from the colon ideal criterion.

    With ``minimize`` the generators are first replaced by a small minimal
    set, which keeps the number of ``a`` variables down; the answer does
    not depend on the generating set. ``tjurina`` may supply an ideal known to
    equal ``T(J)`` with nicer generators.
    """
    if not J.ctx.is_local:
        raise ValueError("T-dependence is defined for ideals of the local ring")
    if J.is_zero():
        return DependenceResult(True, J)
    gens = list(_tidy(J).gens if minimize else J.gens)
    bundle = MixedRingBundle(J.ctx, len(gens))
    sigma = build_sigma(gens, bundle)
    sheaf = tjurina_sheaf_ideal(sigma, bundle)
    if tjurina is None:
        tjurina = tjurina_of_ideal(Ideal(gens, J.ctx))
    tj = _tidy(tjurina)
    lifted = bundle.lift_ideal(tj)
    colon = ideal_quotient(sheaf, lifted)
    # S / mS is the polynomial ring in the a's, so generators decide it
    images = [substitute_locals_zero(g) for g in colon.gens]
    images = [p for p in images if not p.is_zero()]
    return DependenceResult(
        dependent=bool(images),
        J=J,
        generators=gens,
        bundle=bundle,
        sigma=sigma,
        sheaf_ideal=sheaf,
        lifted_tjurina=lifted,
        colon=colon,
        images=images,
    )
