"""Standard bases in localizations via Mora's normal form.

Every ideal and submodule computation reduces to one primitive: a standard
basis of a submodule of a free module under an order that puts a block of
leading components above all others. Elements of the standard basis whose
leading term sits in the lower block have a zero upper block, which yields
syzygies, ``modulo``, intersections and quotients.

Module order: elimination block first, then the monomial order of the
context, then the component index (lower index is larger).
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

from . import _kernel as K
from . import _linalg
from .ring import Poly, RingContext

__all__ = [
    "VectorPoly",
    "Ideal",
    "Submodule",
    "mora_weak_normal_form",
    "standard_basis",
    "ideal_sum",
    "ideal_product",
    "ideal_power",
    "ideal_equal",
    "ideal_contains",
    "ideal_intersect",
    "ideal_quotient",
    "module_intersect",
    "syzygies",
    "modulo",
]


class VectorPoly:
    """Element of a free module ``F_l`` over the context's ring."""

    __slots__ = ("entries", "ctx")

    def __init__(self, entries: Sequence[Poly], ctx: RingContext | None = None):
        entries = tuple(entries)
        if ctx is None:
            if not entries:
                raise ValueError("empty vector needs an explicit context")
            ctx = entries[0].ctx
        for p in entries:
            if p.ctx != ctx:
                raise ValueError("all entries must share one context")
        self.entries = entries
        self.ctx = ctx

    @classmethod
    def zero(cls, rank: int, ctx: RingContext) -> "VectorPoly":
        return cls([ctx.zero()] * rank, ctx)

    @classmethod
    def unit(cls, rank: int, i: int, ctx: RingContext) -> "VectorPoly":
        e = [ctx.zero()] * rank
        e[i] = ctx.const(1)
        return cls(e, ctx)

    @property
    def rank(self) -> int:
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.entries)

    def pair(self, other: Union["VectorPoly", Sequence[Poly]]) -> Poly:
        """Bilinear pairing ``sum_k b_k c_k``."""
        other = list(other)
        if len(other) != self.rank:
            raise ValueError("rank mismatch in pairing")
        acc = self.ctx.zero()
        for b, c in zip(self.entries, other):
            if b and c:
                acc = acc + b * c
        return acc

    def __add__(self, other: "VectorPoly") -> "VectorPoly":
        _check_rank(self, other)
        return VectorPoly([a + b for a, b in zip(self.entries, other.entries)], self.ctx)

    def __sub__(self, other: "VectorPoly") -> "VectorPoly":
        _check_rank(self, other)
        return VectorPoly([a - b for a, b in zip(self.entries, other.entries)], self.ctx)

    def __neg__(self):
        return VectorPoly([-a for a in self.entries], self.ctx)

    def __mul__(self, c):
        if isinstance(c, (Poly, int, Fraction)):
            return VectorPoly([a * c for a in self.entries], self.ctx)
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, VectorPoly):
            return NotImplemented
        return self.ctx == other.ctx and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "VectorPoly([" + ", ".join(str(p) for p in self.entries) + "])"


def _check_rank(a: VectorPoly, b: VectorPoly):
    if a.rank != b.rank:
        raise ValueError(f"rank mismatch: {a.rank} vs {b.rank}")
    if a.ctx != b.ctx:
        raise ValueError("context mismatch")


# ---------------------------------------------------------------------------
# bridges to the packed kernel
# ---------------------------------------------------------------------------

def _vec_terms(entries: Sequence[Poly], offset: int = 0) -> dict:
    terms = {}
    for comp, p in enumerate(entries):
        for e, c in p.terms.items():
            terms[(comp + offset, e)] = c
    return terms


def _elem_of(entries: Sequence[Poly], order: K.Order) -> K.Elem:
    return K.elem(_vec_terms(entries), order)


def _entries_of(E: K.Elem, order: K.Order, rank: int, offset: int = 0) -> list:
    buckets = [dict() for _ in range(rank)]
    for (comp, e), c in K.unpack_terms(E, order).items():
        buckets[comp - offset][e] = c
    return [Poly._raw(b, order.ctx) for b in buckets]


def _exact_entries(g: K.Elem, order: K.Order, rank: int) -> list:
    """Entries of a basis element as an honest member of the span.

    Under truncation at ``D`` an element whose leading term has degree at
    least ``D`` only stands for that term, which the span contains.
    """
    D = order.trunc
    if D is not None and order.degree[g.lead] >= D:
        comp, e = order.unpack[g.lead]
        entries = [order.ctx.zero()] * rank
        entries[comp] = Poly._raw({e: 1}, order.ctx)
        return entries
    return _entries_of(K.primitive(g, order), order, rank)


def _eliminate(ctx: RingContext, top_rank: int, rows: list) -> list:
    """Bottom parts of the standard basis elements with vanishing top part.

    ``rows`` holds pairs ``(top, bottom)`` of poly lists; the result generates
    ``{sum c_i bottom_i : sum c_i top_i = 0}``.
    """
    order = K.Order(ctx, top_rank)
    nb = len(rows[0][1]) if rows else 0
    elems = [_elem_of(list(top) + list(bottom), order) for top, bottom in rows]
    basis = K.standard_basis([e for e in elems if e.terms], order)
    out = []
    for g in basis:
        if order.component(g.lead) >= top_rank:
            g = K.primitive(g, order)
            out.append(_entries_of(g, order, nb, offset=top_rank))
    return out


# ---------------------------------------------------------------------------
# public containers
# ---------------------------------------------------------------------------

class Ideal:
    """Ideal of the (local or mixed) ring given by generators.

    Equality is mathematical: ``I == J`` tests two-way containment.
    """

    def __init__(self, gens: Iterable[Poly], ctx: RingContext | None = None):
        gens = [g for g in gens]
        if ctx is None:
            if not gens:
                raise ValueError("an ideal without generators needs a context")
            ctx = gens[0].ctx
        for g in gens:
            if not isinstance(g, Poly):
                raise TypeError(f"generator {g!r} is not a Poly")
            if g.ctx != ctx:
                raise ValueError(f"context mismatch: {g.ctx} vs {ctx}")
        self.gens = tuple(g for g in gens if not g.is_zero())
        self.ctx = ctx

    @classmethod
    def parse(cls, src: str | Sequence[str], ctx: RingContext) -> "Ideal":
        """Comma separated polynomial list (or a list of strings)."""
        if isinstance(src, str):
            parts = _split_top_level(src)
        else:
            parts = list(src)
        return cls([ctx.parse(p) for p in parts if p.strip()], ctx)

    @classmethod
    def unit(cls, ctx: RingContext) -> "Ideal":
        return cls([ctx.const(1)], ctx)

    @classmethod
    def zero(cls, ctx: RingContext) -> "Ideal":
        return cls([], ctx)

    @classmethod
    def maximal(cls, ctx: RingContext, power: int = 1) -> "Ideal":
        """Power of the ideal generated by all local variables."""
        m = cls([ctx.var(i) for i in ctx.local_indices()], ctx)
        return m**power

    # -- standard basis ----------------------------------------------------
    @cached_property
    def _order(self) -> K.Order:
        return K.Order(self.ctx)

    @cached_property
    def _full_basis(self) -> list:
        order = self._order
        return K.standard_basis([_elem_of([g], order) for g in self.gens], order, full=True, rank=1)

    @cached_property
    def _std_elems(self) -> list:
        return K.minimalize(self._full_basis, self._order)

    @cached_property
    def std(self) -> tuple:
        """Minimal standard basis (by leading terms), primitive integer form."""
        return tuple(_exact_entries(g, self._order, 1)[0] for g in self._std_elems)

    def is_zero(self) -> bool:
        return not self.gens

    def noether_degree(self) -> int | None:
        """A degree ``D`` with ``m^D`` inside the ideal, or ``None``.

        Known only for ideals of the local ring whose leading ideal contains
        a pure power of every variable.
        """
        if not self.ctx.is_local or self.is_zero():
            return None
        self._std_elems
        return self._order.trunc

    def normal_form(self, f: Poly) -> Poly:
        """Unique fully reduced representative of ``f`` modulo the ideal.

        Only available when :meth:`noether_degree` is known.
        """
        if self.noether_degree() is None:
            raise ValueError("normal forms need an m-primary ideal of the local ring")
        order = self._order
        rem = K.reduced_normal_form(_elem_of([f], order), self._full_basis, order)
        return _entries_of(K.Elem(rem, order), order, 1)[0]

    def reduced_basis(self) -> tuple:
        """The reduced standard basis ``m - NF(m)`` over minimal leading
        monomials ``m``; only for m-primary ideals of the local ring.

        It depends on the ideal alone, so unit factors of the given
        generators disappear.
        """
        if self.noether_degree() is None:
            raise ValueError("reduced bases need an m-primary ideal of the local ring")
        out = []
        for e in self.lead_monomials():
            m = Poly._raw({e: 1}, self.ctx)
            out.append(m - self.normal_form(m))
        return tuple(out)

    def is_unit(self) -> bool:
        unpack = self._order.unpack
        return any(not any(unpack[g.lead][1]) for g in self._std_elems)

    def lead_monomials(self) -> list:
        leads = {self._order.unpack[g.lead][1] for g in self._std_elems}
        return sorted(leads, key=self.ctx.key, reverse=True)

    def reduce(self, f: Poly) -> Poly:
        """Weak normal form of ``f`` against the standard basis."""
        if f.ctx != self.ctx:
            raise ValueError("context mismatch")
        order = self._order
        h = K.weak_normal_form(_elem_of([f], order), self._full_basis, order)
        return _entries_of(h, order, 1)[0]

    def contains(self, other: Union[Poly, "Ideal"]) -> bool:
        if isinstance(other, Ideal):
            self._check(other)
            return all(self.contains(g) for g in other.gens)
        if other.ctx != self.ctx:
            raise ValueError("context mismatch")
        if other.is_zero():
            return True
        if self.is_unit():
            return True
        order = self._order
        return K.contains(_elem_of([other], order), self._full_basis, self._std_elems, order)

    __contains__ = contains

    def _check(self, other: "Ideal"):
        if other.ctx != self.ctx:
            raise ValueError(f"context mismatch: {self.ctx} vs {other.ctx}")

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        self._check(other)
        if not self.ctx.is_local:
            return self.contains(other) and other.contains(self)
        # one standard basis suffices: J <= I and J spans I / mI
        base, sub = sorted((self, other), key=Ideal._std_cost)
        return base.contains(sub) and base.equals_subideal(sub)

    def _std_cost(self) -> tuple:
        return ("_std_elems" not in self.__dict__, sum(len(g.terms) for g in self.gens))

    def __le__(self, other: "Ideal") -> bool:
        return other.contains(self)

    def __ge__(self, other: "Ideal") -> bool:
        return self.contains(other)

    __hash__ = None

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        return Ideal(self.gens + other.gens, self.ctx)

    def __mul__(self, other: "Ideal") -> "Ideal":
        self._check(other)
        return Ideal([a * b for a in self.gens for b in other.gens], self.ctx)

    def __pow__(self, k: int) -> "Ideal":
        if k < 0:
            raise ValueError("negative power")
        result = Ideal.unit(self.ctx)
        for _ in range(k):
            result = Ideal(_dedupe(a * b for a in result.gens for b in self.gens), self.ctx)
        return result

    def intersect(self, *others: "Ideal") -> "Ideal":
        return ideal_intersect(self, *others)

    def quotient(self, other: Union["Ideal", Poly]) -> "Ideal":
        return ideal_quotient(self, other)

    # -- generators modulo m*I ------------------------------------------------
    @cached_property
    def _cotangent(self):
        """Data for linear algebra in ``I / mI``.

        With ``N`` one more than the top leading degree of a standard basis,
        standard representations give ``I & m^N <= mI``, so ``I / mI`` embeds
        in the finite dimensional ``O / (mI + m^N)``. Returns the order
        truncated at ``N`` and a standard basis of ``mI`` there.
        """
        order = K.Order(self.ctx)
        top = max(self._order.degree[g.lead] for g in self._std_elems)
        order.trunc = top + 1
        gens = []
        for g in self.std:
            for x in self.ctx.gens():
                gens.append(_elem_of([x * g], order))
        basis = K.standard_basis([e for e in gens if e.terms], order, rank=1)
        return order, basis

    def _cotangent_class(self, g: Poly) -> dict:
        order, basis = self._cotangent
        return K.reduced_normal_form(_elem_of([g], order), basis, order)

    def minimal_generators(self) -> "Ideal":
        """A minimal generating set picked from the given generators.

        In the local ring this is a basis of ``I / mI`` (Nakayama), found by
        linear algebra. In a mixed ring redundant generators are dropped one
        at a time, which gives an irredundant set.
        """
        gens = list(_dedupe(self.gens))
        if not gens:
            return Ideal([], self.ctx)
        if self.ctx.is_local:
            ech = _linalg.Echelon()
            kept = [g for g in gens if ech.add(self._cotangent_class(g))]
        else:
            kept = gens
            i = 0
            while i < len(kept):
                rest = kept[:i] + kept[i + 1:]
                if rest and Ideal(rest, self.ctx).contains(kept[i]):
                    kept = rest
                else:
                    i += 1
        out = Ideal(kept, self.ctx)
        out._share_basis(self)
        return out

    def equals_subideal(self, J: "Ideal") -> bool:
        """``J == I`` for an ideal ``J`` already known to lie inside ``I``.

        In the local ring this needs no standard basis of ``J``: by Nakayama
        ``J == I`` iff the generators of ``J`` span ``I / mI``.
        """
        self._check(J)
        if not self.ctx.is_local:
            return J.contains(self)
        if self.is_zero():
            return True
        ech = _linalg.Echelon()
        for h in J.gens:
            ech.add(self._cotangent_class(h))
        return all(self._cotangent_class(g) in ech for g in self.std)

    def _share_basis(self, other: "Ideal"):
        """Reuse the standard basis of an ideal with the same span."""
        for key in ("_full_basis", "_std_elems", "std", "_cotangent"):
            if key in other.__dict__:
                self.__dict__[key] = other.__dict__[key]
        if "_full_basis" in other.__dict__:
            self.__dict__["_order"] = other._order

    @classmethod
    def _from_std(cls, polys: Sequence[Poly], ctx: RingContext) -> "Ideal":
        """Ideal generated by polys already known to form a standard basis."""
        out = cls(polys, ctx)
        order = out._order
        basis = [_elem_of([p], order) for p in out.gens]
        out.__dict__["_full_basis"] = basis
        out.__dict__["_std_elems"] = K.minimalize(basis, order)
        if order.truncatable:
            order.trunc = K.corner_degree([g.lead for g in basis], order, 1)
        return out

    def to_strings(self) -> list[str]:
        return [str(g) for g in self.gens]

    def __repr__(self):
        return "Ideal(" + ", ".join(str(g) for g in self.gens) + ")"


def _dedupe(polys) -> list:
    seen = []
    for p in polys:
        if p.is_zero():
            continue
        q = p.monic()
        if all(q != s.monic() for s in seen):
            seen.append(p)
    return seen


def _split_top_level(src: str) -> list[str]:
    parts, depth, cur = [], 0, []
    for ch in src:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


class Submodule:
    """Submodule of ``F_rank`` given by generators (columns)."""

    def __init__(self, gens: Iterable[VectorPoly], rank: int, ctx: RingContext):
        gens = list(gens)
        for g in gens:
            if g.rank != rank:
                raise ValueError(f"generator of rank {g.rank} in a rank {rank} module")
            if g.ctx != ctx:
                raise ValueError("context mismatch")
        self.gens = tuple(g for g in gens if not g.is_zero())
        self.rank = rank
        self.ctx = ctx

    @classmethod
    def free(cls, rank: int, ctx: RingContext) -> "Submodule":
        return cls([VectorPoly.unit(rank, i, ctx) for i in range(rank)], rank, ctx)

    @classmethod
    def from_columns(cls, rows: Sequence[Sequence[Poly]], ctx: RingContext) -> "Submodule":
        """Build from a matrix given row by row; columns are generators."""
        rank = len(rows)
        ncols = len(rows[0]) if rows else 0
        cols = [VectorPoly([rows[r][c] for r in range(rank)], ctx) for c in range(ncols)]
        return cls(cols, rank, ctx)

    @cached_property
    def _order(self) -> K.Order:
        return K.Order(self.ctx)

    @cached_property
    def _full_basis(self) -> list:
        order = self._order
        return K.standard_basis([_elem_of(g.entries, order) for g in self.gens], order, full=True, rank=self.rank)

    @cached_property
    def _std_elems(self) -> list:
        return K.minimalize(self._full_basis, self._order)

    @cached_property
    def std(self) -> tuple:
        out = []
        for g in self._std_elems:
            out.append(VectorPoly(_exact_entries(g, self._order, self.rank), self.ctx))
        return tuple(out)

    def reduce(self, v: VectorPoly) -> VectorPoly:
        if v.rank != self.rank:
            raise ValueError("rank mismatch")
        order = self._order
        h = K.weak_normal_form(_elem_of(v.entries, order), self._full_basis, order)
        return VectorPoly(_entries_of(h, order, self.rank), self.ctx)

    def contains(self, other: Union[VectorPoly, "Submodule"]) -> bool:
        if isinstance(other, Submodule):
            return all(self.contains(g) for g in other.gens)
        if other.rank != self.rank:
            raise ValueError("rank mismatch")
        order = self._order
        return K.contains(_elem_of(other.entries, order), self._full_basis, self._std_elems, order)

    __contains__ = contains

    def __eq__(self, other):
        if not isinstance(other, Submodule):
            return NotImplemented
        if other.rank != self.rank:
            return False
        return self.contains(other) and other.contains(self)

    __hash__ = None

    def __repr__(self):
        return f"Submodule(rank={self.rank}, gens={list(self.gens)})"


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def mora_weak_normal_form(f, G: Sequence) -> Poly | VectorPoly:
    """Remainder ``r`` with ``u f = sum q_i g_i + r`` for a unit ``u``.

    ``G`` is a list of polys (or vectors of equal rank). When ``G`` is a
    standard basis, ``r == 0`` exactly when ``f`` lies in the span of ``G``.
    """
    ctx = f.ctx
    for g in G:
        if g.ctx != ctx:
            raise ValueError("context mismatch")
    order = K.Order(ctx)
    if isinstance(f, Poly):
        elems = [_elem_of([g], order) for g in G]
        h = K.weak_normal_form(_elem_of([f], order), elems, order)
        return _entries_of(h, order, 1)[0]
    elems = [_elem_of(g.entries, order) for g in G]
    h = K.weak_normal_form(_elem_of(f.entries, order), elems, order)
    return VectorPoly(_entries_of(h, order, f.rank), ctx)


def standard_basis(M: Union[Ideal, Submodule]) -> Union[Ideal, Submodule]:
    """Same ideal/submodule, presented by its standard basis."""
    if isinstance(M, Ideal):
        out = Ideal(M.std, M.ctx)
        out.__dict__["_std_elems"] = M._std_elems
        return out
    out = Submodule(M.std, M.rank, M.ctx)
    out.__dict__["_std_elems"] = M._std_elems
    return out


def ideal_sum(*ideals: Ideal) -> Ideal:
    out = ideals[0]
    for J in ideals[1:]:
        out = out + J
    return out


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    return I * J


def ideal_power(I: Ideal, k: int) -> Ideal:
    return I**k


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    return I == J


def ideal_contains(I: Ideal, x: Union[Poly, Ideal]) -> bool:
    return I.contains(x)


def syzygies(G: Sequence[Union[VectorPoly, Poly]]) -> Submodule:
    """Module of relations ``a`` with ``sum a_i G_i = 0``."""
    G = [VectorPoly([g]) if isinstance(g, Poly) else g for g in G]
    if not G:
        raise ValueError("syzygies of an empty list need a context")
    ctx, rank, k = G[0].ctx, G[0].rank, len(G)
    for g in G:
        if g.rank != rank or g.ctx != ctx:
            raise ValueError("generators must share rank and context")
    zero = ctx.zero()
    rows = []
    for i, g in enumerate(G):
        bottom = [zero] * k
        bottom[i] = ctx.const(1)
        rows.append((list(g.entries), bottom))
    gens = _eliminate(ctx, rank, rows)
    return Submodule([VectorPoly(b, ctx) for b in gens], k, ctx)


def modulo(A: Sequence[Union[Poly, VectorPoly]], B: Union[Ideal, Sequence[Poly]]) -> Submodule:
    """``{a in F_s : sum a_i A_i in B F_r}``.

    ``A`` is a row of ``s`` polys (``r = 1``) or a list of ``s`` columns of
    rank ``r``.
    """
    A = list(A)
    if not isinstance(B, Ideal):
        B = Ideal(list(B), A[0].ctx if A else None)
    ctx = B.ctx
    cols = [VectorPoly([a], ctx) if isinstance(a, Poly) else a for a in A]
    for a in cols:
        if a.ctx != ctx:
            raise ValueError("context mismatch")
    r = cols[0].rank if cols else 1
    if any(a.rank != r for a in cols):
        raise ValueError("columns of unequal rank")
    s = len(cols)
    zero = ctx.zero()
    rows = []
    for i, a in enumerate(cols):
        bottom = [zero] * s
        bottom[i] = ctx.const(1)
        rows.append((list(a.entries), bottom))
    for k in range(r):
        for b in B.gens:
            top = [zero] * r
            top[k] = b
            rows.append((top, [zero] * s))
    gens = _eliminate(ctx, r, rows)
    return Submodule([VectorPoly(v, ctx) for v in gens], s, ctx)


def module_intersect(*modules: Submodule) -> Submodule:
    if not modules:
        raise ValueError("nothing to intersect")
    ctx, rank = modules[0].ctx, modules[0].rank
    for M in modules:
        if M.rank != rank:
            raise ValueError(f"rank mismatch: {M.rank} vs {rank}")
        if M.ctx != ctx:
            raise ValueError("context mismatch")
    out = modules[0]
    zero = [ctx.zero()] * rank
    for M in modules[1:]:
        rows = [(list(u.entries), list(u.entries)) for u in out.gens]
        rows += [(list(v.entries), zero) for v in M.gens]
        if not out.gens or not M.gens:
            out = Submodule([], rank, ctx)
            continue
        gens = _eliminate(ctx, rank, rows)
        out = Submodule([VectorPoly(g, ctx) for g in gens], rank, ctx)
    return out


def ideal_intersect(*ideals: Ideal) -> Ideal:
    if not ideals:
        raise ValueError("nothing to intersect")
    ctx = ideals[0].ctx
    for I in ideals:
        if I.ctx != ctx:
            raise ValueError("context mismatch")
    out = ideals[0]
    for J in ideals[1:]:
        if out.is_zero() or J.is_zero():
            out = Ideal.zero(ctx)
            continue
        rows = [([u], [u]) for u in out.gens] + [([v], [ctx.zero()]) for v in J.gens]
        out = Ideal([g[0] for g in _eliminate(ctx, 1, rows)], ctx)
    return out


def ideal_quotient(A: Ideal, B: Union[Ideal, Poly]) -> Ideal:
    """The colon ideal ``(A : B) = {h : h B in A}``.

    One elimination: ``modulo`` of the column of generators of ``B``
    against ``A``. ``(A : (0))`` is the unit ideal.
    """
    if isinstance(B, Poly):
        B = Ideal([B], A.ctx)
    A._check(B)
    ctx = A.ctx
    if B.is_zero():
        return Ideal.unit(ctx)
    if A.is_zero():
        return Ideal.zero(ctx)
    col = VectorPoly(list(B.gens), ctx)
    M = modulo([col], A)
    return Ideal([v[0] for v in M.gens], ctx)
