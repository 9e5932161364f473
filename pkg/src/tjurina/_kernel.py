"""Low-level standard basis kernel.

A term (monomial times basis vector) is packed into one integer whose
natural ordering is the module order, so leading terms are plain ``max``
calls. From the most significant end the fields are: elimination flag, then
for each variable block its signed degree followed by the negated exponents
in reverse variable order, then the component (lower index ranks higher).
Every exponent-dependent field is linear in the exponents, so multiplying by
a monomial is integer addition and dividing leading terms is subtraction.
"""

from __future__ import annotations

import heapq
import itertools
import math
from fractions import Fraction

from .ring import Mode

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    QQ = Fraction

_W = 16
_OFF = 1 << 14
_MAX_EXP = _OFF - 1
_FIELD = (1 << _W) - 1


class _Memo(dict):
    def __init__(self, fn):
        super().__init__()
        self.fn = fn

    def __missing__(self, key):
        v = self[key] = self.fn(key)
        return v


class Order:
    """Packed-term order: eliminated components, monomial order, component."""

    def __init__(self, ctx, n_elim: int = 0):
        self.ctx = ctx
        self.n_elim = n_elim
        self.nvars = n = ctx.nvars
        # least significant field first
        slot = 1  # slot 0 holds the component
        exp_pos = [0] * n
        self._deg_fields = []
        deg_pos = {}
        for start, stop, mode in reversed(ctx.blocks):
            for i in range(start, stop):
                exp_pos[i] = _W * slot
                slot += 1
            deg_pos[start] = _W * slot
            self._deg_fields.append((_W * slot, mode is Mode.GLOBAL))
            slot += 1
        self._exp_pos = exp_pos
        self._flag = 1 << (_W * slot)
        self.comp_mask = _FIELD | (_FIELD << (_W * slot))
        self.exp_mask = sum(_FIELD << p for p in exp_pos)
        self.guard = sum(1 << (p + _W - 1) for p in exp_pos)
        self._base = sum(_OFF << p for p in exp_pos) + sum(_OFF << p for p, _ in self._deg_fields)
        self._var_delta = []
        for start, stop, mode in ctx.blocks:
            sign = 1 if mode is Mode.GLOBAL else -1
            for i in range(start, stop):
                self._var_delta.append(sign * (1 << deg_pos[start]) - (1 << exp_pos[i]))
        self.unpack = _Memo(self._unpack)
        self.degree = _Memo(self._degree)
        # Terms of degree >= trunc are dropped (they lie in the module).
        self.trunc = None
        self.truncatable = n_elim == 0 and all(m is Mode.LOCAL for _, _, m in ctx.blocks)

    def pack(self, comp: int, exps) -> int:
        t = self._base + (_FIELD - comp)
        if comp < self.n_elim:
            t += self._flag
        for i, e in enumerate(exps):
            if e:
                if e > _MAX_EXP:
                    raise OverflowError(f"exponent {e} too large")
                t += e * self._var_delta[i]
        return t

    def _unpack(self, t: int):
        comp = _FIELD - (t & _FIELD)
        exps = tuple(_OFF - ((t >> p) & _FIELD) for p in self._exp_pos)
        return comp, exps

    def _degree(self, t: int) -> int:
        d = 0
        for pos, is_global in self._deg_fields:
            v = ((t >> pos) & _FIELD) - _OFF
            d += v if is_global else -v
        return d

    def component(self, t: int) -> int:
        return _FIELD - (t & _FIELD)

    def lcm(self, a: int, b: int) -> int:
        ca, ea = self.unpack[a]
        _, eb = self.unpack[b]
        return self.pack(ca, tuple(max(x, y) for x, y in zip(ea, eb)))

    def divides(self, a: int, b: int) -> bool:
        """Leading term ``a`` divides ``b``."""
        if (a ^ b) & self.comp_mask:
            return False
        m = self.exp_mask
        g = self.guard
        return (((a & m) | g) - (b & m)) & g == g


def corner_degree(leads, order: Order, rank: int) -> int | None:
    """Degree ``D`` with all terms of degree ``>= D`` inside the leading
    module, read off from pure powers among ``leads``; ``None`` if absent."""
    n = order.nvars
    powers = [[None] * n for _ in range(rank)]
    for t in leads:
        c, e = order.unpack[t]
        nz = [i for i, x in enumerate(e) if x]
        row = powers[c]
        if not nz:
            row[:] = [0] * n
        elif len(nz) == 1:
            i = nz[0]
            if row[i] is None or e[i] < row[i]:
                row[i] = e[i]
    if any(x is None for r in powers for x in r):
        return None
    return max(sum(max(x, 1) - 1 for x in r) + 1 for r in powers)


class Elem:
    __slots__ = ("terms", "lead", "lc", "deg", "ecart", "sugar", "secart")

    def __init__(self, terms: dict, order: Order):
        self.terms = terms
        if terms:
            lead = max(terms)
            self.lead = lead
            self.lc = terms[lead]
            deg = order.degree
            self.deg = max(map(deg.__getitem__, terms))
            trunc = order.trunc
            if trunc is not None and self.deg >= trunc:
                terms = {t: v for t, v in terms.items() if deg[t] < trunc}
                self.terms = terms
                if not terms:
                    self.lead, self.lc, self.deg, self.ecart = None, 0, -1, 0
                    return
                self.lead = lead = max(terms)
                self.lc = terms[lead]
                self.deg = max(map(deg.__getitem__, terms))
            self.ecart = self.deg - deg[lead]
        else:
            self.lead = None
            self.lc = 0
            self.deg = -1
            self.ecart = 0


def elem(terms: dict, order: Order) -> Elem:
    """Build from ``{(comp, exps): coeff}``."""
    return Elem({order.pack(c, e): QQ(v) for (c, e), v in terms.items() if v}, order)


def to_rational(c):
    if isinstance(c, (int, Fraction)):
        return c
    num, den = int(c.numerator), int(c.denominator)
    return num if den == 1 else Fraction(num, den)


def unpack_terms(E: Elem, order: Order) -> dict:
    """``{(comp, exps): rational}``."""
    return {order.unpack[t]: to_rational(v) for t, v in E.terms.items()}


def primitive(E: Elem, order: Order) -> Elem:
    """Coprime integer coefficients with a positive leading coefficient."""
    if not E.terms:
        return E
    vals = list(E.terms.values())
    den = math.lcm(*(int(v.denominator) for v in vals))
    g = math.gcd(*(int(v * den) for v in vals))
    s = QQ(den, g)
    if E.lc < 0:
        s = -s
    return Elem({t: v * s for t, v in E.terms.items()}, order)


def _tame(E: Elem, order: Order) -> Elem:
    """Clear denominators and content once the leading coefficient grows."""
    c = E.lc
    if E.terms and int(c.numerator).bit_length() + int(c.denominator).bit_length() > 128:
        return primitive(E, order)
    return E


def reduce_once(h: Elem, g: Elem, order: Order) -> Elem:
    """``h - (lt(h)/lt(g)) g`` for ``lead(g) | lead(h)``."""
    c = h.lc / g.lc
    shift = h.lead - g.lead
    terms = dict(h.terms)
    get = terms.get
    for t, v in g.terms.items():
        t += shift
        s = get(t, 0) - c * v
        if s:
            terms[t] = s
        else:
            del terms[t]
    return Elem(terms, order)


def weak_normal_form(f: Elem, G: list, order: Order, max_steps: int | None = None):
    """Mora's normal form: pick the divisor of least ecart; keep ``h`` as a
    future reducer whenever that divisor's ecart exceeds ``h``'s.

    Returns ``None`` once ``max_steps`` reductions have been spent.
    """
    h = f
    T = list(G)
    m = order.exp_mask
    guard = order.guard
    cm = order.comp_mask
    steps = 0
    while h.terms:
        if max_steps is not None:
            if steps >= max_steps:
                return None
            steps += 1
        hl = h.lead
        hm = hl & m
        best = None
        for g in T:
            gl = g.lead
            if not ((gl ^ hl) & cm) and (((gl & m) | guard) - hm) & guard == guard:
                if best is None or g.ecart < best.ecart:
                    best = g
                    if g.ecart == 0:
                        break
        if best is None:
            break
        if best.ecart > h.ecart:
            T.append(h)
        h = reduce_once(h, best, order)
    return h


def spoly(f: Elem, g: Elem, order: Order) -> Elem:
    lcm = order.lcm(f.lead, g.lead)
    sf = lcm - f.lead
    sg = lcm - g.lead
    cf = 1 / f.lc
    cg = 1 / g.lc
    terms = {t + sf: v * cf for t, v in f.terms.items()}
    get = terms.get
    for t, v in g.terms.items():
        t += sg
        s = get(t, 0) - v * cg
        if s:
            terms[t] = s
        else:
            terms.pop(t, None)
    return Elem(terms, order)


def _truncate(elems: list, order: Order):
    deg = order.degree
    D = order.trunc
    for g in elems:
        if g.deg >= D and deg[g.lead] < D:
            g.terms = {t: v for t, v in g.terms.items() if deg[t] < D}
            g.deg = max(map(deg.__getitem__, g.terms))
            g.ecart = g.deg - deg[g.lead]


def _work(h: Elem, g: Elem, scanned: int) -> int:
    """Rough cost of one reduction step: terms touched times limb count,
    plus the reducers scanned to find ``g``."""
    c = h.lc / g.lc
    limbs = 1 + (int(c.numerator).bit_length() + int(c.denominator).bit_length()) // 64
    return len(g.terms) * limbs + scanned // 4


class _Completion:
    """Mora's standard basis algorithm with a shared reducer set.

    ``S`` is the basis (it gets S-pairs), ``T`` every known element of the
    span usable as a reducer; ``T`` contains ``S``. Work is ordered by the
    homogenized degree (sugar) ``D``; an element's tracked ecart is ``D``
    minus the degree of its leading term. Reducing by an element of larger
    ecart raises ``D``, and before doing so the element is stored in ``T``
    and deferred behind pending work of the same degree, so that reducers
    of smaller ecart found meanwhile can be used instead.

    For a local degree order of known ``rank``, once the leading terms hold
    a pure power of every variable in every component, all terms beyond the
    implied degree bound are dropped (they lie in the span).
    """

    def __init__(self, order: Order, S: list | None = None, T: list | None = None,
                 rank: int | None = None):
        self.order = order
        self.S = S if S is not None else []
        self.T = T if T is not None else list(self.S)
        self.queue: list = []
        self.counter = itertools.count()
        self.overhead = 0  # work done outside reductions, charged to the budget
        # reducers by component: lists of (guarded exponent field, element)
        self.buckets: dict = {}
        for g in self.T:
            self._file(g)
        n = order.nvars
        watch = rank is not None and order.truncatable and order.trunc is None
        self.powers = [[None] * n for _ in range(rank)] if watch else None

    def _file(self, g: Elem):
        order = self.order
        key = g.lead & order.comp_mask
        self.buckets.setdefault(key, []).append(((g.lead & order.exp_mask) | order.guard, g))

    def push(self, D: int, h: Elem, deferred: bool = False):
        heapq.heappush(self.queue, (D, self.order.degree[h.lead], next(self.counter), -1, -1, (h, deferred)))

    def _candidates(self, h: Elem) -> list:
        return self.buckets.get(h.lead & self.order.comp_mask, ())

    def _best(self, h: Elem, cands) -> Elem | None:
        guard = self.order.guard
        hm = h.lead & self.order.exp_mask
        best = None
        bkey = None
        for gm, g in cands:
            if (gm - hm) & guard == guard:
                key = (g.secart, len(g.terms))
                if best is None or key < bkey:
                    best, bkey = g, key
        return best

    def _prune(self, h: Elem, top_of=None):
        """Chain criterion: drop queued pairs ``(a, b)`` whose lcm is a
        multiple of ``lead(h)`` with both ``(a, h)`` and ``(b, h)`` strictly
        below it."""
        order = self.order
        m = order.exp_mask
        guard = order.guard
        cm = order.comp_mask
        hl = h.lead
        hg = (hl & m) | guard
        hc = hl & cm
        lcm_of = order.lcm
        S = self.S
        self.overhead += len(self.queue) // 4 + len(S)
        kept = []
        for p in self.queue:
            a = p[3]
            if a >= 0:
                lcm = p[5]
                if not ((lcm ^ hc) & cm) and (hg - (lcm & m)) & guard == guard:
                    b = p[4]
                    if top_of is None:
                        if lcm_of(S[a].lead, hl) != lcm and lcm_of(S[b].lead, hl) != lcm:
                            continue
                    else:
                        top = top_of(p)
                        if (
                            h.secart <= top
                            and (lcm_of(S[a].lead, hl), max(S[a].secart, h.secart)) != (lcm, top)
                            and (lcm_of(S[b].lead, hl), max(S[b].secart, h.secart)) != (lcm, top)
                        ):
                            continue
            kept.append(p)
        if len(kept) != len(self.queue):
            self.queue[:] = kept
            heapq.heapify(self.queue)

    def _pairs(self, h: Elem):
        order = self.order
        deg = order.degree
        lcm_of = order.lcm
        cm = order.comp_mask
        S = self.S
        i = len(S)
        S.append(h)
        ch = h.lead & cm
        for j in range(i):
            g = S[j]
            if (g.lead & cm) != ch:
                continue
            lcm = lcm_of(g.lead, h.lead)
            fd = deg[lcm] + max(g.secart, h.secart)
            heapq.heappush(self.queue, (fd, deg[lcm], next(self.counter), j, i, lcm))

    def _add(self, h: Elem, D: int):
        h.secart = D - self.order.degree[h.lead]
        self._prune(h)
        self._pairs(h)
        self.T.append(h)
        self._file(h)
        if self.powers is not None:
            self._note_power(h)

    def _note_power(self, h: Elem):
        order = self.order
        n = order.nvars
        c, e = order.unpack[h.lead]
        nz = [i for i, x in enumerate(e) if x]
        row = self.powers[c]
        if not nz:
            row[:] = [0] * n
        elif len(nz) == 1:
            i = nz[0]
            if row[i] is None or e[i] < row[i]:
                row[i] = e[i]
        else:
            return
        if all(x is not None for r in self.powers for x in r):
            order.trunc = max(sum(max(x, 1) - 1 for x in r) + 1 for r in self.powers)
            self.powers = None
            _truncate(self.S, order)
            _truncate(self.T, order)

    def run(self, reject=None, budget: int | None = None):
        """Process the queue; ``False`` once ``reject`` accepts a new element,
        ``None`` once ``budget`` units of work have been spent."""
        order = self.order
        deg = order.degree
        queue = self.queue
        spent = 0
        while queue:
            D, _, _, a, b, item = heapq.heappop(queue)
            if a >= 0:
                h, deferred = spoly(self.S[a], self.S[b], order), False
            else:
                h, deferred = item
            while h is not None and h.terms:
                eh = D - deg[h.lead]
                cands = self._candidates(h)
                best = self._best(h, cands)
                if best is None:
                    break
                if budget is not None:
                    spent += _work(h, best, len(cands)) + self.overhead
                    self.overhead = 0
                    if spent > budget:
                        self.push(D, h, deferred)
                        return None
                if best.secart > eh:
                    if not deferred and queue and queue[0][0] <= D:
                        self.push(D, h, True)
                        h = None
                        break
                    h.secart = eh
                    self.T.append(h)
                    self._file(h)
                    D += best.secart - eh
                    h = _tame(reduce_once(h, best, order), order)
                    deferred = False
                    if h.terms and queue and queue[0][0] < D:
                        self.push(D, h)
                        h = None
                        break
                else:
                    h = _tame(reduce_once(h, best, order), order)
            if h is not None and h.terms:
                if reject is not None and reject(h):
                    return False
                h = primitive(h, order)
                if h.terms:  # empty once truncation catches up with it
                    self._add(h, D)
        return True


class _Homogeneous(_Completion):
    """Buchberger's algorithm on homogenizations, run on dehomogenized
    elements that remember their homogenized degree.

    An element may reduce ``h`` only if its sugar ecart is at most ``h``'s,
    so degrees never rise and whatever is left irreducible joins the basis.
    New elements are rehomogenized at their true degree; any homogeneous
    ideal that dehomogenizes to the right span will do, and the saturated
    one has the smaller Groebner basis. Dehomogenizing gives a standard
    basis for any order. Often fast where Mora's reducer sets blow up, and
    the other way round.
    """

    def _add(self, h: Elem, D: int):
        deg = self.order.degree
        h.secart = h.ecart
        self._prune(h, top_of=lambda p: p[0] - deg[p[5]])
        self._pairs(h)
        self._file(h)
        if self.powers is not None:
            self._note_power(h)

    def run(self, reject=None, budget: int | None = None):
        order = self.order
        deg = order.degree
        m = order.exp_mask
        guard = order.guard
        cm = order.comp_mask
        buckets = self.buckets
        queue = self.queue
        S = self.S
        spent = 0
        while queue:
            D, _, _, a, b, item = heapq.heappop(queue)
            h = spoly(S[a], S[b], order) if a >= 0 else item[0]
            while h.terms:
                hl = h.lead
                hm = hl & m
                eh = D - deg[hl]
                cands = buckets.get(hl & cm, ())
                best = None
                for gm, g in cands:
                    if g.secart <= eh and (gm - hm) & guard == guard:
                        if best is None or len(g.terms) < len(best.terms):
                            best = g
                if best is None:
                    break
                if budget is not None:
                    spent += _work(h, best, len(cands)) + self.overhead
                    self.overhead = 0
                    if spent > budget:
                        self.push(D, h)
                        return None
                h = _tame(reduce_once(h, best, order), order)
            if h.terms:
                if reject is not None and reject(h):
                    return False
                h = primitive(h, order)
                if h.terms:  # empty once truncation catches up with it
                    self._add(h, D)
        return True


def _alternate(start, budget: int, reject=None):
    """Run both completions by turns, each resuming where it stopped, with
    a growing work budget per turn."""
    runs = [start(algo) for algo in (_Homogeneous, _Completion)]
    while True:
        for run in runs:
            done = run.run(reject=reject, budget=budget)
            if done is not None:
                return run, done
        budget *= 2


def standard_basis(gens: list, order: Order, full: bool = False, rank: int | None = None,
                   budget: int = 10_000) -> list:
    """Standard basis of the span of ``gens`` (minimal by leading terms).

    The homogenized Buchberger algorithm and Mora's algorithm take turns
    under a work budget that grows every round; the first to finish wins.
    The budget counts terms touched, so the outcome is deterministic. With
    ``full`` every element produced along the way is returned, which makes
    a better set for weak normal forms.
    """
    gens = [g for g in gens if g.terms]

    def start(algo):
        run = algo(order, rank=rank)
        for g in gens:
            run.push(g.deg, g)
        return run

    run, _ = _alternate(start, budget)
    basis = run.T if full and type(run) is _Completion else run.S
    return basis if full else minimalize(basis, order)


def contains(f: Elem, full: list, minimal: list, order: Order, budget: int = 2000) -> bool:
    """Membership of ``f`` in the span of a standard basis.

    A budgeted weak normal form settles most cases. Otherwise ``f`` is
    added to the basis and the completion runs until a leading term outside
    the known leading ideal shows up (not a member) or the completion ends
    without one (member: the leading ideals agree).
    """
    if not f.terms:
        return True
    h = weak_normal_form(f, full, order, max_steps=budget)
    if h is not None:
        return not h.terms
    divides = order.divides

    def outside(h: Elem) -> bool:
        return not any(divides(g.lead, h.lead) for g in minimal)

    def start(algo):
        run = algo(order, S=list(full))
        run.push(f.deg, f)
        return run

    _, done = _alternate(start, 10_000, reject=outside)
    return done


def reduced_normal_form(f: Elem, G: list, order: Order) -> dict:
    """Fully reduced remainder, for an order with a truncation degree.

    Every term divisible by a leading term is rewritten; with ``trunc`` set
    the process is finite and the result is the unique representative in
    the span of standard monomials. Returns ``{packed term: coeff}``.
    """
    if order.trunc is None:
        raise ValueError("full reduction needs a truncation degree")
    divides = order.divides
    rem = {}
    h = f
    while h.terms:
        hl = h.lead
        best = None
        for g in G:
            if divides(g.lead, hl) and (best is None or len(g.terms) < len(best.terms)):
                best = g
        if best is None:
            rem[hl] = h.lc
            rest = dict(h.terms)
            del rest[hl]
            h = Elem(rest, order)
        else:
            h = reduce_once(h, best, order)
    return rem


def minimalize(S: list, order: Order) -> list:
    out: list = []
    for g in sorted(S, key=lambda g: (order.degree[g.lead], len(g.terms))):
        if any(order.divides(k.lead, g.lead) for k in out):
            continue
        out.append(g)
    return out
