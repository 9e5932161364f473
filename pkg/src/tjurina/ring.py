"""Exact polynomials over QQ with local, global and mixed block orders.

A :class:`RingContext` fixes the variables and the monomial order. Variables
flagged ``LOCAL`` are ordered by negative degree reverse lexicographic order
(every local variable is smaller than 1), ``GLOBAL`` ones by degree reverse
lexicographic order (larger than 1). Blocks are compared left to right.

Polynomials in a pure-local context stand for germs in the localization of
``QQ[x]`` at the origin, so a polynomial with nonzero constant term is a unit.
"""

from __future__ import annotations

import enum
import math
import re
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence, Union

__all__ = [
    "Mode",
    "RingContext",
    "Poly",
    "ParseError",
    "parse_poly",
    "partial_derivative",
    "ord_poly",
    "substitute_locals_zero",
]

Exponents = tuple  # tuple[int, ...], one entry per variable
Coeff = Union[int, Fraction]

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class Mode(enum.Enum):
    LOCAL = "local"
    GLOBAL = "global"


class RingContext:
    """Variable roster plus block monomial order.

    Parameters
    ----------
    names : sequence of str
        Variable names in order.
    modes : sequence of Mode, optional
        One mode per variable; defaults to all ``LOCAL``.
    """

    def __init__(self, names: Sequence[str], modes: Sequence[Mode] | None = None):
        names = tuple(names)
        if modes is None:
            modes = (Mode.LOCAL,) * len(names)
        modes = tuple(Mode(m) for m in modes)
        if len(modes) != len(names):
            raise ValueError("one mode per variable is required")
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for name in names:
            if not _NAME_RE.match(name):
                raise ValueError(f"invalid variable name {name!r}")
        self.names = names
        self.modes = modes
        self.nvars = len(names)
        blocks = []
        start = 0
        for i in range(1, len(names) + 1):
            if i == len(names) or modes[i] != modes[start]:
                if i > start:
                    blocks.append((start, i, modes[start]))
                start = i
        self.blocks = tuple(blocks)
        self._index = {name: i for i, name in enumerate(names)}
        self._keys: dict = {}

    @classmethod
    def local(cls, names: Sequence[str] | str) -> "RingContext":
        """Pure local context; ``names`` may be a comma separated string."""
        if isinstance(names, str):
            names = [n.strip() for n in names.split(",") if n.strip()]
        return cls(names)

    @classmethod
    def mixed(cls, global_names: Sequence[str], local_names: Sequence[str]) -> "RingContext":
        """Global block first, then the local block."""
        names = list(global_names) + list(local_names)
        modes = [Mode.GLOBAL] * len(global_names) + [Mode.LOCAL] * len(local_names)
        return cls(names, modes)

    @property
    def is_mixed(self) -> bool:
        return len({m for m in self.modes}) > 1

    @property
    def is_local(self) -> bool:
        return all(m is Mode.LOCAL for m in self.modes)

    def local_indices(self) -> list[int]:
        return [i for i, m in enumerate(self.modes) if m is Mode.LOCAL]

    def global_indices(self) -> list[int]:
        return [i for i, m in enumerate(self.modes) if m is Mode.GLOBAL]

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise ValueError(f"unknown variable {name!r}") from None

    def key(self, exps: Exponents) -> tuple:
        """Sort key: ``a > b`` in the monomial order iff ``key(a) > key(b)``."""
        k = self._keys.get(exps)
        if k is None:
            parts = []
            for start, stop, mode in self.blocks:
                block = exps[start:stop]
                deg = sum(block)
                parts.append(deg if mode is Mode.GLOBAL else -deg)
                parts.extend(-e for e in reversed(block))
            k = self._keys[exps] = tuple(parts)
        return k

    def one(self) -> Exponents:
        return (0,) * self.nvars

    def __eq__(self, other):
        if not isinstance(other, RingContext):
            return NotImplemented
        return self.names == other.names and self.modes == other.modes

    def __hash__(self):
        return hash((self.names, self.modes))

    def __repr__(self):
        inner = ", ".join(
            n if m is Mode.LOCAL else f"{n}:global" for n, m in zip(self.names, self.modes)
        )
        return f"RingContext({inner})"

    # convenience constructors for elements
    def var(self, name_or_index: str | int) -> "Poly":
        i = name_or_index if isinstance(name_or_index, int) else self.index(name_or_index)
        exps = [0] * self.nvars
        exps[i] = 1
        return Poly({tuple(exps): 1}, self)

    def gens(self) -> list["Poly"]:
        return [self.var(i) for i in range(self.nvars)]

    def const(self, c: Coeff) -> "Poly":
        return Poly({self.one(): c}, self)

    def zero(self) -> "Poly":
        return Poly({}, self)

    def parse(self, src: str) -> "Poly":
        return parse_poly(src, self)


def _as_coeff(c) -> Coeff:
    if isinstance(c, (int, Fraction)):
        return c
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"unsupported coefficient {c!r}")


def _normalize(c: Fraction) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class Poly:
    """Immutable polynomial with rational coefficients.

    ``terms`` maps exponent tuples to nonzero coefficients.
    """

    __slots__ = ("terms", "ctx", "_hash", "__dict__")

    def __init__(self, terms: Mapping[Exponents, Coeff], ctx: RingContext):
        clean = {}
        for e, c in terms.items():
            c = _as_coeff(c)
            if c:
                if len(e) != ctx.nvars:
                    raise ValueError(f"exponent {e} does not match {ctx}")
                clean[tuple(e)] = _normalize(c)
        self.terms = clean
        self.ctx = ctx
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, ctx: RingContext) -> "Poly":
        p = cls.__new__(cls)
        p.terms = terms
        p.ctx = ctx
        p._hash = None
        return p

    # -- inspection ------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def monomials(self) -> list[Exponents]:
        """Monomials in descending order."""
        return sorted(self.terms, key=self.ctx.key, reverse=True)

    def __iter__(self) -> Iterator[tuple[Exponents, Coeff]]:
        for e in self.monomials():
            yield e, self.terms[e]

    @cached_property
    def lm(self) -> Exponents:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=self.ctx.key)

    @property
    def lc(self) -> Coeff:
        return self.terms[self.lm]

    def degree(self) -> int:
        """Total degree; -1 for zero."""
        return max((sum(e) for e in self.terms), default=-1)

    def constant_term(self) -> Coeff:
        return self.terms.get(self.ctx.one(), 0)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def is_unit(self) -> bool:
        """Unit in the localization (pure local contexts only)."""
        if not self.ctx.is_local:
            raise ValueError("unit test is defined for pure local contexts")
        return self.constant_term() != 0

    def block_degree(self, indices: Iterable[int]) -> set[int]:
        """Set of partial degrees in the given variables over all terms."""
        idx = list(indices)
        return {sum(e[i] for i in idx) for e in self.terms}

    # -- arithmetic ------------------------------------------------------
    def _check(self, other: "Poly"):
        if other.ctx != self.ctx:
            raise ValueError(f"context mismatch: {self.ctx} vs {other.ctx}")

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return self.ctx.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, 0) + c
            if s:
                terms[e] = _normalize(s)
            else:
                terms.pop(e, None)
        return Poly._raw(terms, self.ctx)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({e: -c for e, c in self.terms.items()}, self.ctx)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c: Coeff) -> "Poly":
        c = _as_coeff(c)
        if not c:
            return self.ctx.zero()
        return Poly._raw({e: _normalize(v * c) for e, v in self.terms.items()}, self.ctx)

    def mul_monomial(self, m: Exponents, c: Coeff = 1) -> "Poly":
        return Poly._raw(
            {tuple(a + b for a, b in zip(e, m)): _normalize(v * c) for e, v in self.terms.items()},
            self.ctx,
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return Poly({e: c for e, c in terms.items() if c}, self.ctx)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self.ctx.const(1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ctx.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ctx, frozenset(self.terms.items())))
        return self._hash

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        return self.scale(Fraction(1) / Fraction(self.lc))

    def primitive(self) -> "Poly":
        """Integer coefficients with gcd 1 and positive leading coefficient."""
        if not self.terms:
            return self
        coeffs = [Fraction(c) for c in self.terms.values()]
        den = math.lcm(*(c.denominator for c in coeffs))
        nums = [int(c * den) for c in coeffs]
        g = math.gcd(*nums)
        if self.lc < 0:
            g = -g
        return self.scale(Fraction(den, g))

    def diff(self, i: int) -> "Poly":
        return partial_derivative(self, i)

    def subs_zero(self, indices: Iterable[int]) -> "Poly":
        """Set the variables at ``indices`` to zero."""
        idx = list(indices)
        return Poly._raw(
            {e: c for e, c in self.terms.items() if all(e[i] == 0 for i in idx)}, self.ctx
        )

    def evaluate_ring_map(self, images: Sequence["Poly"], target: RingContext) -> "Poly":
        """Substitute ``images[i]`` for variable ``i``."""
        out = target.zero()
        for e, c in self.terms.items():
            t = target.const(c)
            for i, k in enumerate(e):
                if k:
                    t = t * images[i] ** k
            out = out + t
        return out

    # -- printing --------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"Poly({format_poly(self)!r})"


def _format_monomial(e: Exponents, names: Sequence[str]) -> str:
    parts = []
    for name, k in zip(names, e):
        if k == 1:
            parts.append(name)
        elif k > 1:
            parts.append(f"{name}^{k}")
    return "*".join(parts)


def format_poly(f: Poly) -> str:
    """Canonical text: terms in descending order, ``*`` and ``^`` explicit."""
    if not f.terms:
        return "0"
    out = []
    for e, c in f:
        sign = "-" if c < 0 else "+"
        c = abs(c)
        mono = _format_monomial(e, f.ctx.names)
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        else:
            body = f"{c}*{mono}"
        out.append((sign, body))
    first_sign, first = out[0]
    text = ("-" if first_sign == "-" else "") + first
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


# -- parsing ---------------------------------------------------------------

class ParseError(ValueError):
    """Raised for malformed polynomial text; ``pos`` is the offending offset."""

    def __init__(self, message: str, pos: int, src: str = ""):
        self.pos = pos
        self.src = src
        super().__init__(f"{message} at position {pos}")


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z][A-Za-z0-9_]*)|(?P<op>[-+*^()]))"
)


def _tokenize(src: str):
    pos = 0
    tokens = []
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN_RE.match(src, pos)
        if not m:
            raise ParseError(f"unexpected character {src[pos:].lstrip()[0]!r}",
                             len(src) - len(src[pos:].lstrip()), src)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, ctx: RingContext):
        self.src = src
        self.ctx = ctx
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, value):
        kind, text, pos = self.take()
        if text != value:
            what = "end of input" if kind == "end" else repr(text)
            raise ParseError(f"expected {value!r}, found {what}", pos, self.src)

    def parse(self) -> Poly:
        result = self.expr()
        kind, text, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected token {text!r}", pos, self.src)
        return result

    def expr(self) -> Poly:
        sign = 1
        kind, text, _ = self.peek()
        if text in ("+", "-"):
            self.take()
            sign = -1 if text == "-" else 1
        acc = self.term().scale(sign)
        while True:
            kind, text, _ = self.peek()
            if text not in ("+", "-"):
                return acc
            self.take()
            t = self.term()
            acc = acc + t if text == "+" else acc - t

    def term(self) -> Poly:
        acc = self.factor()
        while self.peek()[1] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Poly:
        kind, text, pos = self.take()
        if kind == "num":
            if "/" in text and int(text.partition("/")[2]) == 0:
                raise ParseError("zero denominator", pos, self.src)
            base = self.ctx.const(Fraction(text))
        elif kind == "name":
            base = self.ctx.var(self._lookup(text, pos))
        elif text == "(":
            base = self.expr()
            self.expect(")")
        else:
            what = "end of input" if kind == "end" else repr(text)
            raise ParseError(f"expected a number, variable or '(', found {what}", pos, self.src)
        if self.peek()[1] == "^":
            self.take()
            kind, text, pos = self.take()
            if kind != "num" or "/" in text:
                raise ParseError("exponent must be a non-negative integer", pos, self.src)
            base = base ** int(text)
        return base

    def _lookup(self, name: str, pos: int) -> int:
        try:
            return self.ctx.index(name)
        except ValueError:
            raise ParseError(f"unknown variable {name!r}", pos, self.src) from None


def parse_poly(src: str, ctx: RingContext) -> Poly:
    """Parse ``src`` in the grammar ``expr := term (('+'|'-') term)*`` etc.

    Examples
    --------
    >>> ctx = RingContext.local("x,y,z")
    >>> str(parse_poly("x^2*y - 3*z", ctx))
    'x^2*y - 3*z'
    """
    return _Parser(src, ctx).parse()


# -- calculus and valuations -----------------------------------------------

def partial_derivative(f: Poly, var_index: int) -> Poly:
    if not 0 <= var_index < f.ctx.nvars:
        raise IndexError(f"variable index {var_index} out of range for {f.ctx}")
    terms = {}
    for e, c in f.terms.items():
        k = e[var_index]
        if k:
            d = list(e)
            d[var_index] = k - 1
            terms[tuple(d)] = c * k
    return Poly._raw(terms, f.ctx)


def ord_poly(f: Poly) -> float | int:
    """Smallest total degree of a term; ``math.inf`` for zero."""
    if not f.ctx.is_local:
        raise ValueError("ord is defined for pure local contexts")
    return min((sum(e) for e in f.terms), default=math.inf)


def substitute_locals_zero(f: Poly) -> Poly:
    """Image under ``x -> 0`` for every local variable; stays in ``f.ctx``.

    In the mixed ring the result is zero exactly when ``f`` lies in the
    extension of the maximal ideal.
    """
    return f.subs_zero(f.ctx.local_indices())
