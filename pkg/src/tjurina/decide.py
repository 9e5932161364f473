"""Deciding whether an ideal is the Tjurina ideal of a single germ.

``I`` is a Tjurina ideal exactly when it is T-full and ``Delta(I)`` is
T-dependent. In that case a generic linear combination of generators of
``Delta(I)`` is a witness ``f`` with ``T(f) = I``, and conversely a verified
witness proves the verdict without computing the colon ideal.
"""

from __future__ import annotations

import logging
import random
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .engine import Ideal
from .ops import antiderivatives, is_T_full, ord_ideal, tjurina_of_poly
from .ring import Poly
from .tdep import DependenceResult, is_T_dependent

__all__ = [
    "DecisionReport",
    "InconsistencyError",
    "is_tjurina_ideal",
    "find_witness",
    "check_witness",
    "principal_ideal_classifier",
    "PrincipalVerdict",
    "minimal_generator_count",
]

log = logging.getLogger(__name__)


class InconsistencyError(RuntimeError):
    """Two certificates that must agree do not."""


@dataclass
class DecisionReport:
    """Everything computed while deciding ``I``.

    ``t_dependent`` is ``None`` when it was never needed (the ideal failed
    T-fullness). ``t_dependent_source`` says how it was obtained: ``"colon"``
    (the colon ideal criterion), ``"witness"`` (a verified witness, by the
    main theorem), ``"generator-count"`` (too many generators for a T-full
    ideal, by the same theorem) or ``"trivial"``.
    """

    ideal: Ideal
    delta: Ideal
    t_delta: Ideal | None
    t_full: bool
    t_dependent: bool | None
    verdict: bool
    witness: Poly | None = None
    lambda_used: tuple | None = None
    tries: int = 0
    reason: str = ""
    t_dependent_source: str | None = None
    dependence: DependenceResult | None = None
    generator_count: int | None = None
    warnings: list = field(default_factory=list)

    def __bool__(self):
        return self.verdict

    @property
    def colon_certificate(self):
        """``(colon ideal, nonzero x -> 0 images)`` when the colon was computed."""
        if self.dependence is None or self.dependence.colon is None:
            return None
        return self.dependence.colon, self.dependence.images


def minimal_generator_count(I: Ideal) -> int:
    """Minimal number of generators, i.e. ``dim I / mI``.

    Any irredundant generating set of an ideal of a local ring is minimal,
    so this is the size of :meth:`Ideal.minimal_generators`. The unit ideal
    gets 1 with a warning.
    """
    if not I.ctx.is_local:
        raise ValueError("generator counts are computed in the local ring")
    if I.is_unit():
        warnings.warn("unit ideal: reporting one generator", stacklevel=2)
        return 1
    return len(I.minimal_generators().gens)


def check_witness(I: Ideal, f: Poly, in_delta: bool = False) -> bool:
    """``T(f) == I``.

    ``T(f)`` lies in ``I`` exactly when ``f`` is in ``Delta(I)``; pass
    ``in_delta`` when that is known. Equality is then a question about
    ``I / mI`` only.
    """
    t = tjurina_of_poly(f)
    if not in_delta and not I.contains(t):
        return False
    return I.equals_subideal(t)


def _combine(gens: Sequence[Poly], lam: Sequence[int]) -> Poly:
    f = gens[0].ctx.zero()
    for g, c in zip(gens, lam):
        if c:
            f = f + g.scale(c)
    return f


def find_witness(
    I: Ideal,
    seed: int = 0,
    max_tries: int = 32,
    coeff_bound: int = 5,
    delta: Ideal | None = None,
    verdict: bool | None = None,
):
    """Search ``f = sum lam_k g_k`` over generators ``g`` of ``Delta(I)``.

    ``lam`` is drawn from ``[-coeff_bound, coeff_bound]^q`` minus the origin
    by a PRNG seeded with ``seed``. Returns ``(f, lam, tries)`` with ``f``
    the first candidate satisfying ``T(f) == I``, or ``(None, None, tries)``.
    A known negative ``verdict`` returns at once.
    """
    if coeff_bound < 1:
        raise ValueError("coeff_bound must be positive")
    if verdict is False:
        return None, None, 0
    if delta is None:
        delta = antiderivatives(I)
    gens = list(delta.gens)
    if not gens:
        return None, None, 0
    rng = random.Random(seed)
    q = len(gens)
    for attempt in range(1, max_tries + 1):
        lam = (0,) * q
        while not any(lam):
            lam = tuple(rng.randint(-coeff_bound, coeff_bound) for _ in range(q))
        f = _combine(gens, lam)
        if not f.is_zero() and check_witness(I, f, in_delta=True):
            return f, lam, attempt
    return None, None, max_tries


def is_tjurina_ideal(
    I: Ideal,
    seed: int = 0,
    max_tries: int = 32,
    coeff_bound: int = 5,
    certify: bool = False,
) -> DecisionReport:
    """Decide whether ``I = T(f)`` for some ``f``.

    The witness search runs before the colon test; a verified witness
    settles T-dependence of ``Delta(I)``. With ``certify`` the colon ideal is
    computed regardless and must agree with the witness.
    """
    ctx = I.ctx
    if not ctx.is_local:
        raise ValueError("expected an ideal of the local ring")
    if I.is_zero():
        return DecisionReport(
            I, Ideal.zero(ctx), Ideal.zero(ctx), True, True, True,
            witness=ctx.zero(), reason="zero ideal", t_dependent_source="trivial",
        )
    if I.is_unit():
        return DecisionReport(
            I, Ideal.unit(ctx), Ideal.unit(ctx), True, True, True,
            witness=ctx.var(0), reason="unit ideal", t_dependent_source="trivial",
        )

    full = is_T_full(I)
    report = DecisionReport(I, full.delta, full.t_delta, full.full, None, False)
    if not full:
        report.reason = "not T-full"
        return report

    n = ctx.nvars
    report.generator_count = count = minimal_generator_count(I)
    if count > n + 1:
        report.t_dependent = False
        report.t_dependent_source = "generator-count"
        report.reason = f"needs {count} generators, more than n+1 = {n + 1}"
        return report

    f, lam, tries = find_witness(I, seed, max_tries, coeff_bound, delta=full.delta)
    report.tries = tries
    if f is not None:
        report.witness, report.lambda_used = f, lam
        report.t_dependent, report.t_dependent_source = True, "witness"
        report.verdict = True
        report.reason = "T-full and Delta(I) T-dependent"
        if not certify:
            return report

    dep = is_T_dependent(full.delta, tjurina=I)
    report.dependence = dep
    if f is not None and not dep.dependent:
        raise InconsistencyError(f"witness {f} found but Delta(I) is not T-dependent")
    report.t_dependent, report.t_dependent_source = dep.dependent, "colon"
    report.verdict = dep.dependent
    if not dep.dependent:
        report.reason = "not T-dependent"
    elif f is None:
        msg = f"no witness after {tries} tries; raise max_tries or coeff_bound"
        log.warning(msg)
        report.warnings.append(msg)
        report.reason = "T-full and Delta(I) T-dependent"
    return report


@dataclass(frozen=True)
class PrincipalVerdict:
    tjurina: bool
    reason: str
    t_full: bool

    def __bool__(self):
        return self.tjurina


def _multiplicity(f: Poly) -> int:
    return min(sum(e) for e in f.terms)


def principal_ideal_classifier(I: Ideal, factor_hints=None) -> PrincipalVerdict:
    """Classify a nonzero principal ideal ``(f)``.

    Without hints the answer is T-fullness alone. ``factor_hints`` is a list
    of irreducible, pairwise non-associated factors, each a ``Poly`` or a
    ``(Poly, exponent)`` pair, whose product must generate ``I``. Then
    ``(f^k)`` with ``f`` irreducible is Tjurina iff ``f`` has multiplicity
    one, and two or more distinct factors rule it out. The closed form is
    checked against the T-fullness test.
    """
    gens = I.minimal_generators().gens
    if len(gens) != 1:
        raise ValueError("expected a nonzero principal ideal")
    full = bool(is_T_full(I))
    if factor_hints is None:
        return PrincipalVerdict(full, "T-full" if full else "not T-full", full)

    factors = []
    for h in factor_hints:
        p, k = h if isinstance(h, tuple) else (h, 1)
        if k < 1 or p.is_zero():
            raise ValueError(f"bad factor hint {h!r}")
        if p.constant_term() != 0:
            raise ValueError(f"factor {p} is a unit")
        factors.append((p, k))
    if not factors:
        raise ValueError("no factor hints given")
    product = I.ctx.const(1)
    for p, k in factors:
        product = product * p**k
    if Ideal([product], I.ctx) != I:
        raise ValueError("factor hints do not generate the ideal")

    if len(factors) >= 2:
        verdict, reason = False, f"{len(factors)} distinct irreducible factors"
    else:
        p, k = factors[0]
        mult = _multiplicity(p)
        verdict = mult == 1
        reason = f"irreducible factor of multiplicity {mult}"
    if verdict != full:
        raise InconsistencyError(f"closed form says {verdict}, T-fullness says {full}")
    return PrincipalVerdict(verdict, reason, full)


def lambda_to_json(lam) -> list | None:
    if lam is None:
        return None
    return [str(Fraction(c)) if not isinstance(c, int) else c for c in lam]
