"""Acceptance checks, one pass/fail line per criterion.

Run under pytest (lines appear in the terminal summary) or directly with
``python tests/test_acceptance.py``. Every comparison is exact.
"""

import itertools
import random
import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from tjurina import (  # noqa: E402
    Ideal,
    Poly,
    RingContext,
    antiderivatives,
    ideal_contains,
    ideal_equal,
    ideal_intersect,
    ideal_power,
    ideal_product,
    ideal_sum,
    is_T_dependent,
    is_T_full,
    is_tjurina_ideal,
    minimal_generator_count,
    ord_ideal,
    principal_ideal_classifier,
    substitute_locals_zero,
    tjurina_of_ideal,
    tjurina_of_poly,
)

from conftest import rand_poly  # noqa: E402

RESULTS = {}

X2 = RingContext.local("x,y")
X3 = RingContext.local("x,y,z")
X4 = RingContext.local("x,y,z,w")


def I(src, ctx):
    return Ideal.parse(src, ctx)


def mono(ctx, e):
    return Poly({tuple(e): 1}, ctx)


class Checks:
    """Collects named sub-checks for one criterion."""

    def __init__(self, number, title):
        self.number, self.title = number, title
        self.items = []

    def __call__(self, label, ok, detail=""):
        self.items.append((label, bool(ok), detail))
        return ok

    @property
    def ok(self):
        return all(ok for _, ok, _ in self.items)

    def failures(self):
        return [f"{label}{' [' + d + ']' if d else ''}" for label, ok, d in self.items if not ok]

    def line(self):
        status = "PASS" if self.ok else "FAIL"
        text = f"criterion {self.number:2d} {status}  {self.title} ({len(self.items)} checks)"
        if not self.ok:
            text += "; failed: " + "; ".join(self.failures())
        return text


def _finish(checks):
    RESULTS[checks.number] = checks.line()
    assert checks.ok, checks.line()


# 1 ----------------------------------------------------------------------

def criterion_1():
    c = Checks(1, "Delta of the five-generator ideal")
    delta = antiderivatives(I("x^2, x*y, y*z, z^2, y^2-x*z", X3))
    listed = I("x^3, x^2*y, 2*x*y^2-x^2*z, y^3-3*x*y*z, 2*y^2*z-x*z^2, y*z^2, z^3, x^2*z^2", X3)
    c("Delta(I) == listed", ideal_equal(delta, listed))
    return c


# 2 ----------------------------------------------------------------------

def criterion_2():
    c = Checks(2, "binomial chain Delta, T(Delta), T-fullness")
    J = I("x*y, x^4+y^3", X2)
    delta = antiderivatives(J)
    c("Delta", ideal_equal(delta, I("5*x*y^3+x^5, 4*x^4*y+y^4, x^2*y^2, x*y^4, x^5*y", X2)))
    t = tjurina_of_ideal(delta)
    c("T(Delta)", ideal_equal(t, I("x^2*y, x*y^2, x^4+y^3, x^5", X2)))
    c("xy not in T(Delta)", not ideal_contains(t, X2.parse("x*y")))
    c("is_T_full false", not is_T_full(J))
    return c


# 3 ----------------------------------------------------------------------

def criterion_3():
    c = Checks(3, "powers of the maximal ideal")
    for n, ctx in ((2, X2), (3, X3)):
        for k in (1, 2, 3):
            ok = ideal_equal(antiderivatives(Ideal.maximal(ctx, k)), Ideal.maximal(ctx, k + 1))
            c(f"Delta(m^{k}) = m^{k + 1}, n={n}", ok)
    m2 = Ideal.maximal(X2, 2)
    c("m^2 T-full", is_T_full(m2))
    c("m^3 not T-dependent", not is_T_dependent(Ideal.maximal(X2, 3), tjurina=m2).dependent)
    c("verdict(m^2) false", not is_tjurina_ideal(m2).verdict)
    return c


# 4 ----------------------------------------------------------------------

PRINCIPAL = ["x^2+y^3", "x*y", "x^2*y^3", "x+y^2", "(x+y^2)^2"]


def criterion_4():
    c = Checks(4, "T-dependence fixtures")
    res = is_T_dependent(I("x^4+y^3, x*y", X2))
    S = res.bundle.mixed_ctx
    a2sq = S.parse("a2^2")
    c("(x^4+y^3, xy) T-dependent", res.dependent)
    c("colon generator with image a2^2 up to sign",
      any(g == a2sq or g == -a2sq for g in res.images), ", ".join(map(str, res.images)))
    cert = S.parse("a2^2 - 12*x^2*y*a1^2")
    c("colon element mapping exactly to a2^2",
      res.colon.contains(cert) and substitute_locals_zero(cert) == a2sq)
    c("m^3 not T-dependent", not is_T_dependent(Ideal.maximal(X2, 3)).dependent)
    for src in PRINCIPAL:
        r = is_T_dependent(I(src, X2))
        S = r.bundle.mixed_ctx
        c(f"({src}) T-dependent", r.dependent)
        c(f"({src}) colon = (1)", r.colon.is_unit(),
          f"colon = ({', '.join(map(str, r.colon.gens))}), "
          f"saturated colon unit: {r.saturated_colon.is_unit()}")
        c(f"({src}) colon = (a1), saturated = (1)",
          ideal_equal(r.colon, Ideal.parse("a1", S)) and r.saturated_colon.is_unit())
    return c


# 5 ----------------------------------------------------------------------

def criterion_5():
    c = Checks(5, "four-variable intersection suite")
    f = X4.parse("x*w^2 - y*z^2")
    T = I("y*z, z^2, x*w, w^2", X4)
    c("T(f)", ideal_equal(tjurina_of_poly(f), T))
    c("verdict T(f) true", is_tjurina_ideal(T).verdict)
    I1, I2 = I("z, w", X4), I("y, z^2, w", X4)
    I3, I4 = I("x, z, w^2", X4), I("x, y, z^2, w^2", X4)
    c("I1 cap I2 cap I3 cap I4 = T(f)", ideal_equal(ideal_intersect(I1, I2, I3, I4), T))
    J = ideal_intersect(I1, I2, I3)
    c("I1 cap I2 cap I3", ideal_equal(J, I("y*z, z^2, x*w, z*w, w^2", X4)))
    d1, d2, d3 = antiderivatives(I1), antiderivatives(I2), antiderivatives(I3)
    c("Delta(I1)", ideal_equal(d1, I("z^2, z*w, w^2", X4)))
    c("Delta(I2)", ideal_equal(d2, I("y^2, z^3, w^2, y*z^2, y*w, z^2*w", X4)))
    c("Delta(I3)", ideal_equal(d3, I("x^2, z^2, w^3, x*z, x*w^2, z*w^2", X4)))
    delta = antiderivatives(J)
    c("Delta(cap) = cap Delta", ideal_equal(delta, ideal_intersect(d1, d2, d3)))
    report = is_tjurina_ideal(J)
    c("T-full", report.t_full)
    dep = is_T_dependent(delta, tjurina=J)
    c("Delta not T-dependent", not dep.dependent)
    c("verdict false", report.verdict is False and report.t_dependent is False)
    for name, K in (("I1 cap I4", ideal_intersect(I1, I4)), ("I2 cap I3", ideal_intersect(I2, I3))):
        count = minimal_generator_count(K)
        c(f"{name} needs 6 generators", count == 6, f"got {count}")
        c(f"{name} not Tjurina", not is_tjurina_ideal(K).verdict)
    return c


# 6 ----------------------------------------------------------------------

def _irreducible_monomial(rng):
    n = rng.randint(1, 4)
    ctx = [RingContext.local("x"), X2, X3, X4][n - 1]
    support = sorted(rng.sample(range(n), rng.randint(1, n)))
    exps = {i: rng.randint(1, 4) for i in support}
    return ctx, exps


def criterion_6():
    c = Checks(6, "irreducible monomial ideals")
    rng = random.Random(6)
    for k in range(20):
        ctx, exps = _irreducible_monomial(rng)
        n = ctx.nvars

        def unit(i, e):
            return tuple(e if j == i else 0 for j in range(n))

        J = Ideal([mono(ctx, unit(i, e)) for i, e in exps.items()], ctx)
        closed = ideal_sum(Ideal([mono(ctx, unit(i, e + 1)) for i, e in exps.items()], ctx),
                           ideal_power(J, 2))
        label = "(" + ", ".join(f"{ctx.names[i]}^{e}" for i, e in exps.items()) + ")"
        c(f"#{k} Delta{label}", ideal_equal(antiderivatives(J), closed))
        f = ctx.zero()
        for i, e in exps.items():
            f = f + mono(ctx, unit(i, e + 1))
        c(f"#{k} T(sum) = {label}", ideal_equal(tjurina_of_poly(f), J))
    return c


# 7 ----------------------------------------------------------------------

def criterion_7():
    c = Checks(7, "principal ideals")
    x, y = X2.var(0), X2.var(1)
    cusp = X2.parse("x^2 + y^3")
    cases = [
        ("x^2+y^3", [cusp], False),
        ("x*y", [x, y], False),
        ("x^2*y^3", [(x, 2), (y, 3)], False),
    ]
    smooth = X2.parse("x + y^2")
    for k in (1, 2):
        cases.append((f"(x+y^2)^{k}", [(smooth, k)], True))
    for src, hints, expected in cases:
        J = I(src, X2)
        report = is_tjurina_ideal(J)
        c(f"({src}) verdict {expected}", report.verdict is expected)
        c(f"({src}) T-full iff Tjurina", report.t_full is expected)
        c(f"({src}) closed-form classifier", principal_ideal_classifier(J, hints).tjurina is expected)
        if expected:
            c(f"({src}) witness", ideal_equal(tjurina_of_poly(report.witness), J))
    for k in (1, 2):
        J = Ideal([smooth**k], X2)
        c(f"T(x+y^2) = (1), T(Delta) = I, k={k}",
          tjurina_of_poly(smooth).is_unit()
          and ideal_equal(tjurina_of_ideal(antiderivatives(J)), J * tjurina_of_poly(smooth)))

    rng = random.Random(10)
    for k in range(10):
        ctx = rng.choice([X2, X3])
        n = ctx.nvars
        factors = rng.sample(range(n), rng.randint(1, n))
        exps = [rng.randint(1, 3) if i in factors else 0 for i in range(n)]
        f, g = mono(ctx, exps), mono(ctx, [e + 1 if e else 0 for e in exps])
        c(f"#{k} Delta(({f})) = ({g})",
          ideal_equal(antiderivatives(Ideal([f], ctx)), Ideal([g], ctx)))
    return c


# 8 ----------------------------------------------------------------------

FIXTURES = [
    ("x^2, x*y, y*z, z^2, y^2-x*z", X3),
    ("x*y, x^4+y^3", X2),
    ("x^2, x*y, y^2", X2),
    ("x^3, x^2*y, x*y^2, y^3", X2),
    ("x^2+y^3", X2),
    ("x*y", X2),
    ("y*z, z^2, x*w, z*w, w^2", X4),
]


def _rewrite(J, rng):
    ctx = J.ctx
    gens = list(J.gens)
    rng.shuffle(gens)
    out = [g * ctx.parse("1 + x") if i % 2 else g for i, g in enumerate(gens)]
    out.append(gens[0] * ctx.var(ctx.nvars - 1) + gens[-1])
    return Ideal(out, ctx)


def criterion_8():
    c = Checks(8, "round trip and generator independence")
    rng = random.Random(7)
    for k in range(50):
        ctx = rng.choice([RingContext.local("x"), X2, X3])
        f = rand_poly(ctx, rng, nterms=rng.randint(1, 4), mindeg=2, maxdeg=4)
        T = tjurina_of_poly(f)
        report = is_tjurina_ideal(T, seed=k)
        ok = report.verdict and ideal_equal(tjurina_of_poly(report.witness), T)
        c(f"#{k} f = {f}", ok)
    rng = random.Random(8)
    for src, ctx in FIXTURES:
        J = I(src, ctx)
        K = _rewrite(J, rng)
        c(f"({src}) generators rewritten", ideal_equal(J, K))
        c(f"T of ({src})", ideal_equal(tjurina_of_ideal(J), tjurina_of_ideal(K)))
        c(f"Delta of ({src})", ideal_equal(antiderivatives(J), antiderivatives(K)))
        if ctx is X2:
            same = is_T_dependent(J).dependent == is_T_dependent(K).dependent
            c(f"T-dependence of ({src})", same)
    return c


# 9 ----------------------------------------------------------------------

def _primary(rng, ctx=X2):
    gens = [rand_poly(ctx, rng, nterms=2, mindeg=2, maxdeg=3) for _ in range(2)]
    gens += [mono(ctx, (rng.randint(3, 5), 0)), mono(ctx, (0, rng.randint(3, 5)))]
    return Ideal(gens, ctx)


def _member(J, rng):
    ctx = J.ctx
    out = ctx.zero()
    for g in J.gens:
        out = out + rand_poly(ctx, rng, nterms=2, mindeg=0, maxdeg=2) * g
    return out


def criterion_9():
    c = Checks(9, "algebraic laws of T and Delta")
    rng = random.Random(9)
    ctx = X2
    for k in range(25):
        f = rand_poly(ctx, rng, nterms=3, mindeg=2, maxdeg=4)
        g = rand_poly(ctx, rng, nterms=3, mindeg=2, maxdeg=4)
        Tf, Tg = tjurina_of_poly(f), tjurina_of_poly(g)
        c(f"T(f+g) #{k}", ideal_contains(Tf + Tg, tjurina_of_poly(f + g)))
        mixed = Ideal([f], ctx) * Tg + Ideal([g], ctx) * Tf
        chain = (ideal_contains(mixed, tjurina_of_poly(f * g))
                 and ideal_contains(ideal_product(Tf, Tg), mixed)
                 and ideal_contains(ideal_intersect(Tf, Tg), ideal_product(Tf, Tg)))
        c(f"T(fg) chain #{k}", chain)
        u = ctx.const(rng.choice([1, 2, -3])) + rand_poly(ctx, rng, nterms=2, mindeg=1, maxdeg=2)
        c(f"T(uf) = T(f) #{k}", ideal_equal(Tf, tjurina_of_poly(f * u)))

    for k in range(25):
        J1 = Ideal([rand_poly(ctx, rng, 2, 2, 4) for _ in range(2)], ctx)
        J2 = Ideal([rand_poly(ctx, rng, 2, 2, 4)], ctx)
        T1, T2 = tjurina_of_ideal(J1), tjurina_of_ideal(J2)
        c(f"J in T(J) #{k}", ideal_contains(T1, J1))
        bigger = J1 + J2
        c(f"T monotone #{k}", ideal_contains(tjurina_of_ideal(bigger), T1))
        c(f"T of a sum #{k}", ideal_equal(tjurina_of_ideal(bigger), T1 + T2))
        c(f"T of an intersection #{k}", ideal_contains(ideal_intersect(T1, T2), tjurina_of_ideal(ideal_intersect(J1, J2))))

    for k in range(25):
        A, B = _primary(rng), _primary(rng)
        dA, dB = antiderivatives(A), antiderivatives(B)
        g, h = _member(dA, rng), _member(dA, rng)
        r = rand_poly(ctx, rng, nterms=3, mindeg=0, maxdeg=2)
        combo = r * g + h
        c(f"Delta closed under r*g+h #{k}", dA.contains(combo) and ideal_contains(A, tjurina_of_poly(combo)))
        c(f"I^2 in Delta in I #{k}", ideal_contains(dA, ideal_power(A, 2)) and ideal_contains(A, dA))
        c(f"Delta of intersection #{k}", ideal_equal(antiderivatives(ideal_intersect(A, B)), ideal_intersect(dA, dB)))
        c(f"Delta monotone #{k}", ideal_contains(antiderivatives(A + B), dA))
        c(f"ord(Delta) > ord(I) #{k}", ord_ideal(dA) >= ord_ideal(A) + 1)
    return c


# 10 ---------------------------------------------------------------------

def _span_oracle(gens, D):
    """Row-reduced span of ``m*g`` truncated below degree ``D``, exact."""
    monos = [e for e in itertools.product(range(D), repeat=2) if sum(e) < D]
    rows = []
    for g in gens:
        for m in monos:
            row = {}
            for e, coeff in g.terms.items():
                t = (e[0] + m[0], e[1] + m[1])
                if sum(t) < D:
                    row[t] = Fraction(coeff)
            if row:
                rows.append(row)
    pivots = {}
    for row in rows:
        _reduce(row, pivots)
        if row:
            p = max(row)
            inv = 1 / row[p]
            pivots[p] = {t: v * inv for t, v in row.items()}
    return pivots


def _reduce(row, pivots):
    while row:
        cand = [t for t in row if t in pivots]
        if not cand:
            return
        p = max(cand)
        factor = row[p]
        for t, v in pivots[p].items():
            nv = row.get(t, 0) - factor * v
            if nv:
                row[t] = nv
            else:
                row.pop(t, None)


def _oracle_contains(pivots, f, D):
    row = {e: Fraction(v) for e, v in f.terms.items() if sum(e) < D}
    _reduce(row, pivots)
    return not row


def _lcm_oracle(A, B, ctx):
    lcms = [tuple(max(p, q) for p, q in zip(a, b)) for a in A for b in B]
    return Ideal([mono(ctx, e) for e in lcms], ctx)


def criterion_10():
    c = Checks(10, "engine against independent oracles")
    rng = random.Random(10)
    ctx = X2
    seen = set()
    for k in range(10):
        a = rng.randint(2, 4)
        b = rng.randint(2, 12 // a)
        gens = [mono(ctx, (a, 0)), mono(ctx, (0, b))]
        gens += [rand_poly(ctx, rng, nterms=rng.randint(1, 3), mindeg=1, maxdeg=3) for _ in range(2)]
        J = Ideal(gens, ctx)
        D = a + b - 1  # m^D lies in (x^a, y^b)
        pivots = _span_oracle(gens, D)
        colength = len([e for e in itertools.product(range(D), repeat=2) if sum(e) < D]) - len(pivots)
        c(f"#{k} colength {colength} <= 12", colength <= 12)
        tests = [rand_poly(ctx, rng, nterms=rng.randint(1, 4), mindeg=0, maxdeg=5) for _ in range(6)]
        tests += [_member(J, rng) for _ in range(3)]
        tests += [mono(ctx, e) for e in itertools.product(range(4), repeat=2)]
        agree = True
        for f in tests:
            expect = _oracle_contains(pivots, f, D)
            seen.add(expect)
            agree &= J.contains(f) == expect
        c(f"#{k} membership agrees on {len(tests)} polynomials", agree)
    c("oracle saw members and non-members", seen == {True, False})

    for k in range(20):
        ctx = rng.choice([X2, X3])
        n = ctx.nvars
        A = [tuple(rng.randint(0, 3) for _ in range(n)) for _ in range(rng.randint(1, 3))]
        B = [tuple(rng.randint(0, 3) for _ in range(n)) for _ in range(rng.randint(1, 3))]
        got = ideal_intersect(Ideal([mono(ctx, e) for e in A], ctx), Ideal([mono(ctx, e) for e in B], ctx))
        c(f"#{k} monomial intersection", ideal_equal(got, _lcm_oracle(A, B, ctx)))
    return c


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.fixture(scope="module", autouse=True)
def _report(request):
    yield
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")
    if reporter is None or not RESULTS:
        return
    reporter.write_sep("-", "acceptance criteria")
    for number in sorted(RESULTS):
        reporter.write_line(RESULTS[number])


@pytest.mark.parametrize("criterion", CRITERIA, ids=lambda f: f.__name__)
def test_criterion(criterion):
    _finish(criterion())


if __name__ == "__main__":
    failed = 0
    for criterion in CRITERIA:
        checks = criterion()
        print(checks.line())
        failed += not checks.ok
    sys.exit(1 if failed else 0)
