"""Scripts for the Singular CAS that redo a computation for cross-checking.

The scripts only declare data and call ``std``, ``modulo``, ``intersect``,
``quotient`` and friends; they never depend on results of this package
except where a task consumes an earlier stage (``decide`` feeds the
antiderivative generators found here into the mixed-ring colon).
"""

from __future__ import annotations

from fractions import Fraction

from .engine import Ideal
from .ops import antiderivatives
from .ring import Poly, RingContext

__all__ = ["emit_cas_script", "singular_poly", "TASKS"]

TASKS = ("std", "delta", "tfull", "tdep", "decide")


def _short_ok(names) -> bool:
    # Singular's short notation (2x, y2) needs one-letter names
    return all(len(n) == 1 for n in names)


def singular_poly(f: Poly, names=None, short: bool | None = None) -> str:
    """``f`` in Singular syntax, short notation when names allow it."""
    names = list(names or f.ctx.names)
    if not f.terms:
        return "0"
    if short is None:
        short = _short_ok(names)
    out = []
    for e, c in f:
        c = Fraction(c)
        factors = []
        for name, k in zip(names, e):
            if k == 0:
                continue
            if short:
                factors.append(name if k == 1 else f"{name}{k}")
            else:
                factors.append(name if k == 1 else f"{name}^{k}")
        mono = "".join(factors) if short else "*".join(factors)
        mag = abs(c)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        elif short and mag.denominator == 1:
            body = f"{mag}{mono}"
        else:
            body = f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        out.append(body if not out and sign == "+" else f"{sign}{body}")
    return "".join(out)


def _row(polys, names=None, short=None) -> str:
    return ",".join(singular_poly(p, names, short) for p in polys) if polys else "0"


def _ring_decl(ctx: RingContext, name: str = "r") -> str:
    return f"ring {name}=0,({','.join(ctx.names)}),ds;"


def _delta_lines(I: Ideal) -> list[str]:
    ctx = I.ctx
    gens = list(I.gens)
    s = len(gens)
    lines = [f"matrix B[1][{s}]={_row(gens)};"]
    for j in ctx.local_indices():
        k = j + 1
        lines.append(f"matrix A{k}[1][{s}]={_row([g.diff(j) for g in gens])}; def m{k}=modulo(A{k},B);")
    ms = ",".join(f"m{j + 1}" for j in ctx.local_indices())
    lines += [
        f"def m=intersect({ms});" if ctx.nvars > 1 else "def m=m1;",
        "def M=std(m);",
        "print(M);",
        "ideal Delta=ideal(B*matrix(M));",
        "Delta=std(Delta);",
        "print(Delta);",
    ]
    return lines


def _tfull_lines() -> list[str]:
    return [
        "ideal TD=Delta,ideal(jacob(Delta));",
        "ideal SI=std(I); ideal STD=std(TD);",
        "int tfull=(size(reduce(I,STD))==0) && (size(reduce(TD,SI))==0);",
        'print("t_full: "+string(tfull));',
    ]


def _tdep_lines(J_gens, ctx: RingContext) -> list[str]:
    q = len(J_gens)
    locs = [ctx.names[i] for i in ctx.local_indices()]
    alpha = "a"
    while alpha in locs:
        alpha += "a"
    names = [f"{alpha}({i + 1})" for i in range(q)] + locs
    sigma = "+".join(f"({singular_poly(g, names[q:], False)})*{names[i]}" for i, g in enumerate(J_gens))
    tj = [g for g in J_gens] + [g.diff(j) for g in J_gens for j in ctx.local_indices()]
    tj = [g for g in tj if not g.is_zero()]
    zero = ",".join(f"{x},0" for x in locs)
    return [
        f"ring S=0,({alpha}(1..{q}),{','.join(locs)}),(dp({q}),ds({len(locs)}));",
        "short=0;",
        f"poly sigma={sigma};",
        "ideal TS=sigma," + ",".join(f"diff(sigma,{x})" for x in locs) + ";",
        f"ideal TJ={_row(tj, names[q:], False)};",
        "ideal C=std(quotient(TS,TJ));",
        "print(C);",
        f"print(subst(C,{zero}));",
    ]


def emit_cas_script(task: str, I: Ideal, delta: Ideal | None = None) -> str:
    """Singular script for ``task`` on the ideal ``I`` of a local ring.

    ``task`` is one of ``std``, ``delta``, ``tfull``, ``tdep`` (T-dependence
    of ``I`` itself) or ``decide``. ``decide`` needs the antiderivative
    ideal to set up its colon; it is computed when ``delta`` is omitted.
    """
    if task not in TASKS:
        raise ValueError(f"unknown task {task!r}; expected one of {', '.join(TASKS)}")
    ctx = I.ctx
    if not ctx.is_local:
        raise ValueError("scripts are emitted for ideals of the local ring")
    gens = list(I.gens)
    lines = [f"// task: {task}", 'LIB "hnoether.lib";', _ring_decl(ctx)]
    lines.append(f"ideal I={_row(gens)};")
    if task == "std" or not gens:
        lines.append("print(std(I));")
        return "\n".join(lines) + "\n"
    if task in ("delta", "tfull", "decide"):
        lines += _delta_lines(I)
    if task in ("tfull", "decide"):
        lines += _tfull_lines()
    if task == "tdep":
        lines += _tdep_lines(gens, ctx)
    elif task == "decide":
        if delta is None:
            delta = antiderivatives(I)
        lines += _tdep_lines(list(delta.gens), ctx) if delta.gens else []
    return "\n".join(lines) + "\n"
