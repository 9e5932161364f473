"""``tjurina`` command line front end.

Every subcommand takes ``--ring "x,y,z"`` (local variables, in order) and
``--ideal "g1, g2, ..."``. Reports are printed as text or, with ``--json``,
as one JSON object per input. ``--input FILE`` reads a batch of JSON
records, one per line, each with ``ring`` and ``ideal`` keys.

Exit codes: 0 success, 1 usage or parse error, 2 a certificate failed its
independent re-check.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass, field
from typing import Sequence

from . import __version__
from .cas import TASKS, emit_cas_script
from .decide import InconsistencyError, check_witness, is_tjurina_ideal, lambda_to_json
from .engine import Ideal, standard_basis
from .ops import antiderivatives, is_T_full, tjurina_of_ideal, tjurina_of_poly
from .ring import ParseError, RingContext, format_poly
from .tdep import MixedRingBundle, is_T_dependent

__all__ = ["main", "run_cli", "Record", "record_from_report"]

log = logging.getLogger("tjurina")

EXIT_OK, EXIT_USAGE, EXIT_INCONSISTENT = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Record:
    """The JSON report. Polynomials are canonical strings."""

    ring: list
    ideal: list
    delta: list | None = None
    t_full: bool | None = None
    t_dependent: bool | None = None
    verdict: bool | None = None
    witness: str | None = None
    # named lambda in the JSON text
    lam: list | None = None
    certificates: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        return {k: d[k] for k in _KEYS}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=False)

    @classmethod
    def from_dict(cls, d: dict) -> "Record":
        missing = [k for k in ("ring", "ideal") if k not in d]
        if missing:
            raise ValueError(f"record lacks {', '.join(missing)}")
        d = dict(d)
        lam = d.pop("lambda", None)
        unknown = set(d) - set(_KEYS)
        if unknown:
            raise ValueError(f"unknown record keys: {', '.join(sorted(unknown))}")
        return cls(lam=lam, **d)

    @classmethod
    def from_json(cls, text: str) -> "Record":
        return cls.from_dict(json.loads(text))


_KEYS = ("ring", "ideal", "delta", "t_full", "t_dependent", "verdict", "witness", "lambda", "certificates")


def _strs(I: Ideal | None) -> list | None:
    return None if I is None else [format_poly(g) for g in I.gens]


def record_from_report(report) -> Record:
    """Serialize a :class:`~tjurina.decide.DecisionReport`."""
    I = report.ideal
    certs = {
        "t_delta": _strs(report.t_delta),
        "reason": report.reason,
        "t_dependent_source": report.t_dependent_source,
        "tries": report.tries,
        "generator_count": report.generator_count,
        "warnings": list(report.warnings),
    }
    dep = report.dependence
    if dep is not None and dep.colon is not None:
        certs["alphas"] = dep.bundle.alpha_names
        certs["colon"] = _strs(dep.colon)
        certs["colon_images"] = [format_poly(p) for p in dep.images]
    return Record(
        ring=list(I.ctx.names),
        ideal=_strs(I),
        delta=_strs(report.delta),
        t_full=report.t_full,
        t_dependent=report.t_dependent,
        verdict=report.verdict,
        witness=None if report.witness is None else format_poly(report.witness),
        lam=lambda_to_json(report.lambda_used),
        certificates=certs,
    )


# -- argument parsing ------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--ring", help='local variables, e.g. "x,y,z"')
    common.add_argument("--ideal", help='comma separated generators, e.g. "x^2, x*y"')
    common.add_argument("--input", metavar="FILE", help="batch of JSON records, one per line")
    common.add_argument("--json", action="store_true", help="print JSON records")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--max-tries", type=int, default=32)
    common.add_argument("--coeff-bound", type=int, default=5)
    common.add_argument("-v", "--verbose", action="store_true")

    p = _Parser(prog="tjurina", description="Decide whether an ideal of a local ring is a Tjurina ideal.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("decide", parents=[common], help="full decision with certificates")
    sub.add_parser("delta", parents=[common], help="the antiderivative ideal")
    sub.add_parser("tfull", parents=[common], help="T-fullness test")
    tdep = sub.add_parser("tdep", parents=[common], help="T-dependence of the given ideal")
    tdep.add_argument(
        "--mixed-alphas", type=int, metavar="Q",
        help="use the generators as given (no pruning); Q must equal their number",
    )
    sub.add_parser("witness", parents=[common], help="search f with T(f) = I")
    tj = sub.add_parser("tjurina", parents=[common], help="T(J) of the ideal, or T(f) with --poly")
    tj.add_argument("--poly", help="a single polynomial f")
    sub.add_parser("std", parents=[common], help="a standard basis")
    cas = sub.add_parser("cas", parents=[common], help="emit a Singular script")
    cas.add_argument("--task", choices=TASKS, default="delta")
    return p


def _ideal(ring: str | Sequence[str], ideal: str | Sequence[str]) -> Ideal:
    names = ring if isinstance(ring, str) else ",".join(ring)
    ctx = RingContext.local(names)
    return Ideal.parse(ideal, ctx)


# -- commands --------------------------------------------------------------

def _decide(I: Ideal, args) -> Record:
    report = is_tjurina_ideal(I, seed=args.seed, max_tries=args.max_tries, coeff_bound=args.coeff_bound)
    if report.witness is not None and not check_witness(I, report.witness):
        raise InconsistencyError(f"witness {report.witness} does not give back the ideal")
    return record_from_report(report)


def _witness(I: Ideal, args) -> Record:
    rec = _decide(I, args)
    if rec.witness is not None:
        t = tjurina_of_poly(I.ctx.parse(rec.witness))
        if t != I:
            raise InconsistencyError(f"T({rec.witness}) differs from the ideal")
        rec.certificates["t_witness"] = _strs(t)
    return rec


def _delta(I: Ideal, args) -> Record:
    delta = antiderivatives(I)
    return Record(list(I.ctx.names), _strs(I), delta=_strs(delta))


def _tfull(I: Ideal, args) -> Record:
    res = is_T_full(I)
    return Record(
        list(I.ctx.names), _strs(I), delta=_strs(res.delta), t_full=res.full,
        certificates={"t_delta": _strs(res.t_delta)},
    )


def _tdep(I: Ideal, args) -> Record:
    q = args.mixed_alphas
    if q is not None and q != len(I.gens):
        raise UsageError(f"--mixed-alphas {q} but the ideal has {len(I.gens)} generators")
    dep = is_T_dependent(I, minimize=q is None)
    certs = {"generators": [format_poly(g) for g in dep.generators]}
    if dep.colon is not None:
        certs["alphas"] = dep.bundle.alpha_names
        certs["colon"] = _strs(dep.colon)
        certs["colon_images"] = [format_poly(p) for p in dep.images]
    return Record(list(I.ctx.names), _strs(I), t_dependent=dep.dependent, certificates=certs)


def _tjurina(I: Ideal, args) -> Record:
    if args.poly is not None:
        f = I.ctx.parse(args.poly)
        return Record(list(I.ctx.names), _strs(tjurina_of_poly(f)), certificates={"poly": format_poly(f)})
    return Record(list(I.ctx.names), _strs(tjurina_of_ideal(I)), certificates={"of": _strs(I)})


def _std(I: Ideal, args) -> Record:
    return Record(list(I.ctx.names), _strs(I), certificates={"std": _strs(standard_basis(I))})


_COMMANDS = {
    "decide": _decide,
    "witness": _witness,
    "delta": _delta,
    "tfull": _tfull,
    "tdep": _tdep,
    "tjurina": _tjurina,
    "std": _std,
}


def _fmt(v) -> str:
    if isinstance(v, bool):
        return str(v).lower()
    if isinstance(v, list):
        return "(" + ", ".join(str(x) for x in v) + ")"
    return str(v)


def _text(rec: Record, command: str) -> str:
    lines = [f"ring: {', '.join(rec.ring)}", f"ideal: {_fmt(rec.ideal)}"]
    for key in ("delta", "t_full", "t_dependent"):
        v = getattr(rec, key)
        if v is not None:
            lines.append(f"{key}: {_fmt(v)}")
    if rec.verdict is not None:
        reason = rec.certificates.get("reason")
        lines.append(f"verdict: {_fmt(rec.verdict)}" + (f" ({reason})" if reason else ""))
    if rec.witness is not None:
        lines.append(f"witness: {rec.witness}")
        lines.append(f"lambda: {_fmt(rec.lam)}")
    elif command == "witness":
        lines.append("witness: none")
    if command == "witness" and "t_witness" in rec.certificates:
        lines.append(f"check: T(witness) = {_fmt(rec.certificates['t_witness'])} = ideal")
    for key in ("colon", "colon_images", "std", "generators"):
        if key in rec.certificates:
            lines.append(f"{key}: {_fmt(rec.certificates[key])}")
    if command == "tjurina":
        lines[1] = f"T: {_fmt(rec.ideal)}"
    return "\n".join(lines)


def _jobs(args) -> list:
    if args.input is not None:
        if args.ring or args.ideal:
            raise UsageError("--input excludes --ring and --ideal")
        jobs = []
        with open(args.input, encoding="utf-8") as fh:
            for lineno, line in enumerate(fh, 1):
                if not line.strip():
                    continue
                try:
                    d = json.loads(line)
                    jobs.append((d["ring"], d["ideal"]))
                except (ValueError, KeyError, TypeError) as exc:
                    raise UsageError(f"{args.input}:{lineno}: bad record ({exc})") from None
        return jobs
    if args.ring is None:
        raise UsageError("--ring is required")
    if args.ideal is None:
        if args.command == "tjurina" and args.poly is not None:
            return [(args.ring, "0")]
        raise UsageError("--ideal is required")
    return [(args.ring, args.ideal)]


def run_cli(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"tjurina: error: {exc}", file=err)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=err)
    try:
        for ring, ideal in _jobs(args):
            I = _ideal(ring, ideal)
            if args.command == "cas":
                out.write(emit_cas_script(args.task, I))
                continue
            rec = _COMMANDS[args.command](I, args)
            print(rec.to_json() if args.json else _text(rec, args.command), file=out)
    except (UsageError, ParseError, ValueError, OSError) as exc:
        print(f"tjurina: error: {exc}", file=err)
        return EXIT_USAGE
    except InconsistencyError as exc:
        print(f"tjurina: inconsistency: {exc}", file=err)
        return EXIT_INCONSISTENT
    return EXIT_OK


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
