"""Command-line front end.

Examples:
  ratlanden pushforward --den "z^2+1"
  ratlanden landen-iterate --num "z^4" --den "z^6+1" --json
  ratlanden integrate --num 1 --den 1,0,1
  ratlanden agm 1 2
  ratlanden verify
  ratlanden landen-iterate --num z^4 --den z^6+1 --json | ratlanden --stdin --json

Polynomials are given either as comma-separated coefficients, highest power
first ("1,0,0,0,0,0,1"), or as a sum of terms ("z^6 + 1", "3/7*z^4 - z^2").
Coefficients are exact: "3/7", "0.1" and "1e-30" all become rationals.

With --json every line of output is one JSON record.  The last record of a
job is a ``summary`` carrying the job itself under ``"job"``, so a report can
be piped back in with --stdin to rerun it.

Exit codes: 0 ok, 2 parse/validation, 3 domain, 4 non-convergence,
5 accuracy (including a failed self-check).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from dataclasses import asdict, dataclass, field
from math import log10
from typing import Callable, Iterator, TextIO

import mpmath
from mpmath import mp, mpf

from .agm import agm
from .errors import AccuracyError, LandenError
from .exactpoly import Polynomial, exact
from .landen import ALGORITHMS, evaluate, normalize, step
from .pushforward import RationalOneForm, pi_star
from .quadrature import DEFAULT_PREC, elliptic_G, integrate_halfline

COMMANDS = ("pushforward", "landen-step", "landen-iterate", "integrate", "agm", "verify")
EXIT_OK, EXIT_PARSE = 0, 2


class ParseError(LandenError):
    exit_code = EXIT_PARSE
    category = "parse"


# -----------------------------------------------------------------------------
# polynomial input
# -----------------------------------------------------------------------------

_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:(?P<coef>\d+(?:\.\d*)?(?:[eE][+-]?\d+)?(?:/\d+)?|\.\d+(?:[eE][+-]?\d+)?)\s*\*?\s*)?
        (?:(?P<var>[a-zA-Z])(?:\s*(?:\^|\*\*)\s*(?P<pow>\d+))?)?\s*""",
    re.VERBOSE,
)


def parse_polynomial(text: str) -> Polynomial:
    """Coefficient list (highest power first) or a sum of ``c*z^k`` terms."""
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial")
    if "," in s or not re.search(r"[a-zA-Z]", s):
        try:
            return Polynomial.from_descending([exact(t) for t in s.split(",")])
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad coefficient list {text!r}: {exc}") from None
    coeffs: dict[int, object] = {}
    pos, var = 0, None
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or not (m["coef"] or m["var"]):
            raise ParseError(f"cannot parse polynomial {text!r} near {s[pos:]!r}")
        if pos > 0 and not m["sign"]:
            raise ParseError(f"missing operator in {text!r} near {s[pos:]!r}")
        if m["var"]:
            if var is not None and m["var"] != var:
                raise ParseError(f"mixed variables {var!r} and {m['var']!r} in {text!r}")
            var = m["var"]
        k = int(m["pow"] or 1) if m["var"] else 0
        c = exact(m["coef"] or "1")
        if m["sign"] == "-":
            c = -c
        coeffs[k] = coeffs.get(k, exact(0)) + c
        pos = m.end()
    top = max(coeffs)
    return Polynomial([coeffs.get(k, 0) for k in range(top + 1)])


def _descending(poly: Polynomial) -> list[str]:
    return [str(c) for c in reversed(poly.coeffs)] or ["0"]


# -----------------------------------------------------------------------------
# job specification
# -----------------------------------------------------------------------------


@dataclass
class JobSpec:
    command: str
    numerator: list = field(default_factory=lambda: ["1"])  # highest power first
    denominator: list = field(default_factory=list)
    a: str | None = None
    b: str | None = None
    precision: int = DEFAULT_PREC
    tol: str = "1e-12"
    max_iter: int = 50
    algorithm: str = "geometric"
    seed: int = 0

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise ParseError(f"unknown command {self.command!r}; expected one of {', '.join(COMMANDS)}")
        if self.algorithm not in ALGORITHMS:
            raise ParseError(f"unknown algorithm {self.algorithm!r}")
        if self.precision < 53:
            raise ParseError("precision must be at least 53 bits")
        if self.max_iter < 0:
            raise ParseError("max-iter must be non-negative")
        try:
            if exact(self.tol).to_fraction() <= 0:
                raise ParseError("tol must be positive")
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad tolerance {self.tol!r}") from None
        if self.command == "agm":
            if self.a is None or self.b is None:
                raise ParseError("agm needs two arguments a and b")
            for v in (self.a, self.b):
                try:
                    exact(v)
                except (ValueError, ZeroDivisionError):
                    raise ParseError(f"bad agm argument {v!r}") from None
        elif self.command != "verify":
            num, den = self.polynomials()
            if not den:
                raise ParseError(f"{self.command} needs a nonzero denominator")
            if self.command.startswith("landen") and not (num.is_even() and den.is_even()):
                raise ParseError("landen commands accept even polynomials only")

    def polynomials(self) -> tuple[Polynomial, Polynomial]:
        num = parse_polynomial(",".join(self.numerator))
        den = parse_polynomial(",".join(self.denominator)) if self.denominator else Polynomial()
        return num, den

    def to_dict(self) -> dict:
        return asdict(self)

    @classmethod
    def from_dict(cls, data: dict) -> "JobSpec":
        known = set(cls.__dataclass_fields__)
        extra = set(data) - known
        if extra:
            raise ParseError(f"unknown job fields: {', '.join(sorted(extra))}")
        if "command" not in data:
            raise ParseError("job is missing 'command'")
        try:
            job = cls(**data)
            job.numerator = [str(x) for x in job.numerator]
            job.denominator = [str(x) for x in job.denominator]
            job.tol = str(job.tol)
            job.a = None if job.a is None else str(job.a)
            job.b = None if job.b is None else str(job.b)
            job.precision, job.max_iter, job.seed = int(job.precision), int(job.max_iter), int(job.seed)
        except (TypeError, ValueError) as exc:
            raise ParseError(f"malformed job: {exc}") from None
        return job


# -----------------------------------------------------------------------------
# workflows; each yields records and finishes with a summary
# -----------------------------------------------------------------------------


def _fmt(x, digits: int) -> str:
    return mpmath.nstr(x, digits)


def _run_pushforward(job: JobSpec, digits: int) -> Iterator[dict]:
    num, den = job.polynomials()
    phi = RationalOneForm.from_coefficients(num.coeffs, den.coeffs)
    image = pi_star(phi)
    yield {
        "record": "summary",
        "input": phi.format(),
        "result": image.format(),
        "numerator": _descending(image.R.num),
        "denominator": _descending(image.R.den),
        "status": "ok",
    }


def _state_record(kind: str, index: int, state, digits: int, **extra) -> dict:
    rec = {"record": kind, "index": index, **state.as_dict(digits)}
    rec["residual"] = _fmt(state.residual(), 6)
    rec.update(extra)
    return rec


def _run_landen_step(job: JobSpec, digits: int) -> Iterator[dict]:
    num, den = job.polynomials()
    tol = mpf(job.tol)
    norm = normalize(num, den, prec=job.precision)
    s0 = norm.state
    yield _state_record("normalize", 0, s0, digits, lam=_fmt(norm.lam, digits), factor=_fmt(norm.factor, digits))
    s1, f = step(s0, job.algorithm, prec=job.precision)
    yield _state_record("step", 1, s1, digits, factor=_fmt(f, digits))
    before = s0.integral(tol, prec=job.precision).value
    after = f * s1.integral(tol, prec=job.precision).value
    gap = abs(before - after)
    ok = gap <= 10 * tol * max(1, abs(before))
    yield {"record": "check", "quadrature_before": _fmt(before, digits), "quadrature_after": _fmt(after, digits),
           "difference": _fmt(gap, 6), "agree": ok}
    yield {"record": "summary", "status": "ok" if ok else "accuracy"}


def _run_landen_iterate(job: JobSpec, digits: int) -> Iterator[dict]:
    num, den = job.polynomials()
    tol = mpf(job.tol)
    norm = normalize(num, den, prec=job.precision)
    yield _state_record("normalize", 0, norm.state, digits, lam=_fmt(norm.lam, digits),
                        factor=_fmt(norm.factor, digits))
    trace = evaluate(num, den, tol, job.max_iter, job.algorithm, prec=job.precision)
    for n, s in enumerate(trace.states[1:], start=1):
        yield _state_record("iteration", n, s, digits)
    summary = {"record": "summary", "converged": trace.converged, "iterations": trace.steps,
               "residual": _fmt(trace.residuals[-1], 6)}
    if not trace.converged:
        summary["status"] = "non-convergence"
        yield summary
        return
    quad = integrate_halfline(num, den, tol, prec=job.precision)
    gap = abs(trace.U - quad.value)
    ok = gap <= 10 * tol * max(1, abs(quad.value))
    summary.update(
        L=_fmt(trace.L, digits),
        U=_fmt(trace.U, digits),
        quadrature=_fmt(quad.value, digits),
        quadrature_error=_fmt(quad.est_error, 3),
        difference=_fmt(gap, 6),
        status="ok" if ok else "accuracy",
    )
    if trace.steps >= 3:
        summary["decay_slope"] = round(trace.decay_slope(), 3)
    yield summary


def _run_integrate(job: JobSpec, digits: int) -> Iterator[dict]:
    num, den = job.polynomials()
    quad = integrate_halfline(num, den, mpf(job.tol), prec=job.precision)
    yield {"record": "summary", "value": _fmt(quad.value, digits), "est_error": _fmt(quad.est_error, 3),
           "evaluations": quad.evaluations, "status": "ok"}


def _run_agm(job: JobSpec, digits: int) -> Iterator[dict]:
    a, b = exact(job.a).to_mpmath(), exact(job.b).to_mpmath()
    trace = agm(a, b, mpf(job.tol), prec=job.precision, max_iter=job.max_iter)
    for n, (x, y) in enumerate(trace.pairs[1:], start=1):
        yield {"record": "iteration", "index": n, "a": _fmt(x, digits), "b": _fmt(y, digits),
               "gap": _fmt(abs(x - y), 6)}
    value = mp.pi / (2 * trace.limit)
    quad = elliptic_G(a, b, mpf(job.tol), prec=job.precision)
    gap = abs(value - quad.value)
    ok = gap <= 10 * mpf(job.tol) * max(1, abs(value))
    yield {"record": "summary", "limit": _fmt(trace.limit, digits), "iterations": trace.steps,
           "G": _fmt(value, digits), "quadrature": _fmt(quad.value, digits), "difference": _fmt(gap, 6),
           "status": "ok" if ok else "accuracy"}


def _run_verify(job: JobSpec, digits: int) -> Iterator[dict]:
    from .verify import run_checks  # deferred: pulls in every module

    results = run_checks(job.seed, prec=job.precision)
    for name, passed, detail in results:
        yield {"record": "check", "name": name, "passed": bool(passed), "detail": detail}
    failed = sum(not r[1] for r in results)
    yield {"record": "summary", "checks": len(results), "failed": failed, "status": "ok" if not failed else "accuracy"}


_WORKFLOWS: dict[str, Callable[[JobSpec, int], Iterator[dict]]] = {
    "pushforward": _run_pushforward,
    "landen-step": _run_landen_step,
    "landen-iterate": _run_landen_iterate,
    "integrate": _run_integrate,
    "agm": _run_agm,
    "verify": _run_verify,
}

_STATUS_CODES = {"ok": 0, "parse": 2, "domain": 3, "non-convergence": 4, "accuracy": 5}


def run(job: JobSpec, emit: Callable[[dict], None], *, timing: bool = True) -> int:
    """Execute one job, passing each record to ``emit``; returns the exit status."""
    start = time.perf_counter()
    try:
        job.validate()
        digits = max(15, int(job.precision * log10(2)))
        with mp.workprec(job.precision):
            *records, summary = list(_WORKFLOWS[job.command](job, digits))
    except LandenError as exc:
        records = []
        summary = {"record": "summary", "status": exc.category, "error": str(exc)}
        if isinstance(exc, AccuracyError) and exc.best is not None:
            best = getattr(exc.best, "value", exc.best)
            summary["best"] = mpmath.nstr(best, max(15, int(job.precision * log10(2))))
    except (ValueError, ZeroDivisionError) as exc:
        records = []
        summary = {"record": "summary", "status": "domain", "error": str(exc)}
    for rec in records:
        emit(rec)
    summary["job"] = job.to_dict()
    if timing:
        summary["wall_time"] = round(time.perf_counter() - start, 6)
    emit(summary)
    return _STATUS_CODES.get(summary["status"], 1)


# -----------------------------------------------------------------------------
# argument parsing and output
# -----------------------------------------------------------------------------


def _common_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--tol", default="1e-12", help="target tolerance (default 1e-12)")
    p.add_argument("--precision", type=int, default=DEFAULT_PREC, help="working precision in bits (default 128)")
    p.add_argument("--max-iter", type=int, default=50, help="iteration cap (default 50)")
    p.add_argument("--algorithm", choices=ALGORITHMS, default="geometric", help="Landen step variant")
    p.add_argument("--json", action="store_true", help="emit one JSON record per line")
    p.add_argument("--output", "-o", help="write the report here instead of stdout")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_parser()
    parser = argparse.ArgumentParser(
        prog="ratlanden",
        description="Integrals of even rational functions by rational Landen transformations.",
        parents=[common],
    )
    parser.add_argument("--stdin", action="store_true", help="read JSON job specs (or earlier reports) from stdin")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")

    def with_poly(name: str, help_: str, num_default: str = "1"):
        sp = sub.add_parser(name, help=help_, parents=[common])
        sp.add_argument("--num", default=num_default, help="numerator (default %(default)s)")
        sp.add_argument("--den", required=True, help="denominator")
        return sp

    with_poly("pushforward", "direct image of R(z) dz under (z^2-1)/(2z)")
    with_poly("landen-step", "normalise and apply one Landen step")
    with_poly("landen-iterate", "iterate Landen steps to the limit")
    with_poly("integrate", "adaptive quadrature of num/den over [0, inf)")
    sp = sub.add_parser("agm", help="arithmetic-geometric mean", parents=[common])
    sp.add_argument("a")
    sp.add_argument("b")
    sp = sub.add_parser("verify", help="run the built-in self-checks", parents=[common])
    sp.add_argument("--seed", type=int, default=0)
    return parser


def job_from_args(args: argparse.Namespace) -> JobSpec:
    job = JobSpec(command=args.command, precision=args.precision, tol=str(args.tol), max_iter=args.max_iter,
                  algorithm=args.algorithm)
    if args.command == "agm":
        job.a, job.b = args.a, args.b
    elif args.command == "verify":
        job.seed = args.seed
    else:
        job.numerator = _descending(parse_polynomial(args.num))
        job.denominator = _descending(parse_polynomial(args.den))
    return job


def _jobs_from_stream(stream: TextIO) -> Iterator[JobSpec | ParseError]:
    """Job specs one per line; report lines without a ``job`` are skipped."""
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            data = json.loads(line)
        except json.JSONDecodeError as exc:
            yield ParseError(f"line {lineno}: invalid JSON ({exc.msg})")
            continue
        if not isinstance(data, dict):
            yield ParseError(f"line {lineno}: expected a JSON object")
            continue
        if "job" in data:
            data = data["job"]
        elif "command" not in data:
            continue
        try:
            yield JobSpec.from_dict(data)
        except ParseError as exc:
            yield ParseError(f"line {lineno}: {exc}")


def _text_record(rec: dict) -> str:
    kind = rec.get("record")
    if kind == "summary" and "result" in rec:
        return rec["result"]
    if kind in ("normalize", "iteration", "step") and "p" in rec:
        a, b = ", ".join(rec["a"]), ", ".join(rec["b"])
        return f"[{kind} {rec['index']}] a=({a}) b=({b}) residual={rec['residual']}"
    if kind == "iteration":
        return f"[iteration {rec['index']}] a={rec['a']} b={rec['b']} gap={rec['gap']}"
    if kind == "check" and "name" in rec:
        return f"{'PASS' if rec['passed'] else 'FAIL'}  {rec['name']}  ({rec['detail']})"
    skip = {"record", "job"}
    return f"[{kind}] " + " ".join(f"{k}={v}" for k, v in rec.items() if k not in skip)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on bad usage, 0 on --help
        return int(exc.code or 0)
    if not args.stdin and args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_PARSE

    out = open(args.output, "w", encoding="utf-8") if args.output else sys.stdout
    try:
        def emit(rec: dict) -> None:
            line = json.dumps(rec) if args.json else _text_record(rec)
            out.write(line + "\n")

        if args.stdin:
            status = 0
            for item in _jobs_from_stream(sys.stdin):
                if isinstance(item, ParseError):
                    emit({"record": "summary", "status": "parse", "error": str(item)})
                    status = max(status, EXIT_PARSE)
                else:
                    status = max(status, run(item, emit))
            return status
        try:
            job = job_from_args(args)
        except ParseError as exc:
            print(f"ratlanden: {exc}", file=sys.stderr)
            return EXIT_PARSE
        return run(job, emit)
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
