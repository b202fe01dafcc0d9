"""Command-line front end.

Exit status: 0 success, 1 a verification suite found a violation,
2 usage or input error.
"""
from __future__ import annotations

import argparse
import csv
import io
import os
import sys
from multiprocessing import Pool
from typing import Any, Iterable, Optional

from . import __version__
from .arith import FactorizationError, primes_up_to
from .contfrac import convergents, lemma35_expected, sqrt_cf
from .records import CSV_HEADER, ResultRecord, csv_row, jsonable, read_jsonl, sieve_record
from .sieve import CandidatePair, abc_quality, full_report
from .solver import EquationInstance, InvalidInstance, SearchBounds, find_solutions
from .suites import SUITES

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2

# Execution knobs that must not change the bytes of the output.
_NON_SEMANTIC = {"out", "format", "resume", "workers", "max_pairs", "func", "command"}


class UsageError(Exception):
    pass


def big_int(text: str) -> int:
    try:
        return int(text, 10)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a decimal integer: {text!r}")


def positive_int(text: str) -> int:
    v = big_int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return v


def int_range(text: str) -> tuple[int, int]:
    parts = text.split(":")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"range must be LO:HI, got {text!r}")
    lo, hi = (big_int(x) for x in parts)
    if lo > hi or lo < 0:
        raise argparse.ArgumentTypeError(f"empty or negative range {text!r}")
    return lo, hi


def _config(args: argparse.Namespace) -> dict[str, Any]:
    return {k: v for k, v in vars(args).items() if k not in _NON_SEMANTIC and v is not None}


def _pretty(rec: ResultRecord) -> str:
    inp = " ".join(f"{k}={v}" for k, v in rec.input.items())
    res = " ".join(f"{k}={v}" for k, v in rec.result.items())
    return f"{rec.command} {inp} :: {res}"


def _emit(records: list[ResultRecord], args: argparse.Namespace) -> None:
    if args.format == "csv":
        raise UsageError("csv output is only available for sieve")
    if args.format == "pretty":
        text = "".join(_pretty(r) + "\n" for r in records)
    else:
        text = "".join(r.to_line() + "\n" for r in records)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# solve


def run_solve(args: argparse.Namespace) -> int:
    try:
        inst = EquationInstance(args.a, args.b, args.c, args.mode)
        bounds = SearchBounds(args.max_z, args.max_bits)
        sols = find_solutions(inst, bounds)
    except (InvalidInstance, ValueError) as exc:
        raise UsageError(str(exc))
    rec = ResultRecord.build(
        "solve",
        _config(args),
        {"a": inst.a, "b": inst.b, "c": inst.c, "mode": inst.mode},
        {
            "count": len(sols),
            "solutions": sols.triples(),
            "exhaustive_within_bounds": sols.exhaustive_within_bounds,
        },
    )
    _emit([rec], args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# sieve


def _sieve_chunk(job: tuple[list[tuple[int, int]], dict]) -> list[str]:
    pairs, config = job
    return [sieve_record(full_report(CandidatePair(p, q)), config).to_line() for p, q in pairs]


def _sieve_pairs(args: argparse.Namespace) -> list[tuple[int, int]]:
    if args.p is not None or args.q is not None:
        if args.p is None or args.q is None or args.p_range or args.q_range:
            raise UsageError("give either --p and --q, or --p-range and --q-range")
        try:
            CandidatePair(args.p, args.q)
        except ValueError as exc:
            raise UsageError(str(exc))
        return [(args.p, args.q)]
    if not (args.p_range and args.q_range):
        raise UsageError("give either --p and --q, or --p-range and --q-range")

    def odd_primes(lo: int, hi: int) -> list[int]:
        return [x for x in primes_up_to(hi) if x >= lo and x > 2]

    ps, qs = odd_primes(*args.p_range), odd_primes(*args.q_range)
    return [(p, q) for p in ps for q in qs if p != q]


def _existing_lines(path: str, fmt: str) -> dict[tuple[int, int], str]:
    """Previously written sieve lines keyed by (p, q); torn lines are dropped."""
    if not os.path.exists(path):
        return {}
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if fmt == "jsonl":
        return {rec.sieve_key(): rec.to_line() for rec in read_jsonl(text, "sieve")}
    out = {}
    allowed = {"true", "false", "n/a", "error"}
    for line in text.splitlines():
        row = next(csv.reader([line]), [])
        if tuple(row) == CSV_HEADER or len(row) != len(CSV_HEADER):
            continue
        if not (row[0].isdigit() and row[1].isdigit() and set(row[2:]) <= allowed):
            continue
        out[int(row[0]), int(row[1])] = line
    return out


def _sieve_line(line: str, fmt: str) -> str:
    if fmt == "jsonl":
        return line
    buf = io.StringIO()
    csv.writer(buf, lineterminator="").writerow(csv_row(ResultRecord.from_line(line)))
    return buf.getvalue()


def _write_sorted(path: Optional[str], lines: dict[tuple[int, int], str], fmt: str) -> None:
    body = [lines[k] for k in sorted(lines)]
    if fmt == "pretty":
        body = [_pretty(ResultRecord.from_line(x)) for x in body]
    text = "".join(x + "\n" for x in body)
    if fmt == "csv":
        text = ",".join(CSV_HEADER) + "\n" + text
    if path is None:
        sys.stdout.write(text)
        return
    tmp = path + ".tmp"
    with open(tmp, "w", encoding="utf-8") as fh:
        fh.write(text)
    os.replace(tmp, path)


def run_sieve(args: argparse.Namespace) -> int:
    pairs = _sieve_pairs(args)
    if args.resume and not args.out:
        raise UsageError("--resume needs --out")
    if args.resume and args.format == "pretty":
        raise UsageError("--resume needs jsonl or csv output")
    store_fmt = "csv" if args.format == "csv" else "jsonl"
    done = _existing_lines(args.out, store_fmt) if args.resume else {}
    todo = [pq for pq in pairs if pq not in done]
    if args.max_pairs is not None:
        todo = todo[: args.max_pairs]

    config = jsonable(_config(args))
    chunk = 256
    jobs = [(todo[i : i + chunk], config) for i in range(0, len(todo), chunk)]

    lines = dict(done)
    log = None
    if args.out and args.format != "pretty":
        # Incremental appends keep progress on disk if the run is cut short.
        # On resume, rewrite first so a torn final line is not appended to.
        if args.resume:
            _write_sorted(args.out, done, store_fmt)
        log = open(args.out, "a" if args.resume else "w", encoding="utf-8")
        if store_fmt == "csv" and not args.resume:
            log.write(",".join(CSV_HEADER) + "\n")
    try:
        if args.workers > 1 and len(jobs) > 1:
            with Pool(args.workers) as pool:
                results: Iterable[list[str]] = pool.imap(_sieve_chunk, jobs)
                _collect(results, jobs, lines, log, store_fmt)
        else:
            _collect(map(_sieve_chunk, jobs), jobs, lines, log, store_fmt)
    finally:
        if log:
            log.close()
    _write_sorted(args.out, lines, args.format)
    return EXIT_OK


def _collect(results, jobs, lines, log, fmt) -> None:
    for (pairs, _), chunk_lines in zip(jobs, results):
        for pq, line in zip(pairs, chunk_lines):
            out = _sieve_line(line, fmt)
            lines[pq] = out
            if log:
                log.write(out + "\n")
        if log:
            log.flush()


# ---------------------------------------------------------------------------
# continued fractions


def _cf_payload(D: int, terms: int) -> dict[str, Any]:
    exp = sqrt_cf(D)
    convs = convergents(D, terms)
    return {
        "a0": exp.a0,
        "period": list(exp.period),
        "s": exp.s,
        "convergents": [[c.m, c.P, c.Q, c.k] for c in convs],
        "k": [c.k for c in convs],
    }


def run_cf(args: argparse.Namespace) -> int:
    try:
        if args.lemma35:
            if args.p is None or args.n is None:
                raise UsageError("--lemma35 needs --p and --n")
            exp, convs = lemma35_expected(args.p, args.n)
            D = exp.D
            payload = _cf_payload(D, 5)
            predicted = {
                "a0": exp.a0,
                "period": list(exp.period),
                "convergents": [[c.m, c.P, c.Q, c.k] for c in convs],
            }
            payload["predicted"] = predicted
            payload["match"] = (
                exp == sqrt_cf(D) and tuple(convergents(D, 5)) == convs
            )
            inp = {"p": args.p, "n": args.n, "D": D}
        else:
            if args.d is None:
                raise UsageError("cf needs --d or --lemma35")
            payload = _cf_payload(args.d, args.terms)
            inp = {"D": args.d}
    except ValueError as exc:
        raise UsageError(str(exc))
    _emit([ResultRecord.build("cf", _config(args), inp, payload)], args)
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify

_SUITE_PARAMS: dict[str, dict[str, str]] = {
    "conjecture": {"max_z": "max_z", "max_bits": "max_bits"},
    "theorem11": {"max": "max_prime", "max_z": "max_z", "max_bits": "max_bits"},
    "crosscheck": {"max": "max_prime", "max_z": "max_z", "max_bits": "max_bits"},
    "lemma21": {"p_max": "p_max", "k_max": "k_max", "box": "box"},
    "lemma22": {"max": "c_max", "box": "box"},
    "lemma23": {"max": "max_value"},
    "lemma24": {"max": "max_value"},
    "lemma32": {"d_max": "d_max", "n_powers": "n_powers"},
    "lemma34": {"d_max": "d_max", "y_bound": "y_bound"},
    "lemma35": {"p_max": "p_max", "n_max": "n_max"},
    "observations": {"p_max": "p_max", "max": "exponent_p_max", "t_max": "t_max"},
}


def run_verify(args: argparse.Namespace) -> int:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    kwargs = {}
    for flag, kw in _SUITE_PARAMS[args.suite].items():
        v = getattr(args, flag)
        if v is not None:
            kwargs[kw] = v
    res = SUITES[args.suite](**kwargs)
    config = _config(args)
    records = [ResultRecord.build("verify", config, {"suite": res.suite, **res.params}, r)
               for r in res.records + ([] if res.per_case else [res.summary()])]
    _emit(records, args)
    return EXIT_OK if res.ok else EXIT_VIOLATION


# ---------------------------------------------------------------------------
# abc quality


def run_abcq(args: argparse.Namespace) -> int:
    try:
        t = abc_quality(args.a, args.b, args.c)
    except (ValueError, FactorizationError) as exc:
        raise UsageError(str(exc))
    rec = ResultRecord.build(
        "abcq", _config(args), {"a": t.a_term, "b": t.b_term, "c": t.c_term},
        {"rad": t.rad, "Q": str(t.Q)},
    )
    _emit([rec], args)
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ternexp", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--out", help="write records to FILE instead of stdout")
        sp.add_argument("--format", choices=("jsonl", "csv", "pretty"), default="jsonl")
        sp.add_argument("--workers", type=positive_int, default=1)

    sp = sub.add_parser("solve", help="enumerate solutions of a^x + b^y = c^z")
    sp.add_argument("--a", type=big_int, required=True)
    sp.add_argument("--b", type=big_int, required=True)
    sp.add_argument("--c", type=big_int, required=True)
    sp.add_argument("--mode", choices=("S", "N"), default="S",
                    help="S: distinct primes a < b; N: coprime, no perfect powers")
    sp.add_argument("--max-z", type=positive_int, default=25)
    sp.add_argument("--max-bits", type=positive_int, default=512)
    common(sp)
    sp.set_defaults(func=run_solve)

    sp = sub.add_parser("sieve", help="test prime pairs (p, q) against the necessary conditions")
    sp.add_argument("--p", type=big_int)
    sp.add_argument("--q", type=big_int)
    sp.add_argument("--p-range", type=int_range, metavar="LO:HI")
    sp.add_argument("--q-range", type=int_range, metavar="LO:HI")
    sp.add_argument("--resume", action="store_true", help="skip pairs already in --out")
    sp.add_argument("--max-pairs", type=positive_int, help="stop after this many new pairs")
    common(sp)
    sp.set_defaults(func=run_sieve)

    sp = sub.add_parser("cf", help="continued fraction of sqrt(D)")
    sp.add_argument("--d", type=big_int)
    sp.add_argument("--terms", type=positive_int, default=5)
    sp.add_argument("--lemma35", action="store_true", help="check the closed form for D = p^(2n) + 4")
    sp.add_argument("--p", type=big_int)
    sp.add_argument("--n", type=positive_int)
    common(sp)
    sp.set_defaults(func=run_cf)

    sp = sub.add_parser("verify", help="run a verification suite")
    sp.add_argument("--suite", required=True)
    for flag in ("max", "p_max", "n_max", "k_max", "d_max", "t_max", "box",
                 "n_powers", "y_bound", "max_z", "max_bits"):
        sp.add_argument("--" + flag.replace("_", "-"), dest=flag, type=positive_int)
    common(sp)
    sp.set_defaults(func=run_verify)

    sp = sub.add_parser("abcq", help="abc quality log(c)/log(rad(abc))")
    sp.add_argument("--a", type=big_int, required=True)
    sp.add_argument("--b", type=big_int, required=True)
    sp.add_argument("--c", type=big_int, required=True)
    common(sp)
    sp.set_defaults(func=run_abcq)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"ternexp {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
