"""Command-line front end: ``troprank det|rank|barvinok|certify|verify|gen|corpus``.

Exit codes: 0 success, 2 verification failed, 3 guard or parse error,
4 an internal cross-check failed (a bug trap).
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .assignment import is_singular
from .corpus import SUITES, CorpusConfig, run_corpus
from .documents import CertificateDocument, MatrixDocument, verify_document
from .errors import (DimensionError, GuardError, InvariantViolation, LiftError, ParseError, PipelineFailure,
                     PreconditionError, ZeroEntryError)
from .lift.generic import DEFAULT_RETRIES
from .lift.pipeline import kapranov_bounds
from .ranks import BARVINOK_GUARD, barvinok_rank, tropical_rank
from .sampling import generated_matrix, parse_shape
from .semiring import format_rational

EXIT_OK, EXIT_UNVERIFIED, EXIT_INPUT, EXIT_BUG = 0, 2, 3, 4


def _emit(obj) -> None:
    print(json.dumps(obj, indent=1))


def _load_matrix(path: str, allow_decimal: bool):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return MatrixDocument.loads(text, allow_decimal=allow_decimal).matrix


def cmd_det(args) -> int:
    a = _load_matrix(args.file, args.allow_decimal)
    d = is_singular(a)
    _emit({
        "value": format_rational(d.value),
        "witness": list(d.witness),
        "singular": d.singular,
        "second_witness": None if d.second_witness is None else list(d.second_witness),
    })
    return EXIT_OK


def cmd_rank(args) -> int:
    a = _load_matrix(args.file, args.allow_decimal)
    w = tropical_rank(a)
    _emit({"tropical_rank": w.rank, "rows": list(w.rows), "cols": list(w.cols)})
    return EXIT_OK


def cmd_barvinok(args) -> int:
    a = _load_matrix(args.file, args.allow_decimal)
    w = barvinok_rank(a, args.max_r)
    if w is None:
        _emit({"barvinok_rank": None, "exceeds_max_r": args.max_r})
        return EXIT_OK
    pairs = [{"a": [format_rational(x) for x in u], "b": [format_rational(x) for x in v]} for u, v in w.pairs]
    _emit({"barvinok_rank": w.rank, "pairs": pairs})
    return EXIT_OK


def cmd_certify(args) -> int:
    a = _load_matrix(args.file, args.allow_decimal)
    b = kapranov_bounds(a, seed=args.seed, retries=args.retries)
    if b.certificate is None:
        _emit({"lower": b.lower, "upper": b.upper, "constructive": False, "method": b.method})
        return EXIT_OK
    text = CertificateDocument.from_certificate(b.certificate).dumps()
    if args.out:
        Path(args.out).write_text(text)
        _emit({"lower": b.lower, "upper": b.upper, "constructive": True, "method": b.method,
               "verified": b.certificate.verified, "certificate": args.out})
    else:
        sys.stdout.write(text)
    return EXIT_OK if b.certificate.verified else EXIT_UNVERIFIED


def cmd_verify(args) -> int:
    try:
        text = Path(args.file).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {args.file}: {exc}") from exc
    try:
        doc = CertificateDocument.loads(text)
    except ZeroEntryError as exc:
        _emit({"verified": False, "detail": f"lift has a zero entry: {exc}"})
        return EXIT_UNVERIFIED
    rep = verify_document(doc)
    _emit({"verified": rep.ok, "algebra": rep.algebra_ok, "digest": rep.digest_ok, "rank_bound": doc.rank_bound,
           "detail": rep.detail})
    return EXIT_OK if rep.ok else EXIT_UNVERIFIED


def cmd_gen(args) -> int:
    m, n = parse_shape(args.shape, args.rows)
    if args.count < 0:
        raise GuardError("--count must be nonnegative")
    out = Path(args.out) if args.out else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    for i in range(args.count):
        a = generated_matrix(args.seed, m, n, args.tropical_rank, i, hi=args.max_entry, max_tries=args.max_tries)
        if tropical_rank(a).rank != args.tropical_rank:
            raise InvariantViolation("sampled matrix failed its rank re-check", a)
        doc = MatrixDocument(a, name=f"{m}x{n}-rank{args.tropical_rank}-{i:04d}", seed=f"{args.seed}:{i}")
        if out:
            (out / f"{doc.name}.json").write_text(doc.dumps())
        else:
            print(json.dumps(doc.to_json()))
    return EXIT_OK


def cmd_corpus(args) -> int:
    cfg = CorpusConfig(args.suite, args.count, args.seed, args.jobs, args.retries)
    try:
        report = run_corpus(cfg)
    except InvariantViolation as exc:
        report = getattr(exc, "report", None)
        if args.out and report is not None:
            Path(args.out).write_text(json.dumps(report.to_json(), indent=1) + "\n")
        print(f"{args.suite}: invariant violated: {exc}", file=sys.stderr)
        return EXIT_BUG
    if args.out:
        Path(args.out).write_text(json.dumps(report.to_json(), indent=1) + "\n")
    total_ms = sum(r.millis for r in report.records)
    print(f"{args.suite}: {len(report.records)} matrices, {report.counts}, {total_ms} ms in checks")
    return EXIT_OK if report.ok else EXIT_BUG


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="troprank", description="Tropical, Barvinok and Kapranov ranks with exact certificates.")
    sub = p.add_subparsers(dest="command", required=True)

    def matrix_cmd(name, fn, help_):
        s = sub.add_parser(name, help=help_)
        s.add_argument("file", help="matrix document (JSON), or - for stdin")
        s.add_argument("--allow-decimal", action="store_true", help="accept decimal literals, converted exactly")
        s.set_defaults(func=fn)
        return s

    matrix_cmd("det", cmd_det, "tropical determinant and singularity")
    matrix_cmd("rank", cmd_rank, "tropical rank with a witness minor")
    s = matrix_cmd("barvinok", cmd_barvinok, f"Barvinok rank by exact search (up to {BARVINOK_GUARD}x{BARVINOK_GUARD})")
    s.add_argument("--max-r", type=int, default=None)
    s = matrix_cmd("certify", cmd_certify, "Kapranov bounds with a verified lift")
    s.add_argument("--seed", default="0")
    s.add_argument("--retries", type=int, default=DEFAULT_RETRIES)
    s.add_argument("--out", help="write the certificate document here")

    s = sub.add_parser("verify", help="re-verify a certificate document")
    s.add_argument("file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("gen", help="sample matrices of a given tropical rank")
    s.add_argument("--shape", required=True, help="e.g. 6x5; gx5 takes g from --rows")
    s.add_argument("--rows", type=int)
    s.add_argument("--tropical-rank", type=int, required=True)
    s.add_argument("--count", type=int, default=1)
    s.add_argument("--seed", default="0")
    s.add_argument("--max-entry", type=int, default=4)
    s.add_argument("--max-tries", type=int, default=200_000)
    s.add_argument("--out", help="directory for the matrix files (default: JSON lines on stdout)")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("corpus", help="run a seeded suite")
    s.add_argument("--suite", choices=SUITES, required=True)
    s.add_argument("--count", type=int, default=None, help="matrices per size or shape")
    s.add_argument("--seed", default="0")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--retries", type=int, default=DEFAULT_RETRIES)
    s.add_argument("--out", help="write the JSON report here")
    s.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, GuardError, DimensionError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (InvariantViolation, PipelineFailure) as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return EXIT_BUG
    except LiftError as exc:
        print(f"no certificate: {exc}", file=sys.stderr)
        return EXIT_UNVERIFIED


if __name__ == "__main__":
    sys.exit(main())
