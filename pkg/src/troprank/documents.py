"""JSON documents for matrices and Kapranov certificates.

Rationals are written as "p/q" strings. A certificate stores the ramification
N once; lift entries are numerator and denominator term lists with tau
exponents that are multiples of 1/N. A SHA-256 digest over the canonical
content guards against edits that would still pass the algebraic check.
"""

from __future__ import annotations

import hashlib
import json
from decimal import Decimal
from dataclasses import dataclass, field
from typing import Any

from .errors import ParseError
from .lift.certificate import KapranovCertificate, verify_lift
from .puiseux import LiftMatrix, PuiseuxScalar
from .semiring import TropMatrix, as_rational, format_rational

MATRIX_FORMAT = "troprank-matrix/1"
CERTIFICATE_FORMAT = "troprank-certificate/1"


@dataclass(frozen=True)
class MatrixDocument:
    matrix: TropMatrix
    name: str | None = None
    seed: Any = None

    def to_json(self) -> dict:
        out = {
            "format": MATRIX_FORMAT,
            "rows": self.matrix.rows,
            "cols": self.matrix.cols,
            "entries": [[format_rational(x) for x in row] for row in self.matrix.entries],
        }
        if self.name is not None:
            out["name"] = self.name
        if self.seed is not None:
            out["seed"] = self.seed
        return out

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1) + "\n"

    @classmethod
    def from_json(cls, d: dict, *, allow_decimal: bool = False) -> MatrixDocument:
        if not isinstance(d, dict):
            raise ParseError("matrix document must be a JSON object")
        fmt = d.get("format", MATRIX_FORMAT)
        if fmt != MATRIX_FORMAT:
            raise ParseError(f"unexpected format tag {fmt!r}")
        entries = d.get("entries")
        if not isinstance(entries, list) or not entries or not all(isinstance(r, list) for r in entries):
            raise ParseError("'entries' must be a nonempty list of rows")
        if any(x is None for row in entries for x in row):
            raise ParseError("missing entry; infinite entries are not supported")
        grid = [[as_rational(x, allow_decimal=allow_decimal) for x in row] for row in entries]
        m, n = len(grid), len(grid[0])
        if any(len(r) != n for r in grid):
            raise ParseError("rows of unequal length")
        if d.get("rows", m) != m or d.get("cols", n) != n:
            raise ParseError(f"declared shape {d.get('rows')}x{d.get('cols')} differs from entries {m}x{n}")
        return cls(TropMatrix.from_rows(grid), d.get("name"), d.get("seed"))

    @classmethod
    def loads(cls, text: str, *, allow_decimal: bool = False) -> MatrixDocument:
        try:
            # parse_float keeps decimal literals exact until the opt-in check
            d = json.loads(text, parse_float=Decimal if allow_decimal else float)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        return cls.from_json(d, allow_decimal=allow_decimal)




def _canonical(d: dict) -> bytes:
    body = {k: v for k, v in d.items() if k != "digest"}
    return json.dumps(body, sort_keys=True, separators=(",", ":")).encode()


@dataclass
class CertificateDocument:
    matrix: TropMatrix
    rank_bound: int
    lift: LiftMatrix
    seed: Any = None
    method: str = ""
    trace: list = field(default_factory=list)
    verified: bool = False
    digest: str | None = None
    raw: dict | None = field(default=None, repr=False, compare=False)

    @classmethod
    def from_certificate(cls, cert: KapranovCertificate) -> CertificateDocument:
        if cert.lift is None:
            raise ParseError("non-constructive certificates have no lift to serialize")
        return cls(cert.matrix, cert.rank_bound, cert.lift, cert.seed, cert.method, list(cert.trace), cert.verified)

    def to_json(self) -> dict:
        d = {
            "format": CERTIFICATE_FORMAT,
            "matrix": MatrixDocument(self.matrix).to_json(),
            "rank_bound": self.rank_bound,
            "ramification": self.lift.ram,
            "lift": [[x.to_dict() for x in row] for row in self.lift.entries],
            "seed": _jsonable(self.seed),
            "method": self.method,
            "trace": _jsonable(self.trace),
            "verified": self.verified,
        }
        d["digest"] = hashlib.sha256(_canonical(d)).hexdigest()
        return d

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=1) + "\n"

    @classmethod
    def from_json(cls, d: dict) -> CertificateDocument:
        if not isinstance(d, dict) or d.get("format") != CERTIFICATE_FORMAT:
            raise ParseError("not a certificate document")
        try:
            matrix = MatrixDocument.from_json(d["matrix"]).matrix
            ram = int(d["ramification"])
            if ram < 1:
                raise ParseError("ramification must be positive")
            rows = [[PuiseuxScalar.from_dict(x, ram) for x in row] for row in d["lift"]]
            lift = LiftMatrix.from_rows(rows, ram)
            rank_bound = int(d["rank_bound"])
        except (KeyError, TypeError) as exc:
            raise ParseError(f"malformed certificate: {exc}") from exc
        return cls(matrix, rank_bound, lift, d.get("seed"), d.get("method", ""), d.get("trace", []),
                   bool(d.get("verified", False)), d.get("digest"), d)

    @classmethod
    def loads(cls, text: str) -> CertificateDocument:
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        return cls.from_json(d)


@dataclass
class VerificationReport:
    algebra_ok: bool
    digest_ok: bool | None
    detail: str

    @property
    def ok(self) -> bool:
        return self.algebra_ok and self.digest_ok is not False


def verify_document(doc: CertificateDocument) -> VerificationReport:
    """Re-check ord(F) = M and rank(F) <= r from the document alone, then the digest."""
    try:
        cert = verify_lift(doc.lift, doc.matrix, doc.rank_bound)
        algebra = cert.verified
        detail = "lift verified" if algebra else "lift does not certify the stated rank bound"
    except ParseError as exc:
        algebra, detail = False, str(exc)
    except ValueError as exc:
        algebra, detail = False, f"invalid lift: {exc}"
    if doc.digest is None:
        digest_ok = None
    else:
        body = doc.raw if doc.raw is not None else doc.to_json()
        digest_ok = hashlib.sha256(_canonical(body)).hexdigest() == doc.digest
        if not digest_ok:
            detail += "; digest mismatch (document was edited)"
    return VerificationReport(algebra, digest_ok, detail)


def _jsonable(x):
    if isinstance(x, (str, int, bool)) or x is None:
        return x
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return str(x)
