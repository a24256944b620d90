"""Command-line frontend.

Verbs: equiv, canon, commensurable, cover, chain, verify, trace-seq.
Exit codes are a scripting contract: 0 = positive verdict or verified
document, 1 = negative verdict or rejected document, 2 = usage or
input error, 3 = a computational limit was hit (merge-step guard,
factoring effort, intertwiner search bound).

Matrices are written [[a,b],[c,d]] or a,b;c,d. Models are written
suspension:[[a,b],[c,d]], surface:g=3, or orbifold:2,3,12. Emitted
documents are deterministic: repeated identical invocations produce
byte-identical bytes.
"""

import argparse
import json
import sys

from .commensurability import (
    DEFAULT_MAX_STEPS,
    DEFAULT_SEARCH_BOUND,
    TraceSequence,
    are_commensurable,
    verify_certificate,
)
from .conjugacy import are_equivalent, rl_word
from .errors import ComputationLimit, FlowcommError
from .factorint import DEFAULT_RHO_BUDGET
from .linalg import HyperbolicMatrix, Mat2
from .models import (
    ChainCertificate,
    GeodesicOrbifold,
    GeodesicSurface,
    Suspension,
    almost_commensurability_chain,
    verify_chain,
)
from .serialize import (
    decode_document,
    dumps,
    encode_certificate,
    encode_chain,
    loads,
)

__all__ = ["main", "run", "UsageError"]


class UsageError(Exception):
    """Bad command line or unparseable input; maps to exit code 2."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _parse_int_entry(token):
    token = token.strip()
    try:
        return int(token, 10)
    except ValueError:
        raise UsageError(f"not an integer: {token!r}") from None


def _parse_matrix(text):
    s = text.strip()
    if s.startswith("["):
        try:
            value = json.loads(s)
        except json.JSONDecodeError:
            raise UsageError(f"malformed matrix: {text!r}") from None
        if (
            not isinstance(value, list)
            or len(value) != 2
            or any(not isinstance(row, list) or len(row) != 2 for row in value)
        ):
            raise UsageError(f"matrix must be 2x2: {text!r}")
        entries = [e for row in value for e in row]
        for e in entries:
            if isinstance(e, bool) or not isinstance(e, int):
                raise UsageError(f"matrix entries must be integers: {e!r}")
        return Mat2(*entries)
    rows = s.split(";")
    if len(rows) != 2:
        raise UsageError(f"matrix must have two ';'-separated rows: {text!r}")
    entries = []
    for row in rows:
        cols = row.split(",")
        if len(cols) != 2:
            raise UsageError(f"matrix rows need two entries: {row.strip()!r}")
        entries.extend(_parse_int_entry(tok) for tok in cols)
    return Mat2(*entries)


def _parse_hyperbolic(text):
    return HyperbolicMatrix.from_mat(_parse_matrix(text))


def _parse_model(text):
    s = text.strip()
    head, sep, rest = s.partition(":")
    if not sep:
        raise UsageError(
            f"malformed model {text!r}: expected suspension:, surface:, or orbifold:"
        )
    head = head.strip().lower()
    if head == "suspension":
        return Suspension(_parse_hyperbolic(rest))
    if head == "surface":
        body = rest.strip()
        if body.startswith("g="):
            body = body[2:]
        return GeodesicSurface(_parse_int_entry(body))
    if head == "orbifold":
        parts = rest.split(",")
        if len(parts) != 3:
            raise UsageError(f"orbifold needs three cone orders: {rest.strip()!r}")
        p, q, n = (_parse_int_entry(tok) for tok in parts)
        if (p, q) != (2, 3):
            raise UsageError(f"only (2,3,n) orbifolds are supported, got ({p},{q},{n})")
        try:
            return GeodesicOrbifold(n)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
    raise UsageError(f"unknown model type: {head!r}")


def _encode_word(word):
    return [[str(r), str(l)] for r, l in word.pairs]


def _encode_matrix_strings(m):
    return [[str(m.a), str(m.b)], [str(m.c), str(m.d)]]


def _emit(args, text):
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
    elif not args.quiet:
        sys.stdout.write(text)


def _print_doc(args, doc):
    if not args.quiet:
        sys.stdout.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _cmd_equiv(args):
    a = _parse_hyperbolic(args.matrix_a)
    b = _parse_hyperbolic(args.matrix_b)
    verdict = are_equivalent(a, b)
    doc = {
        "equivalent": verdict.equivalent,
        "conjugator": (
            _encode_matrix_strings(verdict.conjugator)
            if verdict.conjugator is not None
            else None
        ),
        "canonical_a": _encode_word(verdict.canonical_a),
        "canonical_b": _encode_word(verdict.canonical_b),
    }
    _print_doc(args, doc)
    return 0 if verdict.equivalent else 1


def _cmd_canon(args):
    a = _parse_hyperbolic(args.matrix)
    word, _ = rl_word(a)
    doc = {"canonical_word": _encode_word(word), "display": str(word)}
    _print_doc(args, doc)
    return 0


def _verdict_doc(verdict):
    doc = {
        "commensurable": verdict.commensurable,
        "minimal_exponents": (
            [str(k) for k in verdict.minimal_exponents]
            if verdict.minimal_exponents is not None
            else None
        ),
        "squarefree_a": str(verdict.squarefree_a),
        "squarefree_b": str(verdict.squarefree_b),
        "squared_a": verdict.squared_a,
        "squared_b": verdict.squared_b,
    }
    if verdict.certificate is not None:
        cert_doc = encode_certificate(verdict.certificate)
        for header in ("format_version", "generator", "kind"):
            del cert_doc[header]
        doc["certificate"] = cert_doc
    else:
        doc["certificate"] = None
    return doc


def _run_commensurable(args):
    return are_commensurable(
        _parse_matrix(args.matrix_a),
        _parse_matrix(args.matrix_b),
        args.max_steps,
        search_bound=args.search_bound,
        rho_budget=args.factor_effort,
    )


def _cmd_commensurable(args):
    verdict = _run_commensurable(args)
    _print_doc(args, _verdict_doc(verdict))
    return 0 if verdict.commensurable else 1


def _cmd_cover(args):
    verdict = _run_commensurable(args)
    if not verdict.commensurable:
        print(
            "not commensurable: squarefree discriminant parts "
            f"{verdict.squarefree_a} != {verdict.squarefree_b}",
            file=sys.stderr,
        )
        return 1
    _emit(args, dumps(encode_certificate(verdict.certificate)))
    return 0


def _cmd_chain(args):
    chain = almost_commensurability_chain(
        _parse_model(args.model_a), _parse_model(args.model_b)
    )
    _emit(args, dumps(encode_chain(chain)))
    return 0


def _cmd_verify(args):
    try:
        with open(args.file, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise UsageError(f"cannot read {args.file!r}: {exc}") from None
    decoded = decode_document(loads(text))
    if isinstance(decoded, ChainCertificate):
        ok, clause = verify_chain(decoded)
    else:
        ok, clause = verify_certificate(decoded)
    if not args.quiet:
        print(("verified" if ok else f"rejected: {clause}"))
    return 0 if ok else 1


def _cmd_trace_seq(args):
    a = _parse_hyperbolic(args.matrix)
    if args.count < 1:
        raise UsageError(f"count must be >= 1, got {args.count}")
    seq = TraceSequence(a.trace())
    if not args.quiet:
        for i in range(1, args.count + 1):
            print(seq[i])
    return 0


def _add_effort_flags(sub):
    sub.add_argument(
        "--max-steps",
        type=int,
        default=DEFAULT_MAX_STEPS,
        help="bound on trace-table merge steps before giving up",
    )
    sub.add_argument(
        "--search-bound",
        type=int,
        default=DEFAULT_SEARCH_BOUND,
        help="initial half-width of the intertwiner coefficient box",
    )
    sub.add_argument(
        "--factor-effort",
        type=int,
        default=DEFAULT_RHO_BUDGET,
        help="iteration budget for factoring squarefree parts",
    )


def _build_parser():
    parser = _Parser(
        prog="flowcomm",
        description=(
            "Decide topological equivalence and commensurability of suspension "
            "flows of hyperbolic torus automorphisms, and emit or verify "
            "machine-checkable certificates."
        ),
    )
    subs = parser.add_subparsers(dest="verb", required=True)

    sub = subs.add_parser("equiv", help="decide topological equivalence of two suspensions")
    sub.add_argument("matrix_a")
    sub.add_argument("matrix_b")
    sub.set_defaults(handler=_cmd_equiv)

    sub = subs.add_parser("canon", help="print the canonical RL word of a matrix")
    sub.add_argument("matrix")
    sub.set_defaults(handler=_cmd_canon)

    sub = subs.add_parser("commensurable", help="decide commensurability of two suspensions")
    sub.add_argument("matrix_a")
    sub.add_argument("matrix_b")
    _add_effort_flags(sub)
    sub.set_defaults(handler=_cmd_commensurable)

    sub = subs.add_parser("cover", help="emit a commensurability certificate document")
    sub.add_argument("matrix_a")
    sub.add_argument("matrix_b")
    sub.add_argument("-o", "--output", help="write the document here instead of stdout")
    _add_effort_flags(sub)
    sub.set_defaults(handler=_cmd_cover)

    sub = subs.add_parser("chain", help="emit an almost-commensurability chain document")
    sub.add_argument("model_a")
    sub.add_argument("model_b")
    sub.add_argument("-o", "--output", help="write the document here instead of stdout")
    _add_effort_flags(sub)
    sub.set_defaults(handler=_cmd_chain)

    sub = subs.add_parser("verify", help="re-check a certificate document from disk")
    sub.add_argument("file")
    sub.set_defaults(handler=_cmd_verify)

    sub = subs.add_parser("trace-seq", help="print traces of the first N powers")
    sub.add_argument("matrix")
    sub.add_argument("count", type=int)
    sub.set_defaults(handler=_cmd_trace_seq)

    for sub_action in subs.choices.values():
        sub_action.add_argument(
            "--quiet", action="store_true", help="suppress output; exit code only"
        )
    return parser


def run(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ComputationLimit as exc:
        print(f"limit: {exc}", file=sys.stderr)
        return 3
    except FlowcommError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
