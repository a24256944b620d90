"""Stable JSON document format for certificates and chains.

Every numeric field is a decimal string so arbitrary-precision
integers survive round trips through any JSON tooling; rationals are
"p/q" strings. Documents carry a "kind" discriminator and a
"format_version" pinned to "1". The "generator" header records the
producing tool and is ignored by verification, so regenerated
documents differing only there still verify identically. Key order is
sorted at dump time, making output byte-reproducible.

Decoding is strict: unknown kinds, missing fields, native JSON
numbers where strings are required, or malformed values raise
DocumentError naming the offending field.
"""

import json
import re
from fractions import Fraction

from . import __version__
from .commensurability import CommensurabilityCertificate
from .errors import DocumentError
from .linalg import Lattice2, Mat2
from .models import (
    ALMOST_EQUIVALENCE,
    BIRKHOFF_SECTION_23N,
    COMMENSURABILITY,
    ChainCertificate,
    ChainLink,
    GeodesicCommonCover,
    GeodesicOrbifold,
    GeodesicSurface,
    GHYS_HASHIGUCHI,
    Suspension,
)

__all__ = [
    "FORMAT_VERSION",
    "CERTIFICATE_KIND",
    "CHAIN_KIND",
    "encode_certificate",
    "decode_certificate",
    "encode_chain",
    "decode_chain",
    "decode_document",
    "dumps",
    "loads",
]

FORMAT_VERSION = "1"
CERTIFICATE_KIND = "commensurability-certificate"
CHAIN_KIND = "chain-certificate"

_INT_RE = re.compile(r"^-?[0-9]+$")
_FRACTION_RE = re.compile(r"^-?[0-9]+(/[1-9][0-9]*)?$")
_CITATION_TAGS = (GHYS_HASHIGUCHI, BIRKHOFF_SECTION_23N)


def _encode_int(n):
    return str(int(n))


def _decode_int(value, field):
    if not isinstance(value, str) or not _INT_RE.match(value):
        raise DocumentError(f"{field}: expected a decimal-string integer, got {value!r}")
    return int(value)


def _encode_fraction(q):
    return str(Fraction(q))


def _decode_fraction(value, field):
    if not isinstance(value, str) or not _FRACTION_RE.match(value):
        raise DocumentError(f"{field}: expected a 'p/q' rational string, got {value!r}")
    return Fraction(value)


def _encode_matrix(m):
    return [
        [_encode_int(m.a), _encode_int(m.b)],
        [_encode_int(m.c), _encode_int(m.d)],
    ]


def _decode_matrix(value, field):
    if (
        not isinstance(value, list)
        or len(value) != 2
        or any(not isinstance(row, list) or len(row) != 2 for row in value)
    ):
        raise DocumentError(f"{field}: expected a 2x2 matrix of decimal strings")
    (a, b), (c, d) = value
    return Mat2(
        _decode_int(a, f"{field}[0][0]"),
        _decode_int(b, f"{field}[0][1]"),
        _decode_int(c, f"{field}[1][0]"),
        _decode_int(d, f"{field}[1][1]"),
    )


def _encode_lattice(lat):
    return {
        "a": _encode_int(lat.a),
        "b": _encode_int(lat.b),
        "d": _encode_int(lat.d),
    }


def _decode_lattice(value, field):
    if not isinstance(value, dict):
        raise DocumentError(f"{field}: expected a lattice object")
    try:
        return Lattice2(
            _decode_int(_get(value, "a", field), f"{field}.a"),
            _decode_int(_get(value, "b", field), f"{field}.b"),
            _decode_int(_get(value, "d", field), f"{field}.d"),
        )
    except ValueError as exc:
        raise DocumentError(f"{field}: {exc}") from exc


def _get(doc, key, context="document"):
    if not isinstance(doc, dict):
        raise DocumentError(f"{context}: expected an object")
    if key not in doc:
        raise DocumentError(f"{context}: missing field {key!r}")
    return doc[key]


def _certificate_body(cert):
    return {
        "base_a": _encode_matrix(cert.base_a),
        "base_b": _encode_matrix(cert.base_b),
        "power_a": _encode_int(cert.power_a),
        "power_b": _encode_int(cert.power_b),
        "intertwiner": _encode_matrix(cert.intertwiner),
        "intertwiner_det": _encode_int(cert.intertwiner_det),
        "sublattice": _encode_lattice(cert.sublattice),
        "stabilization": _encode_int(cert.stabilization),
        "index_over_a": _encode_int(cert.index_over_a),
        "index_over_b": _encode_int(cert.index_over_b),
    }


def _decode_certificate_body(doc, context):
    return CommensurabilityCertificate(
        base_a=_decode_matrix(_get(doc, "base_a", context), f"{context}.base_a"),
        base_b=_decode_matrix(_get(doc, "base_b", context), f"{context}.base_b"),
        power_a=_decode_int(_get(doc, "power_a", context), f"{context}.power_a"),
        power_b=_decode_int(_get(doc, "power_b", context), f"{context}.power_b"),
        intertwiner=_decode_matrix(
            _get(doc, "intertwiner", context), f"{context}.intertwiner"
        ),
        intertwiner_det=_decode_int(
            _get(doc, "intertwiner_det", context), f"{context}.intertwiner_det"
        ),
        sublattice=_decode_lattice(
            _get(doc, "sublattice", context), f"{context}.sublattice"
        ),
        stabilization=_decode_int(
            _get(doc, "stabilization", context), f"{context}.stabilization"
        ),
        index_over_a=_decode_int(
            _get(doc, "index_over_a", context), f"{context}.index_over_a"
        ),
        index_over_b=_decode_int(
            _get(doc, "index_over_b", context), f"{context}.index_over_b"
        ),
    )


def encode_certificate(cert):
    doc = {
        "format_version": FORMAT_VERSION,
        "generator": f"flowcomm {__version__}",
        "kind": CERTIFICATE_KIND,
    }
    doc.update(_certificate_body(cert))
    return doc


def decode_certificate(doc):
    _check_header(doc, CERTIFICATE_KIND)
    return _decode_certificate_body(doc, "certificate")


def _encode_model(model):
    if isinstance(model, Suspension):
        return {"type": "suspension", "monodromy": _encode_matrix(model.monodromy)}
    if isinstance(model, GeodesicSurface):
        return {"type": "surface", "genus": _encode_int(model.genus)}
    if isinstance(model, GeodesicOrbifold):
        return {
            "type": "orbifold",
            "cone_orders": [_encode_int(k) for k in model.cone_orders],
        }
    raise TypeError(f"not a model: {model!r}")


def _decode_model(value, field):
    kind = _get(value, "type", field)
    try:
        if kind == "suspension":
            return Suspension(_decode_matrix(_get(value, "monodromy", field), f"{field}.monodromy"))
        if kind == "surface":
            return GeodesicSurface(_decode_int(_get(value, "genus", field), f"{field}.genus"))
        if kind == "orbifold":
            orders = _get(value, "cone_orders", field)
            if not isinstance(orders, list) or len(orders) != 3:
                raise DocumentError(f"{field}.cone_orders: expected three cone orders")
            p, q, n = (
                _decode_int(orders[i], f"{field}.cone_orders[{i}]") for i in range(3)
            )
            if (p, q) != (2, 3):
                raise DocumentError(
                    f"{field}.cone_orders: only (2, 3, n) orbifolds are supported"
                )
            return GeodesicOrbifold(n)
    except DocumentError:
        raise
    except (ValueError, TypeError) as exc:
        raise DocumentError(f"{field}: {exc}") from exc
    raise DocumentError(f"{field}.type: unknown model type {kind!r}")


def _encode_evidence(evidence):
    if isinstance(evidence, str):
        return {"type": "citation", "tag": evidence}
    if isinstance(evidence, CommensurabilityCertificate):
        body = {"type": "certificate"}
        body.update(_certificate_body(evidence))
        return body
    if isinstance(evidence, GeodesicCommonCover):
        return {
            "type": "common-cover",
            "cover_genus": _encode_int(evidence.cover_genus),
            "degree_source": _encode_int(evidence.degree_source),
            "degree_target": _encode_int(evidence.degree_target),
            "euler_source": _encode_fraction(evidence.euler_source),
            "euler_target": _encode_fraction(evidence.euler_target),
            "euler_cover": _encode_fraction(evidence.euler_cover),
        }
    raise TypeError(f"not chain-link evidence: {evidence!r}")


def _decode_evidence(value, field):
    kind = _get(value, "type", field)
    if kind == "citation":
        tag = _get(value, "tag", field)
        if tag not in _CITATION_TAGS:
            raise DocumentError(f"{field}.tag: unknown citation tag {tag!r}")
        return tag
    if kind == "certificate":
        return _decode_certificate_body(value, field)
    if kind == "common-cover":
        return GeodesicCommonCover(
            cover_genus=_decode_int(_get(value, "cover_genus", field), f"{field}.cover_genus"),
            degree_source=_decode_int(
                _get(value, "degree_source", field), f"{field}.degree_source"
            ),
            degree_target=_decode_int(
                _get(value, "degree_target", field), f"{field}.degree_target"
            ),
            euler_source=_decode_fraction(
                _get(value, "euler_source", field), f"{field}.euler_source"
            ),
            euler_target=_decode_fraction(
                _get(value, "euler_target", field), f"{field}.euler_target"
            ),
            euler_cover=_decode_fraction(
                _get(value, "euler_cover", field), f"{field}.euler_cover"
            ),
        )
    raise DocumentError(f"{field}.type: unknown evidence type {kind!r}")


def _encode_link(link):
    return {
        "kind": link.kind,
        "source": _encode_model(link.source),
        "target": _encode_model(link.target),
        "evidence": _encode_evidence(link.evidence),
    }


def _decode_link(value, field):
    kind = _get(value, "kind", field)
    if kind not in (ALMOST_EQUIVALENCE, COMMENSURABILITY):
        raise DocumentError(f"{field}.kind: unknown link kind {kind!r}")
    return ChainLink(
        kind=kind,
        source=_decode_model(_get(value, "source", field), f"{field}.source"),
        target=_decode_model(_get(value, "target", field), f"{field}.target"),
        evidence=_decode_evidence(_get(value, "evidence", field), f"{field}.evidence"),
    )


def encode_chain(chain):
    return {
        "format_version": FORMAT_VERSION,
        "generator": f"flowcomm {__version__}",
        "kind": CHAIN_KIND,
        "endpoints": [_encode_model(m) for m in chain.endpoints],
        "links": [_encode_link(link) for link in chain.links],
    }


def decode_chain(doc):
    _check_header(doc, CHAIN_KIND)
    endpoints = _get(doc, "endpoints")
    if not isinstance(endpoints, list) or len(endpoints) != 2:
        raise DocumentError("endpoints: expected exactly two models")
    links = _get(doc, "links")
    if not isinstance(links, list):
        raise DocumentError("links: expected a list of links")
    return ChainCertificate(
        links=tuple(_decode_link(link, f"links[{i}]") for i, link in enumerate(links)),
        endpoints=tuple(
            _decode_model(m, f"endpoints[{i}]") for i, m in enumerate(endpoints)
        ),
    )


def _check_header(doc, expected_kind):
    version = _get(doc, "format_version")
    if version != FORMAT_VERSION:
        raise DocumentError(
            f"format_version: expected {FORMAT_VERSION!r}, got {version!r}"
        )
    kind = _get(doc, "kind")
    if kind != expected_kind:
        raise DocumentError(f"kind: expected {expected_kind!r}, got {kind!r}")
    generator = doc.get("generator")
    if generator is not None and not isinstance(generator, str):
        raise DocumentError("generator: expected a string when present")


def decode_document(doc):
    """Dispatch on the kind discriminator; returns the decoded object."""
    kind = _get(doc, "kind")
    if kind == CERTIFICATE_KIND:
        return decode_certificate(doc)
    if kind == CHAIN_KIND:
        return decode_chain(doc)
    raise DocumentError(f"kind: unknown document kind {kind!r}")


def dumps(doc):
    """Canonical text form: sorted keys, two-space indent, newline end."""
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def loads(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise DocumentError("document: expected a JSON object")
    return doc
