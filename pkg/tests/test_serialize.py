"""Unit tests for the certificate document format."""

import json

import pytest

from flowcomm import (
    DocumentError,
    GeodesicOrbifold,
    GeodesicSurface,
    HyperbolicMatrix,
    Suspension,
    almost_commensurability_chain,
    are_commensurable,
)
from flowcomm.serialize import (
    CERTIFICATE_KIND,
    CHAIN_KIND,
    FORMAT_VERSION,
    decode_certificate,
    decode_chain,
    decode_document,
    dumps,
    encode_certificate,
    encode_chain,
    loads,
)
from helpers import string_leaves_only

A = HyperbolicMatrix(2, 1, 1, 1)
F7 = HyperbolicMatrix(0, 1, -1, 7)


def sample_certificate():
    return are_commensurable(A, F7).certificate


def sample_chains():
    return [
        almost_commensurability_chain(GeodesicSurface(2), GeodesicOrbifold(18)),
        almost_commensurability_chain(GeodesicSurface(2), GeodesicSurface(3)),
        almost_commensurability_chain(GeodesicOrbifold(7), GeodesicOrbifold(12)),
        almost_commensurability_chain(Suspension(A), Suspension(A)),
    ]


class TestCertificateDocuments:
    def test_round_trip(self):
        cert = sample_certificate()
        assert decode_certificate(encode_certificate(cert)) == cert

    def test_header_fields(self):
        doc = encode_certificate(sample_certificate())
        assert doc["format_version"] == FORMAT_VERSION == "1"
        assert doc["kind"] == CERTIFICATE_KIND
        assert isinstance(doc["generator"], str)

    def test_all_scalars_are_strings(self):
        doc = encode_certificate(sample_certificate())
        assert string_leaves_only(doc)
        reparsed = json.loads(dumps(doc))
        assert string_leaves_only(reparsed)

    def test_big_integers_survive(self):
        cert = are_commensurable(A ** 9, A).certificate
        round_tripped = decode_certificate(loads(dumps(encode_certificate(cert))))
        assert round_tripped == cert

    def test_generator_optional_and_ignored(self):
        doc = encode_certificate(sample_certificate())
        del doc["generator"]
        assert decode_certificate(doc) == sample_certificate()
        doc["generator"] = "someone else 9.9"
        assert decode_certificate(doc) == sample_certificate()

    def test_generator_must_be_string(self):
        doc = encode_certificate(sample_certificate())
        doc["generator"] = 5
        with pytest.raises(DocumentError):
            decode_certificate(doc)

    def test_wrong_version(self):
        doc = encode_certificate(sample_certificate())
        doc["format_version"] = "2"
        with pytest.raises(DocumentError):
            decode_certificate(doc)

    def test_wrong_kind(self):
        doc = encode_certificate(sample_certificate())
        doc["kind"] = CHAIN_KIND
        with pytest.raises(DocumentError):
            decode_certificate(doc)

    def test_missing_field(self):
        doc = encode_certificate(sample_certificate())
        del doc["intertwiner"]
        with pytest.raises(DocumentError):
            decode_certificate(doc)

    def test_native_number_rejected(self):
        doc = encode_certificate(sample_certificate())
        doc["power_a"] = 2
        with pytest.raises(DocumentError):
            decode_certificate(doc)

    def test_non_numeric_string_rejected(self):
        doc = encode_certificate(sample_certificate())
        doc["power_a"] = "two"
        with pytest.raises(DocumentError):
            decode_certificate(doc)

    def test_bad_matrix_shape(self):
        doc = encode_certificate(sample_certificate())
        doc["intertwiner"] = [["1", "1", "0"], ["0", "1", "0"]]
        with pytest.raises(DocumentError):
            decode_certificate(doc)

    def test_bad_lattice(self):
        doc = encode_certificate(sample_certificate())
        doc["sublattice"] = {"a": "3", "b": "5", "d": "1"}
        with pytest.raises(DocumentError):
            decode_certificate(doc)


class TestChainDocuments:
    def test_round_trips(self):
        for chain in sample_chains():
            assert decode_chain(encode_chain(chain)) == chain

    def test_all_scalars_are_strings(self):
        for chain in sample_chains():
            assert string_leaves_only(encode_chain(chain))

    def test_fractions_encoded_exactly(self):
        chain = almost_commensurability_chain(
            GeodesicOrbifold(7), GeodesicOrbifold(12)
        )
        doc = encode_chain(chain)
        evidence = doc["links"][0]["evidence"]
        assert evidence["type"] == "common-cover"
        assert evidence["euler_source"] == "-1/42"
        assert evidence["euler_cover"] == "-2"
        assert evidence["degree_source"] == "84"
        assert evidence["degree_target"] == "24"

    def test_unknown_citation_tag(self):
        chain = sample_chains()[0]
        doc = encode_chain(chain)
        doc["links"][0]["evidence"]["tag"] = "FOLKLORE"
        with pytest.raises(DocumentError):
            decode_chain(doc)

    def test_unknown_link_kind(self):
        doc = encode_chain(sample_chains()[0])
        doc["links"][0]["kind"] = "almost-isomorphism"
        with pytest.raises(DocumentError):
            decode_chain(doc)

    def test_unknown_model_type(self):
        doc = encode_chain(sample_chains()[0])
        doc["endpoints"][0]["type"] = "torus"
        with pytest.raises(DocumentError):
            decode_chain(doc)

    def test_non_23n_orbifold_rejected(self):
        doc = encode_chain(sample_chains()[0])
        doc["links"][-1]["target"]["cone_orders"] = ["2", "5", "18"]
        with pytest.raises(DocumentError):
            decode_chain(doc)

    def test_endpoints_shape(self):
        doc = encode_chain(sample_chains()[0])
        doc["endpoints"] = doc["endpoints"][:1]
        with pytest.raises(DocumentError):
            decode_chain(doc)

    def test_bad_fraction_rejected(self):
        chain = almost_commensurability_chain(
            GeodesicOrbifold(7), GeodesicOrbifold(12)
        )
        doc = encode_chain(chain)
        doc["links"][0]["evidence"]["euler_source"] = "-1/0"
        with pytest.raises(DocumentError):
            decode_chain(doc)

    def test_mutated_documents_still_decode(self):
        """Wrong values in well-formed fields decode fine; rejection is
        the verifier's job, not the parser's."""
        from flowcomm import verify_chain

        doc = encode_chain(sample_chains()[0])
        doc["links"][0]["evidence"]["tag"] = "BIRKHOFF_SECTION_23N"
        chain = decode_chain(doc)
        ok, clause = verify_chain(chain)
        assert not ok
        assert clause == "link 0: almost_equivalence_whitelist"


class TestTextForm:
    def test_dumps_deterministic(self):
        doc = encode_certificate(sample_certificate())
        assert dumps(doc) == dumps(json.loads(dumps(doc)))
        assert dumps(doc).endswith("\n")

    def test_dumps_sorted_keys(self):
        text = dumps(encode_certificate(sample_certificate()))
        keys = [line.split('"')[1] for line in text.splitlines() if line.startswith('  "')]
        assert keys == sorted(keys)

    def test_loads_rejects_invalid_json(self):
        with pytest.raises(DocumentError):
            loads("{not json")

    def test_loads_rejects_non_object(self):
        with pytest.raises(DocumentError):
            loads("[1, 2]")

    def test_decode_document_dispatch(self):
        cert = sample_certificate()
        chain = sample_chains()[0]
        assert decode_document(encode_certificate(cert)) == cert
        assert decode_document(encode_chain(chain)) == chain

    def test_decode_document_unknown_kind(self):
        doc = encode_certificate(sample_certificate())
        doc["kind"] = "waiver"
        with pytest.raises(DocumentError):
            decode_document(doc)
