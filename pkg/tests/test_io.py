import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hdxspec.errors import ParseError, ValidationError
from hdxspec.generators import cross_polytope, random_facet_weights, random_pure_complex
from hdxspec.io import (
    ComplexDocument,
    dump_document,
    encode_json,
    format_number,
    load_document,
    normalize,
    parse_complex,
    round_sig,
)

from conftest import FIXTURES


def test_minimal_document():
    doc = parse_complex('{"facets": [[0, 1, 2]]}')
    X = doc.complex()
    assert X.f_vector() == (3, 3, 1)
    assert doc.format == 1 and doc.facet_weights is None and doc.partition is None
    assert doc.weight(X)(()) == 6


def test_octahedron_fixture():
    doc = load_document(FIXTURES / "octahedron.json")
    X = doc.complex()
    assert X.count(2) == 8
    P = doc.partition_obj(X)
    assert P.blocks() == [(0, 1), (2, 3), (4, 5)]
    assert doc.metadata == {"name": "octahedron"}


def test_weights_are_used():
    doc = parse_complex('{"facets": [[0, 1, 2], [1, 2, 3]], "facet_weights": [1.0, 3]}')
    m = doc.weight()
    assert m((1, 2)) == 4 and m((0,)) == 2 and m(()) == 24


@pytest.mark.parametrize("text", [
    '{"facets": [[0,1,2]], "facet_weights": [0.0]}',
    '{"facets": [[0,1,2]], "facet_weights": [-1]}',
    '{"facets": [[0,1,2]], "facet_weights": [1, 2]}',
    '{"facets": [[0,1,2]], "facet_weights": [true]}',
    '{"facets": [[0,1,2]], "facet_weights": ["1"]}',
    '{"facets": []}',
    '{"facets": [[0,1],[0,1,2]]}',
    '{"facets": [[0,0,1]]}',
    '{"facets": [[0,1.5]]}',
    '{"facets": [[0,-1]]}',
    '{"facets": [[0,1],[1,0]]}',
    '{"facets": [[0,1]], "extra": 1}',
    '{"facets": [[0,1]], "format": 2}',
    '{"facets": [[0,1]], "format": true}',
    '{"format": 1}',
    '[[0, 1]]',
    '{"facets": [[0,1]], "partition": {"0": 0, "1": 0}}',
    '{"facets": [[0,1]], "partition": {"0": 0}}',
    '{"facets": [[0,1]], "partition": {"0": 0, "1": 1, "7": 0}}',
    '{"facets": [[0,1]], "partition": {"a": 0, "1": 1}}',
    '{"facets": [[0,1]], "partition": {"0": 0, "1": 5}}',
    '{"facets": [[0,1]], "partition": [0, 1]}',
    '{"facets": [[0,1]], "metadata": []}',
])
def test_validation_errors(text):
    with pytest.raises(ValidationError):
        parse_complex(text)


def test_parse_error_location():
    with pytest.raises(ParseError) as info:
        parse_complex('{\n  "facets": [[0, 1, 2]\n')
    assert info.value.line is not None and info.value.column is not None
    with pytest.raises(ParseError):
        load_document(FIXTURES / "does_not_exist.json")


def test_generate_round_trip_lossless():
    X, P = cross_polytope(3)
    w = random_facet_weights(X, 5)
    doc = ComplexDocument.from_complex(X, w, P, {"generator": {"family": "cross_polytope", "n": 3}})
    text = dump_document(doc)
    back = parse_complex(text)
    assert back.complex() == X
    assert back.facet_weights == [float(x) for x in w]
    assert back.partition_obj(X) == P
    assert dump_document(back) == text
    assert np.array_equal(back.weight().on(-1), doc.weight().on(-1))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 5000), st.booleans())
def test_round_trip_random(seed, weighted):
    try:
        X = random_pure_complex(7, 2, 0.7, seed)
    except Exception:
        return
    w = random_facet_weights(X, seed) if weighted else None
    text = dump_document(ComplexDocument.from_complex(X, w))
    back = parse_complex(text)
    assert back.complex() == X
    assert dump_document(back) == text


def test_encoding_helpers():
    assert round_sig(1 / 3) == 0.333333333333
    assert round_sig(-1e-20) == -1e-20
    assert round_sig(float("inf")) == "inf"
    assert round_sig(1e-300 * 1e-300) == 0.0
    data = {"b": np.float64(0.1 + 0.2), "a": (np.int64(3), True, None)}
    assert normalize(data) == {"b": 0.3, "a": [3, True, None]}
    text = encode_json(data)
    assert json.loads(text) == {"a": [3, True, None], "b": 0.3}
    assert text.index('"a"') < text.index('"b"')
    assert format_number(1.5) == "1.5" and format_number(np.int64(4)) == "4"
    assert format_number(0.9999999999999996) == "1"
    with pytest.raises(TypeError):
        normalize(object())
