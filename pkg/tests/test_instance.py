import dataclasses
import json

import pytest

from twctss import (
    ParseError,
    classify_shape,
    generate,
    make_instance,
    parse_instance,
    serialize_instance,
    validate,
)
from twctss.instance import COMPLETE, GENERAL, PATH, RING, TREE

from conftest import DATA, path_instance, ring_instance


def test_validate_accepts_valid_path():
    assert validate(path_instance([1, 2, 1], 1)) == []


def test_validate_threshold_above_degree():
    bad = validate(path_instance([2, 1, 1], 1))
    assert any("t(0)=2 > deg(0)=1" in v for v in bad)


def test_validate_lambda():
    bad = validate(path_instance([1, 2, 1], 0))
    assert any("lambda" in v for v in bad)


def test_validate_threshold_below_one():
    bad = validate(path_instance([1, 0, 1], 1))
    assert any("t(1)=0 < 1" in v for v in bad)


def test_degree_sum_is_twice_edges():
    for seed in range(20):
        inst = generate("gnp", 8, "uniform", 2, seed, edge_p=0.5)
        assert sum(inst.degree(v) for v in range(inst.n)) == 2 * inst.edge_count()


def test_instances_are_immutable():
    inst = path_instance([1, 2, 1], 1)
    with pytest.raises(dataclasses.FrozenInstanceError):
        inst.n = 5


class TestClassify:
    def test_triangle_is_complete_not_ring(self):
        inst = make_instance(3, [(0, 1), (1, 2), (0, 2)], [1, 1, 1], 1)
        assert classify_shape(inst).kind == COMPLETE

    def test_two_node_path_is_complete(self):
        inst = make_instance(2, [(0, 1)], [1, 1], 1)
        assert classify_shape(inst).kind == COMPLETE

    def test_five_cycle_order(self):
        shape = classify_shape(ring_instance([1] * 5, 1))
        assert shape.kind == RING
        assert shape.order == (0, 1, 2, 3, 4)

    def test_star_is_tree(self):
        inst = make_instance(5, [(0, i) for i in range(1, 5)], [1] * 5, 1)
        assert classify_shape(inst).kind == TREE

    def test_path_order_starts_at_smaller_endpoint(self):
        # path 2-0-1: endpoints 2 and 1, so the order starts at 1
        inst = make_instance(3, [(0, 2), (0, 1)], [1, 1, 1], 1)
        shape = classify_shape(inst)
        assert shape.kind == PATH
        assert shape.order == (1, 0, 2)

    def test_general(self):
        edges = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (0, 4)]
        inst = make_instance(5, edges, [1] * 5, 1)
        assert classify_shape(inst).kind == GENERAL

    def test_disconnected_is_general(self):
        inst = make_instance(4, [(0, 1), (2, 3)], [1, 1, 1, 1], 1)
        assert classify_shape(inst).kind == GENERAL


class TestFormats:
    def test_canonical_fixture_roundtrip_bytes(self):
        for name in ("fig3a_path.twctss", "fig1_tree_l1.twctss", "fig1_tree_l3.twctss"):
            text = (DATA / name).read_text()
            assert serialize_instance(parse_instance(text)) == text

    def test_parse_serialize_identity_random(self):
        for seed in range(10):
            inst = generate("gnp", 9, "uniform", 3, seed, edge_p=0.4)
            assert parse_instance(serialize_instance(inst)) == inst

    def test_parse_basic(self):
        text = "twctss 1\nn 3\nlambda 1\nthresholds 1 2 1\nedges 2\n0 1\n1 2\n"
        assert parse_instance(text) == path_instance([1, 2, 1], 1)

    def test_comments_and_blanks(self):
        text = ("# header comment\ntwctss 1\n\nn 3  # three nodes\nlambda 1\n"
                "thresholds 1 2 1\nedges 2\n0 1\n1 2\n")
        assert parse_instance(text) == path_instance([1, 2, 1], 1)

    def test_node_id_out_of_range(self):
        text = "twctss 1\nn 3\nlambda 1\nthresholds 1 2 1\nedges 2\n0 1\n0 3\n"
        with pytest.raises(ParseError, match="out of range"):
            parse_instance(text)

    def test_duplicate_edge(self):
        text = "twctss 1\nn 3\nlambda 1\nthresholds 1 2 1\nedges 3\n0 1\n1 2\n0 1\n"
        with pytest.raises(ParseError, match="duplicate"):
            parse_instance(text)

    def test_edge_order_enforced(self):
        text = "twctss 1\nn 3\nlambda 1\nthresholds 1 2 1\nedges 2\n1 0\n1 2\n"
        with pytest.raises(ParseError, match="u < v"):
            parse_instance(text)

    def test_threshold_count_mismatch(self):
        text = "twctss 1\nn 3\nlambda 1\nthresholds 1 2\nedges 2\n0 1\n1 2\n"
        with pytest.raises(ParseError, match="expected 3"):
            parse_instance(text)

    def test_missing_edges(self):
        text = "twctss 1\nn 3\nlambda 1\nthresholds 1 2 1\nedges 2\n0 1\n"
        with pytest.raises(ParseError, match="unexpected end"):
            parse_instance(text)

    def test_trailing_content(self):
        text = "twctss 1\nn 3\nlambda 1\nthresholds 1 2 1\nedges 1\n0 1\n1 2\n"
        with pytest.raises(ParseError, match="trailing"):
            parse_instance(text)

    def test_bad_magic(self):
        with pytest.raises(ParseError, match="twctss 1"):
            parse_instance("twctss 2\nn 1\n")

    def test_line_numbers_reported(self):
        text = "twctss 1\nn 3\nlambda 1\nthresholds 1 2 1\nedges 2\n0 1\n0 x\n"
        with pytest.raises(ParseError, match="line 7"):
            parse_instance(text)

    def test_json_mirror(self):
        inst = path_instance([1, 2, 1], 4)
        obj = {"version": 1, "n": 3, "lambda": 4, "thresholds": [1, 2, 1],
               "edges": [[0, 1], [1, 2]]}
        assert parse_instance(json.dumps(obj)) == inst

    def test_json_rejects_bad_edges(self):
        obj = {"version": 1, "n": 3, "lambda": 1, "thresholds": [1, 2, 1],
               "edges": [[1, 0]]}
        with pytest.raises(ParseError, match="u < v"):
            parse_instance(json.dumps(obj))

    def test_json_missing_key(self):
        with pytest.raises(ParseError, match="missing key"):
            parse_instance('{"version": 1, "n": 2}')
