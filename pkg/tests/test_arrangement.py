import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toricenter import (
    EmptyArrangement,
    ExactScalar,
    IntMatrix,
    ParseError,
    RankDeficient,
    ShapeMismatch,
    ToricArrangement,
    TooManyEquations,
    TorusEquation,
    associated_matrix,
    dump_arrangement,
    is_centered,
    is_complexified,
    load_arrangement,
    unit,
    validate_hypothesis,
)
from toricenter.corpus import random_arrangement

from .oracles import fraction_rank, scalars

ONE = ExactScalar()
MINUS_ONE = ExactScalar.from_json("-1")


def arrangements(max_m=4, max_n=4):
    def build(shape):
        m, n = shape
        return st.builds(
            ToricArrangement,
            st.just(n),
            st.lists(
                st.builds(
                    TorusEquation,
                    st.lists(st.integers(-5, 5), min_size=n, max_size=n).map(tuple),
                    scalars,
                ),
                min_size=m, max_size=m,
            ),
        )

    return st.tuples(st.integers(1, max_m), st.integers(1, max_n)).flatmap(build)


def test_associated_matrix_transcribes_rows():
    a = ToricArrangement.from_rows([[2, 4]], [MINUS_ONE])
    assert associated_matrix(a) == IntMatrix.from_rows([[2, 4]])
    b = ToricArrangement.from_rows([[1, 2], [1, 1]], [MINUS_ONE, ONE])
    assert b.associated_matrix() == IntMatrix.from_rows([[1, 2], [1, 1]])
    assert b.associated_matrix().rows == b.m


def test_predicates():
    assert is_complexified(ToricArrangement.from_rows([[1, 0]], [ONE]))
    assert is_complexified(ToricArrangement.from_rows([[1, 0]], [unit("1/3")]))
    assert not is_complexified(ToricArrangement.from_rows([[1, 0]], [ExactScalar({2: 1})]))
    assert is_centered(ToricArrangement.from_rows([[1, 0], [0, 1]], [ONE, ONE]))
    assert not is_centered(ToricArrangement.from_rows([[1, 0]], [MINUS_ONE]))


@given(arrangements())
def test_centered_implies_complexified(a):
    if a.is_centered():
        assert a.is_complexified()
    centered = a.with_constants([ONE] * a.m)
    assert centered.is_centered() and centered.is_complexified()


def test_validate_hypothesis():
    assert validate_hypothesis(ToricArrangement.from_rows([[2, 4]], [MINUS_ONE])) == (1, 2)
    with pytest.raises(RankDeficient):
        validate_hypothesis(ToricArrangement.from_rows([[1, 2], [2, 4]], [ONE, ONE]))
    with pytest.raises(TooManyEquations):
        validate_hypothesis(
            ToricArrangement.from_rows([[1, 0], [0, 1], [1, 1]], [ONE, ONE, ONE])
        )
    with pytest.raises(EmptyArrangement):
        validate_hypothesis(ToricArrangement(2, ()))


def test_zero_row_is_allowed_but_fails_the_hypothesis():
    a = ToricArrangement.from_rows([[0, 0]], [ONE])
    assert a.equations[0].is_degenerate()
    with pytest.raises(RankDeficient):
        validate_hypothesis(a)


@given(arrangements())
def test_validate_accepts_exactly_the_full_rank_instances(a):
    ok = a.m <= a.n and fraction_rank([list(e.exponents) for e in a.equations]) == a.m
    try:
        assert validate_hypothesis(a) == (a.m, a.n)
        accepted = True
    except (RankDeficient, TooManyEquations):
        accepted = False
    assert accepted == ok


def test_dimension_mismatch_is_rejected():
    with pytest.raises(ShapeMismatch):
        ToricArrangement(3, [TorusEquation((1, 2), ONE)])


@given(arrangements())
def test_json_round_trip_is_exact(a):
    text = json.dumps(a.to_json())
    b = ToricArrangement.from_json(json.loads(text))
    assert b == a
    assert b.associated_matrix() == a.associated_matrix()
    assert json.dumps(b.to_json()) == text


def test_file_format(tmp_path):
    path = tmp_path / "a.json"
    path.write_text(json.dumps({
        "ambient_dim": 2,
        "equations": [{"exponents": [2, "4"], "constant": "-1"}],
    }))
    a = load_arrangement(path)
    assert a == ToricArrangement.from_rows([[2, 4]], [MINUS_ONE])
    dump_arrangement(a, tmp_path / "b.json")
    assert load_arrangement(tmp_path / "b.json") == a


@pytest.mark.parametrize(
    "bad",
    [
        {"equations": []},
        {"ambient_dim": 2, "equations": [{"exponents": [1], "constant": "1"}]},
        {"ambient_dim": 2, "equations": [{"exponents": [1, 2]}]},
        {"ambient_dim": "2", "equations": []},
        {"ambient_dim": 1, "equations": [{"exponents": [1], "constant": 0.5}]},
    ],
)
def test_malformed_json(bad):
    with pytest.raises(ParseError):
        ToricArrangement.from_json(bad)


def test_load_rejects_invalid_json(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ParseError):
        load_arrangement(path)


def test_random_arrangements_satisfy_hypothesis():
    rng = random.Random(5)
    for _ in range(50):
        a = random_arrangement(rng)
        m, n = validate_hypothesis(a)
        assert 1 <= m <= n <= 6
        assert max(abs(p) for e in a.equations for p in e.exponents) <= 9
        for c in a.constants:
            assert c.turns.denominator <= 12
            assert set(dict(c.modulus)) <= {2, 3, 5}
            assert all(abs(e) == 1 for _, e in c.modulus)
