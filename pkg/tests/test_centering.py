import dataclasses
import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from toricenter import (
    CenteringCertificate,
    ExactScalar,
    IntMatrix,
    Permutation,
    PreconditionViolated,
    RankDeficient,
    ToricArrangement,
    TooManyEquations,
    TranslationMap,
    center,
    centering_step,
    dump_certificate,
    load_certificate,
    step1_triangularize,
    unit,
    verify_certificate_exact,
)
from toricenter.centering import all_branch_vectors, replay
from toricenter.corpus import random_arrangement

ONE = ExactScalar()
M = IntMatrix.from_rows
I = unit(Fraction(1, 4))
MINUS_ONE = unit(Fraction(1, 2))


def arrangements(**kw):
    return st.integers(0, 2**32).map(lambda s: random_arrangement(random.Random(s), **kw))


def with_gamma(cert, k, gamma, *, in_chain=False):
    """Copy of ``cert`` with gamma ``k`` (1-based) replaced."""
    gammas = list(cert.gammas)
    gammas[k - 1] = gamma
    cert = dataclasses.replace(cert, gammas=tuple(gammas))
    if in_chain:
        steps = list(cert.chain.steps)
        coord = cert.m - k + 1
        steps[k + 1] = TranslationMap.single(cert.n, coord, gamma.inverse())
        cert = dataclasses.replace(cert, chain=dataclasses.replace(cert.chain, steps=tuple(steps)))
    return cert


class TestWorkedExamples:
    def test_single_equation_step1(self, single_eq):
        tri = step1_triangularize(single_eq)
        assert tri.sigma == Permutation((1, 2))
        assert tri.H == M([[1]]) and tri.U == M([[2]])
        assert tri.C == single_eq

    def test_single_equation_step(self, single_eq):
        tri = step1_triangularize(single_eq)
        c1, gamma = centering_step(tri.C, 1, tri.U)
        assert gamma == I
        assert c1 == ToricArrangement.from_rows([[2, 4]], [ONE])

    def test_single_equation_center(self, single_eq):
        cert = center(single_eq)
        assert cert.gammas == (I,)
        assert cert.target == ToricArrangement.from_rows([[2, 4]], [ONE])
        assert verify_certificate_exact(cert)

    def test_two_equations_step1(self, two_eq):
        tri = step1_triangularize(two_eq)
        assert tri.U == IntMatrix.identity(2)
        assert tri.H == M([[-1, 2], [1, -1]])
        assert tri.K == M([[1, 2], [1, 1]])
        assert tri.C == ToricArrangement.from_rows([[1, 0], [0, 1]], [MINUS_ONE, ONE])

    def test_two_equations_steps(self, two_eq):
        tri = step1_triangularize(two_eq)
        c1, g1 = centering_step(tri.C, 1, tri.U)
        assert g1 == ONE and c1 == tri.C
        c2, g2 = centering_step(c1, 2, tri.U)
        assert g2 == MINUS_ONE
        assert c2.constants == (ONE, ONE)

    def test_two_equations_center(self, two_eq):
        cert = center(two_eq)
        assert cert.gammas == (ONE, MINUS_ONE)
        assert cert.target == ToricArrangement.from_rows([[1, 0], [0, 1]], [ONE, ONE])
        assert verify_certificate_exact(cert)

    def test_pivot_column_permutation(self):
        a = ToricArrangement.from_rows([[0, 0, 3]], [ExactScalar({2: 1})])
        tri = step1_triangularize(a)
        assert tri.sigma == Permutation((3, 1, 2))
        assert tri.U == M([[3]])
        cert = center(a)
        assert cert.gammas == (ExactScalar({2: Fraction(1, 3)}),)
        assert verify_certificate_exact(cert)

    def test_already_centered(self):
        a = ToricArrangement.from_rows([[1, 0, 2], [0, 3, 1]], [ONE, ONE])
        cert = center(a)
        assert cert.gammas == (ONE, ONE)
        assert cert.target == a


def test_hypothesis_is_enforced():
    with pytest.raises(RankDeficient):
        center(ToricArrangement.from_rows([[1, 2], [2, 4]], [ONE, ONE]))
    with pytest.raises(TooManyEquations):
        center(ToricArrangement.from_rows([[1], [2]], [ONE, ONE]))


def test_centering_step_preconditions(two_eq):
    tri = step1_triangularize(two_eq)
    with pytest.raises(PreconditionViolated):
        # k = 2 pivots on row 1 and requires row 2 to be centered already
        centering_step(tri.C.with_constants([ONE, MINUS_ONE]), 2, tri.U)
    with pytest.raises(ValueError):
        centering_step(tri.C, 3, tri.U)


def test_centering_step_keeps_centered_rows():
    # row 2 already centered and has zero exponent in coordinate 1
    c = ToricArrangement.from_rows([[2, 1], [0, 1]], [MINUS_ONE, ONE])
    c1, gamma = centering_step(c, 2, M([[2, 1], [0, 1]]))
    assert gamma == I
    assert c1.constants == (ONE, ONE)


@settings(max_examples=150, deadline=None)
@given(arrangements())
def test_center_invariants(a):
    cert = center(a)
    assert cert.target.is_centered()
    assert verify_certificate_exact(cert)
    m = a.m
    permuted = cert.sigma.pushforward
    rest = [list(permuted(eq).exponents[m:]) for eq in a.equations]
    want = [list(cert.U.row(i)) + rest[i] for i in range(m)]
    assert cert.target.associated_matrix() == IntMatrix.from_rows(want)
    # the chain carries the source onto the target
    assert [cert.chain.pushforward(eq) for eq in a.equations] == list(cert.target.equations)
    for g, r, d in zip(cert.gammas, cert.radicands, cert.step_degrees):
        assert g**d == r


@settings(max_examples=60, deadline=None)
@given(arrangements())
def test_monotone_centering(a):
    stages = replay(center(a))
    m = a.m
    for k in range(1, m + 1):
        after = stages[k + 2]
        for r in range(m - k, m):
            assert after.equations[r].constant.is_one()


@settings(max_examples=60, deadline=None)
@given(arrangements(complexified=True))
def test_complexified_stays_on_unit_circle(a):
    cert = center(a)
    assert all(g.is_unit_modulus() for g in cert.gammas)
    assert all(s.is_complexified() for s in replay(cert))


@settings(max_examples=40, deadline=None)
@given(arrangements(max_dim=3, max_exponent=4))
def test_every_branch_gives_a_valid_certificate(a):
    base = center(a)
    for branches in list(all_branch_vectors(base))[:24]:
        cert = center(a, branches)
        assert cert.branch_indices == tuple(branches)
        assert cert.target.is_centered()
        assert verify_certificate_exact(cert)


def test_branch_one_on_worked_example(single_eq):
    cert = center(single_eq, [1])
    assert cert.gammas == (unit(Fraction(3, 4)),)
    assert verify_certificate_exact(cert)
    with pytest.raises(ValueError):
        center(single_eq, [2])
    with pytest.raises(ValueError):
        center(single_eq, [0, 0])


def test_folded_translation(two_eq):
    cert = center(two_eq)
    assert cert.folded_translation() == TranslationMap((MINUS_ONE.inverse(), ONE))
    folded = cert.chain.steps[0]
    pushed = [cert.folded_translation().pushforward(cert.chain.steps[1].pushforward(
        folded.pushforward(eq))) for eq in two_eq.equations]
    assert pushed == list(cert.target.equations)


class TestNegativeControls:
    def test_non_root_gamma(self, single_eq):
        cert = with_gamma(center(single_eq), 1, unit(Fraction(1, 8)))
        check = verify_certificate_exact(cert)
        assert not check
        assert any("gamma[1]^2 != radicand[1]" in f for f in check.failures)

    def test_non_root_gamma_in_chain_too(self, single_eq):
        cert = with_gamma(center(single_eq), 1, unit(Fraction(1, 8)), in_chain=True)
        check = verify_certificate_exact(cert)
        assert not check
        assert any("gamma[1]" in f for f in check.failures)
        assert any("target says" in f for f in check.failures)

    def test_tampered_target(self, two_eq):
        cert = center(two_eq)
        bad = dataclasses.replace(cert, target=cert.target.with_constants([ONE, MINUS_ONE]))
        check = verify_certificate_exact(bad)
        assert not check
        assert any("equation 2" in f for f in check.failures)

    def test_tampered_h(self, two_eq):
        cert = center(two_eq)
        bad = dataclasses.replace(cert, H=M([[1, 0], [0, 1]]))
        assert not verify_certificate_exact(bad)

    def test_truncated_chain(self, two_eq):
        cert = center(two_eq)
        bad = dataclasses.replace(
            cert, chain=dataclasses.replace(cert.chain, steps=cert.chain.steps[:3])
        )
        check = verify_certificate_exact(bad)
        assert not check and "chain has 3 steps" in check.failures[0]


@settings(max_examples=40, deadline=None)
@given(arrangements())
def test_certificate_json_round_trip(a):
    cert = center(a)
    text = json.dumps(cert.to_json())
    back = CenteringCertificate.from_json(json.loads(text))
    assert back == cert
    assert json.dumps(back.to_json()) == text


def test_certificate_file(tmp_path, single_eq):
    cert = center(single_eq)
    dump_certificate(cert, tmp_path / "c.json")
    data = json.loads((tmp_path / "c.json").read_text())
    assert data["gammas"] == ["i"]
    assert data["branch_indices"] == [0]
    assert data["target"]["equations"][0]["constant"] == "1"
    assert [s["kind"] for s in data["chain"]["steps"]] == ["permutation", "monomial", "translation"]
    assert load_certificate(tmp_path / "c.json") == cert
