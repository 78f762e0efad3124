import random

import pytest

from dstar.errors import ConstantDivisor, DuplicateLeaders
from dstar.ordering import GREATER, DVariable, SequentialRanking, is_sigma_only
from dstar.parser import parse_poly
from dstar.poly import DPolynomial, rank_compare
from dstar.reduction import (
    a_leader,
    certificate_from_json,
    certificate_to_json,
    Cofactor,
    is_reduced,
    is_reduced_wrt_set,
    multiplier_product,
    reduce,
    ReductionCertificate,
    verify_certificate,
)

from gen import rand_divisors, rand_poly


@pytest.fixture
def worked(dual):
    # f = (delta x)^2 - 4x
    return parse_poly("x1[0,1]^2 - 4 * x1[0,0]", dual)


def test_is_reduced_examples(dual, worked):
    assert is_reduced(parse_poly("x1[0,0]", dual), worked)
    # sigma-transform of the leader at degree 3 >= 2
    assert not is_reduced(parse_poly("x1[1,1]^3", dual), worked)
    # delta-transform present
    assert not is_reduced(parse_poly("x1[0,2]", dual), worked)
    # constants are reduced with respect to everything
    assert is_reduced(DPolynomial.constant(dual, 3), worked)
    with pytest.raises(ConstantDivisor):
        is_reduced(parse_poly("x1[0,0]", dual), DPolynomial.constant(dual, 1))


def test_a_leader_examples(dual, worked):
    led = a_leader(parse_poly("x1[0,2]", dual), [worked])
    assert led.variable == DVariable(1, (0, 2))
    assert led.theta == (0, 1) and led.degree == 1 and led.is_delta
    assert a_leader(parse_poly("x1[0,0]", dual), [worked]) is None
    # delta-transforms outrank sigma-transforms here
    led = a_leader(parse_poly("x1[1,1]^2 * x1[0,2]", dual), [worked])
    assert led.variable == DVariable(1, (0, 2))


def test_a_leader_member_tiebreak(dual):
    # x1[0,2] is a transform of both leaders; the higher-ranked leader wins
    a0 = parse_poly("x1[0,0]", dual)
    a1 = parse_poly("x1[0,1]", dual)
    led = a_leader(parse_poly("x1[0,2]", dual), [a0, a1])
    assert led.member == 1 and led.theta == (0, 1)


def test_worked_reduction(dual, worked):
    g = parse_poly("x1[0,2]", dual)
    cert = reduce(g, [worked])
    assert cert.remainder == parse_poly("4 * x1[0,1]", dual)
    assert multiplier_product(cert, [worked]) == parse_poly("2 * x1[1,1]", dual)
    assert len(cert.cofactors) == 1
    assert cert.cofactors[0].c == DPolynomial.constant(dual, 1)
    assert cert.cofactors[0].theta == (0, 1)
    assert verify_certificate(g, [worked], cert)
    assert [s.case for s in cert.steps] == ["delta"]


def test_reduce_already_reduced(dual, worked):
    g = parse_poly("x1[0,0]", dual)
    cert = reduce(g, [worked])
    assert cert.remainder == g
    assert cert.h_factors == () and cert.cofactors == () and cert.steps == ()
    assert verify_certificate(g, [worked], cert)


def test_reduce_to_zero(dual):
    g = parse_poly("x1[0,1] * x1[0,0]", dual)
    cert = reduce(g, [parse_poly("x1[0,0]", dual)])
    assert cert.remainder.is_zero()
    assert verify_certificate(g, [parse_poly("x1[0,0]", dual)], cert)
    assert [s.case for s in cert.steps][0] == "delta"


def test_reduce_with_empty_divisor_set(dual):
    g = parse_poly("x1[0,2]^3 + x1[1,0]", dual)
    cert = reduce(g, [])
    assert cert.remainder == g and cert.h_factors == ()
    assert verify_certificate(g, [], cert)


def test_duplicate_leaders_rejected(dual):
    a = parse_poly("x1[0,1] + x1[0,0]", dual)
    b = parse_poly("2 * x1[0,1]", dual)
    with pytest.raises(DuplicateLeaders):
        reduce(parse_poly("x1[0,2]", dual), [a, b])


def test_certificate_perturbations_fail(dual, worked):
    g = parse_poly("x1[0,2]", dual)
    cert = reduce(g, [worked])
    plus_one = ReductionCertificate(
        cert.h_factors, cert.remainder + 1, cert.cofactors, cert.steps)
    assert not verify_certificate(g, [worked], plus_one)
    dropped = ReductionCertificate(cert.h_factors, cert.remainder, (), cert.steps)
    assert not verify_certificate(g, [worked], dropped)
    # a remainder that fails reducedness is rejected even if the identity holds
    bogus = ReductionCertificate(
        (), g, (Cofactor(DPolynomial.zero(dual), (0, 0), 0),), ())
    assert not verify_certificate(g, [worked], bogus)


def test_random_certified_reductions(all_builtins):
    rng = random.Random(41)
    for d in all_builtins.values():
        ranking = SequentialRanking(d)
        for _ in range(40):
            divisors = rand_divisors(rng, d, ranking)
            g = rand_poly(rng, d)
            cert = reduce(g, divisors, ranking)
            assert verify_certificate(g, divisors, cert, ranking)
            assert is_reduced_wrt_set(cert.remainder, divisors, ranking)
            assert rank_compare(cert.remainder, g, ranking) != GREATER
            for factor in cert.h_factors:
                assert is_sigma_only(d, factor.theta)
            _check_measure_decreases(ranking, cert)


def _check_measure_decreases(ranking, cert):
    prev = None
    for step in cert.steps:
        if prev is not None:
            cmp = ranking.compare(step.leader, prev.leader)
            assert cmp == -1 or (cmp == 0 and step.degree < prev.degree)
        prev = step


def test_certificate_json_round_trip(dual, worked):
    g = parse_poly("x1[0,2]^2 + x1[0,0]", dual)
    cert = reduce(g, [worked])
    text = certificate_to_json(cert)
    again = certificate_from_json(text, dual)
    assert again == cert
    assert verify_certificate(g, [worked], again)
    assert certificate_to_json(again) == text
