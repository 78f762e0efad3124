"""Reduction of polynomials modulo a divisor set, with checkable certificates.

A polynomial is reduced with respect to a divisor f when it contains no
delta-transform of f's leader and every sigma-transform of that leader
(including the leader itself) appears below f's degree.  The reduction
loop repeatedly eliminates the highest-ranked offending variable,
multiplying by a sigma-transform of the divisor's separant (delta case)
or initial (sigma case).  Every run returns a certificate witnessing the
exact identity  H * g = g0 + sum_k c_k * theta_k(a_k).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ConstantDivisor, DStarError, DuplicateLeaders, ExprParseError
from .operators import apply_composition, rho
from .ordering import (
    EQUAL,
    GREATER,
    LESS,
    SequentialRanking,
    is_sigma_only,
    parse_variable,
    transform_of,
)
from .parser import parse_poly
from .poly import DPolynomial, format_poly, rank_compare

INITIAL = "initial"
SEPARANT = "separant"


@dataclass(frozen=True)
class HFactor:
    theta: tuple          # sigma-only multi-index
    source: str           # INITIAL or SEPARANT
    member: int           # 0-based index into the divisor list


@dataclass(frozen=True)
class Cofactor:
    c: DPolynomial
    theta: tuple
    member: int


@dataclass(frozen=True)
class Step:
    leader: object        # the offending variable handled in this iteration
    case: str             # "delta" or "sigma"
    degree: int


@dataclass(frozen=True)
class ReductionCertificate:
    h_factors: tuple
    remainder: DPolynomial
    cofactors: tuple
    steps: tuple


@dataclass(frozen=True)
class ALeader:
    variable: object
    degree: int
    member: int
    theta: tuple
    is_delta: bool


def is_reduced(g, f, ranking=None):
    """True when g contains no offending transform of f's leader."""
    if f.is_constant():
        raise ConstantDivisor("cannot reduce with respect to a constant")
    if g.is_constant():
        return True
    ranking = ranking or SequentialRanking(g.algebra)
    u = f.leader(ranking)
    d = f.degree_in(u)
    for v in g.variables():
        tr = transform_of(g.algebra, v, u)
        if tr is None:
            continue
        if tr.is_delta:
            return False
        if g.degree_in(v) >= d:
            return False
    return True


def is_reduced_wrt_set(g, divisors, ranking=None):
    return all(is_reduced(g, f, ranking) for f in divisors)


def a_leader(g, divisors, ranking=None):
    """Highest-ranked offending variable of g, or None when g is reduced.

    Ties across divisors go to the member with the highest-ranked leader,
    then the lowest index.
    """
    if g.is_constant():
        return None
    ranking = ranking or SequentialRanking(g.algebra)
    members = list(divisors)
    leaders = [f.leader(ranking) for f in members]
    degrees = [f.degree_in(u) for f, u in zip(members, leaders)]
    best = None
    for v in sorted(g.variables()):
        k = g.degree_in(v)
        for idx, (u, d) in enumerate(zip(leaders, degrees)):
            tr = transform_of(g.algebra, v, u)
            if tr is None or (not tr.is_delta and k < d):
                continue
            candidate = ALeader(v, k, idx, tr.theta, tr.is_delta)
            if best is None:
                best = candidate
                continue
            cmp = ranking.compare(v, best.variable)
            if cmp == GREATER:
                best = candidate
            elif cmp == EQUAL and idx != best.member:
                lcmp = ranking.compare(u, leaders[best.member])
                if lcmp == GREATER or (lcmp == EQUAL and idx < best.member):
                    best = candidate
    return best


def reduce(g, divisors, ranking=None):
    """Reduce g modulo the divisor set and return the certificate.

    Divisors must be non-constant with pairwise distinct leaders; they
    need not be autoreduced.  The (offending variable rank, degree) pair
    strictly decreases lexicographically at each step; this is asserted.
    """
    members = list(divisors)
    ranking = ranking or SequentialRanking(g.algebra)
    for f in members:
        if f.is_constant():
            raise ConstantDivisor("divisor sets must not contain constants")
    leaders = [f.leader(ranking) for f in members]
    for a in range(len(leaders)):
        for b in range(a + 1, len(leaders)):
            if leaders[a] == leaders[b]:
                raise DuplicateLeaders(
                    f"divisors {a} and {b} share the leader {leaders[a]}")
    degrees = [f.degree_in(u) for f, u in zip(members, leaders)]
    algebra = g.algebra

    current = g
    h_factors = []
    cofactors = []   # [c, theta, member]; c is folded as multipliers accrue
    steps = []
    prev = None
    while True:
        led = a_leader(current, members, ranking)
        if led is None:
            break
        if prev is not None:
            cmp = ranking.compare(led.variable, prev[0])
            if not (cmp == LESS or (cmp == EQUAL and led.degree < prev[1])):
                raise DStarError(
                    "internal: reduction measure failed to decrease at "
                    f"{led.variable}^{led.degree}")
        prev = (led.variable, led.degree)

        member = members[led.member]
        v_poly = DPolynomial.from_variable(algebra, led.variable)
        g1 = current.coefficients_in(led.variable)[led.degree]
        if led.is_delta:
            m_theta = rho(algebra, led.theta)
            multiplier = apply_composition(member.separant(ranking), m_theta)
            cof = g1 * v_poly ** (led.degree - 1)
            h_factors.append(HFactor(m_theta, SEPARANT, led.member))
            case = "delta"
        else:
            m_theta = led.theta
            multiplier = apply_composition(member.initial(ranking), m_theta)
            cof = g1 * v_poly ** (led.degree - degrees[led.member])
            h_factors.append(HFactor(m_theta, INITIAL, led.member))
            case = "sigma"
        transformed = apply_composition(member, led.theta)
        current = multiplier * current - cof * transformed
        for entry in cofactors:
            entry[0] = entry[0] * multiplier
        cofactors.append([cof, led.theta, led.member])
        steps.append(Step(led.variable, case, led.degree))

    return ReductionCertificate(
        tuple(h_factors),
        current,
        tuple(Cofactor(c, theta, member) for c, theta, member in cofactors),
        tuple(steps))


def multiplier_product(cert, divisors, ranking=None):
    """Recompute H from the certificate's factor list."""
    members = list(divisors)
    if not members:
        return None
    ranking = ranking or SequentialRanking(members[0].algebra)
    h = DPolynomial.constant(members[0].algebra, 1)
    for factor in cert.h_factors:
        member = members[factor.member]
        base = (member.initial(ranking) if factor.source == INITIAL
                else member.separant(ranking))
        h = h * apply_composition(base, factor.theta)
    return h


def verify_certificate(g, divisors, cert, ranking=None):
    """Check the certificate identity and postconditions exactly."""
    members = list(divisors)
    ranking = ranking or SequentialRanking(g.algebra)
    try:
        for factor in cert.h_factors:
            if factor.source not in (INITIAL, SEPARANT):
                return False
            if not 0 <= factor.member < len(members):
                return False
            if not is_sigma_only(g.algebra, factor.theta):
                return False
        h = multiplier_product(cert, members, ranking)
        if h is None:
            h = DPolynomial.constant(g.algebra, 1)
        rhs = cert.remainder
        for cof in cert.cofactors:
            if not 0 <= cof.member < len(members):
                return False
            rhs = rhs + cof.c * apply_composition(members[cof.member], cof.theta)
        if h * g != rhs:
            return False
        if not is_reduced_wrt_set(cert.remainder, members, ranking):
            return False
        if rank_compare(cert.remainder, g, ranking) == GREATER:
            return False
    except DStarError:
        return False
    return True


# ---------------------------------------------------------------------------
# certificate serialisation


def certificate_to_json(cert):
    doc = {
        "h_factors": [{"theta": list(f.theta), "source": f.source,
                       "member": f.member} for f in cert.h_factors],
        "remainder": format_poly(cert.remainder),
        "cofactors": [{"c": format_poly(c.c), "theta": list(c.theta),
                       "member": c.member} for c in cert.cofactors],
        "steps": [{"leader": str(s.leader), "case": s.case,
                   "degree": s.degree} for s in cert.steps],
    }
    return json.dumps(doc, indent=2, sort_keys=True)


def certificate_from_json(text, algebra):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ExprParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno)
    try:
        h_factors = tuple(
            HFactor(tuple(int(e) for e in f["theta"]), f["source"],
                    int(f["member"]))
            for f in doc.get("h_factors", ()))
        remainder = parse_poly(doc["remainder"], algebra)
        cofactors = tuple(
            Cofactor(parse_poly(c["c"], algebra),
                     tuple(int(e) for e in c["theta"]), int(c["member"]))
            for c in doc.get("cofactors", ()))
        steps = tuple(
            Step(parse_variable(s["leader"], algebra), s["case"],
                 int(s["degree"]))
            for s in doc.get("steps", ()))
    except (KeyError, TypeError, ValueError) as exc:
        raise ExprParseError(f"malformed certificate: {exc!r}")
    return ReductionCertificate(h_factors, remainder, cofactors, steps)
