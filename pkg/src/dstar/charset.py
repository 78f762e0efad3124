"""Autoreduced sets, characteristic-set completion and closure witnesses.

Completion runs the classical elimination loop on a finite generating
family: greedily select a rank-minimal autoreduced subset of the pool,
reduce everything else by it, feed nonzero remainders back, and stop when
all remainders vanish.  Each round's selected set strictly decreases in
the autoreduced-set pre-order, which makes the loop well-founded.  Perfect
closure steps are not searched; they are accepted only with an exact
product-membership witness.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

from .errors import (
    BadWitness,
    DStarError,
    ExprParseError,
    InconsistentSystem,
    NotAutoreduced,
    SeparantDegenerate,
)
from .operators import apply_composition
from .ordering import GREATER, LESS, SequentialRanking, is_sigma_only
from .parser import parse_poly
from .poly import DPolynomial, format_poly, monic, poly_sort_key, rank_compare
from .reduction import is_reduced, is_reduced_wrt_set, reduce, verify_certificate

A_LESS_B = "ALessB"
B_LESS_A = "BLessA"
EQUIVALENT = "Equivalent"


@dataclass(frozen=True)
class AutoreducedSet:
    """Pairwise-reduced family, sorted by ascending rank."""

    members: tuple

    def __iter__(self):
        return iter(self.members)

    def __len__(self):
        return len(self.members)


def validate_autoreduced(members, ranking=None):
    """Check pairwise reducedness, sort by rank, and wrap."""
    members = list(members)
    if not members:
        return AutoreducedSet(())
    ranking = ranking or SequentialRanking(members[0].algebra)
    for f in members:
        if f.is_constant():
            raise NotAutoreduced((f, f), "autoreduced sets contain no constants")
    for a in range(len(members)):
        for b in range(len(members)):
            if a != b and not is_reduced(members[a], members[b], ranking):
                raise NotAutoreduced(
                    (members[a], members[b]),
                    f"{format_poly(members[a])} is not reduced with respect "
                    f"to {format_poly(members[b])}")
    ordered = sorted(members, key=lambda f: poly_sort_key(f, ranking))
    return AutoreducedSet(tuple(ordered))


def compare_autoreduced(a, b, ranking=None):
    """Pre-order on autoreduced sets.

    Walk the rank-sorted members elementwise; the first strict rank
    difference decides.  If one is a rank-prefix of the other, the longer
    set is the smaller one; equal length with all ranks equal means the
    sets are equivalent.
    """
    first = a.members[0] if a.members else (b.members[0] if b.members else None)
    if first is None:
        return EQUIVALENT
    ranking = ranking or SequentialRanking(first.algebra)
    for fa, fb in zip(a.members, b.members):
        cmp = rank_compare(fa, fb, ranking)
        if cmp == LESS:
            return A_LESS_B
        if cmp == GREATER:
            return B_LESS_A
    if len(a) > len(b):
        return A_LESS_B
    if len(b) > len(a):
        return B_LESS_A
    return EQUIVALENT


@dataclass(frozen=True)
class RoundTrace:
    round: int
    selected: tuple
    remainders_added: tuple


@dataclass(frozen=True)
class CharSetResult:
    charset: AutoreducedSet
    completion_trace: tuple
    certificates: tuple       # one ReductionCertificate per input generator


def charset_complete(generators, ranking=None):
    """Characteristic set of a finite family, with zero-remainder proofs.

    Raises InconsistentSystem when a nonzero constant is generated and
    SeparantDegenerate when a selected member's separant reduces to zero
    modulo the selected set.
    """
    generators = list(generators)
    if not generators:
        return CharSetResult(AutoreducedSet(()), (), ())
    ranking = ranking or SequentialRanking(generators[0].algebra)

    pool = []
    seen = set()

    def push(f):
        if f.is_zero():
            return
        if f.is_constant():
            raise InconsistentSystem(
                f"derived the nonzero constant {format_poly(f)}")
        f = monic(f)
        if f not in seen:
            seen.add(f)
            pool.append(f)

    for f in generators:
        push(f)
    if not pool:
        empty = AutoreducedSet(())
        certs = tuple(reduce(f, (), ranking) for f in generators)
        return CharSetResult(empty, (RoundTrace(1, (), ()),), certs)

    trace = []
    previous = None
    round_no = 0
    while True:
        round_no += 1
        pool.sort(key=lambda f: poly_sort_key(f, ranking))
        selected = []
        for candidate in pool:
            if is_reduced_wrt_set(candidate, selected, ranking):
                selected.append(candidate)
        current = validate_autoreduced(selected, ranking)
        if previous is not None:
            if compare_autoreduced(current, previous, ranking) != A_LESS_B:
                raise DStarError(
                    "internal: completion round did not decrease the "
                    "autoreduced-set pre-order")
        previous = current

        for member in current:
            sep = member.separant(ranking)
            if reduce(sep, current.members, ranking).remainder.is_zero():
                raise SeparantDegenerate(
                    f"separant of {format_poly(member)} reduces to zero "
                    "modulo the selected set")

        new_remainders = []
        all_zero = True
        for f in pool:
            if f in selected:
                continue
            remainder = reduce(f, current.members, ranking).remainder
            if remainder.is_zero():
                continue
            all_zero = False
            if remainder.is_constant():
                raise InconsistentSystem(
                    f"derived the nonzero constant {format_poly(remainder)}")
            normal = monic(remainder)
            if normal not in seen:
                new_remainders.append(normal)
        if not all_zero and not new_remainders:
            # cannot happen: nonzero remainders are reduced w.r.t. the
            # selected set, hence never collide with the existing pool
            raise DStarError("internal: completion made no progress")
        trace.append(RoundTrace(round_no, current.members, tuple(new_remainders)))
        if not new_remainders:
            certs = tuple(reduce(f, current.members, ranking)
                          for f in generators)
            for f, cert in zip(generators, certs):
                if not cert.remainder.is_zero():
                    raise DStarError(
                        "internal: an input generator does not reduce to "
                        "zero modulo the completed set")
                if not verify_certificate(f, current.members, cert, ranking):
                    raise DStarError("internal: completion certificate "
                                     "failed verification")
            return CharSetResult(current, tuple(trace), certs)
        for r in new_remainders:
            push(r)


# ---------------------------------------------------------------------------
# bounded ideal generators and witness-checked closure steps


def d_ideal_generators(generators, order_bound):
    """All operator transforms of the generators up to the index bound.

    Enumerates every multi-index with entry sum <= order_bound, applies it
    to each generator, and deduplicates.
    """
    if order_bound < 0:
        raise ValueError("order bound must be >= 0")
    generators = list(generators)
    if not generators:
        return []
    algebra = generators[0].algebra
    out = []
    seen = set()
    for f in generators:
        for theta in _indices_up_to(algebra.M, order_bound):
            g = apply_composition(f, theta)
            if g not in seen:
                seen.add(g)
                out.append(g)
    return out


def _indices_up_to(width, bound):
    if width == 0:
        yield ()
        return
    for total in range(bound + 1):
        for cuts in itertools.combinations(range(total + width - 1), width - 1):
            prev = -1
            parts = []
            for c in cuts:
                parts.append(c - prev - 1)
                prev = c
            parts.append(total + width - 2 - prev)
            yield tuple(parts)


@dataclass(frozen=True)
class ClosureWitness:
    """Product membership datum: prod tau_j(a)^(n_j) = sum c_k * theta_k(g_k)."""

    a: DPolynomial
    taus: tuple               # sigma-only multi-indices
    exponents: tuple          # positive naturals, one per tau
    combination: tuple        # (c, theta, generator_index) entries


def closure_step_witness(generators, witness):
    """Accept a new element if its witness identity checks exactly.

    Returns the accepted polynomial; raises BadWitness (with the nonzero
    difference) when the identity fails or the witness is malformed.
    """
    generators = list(generators)
    if not generators:
        raise BadWitness("no generators to check against")
    algebra = generators[0].algebra
    if len(witness.taus) != len(witness.exponents) or not witness.taus:
        raise BadWitness("witness needs matching, nonempty taus and exponents")
    if any(e < 1 for e in witness.exponents):
        raise BadWitness("witness exponents must be positive")
    for tau in witness.taus:
        if not is_sigma_only(algebra, tau):
            raise BadWitness(f"tau {list(tau)} is not sigma-only")
    product = DPolynomial.constant(algebra, 1)
    for tau, e in zip(witness.taus, witness.exponents):
        product = product * apply_composition(witness.a, tau) ** e
    combo = DPolynomial.zero(algebra)
    for c, theta, idx in witness.combination:
        if not 0 <= idx < len(generators):
            raise BadWitness(f"combination references generator {idx}, "
                             f"only {len(generators)} available")
        combo = combo + c * apply_composition(generators[idx], theta)
    difference = product - combo
    if not difference.is_zero():
        raise BadWitness(
            f"witness identity fails; difference = {format_poly(difference)}",
            difference)
    return witness.a


def witness_from_json(text, algebra):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ExprParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno)
    try:
        a = parse_poly(doc["a"], algebra)
        taus = tuple(tuple(int(e) for e in tau) for tau in doc["taus"])
        exponents = tuple(int(e) for e in doc["exponents"])
        combination = tuple(
            (parse_poly(entry["c"], algebra), tuple(int(e) for e in entry["theta"]),
             int(entry["member"]))
            for entry in doc["combination"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ExprParseError(f"malformed witness file: {exc!r}")
    return ClosureWitness(a, taus, exponents, combination)


def witness_to_json(witness):
    doc = {
        "a": format_poly(witness.a),
        "taus": [list(t) for t in witness.taus],
        "exponents": list(witness.exponents),
        "combination": [{"c": format_poly(c), "theta": list(theta), "member": idx}
                        for c, theta, idx in witness.combination],
    }
    return json.dumps(doc, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# prime presentations


@dataclass(frozen=True)
class PrimePresentation:
    charset: AutoreducedSet
    base_gens: tuple
    multiplier: DPolynomial   # product of initials and separants


def presentation(charset, ranking=None):
    """Record the saturation presentation datum for a characteristic set."""
    members = charset.members
    if not members:
        raise DStarError("presentation needs a nonempty characteristic set")
    ranking = ranking or SequentialRanking(members[0].algebra)
    h = DPolynomial.constant(members[0].algebra, 1)
    for c in members:
        h = h * c.initial(ranking) * c.separant(ranking)
    return PrimePresentation(charset, (), h)
