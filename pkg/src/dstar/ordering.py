"""Multi-indices, operator variables and rankings.

A variable is an indeterminate x_j together with a multi-index theta over
the algebra's operator slots (sigma slot first within each block, then the
delta slots in depth order).  Rankings are total orders on variables
subject to the three compatibility axioms; the sequential ranking compares
(total degree, indeterminate index, slots from highest to lowest).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cmp_to_key

from .errors import AlgebraMismatch, ExprParseError, InvalidRanking

LESS, EQUAL, GREATER = -1, 0, 1


@dataclass(frozen=True, order=True)
class DVariable:
    """The formal image d^theta x_var (var is 1-based)."""

    var: int
    theta: tuple

    def __str__(self):
        return f"x{self.var}[{','.join(str(e) for e in self.theta)}]"


_VAR_RE = re.compile(r"^x(\d+)\[(\d+(?:,\d+)*)\]$")


def parse_variable(text, algebra=None):
    """Parse the x<j>[t0,...,t(M-1)] literal form."""
    match = _VAR_RE.match(text.strip())
    if not match:
        raise ExprParseError(f"bad variable syntax {text!r}")
    var = int(match.group(1))
    if var < 1:
        raise ExprParseError(f"indeterminate index must be >= 1 in {text!r}")
    theta = tuple(int(e) for e in match.group(2).split(","))
    if algebra is not None and len(theta) != algebra.M:
        raise ExprParseError(
            f"variable {text!r} has {len(theta)} slots, algebra has {algebra.M}")
    return DVariable(var, theta)


# ---------------------------------------------------------------------------
# multi-index helpers (multi-indices are plain tuples of naturals)


def zero_index(algebra):
    return (0,) * algebra.M


def bump(theta, slot):
    return theta[:slot] + (theta[slot] + 1,) + theta[slot + 1:]


def add_indices(theta, phi):
    return tuple(a + b for a, b in zip(theta, phi))


def total(theta):
    return sum(theta)


def ord_i(algebra, theta, i):
    """Sum of the delta-slot entries of block i (sigma excluded)."""
    if len(theta) != algebra.M:
        raise AlgebraMismatch(
            f"multi-index has {len(theta)} slots, algebra has {algebra.M}")
    return sum(theta[s] for s in algebra.delta_slots(i))


def ord_delta(algebra, theta):
    return sum(ord_i(algebra, theta, i) for i in range(1, algebra.t + 1))


def is_sigma_only(algebra, theta):
    return ord_delta(algebra, theta) == 0


def apply_slot(algebra, v, i, p):
    """Apply operator (i, p) to a variable: add 1 in its slot."""
    slot = algebra.slot_index(i, p)
    if len(v.theta) != algebra.M:
        raise AlgebraMismatch(
            f"variable has {len(v.theta)} slots, algebra has {algebra.M}")
    return DVariable(v.var, bump(v.theta, slot))


@dataclass(frozen=True)
class Transform:
    theta: tuple
    is_delta: bool


def transform_of(algebra, v, u):
    """If v = theta(u), return the Transform; otherwise None.

    The identity (theta = 0) counts as a sigma-transform.
    """
    if len(v.theta) != algebra.M or len(u.theta) != algebra.M:
        raise AlgebraMismatch(
            f"variables {v}, {u} do not match an algebra with {algebra.M} slots")
    if v.var != u.var:
        return None
    diff = tuple(a - b for a, b in zip(v.theta, u.theta))
    if any(e < 0 for e in diff):
        return None
    return Transform(diff, ord_delta(algebra, diff) > 0)


# ---------------------------------------------------------------------------
# rankings


class Ranking:
    """Total order on variables; compare returns -1, 0 or 1."""

    kind = "custom"

    def __init__(self, algebra):
        self.algebra = algebra

    def compare(self, v, w):
        raise NotImplementedError

    def key(self, v):
        """Sort key consistent with compare."""
        return cmp_to_key(self.compare)(v)

    def max_variable(self, variables):
        best = None
        for v in variables:
            if best is None or self.compare(v, best) == GREATER:
                best = v
        return best

    def _check_theta(self, v):
        if len(v.theta) != self.algebra.M:
            raise AlgebraMismatch(
                f"variable {v} has {len(v.theta)} slots, "
                f"algebra has {self.algebra.M}")


class SequentialRanking(Ranking):
    """Lexicographic on (total degree, indeterminate, slots top-down)."""

    kind = "sequential"

    def key(self, v):
        self._check_theta(v)
        return (total(v.theta), v.var, tuple(reversed(v.theta)))

    def compare(self, v, w):
        kv, kw = self.key(v), self.key(w)
        return LESS if kv < kw else GREATER if kv > kw else EQUAL


class CustomRanking(Ranking):
    """Ranking given by an explicit key function (for tests and tooling)."""

    kind = "custom"

    def __init__(self, algebra, key_fn, name="custom"):
        super().__init__(algebra)
        self._key_fn = key_fn
        self.name = name

    def key(self, v):
        self._check_theta(v)
        return self._key_fn(v)

    def compare(self, v, w):
        kv, kw = self.key(v), self.key(w)
        return LESS if kv < kw else GREATER if kv > kw else EQUAL


def sequential_key(v):
    """Ranking key of the sequential ranking, usable without an algebra."""
    return (total(v.theta), v.var, tuple(reversed(v.theta)))


def check_ranking_axioms(ranking, sample_variables):
    """Verify the three ranking axioms on a finite variable sample.

    Mandatory for custom rankings before use; raises InvalidRanking with
    the offending instance.
    """
    alg = ranking.algebra
    slots = alg.slot_pairs()
    sample = list(sample_variables)
    for v in sample:
        for (i, p) in slots:
            w = apply_slot(alg, v, i, p)
            if ranking.compare(v, w) != LESS:
                raise InvalidRanking(f"axiom 1 fails: {v} !< {w}")
    for v in sample:
        for w in sample:
            if ranking.compare(v, w) != LESS:
                continue
            for (i, p) in slots:
                dv, dw = apply_slot(alg, v, i, p), apply_slot(alg, w, i, p)
                if ranking.compare(dv, dw) != LESS:
                    raise InvalidRanking(
                        f"axiom 2 fails at slot ({i},{p}): {v} < {w} but "
                        f"{dv} !< {dw}")
    for i in range(1, alg.t + 1):
        m = alg.blocks[i - 1].m
        for j in range(0, m + 1):
            for k in range(0, m + 1):
                if alg.nu(i, j) >= alg.nu(i, k):
                    continue
                for v in sample:
                    dj = apply_slot(alg, v, i, j)
                    dk = apply_slot(alg, v, i, k)
                    if ranking.compare(dj, dk) != LESS:
                        raise InvalidRanking(
                            f"axiom 3 fails in block {i}: nu({j}) < nu({k}) "
                            f"but {dj} !< {dk}")


# ---------------------------------------------------------------------------
# Dickson minimality


def dickson_minimal(indices):
    """Minimal elements of a finite multi-index set under componentwise <=.

    Every input element dominates some returned element.  Processing in
    ascending total-degree order lets each candidate be tested against the
    kept minima only.
    """
    seen = sorted(set(indices), key=lambda t: (sum(t), t))
    minimal = []
    for theta in seen:
        if not any(all(a <= b for a, b in zip(mu, theta)) for mu in minimal):
            minimal.append(theta)
    return minimal
