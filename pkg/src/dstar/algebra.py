"""Finite-dimensional coefficient algebras from structure constants.

The algebra D is a finite product of local blocks D_1 x ... x D_t over Q.
Each block is described by an ordered basis (first element is the block
unit) and a multiplication table.  Validation checks associativity,
unitality, that the non-unit basis elements span a nilpotent ideal, and
that the basis is ranked: the nilpotency depth nu is nondecreasing along
the basis and products respect the depth filtration.  The validated
DAlgebra carries nu, the index sets gamma, the structure constants alpha
and the operator signature (one sigma slot plus one delta slot per
nilpotent basis element, block by block).
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    ExprParseError,
    IndexOutOfRange,
    InvalidAlgebraSpec,
    NotAssociative,
    NotLocalBlock,
    NotUnital,
    RankedBasisViolation,
    UnknownBuiltin,
)


@dataclass(frozen=True)
class BlockSpec:
    """One local block: ordered basis names and its multiplication table.

    The table maps unordered basis-name pairs to the coordinates of the
    product; pairs not listed multiply to zero.  The first basis name is
    the block unit, so unit products must be listed explicitly.
    """

    basis_names: tuple
    table: tuple  # ((name_a, name_b), ((name, Fraction), ...)) entries


@dataclass(frozen=True)
class AlgebraSpec:
    blocks: tuple


def make_block_spec(basis_names, products):
    """Build a BlockSpec from a {(a, b): [(name, coeff), ...]} mapping."""
    entries = []
    seen = set()
    for pair, coords in products.items():
        key = tuple(sorted(pair))
        if key in seen:
            raise InvalidAlgebraSpec(f"duplicate product entry {key[0]}*{key[1]}")
        seen.add(key)
        entries.append((key, tuple((n, Fraction(c)) for n, c in coords)))
    entries.sort(key=lambda e: e[0])
    return BlockSpec(tuple(basis_names), tuple(entries))


# ---------------------------------------------------------------------------
# built-in algebras


def builtin(name, *params):
    """Return the AlgebraSpec of one of the stock algebras.

    dual               -> Q[e]/(e^2), operators (s1, d1.1)
    fields(m)          -> Q^m, operators (s1, ..., sm)
    diff_difference(n, m) -> Q[n1..nn]/(n1..nn)^2 x Q^m
    truncated_hs(n)    -> Q[e]/(e^(n+1)), operators (s1, d1.1, ..., d1.n)
    """
    if name == "dual":
        if params:
            raise UnknownBuiltin("dual takes no parameters")
        block = make_block_spec(["1", "e"], {("1", "1"): [("1", 1)],
                                             ("1", "e"): [("e", 1)]})
        return AlgebraSpec((block,))
    if name == "fields":
        (m,) = _check_params(name, params, 1)
        blocks = [make_block_spec([f"u{k}"], {(f"u{k}", f"u{k}"): [(f"u{k}", 1)]})
                  for k in range(1, m + 1)]
        return AlgebraSpec(tuple(blocks))
    if name == "truncated_hs":
        (n,) = _check_params(name, params, 1)
        names = ["1"] + [f"e{j}" if j > 1 else "e" for j in range(1, n + 1)]
        products = {}
        for i in range(n + 1):
            for j in range(i, n + 1):
                if i + j <= n:
                    products[(names[i], names[j])] = [(names[i + j], 1)]
        return AlgebraSpec((make_block_spec(names, products),))
    if name == "diff_difference":
        n, m = _check_params(name, params, 2)
        names = ["1"] + [f"n{j}" for j in range(1, n + 1)]
        products = {("1", nm): [(nm, 1)] for nm in names}
        blocks = [make_block_spec(names, products)]
        for k in range(1, m + 1):
            blocks.append(make_block_spec(
                [f"u{k}"], {(f"u{k}", f"u{k}"): [(f"u{k}", 1)]}))
        return AlgebraSpec(tuple(blocks))
    raise UnknownBuiltin(f"unknown builtin algebra {name!r}")


def _check_params(name, params, count):
    if len(params) != count or any(not isinstance(p, int) or p < 1 for p in params):
        raise UnknownBuiltin(
            f"builtin {name!r} expects {count} positive integer parameter(s)")
    return params


# ---------------------------------------------------------------------------
# JSON spec files


def load_spec(text):
    """Parse the JSON algebra file format into an AlgebraSpec.

    Top level: {"blocks": [{"basis": [...], "table": {"a*b": [[name, "p/q"],
    ...]}}]}.  Unknown keys are rejected; omitted products are zero.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ExprParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno)
    if not isinstance(doc, dict):
        raise ExprParseError("algebra file must be a JSON object")
    unknown = set(doc) - {"blocks"}
    if unknown:
        raise ExprParseError(f"unknown top-level key {sorted(unknown)[0]!r}")
    if "blocks" not in doc or not isinstance(doc["blocks"], list):
        raise ExprParseError('algebra file needs a "blocks" list')
    blocks = []
    for bi, raw in enumerate(doc["blocks"], start=1):
        if not isinstance(raw, dict):
            raise ExprParseError(f"block {bi} must be an object")
        unknown = set(raw) - {"basis", "table"}
        if unknown:
            raise ExprParseError(f"block {bi}: unknown key {sorted(unknown)[0]!r}")
        basis = raw.get("basis")
        if not isinstance(basis, list) or not all(isinstance(n, str) for n in basis):
            raise ExprParseError(f"block {bi}: \"basis\" must be a list of names")
        table = raw.get("table", {})
        if not isinstance(table, dict):
            raise ExprParseError(f"block {bi}: \"table\" must be an object")
        products = {}
        for key, coords in table.items():
            parts = key.split("*")
            if len(parts) != 2:
                raise ExprParseError(f"block {bi}: bad product key {key!r}")
            a, b = parts[0].strip(), parts[1].strip()
            entry = []
            for item in coords:
                if (not isinstance(item, list) or len(item) != 2
                        or not isinstance(item[0], str)):
                    raise ExprParseError(f"block {bi}: bad coordinate in {key!r}")
                entry.append((item[0], _parse_rational(item[1], bi, key)))
            pair = tuple(sorted((a, b)))
            if pair in products:
                raise ExprParseError(f"block {bi}: duplicate product {a}*{b}")
            products[pair] = entry
        blocks.append(make_block_spec(basis, products))
    return AlgebraSpec(tuple(blocks))


_RATIONAL_RE = re.compile(r"^-?\d+(/[1-9]\d*)?$")


def _parse_rational(value, bi, key):
    if isinstance(value, int) and not isinstance(value, bool):
        return Fraction(value)
    if isinstance(value, str) and _RATIONAL_RE.match(value.strip()):
        return Fraction(value.strip())
    raise ExprParseError(f"block {bi}: coefficient {value!r} in {key!r} "
                         "is not a decimal-free rational")


def dump_spec(spec):
    """Serialise an AlgebraSpec back to the JSON file format."""
    blocks = []
    for block in spec.blocks:
        table = {}
        for (a, b), coords in block.table:
            table[f"{a}*{b}"] = [[n, str(c)] for n, c in coords]
        blocks.append({"basis": list(block.basis_names), "table": table})
    return json.dumps({"blocks": blocks}, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# exact linear algebra over Q (row echelon spans)


def _rref(rows):
    """Reduced row echelon form; returns the nonzero pivot rows."""
    rows = [list(r) for r in rows]
    pivots = []
    col_count = len(rows[0]) if rows else 0
    lead = 0
    for col in range(col_count):
        pivot = None
        for r in range(lead, len(rows)):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[lead], rows[pivot] = rows[pivot], rows[lead]
        inv = Fraction(1) / rows[lead][col]
        rows[lead] = [x * inv for x in rows[lead]]
        for r in range(len(rows)):
            if r != lead and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [x - factor * y for x, y in zip(rows[r], rows[lead])]
        pivots.append(col)
        lead += 1
        if lead == len(rows):
            break
    return [tuple(r) for r in rows[:lead]]


def _in_span(basis_rows, vec):
    vec = list(vec)
    for row in basis_rows:
        col = next(i for i, x in enumerate(row) if x != 0)
        if vec[col] != 0:
            factor = vec[col]
            vec = [x - factor * y for x, y in zip(vec, row)]
    return all(x == 0 for x in vec)


# ---------------------------------------------------------------------------
# validated algebra


@dataclass(frozen=True)
class BlockData:
    names: tuple           # basis names, names[0] is the unit
    nu: tuple              # nu[j-1] for nilpotent index j = 1..m
    products: tuple        # products[p-1][q-1] = ((j, alpha), ...) for p,q >= 1

    @property
    def m(self):
        return len(self.names) - 1


@dataclass(frozen=True)
class DAlgebra:
    """Validated coefficient algebra with ranked-basis data."""

    blocks: tuple

    @property
    def t(self):
        return len(self.blocks)

    @property
    def m_list(self):
        return tuple(b.m for b in self.blocks)

    @property
    def M(self):
        return sum(b.m + 1 for b in self.blocks)

    def slot_index(self, i, p):
        """Global slot of operator (i, p); p = 0 is sigma_i."""
        if not 1 <= i <= self.t:
            raise IndexOutOfRange(f"block index {i} out of range 1..{self.t}")
        block = self.blocks[i - 1]
        if not 0 <= p <= block.m:
            raise IndexOutOfRange(f"operator index {p} out of range 0..{block.m}")
        return sum(b.m + 1 for b in self.blocks[:i - 1]) + p

    def slot_pairs(self):
        """All (i, p) operator slots in global slot order."""
        return [(i, p) for i in range(1, self.t + 1)
                for p in range(self.blocks[i - 1].m + 1)]

    def block_of_slot(self, s):
        """Inverse of slot_index: global slot -> (i, p)."""
        if not 0 <= s < self.M:
            raise IndexOutOfRange(f"slot {s} out of range 0..{self.M - 1}")
        offset = 0
        for i, block in enumerate(self.blocks, start=1):
            if s < offset + block.m + 1:
                return i, s - offset
            offset += block.m + 1
        raise AssertionError("unreachable")

    def delta_slots(self, i):
        """Global slot range of the delta operators of block i."""
        base = self.slot_index(i, 0)
        return range(base + 1, base + 1 + self.blocks[i - 1].m)

    def is_sigma_slot(self, s):
        _, p = self.block_of_slot(s)
        return p == 0

    @property
    def op_names(self):
        names = []
        for i, block in enumerate(self.blocks, start=1):
            names.append(f"s{i}")
            names.extend(f"d{i}.{j}" for j in range(1, block.m + 1))
        return tuple(names)

    def nu(self, i, j):
        """Nilpotency depth of epsilon_{i,j}; nu(i, 0) = 0 by convention."""
        if not 1 <= i <= self.t:
            raise IndexOutOfRange(f"block index {i} out of range 1..{self.t}")
        block = self.blocks[i - 1]
        if j == 0:
            return 0
        if not 1 <= j <= block.m:
            raise IndexOutOfRange(f"basis index {j} out of range 0..{block.m}")
        return block.nu[j - 1]

    def gamma(self, i, j):
        """Index pairs (p, q) allowed to contribute to coordinate j."""
        block = self.blocks[i - 1]
        if not 1 <= j <= block.m:
            raise IndexOutOfRange(f"basis index {j} out of range 1..{block.m}")
        nu = block.nu
        return frozenset((p, q) for p in range(1, block.m + 1)
                         for q in range(1, block.m + 1)
                         if nu[p - 1] + nu[q - 1] <= nu[j - 1])

    def alpha(self, i, j, p, q):
        """Coefficient of epsilon_{i,j} in epsilon_{i,p} * epsilon_{i,q}."""
        if not 1 <= i <= self.t:
            raise IndexOutOfRange(f"block index {i} out of range 1..{self.t}")
        block = self.blocks[i - 1]
        for idx in (j, p, q):
            if not 1 <= idx <= block.m:
                raise IndexOutOfRange(
                    f"basis index {idx} out of range 1..{block.m}")
        for jj, coeff in block.products[p - 1][q - 1]:
            if jj == j:
                return coeff
        return Fraction(0)


def validate_algebra(spec):
    """Check an AlgebraSpec and return the validated DAlgebra.

    Raises NotAssociative, NotUnital, NotLocalBlock or
    RankedBasisViolation with a witness on failure.
    """
    all_names = [n for b in spec.blocks for n in b.basis_names]
    if len(set(all_names)) != len(all_names):
        raise InvalidAlgebraSpec("basis names must be globally unique")
    if not spec.blocks:
        raise InvalidAlgebraSpec("algebra needs at least one block")
    blocks = []
    for bi, block in enumerate(spec.blocks, start=1):
        if not block.basis_names:
            raise InvalidAlgebraSpec(f"block {bi} is empty")
        blocks.append(_validate_block(bi, block))
    return DAlgebra(tuple(blocks))


def _validate_block(bi, block):
    names = block.basis_names
    dim = len(names)
    index = {n: k for k, n in enumerate(names)}

    # dense multiplication table; mult[p][q] is a coordinate vector
    mult = [[tuple(Fraction(0) for _ in range(dim)) for _ in range(dim)]
            for _ in range(dim)]
    for (a, b), coords in block.table:
        if a not in index or b not in index:
            bad = a if a not in index else b
            raise InvalidAlgebraSpec(
                f"block {bi}: product {a}*{b} references unknown name {bad!r}")
        vec = [Fraction(0)] * dim
        for n, c in coords:
            if n not in index:
                raise InvalidAlgebraSpec(
                    f"block {bi}: product {a}*{b} yields unknown name {n!r}")
            vec[index[n]] += c
        mult[index[a]][index[b]] = tuple(vec)
        mult[index[b]][index[a]] = tuple(vec)

    def vec_mul(u, w):
        out = [Fraction(0)] * dim
        for p, up in enumerate(u):
            if up == 0:
                continue
            for q, wq in enumerate(w):
                if wq == 0:
                    continue
                prod = mult[p][q]
                for k in range(dim):
                    if prod[k] != 0:
                        out[k] += up * wq * prod[k]
        return tuple(out)

    def basis_vec(k):
        return tuple(Fraction(1 if j == k else 0) for j in range(dim))

    # unitality: the first basis element must act as the identity
    for q in range(dim):
        if mult[0][q] != basis_vec(q):
            raise NotUnital(bi, (names[0], names[q]))

    # associativity on basis triples
    for p in range(dim):
        for q in range(dim):
            for r in range(dim):
                left = vec_mul(mult[p][q], basis_vec(r))
                right = vec_mul(basis_vec(p), mult[q][r])
                if left != right:
                    raise NotAssociative(bi, (names[p], names[q], names[r]))

    # the non-unit elements must span an ideal (products avoid the unit)
    for p in range(1, dim):
        for q in range(1, dim):
            if mult[p][q][0] != 0:
                raise NotLocalBlock(
                    bi, f"{names[p]}*{names[q]} has a unit component "
                        f"({mult[p][q][0]}); nilpotent span is not an ideal")

    # powers of the nilpotent span, as Q-subspaces
    m = dim - 1
    spans = []
    current = _rref([basis_vec(k) for k in range(1, dim)])
    first = current
    while current:
        spans.append(current)
        products = [vec_mul(u, w) for u in current for w in first]
        nxt = _rref([v for v in products if any(x != 0 for x in v)])
        if len(nxt) >= len(current):
            raise NotLocalBlock(
                bi, f"nilpotent span stabilises at dimension {len(nxt)} "
                    f"(power {len(spans) + 1}); block is not local")
        current = nxt

    nu = []
    for k in range(1, dim):
        depth = 0
        for r, span in enumerate(spans, start=1):
            if _in_span(span, basis_vec(k)):
                depth = r
        nu.append(depth)

    for j in range(1, m):
        if nu[j - 1] > nu[j]:
            raise RankedBasisViolation(
                bi, f"nu({j})={nu[j - 1]} > nu({j + 1})={nu[j]}: basis indices "
                    f"{j} < {j + 1} are not depth-ordered")

    # products must respect the depth filtration, else the simplified
    # product rule over gamma would drop nonzero terms
    for p in range(1, dim):
        for q in range(1, dim):
            for j in range(1, dim):
                if mult[p][q][j] != 0 and nu[p - 1] + nu[q - 1] > nu[j - 1]:
                    raise RankedBasisViolation(
                        bi, f"{names[p]}*{names[q]} has a {names[j]} component "
                            f"but nu({p})+nu({q}) = {nu[p - 1] + nu[q - 1]} > "
                            f"nu({j}) = {nu[j - 1]}: basis not adapted to the "
                            "ideal powers")

    products = tuple(
        tuple(tuple((j, mult[p][q][j]) for j in range(1, dim) if mult[p][q][j] != 0)
              for q in range(1, dim))
        for p in range(1, dim))
    return BlockData(tuple(names), tuple(nu), products)


def alpha(d, i, j, p, q):
    """Structure constant accessor, 1-based in all indices."""
    return d.alpha(i, j, p, q)


def algebra_from_name(name):
    """Resolve the CLI shorthand names dual, fields:m, hs:n, dd:n,m."""
    if name == "dual":
        return validate_algebra(builtin("dual"))
    if name.startswith("fields:"):
        return validate_algebra(builtin("fields", _int_param(name, name[7:])))
    if name.startswith("hs:"):
        return validate_algebra(builtin("truncated_hs", _int_param(name, name[3:])))
    if name.startswith("dd:"):
        parts = name[3:].split(",")
        if len(parts) != 2:
            raise UnknownBuiltin(f"bad builtin algebra name {name!r}")
        return validate_algebra(builtin(
            "diff_difference", _int_param(name, parts[0]), _int_param(name, parts[1])))
    raise UnknownBuiltin(f"unknown builtin algebra {name!r}")


def _int_param(name, text):
    try:
        value = int(text)
    except ValueError:
        raise UnknownBuiltin(f"bad parameter in builtin algebra name {name!r}")
    if value < 1:
        raise UnknownBuiltin(f"bad parameter in builtin algebra name {name!r}")
    return value
