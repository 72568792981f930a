"""Matrix groups over GF(s).

Everything here is an exhaustive desk-scale oracle: closures materialise the
full element set, irreducibility is decided by spinning every line, and the
conjugacy/classification routines scan all of GL(alpha, s) in a fixed
deterministic order. Limits guard each entry point so a bad input fails fast
instead of grinding.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    CharacteristicConflict,
    DegreeMismatch,
    FieldMismatch,
    LimitExceeded,
    NotPrime,
    SingularGenerator,
)
from .gf import FieldElem, FieldSpec, is_prime, multiplicative_order

GL_BRUTE_LIMIT = 1_000_000
SPIN_LIMIT = 10_000
CLOSURE_LIMIT = 100_000


@dataclass(frozen=True)
class Mat:
    """Square matrix over a FieldSpec; rows of FieldElem, row-vector action v*M."""

    spec: FieldSpec
    rows: tuple[tuple[FieldElem, ...], ...]

    @property
    def alpha(self) -> int:
        return len(self.rows)

    @staticmethod
    def identity(alpha: int, spec: FieldSpec) -> "Mat":
        one, zero = spec.one(), spec.zero()
        return Mat(spec, tuple(tuple(one if i == j else zero for j in range(alpha)) for i in range(alpha)))

    @staticmethod
    def from_ints(spec: FieldSpec, entries) -> "Mat":
        """Entries as ints (k = 1) or as coefficient lists."""
        rows = []
        for row in entries:
            out = []
            for e in row:
                if isinstance(e, int):
                    out.append(spec.element((e,) + (0,) * (spec.k - 1)))
                else:
                    out.append(spec.element(tuple(e)))
            rows.append(tuple(out))
        return Mat(spec, tuple(rows))

    def __mul__(self, other: "Mat") -> "Mat":
        if self.spec != other.spec:
            raise FieldMismatch("matrices over different fields")
        if self.alpha != other.alpha:
            raise DegreeMismatch("matrix dimensions differ")
        cols = list(zip(*other.rows))
        out = []
        for row in self.rows:
            new_row = []
            for col in cols:
                acc = self.spec.zero()
                for a, b in zip(row, col):
                    acc = acc + a * b
                new_row.append(acc)
            out.append(tuple(new_row))
        return Mat(self.spec, tuple(out))

    def __pow__(self, e: int) -> "Mat":
        if e < 0:
            return self.inverse() ** (-e)
        result = Mat.identity(self.alpha, self.spec)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def apply(self, vec: tuple[FieldElem, ...]) -> tuple[FieldElem, ...]:
        """Row vector image v * M."""
        out = [self.spec.zero()] * self.alpha
        for vi, row in zip(vec, self.rows):
            if not vi.is_zero():
                out = [acc + vi * rj for acc, rj in zip(out, row)]
        return tuple(out)

    def det(self) -> FieldElem:
        work = [list(row) for row in self.rows]
        n = self.alpha
        det = self.spec.one()
        for col in range(n):
            pivot = next((r for r in range(col, n) if not work[r][col].is_zero()), None)
            if pivot is None:
                return self.spec.zero()
            if pivot != col:
                work[col], work[pivot] = work[pivot], work[col]
                det = -det
            det = det * work[col][col]
            inv = work[col][col].inverse()
            for r in range(col + 1, n):
                factor = work[r][col] * inv
                if not factor.is_zero():
                    work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
        return det

    def inverse(self) -> "Mat":
        n = self.alpha
        one, zero = self.spec.one(), self.spec.zero()
        work = [list(row) + [one if i == j else zero for j in range(n)] for i, row in enumerate(self.rows)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if not work[r][col].is_zero()), None)
            if pivot is None:
                raise SingularGenerator("matrix is not invertible")
            work[col], work[pivot] = work[pivot], work[col]
            inv = work[col][col].inverse()
            work[col] = [a * inv for a in work[col]]
            for r in range(n):
                if r != col and not work[r][col].is_zero():
                    factor = work[r][col]
                    work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
        return Mat(self.spec, tuple(tuple(row[n:]) for row in work))

    def is_identity(self) -> bool:
        return self == Mat.identity(self.alpha, self.spec)

    def order(self) -> int:
        ident = Mat.identity(self.alpha, self.spec)
        e, x = 1, self
        while x != ident:
            x = x * self
            e += 1
            if e > GL_BRUTE_LIMIT:
                raise LimitExceeded("element order exceeds scan limit")
        return e

    def key(self) -> tuple:
        """Row-major entry indices; the canonical total order on matrices."""
        return tuple(e.index for row in self.rows for e in row)

    def to_json(self) -> list:
        return [[list(e.coeffs) for e in row] for row in self.rows]


@dataclass(frozen=True)
class MatGroup:
    """Matrix group with its full element set cached (desk scale)."""

    spec: FieldSpec
    alpha: int
    generators: tuple[Mat, ...]
    elements: tuple[Mat, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def element_set(self) -> frozenset[Mat]:
        return frozenset(self.elements)

    def key(self) -> tuple:
        return tuple(m.key() for m in self.elements)


def gl_order(alpha: int, spec: FieldSpec) -> int:
    if alpha < 1:
        raise DegreeMismatch("alpha must be at least 1")
    s = spec.s
    n = 1
    for i in range(alpha):
        n *= s**alpha - s**i
    return n


def closure(gens, limit: int = CLOSURE_LIMIT) -> MatGroup:
    """Full element set of the generated group; order exact."""
    gens = list(gens)
    if not gens:
        raise ValueError("need at least one generator to fix the field and dimension")
    spec, alpha = gens[0].spec, gens[0].alpha
    for g in gens:
        if g.spec != spec:
            raise FieldMismatch("generators over different fields")
        if g.alpha != alpha:
            raise DegreeMismatch("generators of different dimensions")
        if g.det().is_zero():
            raise SingularGenerator("generator is singular")
    ident = Mat.identity(alpha, spec)
    active = [g for g in dict.fromkeys(gens) if not g.is_identity()]
    elems = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in active:
                y = x * g
                if y not in elems:
                    if len(elems) >= limit:
                        raise LimitExceeded(f"closure exceeds {limit} elements")
                    elems.add(y)
                    new.append(y)
        frontier = new
    ordered = tuple(sorted(elems, key=Mat.key))
    canon_gens = tuple(sorted(dict.fromkeys(gens), key=Mat.key))
    return MatGroup(spec, alpha, canon_gens, ordered)


def mat_extend_set(elems: set[Mat], gens, new_gen: Mat) -> set[Mat]:
    """Element set of <elems, new_gen> by coset BFS."""
    if new_gen in elems:
        return set(elems)
    mults = list(gens) + [new_gen]
    out = set(elems)
    reps = [Mat.identity(new_gen.alpha, new_gen.spec)]
    i = 0
    while i < len(reps):
        u = reps[i]
        i += 1
        for m in mults:
            v = u * m
            if v not in out:
                out.update(h * v for h in elems)
                reps.append(v)
    return out


def mat_greedy_generators(alpha: int, spec: FieldSpec, elems) -> list[Mat]:
    ordered = sorted(elems, key=lambda m: (-m.order(), m.key()))
    gens: list[Mat] = []
    have: set[Mat] = {Mat.identity(alpha, spec)}
    total = len(set(elems))
    for x in ordered:
        if x in have:
            continue
        have = mat_extend_set(have, gens, x)
        gens.append(x)
        if len(have) == total:
            break
    return gens


def group_from_mats(alpha: int, spec: FieldSpec, elems) -> MatGroup:
    gens = mat_greedy_generators(alpha, spec, elems)
    if not gens:
        gens = [Mat.identity(alpha, spec)]
    return closure(gens)


@lru_cache(maxsize=32)
def _gl_elements_cached(alpha: int, spec: FieldSpec, limit: int) -> tuple[Mat, ...]:
    if gl_order(alpha, spec) > limit:
        raise LimitExceeded(
            f"|GL({alpha}, {spec.s})| = {gl_order(alpha, spec)} exceeds brute-force limit {limit}"
        )
    field_elems = spec.elements()
    out = []
    for flat in itertools.product(range(spec.s), repeat=alpha * alpha):
        rows = tuple(
            tuple(field_elems[flat[i * alpha + j]] for j in range(alpha)) for i in range(alpha)
        )
        m = Mat(spec, rows)
        if not m.det().is_zero():
            out.append(m)
    return tuple(out)


def gl_elements(alpha: int, spec: FieldSpec, limit: int = GL_BRUTE_LIMIT) -> tuple[Mat, ...]:
    """All of GL(alpha, s) in row-major entry order (cached)."""
    return _gl_elements_cached(alpha, spec, limit)


# ---------------------------------------------------------------------------
# subspaces and irreducibility


def _reduce_against(basis: list[tuple[FieldElem, ...]], vec):
    """Reduce vec against an echelonised basis; returns the residue."""
    v = list(vec)
    for b in basis:
        lead = next(i for i, e in enumerate(b) if not e.is_zero())
        if not v[lead].is_zero():
            factor = v[lead] * b[lead].inverse()
            v = [a - factor * c for a, c in zip(v, b)]
    return tuple(v)


def _basis_insert(basis: list, vec) -> bool:
    res = _reduce_against(basis, vec)
    if all(e.is_zero() for e in res):
        return False
    basis.append(res)
    basis.sort(key=lambda b: next(i for i, e in enumerate(b) if not e.is_zero()))
    return True


def _lines(alpha: int, spec: FieldSpec):
    """One representative per 1-dimensional subspace: first nonzero entry is 1."""
    elems = spec.elements()
    one = spec.one()
    for lead in range(alpha):
        prefix = (spec.zero(),) * lead + (one,)
        for tail in itertools.product(elems, repeat=alpha - lead - 1):
            yield prefix + tail


def is_irreducible(G: MatGroup, spin_limit: int = SPIN_LIMIT) -> bool:
    """No proper nonzero invariant subspace; every line is spun to check."""
    if G.spec.s**G.alpha > spin_limit:
        raise LimitExceeded(f"s^alpha = {G.spec.s ** G.alpha} exceeds spin limit {spin_limit}")
    if G.alpha == 1:
        return True
    for line in _lines(G.alpha, G.spec):
        basis: list = []
        _basis_insert(basis, line)
        queue = [line]
        while queue and len(basis) < G.alpha:
            v = queue.pop()
            for g in G.generators:
                w = g.apply(v)
                if _basis_insert(basis, w):
                    queue.append(w)
        if len(basis) < G.alpha:
            return False
    return True


# ---------------------------------------------------------------------------
# Singer subgroups: multiplication by a generator of GF(s^alpha)*


def _ext_poly_mul(a, b, modulus, spec):
    k = len(a)
    prod = [spec.zero()] * (2 * k - 1)
    for i, ai in enumerate(a):
        if not ai.is_zero():
            for j, bj in enumerate(b):
                prod[i + j] = prod[i + j] + ai * bj
    # reduce by the monic modulus
    for i in range(len(prod) - 1, k - 1, -1):
        c = prod[i]
        if not c.is_zero():
            for j in range(k + 1):
                prod[i - k + j] = prod[i - k + j] - c * modulus[j]
    return tuple(prod[:k])


def _ext_divides(div, poly, spec) -> bool:
    num = list(poly)
    dd = len(div) - 1
    for i in range(len(num) - 1, dd - 1, -1):
        c = num[i]
        if not c.is_zero():
            for j in range(dd + 1):
                num[i - dd + j] = num[i - dd + j] - c * div[j]
    return all(e.is_zero() for e in num[:dd])


@lru_cache(maxsize=32)
def _ext_modulus(spec: FieldSpec, degree: int):
    """Least monic irreducible degree-d polynomial over GF(s), high-to-low order."""
    elems = spec.elements()
    for high_to_low in itertools.product(range(spec.s), repeat=degree):
        poly = tuple(elems[i] for i in reversed(high_to_low)) + (spec.one(),)
        reducible = False
        for d in range(1, degree // 2 + 1):
            for lower in itertools.product(elems, repeat=d):
                if _ext_divides(tuple(lower) + (spec.one(),), poly, spec):
                    reducible = True
                    break
            if reducible:
                break
        if not reducible:
            return poly
    raise AssertionError("no irreducible polynomial over the base field; unreachable")


def singer_generator(alpha: int, spec: FieldSpec, spin_limit: int = SPIN_LIMIT) -> Mat:
    """Matrix of multiplication by a generator of GF(s^alpha)* on the
    canonical polynomial basis. Cyclic of order s^alpha - 1."""
    size = spec.s**alpha
    if size > spin_limit:
        raise LimitExceeded(f"s^alpha = {size} exceeds limit {spin_limit}")
    if alpha == 1:
        # GL(1, s): first generator of the multiplicative group
        for cand in spec.elements()[1:]:
            if cand.order() == spec.s - 1:
                return Mat(spec, ((cand,),))
        raise AssertionError("multiplicative group of a field is cyclic; unreachable")
    modulus = _ext_modulus(spec, alpha)
    zero, one = spec.zero(), spec.one()
    order = size - 1
    from .gf import prime_factors

    crit = [order // u for u in prime_factors(order)]
    ident = (one,) + (zero,) * (alpha - 1)

    def ext_pow(g, e):
        result = ident
        base = g
        while e:
            if e & 1:
                result = _ext_poly_mul(result, base, modulus, spec)
            base = _ext_poly_mul(base, base, modulus, spec)
            e >>= 1
        return result

    elems = spec.elements()
    gen = None
    for flat in itertools.product(range(spec.s), repeat=alpha):
        cand = tuple(elems[i] for i in flat)
        if all(e.is_zero() for e in cand):
            continue
        if all(ext_pow(cand, c) != ident for c in crit):
            gen = cand
            break
    assert gen is not None
    # row i is the coordinate vector of basis_i * gen
    rows = []
    basis_elem = ident
    x = (zero, one) + (zero,) * (alpha - 2)
    for _ in range(alpha):
        rows.append(_ext_poly_mul(basis_elem, gen, modulus, spec))
        basis_elem = _ext_poly_mul(basis_elem, x, modulus, spec)
    return Mat(spec, tuple(rows))


def singer_subgroup(alpha: int, spec: FieldSpec, spin_limit: int = SPIN_LIMIT) -> MatGroup:
    return closure([singer_generator(alpha, spec, spin_limit)])


# ---------------------------------------------------------------------------
# the classified elementary abelian r-subgroups


def _embed_block(block: Mat, position: int, alpha: int) -> Mat:
    """Identity matrix with `block` placed on the diagonal at the position."""
    spec = block.spec
    d = block.alpha
    ident = Mat.identity(alpha, spec)
    rows = [list(row) for row in ident.rows]
    for i in range(d):
        for j in range(d):
            rows[position + i][position + j] = block.rows[i][j]
    return Mat(spec, tuple(tuple(row) for row in rows))


def maximal_ar_subgroup(alpha: int, spec: FieldSpec, r: int) -> MatGroup | None:
    """Block-diagonal (C_r)^k with k = floor(alpha / d), d = order of s mod r.

    None when k = 0. When d does not divide alpha the construction pads with
    an identity block; see classify_elem_abelian_r for the oracle that judges
    whether the result is a maximal class.
    """
    if not is_prime(r):
        raise NotPrime(f"{r} is not prime")
    if r == spec.t:
        raise CharacteristicConflict(f"r = {r} equals the field characteristic")
    d = multiplicative_order(spec.s, r)
    k = alpha // d
    if k == 0:
        return None
    block = singer_generator(d, spec) ** ((spec.s**d - 1) // r)
    gens = [_embed_block(block, i * d, alpha) for i in range(k)]
    return closure(gens)


def conjugate_in_gl(A: MatGroup, B: MatGroup, limit: int = GL_BRUTE_LIMIT) -> Mat | None:
    """x in GL(alpha, s) with A^x = B, or None; deterministic full scan."""
    if A.spec != B.spec:
        raise FieldMismatch("groups over different fields")
    if A.alpha != B.alpha:
        raise DegreeMismatch("groups of different dimensions")
    if A.order != B.order:
        return None
    b_set = B.element_set()
    gens = mat_greedy_generators(A.alpha, A.spec, A.elements)
    if not gens:
        return Mat.identity(A.alpha, A.spec)
    for x in gl_elements(A.alpha, A.spec, limit):
        xinv = x.inverse()
        if all((xinv * g * x) in b_set for g in gens):
            return x
    return None


def elem_abelian_r_subgroups(alpha: int, spec: FieldSpec, r: int, limit: int = GL_BRUTE_LIMIT):
    """All elementary abelian r-subgroups of GL(alpha, s), plus which are
    maximal among such. Returns (all_subgroups, maximal_subgroups) as lists of
    frozensets of Mat."""
    if not is_prime(r):
        raise NotPrime(f"{r} is not prime")
    if r == spec.t:
        raise CharacteristicConflict(f"r = {r} equals the field characteristic")
    gl = gl_elements(alpha, spec, limit)
    ident = Mat.identity(alpha, spec)
    order_r = [m for m in gl if m.order() == r]
    seen: dict[frozenset, bool] = {}
    frontier: list[frozenset] = []
    for x in order_r:
        powers = [ident]
        y = x
        while not y.is_identity():
            powers.append(y)
            y = y * x
        h = frozenset(powers)
        if h not in seen:
            seen[h] = True
            frontier.append(h)
    maximal = []
    while frontier:
        new_frontier = []
        for h in frontier:
            extensions = [
                y for y in order_r if y not in h and all(y * m == m * y for m in h)
            ]
            if not extensions:
                maximal.append(h)
                continue
            for y in extensions:
                powers = [ident]
                z = y
                while not z.is_identity():
                    powers.append(z)
                    z = z * y
                bigger = frozenset(a * b for a in h for b in powers)
                if bigger not in seen:
                    seen[bigger] = True
                    new_frontier.append(bigger)
        frontier = new_frontier
    all_subs = sorted(seen, key=lambda s: tuple(sorted(m.key() for m in s)))
    maximal = sorted(set(maximal), key=lambda s: tuple(sorted(m.key() for m in s)))
    return all_subs, maximal


def _classes_of(subgroup_sets, alpha, spec, limit) -> list[list[MatGroup]]:
    """Group subgroup element-sets into GL-conjugacy classes."""
    classes: list[list[MatGroup]] = []
    for elems in subgroup_sets:
        grp = group_from_mats(alpha, spec, elems)
        placed = False
        for cls in classes:
            if conjugate_in_gl(cls[0], grp, limit) is not None:
                cls.append(grp)
                placed = True
                break
        if not placed:
            classes.append([grp])
    return classes


def classify_elem_abelian_r(
    alpha: int, spec: FieldSpec, r: int, limit: int = GL_BRUTE_LIMIT
) -> list[MatGroup]:
    """One representative per conjugacy class of subgroups maximal among the
    elementary abelian r-subgroups of GL(alpha, s), canonically ordered."""
    _, maximal = elem_abelian_r_subgroups(alpha, spec, r, limit)
    classes = _classes_of(maximal, alpha, spec, limit)
    reps = []
    for cls in classes:
        rep = min(cls, key=lambda g: tuple(m.key() for m in g.generators))
        reps.append(rep)
    reps.sort(key=lambda g: (g.order, tuple(m.key() for m in g.generators)))
    return reps


def irreducible_elem_abelian_r_classes(
    alpha: int, spec: FieldSpec, r: int, limit: int = GL_BRUTE_LIMIT
) -> list[MatGroup]:
    """Conjugacy classes of nontrivial irreducible elementary abelian
    r-subgroups (the single-class claim oracle)."""
    all_subs, _ = elem_abelian_r_subgroups(alpha, spec, r, limit)
    irr = [s for s in all_subs if is_irreducible(group_from_mats(alpha, spec, s))]
    classes = _classes_of(irr, alpha, spec, limit)
    reps = [min(cls, key=lambda g: tuple(m.key() for m in g.generators)) for cls in classes]
    reps.sort(key=lambda g: (g.order, tuple(m.key() for m in g.generators)))
    return reps


# ---------------------------------------------------------------------------
# JSON wire format


def matgroup_to_json(G: MatGroup) -> dict:
    return {
        "field": G.spec.to_json(),
        "alpha": G.alpha,
        "generators": [g.to_json() for g in G.generators],
    }


def matgroup_from_json(obj) -> MatGroup:
    spec = FieldSpec.from_json(obj["field"])
    alpha = int(obj["alpha"])
    gens = []
    for g in obj["generators"]:
        if len(g) != alpha:
            raise DegreeMismatch("generator has the wrong dimension")
        gens.append(Mat.from_ints(spec, g))
    return closure(gens)
