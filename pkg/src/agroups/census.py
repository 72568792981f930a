"""Independent brute-force oracles.

Subgroup inventories of small symmetric groups are produced by closing sets
of prime-order generators upward through the subgroup lattice, pruned only by
facts that cannot exclude a target (order divisibility, the soluble order
bound). Degree 8 uses the holomorph of one canonical regular (C2)^3: the scan
first enumerates every regular elementary abelian subgroup and checks that
conjugation is transitive on them, so fixing one copy loses nothing.

The variety census builds every group of order p^a q^b r^c in the three-prime
variety as an iterated split extension P x| (Q x| R) with elementary abelian
layers, enumerating all action homomorphisms and deduplicating by table
isomorphism.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

from .cayley import (
    CayleyGroup,
    VarietyParams,
    all_subgroups,
    are_isomorphic,
    cayley_from,
    cyclic_table,
    elementary_abelian_table,
    homomorphisms_to_mats,
    in_variety,
    subgroup_table,
)
from .construct import semidirect_product
from .errors import DegreeLimit, LimitExceeded, NotPrime, SamePrime
from .gf import FieldSpec, field_make, is_prime, prime_factors
from .matgrp import gl_elements
from .perm import (
    Perm,
    PermGroup,
    close_set,
    extend_set,
    greedy_generators,
    group_from_set,
    permgroup_to_json,
    set_key,
    subgroup_conjugate,
)

TRANSITIVE_DEGREE_LIMIT = 6
PRIMITIVE_DEGREE_LIMIT = 8
CENSUS_ORDER_LIMIT = 400


@dataclass(frozen=True)
class ClassEntry:
    representative: PermGroup
    order: int
    signature: tuple[int, int]
    class_size: int

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "signature": list(self.signature),
            "class_size": self.class_size,
            "generators": permgroup_to_json(self.representative)["generators"],
        }


@dataclass(frozen=True)
class ClassInventory:
    context: str
    degree: int
    filter_desc: str
    classes: tuple[ClassEntry, ...]

    @property
    def count(self) -> int:
        return len(self.classes)

    def to_json(self) -> dict:
        return {
            "context": self.context,
            "filter": self.filter_desc,
            "classes": [c.to_json() for c in self.classes],
        }


@dataclass(frozen=True)
class VarietyCensus:
    params: VarietyParams
    groups: tuple[CayleyGroup, ...]

    @property
    def count(self) -> int:
        return len(self.groups)

    def to_json(self) -> dict:
        return {
            "params": self.params.to_json(),
            "count": self.count,
            "representatives": [g.to_json() for g in self.groups],
            "signatures": [g.fingerprint() for g in self.groups],
        }


@lru_cache(maxsize=4)
def sn_elements(n: int) -> tuple[Perm, ...]:
    return tuple(Perm(images) for images in itertools.permutations(range(1, n + 1)))


def _divides_primes(order: int, primes) -> bool:
    for u in primes:
        while order % u == 0:
            order //= u
    return order == 1


def _fixed_point_free(g: Perm) -> bool:
    return all(g.apply(p) != p for p in range(1, g.degree + 1))


@lru_cache(maxsize=64)
def _scan_cached(n, primes, order_cap, fpf_only):
    """All subgroups of S_n generated by elements of the given prime orders,
    with orders that are primes-smooth and at most order_cap. Returns a tuple
    of (element frozenset, generator tuple) pairs."""
    universe = [
        g
        for g in sn_elements(n)
        if g.order() in primes and (not fpf_only or _fixed_point_free(g))
    ]
    ident = Perm.identity(n)
    trivial = frozenset({ident})
    seen: dict[frozenset, tuple[Perm, ...]] = {trivial: ()}
    frontier = [trivial]
    while frontier:
        new_frontier = []
        for sub in frontier:
            gens = seen[sub]
            if order_cap is not None and 2 * len(sub) > order_cap:
                continue  # any proper extension at least doubles the order
            for x in universe:
                if x in sub:
                    continue
                bigger = extend_set(n, set(sub), list(gens), x, cap=order_cap)
                if bigger is None:
                    continue
                key = frozenset(bigger)
                if key in seen:
                    continue
                if not _divides_primes(len(key), primes):
                    continue
                seen[key] = gens + (x,)
                new_frontier.append(key)
        frontier = new_frontier
    return tuple(seen.items())


def _subgroup_scan(n, primes, order_bound_sq=None, max_order=None, fpf_only=False):
    """Dict view of the cached lattice scan; see _scan_cached."""
    cap = None
    if order_bound_sq is not None:
        cap = math.isqrt(order_bound_sq)  # order^2 <= bound iff order <= isqrt
    if max_order is not None:
        cap = max_order if cap is None else min(cap, max_order)
    return dict(_scan_cached(n, tuple(sorted(set(primes))), cap, fpf_only))


def _orbit_of_point(n, gens, point=1):
    orbit = {point}
    queue = [point]
    while queue:
        p = queue.pop()
        for g in gens:
            q = g.apply(p)
            if q not in orbit:
                orbit.add(q)
                queue.append(q)
    return orbit


def _two_prime_variety_set(n, elems, gens, q, r) -> bool:
    """Membership of a subgroup (as an element set) in the two-prime variety,
    computed on permutations: the commutator/r-th-power verbal subgroup must
    be abelian of exponent dividing q."""
    qr = q * r
    for g in elems:
        if qr % g.order() != 0:
            return False
    seeds = set()
    for x in gens:
        for y in gens:
            seeds.add(x.inverse() * y.inverse() * x * y)
    for z in elems:
        seeds.add(z**r)
    seeds.discard(Perm.identity(n))
    # normal closure under the subgroup's generators, then product closure
    verbal = close_set(n, seeds)
    changed = True
    while changed:
        changed = False
        for g in gens:
            gi = g.inverse()
            for h in list(verbal):
                c = gi * h * g
                if c not in verbal:
                    verbal = extend_set(n, verbal, list(seeds), c)
                    seeds.add(c)
                    changed = True
    ident = Perm.identity(n)
    members = sorted(verbal, key=lambda p: p.images)
    for i, a in enumerate(members):
        if a**q != ident:
            return False
        for b in members[i + 1 :]:
            if a * b != b * a:
                return False
    return True


def _dedup_conjugacy(n, candidates) -> list[list[PermGroup]]:
    """Partition candidate subgroups into S_n-conjugacy classes."""
    classes: list[list[PermGroup]] = []
    for grp in candidates:
        placed = False
        for cls in classes:
            if grp.order == cls[0].order and subgroup_conjugate(cls[0], grp) is not None:
                cls.append(grp)
                placed = True
                break
        if not placed:
            classes.append([grp])
    return classes


def _signature(order: int, q: int, r: int) -> tuple[int, int]:
    factors = prime_factors(order) if order > 1 else {}
    return factors.get(q, 0), factors.get(r, 0)


def _build_inventory(n, q, r, members, filter_desc) -> ClassInventory:
    groups = [group_from_set(n, m) for m in sorted(members, key=set_key)]
    classes = _dedup_conjugacy(n, groups)
    entries = []
    for cls in classes:
        rep = min(cls, key=lambda g: set_key(g.elements()))
        entries.append(
            ClassEntry(rep, rep.order, _signature(rep.order, q, r), len(cls))
        )
    entries.sort(key=lambda e: (e.signature, e.order))
    return ClassInventory(f"S{n}", n, filter_desc, tuple(entries))


def enumerate_transitive_classes(n: int, q: int, r: int) -> ClassInventory:
    """Conjugacy classes of transitive two-prime-variety subgroups of S_n."""
    _check_pair(q, r)
    if n > TRANSITIVE_DEGREE_LIMIT:
        raise DegreeLimit(f"degree {n} exceeds the transitive scan limit")
    bound_sq = 6 ** (n - 1)  # soluble order bound, squared comparison
    subs = _subgroup_scan(n, (q, r), order_bound_sq=bound_sq)
    members = []
    for elems, gens in subs.items():
        if len(elems) % n != 0:
            continue  # transitive needs n | order
        if len(_orbit_of_point(n, gens)) != n:
            continue
        if not _two_prime_variety_set(n, elems, list(gens) or [Perm.identity(n)], q, r):
            continue
        members.append(elems)
    return _build_inventory(n, q, r, members, f"transitive, variety [{q}, {r}]")


def enumerate_primitive_classes(n: int, q: int, r: int) -> ClassInventory:
    """Conjugacy classes of primitive two-prime-variety subgroups of S_n.

    Degrees up to 6 run the generic lattice scan; 7 and 8 go through the
    normalizer of one regular elementary abelian subgroup (the generic scan
    is exhaustive but impractical there).
    """
    _check_pair(q, r)
    if n > PRIMITIVE_DEGREE_LIMIT:
        raise DegreeLimit(f"degree {n} exceeds the primitive scan limit")
    if n in (7, 8):
        return _primitive_regular_normal(n, q, r)
    bound_sq = 6 ** (n - 1)
    subs = _subgroup_scan(n, (q, r), order_bound_sq=bound_sq)
    members = []
    for elems, gens in subs.items():
        if len(elems) % n != 0:
            continue
        if len(_orbit_of_point(n, gens)) != n:
            continue
        if not _two_prime_variety_set(n, elems, list(gens) or [Perm.identity(n)], q, r):
            continue
        grp = group_from_set(n, elems)
        if not grp.is_primitive():
            continue
        members.append(elems)
    return _build_inventory(n, q, r, members, f"primitive, variety [{q}, {r}]")


def elementary_abelian_regular_scan(n: int, r: int) -> dict[frozenset, tuple[Perm, ...]]:
    """All elementary abelian r-subgroups of S_n of order <= n whose
    nontrivial elements are fixed-point free (the candidates that can be
    transitive: transitive abelian groups are regular)."""
    subs = _subgroup_scan(n, (r,), max_order=n, fpf_only=True)
    # keep elementary abelian all-fixed-point-free subgroups only: generators
    # of order r may also span nonabelian or exponent-r^2 groups
    out = {}
    for elems, gens in subs.items():
        if not all(g.is_identity() or (g.order() == r and _fixed_point_free(g)) for g in elems):
            continue
        members = sorted(elems, key=lambda p: p.images)
        if all(
            x * y == y * x for i, x in enumerate(members) for y in members[i + 1 :]
        ):
            out[elems] = gens
    return out


def enumerate_primitive_ar_classes(n: int, r: int) -> ClassInventory:
    """Primitive single-prime-variety (elementary abelian r) subgroups of S_n."""
    if not is_prime(r):
        raise NotPrime(f"{r} is not prime")
    if n > PRIMITIVE_DEGREE_LIMIT:
        raise DegreeLimit(f"degree {n} exceeds the primitive scan limit")
    subs = elementary_abelian_regular_scan(n, r)
    members = []
    for elems, gens in subs.items():
        if len(elems) != n:
            continue  # transitive abelian means regular
        grp = group_from_set(n, elems)
        if grp.is_transitive() and grp.is_primitive():
            members.append(elems)
    inv = _build_inventory(n, r, r, members, f"primitive, variety [{r}]")
    # signature in the single-prime case: r-exponent only
    entries = tuple(
        ClassEntry(e.representative, e.order, (0, prime_factors(e.order).get(r, 0)), e.class_size)
        for e in inv.classes
    )
    return ClassInventory(inv.context, n, inv.filter_desc, entries)


def _check_pair(q, r):
    for u in (q, r):
        if not is_prime(u):
            raise NotPrime(f"{u} is not prime")
    if q == r:
        raise SamePrime("q and r must be distinct")


def _primitive_regular_normal(n: int, q: int, r: int) -> ClassInventory:
    """Primitive scan through the normalizer of one regular (C_u)^k, u^k = n.

    A primitive soluble group of prime-power degree has a regular elementary
    abelian minimal normal subgroup of order n = u^k, so u must be one of the
    two primes; otherwise the inventory is empty. Fix one regular copy T (the
    run verifies all of them are conjugate), and every target is T . S for a
    subgroup S of the point stabiliser of N(T).
    """
    empty = ClassInventory(f"S{n}", n, f"primitive, variety [{q}, {r}]", ())
    factors = prime_factors(n)
    if len(factors) != 1:
        return empty  # degree is not a prime power: no regular abelian copy
    u = next(iter(factors))
    if u not in (q, r):
        return empty
    regulars = [
        elems for elems in elementary_abelian_regular_scan(n, u) if len(elems) == n
    ]
    if not regulars:
        return empty
    regular_keys = {set_key(e) for e in regulars}
    T_elems = min(regulars, key=set_key)
    t_set = frozenset(T_elems)

    # verify the conjugation action of S_n is transitive on the regular copies
    sn_gens = [Perm.from_cycles(n, [list(range(1, n + 1))]), Perm.from_cycles(n, [[1, 2]])]
    orbit = {set_key(T_elems): T_elems}
    queue = [T_elems]
    while queue:
        current = queue.pop()
        for g in sn_gens:
            gi = g.inverse()
            image = frozenset(gi * h * g for h in current)
            key = set_key(image)
            if key not in orbit:
                orbit[key] = image
                queue.append(image)
    if set(orbit) != regular_keys:
        raise AssertionError("regular elementary abelian copies are not a single class")

    # normalizer of T in S_n and its point stabiliser
    t_gens = greedy_generators(n, T_elems)
    norm_elems = []
    for images in itertools.permutations(range(1, n + 1)):
        g = Perm(images)
        gi = g.inverse()
        if all((gi * h * g) in t_set for h in t_gens):
            norm_elems.append(g)
    normalizer = group_from_set(n, set(norm_elems))
    stab = normalizer.point_stabilizer(1)
    stab_elems = stab.elements()
    stab_table = cayley_from(stab)

    members = []
    seen: set[tuple] = set()
    for sub in all_subgroups(stab_table):
        s_perms = {stab_elems[i] for i in sub}
        g_elems = set(T_elems)
        gens = list(t_gens)
        for x in sorted(s_perms, key=lambda p: p.images):
            if x not in g_elems:
                g_elems = extend_set(n, g_elems, gens, x)
                gens.append(x)
        key = set_key(g_elems)
        if key in seen:
            continue
        seen.add(key)
        if not _divides_primes(len(g_elems), {q, r}):
            continue
        grp = group_from_set(n, g_elems)
        if not grp.is_transitive() or not grp.is_primitive():
            continue
        if not _two_prime_variety_set(n, frozenset(g_elems), gens, q, r):
            continue
        members.append(frozenset(g_elems))
    return _build_inventory(n, q, r, members, f"primitive, variety [{q}, {r}]")


# ---------------------------------------------------------------------------
# exhaustive subgroup scan of small GL (order bound oracle)


@lru_cache(maxsize=8)
def _gl_lattice(alpha: int, spec: FieldSpec):
    from .matgrp import closure

    full = closure(list(gl_elements(alpha, spec)))
    table = cayley_from(full)
    return full, table, tuple(all_subgroups(table))


def enumerate_gl_variety_subgroups(alpha: int, spec: FieldSpec, q: int, r: int):
    """All subgroups of GL(alpha, s) in the two-prime variety, as orders.

    Exhaustive over the subgroup lattice of the full linear group; usable
    whenever |GL| fits in a multiplication table.
    """
    return sorted(d["order"] for d in gl_variety_subgroup_details(alpha, spec, q, r))


def gl_variety_subgroup_details(alpha: int, spec: FieldSpec, q: int, r: int):
    """Order, irreducibility and Fitting-subgroup order of every two-prime-
    variety subgroup of GL(alpha, s)."""
    _check_pair(q, r)
    from .cayley import fitting_indices
    from .matgrp import group_from_mats, is_irreducible

    full, table, subgroups = _gl_lattice(alpha, spec)
    out = []
    for sub in subgroups:
        H = subgroup_table(table, sub)
        if not in_variety(H, [q, r]):
            continue
        mats = [full.elements[i] for i in sorted(sub)]
        matgroup = group_from_mats(alpha, spec, mats)
        out.append(
            {
                "order": H.order,
                "irreducible": is_irreducible(matgroup),
                "fitting_order": len(fitting_indices(H)),
            }
        )
    return out


# ---------------------------------------------------------------------------
# the three-prime census


def _elementary_homomorphism_targets(group: CayleyGroup, dim: int, u: int):
    """All action homomorphisms group -> GL(dim, u) as matrix lists."""
    field = field_make(u, 1)
    if dim == 0:
        return [None]
    mats = list(gl_elements(dim, field))
    maps = homomorphisms_to_mats(group, mats)
    return [[m[i] for i in range(group.order)] for m in maps]


def _split_extension(u: int, dim: int, action, acting: CayleyGroup) -> CayleyGroup:
    if dim == 0:
        return acting
    return semidirect_product(u, dim, action, acting)


def _dedup_isomorphism(groups) -> list[CayleyGroup]:
    reps: list[CayleyGroup] = []
    for g in groups:
        if not any(are_isomorphic(g, h) for h in reps):
            reps.append(g)
    return reps


def enumerate_variety_groups(
    params: VarietyParams, traversal: str = "forward"
) -> VarietyCensus:
    """Exact census of the three-prime variety at order n.

    Every member splits as P x| (Q x| R) with elementary abelian layers of
    orders p^alpha, q^beta, r^gamma (the head of each chain is the full Sylow
    subgroup and is normal), so enumerating all action homomorphisms is
    complete. traversal="reverse" walks the candidate lists backwards; the
    census must not change.
    """
    if traversal not in ("forward", "reverse"):
        raise ValueError("traversal must be 'forward' or 'reverse'")
    if params.n > CENSUS_ORDER_LIMIT:
        raise LimitExceeded(f"order {params.n} exceeds the census limit {CENSUS_ORDER_LIMIT}")
    p, q, r = params.p, params.q, params.r
    a, b, g = params.alpha, params.beta, params.gamma

    def maybe_reverse(xs):
        xs = list(xs)
        return xs[::-1] if traversal == "reverse" else xs

    R = elementary_abelian_table(r, g) if g else cyclic_table(1)
    h_candidates = []
    if b == 0:
        h_candidates.append(R)
    else:
        for action in maybe_reverse(_elementary_homomorphism_targets(R, b, q)):
            h_candidates.append(_split_extension(q, b, action, R))
    h_reps = _dedup_isomorphism(maybe_reverse(h_candidates))

    g_candidates = []
    for H in h_reps:
        if a == 0:
            g_candidates.append(H)
            continue
        for action in maybe_reverse(_elementary_homomorphism_targets(H, a, p)):
            g_candidates.append(_split_extension(p, a, action, H))
    reps = _dedup_isomorphism(maybe_reverse(g_candidates))
    reps.sort(key=lambda t: sorted(t.elem_order(i) for i in range(t.order)))
    return VarietyCensus(params, tuple(reps))
