"""Independent brute-force oracles used by the tests.

Nothing here imports the package's search machinery; these are the slow,
obviously-correct reference computations the engine is checked against.
"""

import itertools


# -- permutations as raw image tuples (1-based) ------------------------------


def mul(a, b):
    return tuple(b[x - 1] for x in a)


def inv(a):
    out = [0] * len(a)
    for i, j in enumerate(a):
        out[j - 1] = i + 1
    return tuple(out)


def naive_closure(degree, gens):
    """All products of the generators, grown one multiplication at a time."""
    ident = tuple(range(1, degree + 1))
    elems = {ident}
    frontier = [ident]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = mul(x, g)
                if y not in elems:
                    elems.add(y)
                    new.append(y)
        frontier = new
    return elems


def perm_order(a):
    ident = tuple(range(1, len(a) + 1))
    e, x = 1, a
    while x != ident:
        x = mul(x, a)
        e += 1
    return e


def equal_size_partitions(points, size):
    """All partitions of the point list into blocks of the given size."""
    points = list(points)
    if not points:
        yield []
        return
    first = points[0]
    for rest in itertools.combinations(points[1:], size - 1):
        block = (first,) + rest
        remaining = [p for p in points[1:] if p not in rest]
        for tail in equal_size_partitions(remaining, size):
            yield [block] + tail


def naive_is_primitive(degree, gens):
    """Transitive group primitive iff no invariant partition into equal
    blocks of size strictly between 1 and n."""
    n = degree
    for size in range(2, n):
        if n % size:
            continue
        for partition in equal_size_partitions(range(1, n + 1), size):
            blocks = [frozenset(b) for b in partition]
            block_set = set(blocks)
            if all(
                frozenset(g[p - 1] for p in b) in block_set for b in blocks for g in gens
            ):
                return False
    return True


def naive_normal_subgroups(degree, elements):
    """All normal subgroups of the given element set, as frozensets."""
    elements = set(elements)
    subgroups = all_subgroups_of(degree, elements)
    out = []
    for sub in subgroups:
        if all(mul(mul(inv(g), h), g) in sub for h in sub for g in elements):
            out.append(sub)
    return out


def all_subgroups_of(degree, elements):
    """Every subgroup of the element set, by closure extension."""
    ident = tuple(range(1, degree + 1))
    trivial = frozenset({ident})
    seen = {trivial}
    frontier = [trivial]
    while frontier:
        new_frontier = []
        for sub in frontier:
            for x in elements:
                if x in sub:
                    continue
                bigger = frozenset(naive_closure_from(degree, set(sub) | {x}))
                if bigger not in seen:
                    seen.add(bigger)
                    new_frontier.append(bigger)
        frontier = new_frontier
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def naive_closure_from(degree, seed):
    return naive_closure(degree, list(seed))


# -- small number theory ------------------------------------------------------


def naive_multiplicative_order(a, m):
    for e in range(1, m + 1):
        if pow(a, e, m) == 1:
            return e
    raise AssertionError


# -- polynomials over GF(t), ascending coefficient tuples --------------------


def poly_has_root(poly, t):
    def value(x):
        acc = 0
        for c in reversed(poly):
            acc = (acc * x + c) % t
        return acc

    return any(value(x) == 0 for x in range(t))


def naive_irreducible_quadratics(t):
    """Monic irreducible quadratics over GF(t): no roots suffices at degree 2."""
    out = []
    for c1 in range(t):
        for c0 in range(t):
            poly = (c0, c1, 1)
            if not poly_has_root(poly, t):
                out.append(poly)
    return out
