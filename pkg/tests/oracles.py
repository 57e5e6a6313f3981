"""Independent reference implementations for expected-value freezing.

Everything here evaluates the composite-map identities literally, as
dictionaries on the full triple set, sharing no code with the package
internals.  Slow and obviously correct is the point.
"""

from itertools import permutations

from pentagon import SolutionTable


def as_map(s: SolutionTable) -> dict:
    return {(i, j): s.apply(i, j) for i in range(s.size) for j in range(s.size)}


def _triples(n):
    return [(x, y, z) for x in range(n) for y in range(n) for z in range(n)]


def _lift12(smap, n):
    out = {}
    for x, y, z in _triples(n):
        a, b = smap[(x, y)]
        out[(x, y, z)] = (a, b, z)
    return out


def _lift23(smap, n):
    out = {}
    for x, y, z in _triples(n):
        u, v = smap[(y, z)]
        out[(x, y, z)] = (x, u, v)
    return out


def _lift13(smap, n):
    # (tau x id)(id x s)(tau x id)
    out = {}
    for x, y, z in _triples(n):
        c, d = smap[(x, z)]
        out[(x, y, z)] = (c, y, d)
    return out


def compose(f, g):
    """f after g, as dictionaries."""
    return {k: f[v] for k, v in g.items()}


def pentagon_oracle(s: SolutionTable) -> bool:
    smap, n = as_map(s), s.size
    s12, s13, s23 = _lift12(smap, n), _lift13(smap, n), _lift23(smap, n)
    return compose(s23, compose(s13, s12)) == compose(s12, s23)


def reversed_pentagon_oracle(s: SolutionTable) -> bool:
    tmap, n = as_map(s), s.size
    t12, t13, t23 = _lift12(tmap, n), _lift13(tmap, n), _lift23(tmap, n)
    return compose(t12, compose(t13, t23)) == compose(t23, t12)


def commutative_oracle(s: SolutionTable) -> bool:
    smap, n = as_map(s), s.size
    s12, s13 = _lift12(smap, n), _lift13(smap, n)
    return compose(s12, s13) == compose(s13, s12)


def cocommutative_oracle(s: SolutionTable) -> bool:
    smap, n = as_map(s), s.size
    s13, s23 = _lift13(smap, n), _lift23(smap, n)
    return compose(s13, s23) == compose(s23, s13)


def involutive_oracle(s: SolutionTable) -> bool:
    smap = as_map(s)
    return compose(smap, smap) == {k: k for k in smap}


def bijective_oracle(s: SolutionTable) -> bool:
    smap = as_map(s)
    return len(set(smap.values())) == len(smap)


def order_oracle(s: SolutionTable, cap: int):
    smap = as_map(s)
    if not bijective_oracle(s):
        return None
    ident = {k: k for k in smap}
    cur = dict(smap)
    for m in range(1, cap + 1):
        if cur == ident:
            return m
        cur = compose(smap, cur)
    return None


def morphism_oracle(f, s: SolutionTable, t: SolutionTable) -> bool:
    smap, tmap = as_map(s), as_map(t)
    for (x, y), (k, l) in smap.items():
        if tmap[(f[x], f[y])] != (f[k], f[l]):
            return False
    return True


def brute_isomorphism(s: SolutionTable, t: SolutionTable):
    """First bijection making the square commute, by trying all of Sym(n)."""
    if s.size != t.size:
        return None
    for f in permutations(range(s.size)):
        if morphism_oracle(f, s, t):
            return f
    return None


def random_table(n, rng) -> SolutionTable:
    return SolutionTable(
        n,
        tuple(
            (rng.randrange(n), rng.randrange(n)) for _ in range(n * n)
        ),
    )


def random_involution_table(n, rng) -> SolutionTable:
    """A uniform-ish random involution of the pair set (not a solution per se)."""
    m = n * n
    points = list(range(m))
    rng.shuffle(points)
    flat = [-1] * m
    while points:
        p = points.pop()
        if flat[p] >= 0:
            continue
        partners = [p] + [q for q in points if flat[q] < 0]
        q = rng.choice(partners)
        flat[p] = q
        flat[q] = p
    return SolutionTable(n, tuple(divmod(v, n) for v in flat))
