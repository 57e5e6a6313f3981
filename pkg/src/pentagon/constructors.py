"""Builders for every solution family, plus the finite groups they consume.

Elementary abelian 2-groups are always realized as bitmask groups (xor on
0..2^r - 1); a general Cayley table is accepted only by the constructors
whose hypotheses allow an arbitrary group.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from math import gcd
from typing import Optional, Sequence

from .core import (
    MultTable,
    SolutionTable,
    ValidationError,
    compose_perms,
    identity_perm,
    inverse_perm,
    perm_power,
    product_solution,
)


# ---------------------------------------------------------------------------
# groups


@dataclass(frozen=True)
class GroupTable:
    """A finite group by Cayley table, with its identity and exponent."""

    size: int
    cayley: tuple[tuple[int, ...], ...]
    identity: int
    exponent: int

    def mul(self, a: int, b: int) -> int:
        return self.cayley[a][b]


def group_from_cayley(rows: Sequence[Sequence[int]]) -> GroupTable:
    """Validate a Cayley table and package it; names the failing axiom."""
    n = len(rows)
    if n < 1:
        raise ValidationError("group must have at least one element")
    cayley = tuple(tuple(r) for r in rows)
    if any(len(r) != n for r in cayley):
        raise ValidationError("Cayley table is not square")
    if any(not 0 <= v < n for r in cayley for v in r):
        raise ValidationError("Cayley table entry out of range")

    identity = None
    for e in range(n):
        if all(cayley[e][x] == x == cayley[x][e] for x in range(n)):
            identity = e
            break
    if identity is None:
        raise ValidationError("identity axiom fails: no two-sided identity")

    for a in range(n):
        for b in range(n):
            ab = cayley[a][b]
            for c in range(n):
                if cayley[ab][c] != cayley[a][cayley[b][c]]:
                    raise ValidationError(
                        f"associativity axiom fails at ({a},{b},{c})"
                    )

    for a in range(n):
        if not any(
            cayley[a][b] == identity == cayley[b][a] for b in range(n)
        ):
            raise ValidationError(f"inverse axiom fails: element {a}")

    exponent = 1
    for a in range(n):
        k, x = 1, a
        while x != identity:
            x = cayley[x][a]
            k += 1
        exponent = exponent * k // gcd(exponent, k)

    return GroupTable(n, cayley, identity, exponent)


def trivial_group() -> GroupTable:
    return group_from_cayley([[0]])


def cyclic_group(n: int) -> GroupTable:
    return group_from_cayley([[(i + j) % n for j in range(n)] for i in range(n)])


def xor_group(dim: int) -> GroupTable:
    """The elementary abelian 2-group of rank dim on bitmasks 0..2^dim - 1."""
    if dim < 0:
        raise ValidationError("dimension must be non-negative")
    n = 1 << dim
    return group_from_cayley([[i ^ j for j in range(n)] for i in range(n)])


def direct_product_group(g: GroupTable, h: GroupTable) -> GroupTable:
    nh = h.size
    n = g.size * nh
    rows = [[0] * n for _ in range(n)]
    for a1 in range(g.size):
        for a2 in range(nh):
            for b1 in range(g.size):
                for b2 in range(nh):
                    rows[a1 * nh + a2][b1 * nh + b2] = (
                        g.cayley[a1][b1] * nh + h.cayley[a2][b2]
                    )
    return group_from_cayley(rows)


def symmetric_group(n: int) -> GroupTable:
    """Sym(n) on the lexicographically ordered list of permutations."""
    elems = sorted(permutations(range(n)))
    index = {p: i for i, p in enumerate(elems)}
    rows = [
        [index[compose_perms(p, q)] for q in elems]
        for p in elems
    ]
    return group_from_cayley(rows)


# ---------------------------------------------------------------------------
# decompositions


@dataclass(frozen=True)
class SigmaMap:
    """One permutation of 0..x_size-1 per bitmask a in 0..2^a_dim - 1.

    No compatibility between the permutations is required.
    """

    x_size: int
    a_dim: int
    perms: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.perms) != 1 << self.a_dim:
            raise ValidationError(
                f"expected {1 << self.a_dim} permutations, got {len(self.perms)}"
            )
        for a, p in enumerate(self.perms):
            if sorted(p) != list(range(self.x_size)):
                raise ValidationError(
                    f"entry {a} is not a permutation of 0..{self.x_size - 1}"
                )


def trivial_sigma(x_size: int, a_dim: int) -> SigmaMap:
    return SigmaMap(x_size, a_dim, (identity_perm(x_size),) * (1 << a_dim))


@dataclass(frozen=True)
class Decomposition:
    """Shape (x_size, a_dim, g_dim) of a carrier X x A x G, with optional sigma."""

    x_size: int
    a_dim: int
    g_dim: int
    sigma: Optional[SigmaMap] = None

    def __post_init__(self):
        if self.x_size < 1:
            raise ValidationError("x_size must be at least 1")
        if self.a_dim < 0 or self.g_dim < 0:
            raise ValidationError("dimensions must be non-negative")
        if self.sigma is not None:
            if self.sigma.x_size != self.x_size or self.sigma.a_dim != self.a_dim:
                raise ValidationError(
                    "sigma dimensions do not match the decomposition"
                )

    @property
    def size(self) -> int:
        return self.x_size << (self.a_dim + self.g_dim)


# ---------------------------------------------------------------------------
# solution families


def identity_solution(n: int) -> SolutionTable:
    return SolutionTable.from_function(n, lambda i, j: (i, j))


def group_solution(g: GroupTable) -> SolutionTable:
    """The unique bijective solution s(x, y) = (xy, y) on a group."""
    return SolutionTable.from_function(
        g.size, lambda x, y: (g.cayley[x][y], y)
    )


def irretractable_solution(dim: int) -> SolutionTable:
    """t(x, y) = (x, x xor y) on bitmasks; irretractable and involutive."""
    if dim < 0:
        raise ValidationError("dimension must be non-negative")
    n = 1 << dim
    return SolutionTable.from_function(n, lambda x, y: (x, x ^ y))


def ext_solution(dec: Decomposition) -> SolutionTable:
    """Extension of the bitmask solution on A by X and sigma (g_dim must be 0).

    Carrier X x A on indices x * 2^a_dim + a, with
    s((x,a),(y,b)) = ((x,a), (sigma_{a^b} sigma_b^{-1}(y), a^b)).
    """
    if dec.g_dim != 0:
        raise ValidationError("extension requires g_dim == 0")
    sigma = dec.sigma or trivial_sigma(dec.x_size, dec.a_dim)
    am = 1 << dec.a_dim
    inverses = [inverse_perm(p) for p in sigma.perms]
    n = dec.x_size * am

    def fn(i, j):
        x, a = divmod(i, am)
        y, b = divmod(j, am)
        c = a ^ b
        return (i, sigma.perms[c][inverses[b][y]] * am + c)

    return SolutionTable.from_function(n, fn)


def canonical_solution(x_size: int, a_dim: int, g_dim: int) -> SolutionTable:
    """The representative of class (x_size, a_dim, g_dim), row-major over (x, a, g).

    s((x,a,g),(y,b,h)) = ((x, a, g^h), (y, a^b, h)).
    """
    dec = Decomposition(x_size, a_dim, g_dim)
    am, gm = 1 << a_dim, 1 << g_dim
    n = dec.size

    def fn(i, j):
        xa, g = divmod(i, gm)
        x, a = divmod(xa, am)
        yb, h = divmod(j, gm)
        y, b = divmod(yb, am)
        return ((x * am + a) * gm + (g ^ h), (y * am + (a ^ b)) * gm + h)

    return SolutionTable.from_function(n, fn)


def decomposition_solution(dec: Decomposition) -> SolutionTable:
    """Ext by X and sigma, times the group solution on G; the general form."""
    base = ext_solution(Decomposition(dec.x_size, dec.a_dim, 0, dec.sigma))
    if dec.g_dim == 0:
        return base
    return product_solution(base, group_solution(xor_group(dec.g_dim)))


def endo_solution(m: MultTable, f: Sequence[int]) -> SolutionTable:
    """s(x, y) = (xy, f(y)) for an idempotent endomorphism f of a semigroup."""
    n = m.size
    fm = tuple(f)
    if len(fm) != n or any(not 0 <= v < n for v in fm):
        raise ValidationError("f is not a total map on the carrier")
    for a in range(n):
        for b in range(n):
            ab = m.rows[a][b]
            for c in range(n):
                if m.rows[ab][c] != m.rows[a][m.rows[b][c]]:
                    raise ValidationError(
                        f"multiplication is not associative at ({a},{b},{c})"
                    )
    if any(fm[fm[x]] != fm[x] for x in range(n)):
        raise ValidationError("f is not idempotent")
    for x in range(n):
        for y in range(n):
            if fm[m.rows[x][y]] != m.rows[fm[x]][fm[y]]:
                raise ValidationError("f is not an endomorphism")
    return SolutionTable.from_function(n, lambda x, y: (m.rows[x][y], fm[y]))


def idempotent_pair_solution(
    n: int, f: Sequence[int], g: Sequence[int]
) -> SolutionTable:
    """s(x, y) = (f(x), g(y)) for commuting idempotent maps f and g."""
    fm, gm = tuple(f), tuple(g)
    for name, mp in (("f", fm), ("g", gm)):
        if len(mp) != n or any(not 0 <= v < n for v in mp):
            raise ValidationError(f"{name} is not a total map on the carrier")
        if any(mp[mp[x]] != mp[x] for x in range(n)):
            raise ValidationError(f"{name} is not idempotent")
    if any(fm[gm[x]] != gm[fm[x]] for x in range(n)):
        raise ValidationError("f and g do not commute")
    return SolutionTable.from_function(n, lambda x, y: (fm[x], gm[y]))


# ---------------------------------------------------------------------------
# the cycle family and its permutation condition
#
# Labels run 1..n in the condition, storage is 0-based.  The exponent
# sigma(i) + 1 is the literal label value plus one; it is applied by
# repeated composition without first reducing modulo the order.


def sigma_condition_witness(sigma: Sequence[int]) -> Optional[int]:
    """First 1-based label i violating sigma^(sigma(i)+1) = sigma^i, or None."""
    p = tuple(sigma)
    for i0 in range(len(p)):
        lhs = perm_power(p, p[i0] + 2)
        rhs = perm_power(p, i0 + 1)
        if lhs != rhs:
            return i0 + 1
    return None


def cycle_solution(sigma: Sequence[int], g: GroupTable) -> SolutionTable:
    """s((i,a),(j,b)) = ((i, ab), (sigma^i(j), b)) on labels i in 1..n.

    Requires the exponent condition sigma^(sigma(i)+1) = sigma^i for every
    label; the order of the result is lcm(order of sigma, exponent of G).
    """
    p = tuple(sigma)
    if sorted(p) != list(range(len(p))):
        raise ValidationError("sigma is not a permutation")
    bad = sigma_condition_witness(p)
    if bad is not None:
        raise ValidationError(f"sigma condition fails at label i={bad}")
    ne = len(p)
    ng = g.size
    powers = [perm_power(p, i0 + 1) for i0 in range(ne)]
    n = ne * ng

    def fn(i, j):
        i0, a = divmod(i, ng)
        j0, b = divmod(j, ng)
        return (i0 * ng + g.cayley[a][b], powers[i0][j0] * ng + b)

    return SolutionTable.from_function(n, fn)


def sigma_search(n: int) -> list[tuple[int, ...]]:
    """All permutations in Sym(n) satisfying the exponent condition, lex order."""
    if n < 1:
        raise ValidationError("n must be at least 1")
    return [
        p for p in permutations(range(n)) if sigma_condition_witness(p) is None
    ]
