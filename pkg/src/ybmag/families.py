"""Commuting self-map families: incompressibility, group recovery, odometer
canonical forms, and the divisor-chain class count.

An incompressible commuting family on a finite carrier is, up to
isomorphism, an abelian group acting on itself by translations, with the
members a monoid-generating tuple.  Pairs are classified by triples
(m, n, d): the carrier is Z/m x Z/n, the first map is translation by
(1, 0), and the second is the carry map whose n-th power is translation by
(-d, 0).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .core import (FiniteFunction, GuardExceeded, Limits, DEFAULT_LIMITS,
                   identity_function)


class FamilyError(ValueError):
    """A family operation's structural precondition failed."""


@dataclass(frozen=True)
class FunctionFamily:
    n: int
    members: tuple[FiniteFunction, ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise FamilyError("family must have at least one member")
        for f in self.members:
            if f.n != self.n or f.codomain != self.n:
                raise FamilyError("members must be self-maps on the shared carrier")

    @staticmethod
    def from_images(images: Sequence[Sequence[int]]) -> "FunctionFamily":
        n = len(images[0])
        return FunctionFamily(n, tuple(FiniteFunction(n, tuple(im)) for im in images))


@dataclass(frozen=True)
class FamilyFlags:
    commuting: bool
    bijective_members: bool
    incompressible: bool
    connected: bool


def _orbit_closure(n: int, members: Sequence[FiniteFunction], seed: int) -> set[int]:
    seen = {seed}
    stack = [seed]
    while stack:
        x = stack.pop()
        for f in members:
            v = f(x)
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def is_incompressible(family: FunctionFamily) -> bool:
    """No proper non-empty subset is carried into itself by every member;
    equivalently the forward closure of each point is the whole carrier."""
    return all(len(_orbit_closure(family.n, family.members, x)) == family.n
               for x in range(family.n))


def analyze_family(family: FunctionFamily) -> FamilyFlags:
    from .plonka import connected_components
    members = family.members
    commuting = all(f.compose(g) == g.compose(f)
                    for f, g in itertools.combinations(members, 2))
    bijective = all(f.is_bijective() for f in members)
    incompressible = is_incompressible(family)
    connected = len(connected_components(family.n, members)) <= 1
    return FamilyFlags(commuting, bijective, incompressible, connected)


@dataclass(frozen=True)
class AbelianGroupStructure:
    """A group structure transported onto the carrier with base point 0 as
    identity.  ``coordinates[x]`` locates x in the product of cyclic groups
    of the invariant factors; ``generator_images`` are the family members as
    group elements."""

    order: int
    invariant_factors: tuple[int, ...]
    op: tuple[tuple[int, ...], ...]
    coordinates: tuple[tuple[int, ...], ...]
    generator_images: tuple[int, ...]

    def __post_init__(self) -> None:
        factors = self.invariant_factors
        for a, b in zip(factors, factors[1:]):
            if b % a != 0:
                raise ValueError("invariant factors must form a divisibility chain")
        prod = 1
        for d in factors:
            prod *= d
        if prod != max(self.order, 1):
            raise ValueError("invariant factors must multiply to the group order")


def _function_monoid(members: Sequence[FiniteFunction]) -> list[FiniteFunction]:
    n = members[0].n
    ident = identity_function(n)
    seen = {ident.images: ident}
    frontier = [ident]
    while frontier:
        new = []
        for h in frontier:
            for f in members:
                g = f.compose(h)
                if g.images not in seen:
                    seen[g.images] = g
                    new.append(g)
        frontier = new
    return list(seen.values())


def _prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _element_order(op, x: int, identity: int = 0) -> int:
    order, v = 1, x
    while v != identity:
        v = op[v][x]
        order += 1
    return order


def _invariant_factors_from_table(op: tuple[tuple[int, ...], ...]) -> tuple[int, ...]:
    """Invariant factors of a finite abelian group given by its table.

    For each prime p, counting the solutions of p^k x = 0 determines how
    many p-exponents are >= k; zipping the per-prime exponent chains
    (largest first) yields the invariant factors.
    """
    n = len(op)
    if n == 1:
        return ()
    per_prime: dict[int, list[int]] = {}
    for p, a in _prime_factors(n).items():
        geq: list[int] = []  # geq[k-1] = number of p-exponents >= k
        prev = 1
        scaled = list(range(n))  # scaled[x] = p^k * x, updated in place
        for k in range(1, a + 1):
            for x in range(n):
                v = scaled[x]
                acc = v
                for _ in range(p - 1):
                    acc = op[acc][v]
                scaled[x] = acc
            cnt = sum(1 for x in range(n) if scaled[x] == 0)
            ratio = cnt // prev
            e = 0
            while p ** e < ratio:
                e += 1
            geq.append(e)
            prev = cnt
        exps: list[int] = []
        for k in range(len(geq), 0, -1):
            here = geq[k - 1] - (geq[k] if k < len(geq) else 0)
            exps.extend([k] * here)
        per_prime[p] = sorted(exps, reverse=True)
    width = max(len(v) for v in per_prime.values())
    factors = []
    for i in range(width):
        d = 1
        for p, exps in per_prime.items():
            if i < len(exps):
                d *= p ** exps[i]
        factors.append(d)
    factors.sort()
    return tuple(factors)


def recover_group(family: FunctionFamily) -> AbelianGroupStructure:
    """The abelian group hidden in a commuting incompressible family.

    The monoid generated by the members is a group acting freely and
    transitively; evaluating at the base point 0 identifies the carrier with
    that group, making 0 the identity and each member the translation by its
    own value at 0.
    """
    flags = analyze_family(family)
    if not flags.commuting:
        raise FamilyError("family members do not commute")
    if not flags.incompressible:
        raise FamilyError("family is compressible")
    n = family.n
    monoid = _function_monoid(family.members)
    if len(monoid) != n:
        raise FamilyError("generated monoid does not act freely and transitively")
    by_value = {}
    for h in monoid:
        v = h(0)
        if v in by_value:
            raise FamilyError("generated monoid does not act freely")
        by_value[v] = h
    op = tuple(tuple(by_value[x](y) for y in range(n)) for x in range(n))
    for x in range(n):
        for y in range(n):
            if op[x][y] != op[y][x]:
                raise FamilyError("recovered operation is not commutative")
    factors = _invariant_factors_from_table(op)
    coords = _coordinates(op, factors)
    gens = tuple(f(0) for f in family.members)
    return AbelianGroupStructure(n, factors, op, coords, gens)


def _coordinates(op, factors: tuple[int, ...]) -> tuple[tuple[int, ...], ...]:
    """An explicit isomorphism from the table onto the product of cyclic
    groups of the invariant factors, found by searching basis images."""
    n = len(op)
    if not factors:
        return ((),) * max(n, 1)
    candidates: list[list[int]] = []
    for d in factors:
        candidates.append([x for x in range(n) if _element_order(op, x) == d])
    for basis in itertools.product(*candidates):
        coords: dict[int, tuple[int, ...]] = {}
        ok = True
        for vector in itertools.product(*(range(d) for d in factors)):
            v = 0
            for b, times in zip(basis, vector):
                for _ in range(times):
                    v = op[v][b]
            if v in coords:
                ok = False
                break
            coords[v] = vector
        if ok:
            return tuple(coords[x] for x in range(n))
    raise FamilyError("no basis realises the invariant factors")


@dataclass(frozen=True)
class OdometerTriple:
    """Canonical form (m, n, d) of an incompressible commuting pair on m*n
    points; 1 <= d <= m.  Infinite carriers (the m = 0 convention) are not
    representable here."""

    m: int
    n: int
    d: int

    def __post_init__(self) -> None:
        if self.m < 1:
            raise ValueError("m = 0 encodes an infinite carrier, which is unsupported")
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 1 <= self.d <= self.m:
            raise ValueError("d must lie in 1..m")

    @property
    def carrier(self) -> int:
        return self.m * self.n


def build_odometer(triple: OdometerTriple) -> tuple[FiniteFunction, FiniteFunction]:
    """The canonical pair on Z/m x Z/n in row-major order: f shifts the
    first coordinate, g increments the second and carries -d on wraparound."""
    m, n, d = triple.m, triple.n, triple.d
    size = m * n
    f_images = [0] * size
    g_images = [0] * size
    for a in range(m):
        for b in range(n):
            idx = a * n + b
            f_images[idx] = ((a + 1) % m) * n + b
            if b < n - 1:
                g_images[idx] = a * n + (b + 1)
            else:
                g_images[idx] = ((a - d) % m) * n
    return FiniteFunction(size, tuple(f_images)), FiniteFunction(size, tuple(g_images))


def odometer_canonicalize(f: FiniteFunction, g: FiniteFunction) -> OdometerTriple:
    """The classifying triple of an incompressible commuting pair: m is the
    order of f, n the index of its cycle subgroup, and d the unique value in
    1..m with g^n = f^(-d)."""
    family = FunctionFamily(f.n, (f, g))
    flags = analyze_family(family)
    if not flags.commuting:
        raise FamilyError("pair does not commute")
    if not flags.incompressible:
        raise FamilyError("pair is compressible")
    size = f.n
    ident = identity_function(size)
    m, power = 1, f
    while power != ident:
        power = f.compose(power)
        m += 1
    if size % m != 0:
        raise FamilyError("order of the first map does not divide the carrier")
    n = size // m
    gn = g.power(n)
    f_inv_step = f.power(m - 1)  # f^(-1)
    acc = ident
    for d in range(1, m + 1):
        acc = f_inv_step.compose(acc)
        if gn == acc:
            return OdometerTriple(m, n, d)
    raise FamilyError("g^n does not land in the cycle generated by f")


def count_incompressible(t: int, k: int) -> int:
    """Isomorphism classes of commuting incompressible k-member families on
    t points: the divisor-chain sum over 1 <= d_1 | d_2 | ... | d_(k-1) | t
    of the product d_1 ... d_(k-1)."""
    if t < 1 or k < 1:
        raise ValueError("t and k must be positive")
    return _count_chains(t, k)


@lru_cache(maxsize=None)
def _count_chains(t: int, k: int) -> int:
    if k == 1:
        return 1
    return sum(d * _count_chains(d, k - 1) for d in range(1, t + 1) if t % d == 0)


# ---------------------------------------------------------------------------
# enumeration of one representative per class


def _partitions(total: int) -> Iterator[tuple[int, ...]]:
    """Partitions of ``total`` as non-increasing tuples."""
    if total == 0:
        yield ()
        return
    def rec(remaining: int, cap: int) -> Iterator[tuple[int, ...]]:
        if remaining == 0:
            yield ()
            return
        for first in range(min(remaining, cap), 0, -1):
            for rest in rec(remaining - first, first):
                yield (first,) + rest
    yield from rec(total, total)


def abelian_invariant_factor_lists(t: int) -> list[tuple[int, ...]]:
    """All abelian groups of order t, one invariant-factor chain each."""
    if t == 1:
        return [()]
    per_prime: list[list[tuple[int, ...]]] = []
    primes: list[int] = []
    for p, a in sorted(_prime_factors(t).items()):
        primes.append(p)
        per_prime.append([tuple(part) for part in _partitions(a)])
    results = []
    for combo in itertools.product(*per_prime):
        width = max(len(part) for part in combo)
        factors = []
        for i in range(width):
            d = 1
            for p, part in zip(primes, combo):
                if i < len(part):
                    d *= p ** part[i]
            factors.append(d)
        factors.sort()
        results.append(tuple(factors))
    results.sort()
    return results


def _group_from_factors(factors: tuple[int, ...]) -> tuple[int, tuple[tuple[int, ...], ...]]:
    """Carrier size and addition table of the product of cyclic groups,
    elements enumerated in row-major coordinate order."""
    if not factors:
        return 1, ((0,),)
    size = 1
    for d in factors:
        size *= d
    vectors = list(itertools.product(*(range(d) for d in factors)))
    index = {v: i for i, v in enumerate(vectors)}
    op = tuple(tuple(index[tuple((a + b) % d for a, b, d in zip(u, v, factors))]
                     for v in vectors) for u in vectors)
    return size, op


def _group_automorphisms(factors: tuple[int, ...]) -> list[tuple[int, ...]]:
    """Automorphisms of the product group as permutations of element labels,
    found by enumerating basis images of matching order and keeping the
    bijective induced maps."""
    size, op = _group_from_factors(factors)
    if not factors:
        return [(0,)]
    vectors = list(itertools.product(*(range(d) for d in factors)))
    orders = [_element_order(op, x) for x in range(size)]
    candidates = [[x for x in range(size) if orders[x] == d] for d in factors]
    autos = []
    for images in itertools.product(*candidates):
        mapping = [0] * size
        for vi, vec in enumerate(vectors):
            v = 0
            for img, times in zip(images, vec):
                for _ in range(times):
                    v = op[v][img]
            mapping[vi] = v
        if len(set(mapping)) == size:
            autos.append(tuple(mapping))
    return autos


def _generates(op, size: int, gens: Sequence[int]) -> bool:
    seen = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in gens:
            v = op[x][g]
            if v not in seen:
                seen.add(v)
                frontier.append(v)
    return len(seen) == size


def enumerate_incompressible(t: int, k: int,
                             limits: Limits = DEFAULT_LIMITS) -> list[FunctionFamily]:
    """One representative family per isomorphism class: for each abelian
    group of order t, the generating k-tuples modulo group automorphisms,
    each orbit keyed by its lexicographically least member."""
    if t < 1 or k < 1:
        raise ValueError("t and k must be positive")
    if t ** k > limits.family_enum:
        raise GuardExceeded(f"{t}**{k} generator tuples exceeds limit {limits.family_enum}")
    reps: list[FunctionFamily] = []
    for factors in abelian_invariant_factor_lists(t):
        size, op = _group_from_factors(factors)
        autos = _group_automorphisms(factors)
        seen: set[tuple[int, ...]] = set()
        for gens in itertools.product(range(size), repeat=k):
            if gens in seen:
                continue
            orbit = {tuple(a[g] for g in gens) for a in autos}
            seen |= orbit
            if not _generates(op, size, gens):
                continue
            canon = min(orbit)
            members = tuple(FiniteFunction(size, tuple(op[x][g] for x in range(size)))
                            for g in canon)
            reps.append(FunctionFamily(size, members))
    reps.sort(key=lambda fam: tuple(f.images for f in fam.members))
    return reps
