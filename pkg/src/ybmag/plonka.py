"""Structure theory of right Plonka magmas and Plonka bi-magmas.

A right Plonka magma decomposes into a partition with per-pair commuting
block endomaps; the coarsest and finest such decompositions are unique and
serve as complete invariants.  Bi-magmas carry two endomap families.
Blocks are listed by least element and each endomap acts on block-local
indices (positions within the sorted block).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Literal, Optional, Sequence, Union

from .core import (BiMagma, CayleyTable, FiniteFunction, GuardExceeded, Limits,
                   DEFAULT_LIMITS, Permutation, SetPartition, Verdict)
from .laws import BiMagmaLaw, MagmaLaw, check_bimagma_law, check_magma_law

Extremity = Literal["coarsest", "finest"]


class NotPlonkaError(ValueError):
    """Raised when a structure operation is fed a magma that fails its law;
    carries the failing verdict."""

    def __init__(self, message: str, verdict: Verdict):
        super().__init__(f"{message}: {verdict.witness.describe()}")
        self.verdict = verdict


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            if ry < rx:
                rx, ry = ry, rx
            self.parent[ry] = rx


def _check_commuting(fams: Sequence[Sequence[FiniteFunction]]) -> None:
    for maps in fams:
        for f, g in itertools.combinations(maps, 2):
            if f.compose(g) != g.compose(f):
                raise ValueError("block endomap family does not commute")


@dataclass(frozen=True)
class PlonkaPartition:
    """Blocks plus endomaps f[i][j] on block i; product of x in block i with
    anything in block j is f[i][j](x)."""

    partition: SetPartition
    endomaps: tuple[tuple[FiniteFunction, ...], ...]

    def __post_init__(self) -> None:
        k = len(self.partition)
        if len(self.endomaps) != k or any(len(row) != k for row in self.endomaps):
            raise ValueError("endomaps must form a k x k grid")
        for i, block in enumerate(self.partition.blocks):
            for f in self.endomaps[i]:
                if f.n != len(block) or f.codomain != len(block):
                    raise ValueError("endomap carrier must match its block")
        _check_commuting(self.endomaps)


@dataclass(frozen=True)
class BiPlonkaPartition:
    """Blocks plus two endomap grids; f drives the dot product, g the star."""

    partition: SetPartition
    f_endomaps: tuple[tuple[FiniteFunction, ...], ...]
    g_endomaps: tuple[tuple[FiniteFunction, ...], ...]

    def __post_init__(self) -> None:
        k = len(self.partition)
        for grid in (self.f_endomaps, self.g_endomaps):
            if len(grid) != k or any(len(row) != k for row in grid):
                raise ValueError("endomaps must form a k x k grid")
            for i, block in enumerate(self.partition.blocks):
                for f in grid[i]:
                    if f.n != len(block) or f.codomain != len(block):
                        raise ValueError("endomap carrier must match its block")
        _check_commuting(self.f_endomaps)
        _check_commuting(self.g_endomaps)
        for i in range(k):
            for f in self.f_endomaps[i]:
                for g in self.g_endomaps[i]:
                    if f.compose(g) != g.compose(f):
                        raise ValueError("dot and star endomap families must commute")


def connected_components(n: int, maps: Sequence[FiniteFunction]) -> SetPartition:
    """Finest partition whose blocks are invariant under every map: the
    weak components of the union of the graphs x -> f(x)."""
    for f in maps:
        if f.n != n or f.codomain != n:
            raise ValueError("all members must share the carrier")
    uf = UnionFind(n)
    for f in maps:
        for x in range(n):
            uf.union(x, f(x))
    groups: dict[int, list[int]] = {}
    for x in range(n):
        groups.setdefault(uf.find(x), []).append(x)
    return SetPartition(n, tuple(tuple(v) for v in groups.values()))


def _congruence_blocks(keys: list) -> SetPartition:
    groups: dict[object, list[int]] = {}
    for x, key in enumerate(keys):
        groups.setdefault(key, []).append(x)
    return SetPartition(len(keys), tuple(tuple(v) for v in groups.values()))


def _local_index(partition: SetPartition) -> tuple[tuple[int, ...], tuple[int, ...]]:
    owner = partition.block_of()
    local = [0] * partition.n
    for block in partition.blocks:
        for pos, v in enumerate(block):
            local[v] = pos
    return owner, tuple(local)


def plonka_partition(m: CayleyTable, extremity: Extremity) -> PlonkaPartition:
    """The coarsest or finest Plonka partition of a right Plonka magma.

    Coarsest blocks are the classes of the congruence  a ~ b  iff
    x.a = x.b for every x; the finest refines each block into the connected
    components of its endomap family.
    """
    verdict = check_magma_law(m, MagmaLaw.RIGHT_PLONKA)
    if not verdict:
        raise NotPlonkaError("not a right Plonka magma", verdict)
    n = m.n
    part = _congruence_blocks([m.column(a) for a in range(n)])
    owner, local = _local_index(part)
    blocks = part.blocks
    endo = []
    for i, bi in enumerate(blocks):
        row = []
        for j, bj in enumerate(blocks):
            rep = bj[0]
            images = []
            for x in bi:
                y = m.apply(x, rep)
                if owner[y] != i:
                    raise AssertionError("congruence class not closed under products")
                images.append(local[y])
            row.append(FiniteFunction(len(bi), tuple(images)))
        endo.append(tuple(row))
    coarse = PlonkaPartition(part, tuple(endo))
    if extremity == "coarsest":
        return coarse
    if extremity == "finest":
        return _refine_plonka(coarse)
    raise ValueError("extremity must be 'coarsest' or 'finest'")


def _refine_plonka(p: PlonkaPartition) -> PlonkaPartition:
    fine_blocks: list[tuple[int, ...]] = []
    origin: list[tuple[int, SetPartition, int]] = []  # (old index, sub index)
    for i, block in enumerate(p.partition.blocks):
        family = list(p.endomaps[i])
        comps = connected_components(len(block), family)
        for si, comp in enumerate(comps.blocks):
            fine_blocks.append(tuple(block[loc] for loc in comp))
            origin.append((i, comps, si))
    part = SetPartition(p.partition.n, tuple(fine_blocks))
    # SetPartition reorders blocks by least element; rebuild the origin map.
    by_first = {b[0]: o for b, o in zip(fine_blocks, origin)}
    ordered = [by_first[b[0]] for b in part.blocks]
    endo = []
    for a, (i, comps_i, si) in enumerate(ordered):
        sub = comps_i.blocks[si]
        sub_pos = {loc: t for t, loc in enumerate(sub)}
        row = []
        for b, (j, _, _) in enumerate(ordered):
            old = p.endomaps[i][j]
            row.append(FiniteFunction(len(sub), tuple(sub_pos[old(loc)] for loc in sub)))
        endo.append(tuple(row))
    return PlonkaPartition(part, tuple(endo))


def bi_plonka_partition(b: BiMagma, extremity: Extremity) -> BiPlonkaPartition:
    """The coarsest or finest bi-Plonka partition of a Plonka bi-magma.

    The coarsest congruence identifies a and b when x.a = x.b and
    a*x = b*x for every x.
    """
    verdict = check_bimagma_law(b, BiMagmaLaw.PLONKA_BIMAGMA)
    if not verdict:
        raise NotPlonkaError("not a Plonka bi-magma", verdict)
    n = b.n
    keys = [(b.dot.column(a), b.star.row(a)) for a in range(n)]
    part = _congruence_blocks(keys)
    owner, local = _local_index(part)
    blocks = part.blocks
    f_endo, g_endo = [], []
    for i, bi in enumerate(blocks):
        f_row, g_row = [], []
        for j, bj in enumerate(blocks):
            rep = bj[0]
            f_images, g_images = [], []
            for x in bi:
                y = b.dot.apply(x, rep)
                z = b.star.apply(rep, x)
                if owner[y] != i or owner[z] != i:
                    raise AssertionError("congruence class not closed under products")
                f_images.append(local[y])
                g_images.append(local[z])
            f_row.append(FiniteFunction(len(bi), tuple(f_images)))
            g_row.append(FiniteFunction(len(bi), tuple(g_images)))
        f_endo.append(tuple(f_row))
        g_endo.append(tuple(g_row))
    coarse = BiPlonkaPartition(part, tuple(f_endo), tuple(g_endo))
    if extremity == "coarsest":
        return coarse
    if extremity == "finest":
        return _refine_bi_plonka(coarse)
    raise ValueError("extremity must be 'coarsest' or 'finest'")


def _refine_bi_plonka(p: BiPlonkaPartition) -> BiPlonkaPartition:
    fine_blocks: list[tuple[int, ...]] = []
    origin: list[tuple[int, SetPartition, int]] = []
    for i, block in enumerate(p.partition.blocks):
        family = list(p.f_endomaps[i]) + list(p.g_endomaps[i])
        comps = connected_components(len(block), family)
        for si, comp in enumerate(comps.blocks):
            fine_blocks.append(tuple(block[loc] for loc in comp))
            origin.append((i, comps, si))
    part = SetPartition(p.partition.n, tuple(fine_blocks))
    by_first = {b[0]: o for b, o in zip(fine_blocks, origin)}
    ordered = [by_first[b[0]] for b in part.blocks]
    f_endo, g_endo = [], []
    for a, (i, comps_i, si) in enumerate(ordered):
        sub = comps_i.blocks[si]
        sub_pos = {loc: t for t, loc in enumerate(sub)}
        f_row, g_row = [], []
        for bidx, (j, _, _) in enumerate(ordered):
            old_f = p.f_endomaps[i][j]
            old_g = p.g_endomaps[i][j]
            f_row.append(FiniteFunction(len(sub), tuple(sub_pos[old_f(loc)] for loc in sub)))
            g_row.append(FiniteFunction(len(sub), tuple(sub_pos[old_g(loc)] for loc in sub)))
        f_endo.append(tuple(f_row))
        g_endo.append(tuple(g_row))
    return BiPlonkaPartition(part, tuple(f_endo), tuple(g_endo))


def rebuild(p: Union[PlonkaPartition, BiPlonkaPartition]) -> Union[CayleyTable, BiMagma]:
    """Reassemble the magma (or bi-magma) from partition data.

    x in block i times y in block j is f[i][j](x); the star product lands
    in y's block via g[j][i](y).
    """
    part = p.partition
    owner, local = _local_index(part)
    n = part.n
    blocks = part.blocks
    if isinstance(p, PlonkaPartition):
        rows = []
        for x in range(n):
            i = owner[x]
            rows.append(tuple(blocks[i][p.endomaps[i][owner[y]](local[x])] for y in range(n)))
        return CayleyTable(n, tuple(rows))
    dot_rows, star_rows = [], []
    for x in range(n):
        i = owner[x]
        dot_rows.append(tuple(blocks[i][p.f_endomaps[i][owner[y]](local[x])] for y in range(n)))
        star_rows.append(tuple(blocks[owner[y]][p.g_endomaps[owner[y]][i](local[y])]
                               for y in range(n)))
    return BiMagma(CayleyTable(n, tuple(dot_rows)), CayleyTable(n, tuple(star_rows)))


def is_refinement(fine: Union[PlonkaPartition, BiPlonkaPartition],
                  coarse: Union[PlonkaPartition, BiPlonkaPartition]) -> bool:
    """True when every fine block sits inside a coarse block and the fine
    endomaps are the restrictions of the coarse ones."""
    c_owner, c_local = _local_index(coarse.partition)
    grids_f = ((fine.endomaps,) if isinstance(fine, PlonkaPartition)
               else (fine.f_endomaps, fine.g_endomaps))
    grids_c = ((coarse.endomaps,) if isinstance(coarse, PlonkaPartition)
               else (coarse.f_endomaps, coarse.g_endomaps))
    if len(grids_f) != len(grids_c):
        return False
    fine_blocks = fine.partition.blocks
    for a, block_a in enumerate(fine_blocks):
        if len({c_owner[v] for v in block_a}) != 1:
            return False
    for grid_f, grid_c in zip(grids_f, grids_c):
        for a, block_a in enumerate(fine_blocks):
            i = c_owner[block_a[0]]
            coarse_block = coarse.partition.blocks[i]
            for b, block_b in enumerate(fine_blocks):
                j = c_owner[block_b[0]]
                f_fine = grid_f[a][b]
                f_coarse = grid_c[i][j]
                for pos, v in enumerate(block_a):
                    if block_a[f_fine(pos)] != coarse_block[f_coarse(c_local[v])]:
                        return False
    return True


# ---------------------------------------------------------------------------
# structured isomorphism


def _family_signature(maps: Sequence[FiniteFunction]) -> tuple:
    return tuple(sorted(_cycle_type(f) for f in maps))


def _cycle_type(f: FiniteFunction) -> tuple:
    """Cheap conjugacy invariant of a self-map used as a block-matching
    pruning key: the sorted fibre sizes and the iterated image sizes."""
    fibres = [0] * f.n
    for v in f.images:
        fibres[v] += 1
    image_sizes = []
    current = set(range(f.n))
    for _ in range(f.n):
        current = {f(x) for x in current}
        image_sizes.append(len(current))
    return (tuple(sorted(fibres, reverse=True)), tuple(image_sizes))


def _block_intertwiners(size: int, fams_a: Sequence[Sequence[FiniteFunction]],
                        fams_b: Sequence[Sequence[FiniteFunction]]):
    """Bijections s of 0..size-1 with s.f = f'.s for every matched pair of
    endomaps; brute force within the block."""
    for images in itertools.permutations(range(size)):
        ok = True
        for maps_a, maps_b in zip(fams_a, fams_b):
            for fa, fb in zip(maps_a, maps_b):
                if any(images[fa(x)] != fb(images[x]) for x in range(size)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield images


def structured_iso(a: Union[CayleyTable, BiMagma], b: Union[CayleyTable, BiMagma],
                   limits: Limits = DEFAULT_LIMITS) -> Optional[Permutation]:
    """Isomorphism test through the coarsest partitions: match blocks, then
    search block-local intertwiners.  Falls back to brute force inside each
    block, which is adequate while blocks stay small."""
    if type(a) is not type(b):
        raise TypeError("can only compare structures of the same kind")
    if a.n != b.n:
        return None
    if isinstance(a, CayleyTable):
        pa, pb = plonka_partition(a, "coarsest"), plonka_partition(b, "coarsest")
        grids_a, grids_b = (pa.endomaps,), (pb.endomaps,)
    else:
        pa, pb = bi_plonka_partition(a, "coarsest"), bi_plonka_partition(b, "coarsest")
        grids_a, grids_b = (pa.f_endomaps, pa.g_endomaps), (pb.f_endomaps, pb.g_endomaps)
    k = len(pa.partition)
    if k != len(pb.partition):
        return None
    blocks_a, blocks_b = pa.partition.blocks, pb.partition.blocks
    sizes_a = [len(blk) for blk in blocks_a]
    sizes_b = [len(blk) for blk in blocks_b]
    if sorted(sizes_a) != sorted(sizes_b):
        return None
    if max(sizes_a) > limits.sn_sweep:
        raise GuardExceeded("block too large for the block-local sweep")

    key_a = [tuple(_family_signature(grid[i]) for grid in grids_a) for i in range(k)]
    key_b = [tuple(_family_signature(grid[i]) for grid in grids_b) for i in range(k)]

    assignment: list[Optional[int]] = [None] * k
    used = [False] * k

    def extend(i: int) -> Optional[list[tuple[int, ...]]]:
        if i == k:
            locals_found = []
            for ai in range(k):
                bi = assignment[ai]
                fams_a = [[grid[ai][aj] for aj in range(k)] for grid in grids_a]
                fams_b = [[grid[bi][assignment[aj]] for aj in range(k)] for grid in grids_b]
                match = next(_block_intertwiners(sizes_a[ai], fams_a, fams_b), None)
                if match is None:
                    return None
                locals_found.append(match)
            return locals_found
        for j in range(k):
            if used[j] or sizes_a[i] != sizes_b[j] or key_a[i] != key_b[j]:
                continue
            assignment[i] = j
            used[j] = True
            result = extend(i + 1)
            if result is not None:
                return result
            used[j] = False
            assignment[i] = None
        return None

    locals_found = extend(0)
    if locals_found is None:
        return None
    images = [0] * a.n
    for ai in range(k):
        target = blocks_b[assignment[ai]]
        for pos, v in enumerate(blocks_a[ai]):
            images[v] = target[locals_found[ai][pos]]
    sigma = Permutation(a.n, tuple(images))
    if a.relabel(sigma.images) != b:
        raise AssertionError("block-assembled map is not an isomorphism")
    return sigma


# ---------------------------------------------------------------------------
# bijectivization of a pointed set


@dataclass(frozen=True)
class BijectivizationResult:
    """Stabilised quotient of a self-map: ``target`` is bijective on the
    quotient carrier and ``unit`` intertwines the original map with it."""

    target: FiniteFunction
    unit: FiniteFunction

    def __post_init__(self) -> None:
        if not self.target.is_bijective():
            raise ValueError("target must be bijective")
        if self.unit.codomain != self.target.n:
            raise ValueError("unit must land in the target carrier")


def bijectivize(f: FiniteFunction) -> BijectivizationResult:
    """Collapse level sets of f until the induced map is bijective.

    Each quotient step identifies x with y when f(x) = f(y), which shrinks
    the carrier to the image of f; iterating stabilises on the eventual
    image, where f restricts to a bijection.  The unit is the composite
    quotient map x -> f^k(x) re-indexed along the sorted eventual image.
    """
    if f.codomain != f.n:
        raise ValueError("bijectivize needs a self-map")
    n = f.n
    current = f
    unit = FiniteFunction(n, tuple(range(n)))
    while not current.is_bijective():
        image = sorted(set(current.images))
        index = {v: i for i, v in enumerate(image)}
        m = len(image)
        unit = FiniteFunction(n, tuple(index[current(unit(x))] for x in range(n)), m)
        current = FiniteFunction(m, tuple(index[current(v)] for v in image))
    result = BijectivizationResult(current, unit)
    for x in range(n):
        if result.unit(f(x)) != result.target(result.unit(x)):
            raise AssertionError("unit does not intertwine the maps")
    return result
