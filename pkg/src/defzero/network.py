"""Reaction networks and their deficiency.

A network is a set of directed reactions between distinct complexes; its
vertex set is derived, so isolated complexes cannot occur.  The deficiency
is

    deficiency = #complexes - #components - rank(stoichiometric matrix)

with components taken in the undirected support graph and the rank computed
exactly over the integers.  The per-component version uses each component's
own reactions and #components = 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable

from .complexes import Complex, index_to_complex, universe_size
from .exactrank import rank_of_columns


@dataclass(frozen=True)
class Reaction:
    """A directed edge source -> product between two distinct complexes."""

    source: Complex
    product: Complex

    def __post_init__(self) -> None:
        if self.source == self.product:
            raise ValueError("a reaction needs distinct source and product complexes")

    def vector(self, n: int) -> list[int]:
        """Net molecule change per occurrence: product - source, length n."""
        vec = self.product.vector(n)
        for s in self.source.species:
            vec[s - 1] -= 1
        return vec

    def support_delta(self) -> dict[int, int]:
        """Sparse net change: species id -> count, zero entries included."""
        delta = self.product.counts()
        for s in self.source.species:
            delta[s] = delta.get(s, 0) - 1
        return delta

    def reverse(self) -> "Reaction":
        return Reaction(self.product, self.source)

    def sort_key(self):
        return (self.source.sort_key(), self.product.sort_key())


@dataclass(frozen=True)
class ComponentReport:
    """Size, rank and deficiency of one connected component."""

    complex_count: int
    rank: int
    deficiency: int


@dataclass(frozen=True)
class DeficiencyReport:
    num_complexes: int
    num_components: int
    rank: int
    deficiency: int
    components: tuple[ComponentReport, ...]
    is_paired: bool

    def to_dict(self) -> dict:
        return {
            "num_complexes": self.num_complexes,
            "num_components": self.num_components,
            "rank": self.rank,
            "deficiency": self.deficiency,
            "components": [
                {
                    "complex_count": c.complex_count,
                    "rank": c.rank,
                    "deficiency": c.deficiency,
                }
                for c in self.components
            ],
            "is_paired": self.is_paired,
        }


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:  # path compression
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        i, j = self.find(i), self.find(j)
        if i == j:
            return
        if self.size[i] < self.size[j]:
            i, j = j, i
        self.parent[j] = i
        self.size[i] += self.size[j]


def _canonical_vector(vec: list[int]) -> tuple[int, ...]:
    t = tuple(vec)
    neg = tuple(-x for x in t)
    return t if t >= neg else neg


@dataclass(frozen=True)
class StoichMatrix:
    """One integer column per directed reaction, in canonical reaction order."""

    rows: int
    columns: tuple[tuple[int, ...], ...]

    @property
    def cols(self) -> int:
        return len(self.columns)


@dataclass(frozen=True)
class ReactionNetwork:
    """An immutable reaction network over species S1..Sn."""

    n: int
    reactions: frozenset[Reaction] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "reactions", frozenset(self.reactions))
        if self.n < 0:
            raise ValueError(f"species count must be non-negative, got {self.n}")
        for r in self.reactions:
            for c in (r.source, r.product):
                if c.species and c.species[-1] > self.n:
                    raise ValueError(
                        f"reaction uses species S{c.species[-1]} but n={self.n}"
                    )

    @classmethod
    def from_edge_list(cls, n: int, edges: Iterable) -> "ReactionNetwork":
        """Network with a reversible reaction pair for each undirected edge.

        Edges are unordered pairs of complex indices in the n-species
        universe (any 2-element sequence or set).  Self-pairs are rejected.
        """
        size = universe_size(n)
        reactions = set()
        for edge in edges:
            u, v = tuple(edge)
            for idx in (u, v):
                if not 0 <= idx < size:
                    raise IndexError(f"complex index {idx} outside [0, {size}) for n={n}")
            if u == v:
                raise ValueError(f"self-pair {{{u}, {v}}} is not a valid edge")
            cu, cv = index_to_complex(n, u), index_to_complex(n, v)
            reactions.add(Reaction(cu, cv))
            reactions.add(Reaction(cv, cu))
        return cls(n, frozenset(reactions))

    @cached_property
    def vertices(self) -> frozenset[Complex]:
        """Complexes appearing in some reaction (degree >= 1 by construction)."""
        verts = set()
        for r in self.reactions:
            verts.add(r.source)
            verts.add(r.product)
        return frozenset(verts)

    @property
    def num_reactions(self) -> int:
        return len(self.reactions)

    def sorted_reactions(self) -> list[Reaction]:
        return sorted(self.reactions, key=Reaction.sort_key)

    def connected_components(self) -> list[frozenset[Complex]]:
        """Components of the undirected support graph, ordered by their
        smallest vertex in the canonical complex order."""
        verts = sorted(self.vertices, key=Complex.sort_key)
        index = {c: i for i, c in enumerate(verts)}
        uf = _UnionFind(len(verts))
        for r in self.reactions:
            uf.union(index[r.source], index[r.product])
        groups: dict[int, list[Complex]] = {}
        for c, i in index.items():
            groups.setdefault(uf.find(i), []).append(c)
        comps = [frozenset(g) for g in groups.values()]
        comps.sort(key=lambda comp: min(c.sort_key() for c in comp))
        return comps

    def _reaction_columns(self) -> set[tuple[int, ...]]:
        # One canonical column per undirected reaction support; sign and
        # duplicates are irrelevant for rank.
        return {_canonical_vector(r.vector(self.n)) for r in self.reactions}

    def stoich_matrix(self) -> StoichMatrix:
        cols = tuple(tuple(r.vector(self.n)) for r in self.sorted_reactions())
        return StoichMatrix(rows=self.n, columns=cols)

    def stoich_rank(self) -> int:
        """Dimension of the span of all reaction vectors (exact)."""
        return rank_of_columns(self._reaction_columns(), self.n)

    def deficiency(self) -> DeficiencyReport:
        comps = self.connected_components()
        comp_of: dict[Complex, int] = {}
        for j, comp in enumerate(comps):
            for c in comp:
                comp_of[c] = j
        comp_columns: list[set[tuple[int, ...]]] = [set() for _ in comps]
        for r in self.reactions:
            comp_columns[comp_of[r.source]].add(_canonical_vector(r.vector(self.n)))
        reports = []
        for comp, cols in zip(comps, comp_columns):
            s_j = rank_of_columns(cols, self.n)
            reports.append(
                ComponentReport(
                    complex_count=len(comp),
                    rank=s_j,
                    deficiency=len(comp) - 1 - s_j,
                )
            )
        all_columns = set().union(*comp_columns) if comp_columns else set()
        rank = rank_of_columns(all_columns, self.n)
        num_complexes = len(self.vertices)
        num_components = len(comps)
        return DeficiencyReport(
            num_complexes=num_complexes,
            num_components=num_components,
            rank=rank,
            deficiency=num_complexes - num_components - rank,
            components=tuple(reports),
            is_paired=all(r.complex_count == 2 for r in reports),
        )

    def is_paired(self) -> tuple[bool, int]:
        """Whether every component has exactly two vertices, and how many
        components there are.  The empty network is vacuously paired."""
        comps = self.connected_components()
        return all(len(c) == 2 for c in comps), len(comps)

    def paired_def_zero(self) -> bool:
        """Deficiency-zero test for paired networks: pick one reaction
        vector per component and check linear independence.  Agrees with
        deficiency() == 0 whenever the network is paired."""
        paired, k = self.is_paired()
        if not paired:
            raise ValueError("paired_def_zero requires a paired network")
        if k == 0:
            return True
        comp_of: dict[Complex, int] = {}
        for j, comp in enumerate(self.connected_components()):
            for c in comp:
                comp_of[c] = j
        chosen: dict[int, tuple[int, ...]] = {}
        for r in self.sorted_reactions():
            j = comp_of[r.source]
            if j not in chosen:
                chosen[j] = tuple(r.vector(self.n))
        return rank_of_columns(chosen.values(), self.n) == k

    def add_reaction(self, reaction: Reaction) -> "ReactionNetwork":
        """A new network with one more reaction; deficiency never decreases."""
        if reaction in self.reactions:
            raise ValueError("reaction is already present")
        return ReactionNetwork(self.n, self.reactions | {reaction})

    def reverse_all(self) -> "ReactionNetwork":
        """The network with every reaction direction flipped."""
        return ReactionNetwork(self.n, frozenset(r.reverse() for r in self.reactions))
