"""Shared oracles and golden fixtures for the test suite.

Everything here is deliberately independent of the production code paths it
checks: the rank oracle expands minors, the reference edge sampler runs one
Bernoulli trial per pair, and the pair-enumeration oracle counts by brute
force.
"""

from itertools import combinations

from defzero import Complex, Reaction, ReactionNetwork
from defzero.complexes import index_to_complex, universe_size
from defzero.rng import generator


# ---------------------------------------------------------------- rank oracle

def _det(mat):
    """Determinant by Laplace expansion along the first row."""
    size = len(mat)
    if size == 1:
        return mat[0][0]
    total = 0
    for j in range(size):
        if mat[0][j] == 0:
            continue
        minor = [row[:j] + row[j + 1 :] for row in mat[1:]]
        term = mat[0][j] * _det(minor)
        total += term if j % 2 == 0 else -term
    return total


def minor_rank(mat):
    """Rank as the largest k with a non-zero k x k minor."""
    n_rows = len(mat)
    n_cols = len(mat[0]) if n_rows else 0
    for k in range(min(n_rows, n_cols), 0, -1):
        for rows in combinations(range(n_rows), k):
            for cols in combinations(range(n_cols), k):
                sub = [[mat[r][c] for c in cols] for r in rows]
                if _det(sub):
                    return k
    return 0


# -------------------------------------------------- reference edge sampler

def naive_edge_ranks(n, p, seed):
    """One Bernoulli trial per vertex pair, in colex rank order."""
    size = universe_size(n)
    total_pairs = size * (size - 1) // 2
    rng = generator(seed)
    return {t for t in range(total_pairs) if rng.random() < p}


# ------------------------------------------------------------ golden networks

def reversible(a, b):
    return [Reaction(a, b), Reaction(b, a)]


def enzyme_network():
    """Species (S, E, SE, P) = (1, 2, 3, 4); |C|=6, l=2, s=4, deficiency 0."""
    s, e, se, p = (Complex.unary(i) for i in range(1, 5))
    rx = []
    rx += reversible(Complex((1, 2)), se)
    rx += reversible(se, Complex((2, 4)))
    rx += reversible(e, Complex.zero())
    rx += reversible(Complex.zero(), s)
    return ReactionNetwork(4, frozenset(rx))


def deficiency_one_network():
    """Cycle 0 -> S1+S2 -> S2 -> 0 plus 2S1 <-> 2S2; deficiency 1."""
    rx = [
        Reaction(Complex.zero(), Complex((1, 2))),
        Reaction(Complex((1, 2)), Complex.unary(2)),
        Reaction(Complex.unary(2), Complex.zero()),
    ]
    rx += reversible(Complex((1, 1)), Complex((2, 2)))
    return ReactionNetwork(2, frozenset(rx))


def two_paired_network():
    """0 <-> 2B, B <-> A+B over two species; 2-paired, deficiency 0."""
    rx = reversible(Complex.zero(), Complex((2, 2)))
    rx += reversible(Complex.unary(2), Complex((1, 2)))
    return ReactionNetwork(2, frozenset(rx))


def three_paired_network():
    """Three disjoint reversible binary reactions on nine species."""
    rx = reversible(Complex((1, 2)), Complex((3, 4)))
    rx += reversible(Complex((1, 3)), Complex((5, 6)))
    rx += reversible(Complex((6, 7)), Complex((8, 9)))
    return ReactionNetwork(9, frozenset(rx))


# ------------------------------------------------- brute-force enumerations

def report_fingerprint(rep):
    """Report contents, insensitive to species relabeling (which permutes
    the order of the per-component entries but nothing else)."""
    return (
        rep.num_complexes,
        rep.num_components,
        rep.rank,
        rep.deficiency,
        tuple(sorted((c.complex_count, c.rank, c.deficiency) for c in rep.components)),
        rep.is_paired,
    )


def four_species_pair_fraction(n):
    """Over all unordered pairs of distinct universe complexes, the fraction
    whose reaction vector has exactly four non-zero entries."""
    size = universe_size(n)
    favorable = 0
    total = 0
    for u, v in combinations(range(size), 2):
        cu, cv = index_to_complex(n, u), index_to_complex(n, v)
        delta = cv.counts()
        for s in cu.species:
            delta[s] = delta.get(s, 0) - 1
        if sum(1 for x in delta.values() if x) == 4:
            favorable += 1
        total += 1
    return favorable, total
