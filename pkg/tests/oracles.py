"""Independent reference implementations used to cross-check the library.

These deliberately use different algorithm families from the package:
matching number by exhaustive branching over the lowest uncovered vertex,
Hamiltonian cycles by recursive neighbor-set backtracking, S-cycle
existence by scanning every enumerated cycle, regularity by full
quantifier enumeration.  Slow on purpose; only run at desk scale.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from kordered import Graph


def brute_matching_number(g: Graph) -> int:
    n = g.n
    adj = g.adj

    @lru_cache(maxsize=None)
    def best_from(covered: int) -> int:
        v = None
        for u in range(n):
            if not covered & (1 << u):
                v = u
                break
        if v is None:
            return 0
        best = best_from(covered | (1 << v))  # leave v unmatched
        nbrs = adj[v] & ~covered
        while nbrs:
            b = nbrs & -nbrs
            nbrs ^= b
            best = max(best, 1 + best_from(covered | (1 << v) | b))
        return best

    result = best_from(0)
    best_from.cache_clear()
    return result


def naive_hamiltonian_cycles(g: Graph) -> list[tuple[int, ...]]:
    """All Hamiltonian cycles, each once: rooted at 0, second < last."""
    n = g.n
    out: list[tuple[int, ...]] = []
    if n < 3:
        return out

    def rec(path: list[int], used: set[int]) -> None:
        if len(path) == n:
            if g.has_edge(path[-1], 0) and path[1] < path[-1]:
                out.append(tuple(path))
            return
        for v in range(n):
            if v not in used and g.has_edge(path[-1], v):
                path.append(v)
                used.add(v)
                rec(path, used)
                path.pop()
                used.remove(v)

    rec([0], {0})
    return out


def cycle_meets_order(order: tuple[int, ...], seq) -> bool:
    """Does the cycle encounter seq in cyclic order (either direction)?"""
    n = len(order)
    pos = {v: i for i, v in enumerate(order)}
    p0 = pos[seq[0]]
    fwd = [(pos[v] - p0) % n for v in seq]
    bwd = [(p0 - pos[v]) % n for v in seq]
    return all(x < y for x, y in zip(fwd, fwd[1:])) or all(
        x < y for x, y in zip(bwd, bwd[1:])
    )


def s_cycle_exists_naive(g: Graph, seq) -> bool:
    return any(cycle_meets_order(c, seq) for c in naive_hamiltonian_cycles(g))


def ham_path_exists_naive(g: Graph, x: int, y: int) -> bool:
    n = g.n

    def rec(last: int, used: int) -> bool:
        if used == (1 << n) - 1:
            return last == y
        nbrs = g.adj[last] & ~used
        while nbrs:
            b = nbrs & -nbrs
            nbrs ^= b
            v = b.bit_length() - 1
            if v == y and used | b != (1 << n) - 1:
                continue
            if rec(v, used | b):
                return True
        return False

    return rec(x, 1 << x)


def naive_edges_between(g: Graph, a, b) -> int:
    a, b = set(a), set(b)
    count = 0
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.has_edge(u, v) and ((u in a and v in b) or (u in b and v in a)):
                count += 1
    return count


def regular_pair_naive(g: Graph, a, b, eps: Fraction):
    """Full quantifier enumeration of Definition-style regularity.

    Returns (regular, witness) where witness = (X, Y, deviation).
    """
    a, b = sorted(a), sorted(b)
    na, nb = len(a), len(b)

    def dens(xs, ys) -> Fraction:
        e = sum(1 for x in xs for y in ys if g.has_edge(x, y))
        return Fraction(e, len(xs) * len(ys))

    d0 = dens(a, b)
    for sx in range(1, na + 1):
        if Fraction(sx) <= eps * na:
            continue
        for xs in combinations(a, sx):
            for sy in range(1, nb + 1):
                if Fraction(sy) <= eps * nb:
                    continue
                for ys in combinations(b, sy):
                    dev = abs(dens(xs, ys) - d0)
                    if dev >= eps:
                        return False, (xs, ys, dev)
    return True, None


def petersen() -> Graph:
    edges = []
    for i in range(5):
        edges.append((i, (i + 1) % 5))
        edges.append((i, i + 5))
        edges.append((5 + i, 5 + (i + 2) % 5))
    return Graph.from_edges(10, edges)


def random_graph(rng, n: int, p: float) -> Graph:
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return Graph.from_edges(n, edges)
