"""Instance generators: the sharpness construction, extremal-case synthetic
instances, and random graphs with a minimum-degree floor.

All generators are deterministic functions of their parameters and seed.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .core import Graph, density, degree_profile


class ConstructionError(ValueError):
    """Raised when requested generator parameters are infeasible."""


def min_degree_threshold(n: int, k: int) -> int:
    """The minimum-degree floor ceil(n/2) + floor(k/2) - 1 that forces
    k-ordered Hamiltonicity for large n."""
    return (n + 1) // 2 + k // 2 - 1


def sharpness_min_degree(n: int, k: int) -> int:
    """Minimum degree ceil(n/2) + floor(k/2) - 2 achieved by the sharpness
    construction (one below the forcing threshold)."""
    return (n + 1) // 2 + k // 2 - 2


@dataclass(frozen=True)
class SharpnessGraph:
    """Two cliques U, W joined through small connector sets, plus the
    ordered witness sequence that no Hamiltonian cycle can realise.

    The u_i are indices 0..floor(n/2)-1, the w_j follow.  Cross edges are
    exactly U x {w_1..w_h} and W x {u_1..u_{h-1}} with h = floor(k/2):
    every side switch of a cycle must pass through a connector, and the
    witness demands more switches than the connectors can serve.
    """

    graph: Graph
    u_side: tuple[int, ...]
    w_side: tuple[int, ...]
    witness: tuple[int, ...]
    n: int
    k: int

    @property
    def min_degree(self) -> int:
        return degree_profile(self.graph).min_degree


def build_sharpness_graph(n: int, k: int) -> SharpnessGraph:
    """Build the extremal graph showing the degree threshold is tight.

    Requires n >= 4 and 2 <= k <= floor(n/2) (the construction's validity
    boundary).  The 1-based labels map as u_i -> i-1 and
    w_j -> floor(n/2) + j - 1.
    """
    if n < 4:
        raise ConstructionError("need n >= 4")
    if not 2 <= k <= n // 2:
        raise ConstructionError(f"k={k} outside 2..floor(n/2) for n={n}")
    nu = n // 2
    nw = n - nu
    h = k // 2

    def u(i: int) -> int:  # 1-based
        return i - 1

    def w(j: int) -> int:  # 1-based
        return nu + j - 1

    edges = []
    for i in range(nu):
        for j in range(i + 1, nu):
            edges.append((i, j))
    for i in range(nu, n):
        for j in range(i + 1, n):
            edges.append((i, j))
    for i in range(1, nu + 1):
        for j in range(1, h + 1):
            edges.append((u(i), w(j)))
    for j in range(1, nw + 1):
        for i in range(1, h):
            edges.append((u(i), w(j)))

    witness: list[int] = []
    for i in range(1, h + 1):
        witness.append(u(h + i - 1))
        witness.append(w(h + i))
    if k % 2 == 1:
        witness.append(u(2 * h))

    graph = Graph.from_edges(n, set(tuple(sorted(e)) for e in edges))
    return SharpnessGraph(
        graph=graph,
        u_side=tuple(range(nu)),
        w_side=tuple(range(nu, n)),
        witness=tuple(witness),
        n=n,
        k=k,
    )


@dataclass(frozen=True)
class ClusterInstance:
    """A generated two-cluster instance with its achieved statistics."""

    graph: Graph
    side_a: tuple[int, ...]
    side_b: tuple[int, ...]
    min_degree: int
    cross_density: Fraction
    params: dict


def build_sparse_cut_instance(
    n: int, k: int, cut_degree: int | None = None, seed: int = 0
) -> ClusterInstance:
    """Two cliques with few, evenly spread cross edges.

    Every vertex ends with degree >= min_degree_threshold(n, k) while the
    cross density d(A,B) stays tiny.  Cross edges are laid out round-robin
    (seeded shifts) so cross degrees stay balanced.
    """
    if n < 8:
        raise ConstructionError("need n >= 8")
    na = n // 2
    nb = n - na
    need_a = min_degree_threshold(n, k) - (na - 1)
    need_b = min_degree_threshold(n, k) - (nb - 1)
    if cut_degree is None:
        cut_degree = max(need_a, need_b, 1)
    if cut_degree < max(need_a, need_b, 1):
        raise ConstructionError(
            f"cut_degree={cut_degree} below the degree floor (need {max(need_a, need_b, 1)})"
        )
    if cut_degree > min(na, nb):
        raise ConstructionError("cut_degree larger than the opposite side")

    rng = random.Random(seed)
    a_side = list(range(na))
    b_side = list(range(na, n))
    edges = set()
    for side in (a_side, b_side):
        for i, uu in enumerate(side):
            for vv in side[i + 1:]:
                edges.add((uu, vv))
    shifts = rng.sample(range(nb), cut_degree)
    for t in shifts:
        for i in range(na):
            edges.add((a_side[i], b_side[(i + t) % nb]))
    # the smaller side's round-robin can leave b-vertices short when na < nb
    g = Graph.from_edges(n, edges)
    deficit = [v for v in b_side if g.deg_into(v, a_side) < cut_degree]
    for v in deficit:
        have = set(range(na)) - set(u for u in a_side if g.has_edge(u, v))
        # pair unmet b-vertices with the a-vertices of least cross degree
        by_load = sorted(have, key=lambda u: (g.deg_into(u, b_side), u))
        need = cut_degree - g.deg_into(v, a_side)
        for u in by_load[:need]:
            edges.add((u, v))
        g = Graph.from_edges(n, edges)

    prof = degree_profile(g)
    return ClusterInstance(
        graph=g,
        side_a=tuple(a_side),
        side_b=tuple(b_side),
        min_degree=prof.min_degree,
        cross_density=density(g, a_side, b_side),
        params={"kind": "sparse", "n": n, "k": k, "cut_degree": cut_degree, "seed": seed},
    )


def build_dense_bipartite_instance(
    n: int,
    k: int,
    imbalance: int = 0,
    seed: int = 0,
    delete_frac: float = 0.05,
) -> ClusterInstance:
    """Near-complete bipartite instance with |A| - |B| = imbalance.

    A seeded fraction of cross edges is deleted under a per-vertex budget,
    then same-side edges are added so every vertex clears the degree floor
    min_degree_threshold(n, k); in particular A carries enough internal
    edges to support an imbalance-sized matching.
    """
    r = imbalance
    if r < 0 or r > max(2, n // 10):
        raise ConstructionError(f"imbalance {r} infeasible for n={n}")
    if (n + r) % 2 != 0:
        raise ConstructionError(f"imbalance {r} has wrong parity for n={n}")
    na = (n + r) // 2
    nb = n - na
    if nb < 4:
        raise ConstructionError("need a larger instance")
    floor_deg = min_degree_threshold(n, k)

    rng = random.Random(seed)
    a_side = list(range(na))
    b_side = list(range(na, n))
    cross = {(u, v) for u in a_side for v in b_side}

    # delete a sprinkling of cross edges, bounded per vertex
    budget = {v: max(0, int(delete_frac * (nb if v < na else na))) for v in range(n)}
    deletable = sorted(cross)
    rng.shuffle(deletable)
    target_deletions = int(delete_frac * len(deletable))
    removed = 0
    for (u, v) in deletable:
        if removed >= target_deletions:
            break
        if budget[u] > 0 and budget[v] > 0:
            cross.discard((u, v))
            budget[u] -= 1
            budget[v] -= 1
            removed += 1

    edges = set(cross)
    cross_deg = {v: 0 for v in range(n)}
    for u, v in cross:
        cross_deg[u] += 1
        cross_deg[v] += 1

    internal = {v: 0 for v in range(n)}

    def add_internal(side: list[int]) -> None:
        # raise every deficient vertex to the floor by pairing inside the side
        while True:
            need = [v for v in side if cross_deg[v] + internal[v] < floor_deg]
            if not need:
                return
            v = need[0]
            partners = sorted(
                (u for u in side if u != v and tuple(sorted((u, v))) not in edges),
                key=lambda u: (internal[u], u),
            )
            if not partners:
                raise ConstructionError("cannot satisfy the degree floor")
            u = partners[0]
            edges.add(tuple(sorted((u, v))))
            internal[u] += 1
            internal[v] += 1

    # plant a matching of size r inside A for the balancing step
    free_a = [v for v in a_side]
    rng.shuffle(free_a)
    for i in range(r):
        u, v = free_a[2 * i], free_a[2 * i + 1]
        edges.add(tuple(sorted((u, v))))
        internal[u] += 1
        internal[v] += 1

    add_internal(a_side)
    add_internal(b_side)

    g = Graph.from_edges(n, edges)
    prof = degree_profile(g)
    return ClusterInstance(
        graph=g,
        side_a=tuple(a_side),
        side_b=tuple(b_side),
        min_degree=prof.min_degree,
        cross_density=density(g, a_side, b_side),
        params={
            "kind": "dense",
            "n": n,
            "k": k,
            "imbalance": r,
            "seed": seed,
            "delete_frac": delete_frac,
        },
    )


def random_graph_min_degree(n: int, target_delta: int, seed: int = 0) -> Graph:
    """G(n,p) sample with p calibrated to the target, then greedy edge
    augmentation until the minimum degree reaches target_delta."""
    if not 0 <= target_delta < n:
        raise ConstructionError("target_delta must be in 0..n-1")
    rng = random.Random(seed)
    p = min(1.0, (target_delta + 1) / max(1, n - 1))
    deg = [0] * n
    edges = set()
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() < p:
                edges.add((u, v))
                deg[u] += 1
                deg[v] += 1
    while True:
        lo = min(range(n), key=lambda v: (deg[v], v))
        if deg[lo] >= target_delta:
            break
        candidates = sorted(
            (v for v in range(n) if v != lo and tuple(sorted((lo, v))) not in edges),
            key=lambda v: (deg[v], v),
        )
        v = candidates[0]
        edges.add(tuple(sorted((lo, v))))
        deg[lo] += 1
        deg[v] += 1
    return Graph.from_edges(n, edges)
