"""Independent oracles and fixture builders used across the tests.

Everything here recomputes results by brute force or by a different
route than the library (orbit enumeration, factor search, generating
functions, plain subset sums) so agreement is meaningful.
"""

from collections import deque
from itertools import combinations

import numpy as np

from raamkit import (
    GammaFamily,
    Graph,
    ball,
    enumerate_cliques,
    evaluate_word,
    identity,
    is_finite,
    join_set,
    multiply,
    neighbor_sets,
    normal_form,
)

# Filled in by the acceptance tests, echoed by the terminal summary
# hook in conftest so the one-line verdicts survive output capture.
ACCEPTANCE_LINES: list[str] = []


def shuffle_orbit(g: Graph, word: tuple[int, ...]) -> set[tuple[int, ...]]:
    """All letter sequences reachable by swapping adjacent commuting letters."""
    adj = neighbor_sets(g)
    seen = {tuple(word)}
    queue = deque(seen)
    while queue:
        w = queue.popleft()
        for i in range(len(w) - 1):
            a, b = w[i], w[i + 1]
            if a != b and b in adj[a]:
                nxt = w[:i] + (b, a) + w[i + 2 :]
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return seen


def normal_form_oracle(g: Graph, word: tuple[int, ...]) -> tuple[int, ...]:
    """Lexicographically least member of the full shuffle orbit."""
    return min(shuffle_orbit(g, word))


def random_word(rng, n: int, max_len: int) -> tuple[int, ...]:
    length = int(rng.integers(0, max_len + 1))
    return tuple(int(v) for v in rng.integers(1, n + 1, size=length))


def random_letter_shuffle(rng, g: Graph, word: tuple[int, ...], steps: int):
    """Apply random legal adjacent swaps; returns a word in the same class."""
    adj = neighbor_sets(g)
    w = list(word)
    for _ in range(steps):
        spots = [
            i
            for i in range(len(w) - 1)
            if w[i] != w[i + 1] and w[i + 1] in adj[w[i]]
        ]
        if not spots:
            break
        i = spots[int(rng.integers(len(spots)))]
        w[i], w[i + 1] = w[i + 1], w[i]
    return tuple(w)


def random_graph(rng, n: int) -> Graph:
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    keep = [p for p in pairs if rng.random() < 0.5]
    return Graph.from_edges(n, keep)


def left_divides_oracle(p, x) -> bool:
    """p divides x iff some completion in the ball reaches x. Brute force."""
    g = p.graph
    gap = x.norm - p.norm
    if gap < 0:
        return False
    return any(multiply(p, z) == x for z in ball(g, gap) if z.norm == gap)


def clique_series_counts(g: Graph, upto: int) -> list[int]:
    """Level sizes from the reciprocal of the clique polynomial.

    The growth series of the monoid is 1 / sum_C (-t)^|C| over cliques
    C, so the level counts satisfy a short linear recurrence in the
    signed clique counts.
    """
    by_size = {}
    for c in enumerate_cliques(g):
        by_size[len(c)] = by_size.get(len(c), 0) + 1
    coeffs = [(-1) ** s * by_size.get(s, 0) for s in range(max(by_size) + 1)]
    counts = [1]
    for m in range(1, upto + 1):
        acc = 0
        for s in range(1, min(m, len(coeffs) - 1) + 1):
            acc -= coeffs[s] * counts[m - s]
        counts.append(acc)
    return counts


def zed_oracle(f: GammaFamily, elems) -> np.ndarray:
    """Plain inclusion-exclusion over subsets, no bitmask reuse."""
    d = f.dim
    total = np.zeros((d, d), dtype=np.complex128)
    for k in range(len(elems) + 1):
        for combo in combinations(elems, k):
            j = join_set(combo) if combo else identity(f.graph)
            if combo and not is_finite(j):
                continue
            t = evaluate_word(f, j if combo else identity(f.graph))
            total += (-1) ** k * (t @ t.conj().T)
    return total


def commuting_pair(rng, d: int, cond_max: float = 50.0):
    """Two exactly-commuting dense complex matrices, moderate conditioning."""
    while True:
        s = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        if np.linalg.cond(s) < cond_max:
            break
    sinv = np.linalg.inv(s)
    d1 = np.diag(rng.normal(size=d) + 1j * rng.normal(size=d))
    d2 = np.diag(rng.normal(size=d) + 1j * rng.normal(size=d))
    return s @ d1 @ sinv, s @ d2 @ sinv


def _shrink(mats, scale: float):
    out = []
    for m in mats:
        nrm = np.linalg.norm(m, 2)
        out.append(m * (scale / nrm) if nrm > 0 else m)
    return out


def random_toy_family(g: Graph, rng, d1: int = 2, d2: int = 2, scale: float = 0.9):
    """Tensor family on the toy graph: vertices 1,2 commute on factor one,
    vertex 3 acts freely there, vertex 4 lives on factor two."""
    a1, a2 = commuting_pair(rng, d1)
    a3 = rng.normal(size=(d1, d1)) + 1j * rng.normal(size=(d1, d1))
    b4 = rng.normal(size=(d2, d2)) + 1j * rng.normal(size=(d2, d2))
    a1, a2, a3 = _shrink([a1, a2, a3], scale)
    (b4,) = _shrink([b4], scale)
    i1, i2 = np.eye(d1), np.eye(d2)
    gens = (
        np.kron(a1, i2),
        np.kron(a2, i2),
        np.kron(a3, i2),
        np.kron(i1, b4),
    )
    return GammaFamily(graph=g, dim=d1 * d2, generators=gens)


def random_k221_family(g: Graph, rng, dims=(2, 2, 1), scale: float = 0.9):
    """Tensor family on K_{2,2,1}: one free factor per part, parts
    {1,2}, {3,4}, {5}; cross-part pairs commute through the tensor."""
    d1, d2, d3 = dims
    raw = {
        1: rng.normal(size=(d1, d1)) + 1j * rng.normal(size=(d1, d1)),
        2: rng.normal(size=(d1, d1)) + 1j * rng.normal(size=(d1, d1)),
        3: rng.normal(size=(d2, d2)) + 1j * rng.normal(size=(d2, d2)),
        4: rng.normal(size=(d2, d2)) + 1j * rng.normal(size=(d2, d2)),
        5: rng.normal(size=(d3, d3)) + 1j * rng.normal(size=(d3, d3)),
    }
    for k in raw:
        (raw[k],) = _shrink([raw[k]], scale)
    i1, i2, i3 = np.eye(d1), np.eye(d2), np.eye(d3)
    gens = (
        np.kron(np.kron(raw[1], i2), i3),
        np.kron(np.kron(raw[2], i2), i3),
        np.kron(np.kron(i1, raw[3]), i3),
        np.kron(np.kron(i1, raw[4]), i3),
        np.kron(np.kron(i1, i2), raw[5]),
    )
    return GammaFamily(graph=g, dim=d1 * d2 * d3, generators=gens)


def scalar_family(g: Graph, values) -> GammaFamily:
    gens = tuple(np.array([[complex(v)]]) for v in values)
    return GammaFamily(graph=g, dim=1, generators=gens)


def word_from_letters(g: Graph, letters):
    return normal_form(g, letters)
