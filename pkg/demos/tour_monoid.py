"""
Words, normal forms, and common multiples
=========================================

A walk through the combinatorial layer: build a graph, multiply
words, see which generators slide past each other, and compute least
common right multiples.
"""

from raamkit import (
    Graph,
    ball,
    enumerate_norm_level,
    final_vertices,
    generator,
    initial_vertices,
    is_finite,
    join_set,
    lcm,
    left_divides,
    left_quotient,
    max_joinable_subset,
    normal_form,
)

# Four vertices; 1-2, 1-4, 2-4 and 3-4 are edges, so e3 commutes with
# e4 only.  The complement splits into {1,2,3} and {4}.
g = Graph.from_edges(4, [(1, 2), (1, 4), (2, 4), (3, 4)])

# Words are entered as letter sequences and stored in a canonical
# spelling: the lexicographically least word reachable by swapping
# adjacent commuting letters.
x = normal_form(g, [2, 1, 1])
print("normal form of e2 e1 e1:", x)  # e1^2 e2, since 1 and 2 commute

y = normal_form(g, [3, 1])
print("normal form of e3 e1:  ", y)  # stuck: 3 and 1 do not commute

# Initial vertices are the letters that can surface at the front.
z = normal_form(g, [3, 4, 1])
print("word:", z)
print("  initial vertices:", sorted(initial_vertices(z)))
print("  final vertices:  ", sorted(final_vertices(z)))

# Left divisibility peels initial letters one at a time.
p = generator(g, 1)
w = normal_form(g, [2, 1, 4])
print(f"{p} divides {w}?", left_divides(p, w))
print("  quotient:", left_quotient(p, w))

# Least common multiples: finite exactly when the two words fit
# together inside the commutation pattern.
a, b = generator(g, 3), generator(g, 4)
print("e3 v e4 =", lcm(a, b))
print("e1 v e3 =", lcm(generator(g, 1), a))  # no common multiple

big = lcm(normal_form(g, [1, 2]), normal_form(g, [2, 4]))
print("e1e2 v e2e4 =", big, "(norm", big.norm, ")")

# The join of all four generators fails, but 1, 2, 4 pairwise commute
# and join into one norm-3 word.
gens = [generator(g, i) for i in (1, 2, 3, 4)]
print("join of all generators:", join_set(gens))
size, witness = max_joinable_subset(gens)
print("largest joinable subset:", size, "->", join_set(witness))

# Counting: level sizes grow like the reciprocal clique polynomial.
print("level sizes:", [len(enumerate_norm_level(g, m)) for m in range(6)])
print("ball through norm 3 has", len(ball(g, 3)), "words")
