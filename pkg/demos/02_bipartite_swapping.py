"""The swapping injection from two copies of G into its bipartite double cover,
and the auxiliary-graph test for which targets H it works.

Run with ``python3 demos/02_bipartite_swapping.py``.
"""
# %% A concrete swap on six vertices
from extremal_regular import Graph, swap_injection, swap_injection_inverse
from extremal_regular.graphcore import path_with_loops
from extremal_regular.structure import independent_pairs, is_bipartite_swapping_target

g = Graph.from_edges(6, [(0, 1), (1, 3), (3, 2), (2, 0), (0, 4), (4, 2), (4, 5), (5, 1), (3, 5)])
s = (0b010010, 0b100100)  # {1, 4} in copy 0 and {2, 5} in copy 1
cert = swap_injection(g, s)
print("bad edges:", cert.bad_edges)
print("swapped vertices:", [v for v in range(6) if cert.swap >> v & 1])
print("recovered:", swap_injection_inverse(g, cert.image) == s)

# %% The map is injective: i(G)^2 distinct images
pairs = independent_pairs(g)
print(len(pairs), "pairs,", len({swap_injection(g, p).image for p in pairs}), "distinct images")

# %% Which loop positions on P_8 give a bipartite auxiliary graph?
for i in range(1, 9):
    verdict = is_bipartite_swapping_target(path_with_loops(8, [i]))
    witness = "2-colouring" if verdict.is_target else f"odd walk of length {len(verdict.odd_walk)}"
    print(f"loop at {i}: {'target' if verdict.is_target else 'not a target'} ({witness})")
