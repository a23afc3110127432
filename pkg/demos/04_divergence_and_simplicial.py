"""Divergence of tangential derivations and the three-letter chain.

A tangential derivation sends each generator x_i to [x_i, a_i]; its
divergence is the cyclic-word series sum_i tr(x_i d_i a_i).  The divergence
is a 1-cocycle, transforms cleanly under the four simplicial embeddings into
three letters, and the alternating simplicial combination built from a
solution pair annihilates ch(x, y, z) and has vanishing quadratic
divergence: that chain is what forces the quadratic trace identity.
"""

import random

from kvquad import (
    act, act_on_trace, bch, bch_multi, canonical_solution, div, div_quad,
    generator, simplicial, simplicial_combination, substitute,
    trace_substitute, verify_cocycle_equation,
)
from kvquad.sampling import random_tangential_derivation

order = 5
rng = random.Random(1)
u = random_tangential_derivation(rng, 2, order)
v = random_tangential_derivation(rng, 2, order)

print("divergence of a random derivation:", div(u))
print("cocycle identity div[u,v] = u.div(v) - v.div(u):",
      div(u.bracket(v)) == act_on_trace(u, div(v)) - act_on_trace(v, div(u)))

x, y, z = (generator(3, i, order) for i in range(3))
ch = bch(order)
print("\nsimplicial transformation of the divergence:")
for pattern, args in [("1,2", (x, y)), ("2,3", (y, z)),
                      ("12,3", (substitute(ch, (x, y)), z)),
                      ("1,23", (x, substitute(ch, (y, z))))]:
    ok = div(simplicial(u, pattern)) == trace_substitute(div(u), args)
    print(f"  pattern {pattern:>5}: div of the embedding == substituted divergence: {ok}")

solution = canonical_solution(6)
combination = simplicial_combination(solution)
print("\nalternating combination U of the four embeddings of the solution pair:")
print("  U annihilates ch(x, y, z):", act(combination, bch_multi(3, 6)).is_zero())
print("  quadratic divergence of U vanishes:", div_quad(combination).is_zero())
print("  four-term cocycle equation:", verify_cocycle_equation(solution).summary())
