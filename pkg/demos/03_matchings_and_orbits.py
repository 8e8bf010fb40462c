"""Special partial matchings, their orbits, and coherence.

Two matchings generate a group of permutations of the poset; every orbit is
either *dihedral* (no fixed points, shaped like a two-generator Bruhat
interval) or *chain-like* (a chain whose endpoints are fixed).  The number
m(O) -- the orbit's rank, plus one if chain-like -- controls whether two
matchings compute the same R-polynomials: they are strictly coherent when
every m(O) divides the m of the top element's orbit.

The nine-element poset below carries two SPMs with a dihedral orbit of rank
3 and a chain-like orbit of rank 2, both with m = 3, so they are strictly
coherent.  The script also prints the Hasse diagram in DOT with one of the
matchings highlighted.
"""

from pircons import (GradedPoset, PartialMatching, enumerate_spms,
                     is_dircon, orbit_partition, strictly_coherent,
                     verify_spm)

P = GradedPoset(
    "abcdfghij",
    [(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (2, 5),
     (3, 6), (3, 7), (4, 6), (4, 7), (5, 7), (6, 8), (7, 8)])
M = PartialMatching(P, {0: 0, 1: 3, 3: 1, 2: 5, 5: 2, 4: 7, 7: 4,
                        6: 8, 8: 6})
N = PartialMatching(P, {0: 2, 2: 0, 1: 4, 4: 1, 3: 6, 6: 3, 5: 5,
                        8: 7, 7: 8})
print("M is an SPM:", verify_spm(M))
print("N is an SPM:", verify_spm(N))

for rep in orbit_partition(M, N, range(P.n)):
    names = ",".join(P.labels[u] for u in rep.orbit)
    print(f"orbit {{{names}}}: {rep.shape}, m = {rep.m_value}")
print("strictly coherent at the top:", strictly_coherent(M, N, 8))

# Chains of rank >= 3 are pircons but not dircons: the SPM pairing the two
# bottom elements and the SPM fixing them are incoherent.
chain4 = GradedPoset("wxyz", [(0, 1), (1, 2), (2, 3)])
pool = enumerate_spms(chain4)
print("\nSPMs of a rank-3 chain:", [dict(m.mapping) for m in pool])
print("strictly coherent:", strictly_coherent(pool[0], pool[1], 3))
print("is the chain a dircon?", is_dircon(chain4))

print("\nDOT rendering with M highlighted:\n")
print(P.to_dot(M))
