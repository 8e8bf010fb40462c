"""Chains are the simplest pircons: their R-polynomials have a closed form.

A pircon is a graded poset in which every element's lower ideal admits a
special partial matching (SPM).  Choosing one SPM per element (a
*refinement*) drives a three-case recursion that produces the family
R^x_{u,w} for x in {q, -1}.  On a chain every refinement gives

    R^x_{u,w} = (q - 1) (q - 1 - x)^(gap - 1),

which this script checks for every refinement of a rank-3 chain quotient.
"""

from pircons import (CoxeterSystem, all_refinements, r_polynomials, X_PARAMS)

# W = S4; taking H = {s2, s3} leaves the minimal coset representatives
# e < s1 < s2.s1 < s3.s2.s1 -- a chain of rank 3.
W = CoxeterSystem({"type": "A", "rank": 3})
quot = W.quotient({1, 2})
P = quot.poset
print("quotient elements:", ", ".join(P.labels))

for ref_num, ref in enumerate(all_refinements(P)):
    print(f"\nrefinement #{ref_num}")
    for x in X_PARAMS:
        table = r_polynomials(P, ref, x)
        e, top = P.index("e"), P.index("3.2.1")
        print(f"  x = {x:>2}:  R[e, top] = {table.value(e, top)}")

# The two refinements differ (the rank-3 ideal has two SPMs) yet produce
# identical tables, as the closed form demands.
