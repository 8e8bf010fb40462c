"""Independent oracles used to freeze expected values.

Everything here deliberately avoids the package's own polynomial types and
inversion code: polynomials are sympy expressions in q, and kernel inversion
is done by undetermined coefficients plus a linear solve, so a bug in the
production truncation recursion cannot hide.
"""

from __future__ import annotations

from functools import lru_cache

import sympy

q = sympy.Symbol("q")


def qpoly_expr(p) -> sympy.Expr:
    """A pircons QPoly as a sympy expression."""
    return sympy.expand(sum(c * q ** k for k, c in enumerate(p.coeffs())))


def chain_r_value(x: str, gap: int) -> sympy.Expr:
    """(q-1)(q-1-x)^(gap-1) for a chain pair with the given rank gap."""
    xv = q if x == "q" else -1
    return sympy.expand((q - 1) * (q - 1 - xv) ** (gap - 1))


def kernel_inversion(elements, leq, gap, r_value):
    """Solve for the half-degree-bounded inverse family by linear algebra.

    ``r_value(u, z)`` returns a sympy expression; the result maps comparable
    pairs to sympy expressions with P[u, u] = 1.  Raises if some pair admits
    no (or no unique) solution, i.e. the input is not a kernel.
    """
    P: dict[tuple, sympy.Expr] = {}
    pairs = [(u, v) for v in elements for u in elements if leq(u, v)]
    pairs.sort(key=lambda p: gap(p[0], p[1]))
    for u, v in pairs:
        g = gap(u, v)
        if g == 0:
            P[(u, v)] = sympy.Integer(1)
            continue
        unknowns = sympy.symbols(f"a0:{(g + 1) // 2}")
        cand = sum(a * q ** k for k, a in enumerate(unknowns))
        total = cand + sum(
            r_value(u, z) * P[(z, v)]
            for z in elements if z != u and leq(u, z) and leq(z, v))
        rhs = sympy.expand(q ** g * cand.subs(q, 1 / q))
        eqs = sympy.Poly(sympy.expand(total - rhs), q).all_coeffs()
        sol = sympy.solve(eqs, unknowns, dict=True)
        if len(sol) != 1:
            raise ValueError(f"no unique inverse at pair ({u}, {v})")
        P[(u, v)] = sympy.expand(cand.subs(sol[0]))
    return P


def classical_r(system):
    """Classical R-polynomials of a finite Coxeter group, by the textbook
    left-descent recursion; no matchings involved anywhere."""

    @lru_cache(maxsize=None)
    def R(u: int, w: int) -> sympy.Expr:
        if u == w:
            return sympy.Integer(1)
        if not system.bruhat_leq(u, w):
            return sympy.Integer(0)
        s = min(system.left_descents(w))
        sw = system.left[w][s]
        su = system.left[u][s]
        if system.length[su] < system.length[u]:
            return R(su, sw)
        return sympy.expand((q - 1) * R(u, sw) + q * R(su, sw))

    return R


def classical_kl(system):
    """Classical Kazhdan-Lusztig P-polynomials of a finite Coxeter group,
    as sympy expressions keyed by element-index pairs."""
    R = classical_r(system)
    elements = list(range(system.size))
    return kernel_inversion(
        elements, system.bruhat_leq,
        lambda u, w: system.length[w] - system.length[u], R)


def table_inversion(table):
    """Brute-force inverse family of a pircons PolyTable, sympy-side."""
    poset = table.poset
    elements = list(range(poset.n))
    return kernel_inversion(
        elements, poset.leq, poset.rank_gap,
        lambda u, z: qpoly_expr(table.value(u, z)))
