"""Constructing a rational map into the symmetrized bidisc with one prescribed
royal node.

The map h = (s, p) must send the disc into Gamma = {(z+w, zw) : |z|,|w| <= 1},
take boundary values on the distinguished boundary, and satisfy
h(0) = (-2 eta, eta^2) for eta = 1/2.  The solutions form a one-parameter
family; each family member comes from a pair of base values (s0, p0) on the
distinguished boundary via

    s = 2 (2 p0 c - s0 d)/(s0 c - 2 d),   p = (-2 p0 a + s0 b)/(s0 c - 2 d).

They all turn out to be "superficial": s = beta + conj(beta) p with
beta = -2 eta/(1 + |eta|^2) = -4/5.
"""

import numpy as np

from royalgamma import (
    BlaschkeData,
    classify_point,
    disc_grid,
    royal_nodes,
    solve_royal_problem,
)


def run():
    data = BlaschkeData(sigma=(0j,), eta=(0.5 + 0j,), rho=(), k=0)
    result = solve_royal_problem(data, omega_grid=16)
    print(f"status: {result.status}; base-value solve gave a {result.s0p0.kind}")
    print(f"solutions on the parameter grid: {len(result.solutions)}, "
          f"all verified: {all(s.report.passed for s in result.solutions)}")

    sol = result.solutions[0]
    h = sol.h
    print(f"\nfirst member (omega = {sol.omega:.4f}, t = {sol.t:.4f}):")
    print("  s =", np.round(h.s.num.coeffs, 6), "/", np.round(h.den.coeffs, 6))
    print("  p =", np.round(h.p.num.coeffs, 6), "/", np.round(h.den.coeffs, 6))
    print("  h(0) =", h(0.0), " (want (-1, 0.25))")

    rd = royal_nodes(h)
    print(f"  royal nodes: {rd.nodes}, values {np.round(rd.values, 8)}, type {rd.type_pair}")

    beta = -0.8
    grid = disc_grid(128)
    superficial_gap = np.max(np.abs(h.s(grid) - (beta + np.conj(beta) * h.p(grid))))
    print(f"  superficial identity |s - (beta + conj(beta) p)| on the disc: {superficial_gap:.2e}")

    worst = max(sol.report.residuals.values())
    print(f"  worst verification residual: {worst:.2e}")

    inside = sum(classify_point(h(z)).value != "outside" for z in grid)
    print(f"  {inside}/{grid.size} disc samples land inside Gamma")


if __name__ == "__main__":
    run()
