"""Round trip: read royal data off a known map, re-solve, recover the map.

The generator family

    s = 2 (1 - r) lambda^(nu+1) / (1 + r lambda^(2 nu + 1)),
    p = lambda (lambda^(2 nu + 1) + r) / (1 + r lambda^(2 nu + 1))

has royal nodes at the (2 nu + 1)-th roots of -1 (on the circle) and at 0.
Extracting those nodes, their values and the boundary derivatives, then
feeding them back into the solver, must reproduce the map itself.  For this
data the base-value system has full rank, so the solution is unique: the
pipeline returns exactly one map, and it is the generator we started from.
"""

import numpy as np

from royalgamma import (
    build_pick_matrix,
    extract_royal_data,
    gamma_inner_distance,
    generate_h_nu,
    royal_nodes,
    solve_royal_problem,
)


def run():
    for nu, r in [(0, 0.5), (0, 0.9), (1, 0.5)]:
        h = generate_h_nu(nu, r)
        rd = royal_nodes(h)
        data = extract_royal_data(h)
        pick = build_pick_matrix(data)

        print(f"generator nu={nu}, r={r}: degree {h.degree}, type {rd.type_pair}")
        print("  royal nodes:", [f"{node:.4f} (x{mult})" for node, mult in rd.nodes])
        print("  boundary derivatives (half the slope of arg p):", np.round(rd.boundary_rho, 6))
        print("  Pick matrix min eigenvalue:", f"{pick.min_eigenvalue:.6f}")

        result = solve_royal_problem(
            data,
            omega_grid=16,
            extra_omegas_fn=lambda tau, h=h: (complex(np.sqrt(h.p(tau))),),
        )
        best = min(gamma_inner_distance(h, sol.h) for sol in result.solutions)
        print(f"  re-solve: base values are {result.s0p0.kind}; "
              f"{len(result.solutions)} solution(s); distance to original {best:.2e}\n")


if __name__ == "__main__":
    run()
