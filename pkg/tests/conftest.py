"""Shared generators and oracles for the test suite.

Random solvable interpolation data is produced by forward extraction: build a
map that is known to be valid (a superficial map (beta + conj(beta) p, p) for
an inner p, or a generator-family instance, possibly rotated), read its royal
data off, and hand that data to the code under test.
"""

from __future__ import annotations

import numpy as np
import pytest

from royalgamma import (
    BlaschkeData,
    GammaInnerFn,
    Poly,
    RationalFn,
    build_pick_matrix,
    extract_royal_data,
    generate_h_nu,
)
from royalgamma.errors import RoyalGammaError


def fd_phasar(f, z, step=1e-6) -> float:
    """Finite-difference oracle for the phasar derivative.

    Uses the argument of the ratio so no branch cut is crossed for small steps.
    """
    zp = z * np.exp(1j * step)
    zm = z * np.exp(-1j * step)
    return float(np.angle(f(zp) / f(zm)) / (2.0 * step))


def blaschke_rational(zeros, constant=1.0 + 0j) -> RationalFn:
    """Finite Blaschke product as an explicit rational function."""
    num = Poly([complex(constant)])
    den = Poly([1.0])
    for a in zeros:
        num = num * Poly([-complex(a), 1.0])
        den = den * Poly([1.0, -np.conj(a)])
    return RationalFn(num, den)


def superficial_map(p: RationalFn, beta: complex) -> GammaInnerFn:
    """The map (beta + conj(beta) p, p); valid whenever |beta| <= 1 and p is inner."""
    num_s = complex(beta) * p.den + np.conj(beta) * p.num
    return GammaInnerFn.from_numerators(num_s, p.num, p.den)


def rotate_map(h: GammaInnerFn, angle: float) -> GammaInnerFn:
    """Precompose with the rotation lambda -> exp(i angle) lambda."""
    phase = np.exp(1j * angle)

    def twist(poly: Poly) -> Poly:
        if poly.is_zero:
            return poly
        return Poly(poly.coeffs * phase ** np.arange(poly.coeffs.size))

    return GammaInnerFn.from_numerators(twist(h.s.num), twist(h.p.num), twist(h.den))


def _data_quality_ok(data: BlaschkeData) -> bool:
    n = data.n
    for i in range(n):
        for j in range(i):
            if abs(data.sigma[i] - data.sigma[j]) < 0.08:
                return False
    for j in range(data.k, n):
        if abs(data.sigma[j]) > 0.95:
            return False
    pick = build_pick_matrix(data)
    return pick.min_eigenvalue > 1e-6 * float(np.max(np.abs(np.diag(pick.entries))))


def random_solvable_instances(seed: int, count: int, max_degree: int = 4):
    """Yield ``count`` pairs (data, source map) of known-solvable instances.

    Cycles through interior-node superficial maps, all-boundary superficial
    maps and rotated generator-family instances, rejecting ill-conditioned
    draws (close nodes, nodes hugging the circle, nearly singular Pick matrix).
    """
    rng = np.random.default_rng(seed)
    out = []
    kind = 0
    while len(out) < count:
        kind = (kind + 1) % 4
        try:
            if kind in (0, 1):
                degree = int(rng.integers(1, max_degree + 1))
                zeros = [
                    complex(rng.uniform(0.05, 0.6) * np.exp(2j * np.pi * rng.uniform()))
                    for _ in range(degree)
                ]
                constant = complex(np.exp(2j * np.pi * rng.uniform()))
                p = blaschke_rational(zeros, constant)
                if kind == 0:
                    beta = complex(rng.uniform(0.3, 0.9) * np.exp(2j * np.pi * rng.uniform()))
                else:
                    beta = complex(np.exp(2j * np.pi * rng.uniform()))
                    if degree > 3:
                        degree = 3
                        p = blaschke_rational(zeros[:3], constant)
                h = superficial_map(p, beta)
            elif kind == 2:
                h = rotate_map(generate_h_nu(0, float(rng.uniform(0.2, 0.8))), float(rng.uniform(0, 2 * np.pi)))
            else:
                if max_degree >= 4:
                    h = rotate_map(generate_h_nu(1, float(rng.uniform(0.2, 0.8))), float(rng.uniform(0, 2 * np.pi)))
                else:
                    h = rotate_map(generate_h_nu(0, float(rng.uniform(0.2, 0.8))), float(rng.uniform(0, 2 * np.pi)))
            data = extract_royal_data(h)
        except RoyalGammaError:
            continue
        if not _data_quality_ok(data):
            continue
        out.append((data, h))
    return out


@pytest.fixture(scope="session")
def solvable_instances():
    return random_solvable_instances(seed=20240, count=50)


# closed forms for the two worked one-node examples, used as oracles

def interior_example_target(eta: complex, kappa: complex) -> GammaInnerFn:
    """Degree-1 map with royal node 0 and value eta:
    p = (kappa lambda + eta^2)/(1 + conj(eta)^2 kappa lambda), s = beta + conj(beta) p,
    beta = -2 eta / (1 + |eta|^2)."""
    eta, kappa = complex(eta), complex(kappa)
    beta = -2.0 * eta / (1.0 + abs(eta) ** 2)
    num_p = Poly([eta**2, kappa])
    den = Poly([1.0, np.conj(eta) ** 2 * kappa])
    num_s = beta * den + np.conj(beta) * num_p
    return GammaInnerFn.from_numerators(num_s, num_p, den)


def boundary_example_target(eta: complex, rho: float, kappa: complex) -> GammaInnerFn:
    """Degree-1 map with royal node 1, value eta on the circle, and Ap(1) = 2 rho:
    p = eta^2 kappa (lambda - alpha)/(1 - conj(alpha) lambda) with
    alpha = (2 rho - conj(kappa))/(1 + 2 rho), s = -eta - conj(eta) p."""
    eta, kappa = complex(eta), complex(kappa)
    alpha = (2.0 * rho - np.conj(kappa)) / (1.0 + 2.0 * rho)
    num_p = eta**2 * kappa * Poly([-alpha, 1.0])
    den = Poly([1.0, -np.conj(alpha)])
    num_s = -eta * den - np.conj(eta) * num_p
    return GammaInnerFn.from_numerators(num_s, num_p, den)


def interior_example_data() -> BlaschkeData:
    return BlaschkeData(sigma=(0j,), eta=(0.5 + 0j,), rho=(), k=0)


def boundary_example_data() -> BlaschkeData:
    return BlaschkeData(sigma=(1.0 + 0j,), eta=(1j,), rho=(1.0,), k=1)
