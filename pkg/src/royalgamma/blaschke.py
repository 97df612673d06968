"""Finite Blaschke products, phasar derivatives, and the normalized
linear-fractional parametrization of all degree-n solutions of the
boundary-augmented interpolation problem."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    ExceptionalZeta,
    InvalidData,
    NotInner,
    NumericalFailure,
    UnsuitableTau,
    ZeroOrPoleAtPoint,
)
from .pick import (
    BlaschkeData,
    ExceptionalSet,
    PickMatrix,
    exceptional_set,
    kernel_vectors,
    solve_pd,
)
from .polyrat import (
    DEFAULT_TOLERANCES,
    Poly,
    RationalFn,
    TolerancePolicy,
    poly_eval,
    poly_roots,
    rat_reduce,
)

__all__ = [
    "PhasarValue",
    "BlaschkeProduct",
    "Parametrization",
    "phasar_derivative",
    "build_parametrization",
    "solve_blaschke",
    "to_blaschke_product",
    "circle_grid",
    "disc_grid",
    "kernel_numerator_polynomials",
]

# Band on the defining scalar alpha_j - zeta * beta_j inside which a parameter
# is treated as exceptional; the linear-fractional formula degenerates there.
EXCEPTIONAL_SCALAR_TOL = 1e-8


def circle_grid(m: int) -> np.ndarray:
    """m equispaced points on the unit circle, starting at 1."""
    return np.exp(2j * np.pi * np.arange(m) / m)


def disc_grid(m: int) -> np.ndarray:
    """Deterministic grid of about m points covering the closed unit disc."""
    side = max(2, int(round(np.sqrt(m))))
    radii = np.linspace(0.0, 1.0, side)
    angles = 2j * np.pi * np.arange(side) / side
    return (radii[:, None] * np.exp(angles)[None, :]).ravel()


class PhasarValue(float):
    """Phasar derivative as a plain float, carrying the imaginary-part diagnostic.

    For an inner function the quantity z f'(z)/f(z) is real on the circle;
    ``imag_residual`` records how far from real it actually was.
    """

    __slots__ = ("imag_residual",)

    def __new__(cls, value: float, imag_residual: float):
        obj = super().__new__(cls, value)
        obj.imag_residual = float(imag_residual)
        return obj


def phasar_derivative(f: RationalFn, z: complex, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> PhasarValue:
    """Rate of change of arg f(e^(i theta)) at z on the circle: Re(z f'(z)/f(z))."""
    z = complex(z)
    nz = poly_eval(f.num, z)
    dz = poly_eval(f.den, z)
    scale_n = max(1.0, float(np.max(np.abs(f.num.coeffs))) if not f.num.is_zero else 1.0)
    scale_d = max(1.0, float(np.max(np.abs(f.den.coeffs))))
    if abs(nz) <= tol.trim_tol * scale_n * 1e3:
        raise ZeroOrPoleAtPoint(f"function vanishes at {z}")
    if abs(dz) <= tol.trim_tol * scale_d * 1e3:
        raise ZeroOrPoleAtPoint(f"function has a pole at {z}")
    w = z * (poly_eval(f.num.derivative(), z) / nz - poly_eval(f.den.derivative(), z) / dz)
    return PhasarValue(w.real, abs(w.imag))


@dataclass(frozen=True)
class BlaschkeProduct:
    """Finite Blaschke product c * prod (lambda - zero_j)/(1 - conj(zero_j) lambda)."""

    unimodular_constant: complex
    zeros: tuple[complex, ...]

    @property
    def degree(self) -> int:
        return len(self.zeros)

    def __call__(self, z):
        z = np.asarray(z, dtype=complex)
        out = np.full_like(z, self.unimodular_constant)
        for a in self.zeros:
            out = out * (z - a) / (1.0 - np.conj(a) * z)
        if z.ndim == 0:
            return complex(out)
        return out

    def to_json_dict(self) -> dict:
        return {
            "constant": [self.unimodular_constant.real, self.unimodular_constant.imag],
            "zeros": [[a.real, a.imag] for a in self.zeros],
        }


@dataclass(frozen=True, eq=False)
class Parametrization:
    """Polynomials (a, b, c, d) normalized to the identity matrix at tau.

    For every unimodular zeta off the exceptional set, (a zeta + b)/(c zeta + d)
    is the unique degree-n solution of the interpolation problem taking the
    value zeta at tau.  ``exceptional`` caches the defining scalars so
    membership can be tested without the original Pick matrix.
    """

    a: Poly
    b: Poly
    c: Poly
    d: Poly
    tau: complex
    data_hash: str
    exceptional: ExceptionalSet

    @property
    def degree(self) -> int:
        return max(p.degree for p in (self.a, self.b, self.c, self.d))

    def normalization_residual(self) -> float:
        at = self.tau
        return max(
            abs(poly_eval(self.a, at) - 1.0),
            abs(poly_eval(self.b, at)),
            abs(poly_eval(self.c, at)),
            abs(poly_eval(self.d, at) - 1.0),
        )

    def to_json_dict(self) -> dict:
        return {
            "tau": [self.tau.real, self.tau.imag],
            "a": self.a.to_list(),
            "b": self.b.to_list(),
            "c": self.c.to_list(),
            "d": self.d.to_list(),
        }


def kernel_numerator_polynomials(M: PickMatrix, data: BlaschkeData, tau: complex, tol: TolerancePolicy = DEFAULT_TOLERANCES):
    """Numerator polynomials of the four kernel sums over the common product
    prod_j (1 - conj(sigma_j) lambda).

    Returns (n_xx, n_xy, n_yx, n_yy, product), each of degree at most n-1
    except the product itself.  The kernels are expanded symbolically; the
    simple poles never get sampled numerically.
    """
    kv = kernel_vectors(data, tau, tol)
    wx = solve_pd(M, kv.x, tol)
    wy = solve_pd(M, kv.y, tol)
    sigma = np.array(data.sigma)
    eta_bar = np.conj(np.array(data.eta))
    n = data.n

    partials = []
    for i in range(n):
        f = Poly([1.0])
        for l in range(n):
            if l != i:
                f = f * Poly([1.0, -np.conj(sigma[l])])
        partials.append(f)
    product = Poly([1.0])
    for l in range(n):
        product = product * Poly([1.0, -np.conj(sigma[l])])

    def assemble(weights):
        acc = Poly([])
        for i in range(n):
            acc = acc + complex(weights[i]) * partials[i]
        return acc

    n_xx = assemble(np.conj(wx))
    n_xy = assemble(np.conj(wy))
    n_yx = assemble(eta_bar * np.conj(wx))
    n_yy = assemble(eta_bar * np.conj(wy))
    return n_xx, n_xy, n_yx, n_yy, product


def build_parametrization(
    M: PickMatrix,
    data: BlaschkeData,
    tau: complex,
    tol: TolerancePolicy = DEFAULT_TOLERANCES,
) -> Parametrization:
    """Assemble the normalized quadruple (a, b, c, d) for base point tau.

    The assembly multiplies the kernel sums through by the common product of
    (1 - conj(sigma_j) lambda), so every coefficient is exact up to rounding.
    The documented invariants (normalization at tau, max degree n, no common
    zero, |c| <= |d| on the closed disc) are validated before returning.
    """
    tau = complex(tau / abs(tau))
    exc = exceptional_set(M, data, tau, tol)
    if exc.whole_circle:
        raise UnsuitableTau("every unimodular parameter is exceptional for this base point")

    n_xx, n_xy, n_yx, n_yy, product = kernel_numerator_polynomials(M, data, tau, tol)
    one_minus_tau = Poly([1.0, -np.conj(tau)])
    scale = poly_eval(product, tau)

    a = (product - one_minus_tau * n_xx) / scale
    b = (one_minus_tau * n_xy) / scale
    c = -1.0 * (one_minus_tau * n_yx) / scale
    d = (product + one_minus_tau * n_yy) / scale

    param = Parametrization(
        a=a, b=b, c=c, d=d, tau=tau, data_hash=data.canonical_digest(), exceptional=exc
    )

    res = param.normalization_residual()
    if res > tol.residual_tol:
        raise NumericalFailure(f"normalization at tau off by {res:.3e}")
    if param.degree != data.n:
        raise NumericalFailure(f"max degree {param.degree} != n = {data.n}")
    _check_no_common_zero(param, tol)
    _check_c_dominated_by_d(param, tol)
    return param


def _check_no_common_zero(param: Parametrization, tol: TolerancePolicy) -> None:
    quad = [param.a, param.b, param.c, param.d]
    if param.a.is_zero or param.a.degree < 1:
        return
    for rc in poly_roots(param.a, tol):
        shared = True
        for q in quad[1:]:
            if q.is_zero:
                continue
            if q.degree < 1:
                shared = False
                break
            if all(abs(rc.value - other.value) > tol.root_cluster_tol for other in poly_roots(q, tol)):
                shared = False
                break
        if shared:
            raise NumericalFailure(f"a, b, c, d share the zero {rc.value}")


def _check_c_dominated_by_d(param: Parametrization, tol: TolerancePolicy) -> None:
    grid = disc_grid(256)
    excess = np.abs(poly_eval(param.c, grid)) - np.abs(poly_eval(param.d, grid))
    worst = float(np.max(excess))
    if worst > tol.residual_tol:
        raise NumericalFailure(f"|c| exceeds |d| on the closed disc by {worst:.3e}")


def solve_blaschke(
    param: Parametrization,
    zeta: complex,
    tol: TolerancePolicy = DEFAULT_TOLERANCES,
) -> RationalFn:
    """Reduced solution (a zeta + b)/(c zeta + d) for a unimodular parameter zeta.

    Raises ExceptionalZeta when zeta sits inside the tolerance band of the
    defining scalar for some boundary node; the formula degenerates there.
    """
    zeta = complex(zeta)
    if abs(abs(zeta) - 1.0) > 1e-6:
        raise InvalidData(f"parameter zeta must be unimodular, |zeta| = {abs(zeta):.12g}")
    zeta = zeta / abs(zeta)
    for alpha, beta in param.exceptional.pairs:
        if abs(alpha - zeta * beta) <= EXCEPTIONAL_SCALAR_TOL * max(1.0, abs(alpha), abs(beta)):
            raise ExceptionalZeta(f"zeta = {zeta} is within tolerance of the exceptional set")
    num = zeta * param.a + param.b
    den = zeta * param.c + param.d
    return rat_reduce(RationalFn(num, den), tol)


def to_blaschke_product(f: RationalFn, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> BlaschkeProduct:
    """Recover the factored form of a rational inner function.

    The input must be unimodular on the circle grid; its numerator zeros must
    lie strictly inside the disc.  The unimodular constant is read off at the
    first circle point away from the zeros, and the factored form is checked
    against the input at 64 deterministic points before returning.
    """
    grid = circle_grid(256)
    vals = f(grid)
    worst = float(np.max(np.abs(np.abs(vals) - 1.0)))
    if worst > tol.residual_tol:
        raise NotInner(f"not unimodular on the circle: off by {worst:.3e}")

    reduced = rat_reduce(f, tol)
    zeros: list[complex] = []
    if reduced.num.degree >= 1:
        for rc in poly_roots(reduced.num, tol):
            if abs(rc.value) >= 1.0:
                raise NotInner(f"numerator zero {rc.value} is not inside the open disc")
            zeros.extend([rc.value] * rc.multiplicity)

    anchor = None
    for candidate in [1.0 + 0j, 1j, -1.0 + 0j, -1j, np.exp(0.7j)]:
        if all(abs(candidate - a) > 1e-3 for a in zeros):
            anchor = complex(candidate)
            break
    base = BlaschkeProduct(unimodular_constant=1.0 + 0j, zeros=tuple(zeros))
    constant = complex(reduced(anchor) / base(anchor))
    if abs(abs(constant) - 1.0) > tol.residual_tol:
        raise NotInner(f"recovered constant has modulus {abs(constant):.12g}")
    result = BlaschkeProduct(unimodular_constant=constant / abs(constant), zeros=tuple(zeros))

    rng = np.random.default_rng(41205)
    pts = rng.uniform(0.0, 1.0, 64) * np.exp(2j * np.pi * rng.uniform(0.0, 1.0, 64))
    drift = float(np.max(np.abs(f(pts) - result(pts))))
    if drift > tol.residual_tol * 10:
        raise NotInner(f"factored form disagrees with the input by {drift:.3e}")
    return result
