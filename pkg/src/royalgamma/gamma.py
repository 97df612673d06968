"""Geometry of the symmetrized bidisc and construction of rational maps into it
with prescribed royal nodes, values and boundary phasar derivatives.

The closed symmetrized bidisc is {(z+w, zw) : |z| <= 1, |w| <= 1}; its
distinguished boundary is cut out by |s| <= 2, |p| = 1, s = conj(s) p.  A map
h = (s, p) lands on the royal variety s^2 = 4p at its royal nodes; prescribing
those nodes, the values there and the phasar derivative of p at boundary nodes
determines h up to (at most) one unimodular parameter, which this module
solves for explicitly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from .blaschke import (
    Parametrization,
    build_parametrization,
    circle_grid,
    kernel_numerator_polynomials,
    phasar_derivative,
)
from .errors import (
    DenominatorZeroInDisc,
    InvalidData,
    MultiplicityAboveOne,
    NumericalFailure,
    PreconditionViolated,
    RoyalGammaError,
    RoyalRange,
    SingularPoint,
)
from .pick import (
    BlaschkeData,
    PositivityResult,
    build_pick_matrix,
    check_positive_definite,
    choose_tau,
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
    "GammaPoint",
    "PointClass",
    "classify_point",
    "phi_omega",
    "compose_phi_omega",
    "GammaInnerFn",
    "RoyalData",
    "FamilyMember",
    "S0P0Solution",
    "VerificationReport",
    "RoyalSolution",
    "RoyalPipelineResult",
    "solve_s0_p0",
    "construct_h",
    "royal_nodes",
    "extract_royal_data",
    "verify_royal_solution",
    "generate_h_nu",
    "solve_royal_problem",
    "gamma_inner_distance",
]


class GammaPoint(NamedTuple):
    s: complex
    p: complex


class PointClass(enum.Enum):
    INTERIOR_G = "interior_G"
    BOUNDARY_GAMMA = "boundary_Gamma"
    DISTINGUISHED_BGAMMA = "distinguished_bGamma"
    OUTSIDE = "outside"


def classify_point(pt, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> PointClass:
    """Membership test for the symmetrized bidisc.

    (s, p) lies in the closed set iff |s| <= 2 and |s - conj(s) p| <= 1 - |p|^2;
    it lies on the distinguished boundary iff additionally |p| = 1 and
    s = conj(s) p.  Strict inequalities with margin classify the interior.
    """
    s, p = complex(pt[0]), complex(pt[1])
    t = tol.residual_tol
    sym = abs(s - np.conj(s) * p)
    if abs(abs(p) - 1.0) <= t and sym <= t and abs(s) <= 2.0 + t:
        return PointClass.DISTINGUISHED_BGAMMA
    slack = 1.0 - abs(p) ** 2
    if abs(s) <= 2.0 + t and sym <= slack + t:
        if abs(s) < 2.0 - t and sym < slack - t:
            return PointClass.INTERIOR_G
        return PointClass.BOUNDARY_GAMMA
    return PointClass.OUTSIDE


def phi_omega(omega: complex, pt, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> complex:
    """The linear-fractional functional (2 omega p - s)/(2 - omega s)."""
    s, p = complex(pt[0]), complex(pt[1])
    omega = complex(omega)
    den = 2.0 - omega * s
    if abs(den) < tol.trim_tol * max(1.0, abs(s)):
        raise SingularPoint(f"(s, p) sits at the singularity of the omega = {omega} functional")
    return (2.0 * omega * p - s) / den


@dataclass(frozen=True, eq=False)
class GammaInnerFn:
    """Pair of rational functions (s, p) over one shared denominator.

    Invariants (validated by :meth:`from_numerators`): the denominator has no
    zeros in the closed unit disc, and on the circle |p| = 1, s = conj(s) p
    and |s| <= 2 hold within the residual tolerance.
    """

    s: RationalFn
    p: RationalFn

    @property
    def den(self) -> Poly:
        return self.p.den

    @property
    def degree(self) -> int:
        return self.p.degree

    def __call__(self, z) -> GammaPoint:
        return GammaPoint(self.s(z), self.p(z))

    @classmethod
    def from_numerators(
        cls,
        num_s: Poly,
        num_p: Poly,
        den: Poly,
        tol: TolerancePolicy = DEFAULT_TOLERANCES,
        reduce: bool = True,
        validate: bool = True,
    ) -> "GammaInnerFn":
        """Build from the shared-denominator representation.

        Joint reduction cancels a denominator root only when both numerators
        share it; the denominator is then made monic.
        """
        if den.is_zero:
            raise ZeroDivisionError("shared denominator is the zero polynomial")
        if reduce:
            num_s, num_p, den = _joint_reduce(num_s, num_p, den, tol)
        lead = den.leading
        num_s, num_p, den = num_s / lead, num_p / lead, den / lead
        if validate:
            _validate_gamma_inner(num_s, num_p, den, tol)
        return cls(s=RationalFn(num_s, den), p=RationalFn(num_p, den))

    def to_json_dict(self) -> dict:
        return {
            "s": self.s.to_json_dict(),
            "p": self.p.to_json_dict(),
            "degree": self.degree,
        }

    @classmethod
    def from_json_dict(cls, obj, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> "GammaInnerFn":
        try:
            s = RationalFn.from_json_dict(obj["s"])
            p = RationalFn.from_json_dict(obj["p"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidData(f"malformed map: {exc}") from exc
        n = max(s.den.coeffs.size, p.den.coeffs.size)
        pad_s = np.zeros(n, dtype=complex)
        pad_p = np.zeros(n, dtype=complex)
        pad_s[: s.den.coeffs.size] = s.den.coeffs
        pad_p[: p.den.coeffs.size] = p.den.coeffs
        scale = max(1.0, float(np.max(np.abs(pad_p))))
        if np.max(np.abs(pad_s - pad_p)) > 1e-9 * scale:
            raise InvalidData("components do not share a common denominator")
        try:
            return cls.from_numerators(s.num, p.num, p.den, tol)
        except RoyalGammaError as exc:
            raise InvalidData(f"not a valid map into the symmetrized bidisc: {exc}") from exc


def _coeff_max(p: Poly) -> float:
    if p.is_zero:
        return 0.0
    return float(np.max(np.abs(p.coeffs)))


def _mult_near(clusters, value: complex, tol: TolerancePolicy) -> int:
    for rc in clusters:
        if abs(rc.value - value) <= tol.root_cluster_tol:
            return rc.multiplicity
    return 0


def _joint_reduce(num_s: Poly, num_p: Poly, den: Poly, tol: TolerancePolicy):
    if den.degree < 1:
        return num_s, num_p, den
    den_clusters = poly_roots(den, tol)
    s_clusters = poly_roots(num_s, tol) if num_s.degree >= 1 else []
    p_clusters = poly_roots(num_p, tol) if num_p.degree >= 1 else []
    cancels: list[tuple[complex, int]] = []
    for rc in den_clusters:
        ms = rc.multiplicity if num_s.is_zero else _mult_near(s_clusters, rc.value, tol)
        mp = rc.multiplicity if num_p.is_zero else _mult_near(p_clusters, rc.value, tol)
        m = min(rc.multiplicity, ms, mp)
        if m > 0:
            cancels.append((rc.value, m))
    if not cancels:
        return num_s, num_p, den

    def strip(poly: Poly, clusters) -> Poly:
        if poly.is_zero:
            return poly
        if poly.degree < 1:
            return poly
        roots: list[complex] = []
        for rc in clusters:
            m = rc.multiplicity
            for value, cut in cancels:
                if abs(rc.value - value) <= tol.root_cluster_tol:
                    m -= cut
            roots.extend([rc.value] * max(m, 0))
        return Poly.from_roots(roots, leading=poly.leading)

    return strip(num_s, s_clusters), strip(num_p, p_clusters), strip(den, den_clusters)


def _validate_gamma_inner(num_s: Poly, num_p: Poly, den: Poly, tol: TolerancePolicy) -> None:
    if den.degree >= 1:
        min_mod = min(abs(rc.value) for rc in poly_roots(den, tol))
        if min_mod <= 1.0 + tol.root_cluster_tol:
            raise DenominatorZeroInDisc(f"denominator root of modulus {min_mod:.12g} in the closed disc")
    grid = circle_grid(256)
    dv = poly_eval(den, grid)
    sv = poly_eval(num_s, grid) / dv
    pv = poly_eval(num_p, grid) / dv
    p_uni = float(np.max(np.abs(np.abs(pv) - 1.0)))
    sym = float(np.max(np.abs(sv - np.conj(sv) * pv)))
    s_excess = float(np.max(np.abs(sv)) - 2.0)
    if p_uni > tol.residual_tol or sym > tol.residual_tol or s_excess > tol.residual_tol:
        raise NumericalFailure(
            f"boundary identities violated: | |p|-1 | = {p_uni:.3e}, "
            f"|s - conj(s) p| = {sym:.3e}, |s| - 2 = {s_excess:.3e}"
        )


def royal_polynomial(h: GammaInnerFn) -> tuple[Poly, float]:
    """Numerator of s^2 - 4p over the shared denominator, with its natural scale."""
    num_s, num_p, den = h.s.num, h.p.num, h.den
    ss = num_s * num_s
    pd4 = 4.0 * (num_p * den)
    scale = max(_coeff_max(ss), _coeff_max(pd4), 1e-300)
    return ss - pd4, scale


def _is_royal_range(h: GammaInnerFn, tol: TolerancePolicy) -> bool:
    royal, scale = royal_polynomial(h)
    return royal.is_zero or _coeff_max(royal) <= 100 * tol.trim_tol * scale


def compose_phi_omega(omega: complex, h: GammaInnerFn, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> RationalFn:
    """The rational function (2 omega p - s)/(2 - omega s), reduced."""
    omega = complex(omega)
    num = 2.0 * omega * h.p.num - h.s.num
    den = 2.0 * h.den - omega * h.s.num
    return rat_reduce(RationalFn(num, den), tol)


@dataclass(frozen=True)
class RoyalData:
    """Royal nodes of a map, boundary nodes first, with values and multiplicities.

    Boundary multiplicity is half the order of the corresponding zero of the
    royal polynomial; the type pair records (total multiplicity in the closed
    disc, multiplicity on the circle).
    """

    nodes: tuple[tuple[complex, int], ...]
    values: tuple[complex, ...]
    boundary_rho: tuple[float, ...]
    type_pair: tuple[int, int]

    @property
    def boundary_count(self) -> int:
        return self.type_pair[1]


def _angle_key(z: complex) -> float:
    return float(np.angle(z) % (2.0 * np.pi))


def royal_nodes(h: GammaInnerFn, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> RoyalData:
    """Locate the royal nodes of ``h`` inside the closed disc.

    Zeros of the royal polynomial within 10 * root_cluster_tol of the circle
    are snapped onto it and must have even order (half of which is the royal
    multiplicity); the multiplicities over the closed disc must sum to the
    degree of the map.

    Raises RoyalRange when s^2 - 4p vanishes identically: then every point of
    the disc is royal and enumeration is meaningless.
    """
    royal, scale = royal_polynomial(h)
    if royal.is_zero or _coeff_max(royal) <= 100 * tol.trim_tol * scale:
        raise RoyalRange("s^2 - 4p vanishes identically; the map sends the disc into the royal variety")
    snap_band = 10.0 * tol.root_cluster_tol
    boundary: list[tuple[complex, int]] = []
    interior: list[tuple[complex, int]] = []
    for rc in poly_roots(royal, tol):
        mod = abs(rc.value)
        if abs(mod - 1.0) <= snap_band:
            if rc.multiplicity % 2 != 0:
                raise NumericalFailure(
                    f"royal zero {rc.value} on the circle has odd order {rc.multiplicity}"
                )
            boundary.append((rc.value / mod, rc.multiplicity // 2))
        elif mod < 1.0:
            interior.append((rc.value, rc.multiplicity))
    boundary.sort(key=lambda item: _angle_key(item[0]))
    interior.sort(key=lambda item: (_angle_key(item[0]), abs(item[0])))

    k = sum(m for _, m in boundary)
    n = k + sum(m for _, m in interior)
    if n != h.degree:
        raise NumericalFailure(
            f"royal multiplicities in the closed disc sum to {n}, expected the degree {h.degree}"
        )

    nodes = tuple(boundary + interior)
    values = []
    rho = []
    for idx, (node, _mult) in enumerate(nodes):
        eta = -h.s(node) / 2.0
        on_circle = idx < len(boundary)
        if on_circle:
            if abs(abs(eta) - 1.0) > tol.residual_tol:
                raise NumericalFailure(f"royal value at boundary node {node} has modulus {abs(eta):.12g}")
            eta = eta / abs(eta)
        square_gap = abs(h.p(node) - eta * eta)
        if square_gap > tol.residual_tol:
            raise NumericalFailure(f"p(node) != value^2 at {node}: off by {square_gap:.3e}")
        values.append(eta)
        if on_circle:
            rho.append(0.5 * float(phasar_derivative(h.p, node, tol)))
    return RoyalData(
        nodes=nodes,
        values=tuple(values),
        boundary_rho=tuple(rho),
        type_pair=(n, k),
    )


def extract_royal_data(h: GammaInnerFn, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> BlaschkeData:
    """Interpolation data read off a map: nodes, values, and half the phasar
    derivative of p at each boundary node.  All multiplicities must be one."""
    rd = royal_nodes(h, tol)
    if any(m > 1 for _, m in rd.nodes):
        worst = max(m for _, m in rd.nodes)
        raise MultiplicityAboveOne(f"royal node of multiplicity {worst}; only simple nodes are supported")
    sigma = tuple(node for node, _ in rd.nodes)
    return BlaschkeData(sigma=sigma, eta=rd.values, rho=rd.boundary_rho, k=rd.boundary_count)


class FamilyMember(NamedTuple):
    omega: complex | None
    t: float | None
    s0: complex
    p0: complex


@dataclass(frozen=True)
class S0P0Solution:
    """Outcome of the base-value solve: a unique pair, a one-parameter family,
    or no admissible pair at all.

    ``row`` holds the single scalar equation c*u + g*v + b = 0 (u = omega^2,
    v = t*omega) in the family case.  ``residual`` is the least-squares or
    constraint-violation size backing a "none" verdict.
    """

    kind: str  # "unique" | "family" | "none"
    residual: float
    s0: complex | None = None
    p0: complex | None = None
    omega: complex | None = None
    t: float | None = None
    row: tuple[complex, complex, complex] | None = None
    degenerate: bool = False
    singular_values: tuple[float, ...] = ()
    notes: tuple[str, ...] = ()

    def member(self, omega: complex, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> FamilyMember | None:
        """Family member at a unimodular omega, or None when t fails to be
        real in (-1, 1) there."""
        if self.kind != "family":
            raise ValueError("member() applies to family solutions only")
        omega = complex(omega)
        omega = omega / abs(omega)
        u = omega * omega
        if self.degenerate:
            return FamilyMember(omega, 0.0, 0j, u)
        c, g, b = self.row
        row_scale = max(abs(c), abs(g), abs(b), 1.0)
        if abs(g) <= tol.trim_tol * row_scale:
            return None
        v = -(c * u + b) / g
        t_complex = v * np.conj(omega)
        if abs(t_complex.imag) > tol.residual_tol:
            return None
        t = float(t_complex.real)
        if abs(t) >= 1.0:
            return None
        return FamilyMember(omega, t, 2.0 * t * omega, u)


def solve_s0_p0(
    param: Parametrization,
    data: BlaschkeData,
    tol: TolerancePolicy = DEFAULT_TOLERANCES,
) -> S0P0Solution:
    """Solve for base values (s0, p0) on the distinguished boundary with |s0| < 2.

    Writing s0 = 2 t omega, p0 = omega^2, the degree-(n-1) coefficient
    polynomials of the defining identity stack into an n x 3 system
    [Q_c | Q_g | Q_b] in the unknowns u = omega^2, v = t omega.  Rank
    decisions use singular values against pd_tol times the largest one;
    near-threshold values are reported in ``notes`` rather than silently
    resolved.
    """
    if param.data_hash != data.canonical_digest():
        raise InvalidData("parametrization was built from different interpolation data")
    M = build_pick_matrix(data, tol)
    n_xx, n_xy, n_yx, n_yy, _ = kernel_numerator_polynomials(M, data, param.tau, tol)
    q_g = n_xx + n_yy
    n = data.n
    stacked = np.zeros((n, 3), dtype=complex)
    for col, poly in enumerate((n_yx, q_g, n_xy)):
        stacked[: poly.coeffs.size, col] = poly.coeffs

    sv_full = np.linalg.svd(stacked, compute_uv=False)
    scale = float(sv_full[0]) if sv_full.size else 0.0
    singular_values = tuple(float(s) for s in sv_full)
    if scale == 0.0:
        return S0P0Solution(
            kind="family", residual=0.0, degenerate=True, singular_values=singular_values,
            notes=("identity vanishes identically; every admissible pair works",),
        )
    thr = tol.pd_tol * scale
    notes = tuple(
        f"singular value {float(s):.3e} is near the rank threshold {thr:.3e}"
        for s in sv_full
        if thr / 10.0 < float(s) < thr * 10.0
    )
    rank_full = int(np.count_nonzero(sv_full > thr))

    lhs = stacked[:, :2]
    rhs = -stacked[:, 2]
    sv_lhs = np.linalg.svd(lhs, compute_uv=False)
    rank_lhs = int(np.count_nonzero(sv_lhs > thr))

    if rank_full == 0:
        return S0P0Solution(
            kind="family", residual=0.0, degenerate=True,
            singular_values=singular_values, notes=notes,
        )
    if rank_lhs == 0:
        res = float(np.linalg.norm(rhs)) / scale
        return S0P0Solution(kind="none", residual=res, singular_values=singular_values, notes=notes)
    if rank_lhs == 1:
        if rank_full >= 2:
            sol, *_ = np.linalg.lstsq(lhs, rhs, rcond=tol.pd_tol)
            res = float(np.linalg.norm(lhs @ sol - rhs)) / scale
            return S0P0Solution(kind="none", residual=res, singular_values=singular_values, notes=notes)
        idx = int(np.argmax(np.linalg.norm(stacked, axis=1)))
        c, g, b = (complex(stacked[idx, j]) for j in range(3))
        return S0P0Solution(
            kind="family", residual=0.0, row=(c, g, b),
            singular_values=singular_values, notes=notes,
        )

    # full-rank left-hand side: at most one candidate pair
    sol, *_ = np.linalg.lstsq(lhs, rhs, rcond=None)
    u, v = complex(sol[0]), complex(sol[1])
    res = float(np.linalg.norm(lhs @ sol - rhs)) / scale
    if res > tol.residual_tol:
        return S0P0Solution(kind="none", residual=res, singular_values=singular_values, notes=notes)
    unimodularity = abs(abs(u) - 1.0)
    if unimodularity > tol.residual_tol:
        return S0P0Solution(
            kind="none", residual=max(res, unimodularity),
            singular_values=singular_values,
            notes=notes + (f"unique candidate has |omega^2| = {abs(u):.12g}",),
        )
    omega = complex(np.sqrt(u / abs(u)))
    t_complex = v * np.conj(omega)
    if abs(t_complex.imag) > tol.residual_tol:
        return S0P0Solution(
            kind="none", residual=max(res, abs(t_complex.imag)),
            singular_values=singular_values,
            notes=notes + ("unique candidate has non-real t",),
        )
    t = float(t_complex.real)
    if abs(t) >= 1.0:
        return S0P0Solution(
            kind="none", residual=max(res, abs(t) - 1.0),
            singular_values=singular_values,
            notes=notes + (f"unique candidate has |t| = {abs(t):.12g} >= 1",),
        )
    p0 = u / abs(u)
    s0 = 2.0 * t * omega
    return S0P0Solution(
        kind="unique", residual=res, s0=s0, p0=p0, omega=omega, t=t,
        singular_values=singular_values, notes=notes,
    )


def construct_h(
    param: Parametrization,
    s0: complex,
    p0: complex,
    tol: TolerancePolicy = DEFAULT_TOLERANCES,
) -> GammaInnerFn:
    """Assemble the map with base values (s0, p0) from the parametrization:

        s = 2 (2 p0 c - s0 d)/(s0 c - 2 d),  p = (-2 p0 a + s0 b)/(s0 c - 2 d).

    The inputs must satisfy |p0| = 1, s0 = conj(s0) p0, |s0| < 2 and the
    defining identity s0 a - 2 b + 2 p0 c - s0 d = 0 within tolerance.
    """
    s0, p0 = complex(s0), complex(p0)
    if abs(abs(p0) - 1.0) > tol.residual_tol:
        raise PreconditionViolated(f"|p0| = {abs(p0):.12g} is not 1")
    p0 = p0 / abs(p0)
    if abs(s0) >= 2.0:
        raise PreconditionViolated(f"|s0| = {abs(s0):.12g} is not below 2")
    if abs(s0 - np.conj(s0) * p0) > tol.residual_tol * max(1.0, abs(s0)):
        raise PreconditionViolated("s0 != conj(s0) p0: the pair is off the distinguished boundary")
    identity = s0 * param.a - 2.0 * param.b + 2.0 * p0 * param.c - s0 * param.d
    scale = max(_coeff_max(param.a), _coeff_max(param.b), _coeff_max(param.c), _coeff_max(param.d), 1.0)
    if _coeff_max(identity) > tol.residual_tol * 4.0 * scale:
        raise PreconditionViolated(
            f"defining identity violated by {_coeff_max(identity):.3e} (scale {scale:.3e})"
        )

    num_s = 2.0 * (2.0 * p0 * param.c - s0 * param.d)
    num_p = -2.0 * p0 * param.a + s0 * param.b
    den = s0 * param.c - 2.0 * param.d
    h = GammaInnerFn.from_numerators(num_s, num_p, den, tol)
    if _is_royal_range(h, tol):
        raise RoyalRange("constructed map degenerates into the royal variety")
    anchor_gap = max(abs(h.s(param.tau) - s0), abs(h.p(param.tau) - p0))
    if anchor_gap > 1e-6:
        raise NumericalFailure(f"constructed map misses its base values by {anchor_gap:.3e}")
    return h


def generate_h_nu(nu: int, r: float, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> GammaInnerFn:
    """Test-generator family of degree 2 nu + 2 and type (2 nu + 2, 2 nu + 1):

        s = 2 (1 - r) lambda^(nu+1) / (1 + r lambda^(2 nu + 1)),
        p = lambda (lambda^(2 nu + 1) + r) / (1 + r lambda^(2 nu + 1)).

    Boundary royal nodes are the (2 nu + 1)-th roots of -1, plus a simple
    interior node at 0.
    """
    if nu < 0 or not isinstance(nu, (int, np.integer)):
        raise InvalidData("nu must be a non-negative integer")
    if not 0.0 < r < 1.0:
        raise InvalidData("r must lie strictly between 0 and 1")
    m = 2 * nu + 1
    den = np.zeros(m + 1, dtype=complex)
    den[0], den[m] = 1.0, r
    num_s = np.zeros(nu + 2, dtype=complex)
    num_s[nu + 1] = 2.0 * (1.0 - r)
    num_p = np.zeros(m + 2, dtype=complex)
    num_p[1], num_p[m + 1] = r, 1.0
    return GammaInnerFn.from_numerators(Poly(num_s), Poly(num_p), Poly(den), tol)


@dataclass(frozen=True)
class VerificationReport:
    """Named residuals for every checkable property of a candidate solution."""

    residuals: dict
    degree_expected: int
    degree_actual: int
    denominator_min_root_modulus: float
    royal_range: bool
    passed: bool
    failures: tuple[str, ...]
    pass_tol: float

    def to_json_dict(self) -> dict:
        return {
            "pass": self.passed,
            "residuals": {k: float(v) for k, v in self.residuals.items()},
            "degree": {"expected": self.degree_expected, "actual": self.degree_actual},
            "denominator_min_root_modulus": float(self.denominator_min_root_modulus),
            "royal_range": self.royal_range,
            "failures": list(self.failures),
            "pass_tol": self.pass_tol,
        }


def _phi_check_omegas(h: GammaInnerFn, data: BlaschkeData) -> np.ndarray:
    """Eight deterministic probe points staying away from the removable
    singularities -conj(eta_j) and from near-poles of the composed function."""
    forbidden = [-np.conj(data.eta[j]) for j in range(data.k)]
    sigma = np.array(data.sigma)
    s_at_nodes = h.s(sigma)
    for shift in range(300):
        probes = np.exp(1j * (np.pi * (2.0 * np.arange(8) + 1.0) / 8.0 + 0.0137 * shift))
        ok = all(abs(w - f) > 0.05 for w in probes for f in forbidden)
        if ok:
            # keep |2 - omega s| bounded away from zero at every node
            margins = np.abs(2.0 - probes[:, None] * s_at_nodes[None, :])
            ok = bool(np.all(margins > 0.02))
        if ok:
            return probes
    raise NumericalFailure("could not place probe points away from all singularities")


def verify_royal_solution(
    h: GammaInnerFn,
    data: BlaschkeData,
    tol: TolerancePolicy = DEFAULT_TOLERANCES,
    pass_tol: float | None = None,
) -> VerificationReport:
    """Structured residuals for every requirement the constructed map must meet.

    Checks, in order: interpolation of nodes and values, phasar derivative of
    p at boundary nodes, the three boundary identities on a 256-point circle
    grid, reduced degree, the composed linear-fractional cross-check at eight
    probe parameters, and the pole locations.  ``passed`` is true iff every
    residual is at most ``pass_tol`` and the structural checks hold.
    """
    pass_tol = tol.residual_tol if pass_tol is None else float(pass_tol)
    residuals: dict[str, float] = {}
    failures: list[str] = []

    royal_range = _is_royal_range(h, tol)

    sigma = np.array(data.sigma)
    eta = np.array(data.eta)
    s_vals = h.s(sigma)
    p_vals = h.p(sigma)
    residuals["interp_s_max"] = float(np.max(np.abs(s_vals + 2.0 * eta)))
    residuals["interp_p_max"] = float(np.max(np.abs(p_vals - eta * eta)))

    if data.k:
        worst = 0.0
        for j in range(data.k):
            ap = float(phasar_derivative(h.p, data.sigma[j], tol))
            worst = max(worst, abs(ap - 2.0 * data.rho[j]))
        residuals["phasar_p_max"] = worst

    grid = circle_grid(256)
    sv = h.s(grid)
    pv = h.p(grid)
    residuals["circle_p_unimodular_max"] = float(np.max(np.abs(np.abs(pv) - 1.0)))
    residuals["circle_s_symmetry_max"] = float(np.max(np.abs(sv - np.conj(sv) * pv)))
    residuals["circle_s_bound_excess"] = float(max(np.max(np.abs(sv)) - 2.0, 0.0))

    degree_actual = h.degree
    if degree_actual != data.n:
        failures.append(f"degree {degree_actual} != {data.n}")

    if not royal_range:
        try:
            probes = _phi_check_omegas(h, data)
            interp_worst = 0.0
            phasar_worst = 0.0
            for omega in probes:
                composed = compose_phi_omega(omega, h, tol)
                values = composed(sigma)
                interp_worst = max(interp_worst, float(np.max(np.abs(values - eta))))
                for j in range(data.k):
                    a_composed = float(phasar_derivative(composed, data.sigma[j], tol))
                    phasar_worst = max(phasar_worst, abs(a_composed - data.rho[j]))
            residuals["phi_omega_interp_max"] = interp_worst
            if data.k:
                residuals["phi_omega_phasar_max"] = phasar_worst
        except RoyalGammaError as exc:
            failures.append(f"composed cross-check failed: {exc}")
    else:
        failures.append("royal_range")

    if h.den.degree >= 1:
        den_min = min(abs(rc.value) for rc in poly_roots(h.den, tol))
    else:
        den_min = float("inf")
    if den_min <= 1.0:
        failures.append(f"denominator root of modulus {den_min:.12g} inside the closed disc")

    for name, value in residuals.items():
        if value > pass_tol:
            failures.append(f"{name} = {value:.3e} exceeds {pass_tol:.1e}")
    passed = not failures
    return VerificationReport(
        residuals=residuals,
        degree_expected=data.n,
        degree_actual=degree_actual,
        denominator_min_root_modulus=den_min,
        royal_range=royal_range,
        passed=passed,
        failures=tuple(failures),
        pass_tol=pass_tol,
    )


@dataclass(frozen=True)
class RoyalSolution:
    omega: complex | None
    t: float | None
    s0: complex
    p0: complex
    h: GammaInnerFn
    report: VerificationReport


@dataclass(frozen=True)
class RoyalPipelineResult:
    status: str  # "solved" | "not_solvable"
    failed_step: int | None
    reason: str | None
    data: BlaschkeData
    positivity: PositivityResult | None = None
    tau: complex | None = None
    parametrization: Parametrization | None = None
    s0p0: S0P0Solution | None = None
    solutions: tuple[RoyalSolution, ...] = ()
    skipped: tuple[str, ...] = ()

    @property
    def verified(self) -> tuple[RoyalSolution, ...]:
        return tuple(s for s in self.solutions if s.report.passed)


def solve_royal_problem(
    data: BlaschkeData,
    tol: TolerancePolicy = DEFAULT_TOLERANCES,
    omega_grid: int = 256,
    tau_start: int = 1,
    extra_omegas: tuple[complex, ...] = (),
    extra_omegas_fn: Callable[[complex], tuple[complex, ...]] | None = None,
    pass_tol: float | None = None,
) -> RoyalPipelineResult:
    """End-to-end solve: Pick matrix, positivity, base point, parametrization,
    base values, construction, verification.

    A unique base-value pair gives one solution; a family is sampled on an
    ``omega_grid``-point circle grid (plus any caller-supplied extras, e.g.
    an exact parameter computed from a candidate solution)."""
    M = build_pick_matrix(data, tol)
    positivity = check_positive_definite(M, tol)
    if positivity.kind != "definite":
        return RoyalPipelineResult(
            status="not_solvable",
            failed_step=1,
            reason=f"Pick matrix is {positivity.kind} (min eigenvalue {positivity.min_eigenvalue:.6g})",
            data=data,
            positivity=positivity,
        )
    tau = choose_tau(M, data, tol, start=tau_start)
    param = build_parametrization(M, data, tau, tol)
    s0p0 = solve_s0_p0(param, data, tol)
    if s0p0.kind == "none":
        return RoyalPipelineResult(
            status="not_solvable",
            failed_step=3,
            reason=f"no admissible base values (s0, p0); residual {s0p0.residual:.6g}",
            data=data,
            positivity=positivity,
            tau=tau,
            parametrization=param,
            s0p0=s0p0,
        )
    if s0p0.kind == "unique":
        members = [FamilyMember(s0p0.omega, s0p0.t, s0p0.s0, s0p0.p0)]
    else:
        omegas = list(circle_grid(omega_grid)) + list(extra_omegas)
        if extra_omegas_fn is not None:
            omegas.extend(extra_omegas_fn(tau))
        members = []
        for omega in omegas:
            found = s0p0.member(omega, tol)
            if found is not None:
                members.append(found)
    solutions: list[RoyalSolution] = []
    skipped: list[str] = []
    for mem in members:
        try:
            h = construct_h(param, mem.s0, mem.p0, tol)
        except RoyalGammaError as exc:
            skipped.append(f"omega = {mem.omega}: {exc}")
            continue
        report = verify_royal_solution(h, data, tol, pass_tol)
        solutions.append(RoyalSolution(mem.omega, mem.t, mem.s0, mem.p0, h, report))
    if not solutions:
        detail = "the family accepted no member with real t in (-1, 1) on the sampled grid"
        if skipped:
            detail = f"all accepted members failed construction: {'; '.join(skipped[:3])}"
        return RoyalPipelineResult(
            status="not_solvable",
            failed_step=3,
            reason=detail,
            data=data,
            positivity=positivity,
            tau=tau,
            parametrization=param,
            s0p0=s0p0,
            skipped=tuple(skipped),
        )
    return RoyalPipelineResult(
        status="solved",
        failed_step=None,
        reason=None,
        data=data,
        positivity=positivity,
        tau=tau,
        parametrization=param,
        s0p0=s0p0,
        solutions=tuple(solutions),
        skipped=tuple(skipped),
    )


def gamma_inner_distance(h1: GammaInnerFn, h2: GammaInnerFn) -> float:
    """Max coefficient gap between the shared-denominator representations.

    Both maps are compared in the canonical (reduced, monic-denominator) form
    they are constructed in; maps of different degree are infinitely far apart.
    """
    if h1.degree != h2.degree:
        return float("inf")
    worst = 0.0
    for left, right in ((h1.s.num, h2.s.num), (h1.p.num, h2.p.num), (h1.den, h2.den)):
        size = max(left.coeffs.size, right.coeffs.size)
        a = np.zeros(size, dtype=complex)
        b = np.zeros(size, dtype=complex)
        a[: left.coeffs.size] = left.coeffs
        b[: right.coeffs.size] = right.coeffs
        if size:
            worst = max(worst, float(np.max(np.abs(a - b))))
    return worst
