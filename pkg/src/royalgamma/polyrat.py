"""Complex polynomial and rational-function arithmetic with an explicit tolerance policy.

Polynomials are stored densely in ascending powers.  All values are immutable
after construction and every operation is pure, so concurrent reads are safe.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import NumericalFailure, ZeroPolynomial

__all__ = [
    "TolerancePolicy",
    "DEFAULT_TOLERANCES",
    "Poly",
    "RationalFn",
    "RootCluster",
    "poly_eval",
    "poly_derivative",
    "poly_roots",
    "rat_reduce",
]


@dataclass(frozen=True)
class TolerancePolicy:
    """Numeric tolerances used throughout the package.

    Parameters
    ----------
    trim_tol : float
        Relative threshold for trimming trailing polynomial coefficients;
        a coefficient is negligible when its modulus is below
        ``trim_tol * max(|coeffs|)``.
    root_cluster_tol : float
        Radius used to merge nearby roots into one cluster; the cluster size
        is the reported multiplicity.
    residual_tol : float
        Pass/fail threshold for verification residuals.
    pd_tol : float
        Margin for positive-definiteness and matrix-rank decisions.
    """

    trim_tol: float = 1e-12
    root_cluster_tol: float = 1e-7
    residual_tol: float = 1e-8
    pd_tol: float = 1e-10

    def __post_init__(self):
        for name in ("trim_tol", "root_cluster_tol", "residual_tol", "pd_tol"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


DEFAULT_TOLERANCES = TolerancePolicy()


def _trim_coeffs(coeffs: np.ndarray, trim_tol: float) -> np.ndarray:
    coeffs = np.atleast_1d(np.asarray(coeffs, dtype=complex)).ravel()
    if coeffs.size == 0:
        return coeffs
    scale = np.max(np.abs(coeffs))
    if scale == 0.0:
        return coeffs[:0]
    keep = coeffs.size
    while keep > 0 and abs(coeffs[keep - 1]) <= trim_tol * scale:
        keep -= 1
    return coeffs[:keep].copy()


class Poly:
    """Dense complex polynomial, coefficient of lambda**j at index j.

    The zero polynomial is represented by an empty coefficient array and has
    degree -1 (the distinguished sentinel).  Trailing coefficients below the
    relative trim tolerance are dropped at construction.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[complex], trim_tol: float = DEFAULT_TOLERANCES.trim_tol):
        trimmed = _trim_coeffs(np.asarray(list(coeffs) if not isinstance(coeffs, np.ndarray) else coeffs), trim_tol)
        trimmed.setflags(write=False)
        object.__setattr__(self, "coeffs", trimmed)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    @property
    def degree(self) -> int:
        return self.coeffs.size - 1

    @property
    def is_zero(self) -> bool:
        return self.coeffs.size == 0

    @property
    def leading(self) -> complex:
        if self.is_zero:
            return 0j
        return complex(self.coeffs[-1])

    def __call__(self, z):
        return poly_eval(self, z)

    def derivative(self) -> "Poly":
        return poly_derivative(self)

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if a.size < b.size:
            a, b = b, a
        out = a.astype(complex).copy()
        out[: b.size] += b
        return Poly(out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        return Poly(-self.coeffs)

    def __mul__(self, other):
        if isinstance(other, Poly):
            if self.is_zero or other.is_zero:
                return Poly([])
            return Poly(np.convolve(self.coeffs, other.coeffs))
        return Poly(self.coeffs * complex(other))

    def __rmul__(self, other):
        return self.__mul__(other)

    def __truediv__(self, scalar) -> "Poly":
        return Poly(self.coeffs / complex(scalar))

    def __repr__(self):
        return f"Poly({np.array2string(self.coeffs, separator=', ')})"

    @classmethod
    def from_roots(cls, roots: Iterable[complex], leading: complex = 1.0) -> "Poly":
        coeffs = np.array([complex(leading)])
        for r in roots:
            coeffs = np.convolve(coeffs, np.array([-complex(r), 1.0]))
        return cls(coeffs)

    def to_list(self) -> list:
        """Serialize as a JSON-friendly list of [re, im] pairs, ascending powers."""
        return [[float(c.real), float(c.imag)] for c in self.coeffs]

    @classmethod
    def from_list(cls, pairs) -> "Poly":
        return cls([complex(re, im) for re, im in pairs])


def poly_eval(p: Poly, z):
    """Horner evaluation of ``p`` at a scalar or array argument."""
    z = np.asarray(z, dtype=complex)
    out = np.zeros_like(z)
    for c in p.coeffs[::-1]:
        out = out * z + c
    if z.ndim == 0:
        return complex(out)
    return out


def poly_derivative(p: Poly) -> Poly:
    """Coefficient-shifted derivative; the zero and constant cases give zero."""
    if p.coeffs.size <= 1:
        return Poly([])
    n = p.coeffs.size
    return Poly(p.coeffs[1:] * np.arange(1, n))


class RootCluster(NamedTuple):
    value: complex
    multiplicity: int
    residual: float


def poly_roots(p: Poly, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> list[RootCluster]:
    """All roots of ``p`` counted with multiplicity.

    Roots come from the eigenvalues of the balanced companion matrix, each
    polished with one Newton step.  Roots closer than ``tol.root_cluster_tol``
    are merged into a single cluster whose size is the reported multiplicity;
    the cluster centroid is the reported value and ``|p(value)|`` its residual.

    Raises
    ------
    ZeroPolynomial
        If ``p`` is identically zero (roots are undefined).
    """
    if p.is_zero:
        raise ZeroPolynomial("roots of the zero polynomial are undefined")
    if p.degree == 0:
        return []
    raw = np.roots(p.coeffs[::-1])
    dp = poly_derivative(p)
    polished = []
    for r in raw:
        fr = poly_eval(p, r)
        dfr = poly_eval(dp, r)
        if dfr != 0:
            step = fr / dfr
            if abs(step) < 1e-4:
                r = r - step
        polished.append(complex(r))
    polished.sort(key=lambda w: (w.real, w.imag))

    clusters: list[list[complex]] = []
    for r in polished:
        for members in clusters:
            centroid = sum(members) / len(members)
            if abs(r - centroid) <= tol.root_cluster_tol:
                members.append(r)
                break
        else:
            clusters.append([r])

    out = []
    for members in clusters:
        centroid = complex(sum(members) / len(members))
        m = len(members)
        if m >= 2:
            # an m-fold root of p is a simple root of the (m-1)-th derivative;
            # Newton there recovers the accuracy lost to root splitting
            q = p
            for _ in range(m - 1):
                q = poly_derivative(q)
            dq = poly_derivative(q)
            for _ in range(2):
                dqv = poly_eval(dq, centroid)
                if dqv == 0:
                    break
                step = poly_eval(q, centroid) / dqv
                if abs(step) > 1e-3:
                    break
                centroid -= step
        out.append(RootCluster(centroid, m, abs(poly_eval(p, centroid))))
    out.sort(key=lambda rc: (rc.value.real, rc.value.imag))
    return out


def _expand_clusters(clusters: list[RootCluster]) -> list[complex]:
    out: list[complex] = []
    for rc in clusters:
        out.extend([rc.value] * rc.multiplicity)
    return out


class RationalFn:
    """Quotient of two :class:`Poly`; the denominator is never the zero polynomial."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly):
        if den.is_zero:
            raise ZeroDivisionError("rational function denominator is the zero polynomial")
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, name, value):
        raise AttributeError("RationalFn is immutable")

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def __call__(self, z):
        return _rat_eval(self.num, self.den, z)

    def derivative(self) -> "RationalFn":
        n, d = self.num, self.den
        return RationalFn(n.derivative() * d - n * d.derivative(), d * d)

    def normalized(self) -> "RationalFn":
        """Scale numerator and denominator so the denominator is monic."""
        lead = self.den.leading
        return RationalFn(self.num / lead, self.den / lead)

    def __repr__(self):
        return f"RationalFn({self.num!r}, {self.den!r})"

    def to_json_dict(self) -> dict:
        return {"num": self.num.to_list(), "den": self.den.to_list()}

    @classmethod
    def from_json_dict(cls, obj) -> "RationalFn":
        return cls(Poly.from_list(obj["num"]), Poly.from_list(obj["den"]))


def _rat_eval(num: Poly, den: Poly, z):
    return poly_eval(num, z) / poly_eval(den, z)


def _cancel_common(num_clusters, den_clusters, tol: TolerancePolicy):
    """Pair numerator root clusters with denominator clusters and cancel the overlap."""
    num_left = [[rc.value, rc.multiplicity] for rc in num_clusters]
    den_left = [[rc.value, rc.multiplicity] for rc in den_clusters]
    cancelled = []
    for d_entry in den_left:
        for n_entry in num_left:
            if n_entry[1] == 0 or d_entry[1] == 0:
                continue
            if abs(n_entry[0] - d_entry[0]) <= tol.root_cluster_tol:
                m = min(n_entry[1], d_entry[1])
                n_entry[1] -= m
                d_entry[1] -= m
                cancelled.append((d_entry[0], m))
    num_roots = [v for v, m in num_left for _ in range(m)]
    den_roots = [v for v, m in den_left for _ in range(m)]
    return num_roots, den_roots, cancelled


def _sampled_drift(reference: RationalFn, candidate: RationalFn, avoid, tol: TolerancePolicy) -> float:
    """Relative disagreement at 32 deterministic points away from all roots."""
    rng = np.random.default_rng(20311)
    checked = 0
    worst = 0.0
    attempts = 0
    while checked < 32 and attempts < 4000:
        attempts += 1
        z = rng.uniform(0.1, 2.5) * np.exp(2j * np.pi * rng.uniform())
        if any(abs(z - a) < 5e-2 for a in avoid):
            continue
        ref = reference(z)
        worst = max(worst, abs(ref - candidate(z)) / max(1.0, abs(ref)))
        checked += 1
    return worst


def rat_reduce(f: RationalFn, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> RationalFn:
    """Cancel root pairs shared by numerator and denominator, monic denominator.

    Roots of the numerator within ``tol.root_cluster_tol`` of a root of the
    denominator are cancelled, respecting multiplicities; the result is
    checked against the input at 32 deterministic sample points away from the
    roots.  A pair that merely passes within the pairing tolerance without
    being a genuine common factor would move those sampled values, so on
    disagreement beyond ``tol.residual_tol`` the pairing backs off to tighter
    tolerances, cancelling nothing in the worst case (faithfulness wins over
    eagerness).
    """
    if f.num.is_zero:
        return RationalFn(Poly([]), Poly([1.0]))
    # rescale so the denominator is O(1); extreme scales would overflow the
    # leading-coefficient ratio below
    den_scale = float(np.max(np.abs(f.den.coeffs)))
    f = RationalFn(Poly(f.num.coeffs / den_scale), Poly(f.den.coeffs / den_scale))
    num_clusters = poly_roots(f.num, tol) if f.num.degree >= 1 else []
    den_clusters = poly_roots(f.den, tol) if f.den.degree >= 1 else []
    avoid = [rc.value for rc in num_clusters] + [rc.value for rc in den_clusters]

    worst = None
    for pair_tol in (tol.root_cluster_tol, tol.root_cluster_tol * 1e-2, tol.root_cluster_tol * 1e-4, 0.0):
        pairing = TolerancePolicy(
            trim_tol=tol.trim_tol,
            root_cluster_tol=pair_tol if pair_tol > 0 else 1e-300,
            residual_tol=tol.residual_tol,
            pd_tol=tol.pd_tol,
        )
        num_roots, den_roots, cancelled = _cancel_common(num_clusters, den_clusters, pairing)
        if cancelled:
            lead_ratio = f.num.leading / f.den.leading
            out = RationalFn(Poly.from_roots(num_roots, leading=lead_ratio), Poly.from_roots(den_roots, leading=1.0))
        else:
            out = f.normalized()
        drift = _sampled_drift(f, out, avoid, tol)
        if drift <= tol.residual_tol:
            return out
        worst = drift if worst is None else min(worst, drift)
    raise NumericalFailure(f"no faithful cancellation found; best sampled drift {worst:.3e}")


def poly_allclose(p: Poly, q: Poly, atol: float = 1e-9) -> bool:
    """Coefficient-wise agreement after padding to a common length."""
    n = max(p.coeffs.size, q.coeffs.size)
    a = np.zeros(n, dtype=complex)
    b = np.zeros(n, dtype=complex)
    a[: p.coeffs.size] = p.coeffs
    b[: q.coeffs.size] = q.coeffs
    return bool(np.all(np.abs(a - b) <= atol))
