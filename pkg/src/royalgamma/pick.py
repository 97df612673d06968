"""Blaschke interpolation data and the associated Pick matrix machinery.

The Pick matrix carries the boundary phasar-derivative bounds on its diagonal.
Positive definiteness certifies solvability of the interpolation problem; the
bordered augmentation, the exceptional parameter set and the deterministic
base-point selection implemented here feed the linear-fractional
parametrization of all solutions.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DegenerateData,
    InvalidData,
    NoSuitableTau,
    PoleAtNode,
    SingularPick,
)
from .polyrat import DEFAULT_TOLERANCES, TolerancePolicy

__all__ = [
    "BlaschkeData",
    "PickMatrix",
    "PositivityResult",
    "KernelVectors",
    "ExceptionalSet",
    "build_pick_matrix",
    "check_positive_definite",
    "kernel_vectors",
    "augmented_rho",
    "augmented_pick_matrix",
    "exceptional_set",
    "choose_tau",
]

# Inputs declared to lie on the unit circle must be within this distance of it;
# they are then projected exactly onto the circle, because the downstream
# boundary identities are tolerance-sensitive.
BOUNDARY_INPUT_TOL = 1e-9

# Candidate base points must keep at least this distance from boundary nodes.
MIN_TAU_NODE_DISTANCE = 1e-3

_GOLDEN_FRAC = (np.sqrt(5.0) - 1.0) / 2.0


def _project_to_circle(z: complex) -> complex:
    return complex(z / abs(z))


@dataclass(frozen=True)
class BlaschkeData:
    """Interpolation data (sigma, eta, rho) with n nodes, the first k on the circle.

    sigma : nodes, boundary first, pairwise distinct
    eta   : target values, unimodular for the boundary nodes, inside the disc otherwise
    rho   : positive phasar-derivative values, one per boundary node
    """

    sigma: tuple[complex, ...]
    eta: tuple[complex, ...]
    rho: tuple[float, ...]
    k: int

    def __post_init__(self):
        sigma = tuple(complex(s) for s in self.sigma)
        eta = tuple(complex(e) for e in self.eta)
        rho = tuple(float(r) for r in self.rho)
        n, k = len(sigma), self.k
        if len(eta) != n:
            raise InvalidData(f"{n} nodes but {len(eta)} target values")
        if not 0 <= k <= n or len(rho) != k:
            raise InvalidData(f"need one rho per boundary node: k={k}, len(rho)={len(rho)}")
        if n == 0:
            raise InvalidData("empty node list")
        projected_sigma, projected_eta = [], []
        for j in range(n):
            s, e = sigma[j], eta[j]
            if j < k:
                if abs(abs(s) - 1.0) > BOUNDARY_INPUT_TOL:
                    raise InvalidData(f"node {j}: |sigma| = {abs(s):.12g} is not on the unit circle")
                if abs(abs(e) - 1.0) > BOUNDARY_INPUT_TOL:
                    raise InvalidData(f"node {j}: |eta| = {abs(e):.12g} is not unimodular")
                s, e = _project_to_circle(s), _project_to_circle(e)
            else:
                if abs(s) >= 1.0:
                    raise InvalidData(f"node {j}: interior node has |sigma| = {abs(s):.12g} >= 1")
                if abs(e) >= 1.0:
                    raise InvalidData(f"node {j}: interior target has |eta| = {abs(e):.12g} >= 1")
            projected_sigma.append(s)
            projected_eta.append(e)
        for j in range(n):
            for i in range(j):
                if abs(projected_sigma[i] - projected_sigma[j]) <= 1e-12:
                    raise InvalidData(f"nodes {i} and {j} coincide")
        for j, r in enumerate(rho):
            if not r > 0:
                raise InvalidData(f"rho[{j}] = {r} must be strictly positive")
        object.__setattr__(self, "sigma", tuple(projected_sigma))
        object.__setattr__(self, "eta", tuple(projected_eta))
        object.__setattr__(self, "rho", rho)

    @property
    def n(self) -> int:
        return len(self.sigma)

    def to_json_dict(self) -> dict:
        nodes = []
        for j in range(self.n):
            nodes.append(
                {
                    "sigma": [self.sigma[j].real, self.sigma[j].imag],
                    "eta": [self.eta[j].real, self.eta[j].imag],
                    "rho": self.rho[j] if j < self.k else None,
                }
            )
        return {"nodes": nodes}

    @classmethod
    def from_json_dict(cls, obj) -> "BlaschkeData":
        """Load from the node-list schema; boundary nodes are exactly those with a rho.

        Nodes may arrive in any order and are reordered boundary-first,
        preserving relative order within each group.
        """
        if not isinstance(obj, dict) or "nodes" not in obj or not isinstance(obj["nodes"], list):
            raise InvalidData('expected an object with a "nodes" list')
        if len(obj["nodes"]) == 0:
            raise InvalidData("empty node list")
        boundary, interior = [], []
        for idx, node in enumerate(obj["nodes"]):
            try:
                s = complex(node["sigma"][0], node["sigma"][1])
                e = complex(node["eta"][0], node["eta"][1])
            except (KeyError, TypeError, IndexError) as exc:
                raise InvalidData(f"node {idx}: malformed sigma/eta ({exc})") from exc
            r = node.get("rho")
            on_circle = abs(abs(s) - 1.0) <= BOUNDARY_INPUT_TOL
            if r is None and on_circle:
                raise InvalidData(f"node {idx}: |sigma| = 1 requires a rho value")
            if r is not None and not on_circle:
                raise InvalidData(f"node {idx}: rho given but |sigma| = {abs(s):.12g} is not 1")
            if r is None:
                interior.append((s, e))
            else:
                boundary.append((s, e, float(r)))
        sigma = [b[0] for b in boundary] + [i[0] for i in interior]
        eta = [b[1] for b in boundary] + [i[1] for i in interior]
        rho = [b[2] for b in boundary]
        return cls(tuple(sigma), tuple(eta), tuple(rho), k=len(boundary))

    def canonical_digest(self) -> str:
        payload = json.dumps(self.to_json_dict(), sort_keys=True)
        return hashlib.sha256(payload.encode()).hexdigest()[:16]


@dataclass(frozen=True, eq=False)
class PickMatrix:
    """Hermitian Pick matrix; the minimum eigenvalue is cached at construction."""

    entries: np.ndarray
    min_eigenvalue: float

    @property
    def n(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True)
class PositivityResult:
    kind: str  # "definite" | "semidefinite" | "indefinite"
    min_eigenvalue: float
    rank: int


@dataclass(frozen=True, eq=False)
class KernelVectors:
    """Szego-kernel columns x and y = conj(eta) * x evaluated at one point."""

    x: np.ndarray
    y: np.ndarray
    at: complex


@dataclass(frozen=True)
class ExceptionalSet:
    """Parameters zeta for which the augmented problem degenerates.

    ``pairs`` holds, per boundary node j, the scalars (alpha_j, beta_j) of the
    defining equation alpha_j = zeta * beta_j; when both vanish for some node
    the whole circle is exceptional.
    """

    points: tuple[complex, ...]
    whole_circle: bool
    pairs: tuple[tuple[complex, complex], ...] = field(default=())


def build_pick_matrix(data: BlaschkeData, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> PickMatrix:
    """Pick matrix with entries (1 - conj(eta_i) eta_j)/(1 - conj(sigma_i) sigma_j),
    replaced by rho_i on the diagonal of the boundary block."""
    n, k = data.n, data.k
    m = np.empty((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            if i == j and i < k:
                m[i, j] = data.rho[i]
                continue
            den = 1.0 - np.conj(data.sigma[i]) * data.sigma[j]
            if i != j and abs(den) < tol.trim_tol:
                raise DegenerateData(f"nodes {i} and {j}: 1 - conj(sigma_i) sigma_j vanishes")
            m[i, j] = (1.0 - np.conj(data.eta[i]) * data.eta[j]) / den
    m = 0.5 * (m + m.conj().T)
    m.setflags(write=False)
    min_eig = float(np.linalg.eigvalsh(m)[0])
    return PickMatrix(entries=m, min_eigenvalue=min_eig)


def check_positive_definite(M: PickMatrix, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> PositivityResult:
    """Classify by eigenvalues against ``tol.pd_tol``; rank counts eigenvalues above it."""
    eigs = np.linalg.eigvalsh(M.entries)
    min_eig = float(eigs[0])
    rank = int(np.count_nonzero(eigs > tol.pd_tol))
    if min_eig > tol.pd_tol:
        return PositivityResult("definite", min_eig, M.n)
    if min_eig >= -tol.pd_tol:
        return PositivityResult("semidefinite", min_eig, rank)
    return PositivityResult("indefinite", min_eig, rank)


def kernel_vectors(data: BlaschkeData, lam: complex, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> KernelVectors:
    lam = complex(lam)
    sigma = np.array(data.sigma)
    dens = 1.0 - np.conj(sigma) * lam
    if np.min(np.abs(dens)) < tol.trim_tol:
        raise PoleAtNode(f"lambda = {lam} coincides with a kernel pole 1/conj(sigma_j)")
    x = 1.0 / dens
    y = np.conj(np.array(data.eta)) * x
    x.setflags(write=False)
    y.setflags(write=False)
    return KernelVectors(x=x, y=y, at=lam)


def solve_pd(M: PickMatrix, rhs: np.ndarray, tol: TolerancePolicy = DEFAULT_TOLERANCES) -> np.ndarray:
    """Apply the inverse of a positive definite ``M`` through its Cholesky factor."""
    if M.min_eigenvalue <= tol.pd_tol:
        raise SingularPick(f"Pick matrix fails Cholesky at pd_tol: min eigenvalue {M.min_eigenvalue:.3e}")
    try:
        lower = np.linalg.cholesky(M.entries)
    except np.linalg.LinAlgError as exc:
        raise SingularPick(f"Cholesky factorization failed: {exc}") from exc
    y = np.linalg.solve(lower, rhs)
    return np.linalg.solve(lower.conj().T, y)


def augmented_rho(
    M: PickMatrix,
    data: BlaschkeData,
    zeta: complex,
    tau: complex,
    tol: TolerancePolicy = DEFAULT_TOLERANCES,
) -> float:
    """The value <M^-1 u, u> for u = x_tau - zeta * y_tau.

    Used as the extra diagonal entry that makes the bordered (n+1) x (n+1)
    matrix singular with rank n.
    """
    kv = kernel_vectors(data, tau, tol)
    u = kv.x - complex(zeta) * kv.y
    w = solve_pd(M, u, tol)
    return float(np.vdot(u, w).real)


def augmented_pick_matrix(
    M: PickMatrix,
    data: BlaschkeData,
    zeta: complex,
    tau: complex,
    tol: TolerancePolicy = DEFAULT_TOLERANCES,
) -> np.ndarray:
    """Bordered matrix [[M, u], [u*, <M^-1 u, u>]]; singular with rank n by design."""
    kv = kernel_vectors(data, tau, tol)
    u = kv.x - complex(zeta) * kv.y
    rho = augmented_rho(M, data, zeta, tau, tol)
    n = M.n
    out = np.empty((n + 1, n + 1), dtype=complex)
    out[:n, :n] = M.entries
    out[:n, n] = u
    out[n, :n] = u.conj()
    out[n, n] = rho
    return out


def exceptional_set(
    M: PickMatrix,
    data: BlaschkeData,
    tau: complex,
    tol: TolerancePolicy = DEFAULT_TOLERANCES,
) -> ExceptionalSet:
    """Solve alpha_j = zeta * beta_j per boundary node, keeping unimodular solutions.

    With the inner product <u, v> = sum u_i conj(v_i), alpha_j and beta_j are
    the j-th entries of M^-1 x_tau and M^-1 y_tau.  If both vanish for some
    node the whole circle is exceptional.
    """
    kv = kernel_vectors(data, tau, tol)
    wx = solve_pd(M, kv.x, tol)
    wy = solve_pd(M, kv.y, tol)
    scale = max(1.0, float(np.max(np.abs(wx))), float(np.max(np.abs(wy))))
    points: list[complex] = []
    pairs = []
    whole = False
    for j in range(data.k):
        alpha, beta = complex(wx[j]), complex(wy[j])
        pairs.append((alpha, beta))
        if abs(alpha) <= tol.trim_tol * scale and abs(beta) <= tol.trim_tol * scale:
            whole = True
            continue
        if abs(beta) <= tol.trim_tol * scale:
            continue
        zeta = alpha / beta
        if abs(abs(zeta) - 1.0) <= tol.residual_tol:
            zeta = _project_to_circle(zeta)
            if all(abs(zeta - q) > tol.root_cluster_tol for q in points):
                points.append(zeta)
    return ExceptionalSet(points=tuple(points), whole_circle=whole, pairs=tuple(pairs))


def tau_candidate(m: int) -> complex:
    """m-th point of the deterministic golden-ratio sequence on the circle."""
    frac = (m * _GOLDEN_FRAC) % 1.0
    return complex(np.exp(2j * np.pi * frac))


def choose_tau(
    M: PickMatrix,
    data: BlaschkeData,
    tol: TolerancePolicy = DEFAULT_TOLERANCES,
    start: int = 1,
    max_candidates: int = 1000,
) -> complex:
    """First point of the golden-ratio circle sequence that is a usable base point.

    Usable means: distance above MIN_TAU_NODE_DISTANCE from every boundary
    node, and a finite exceptional set.  The sequence is fixed, so identical
    data always get the identical base point.
    """
    boundary = data.sigma[: data.k]
    for m in range(start, start + max_candidates):
        tau = tau_candidate(m)
        if boundary and min(abs(tau - s) for s in boundary) <= MIN_TAU_NODE_DISTANCE:
            continue
        if exceptional_set(M, data, tau, tol).whole_circle:
            continue
        return tau
    raise NoSuitableTau(f"no usable base point among {max_candidates} candidates")
