"""Exceptional point detection and spectral response.

A square Hamiltonian H hosts an exceptional point of order n exactly when its
traceless part N = H - (tr H / n) I is nilpotent of index n.  This module
certifies that property numerically, computes the spectral response strength
xi = ||N^(n-1)||, evaluates the resolvent expansion of H near the degenerate
eigenvalue, and predicts leading-order eigenvalue splittings under
perturbations together with the corresponding rigorous bounds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from . import cmatrix
from .errors import NumericalError, ParameterError, PoleError, PreconditionError, ShapeError

#: Machine precision of double-precision floating point, used as the default
#: perturbation scale when modelling rounding errors.
DEFAULT_EPS_MP = 2.22e-16

__all__ = [
    "DEFAULT_EPS_MP",
    "EpReport",
    "SplittingPrediction",
    "default_nil_tol",
    "traceless_part",
    "nilpotency_index",
    "detect_ep",
    "response_strength",
    "greens_function",
    "splitting_bound",
    "machine_precision_bound",
    "predicted_splitting",
    "match_eigenvalues",
]


def default_nil_tol(dim: int) -> float:
    """Scale-invariant nilpotency threshold; grows mildly with dimension."""
    return 1e-10 * dim


def traceless_part(h) -> tuple[complex, np.ndarray]:
    """Split H into (mean eigenvalue, traceless remainder N = H - mean * I)."""
    h = cmatrix.as_square(h, "H")
    n = h.shape[0]
    mean = complex(np.trace(h)) / n
    return mean, h - mean * np.eye(n)


def nilpotency_index(nmat, nil_tol: float | None = None) -> int | None:
    """Smallest k <= dim with ||N^k||_2 <= nil_tol * ||N||_2^k, or None.

    The zero matrix has index 1.  None means no power up to dim is
    numerically zero, i.e. the matrix has at least two distinct eigenvalues.
    """
    nmat = cmatrix.as_square(nmat, "N")
    dim = nmat.shape[0]
    if nil_tol is None:
        nil_tol = default_nil_tol(dim)
    if nil_tol <= 0.0:
        raise ParameterError(f"nil_tol must be positive, got {nil_tol}")
    base = cmatrix.spectral_norm(nmat)
    power = np.eye(dim, dtype=complex)
    for k in range(1, dim + 1):
        power = power @ nmat
        if cmatrix.spectral_norm(power) <= nil_tol * base**k:
            return k
    return None


def _clean_power(nmat: np.ndarray, exponent: int, nil_tol: float) -> np.ndarray:
    """N^exponent with entries below the certification threshold flushed to 0.

    Matrix powers of a numerically nilpotent N carry rounding residue in
    positions that are structurally zero; the residue is orders of magnitude
    below nil_tol * ||N||_2^exponent, so flushing it restores the exact block
    pattern (and makes structurally zero traces exactly zero) without touching
    any certified entry.
    """
    if exponent == 0:
        return np.eye(nmat.shape[0], dtype=complex)
    power = np.linalg.matrix_power(nmat, exponent)
    threshold = nil_tol * cmatrix.spectral_norm(nmat) ** exponent
    out = power.copy()
    out[np.abs(out) <= threshold] = 0.0
    return out


@dataclass(frozen=True)
class EpReport:
    """Result of exceptional point detection on a square Hamiltonian.

    order is the nilpotency index of the traceless part (None when the
    spectrum is non-degenerate).  response_strength is only defined for
    full-order points (order == dim); partial is True otherwise.
    """

    dim: int
    order: int | None
    ep_eigenvalue: complex
    nilpotent: np.ndarray
    response_strength: float | None
    nil_tol: float

    def __post_init__(self):
        self.nilpotent.setflags(write=False)

    @property
    def partial(self) -> bool:
        return self.order != self.dim

    @property
    def is_full_ep(self) -> bool:
        return self.order == self.dim

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "order": self.order,
            "ep_eigenvalue": [self.ep_eigenvalue.real, self.ep_eigenvalue.imag],
            "response_strength": self.response_strength,
            "partial": self.partial,
        }


def detect_ep(h, nil_tol: float | None = None) -> EpReport:
    """Certify whether H hosts an exceptional point of full order dim.

    Returns an EpReport with order equal to the nilpotency index of the
    traceless part.  order == dim certifies a full-order point and fixes the
    response strength; a smaller order flags a lower-order degeneracy living
    inside a larger space (response strength omitted); order None means the
    eigenvalues do not all coalesce.
    """
    h = cmatrix.as_square(h, "H")
    dim = h.shape[0]
    if nil_tol is None:
        nil_tol = default_nil_tol(dim)
    ep_eigenvalue, nmat = traceless_part(h)
    order = nilpotency_index(nmat, nil_tol)
    xi = None
    if order == dim:
        xi = _certified_response(nmat, dim, nil_tol)
    return EpReport(
        dim=dim,
        order=order,
        ep_eigenvalue=ep_eigenvalue,
        nilpotent=nmat,
        response_strength=xi,
        nil_tol=float(nil_tol),
    )


def _certified_response(nmat: np.ndarray, order: int, nil_tol: float) -> float:
    """xi = ||N^(n-1)|| with the rank-1 norm-equality cross-check."""
    power = _clean_power(nmat, order - 1, nil_tol)
    spec = cmatrix.spectral_norm(power)
    frob = cmatrix.frobenius_norm(power)
    if abs(spec - frob) > 1e-10 * max(frob, np.finfo(float).tiny):
        raise NumericalError(
            f"spectral ({spec:.15g}) and Frobenius ({frob:.15g}) norms of N^(n-1) disagree; "
            "matrix is not numerically rank one"
        )
    return spec


def response_strength(h, nil_tol: float | None = None) -> float:
    """Spectral response strength xi = ||N^(n-1)||_2 of a full-order point."""
    report = detect_ep(h, nil_tol)
    if not report.is_full_ep:
        raise PreconditionError(
            f"response strength requires a full-order exceptional point; detected order {report.order} in dimension {report.dim}"
        )
    return report.response_strength


def greens_function(report: EpReport, energy: complex) -> np.ndarray:
    """Resolvent (E I - H)^(-1) from the truncated nilpotent expansion.

    Exact for a certified nilpotent part: the geometric series in
    N / (E - ep_eigenvalue) terminates after `order` terms.
    """
    if report.order is None:
        raise PreconditionError("Green's function expansion requires a nilpotent traceless part")
    energy = complex(energy)
    delta = energy - report.ep_eigenvalue
    if delta == 0:
        raise PoleError("energy coincides with the degenerate eigenvalue")
    dim = report.dim
    g = np.zeros((dim, dim), dtype=complex)
    term = np.eye(dim, dtype=complex) / delta
    for _ in range(report.order):
        g += term
        term = term @ report.nilpotent / delta
    return g


def splitting_bound(xi: float, eps: float, h1_spectral_norm: float, n: int) -> float:
    """Upper bound (eps * ||H1||_2 * xi)^(1/n) on |E_j - ep_eigenvalue|."""
    for name, value in (("xi", xi), ("eps", eps), ("h1_spectral_norm", h1_spectral_norm), ("n", n)):
        if value <= 0:
            raise ParameterError(f"{name} must be positive, got {value}")
    return float((eps * h1_spectral_norm * xi) ** (1.0 / n))


def machine_precision_bound(xi: float, n: int, eps_mp: float = DEFAULT_EPS_MP) -> float:
    """Rounding-noise floor (2 sqrt(n) * eps_mp * xi)^(1/n) of the splitting.

    Models rounding errors as a random perturbation of strength eps_mp whose
    spectral norm is estimated by 2 sqrt(n) for unit-variance entries.
    """
    for name, value in (("xi", xi), ("n", n), ("eps_mp", eps_mp)):
        if value <= 0:
            raise ParameterError(f"{name} must be positive, got {value}")
    return float((2.0 * np.sqrt(n) * eps_mp * xi) ** (1.0 / n))


@dataclass(frozen=True)
class SplittingPrediction:
    """Leading-order eigenvalue fan around a perturbed full-order point.

    radicand is eps * trace(N^(n-1) H1); the predicted eigenvalues are
    ep_eigenvalue plus the n complex n-th roots of the radicand.
    """

    n: int
    radicand: complex
    predicted_eigenvalues: np.ndarray

    def __post_init__(self):
        self.predicted_eigenvalues.setflags(write=False)


def predicted_splitting(report: EpReport, h1, eps: float) -> SplittingPrediction:
    """Highest-order generic contribution to the splitting under H + eps*H1.

    The radicand is computed both as eps * trace(N^(n-1) H1) and through the
    degenerate eigenstate expectation value; the two routes must agree to
    1e-10 relative, otherwise a NumericalError is raised.
    """
    if not report.is_full_ep:
        raise PreconditionError(
            f"splitting prediction requires a full-order exceptional point; detected order {report.order}"
        )
    h1 = cmatrix.as_square(h1, "H1")
    if h1.shape[0] != report.dim:
        raise ShapeError(f"H1 has dimension {h1.shape[0]}, expected {report.dim}")
    eps = float(eps)
    n = report.dim
    power = _clean_power(np.asarray(report.nilpotent), n - 1, report.nil_tol)
    product = power @ h1
    trace_form = complex(np.trace(product))
    if n == 1:
        sandwich_form = trace_form
    else:
        psi = cmatrix.kernel_vector(report.nilpotent)
        sandwich_form = complex(np.vdot(psi, product @ psi))
    scale = max(
        cmatrix.frobenius_norm(power) * cmatrix.frobenius_norm(h1),
        np.finfo(float).tiny,
    )
    if abs(trace_form - sandwich_form) > 1e-10 * scale:
        raise NumericalError(
            f"trace ({trace_form:.6e}) and eigenstate ({sandwich_form:.6e}) forms of the radicand disagree"
        )
    radicand = eps * trace_form
    if radicand == 0:
        roots = np.full(n, report.ep_eigenvalue, dtype=complex)
    else:
        principal = radicand ** (1.0 / n)
        unity = np.exp(2j * np.pi * np.arange(n) / n)
        roots = report.ep_eigenvalue + principal * unity
    return SplittingPrediction(n=n, radicand=radicand, predicted_eigenvalues=roots)


def match_eigenvalues(computed, predicted) -> float:
    """Largest matched distance under a minimum-cost pairing of two spectra."""
    a = np.asarray(computed, dtype=complex)
    b = np.asarray(predicted, dtype=complex)
    if a.shape != b.shape or a.ndim != 1:
        raise ShapeError(f"spectra must be 1-d and equally long, got {a.shape} and {b.shape}")
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].max())
