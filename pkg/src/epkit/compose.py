"""Hierarchical composition of exceptional points by unidirectional coupling.

Two subsystems hosting full-order exceptional points with a shared eigenvalue
are stacked into the block lower-triangular Hamiltonian

    H = [[H_a, 0], [K, H_b]].

For generic coupling K the composite hosts a single exceptional point of order
n_a + n_b; the product C = N_b^(n_b-1) K N_a^(n_a-1) decides genericity and
carries the composite response strength xi = ||C||.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import cmatrix
from .ep_core import EpReport, _clean_power, detect_ep, nilpotency_index, traceless_part
from .errors import (
    DegenerateCouplingError,
    IncompatibleSubsystemsError,
    NumericalError,
    ParameterError,
    PreconditionError,
    ShapeError,
)

__all__ = [
    "CompositeSystem",
    "block_compose",
    "compose_many",
    "genericity_product",
    "composite_response",
    "response_upper_bound",
]

#: Absolute tolerance on the subsystem eigenvalue mismatch.
DEFAULT_EIGENVALUE_TOL = 1e-10


@dataclass(frozen=True)
class CompositeSystem:
    """Assembled unidirectionally coupled pair with its shared eigenvalue."""

    h_a: np.ndarray
    h_b: np.ndarray
    k: np.ndarray
    h: np.ndarray
    ep_eigenvalue: complex

    def __post_init__(self):
        for m in (self.h_a, self.h_b, self.k, self.h):
            m.setflags(write=False)

    @property
    def n_a(self) -> int:
        return self.h_a.shape[0]

    @property
    def n_b(self) -> int:
        return self.h_b.shape[0]

    @property
    def dim(self) -> int:
        return self.n_a + self.n_b

    def to_json(self) -> dict:
        return {
            "h_a": cmatrix.matrix_to_json(self.h_a),
            "h_b": cmatrix.matrix_to_json(self.h_b),
            "k": cmatrix.matrix_to_json(self.k),
            "h": cmatrix.matrix_to_json(self.h),
            "ep_eigenvalue": [self.ep_eigenvalue.real, self.ep_eigenvalue.imag],
        }


def _certified(h, nil_tol, label: str) -> EpReport:
    report = detect_ep(h, nil_tol)
    if not report.is_full_ep:
        raise PreconditionError(
            f"subsystem {label} is not at a full-order exceptional point (order {report.order}, dim {report.dim})"
        )
    return report


def block_compose(h_a, h_b, k, tol: float = DEFAULT_EIGENVALUE_TOL, nil_tol: float | None = None,
                  shift_b: bool = False) -> CompositeSystem:
    """Assemble the block lower-triangular composite of two certified points.

    Both subsystems must host full-order exceptional points whose eigenvalues
    agree to `tol`.  With shift_b=True a mismatched H_b is rigidly shifted
    onto the eigenvalue of H_a instead of raising; off by default so modelling
    errors surface.
    """
    h_a = cmatrix.as_square(h_a, "H_a")
    h_b = cmatrix.as_square(h_b, "H_b")
    k = cmatrix.as_matrix(k, "K")
    rep_a = _certified(h_a, nil_tol, "a")
    rep_b = _certified(h_b, nil_tol, "b")
    n_a, n_b = rep_a.dim, rep_b.dim
    if k.shape != (n_b, n_a):
        raise ShapeError(f"K has shape {k.shape}, expected {(n_b, n_a)}")
    mismatch = abs(rep_a.ep_eigenvalue - rep_b.ep_eigenvalue)
    if mismatch > tol:
        if not shift_b:
            raise IncompatibleSubsystemsError(
                f"subsystem eigenvalues differ by {mismatch:.3e} (> {tol:g}); "
                "shift_b=True shifts H_b onto the eigenvalue of H_a"
            )
        h_b = h_b + (rep_a.ep_eigenvalue - rep_b.ep_eigenvalue) * np.eye(n_b)
    dim = n_a + n_b
    h = np.zeros((dim, dim), dtype=complex)
    h[:n_a, :n_a] = h_a
    h[n_a:, :n_a] = k
    h[n_a:, n_a:] = h_b
    ep_eigenvalue = complex(np.trace(h)) / dim
    return CompositeSystem(h_a=h_a.copy(), h_b=h_b.copy(), k=k.copy(), h=h, ep_eigenvalue=ep_eigenvalue)


def compose_many(hams, couplings, tol: float = DEFAULT_EIGENVALUE_TOL,
                 nil_tol: float | None = None) -> CompositeSystem:
    """Left fold of block_compose over several subsystems.

    couplings[i] maps the composite of hams[:i+1] into hams[i+1], so it must
    have shape (dim of hams[i+1]) x (sum of dims of hams[:i+1]).  Every
    intermediate composite must itself be a certified full-order point, which
    holds for generic couplings.
    """
    hams = list(hams)
    couplings = list(couplings)
    if len(hams) < 2 or len(couplings) != len(hams) - 1:
        raise ParameterError(
            f"need at least two subsystems and exactly len(hams)-1 couplings, got {len(hams)} and {len(couplings)}"
        )
    system = block_compose(hams[0], hams[1], couplings[0], tol=tol, nil_tol=nil_tol)
    for h_next, k_next in zip(hams[2:], couplings[1:]):
        system = block_compose(system.h, h_next, k_next, tol=tol, nil_tol=nil_tol)
    return system


def genericity_product(sys: CompositeSystem, nil_tol: float | None = None) -> np.ndarray:
    """C = N_b^(n_b-1) K N_a^(n_a-1), the only nonzero block of N^(dim-1).

    Cross-checked against direct powering of the assembled traceless part; a
    disagreement beyond 1e-10 relative raises NumericalError.
    """
    rep_a = _certified(sys.h_a, nil_tol, "a")
    rep_b = _certified(sys.h_b, nil_tol, "b")
    pow_a = _clean_power(np.asarray(rep_a.nilpotent), rep_a.dim - 1, rep_a.nil_tol)
    pow_b = _clean_power(np.asarray(rep_b.nilpotent), rep_b.dim - 1, rep_b.nil_tol)
    c = pow_b @ np.asarray(sys.k) @ pow_a

    _, nmat = traceless_part(sys.h)
    full_power = np.linalg.matrix_power(nmat, sys.dim - 1)
    block = full_power[sys.n_a:, :sys.n_a]
    scale = max(
        cmatrix.spectral_norm(sys.k)
        * cmatrix.spectral_norm(rep_a.nilpotent) ** (rep_a.dim - 1)
        * cmatrix.spectral_norm(rep_b.nilpotent) ** (rep_b.dim - 1),
        np.finfo(float).tiny,
    )
    if cmatrix.frobenius_norm(c - block) > 1e-10 * scale:
        raise NumericalError("block product and direct matrix power disagree beyond tolerance")
    return c


def _genericity_threshold(sys: CompositeSystem, rep_a: EpReport, rep_b: EpReport) -> float:
    return (
        1e-8
        * cmatrix.spectral_norm(sys.k)
        * cmatrix.spectral_norm(rep_a.nilpotent) ** (rep_a.dim - 1)
        * cmatrix.spectral_norm(rep_b.nilpotent) ** (rep_b.dim - 1)
    )


def composite_response(sys: CompositeSystem, nil_tol: float | None = None) -> float:
    """Composite response strength xi = ||C||_2 = ||C||_F.

    Raises DegenerateCouplingError (naming the achieved order) when C is
    numerically zero, i.e. the coupling is nongeneric.
    """
    rep_a = _certified(sys.h_a, nil_tol, "a")
    rep_b = _certified(sys.h_b, nil_tol, "b")
    c = genericity_product(sys, nil_tol)
    frob = cmatrix.frobenius_norm(c)
    if frob <= _genericity_threshold(sys, rep_a, rep_b):
        _, nmat = traceless_part(sys.h)
        achieved = nilpotency_index(nmat, nil_tol)
        raise DegenerateCouplingError(
            f"coupling is degenerate: composite order {achieved} < {sys.dim}",
            achieved_order=achieved,
        )
    spec = cmatrix.spectral_norm(c)
    if abs(spec - frob) > 1e-10 * frob:
        raise NumericalError(
            f"spectral ({spec:.15g}) and Frobenius ({frob:.15g}) norms of the genericity product disagree"
        )
    return spec


def response_upper_bound(xi_a: float, xi_b: float, k) -> float:
    """Submultiplicative bound xi_a * xi_b * ||K||_2 on the composite response."""
    if xi_a <= 0 or xi_b <= 0:
        raise ParameterError(f"response strengths must be positive, got {xi_a} and {xi_b}")
    return float(xi_a * xi_b * cmatrix.spectral_norm(k))
