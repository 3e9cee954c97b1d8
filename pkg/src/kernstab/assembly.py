"""Gram matrices: symmetric, shifted unsymmetric, and domain-convolved."""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

import numpy as np

from .errors import QuadratureError, SingularMatrixError
from .geometry import PointSet
from .kernels import KernelSpec, phi
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, gauss_legendre


class MatrixKind(Enum):
    SYMMETRIC = "symmetric"
    SHIFTED = "shifted"
    SYMMETRIC_PART = "symmetric-part"
    CONV = "conv"


@dataclass(frozen=True)
class GramMatrix:
    data: np.ndarray
    kind: MatrixKind
    spec: KernelSpec
    points: PointSet
    shift: Optional[np.ndarray] = None
    quad: Optional[QuadratureConfig] = None

    def __post_init__(self):
        self.data.setflags(write=False)


def _as_matrix(A) -> np.ndarray:
    return A.data if isinstance(A, GramMatrix) else np.asarray(A, dtype=float)


def _distance_matrix(P: np.ndarray, Q: np.ndarray) -> np.ndarray:
    diff = P[:, None, :] - Q[None, :, :]
    return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))


def gram(spec: KernelSpec, X: PointSet) -> GramMatrix:
    """Pairwise kernel matrix on X; exactly symmetric, diagonal phi(0)."""
    if X.dim != spec.dim:
        raise ValueError(f"point set dimension {X.dim} != kernel dimension {spec.dim}")
    vals = phi(spec, _distance_matrix(X.points, X.points))
    # mirror the strict upper triangle so symmetry holds bit for bit
    upper = np.triu(vals, 1)
    data = upper + upper.T
    np.fill_diagonal(data, phi(spec, 0.0))
    return GramMatrix(data=data, kind=MatrixKind.SYMMETRIC, spec=spec, points=X)


def shifted_gram(spec: KernelSpec, X: PointSet, b) -> GramMatrix:
    """Kernel matrix between the translated set X + b and X; unsymmetric for b != 0."""
    if X.dim != spec.dim:
        raise ValueError(f"point set dimension {X.dim} != kernel dimension {spec.dim}")
    b = np.atleast_1d(np.asarray(b, dtype=float))
    if b.shape != (X.dim,):
        raise ValueError(f"shift vector must have dimension {X.dim}")
    data = phi(spec, _distance_matrix(X.points + b, X.points))
    return GramMatrix(data=data, kind=MatrixKind.SHIFTED, spec=spec, points=X, shift=b)


def symmetric_part(A) -> np.ndarray:
    A = _as_matrix(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("need a square matrix")
    return 0.5 * (A + A.T)


def antisymmetric_part(A) -> np.ndarray:
    A = _as_matrix(A)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("need a square matrix")
    return 0.5 * (A - A.T)


def _conv_quadrature_grid(x: np.ndarray, a: float, b: float, cfg: QuadratureConfig, refine: int):
    # split at every data point: each integrand phi(|x_i - y|) phi(|y - x_j|)
    # is analytic between consecutive split points
    cuts = np.unique(np.concatenate([[a, b], x]))
    rule = gauss_legendre(cfg.order)
    ys, ws = [], []
    for lo, hi in zip(cuts[:-1], cuts[1:]):
        if hi <= lo:
            continue
        panels = refine * max(1, math.ceil((hi - lo) * cfg.panels_per_unit))
        edges = np.linspace(lo, hi, panels + 1)
        half = 0.5 * (edges[1:] - edges[:-1])
        mid = edges[:-1] + half
        ys.append((mid[:, None] + half[:, None] * rule.nodes[None, :]).ravel())
        ws.append((half[:, None] * rule.weights[None, :]).ravel())
    return np.concatenate(ys), np.concatenate(ws)


def _conv_data(spec: KernelSpec, x: np.ndarray, a: float, b: float, cfg: QuadratureConfig, refine: int):
    y, w = _conv_quadrature_grid(x, a, b, cfg, refine)
    K = phi(spec, np.abs(x[:, None] - y[None, :]))
    M = (K * w) @ K.T
    return 0.5 * (M + M.T)


def conv_gram(spec: KernelSpec, X: PointSet, cfg: QuadratureConfig = DEFAULT_CONFIG) -> GramMatrix:
    """Gram matrix of the domain-convolved kernel over the 1-D domain box of X.

    Entry (i, j) is Int_a^b k(x_i, y) k(y, x_j) dy via Gauss-Legendre panels
    split at every data point.  The result is validated by recomputing on a
    doubled panel grid; disagreement beyond cfg.target_rel_tol raises with the
    achieved deviation.  The (i, j) and (j, i) quadratures agree analytically,
    so their average only removes roundoff asymmetry.
    """
    if X.dim != 1 or spec.dim != 1:
        raise ValueError("convolution Gram matrices are 1-D only")
    a, b = float(X.domain[0, 0]), float(X.domain[0, 1])
    x = X.points[:, 0]
    coarse = _conv_data(spec, x, a, b, cfg, refine=1)
    fine = _conv_data(spec, x, a, b, cfg, refine=2)
    achieved = float(np.max(np.abs(fine - coarse)) / np.max(np.abs(fine)))
    if achieved > cfg.target_rel_tol:
        raise QuadratureError(
            f"convolution quadrature reached {achieved:.3e}, "
            f"target {cfg.target_rel_tol:.1e}; raise order or panels_per_unit",
            achieved=achieved,
            target=cfg.target_rel_tol,
        )
    return GramMatrix(
        data=fine, kind=MatrixKind.CONV, spec=spec, points=X, quad=cfg
    )


def interpolate(spec: KernelSpec, X: PointSet, f_values) -> np.ndarray:
    """Coefficients alpha of the kernel interpolant, solving gram(X) alpha = f.

    Solved by Cholesky; a breakdown reports the smallest eigenvalue instead of
    regularizing silently.
    """
    f = np.asarray(f_values, dtype=float)
    if f.shape != (len(X),):
        raise ValueError("f_values must have one entry per point")
    A = gram(spec, X).data
    try:
        L = np.linalg.cholesky(A)
    except np.linalg.LinAlgError:
        lam_min = float(np.linalg.eigvalsh(A)[0])
        raise SingularMatrixError(
            f"kernel matrix numerically singular (lambda_min ~ {lam_min:.3e})",
            lambda_min=lam_min,
        ) from None
    y = np.linalg.solve(L, f)
    return np.linalg.solve(L.T, y)


def write_matrix_csv(A, path) -> None:
    """Row-major CSV at full '%.17g' precision."""
    A = _as_matrix(A)
    with open(path, "w", newline="\n") as fh:
        for row in np.atleast_2d(A):
            fh.write(",".join("%.17g" % v for v in row) + "\n")
