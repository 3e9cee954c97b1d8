"""Point sets in box domains: generation, separation distance, shifts, CSV I/O."""

from __future__ import annotations

import numpy as np

_HALTON_BASES = (2, 3, 5)


def _pairwise_min_distance(points: np.ndarray) -> float:
    diff = points[:, None, :] - points[None, :, :]
    d2 = np.einsum("ijk,ijk->ij", diff, diff)
    np.fill_diagonal(d2, np.inf)
    return float(np.sqrt(d2.min()))


class PointSet:
    """Immutable list of pairwise-distinct points inside a closed box.

    The separation distance (half the minimum pairwise distance) is computed
    once at construction and carried through translations, so shifted copies
    report exactly the same value.
    """

    def __init__(self, points, domain, _separation=None):
        points = np.atleast_2d(np.asarray(points, dtype=float))
        domain = np.asarray(domain, dtype=float)
        if points.ndim != 2 or points.shape[0] < 1:
            raise ValueError("points must be a nonempty (n, d) array")
        if domain.shape != (points.shape[1], 2):
            raise ValueError("domain must be a (d, 2) array of box bounds")
        if np.any(domain[:, 0] >= domain[:, 1]):
            raise ValueError("domain box must have positive extent per axis")
        if not np.all(np.isfinite(points)):
            raise ValueError("points must be finite")
        if np.any(points < domain[:, 0]) or np.any(points > domain[:, 1]):
            raise ValueError("all points must lie inside the closed domain box")
        if points.shape[0] >= 2:
            if _separation is None:
                _separation = 0.5 * _pairwise_min_distance(points)
            if _separation <= 0:
                raise ValueError("points must be pairwise distinct")
        else:
            _separation = None
        points.setflags(write=False)
        domain.setflags(write=False)
        self._points = points
        self._domain = domain
        self._separation = _separation

    @property
    def points(self) -> np.ndarray:
        return self._points

    @property
    def domain(self) -> np.ndarray:
        return self._domain

    @property
    def dim(self) -> int:
        return self._points.shape[1]

    def __len__(self) -> int:
        return self._points.shape[0]

    @property
    def separation(self) -> float:
        if self._separation is None:
            raise ValueError("separation distance needs at least two points")
        return self._separation

    def __repr__(self):
        return f"PointSet(n={len(self)}, dim={self.dim})"


def _radical_inverse(index: int, base: int) -> float:
    f, inv = 0.0, 1.0
    while index > 0:
        inv /= base
        f += inv * (index % base)
        index //= base
    return f


def halton(n: int, dim: int, skip: int = 0) -> PointSet:
    """Halton points in (0, 1)^dim, indices skip+1 .. skip+n (index 0 excluded).

    Bases are 2, 3, 5 for the first three axes; higher dimensions are not
    configured.
    """
    if n < 1:
        raise ValueError("need n >= 1")
    if not 1 <= dim <= len(_HALTON_BASES):
        raise ValueError(f"halton dim must be in 1..{len(_HALTON_BASES)}")
    if skip < 0:
        raise ValueError("skip must be nonnegative")
    bases = _HALTON_BASES[:dim]
    pts = np.array(
        [[_radical_inverse(i, b) for b in bases] for i in range(skip + 1, skip + n + 1)]
    )
    domain = np.array([[0.0, 1.0]] * dim)
    return PointSet(pts, domain)


def equispaced(n: int, a: float, b: float, include_endpoints: bool = True) -> PointSet:
    """n equally spaced points on [a, b].

    With endpoints the spacing is (b-a)/(n-1); without, points sit at
    a + (i+1)(b-a)/(n+1) so the grid stays interior.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    if not a < b:
        raise ValueError("need a < b")
    if include_endpoints:
        # literal a + i(b-a)/(n-1) with pinned endpoints, not np.linspace: the
        # two differ in the last bit at interior points
        pts = a + np.arange(n) * (b - a) / (n - 1)
        pts[0], pts[-1] = a, b
    else:
        pts = a + (np.arange(n) + 1) * (b - a) / (n + 1)
    return PointSet(pts[:, None], np.array([[a, b]]))


def separation_distance(X: PointSet) -> float:
    """Half the minimum pairwise distance."""
    return X.separation


def boundary_distance(X: PointSet) -> float:
    """Smallest distance from any point to the boundary of the domain box."""
    lower = X.points - X.domain[:, 0]
    upper = X.domain[:, 1] - X.points
    return float(np.minimum(lower, upper).min())


def shift(X: PointSet, b) -> PointSet:
    """Translate every point by ``b``; the domain box widens to keep containment.

    Pairwise distances are translation invariant, so the cached separation
    distance carries over unchanged.
    """
    b = np.atleast_1d(np.asarray(b, dtype=float))
    if b.shape != (X.dim,):
        raise ValueError(f"shift vector must have dimension {X.dim}")
    pts = X.points + b
    lo = np.minimum(X.domain[:, 0], pts.min(axis=0))
    hi = np.maximum(X.domain[:, 1], pts.max(axis=0))
    return PointSet(pts, np.column_stack([lo, hi]), _separation=X._separation)


def write_points_csv(X: PointSet, path) -> None:
    """One point per line, '%.17g' coordinates, '#'-prefixed header."""
    box = ";".join("%.17g,%.17g" % (lo, hi) for lo, hi in X.domain)
    with open(path, "w", newline="\n") as fh:
        fh.write(f"# dim={X.dim}\n")
        fh.write(f"# domain={box}\n")
        for p in X.points:
            fh.write(",".join("%.17g" % c for c in p) + "\n")


def read_points_csv(path) -> PointSet:
    dim = None
    domain = None
    rows = []
    with open(path) as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            if line.startswith("#"):
                body = line[1:].strip()
                if body.startswith("dim="):
                    dim = int(body[4:])
                elif body.startswith("domain="):
                    domain = np.array(
                        [[float(v) for v in axis.split(",")] for axis in body[7:].split(";")]
                    )
                continue
            rows.append([float(v) for v in line.split(",")])
    if dim is None or domain is None:
        raise ValueError(f"{path}: missing dim/domain header")
    pts = np.array(rows)
    if pts.shape[1] != dim:
        raise ValueError(f"{path}: row width does not match dim={dim}")
    return PointSet(pts, domain)
